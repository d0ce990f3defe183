"""Gazetteer mention extraction and the Cause -> Disorder -> Symptom -> Measurement graph.

Relations are sentence-level co-occurrences between mentions of chain-adjacent
types, always directed forward along the chain.
"""
import json
from collections import deque
from dataclasses import dataclass, field
from enum import IntEnum
from pathlib import Path

from healthadvisor.exceptions import ValidationError
from healthadvisor.text import split_sentences, tokenize


class EntityType(IntEnum):
    CAUSE = 0
    DISORDER = 1
    SYMPTOM = 2
    MEASUREMENT = 3
    WEARABLE = 4

    @property
    def label(self):
        return self.name.lower()

    @classmethod
    def parse(cls, name):
        try:
            return cls[name.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown entity type {name!r}") from None


AUTHORABLE_TYPES = (EntityType.CAUSE, EntityType.DISORDER, EntityType.SYMPTOM, EntityType.MEASUREMENT)


def adjacent(a, b):
    return b == a + 1


@dataclass(frozen=True)
class RuleSet:
    """Per-type dictionaries of (surface tokens, canonical id), plus display names."""

    dictionaries: dict
    display: dict = field(default_factory=dict)  # (type, canonical) -> display name

    def __post_init__(self):
        # surface tuple -> canonical, and the longest surface length, per type
        index = {}
        for etype, entries in self.dictionaries.items():
            by_surface = {}
            for surface, canonical in entries:
                by_surface.setdefault(tuple(surface), canonical)
            longest = max((len(s) for s in by_surface), default=0)
            index[etype] = (by_surface, longest)
        object.__setattr__(self, "_index", index)

    def terms(self, etype=None):
        if etype is None:
            return sum(len(v) for v in self.dictionaries.values())
        return len(self.dictionaries.get(etype, ()))

    def display_name(self, etype, canonical):
        return self.display.get((etype, canonical), canonical.replace("_", " "))


def rules_from_entities(entities):
    """Validate entity entries ({type, surface, canonical, [synonyms], [display]}) into a RuleSet."""
    dictionaries = {t: [] for t in AUTHORABLE_TYPES}
    display = {}
    seen_canonical = set()
    seen_surface = {}
    for i, entry in enumerate(entities):
        where = f"entities[{i}]"
        try:
            etype = EntityType.parse(entry["type"])
            canonical = entry["canonical"]
            surfaces = entry["surface"]
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValidationError(f"{where}: missing field {exc}") from None
        except ValueError as exc:
            raise ValidationError(f"{where}: {exc}") from None
        if etype not in AUTHORABLE_TYPES:
            raise ValidationError(f"{where}: {etype.label} entries come from the wearable catalog")
        if not isinstance(canonical, str) or not canonical or any(ch in canonical for ch in " \t:#"):
            raise ValidationError(f"{where}: canonical id must be a non-empty token, got {canonical!r}")
        if (etype, canonical) in seen_canonical:
            raise ValidationError(f"{where}: duplicate canonical {canonical!r} for type {etype.label}")
        seen_canonical.add((etype, canonical))
        if isinstance(surfaces, str):
            surfaces = [surfaces]
        surfaces = list(surfaces) + list(entry.get("synonyms", []))
        first = None
        for surface in surfaces:
            tokens = tuple(tokenize(surface)) if isinstance(surface, str) else ()
            if not tokens:
                raise ValidationError(f"{where}: empty surface for {canonical!r}")
            other = seen_surface.get((etype, tokens))
            if other is not None and other != canonical:
                raise ValidationError(
                    f"{where}: surface {' '.join(tokens)!r} already maps to {other!r}"
                )
            seen_surface[(etype, tokens)] = canonical
            dictionaries[etype].append((tokens, canonical))
            first = first or " ".join(surface.lower().split())
        display[(etype, canonical)] = entry.get("display") or first
    return RuleSet(dictionaries, display)


def load_rules(path_or_doc):
    """Load a rule document (JSON with a top-level ``entities`` list, or the parsed dict)."""
    if isinstance(path_or_doc, dict):
        doc = path_or_doc
    else:
        path = Path(path_or_doc)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ValidationError(f"malformed rule document: {exc.msg}", path=path, line=exc.lineno) from None
    if not isinstance(doc, dict) or not isinstance(doc.get("entities"), list):
        raise ValidationError("rule document needs a top-level 'entities' list")
    return rules_from_entities(doc["entities"])


@dataclass(frozen=True)
class Mention:
    entity_type: EntityType
    canonical: str
    span: tuple  # (sentence_index, token_start, token_end)


def extract_mentions(tokens, rules, sentence_index=0):
    """Greedy longest-match, left to right, independently per entity type."""
    tokens = [t.lower() for t in tokens]
    mentions = []
    for etype in sorted(rules._index):
        by_surface, longest = rules._index[etype]
        i = 0
        while i < len(tokens):
            for length in range(min(longest, len(tokens) - i), 0, -1):
                canonical = by_surface.get(tuple(tokens[i : i + length]))
                if canonical is not None:
                    mentions.append(Mention(etype, canonical, (sentence_index, i, i + length)))
                    i += length
                    break
            else:
                i += 1
    mentions.sort(key=lambda m: (m.span[1], m.entity_type, m.span[2]))
    return mentions


@dataclass(frozen=True)
class Node:
    entity_type: EntityType
    canonical: str
    display: str = field(default="", compare=False)

    @property
    def key(self):
        return f"{self.entity_type.label}:{self.canonical}"

    def sort_key(self):
        return (int(self.entity_type), self.canonical)


@dataclass(frozen=True)
class Edge:
    source: Node
    target: Node
    provenance: str

    def sort_key(self):
        return (self.source.sort_key(), self.target.sort_key(), self.provenance)


@dataclass(frozen=True)
class ConceptGraph:
    nodes: frozenset = frozenset()
    edges: frozenset = frozenset()

    def __post_init__(self):
        for e in self.edges:
            if not adjacent(e.source.entity_type, e.target.entity_type):
                raise ValueError(f"edge {e.source.key} -> {e.target.key} skips the chain order")
        nodes = {n: n for n in self.nodes}
        succ = {}
        for e in self.edges:
            if e.source not in nodes or e.target not in nodes:
                raise ValueError(f"edge {e.source.key} -> {e.target.key} references a missing node")
            succ.setdefault(e.source, set()).add(e.target)
        object.__setattr__(self, "_nodes", nodes)
        object.__setattr__(self, "_succ", succ)

    def node(self, etype, canonical):
        return self._nodes.get(Node(etype, canonical))

    def nodes_of(self, etype):
        return sorted((n for n in self.nodes if n.entity_type == etype), key=Node.sort_key)

    def successors(self, node):
        return sorted(self._succ.get(node, ()), key=Node.sort_key)

    def sorted_edges(self):
        return sorted(self.edges, key=Edge.sort_key)

    def with_additions(self, nodes=(), edges=()):
        return ConceptGraph(self.nodes | frozenset(nodes), self.edges | frozenset(edges))


def build_graph(corpus, rules):
    """Build the graph from ``corpus``: a list of (doc_id, text) pairs or of plain texts."""
    nodes = {}
    edges = set()
    for d, doc in enumerate(corpus):
        doc_id, text = doc if isinstance(doc, tuple) else (f"doc{d}", doc)
        for s, sentence in enumerate(split_sentences(text)):
            mentions = extract_mentions(tokenize(sentence), rules, s)
            sentence_nodes = []
            for m in mentions:
                node = Node(m.entity_type, m.canonical, rules.display_name(m.entity_type, m.canonical))
                nodes.setdefault(node, node)
                sentence_nodes.append(node)
            provenance = f"{doc_id}:{s}"
            for a in sentence_nodes:
                for b in sentence_nodes:
                    if adjacent(a.entity_type, b.entity_type):
                        edges.add(Edge(a, b, provenance))
    return ConceptGraph(frozenset(nodes), frozenset(edges))


def read_corpus(directory):
    """One document per ``*.txt`` file, ordered by file name."""
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"corpus directory not found: {directory}")
    return [(p.stem, p.read_text(encoding="utf-8")) for p in sorted(directory.glob("*.txt"))]


def measurements_for(graph, disorder):
    """Measurement ids reachable from a disorder through its symptoms, sorted."""
    start = graph.node(EntityType.DISORDER, disorder)
    if start is None:
        return []
    found = set()
    queue = deque([start])
    while queue:
        node = queue.popleft()
        for nxt in graph.successors(node):
            if nxt.entity_type == EntityType.SYMPTOM:
                queue.append(nxt)
            elif nxt.entity_type == EntityType.MEASUREMENT:
                found.add(nxt.canonical)
    return sorted(found)


def export_graph(graph):
    """Node declarations (``type:canonical = display``) then sorted edge lines.

    Edge lines follow ``type:canonical -> type:canonical # sentence-id``.
    """
    lines = [f"{n.key} = {n.display}" for n in sorted(graph.nodes, key=Node.sort_key)]
    lines += [f"{e.source.key} -> {e.target.key} # {e.provenance}" for e in graph.sorted_edges()]
    return "\n".join(lines) + ("\n" if lines else "")


def _parse_key(key, path, lineno):
    try:
        etype, canonical = key.strip().split(":", 1)
        return EntityType.parse(etype), canonical
    except ValueError:
        raise ValidationError(f"bad node reference {key!r}", path=path, line=lineno) from None


def parse_graph(text, path=None):
    nodes = {}
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        if " -> " in line:
            body, sep, provenance = line.partition(" # ")
            if not sep:
                raise ValidationError("edge line without provenance", path=path, line=lineno)
            src, dst = body.split(" -> ", 1)
            edges.append((_parse_key(src, path, lineno), _parse_key(dst, path, lineno), provenance.strip(), lineno))
        else:
            key, sep, display = line.partition(" = ")
            if not sep:
                raise ValidationError(f"unrecognized line {line!r}", path=path, line=lineno)
            etype, canonical = _parse_key(key, path, lineno)
            node = Node(etype, canonical, display)
            nodes[node] = node
    edge_set = set()
    for src, dst, provenance, lineno in edges:
        a, b = nodes.get(Node(*src)), nodes.get(Node(*dst))
        if a is None or b is None:
            raise ValidationError("edge references an undeclared node", path=path, line=lineno)
        if not adjacent(a.entity_type, b.entity_type):
            raise ValidationError("edge violates chain order", path=path, line=lineno)
        edge_set.add(Edge(a, b, provenance))
    return ConceptGraph(frozenset(nodes), frozenset(edge_set))


def save_graph(path, graph):
    Path(path).write_text(export_graph(graph), encoding="utf-8")


def load_graph(path):
    return parse_graph(Path(path).read_text(encoding="utf-8"), path=path)
