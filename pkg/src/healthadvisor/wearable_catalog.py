"""Wearable catalog: capability normalization, measurement matching, graph extension, gap report."""
import csv
import io
import os
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path

from filelock import FileLock

from healthadvisor.concept_graph import Edge, EntityType, Node
from healthadvisor.exceptions import DomainError, ValidationError
from healthadvisor.text import STOPWORDS, slugify, tokenize

CATALOG_HEADER = ("name", "manufacturer", "capabilities", "url")
DEFAULT_THRESHOLD = 0.5


def normalize_tokens(text, synonyms=None):
    """Lowercase, split on punctuation/whitespace, drop stopwords, apply synonyms once."""
    synonyms = synonyms or {}
    out = set()
    for token in tokenize(text):
        if token in STOPWORDS:
            continue
        out.add(synonyms.get(token, token))
    return frozenset(out)


def check_synonyms(synonyms):
    """Canonical targets must be normalized fixed points, so one application is idempotent."""
    for key, target in synonyms.items():
        if tokenize(key) != [key] or tokenize(target) != [target]:
            raise ValidationError(f"synonym {key!r} -> {target!r} must map single lowercase tokens")
        if key in STOPWORDS or target in STOPWORDS:
            raise ValidationError(f"synonym {key!r} -> {target!r} involves a stopword")
        if synonyms.get(target, target) != target:
            raise ValidationError(f"synonym target {target!r} is itself remapped")
    return dict(synonyms)


def load_synonyms(path=None):
    """Read a ``token,canonical`` CSV; the bundled table when ``path`` is None."""
    if path is None:
        text = resources.files("healthadvisor").joinpath("data/synonyms.csv").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["token", "canonical"]:
        raise ValidationError("synonym table needs header token,canonical", path=path, line=1)
    table = {}
    for lineno, row in enumerate(rows[1:], 2):
        if not row:
            continue
        if len(row) != 2:
            raise ValidationError("expected 2 fields", path=path, line=lineno)
        table[row[0].strip().lower()] = row[1].strip().lower()
    return check_synonyms(table)


@dataclass(frozen=True)
class WearableRecord:
    name: str
    manufacturer: str
    capabilities: str
    url: str = ""
    capability_tokens: frozenset = frozenset()

    @property
    def canonical(self):
        return slugify(self.name)


@dataclass(frozen=True)
class WearableCatalog:
    records: tuple = ()
    synonyms: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.records)

    def by_name(self, name):
        for r in self.records:
            if r.name == name:
                return r
        return None

    def without(self, *names):
        return WearableCatalog(tuple(r for r in self.records if r.name not in names), self.synonyms)


def make_catalog(entries, synonyms=None):
    """Validate ``(name, manufacturer, capabilities, url)`` tuples into a catalog."""
    synonyms = check_synonyms(synonyms or {})
    records = []
    seen = set()
    slugs = set()
    for i, (name, manufacturer, capabilities, url) in enumerate(entries):
        name = name.strip()
        if not name:
            raise ValidationError(f"record {i}: empty device name")
        if name in seen or slugify(name) in slugs:
            raise ValidationError(f"record {i}: duplicate device name {name!r}")
        tokens = normalize_tokens(capabilities, synonyms)
        if not capabilities.strip() or not tokens:
            raise ValidationError(f"record {i}: empty capabilities for {name!r}")
        seen.add(name)
        slugs.add(slugify(name))
        records.append(WearableRecord(name, manufacturer.strip(), capabilities, url.strip(), tokens))
    return WearableCatalog(tuple(records), synonyms)


def load_catalog(path, synonyms=None):
    """Read the ``name,manufacturer,capabilities,url`` CSV at ``path``."""
    path = Path(path)
    return parse_catalog(path.read_text(encoding="utf-8"), synonyms, path=path)


def parse_catalog(text, synonyms=None, path=None):
    reader = csv.reader(io.StringIO(text, newline=""), strict=True)
    entries = []
    try:
        header = next(reader, None)
        if header is None or tuple(header) != CATALOG_HEADER:
            raise ValidationError(f"catalog header must be {','.join(CATALOG_HEADER)}", path=path, line=1)
        for row in reader:
            if not row:
                continue
            if len(row) != len(CATALOG_HEADER):
                raise ValidationError(f"expected 4 fields, got {len(row)}", path=path, line=reader.line_num)
            entries.append(tuple(row))
    except csv.Error as exc:
        raise ValidationError(str(exc), path=path, line=reader.line_num) from None
    try:
        return make_catalog(entries, synonyms)
    except ValidationError as exc:
        raise ValidationError(str(exc), path=path) from None


def bundled_catalog():
    text = resources.files("healthadvisor").joinpath("data/catalog.csv").read_text("utf-8")
    return parse_catalog(text, load_synonyms())


@dataclass(frozen=True)
class MatchResult:
    measurement: str
    wearable: str
    score: float


def jaccard(a, b):
    union = a | b
    return len(a & b) / len(union) if union else 0.0


def match_wearables(catalog, measurement_tokens, threshold=DEFAULT_THRESHOLD, measurement=""):
    """Subset containment scores 1.0; otherwise Jaccard similarity must reach ``threshold``."""
    if not 0 < threshold <= 1:
        raise DomainError(f"threshold must be in (0, 1], got {threshold}")
    tokens = frozenset(measurement_tokens)
    if not tokens:
        raise DomainError("measurement has no tokens to match")
    results = []
    for rec in catalog.records:
        if tokens <= rec.capability_tokens:
            score = 1.0
        else:
            score = jaccard(tokens, rec.capability_tokens)
            if score < threshold:
                continue
        results.append(MatchResult(measurement, rec.name, score))
    results.sort(key=lambda m: (-m.score, m.wearable))
    return results


def measurement_tokens(node, synonyms=None):
    return normalize_tokens(node.display or node.canonical.replace("_", " "), synonyms)


def match_measurement(catalog, node, threshold=DEFAULT_THRESHOLD):
    tokens = measurement_tokens(node, catalog.synonyms)
    if not tokens:
        return []
    return match_wearables(catalog, tokens, threshold, node.canonical)


def extend_graph(graph, catalog, threshold=DEFAULT_THRESHOLD):
    """Return a new graph with a Wearable node and Measurement -> Wearable edge per match."""
    nodes, edges = [], []
    for m in graph.nodes_of(EntityType.MEASUREMENT):
        for match in match_measurement(catalog, m, threshold):
            rec = catalog.by_name(match.wearable)
            w = Node(EntityType.WEARABLE, rec.canonical, rec.name)
            nodes.append(w)
            edges.append(Edge(m, w, f"catalog:{match.score:.6f}"))
    if not nodes:
        return graph
    return graph.with_additions(nodes, edges)


def wearables_of(graph, measurement_node):
    return [n for n in graph.successors(measurement_node) if n.entity_type == EntityType.WEARABLE]


@dataclass(frozen=True)
class GapReport:
    entries: tuple  # ((measurement, demand_count), ...)
    generated_at: datetime = field(default_factory=lambda: datetime.now(timezone.utc), compare=False)

    def to_csv(self):
        lines = ["measurement,demand_count"] + [f"{m},{c}" for m, c in self.entries]
        return "\n".join(lines) + "\n"


def gap_report(graph, demand_log=None):
    """Measurements with no Wearable edge, most demanded first, then by id."""
    demand_log = demand_log or {}
    entries = []
    for m in graph.nodes_of(EntityType.MEASUREMENT):
        if not wearables_of(graph, m):
            count = demand_log.get(m.canonical, 0)
            if count < 0:
                raise DomainError(f"negative demand count for {m.canonical!r}")
            entries.append((m.canonical, int(count)))
    entries.sort(key=lambda e: (-e[1], e[0]))
    return GapReport(tuple(entries))


class DemandCounter:
    """Demand counts persisted as ``canonical_id count`` lines.

    Updates hold an exclusive lock on ``<path>.lock`` and replace the file
    atomically.  With ``path=None`` counts live in memory only.
    """

    def __init__(self, path=None):
        self.path = Path(path) if path is not None else None
        self._memory = {}

    @staticmethod
    def parse(text, path=None):
        counts = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise ValidationError(f"expected 'canonical_id count', got {line!r}", path=path, line=lineno)
            counts[parts[0]] = int(parts[1])
        return counts

    def read(self):
        if self.path is None:
            return dict(self._memory)
        if not self.path.exists():
            return {}
        return self.parse(self.path.read_text(encoding="utf-8"), self.path)

    def increment(self, measurements):
        measurements = list(measurements)
        if self.path is None:
            for m in measurements:
                self._memory[m] = self._memory.get(m, 0) + 1
            return dict(self._memory)
        with FileLock(str(self.path) + ".lock"):
            counts = self.read()
            for m in measurements:
                counts[m] = counts.get(m, 0) + 1
            self._write(counts)
        return counts

    def _write(self, counts):
        body = "".join(f"{k} {v}\n" for k, v in sorted(counts.items()))
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=self.path.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(body)
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
