"""Profile in; risks, measurements, wearables and unmet measurements out."""
import csv
import io
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from healthadvisor.concept_graph import EntityType, measurements_for
from healthadvisor.exceptions import DomainError, ValidationError
from healthadvisor.risk_classifier import predict_risks
from healthadvisor.synthetic import generate_synthetic_dataset  # noqa: F401  (pipeline surface)
from healthadvisor.text import slugify
from healthadvisor.wearable_catalog import DEFAULT_THRESHOLD, match_measurement, wearables_of


@dataclass(frozen=True)
class PipelineConfig:
    top_k: int = 3
    min_probability: float = 0.1
    match_threshold: float = DEFAULT_THRESHOLD

    def __post_init__(self):
        if self.top_k < 1:
            raise DomainError("top_k must be >= 1")
        if not 0 <= self.min_probability < 1:
            raise DomainError("min_probability must be in [0, 1)")
        if not 0 < self.match_threshold <= 1:
            raise DomainError("match_threshold must be in (0, 1]")


def parse_aliases(text, path=None):
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["class_name", "canonical_id"]:
        raise ValidationError("alias table needs header class_name,canonical_id", path=path, line=1)
    aliases = {}
    for lineno, row in enumerate(rows[1:], 2):
        if not row:
            continue
        if len(row) != 2 or not row[0] or not row[1]:
            raise ValidationError("expected class_name,canonical_id", path=path, line=lineno)
        aliases[row[0]] = row[1]
    return aliases


def load_aliases(path=None):
    """Class name -> Disorder canonical id; the bundled table when ``path`` is None."""
    if path is None:
        return parse_aliases(resources.files("healthadvisor").joinpath("data/aliases.csv").read_text("utf-8"))
    return parse_aliases(Path(path).read_text(encoding="utf-8"), path)


@dataclass(frozen=True)
class ConditionChain:
    condition: str
    disorder: str
    measurements: tuple
    wearables: tuple  # MatchResult, ordered by measurement then score


@dataclass(frozen=True)
class Recommendation:
    profile_id: str
    risks: tuple
    chains: tuple
    unmet_measurements: tuple

    @property
    def wearables(self):
        return sorted({m.wearable for c in self.chains for m in c.wearables})

    @property
    def conditions(self):
        return [c for c, _ in self.risks]

    def to_dict(self):
        rows = []
        for chain in self.chains:
            for measurement in chain.measurements:
                matched = [[m.wearable, m.score] for m in chain.wearables if m.measurement == measurement]
                rows.append([chain.condition, measurement, matched])
        return {
            "profile_id": self.profile_id,
            "risks": [[c, p] for c, p in self.risks],
            "chains": rows,
            "unmet_measurements": list(self.unmet_measurements),
        }

    def dumps(self):
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)


@dataclass(frozen=True)
class FailedRecommendation:
    profile_id: str
    error: str

    def to_dict(self):
        return {"profile_id": self.profile_id, "error": self.error}

    def dumps(self):
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)


def select_risks(risks, config):
    return tuple((c, p) for c, p in risks.entries[: config.top_k] if p >= config.min_probability)


def recommend(profile, tree, graph, catalog, config=None, aliases=None, counter=None):
    """Run one profile through classifier, concept graph and catalog.

    Only wearables that both match the measurement and hang off it in ``graph``
    are reported.  Measurements left without a wearable are returned as unmet
    and, when ``counter`` is given, each is counted once for this run.
    """
    config = config or PipelineConfig()
    aliases = aliases if aliases is not None else {}
    risks = select_risks(predict_risks(tree, profile), config)
    chains = []
    unmet = set()
    for condition, _ in risks:
        disorder = aliases.get(condition, slugify(condition))
        measurements = measurements_for(graph, disorder)
        matches = []
        for canonical in measurements:
            node = graph.node(EntityType.MEASUREMENT, canonical)
            in_graph = {w.display for w in wearables_of(graph, node)}
            found = [m for m in match_measurement(catalog, node, config.match_threshold) if m.wearable in in_graph]
            if found:
                matches.extend(found)
            else:
                unmet.add(canonical)
        chains.append(ConditionChain(condition, disorder, tuple(measurements), tuple(matches)))
    unmet = tuple(sorted(unmet))
    if counter is not None and unmet:
        counter.increment(unmet)
    return Recommendation(profile.person_id, risks, tuple(chains), unmet)


def batch_recommend(profiles, tree, graph, catalog, config=None, aliases=None, counter=None):
    """Recommend for each profile in order; a failing profile yields a FailedRecommendation."""
    out = []
    for profile in profiles:
        try:
            out.append(recommend(profile, tree, graph, catalog, config, aliases, counter))
        except DomainError as exc:
            out.append(FailedRecommendation(profile.person_id, str(exc)))
    return out


def dumps_recommendations(results):
    """One sorted-key JSON document per line."""
    return "".join(r.dumps() + "\n" for r in results)
