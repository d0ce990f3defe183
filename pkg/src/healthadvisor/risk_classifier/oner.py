"""OneR baseline: one rule per value of a single attribute (Holte, 1993)."""
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Mapping

from healthadvisor.exceptions import DomainError
from healthadvisor.risk_classifier.tree import RiskVector


def _majority(counter):
    # most frequent, ties to the smallest label
    return min(counter.items(), key=lambda kv: (-kv[1], kv[0]))[0]


@dataclass(frozen=True)
class OneRModel:
    attribute: str
    rule: Mapping[str, str]
    default: str
    schema: object = None
    training_error: int = 0

    def predict_label(self, profile):
        return self.rule.get(profile[self.attribute], self.default)

    def predict(self, profile):
        if self.schema is not None:
            profile.check(self.schema)
        return RiskVector(((self.predict_label(profile), 1.0),))


def rule_for(dataset, attribute):
    """Majority-label rule for one attribute and its training error count."""
    by_value = defaultdict(Counter)
    for profile, label in dataset.rows:
        by_value[profile[attribute]][label] += 1
    rule = {v: _majority(c) for v, c in by_value.items()}
    errors = sum(sum(c.values()) - c[rule[v]] for v, c in by_value.items())
    return rule, errors


def train_oner(dataset):
    if len(dataset) == 0:
        raise DomainError("cannot train on an empty dataset")
    default = _majority(Counter(dataset.labels))
    best = None
    for attribute in sorted(dataset.schema.attribute_names):
        rule, errors = rule_for(dataset, attribute)
        if best is None or errors < best[2]:
            best = (attribute, rule, errors)
    attribute, rule, errors = best
    full = {v: rule.get(v, default) for v in sorted(dataset.schema.allowed(attribute))}
    return OneRModel(attribute, full, default, dataset.schema, errors)
