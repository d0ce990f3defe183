"""Entropy and information gain over categorical labels, in bits."""
import math
from collections import Counter, defaultdict

import numpy as np

from healthadvisor.exceptions import DomainError


def entropy_from_counts(counts):
    """Entropy of a label histogram; zero counts contribute nothing (0 log 0 = 0)."""
    total = sum(counts)
    if total <= 0:
        raise DomainError("entropy of an empty multiset is undefined")
    h = 0.0
    for c in sorted(counts):
        if c > 0:
            p = c / total
            h -= p * math.log2(p)
    return max(h, 0.0)


def entropy(labels):
    counts = Counter(labels)
    if not counts:
        raise DomainError("entropy of an empty multiset is undefined")
    return entropy_from_counts(counts.values())


def _partition(dataset, attribute):
    if attribute not in dataset.schema.attribute_names:
        raise DomainError(f"unknown attribute {attribute!r}")
    if len(dataset) == 0:
        raise DomainError("dataset is empty")
    groups = defaultdict(Counter)
    for profile, label in dataset.rows:
        groups[profile[attribute]][label] += 1
    return groups


def conditional_entropy(dataset, attribute):
    groups = _partition(dataset, attribute)
    n = len(dataset)
    total = 0.0
    for value in sorted(groups):
        counts = groups[value]
        size = sum(counts.values())
        total += size / n * entropy_from_counts(counts.values())
    return total


def information_gain(dataset, attribute):
    groups = _partition(dataset, attribute)
    h = entropy(dataset.labels)
    if len(groups) < 2:
        return 0.0
    gain = h - conditional_entropy(dataset, attribute)
    # float noise around the [0, h] bounds
    return min(max(gain, 0.0), h)


def _plogp_rows(table):
    totals = table.sum(axis=1, keepdims=True).astype(float)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = np.where(table > 0, table / totals, 1.0)
        terms = np.where(table > 0, p * np.log2(p), 0.0)
    return -terms.sum(axis=1), totals[:, 0]


def gain_from_table(table, node_entropy=None):
    """Information gain from a (values x classes) count table whose rows are the observed values.

    Rows with zero total are ignored.  Used by tree induction, where tables are
    built with ``np.bincount`` instead of Python dictionaries.
    """
    table = np.asarray(table)
    table = table[table.sum(axis=1) > 0]
    if node_entropy is None:
        node_entropy = entropy_from_counts(table.sum(axis=0).tolist())
    if table.shape[0] < 2:
        return 0.0
    row_h, sizes = _plogp_rows(table)
    cond = float((sizes / sizes.sum() * row_h).sum())
    return min(max(node_entropy - cond, 0.0), node_entropy)
