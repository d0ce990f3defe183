"""Multiway ID3 decision tree over categorical attributes."""
from dataclasses import dataclass
from typing import Mapping, Union

import numpy as np

from healthadvisor.exceptions import DomainError
from healthadvisor.risk_classifier.info import entropy_from_counts, gain_from_table

# gains closer than this are treated as ties
GAIN_TIE_TOL = 1e-12


@dataclass(frozen=True)
class TreeConfig:
    max_depth: int = 16
    min_gain: float = 0.0
    laplace: bool = False

    def __post_init__(self):
        if self.max_depth < 1:
            raise DomainError("max_depth must be >= 1")
        if self.min_gain < 0:
            raise DomainError("min_gain must be >= 0")


@dataclass(frozen=True)
class RiskVector:
    """(condition, probability) pairs, most likely first; ties ordered by name."""

    entries: tuple

    @classmethod
    def from_probs(cls, probs):
        items = [(c, float(p)) for c, p in probs.items() if p > 0]
        items.sort(key=lambda cp: (-cp[1], cp[0]))
        return cls(tuple(items))

    @property
    def top(self):
        return self.entries[0][0]

    def conditions(self, k=None):
        return [c for c, _ in self.entries[:k]]

    def as_dict(self):
        return dict(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class Leaf:
    counts: Mapping[str, int]


@dataclass(frozen=True)
class Internal:
    split_attribute: str
    children: Mapping[str, "TreeNode"]
    counts: Mapping[str, int]


TreeNode = Union[Leaf, Internal]


def distribution(counts, class_names, laplace=False):
    """ClassDistribution from non-negative integer counts."""
    if laplace:
        total = sum(counts.values()) + len(class_names)
        return {c: (counts.get(c, 0) + 1) / total for c in class_names}
    total = sum(counts.values())
    return {c: n / total for c, n in sorted(counts.items()) if n > 0}


@dataclass(frozen=True)
class DecisionTree:
    root: TreeNode
    schema: object
    config: TreeConfig = TreeConfig()
    n_rows: int = 0

    def predict(self, profile):
        return predict_risks(self, profile)

    def iter_nodes(self):
        stack = [(self.root, 0, ())]
        while stack:
            node, depth, path = stack.pop()
            yield node, depth, path
            if isinstance(node, Internal):
                for value in sorted(node.children, reverse=True):
                    stack.append((node.children[value], depth + 1, path + ((node.split_attribute, value),)))

    @property
    def depth(self):
        return max(d for _, d, _ in self.iter_nodes())

    @property
    def n_leaves(self):
        return sum(isinstance(n, Leaf) for n, _, _ in self.iter_nodes())


def predict_risks(tree, profile):
    """Descend by attribute value; an unseen value stops at the current node's local distribution."""
    profile.check(tree.schema)
    node = tree.root
    while isinstance(node, Internal):
        child = node.children.get(profile[node.split_attribute])
        if child is None:
            break
        node = child
    return RiskVector.from_probs(distribution(node.counts, tree.schema.class_names, tree.config.laplace))


def _encode(dataset):
    schema = dataset.schema
    names = schema.attribute_names
    value_codes = {a: {v: i for i, v in enumerate(sorted(schema.allowed(a)))} for a in names}
    class_codes = {c: i for i, c in enumerate(schema.class_names)}
    n = len(dataset)
    X = np.empty((n, len(names)), dtype=np.int64)
    y = np.empty(n, dtype=np.int64)
    for i, (profile, label) in enumerate(dataset.rows):
        for j, a in enumerate(names):
            X[i, j] = value_codes[a][profile[a]]
        y[i] = class_codes[label]
    return X, y, value_codes


def train_tree(dataset, config=None):
    """Grow the tree greedily, splitting on the unused attribute with the largest information gain.

    A node becomes a leaf when it is pure, no unused attribute takes two or more
    values in it, ``depth == max_depth``, or the best gain is below ``min_gain``.
    Max-gain ties go to the lexicographically smallest attribute name.  Only
    count tables are consulted, so row order does not affect the result.
    """
    config = config or TreeConfig()
    if len(dataset) == 0:
        raise DomainError("cannot train on an empty dataset")
    schema = dataset.schema
    X, y, value_codes = _encode(dataset)
    names = schema.attribute_names
    classes = schema.class_names
    K = len(classes)
    decode = {a: sorted(value_codes[a], key=value_codes[a].get) for a in names}
    # candidate order: by attribute name, so the first maximum wins ties
    order = sorted(range(len(names)), key=lambda j: names[j])

    def counts_of(class_counts):
        return {classes[k]: int(c) for k, c in enumerate(class_counts) if c > 0}

    def grow(idx, available, depth):
        yy = y[idx]
        class_counts = np.bincount(yy, minlength=K)
        counts = counts_of(class_counts)
        if len(counts) == 1 or depth >= config.max_depth or not available:
            return Leaf(counts)
        node_h = entropy_from_counts(class_counts.tolist())
        best_j, best_gain, best_x = None, -1.0, None
        for j in available:
            x = X[idx, j]
            V = len(decode[names[j]])
            table = np.bincount(x * K + yy, minlength=V * K).reshape(V, K)
            if np.count_nonzero(table.sum(axis=1)) < 2:
                continue
            gain = gain_from_table(table, node_h)
            if gain > best_gain + GAIN_TIE_TOL:
                best_j, best_gain, best_x = j, gain, x
        if best_j is None or best_gain < config.min_gain:
            return Leaf(counts)
        rest = [j for j in available if j != best_j]
        attr = names[best_j]
        children = {}
        for code in np.unique(best_x):
            children[decode[attr][code]] = grow(idx[best_x == code], rest, depth + 1)
        return Internal(attr, children, counts)

    root = grow(np.arange(len(dataset)), order, 0)
    return DecisionTree(root, schema, config, len(dataset))
