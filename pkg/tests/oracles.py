"""Brute-force references, written without touching the package's implementations."""
import itertools
import math


def brute_entropy(labels):
    labels = list(labels)
    n = len(labels)
    total = 0.0
    for c in sorted(set(labels)):
        p = labels.count(c) / n
        total += -p * math.log2(p)
    return total


def brute_partitions(rows, attribute):
    """rows: list of (dict, label). Explicit list of the sub-lists, one per value present."""
    values = sorted({r[attribute] for r, _ in rows})
    return [[lab for r, lab in rows if r[attribute] == v] for v in values]


def brute_conditional_entropy(rows, attribute):
    n = len(rows)
    return sum(len(part) / n * brute_entropy(part) for part in brute_partitions(rows, attribute))


def brute_gain(rows, attribute):
    return brute_entropy([lab for _, lab in rows]) - brute_conditional_entropy(rows, attribute)


def brute_oner_errors(rows, attribute):
    """Minimum training error over every possible value -> label mapping."""
    values = sorted({r[attribute] for r, _ in rows})
    labels = sorted({lab for _, lab in rows})
    best = None
    for choice in itertools.product(labels, repeat=len(values)):
        rule = dict(zip(values, choice))
        errors = sum(rule[r[attribute]] != lab for r, lab in rows)
        best = errors if best is None else min(best, errors)
    return best


def reachable(edges, start):
    """Forward closure over (source_key, target_key) pairs by plain DFS."""
    seen = set()
    stack = [start]
    while stack:
        node = stack.pop()
        for a, b in edges:
            if a == node and b not in seen:
                seen.add(b)
                stack.append(b)
    return seen
