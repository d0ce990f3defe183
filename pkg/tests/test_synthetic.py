import hashlib
import io
from collections import Counter

import pytest

from healthadvisor.exceptions import DomainError
from healthadvisor.risk_classifier import write_dataset
from healthadvisor.synthetic import AGE_GROUPS, CONDITIONS, PRIOR_RECORDS, STATES, generate_synthetic_dataset


def csv_text(ds):
    buf = io.StringIO()
    write_dataset(ds, buf)
    return buf.getvalue()


def test_minimum_viable():
    ds = generate_synthetic_dataset(1, 2, 2)
    assert len(ds) == 2
    assert len(set(ds.labels)) == 2


def test_same_seed_same_bytes():
    assert csv_text(generate_synthetic_dataset(7, 1000, 10)) == csv_text(generate_synthetic_dataset(7, 1000, 10))
    assert csv_text(generate_synthetic_dataset(7, 1000, 10)) != csv_text(generate_synthetic_dataset(8, 1000, 10))


@pytest.mark.parametrize("args", [(1, 5, 0), (1, 5, 51), (1, 4, 5)])
def test_invalid_sizes(args):
    with pytest.raises(DomainError):
        generate_synthetic_dataset(*args)


def _reference_label(age, prior, state, n_classes):
    # re-derived from the documented rule, not from the module's cache
    digests = sorted(
        hashlib.sha256(f"{a}|{p}|{s}".encode()).hexdigest() for a in AGE_GROUPS for p in PRIOR_RECORDS for s in STATES
    )
    rank = digests.index(hashlib.sha256(f"{age}|{prior}|{state}".encode()).hexdigest())
    return CONDITIONS[rank % n_classes]


def test_label_function_spot_checks():
    ds = generate_synthetic_dataset(3, 300, 50)
    for profile, label in ds.rows[:40]:
        assert label == _reference_label(profile["age_group"], profile["prior_health_records"], profile["state"], 50)


@pytest.mark.slow
def test_full_scale_histogram_recount():
    ds = generate_synthetic_dataset(7, 135_000, 50)
    text = csv_text(ds)
    digests = sorted(
        hashlib.sha256(f"{a}|{p}|{s}".encode()).hexdigest() for a in AGE_GROUPS for p in PRIOR_RECORDS for s in STATES
    )
    rank = {d: i for i, d in enumerate(digests)}
    recount = Counter()
    stated = Counter()
    for line in text.splitlines()[1:]:
        pid, age, _g, _e, state, _o, _m, prior, label = line.split(",")
        d = hashlib.sha256(f"{age}|{prior}|{state}".encode()).hexdigest()
        recount[CONDITIONS[rank[d] % 50]] += 1
        stated[label] += 1
    assert stated == recount
    assert sum(stated.values()) == 135_000
    assert set(stated) == set(CONDITIONS)
