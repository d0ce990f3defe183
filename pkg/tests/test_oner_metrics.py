import math

import pytest
from hypothesis import given

from healthadvisor.exceptions import DomainError
from healthadvisor.risk_classifier import (
    EvalMetrics,
    LabeledDataset,
    PersonProfile,
    RiskVector,
    evaluate,
    train_oner,
    train_tree,
)
from oracles import brute_oner_errors
from strategies import datasets, make_dataset


def test_perfect_separator_chosen():
    rows = [({"a": "1", "b": "x"}, "c1"), ({"a": "1", "b": "y"}, "c2"), ({"a": "2", "b": "y"}, "c2")]
    model = train_oner(make_dataset(rows, ["a", "b"]))
    assert model.attribute == "b"
    assert model.training_error == 0


def test_all_labels_identical_picks_first_attribute():
    rows = [({"z": "1", "m": "2"}, "c"), ({"z": "2", "m": "1"}, "c")]
    model = train_oner(make_dataset(rows, ["z", "m"]))
    assert model.attribute == "m"
    assert model.default == "c"


def test_six_rows_error_one_beats_two():
    rows = [
        ({"A": "x", "B": "p"}, "c1"),
        ({"A": "x", "B": "q"}, "c1"),
        ({"A": "x", "B": "p"}, "c2"),
        ({"A": "y", "B": "q"}, "c2"),
        ({"A": "y", "B": "p"}, "c2"),
        ({"A": "y", "B": "q"}, "c2"),
    ]
    assert brute_oner_errors(rows, "A") == 1
    assert brute_oner_errors(rows, "B") == 2
    model = train_oner(make_dataset(rows, ["A", "B"]))
    assert (model.attribute, model.training_error) == ("A", 1)


def test_rule_covers_all_allowed_values(table1):
    model = train_oner(table1)
    assert set(model.rule) == set(table1.schema.allowed(model.attribute))
    unseen = PersonProfile({**table1.rows[0][0].values, model.attribute: "never seen"})
    assert model.predict(unseen).entries == ((model.default, 1.0),)


def test_empty_dataset():
    schema = make_dataset([({"A": "x"}, "c")], ["A"]).schema
    with pytest.raises(DomainError):
        train_oner(LabeledDataset(schema, ()))


@given(datasets(max_rows=12, max_values=3, max_classes=3))
def test_oner_attains_minimum_error(ds):
    rows = [(dict(p.values), lab) for p, lab in ds.rows]
    model = train_oner(ds)
    errors = {a: brute_oner_errors(rows, a) for a in ds.schema.attribute_names}
    assert model.training_error == min(errors.values())
    assert model.attribute == min(a for a, e in errors.items() if e == model.training_error)


class _Fixed:
    def __init__(self, schema, probs):
        self.schema = schema
        self.probs = probs

    def predict(self, profile):
        return RiskVector.from_probs(self.probs)


def test_perfect_predictor_metrics():
    ds = make_dataset([({"A": "x"}, "c1"), ({"A": "y"}, "c2")], ["A"])
    m = evaluate(train_tree(ds), ds)
    assert m == EvalMetrics(1.0, 0.0)


def test_uniform_two_class_rmse():
    ds = make_dataset([({"A": "x"}, "c1"), ({"A": "y"}, "c2"), ({"A": "y"}, "c1")], ["A"])
    m = evaluate(_Fixed(ds.schema, {"c1": 0.5, "c2": 0.5}), ds)
    # per row (0.5-1)^2 + 0.5^2 = 0.5, mean over 2 classes 0.25
    assert m.rmse == pytest.approx(0.5, abs=1e-12)


def test_oner_rmse_is_one_hot():
    ds = make_dataset([({"A": "x"}, "c1"), ({"A": "x"}, "c2"), ({"A": "x"}, "c1"), ({"A": "y"}, "c3")], ["A"])
    model = train_oner(ds)
    m = evaluate(model, ds)
    assert m.accuracy == 0.75
    assert m.rmse == pytest.approx(math.sqrt(2 * 0.25 / 3), abs=1e-12)


def test_evaluate_empty_and_unknown_label():
    ds = make_dataset([({"A": "x"}, "c1")], ["A"])
    tree = train_tree(ds)
    with pytest.raises(DomainError):
        evaluate(tree, LabeledDataset(ds.schema, ()))
    other = make_dataset([({"A": "x"}, "zz")], ["A"])
    with pytest.raises(DomainError):
        evaluate(tree, other)


@given(datasets())
def test_metric_ranges(ds):
    for model in (train_tree(ds), train_oner(ds)):
        m = evaluate(model, ds)
        assert 0.0 <= m.accuracy <= 1.0
        assert 0.0 <= m.rmse <= 1.0
