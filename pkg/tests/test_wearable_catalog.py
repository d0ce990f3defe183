import threading

import pytest
from hypothesis import given, strategies as st

from healthadvisor.concept_graph import EntityType, build_graph, load_rules
from healthadvisor.exceptions import DomainError, ValidationError
from healthadvisor.wearable_catalog import (
    DemandCounter,
    WearableCatalog,
    extend_graph,
    gap_report,
    jaccard,
    load_synonyms,
    make_catalog,
    match_wearables,
    normalize_tokens,
    parse_catalog,
)

HEADER = "name,manufacturer,capabilities,url\n"


def test_single_record_tokens():
    cat = parse_catalog(HEADER + 'Spire,Spire Health,"respiration rate breathing monitor",https://www.spire.io/\n')
    assert len(cat) == 1
    assert cat.records[0].capability_tokens == {"respiration", "rate", "breathing", "monitor"}


def test_empty_catalog():
    assert len(parse_catalog(HEADER)) == 0


def test_fixture_catalog(catalog):
    names = {r.name for r in catalog.records}
    table2 = {"Spire", "Preventice BodyGuardian", "BodyTel", "Valedo", "BalanSens", "LifeCall", "Sensus Pain Management Systems"}
    assert len(catalog) == 8
    assert table2 <= names


@pytest.mark.parametrize(
    "body",
    [
        "Spire,a,respiration,\nSpire,b,rate,\n",
        "Spire,a,   ,\n",
        "Spire,a,the and of,\n",
        "Spire,a,respiration\n",
    ],
)
def test_invalid_catalogs(body):
    with pytest.raises(ValidationError):
        parse_catalog(HEADER + body)


def test_normalize_examples():
    assert normalize_tokens("") == frozenset()
    assert normalize_tokens("Respiration Rate!") == {"respiration", "rate"}
    assert normalize_tokens("breathing rate", {"breathing": "respiration"}) == {"respiration", "rate"}
    assert normalize_tokens("rate of the breathing", {"breathing": "respiration"}) == {"respiration", "rate"}


def test_synonyms_applied_once_not_transitively():
    with pytest.raises(ValidationError):
        make_catalog([], {"a1": "b1", "b1": "c1"})
    assert load_synonyms()["breathing"] == "respiration"


@given(st.text(max_size=60))
def test_normalize_idempotent(text):
    syn = load_synonyms()
    once = normalize_tokens(text, syn)
    assert normalize_tokens(" ".join(sorted(once)), syn) == once


def test_match_examples(catalog):
    results = match_wearables(catalog, {"respiration", "rate"})
    assert any(r.wearable == "Spire" and r.score == 1.0 for r in results)
    assert match_wearables(WearableCatalog(), {"gait"}) == []
    cat = make_catalog([("Rig", "m", "gait posture balance sensor", "")])
    [r] = match_wearables(cat, {"gait", "balance", "tremor"}, threshold=0.4)
    assert r.score == pytest.approx(2 / 5)
    # |{gait}| / |{gait, balance, posture, sensor}| = 0.25 is below the threshold
    assert match_wearables(make_catalog([("Rig", "m", "gait posture sensor", "")]), {"gait", "balance"}, threshold=0.4) == []


def test_jaccard_half():
    assert jaccard(frozenset({"gait", "balance"}), frozenset({"gait", "posture", "balance", "sensor"})) == 0.5
    cat = make_catalog([("Rig", "m", "gait posture balance sensor", "")])
    [r] = match_wearables(cat, {"gait", "balance"}, threshold=0.4)
    # subset of the capability set, so containment scores it 1.0 ahead of Jaccard 2/4
    assert r.score == 1.0
    cat = make_catalog([("Rig", "m", "gait posture sensor", "")])
    [r] = match_wearables(cat, {"gait", "balance", "posture"}, threshold=0.4)
    assert r.score == pytest.approx(2 / 4)


def test_match_errors(catalog):
    with pytest.raises(DomainError):
        match_wearables(catalog, set())
    with pytest.raises(DomainError):
        match_wearables(catalog, {"x"}, threshold=0.0)


TOKENS = ["gait", "balance", "posture", "rate", "heart", "sensor", "pain", "level"]


@given(
    st.lists(st.sets(st.sampled_from(TOKENS), min_size=1), min_size=0, max_size=6),
    st.sets(st.sampled_from(TOKENS), min_size=1),
    st.floats(0.05, 1.0),
)
def test_match_scores_respect_threshold(caps, query, threshold):
    cat = make_catalog([(f"d{i}", "m", " ".join(sorted(c)), "") for i, c in enumerate(caps)])
    results = match_wearables(cat, query, threshold)
    for r in results:
        tokens = cat.by_name(r.wearable).capability_tokens
        assert 0.0 <= r.score <= 1.0
        if set(query) <= tokens:
            assert r.score == 1.0
        else:
            assert r.score >= threshold
    keys = [(-r.score, r.wearable) for r in results]
    assert keys == sorted(keys)


def test_extend_fixture_graph(fixture_graph, extended_graph):
    spire = extended_graph.node(EntityType.WEARABLE, "spire")
    rr = extended_graph.node(EntityType.MEASUREMENT, "respiration_rate")
    assert spire in extended_graph.successors(rr)
    assert fixture_graph.nodes <= extended_graph.nodes
    assert fixture_graph.edges <= extended_graph.edges
    assert not fixture_graph.nodes_of(EntityType.WEARABLE)


def test_extend_without_measurements_is_identity(catalog):
    g = build_graph(["smoking causes lung disease"], load_rules({"entities": [
        {"type": "cause", "surface": "smoking", "canonical": "smoking"},
        {"type": "disorder", "surface": "lung disease", "canonical": "lung_disease"},
    ]}))
    assert extend_graph(g, catalog) == g


def test_no_matching_devices(fixture_graph):
    empty = make_catalog([("Nothing", "m", "zzz", "")])
    g = extend_graph(fixture_graph, empty)
    assert g == fixture_graph
    report = gap_report(g)
    assert [m for m, _ in report.entries] == sorted(n.canonical for n in fixture_graph.nodes_of(EntityType.MEASUREMENT))


def test_gap_report_fixture(extended_graph):
    report = gap_report(extended_graph, {"bone_density": 2})
    assert report.entries == (("bone_density", 2), ("cholesterol", 0))
    assert report.to_csv() == "measurement,demand_count\nbone_density,2\ncholesterol,0\n"


def test_gap_report_all_matched():
    g = build_graph(["x rate"], load_rules({"entities": [{"type": "measurement", "surface": "heart rate", "canonical": "heart_rate"}]}))
    assert gap_report(g).entries == ()


def test_gap_report_rejects_negative(extended_graph):
    with pytest.raises(DomainError):
        gap_report(extended_graph, {"cholesterol": -1})


def test_partition(fixture_graph, catalog, extended_graph):
    measurements = extended_graph.nodes_of(EntityType.MEASUREMENT)
    matched = [m for m in measurements if extended_graph.successors(m)]
    assert len(matched) + len(gap_report(extended_graph).entries) == len(measurements)


def test_counter_file_format(tmp_path):
    path = tmp_path / "counts.txt"
    c = DemandCounter(path)
    assert c.read() == {}
    c.increment(["tremor_amplitude", "bone_density"])
    c.increment(["tremor_amplitude"])
    assert path.read_text() == "bone_density 1\ntremor_amplitude 2\n"
    assert DemandCounter(path).read() == {"bone_density": 1, "tremor_amplitude": 2}
    path.write_text("broken line here\n")
    with pytest.raises(ValidationError):
        DemandCounter(path).read()


def test_counter_serializes_concurrent_writers(tmp_path):
    path = tmp_path / "counts.txt"

    def work():
        c = DemandCounter(path)
        for _ in range(25):
            c.increment(["m"])

    threads = [threading.Thread(target=work) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert DemandCounter(path).read() == {"m": 100}
