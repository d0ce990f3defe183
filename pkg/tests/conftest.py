import pytest
from hypothesis import settings

from healthadvisor import data_path
from healthadvisor.concept_graph import build_graph, load_rules, read_corpus
from healthadvisor.pipeline import load_aliases
from healthadvisor.risk_classifier import read_dataset, read_profiles, train_tree
from healthadvisor.wearable_catalog import bundled_catalog, extend_graph

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


@pytest.fixture(scope="session")
def table1():
    return read_dataset(data_path("table1.csv"))


@pytest.fixture(scope="session")
def table1_tree(table1):
    return train_tree(table1)


@pytest.fixture(scope="session")
def table1_profiles():
    return {p.person_id: p for p in read_profiles(data_path("table1_profiles.csv"))}


@pytest.fixture(scope="session")
def rules():
    return load_rules(data_path("rules.json"))


@pytest.fixture(scope="session")
def corpus():
    return read_corpus(data_path("corpus"))


@pytest.fixture(scope="session")
def fixture_graph(corpus, rules):
    return build_graph(corpus, rules)


@pytest.fixture(scope="session")
def catalog():
    return bundled_catalog()


@pytest.fixture(scope="session")
def extended_graph(fixture_graph, catalog):
    return extend_graph(fixture_graph, catalog)


@pytest.fixture(scope="session")
def aliases():
    return load_aliases()
