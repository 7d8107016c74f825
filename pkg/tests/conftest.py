from importlib import resources

import pytest

from tweettriage import (
    Gazetteer,
    StopwordList,
    load_training,
    load_tweets,
    train_nb,
    train_needs,
)

DATA = resources.files("tweettriage.data")


def data_path(name: str) -> str:
    return str(DATA.joinpath(name))


@pytest.fixture(scope="session")
def stoplist():
    return StopwordList.load()


@pytest.fixture(scope="session")
def gazetteer():
    return Gazetteer.load()


@pytest.fixture(scope="session")
def sample_tweets():
    return load_tweets(data_path("sample_corpus.jsonl"))


@pytest.fixture(scope="session")
def nb_model(stoplist):
    return train_nb(load_training(data_path("nb_train.jsonl")), stoplist)


@pytest.fixture(scope="session")
def svm_model(stoplist):
    return train_needs(load_training(data_path("needs_train.jsonl")), stoplist)


# pass/fail lines collected by test_acceptance.py
ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
