from __future__ import annotations

import pytest

from crowdoc.corpus.models import CorpusFilter, PostKind
from crowdoc.retrieval.index import build_index

from helpers import build_store_from_dump, fixture_dump

# Filled by test_acceptance.verdict; echoed after the run so the gate can
# be read directly off the test log, one line per criterion.
acceptance_verdicts: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_verdicts:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_verdicts:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def fixture_store(tmp_path_factory):
    store, stats = build_store_from_dump(
        fixture_dump(), tmp_path_factory.mktemp("fixture-store")
    )
    return store


@pytest.fixture(scope="session")
def android_index(fixture_store):
    scope = CorpusFilter(
        required_tags=frozenset({"android"}),
        min_score=5,
        kinds=frozenset({PostKind.ANSWER}),
    )
    return build_index(fixture_store, scope)


@pytest.fixture(scope="session")
def kotlin_index(fixture_store):
    scope = CorpusFilter(
        required_tags=frozenset({"kotlin"}),
        min_score=5,
        kinds=frozenset({PostKind.ANSWER}),
    )
    return build_index(fixture_store, scope)
