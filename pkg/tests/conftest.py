import pytest
from hypothesis import HealthCheck, settings

from bracketdim.bracket import bracket_from_json
from bracketdim.tournament import parse

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIGURE_DOC = '{"id":"z","children":[{"id":"x","children":["a","b"]},{"id":"y","children":["c","d"]}]}'
B1_DOC = {"a": "a", "b": "b", "c": "c", "d": "d", "x": "a", "y": "c", "z": "a"}
B2_DOC = {"a": "a", "b": "b", "c": "c", "d": "d", "x": "b", "y": "c", "z": "b"}


@pytest.fixture
def figure():
    return parse(FIGURE_DOC)


@pytest.fixture
def figure_brackets(figure):
    return bracket_from_json(figure, B1_DOC), bracket_from_json(figure, B2_DOC)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number][1])
