import numpy as np
import pytest
from hypothesis import strategies as st

from sublab import Alphabet, Pattern, Substitution, robinson_projection

_criteria = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark and rep.when == "call":
        _criteria.append((mark.args[0], mark.args[1], rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome in sorted(_criteria):
        terminalreporter.write_line(f"criterion {number:>2} {'PASS' if outcome == 'passed' else 'FAIL'}  {title}")


@pytest.fixture(scope="session")
def sigma():
    return robinson_projection()


@pytest.fixture(scope="session")
def sigma2_0(sigma):
    from sublab import apply

    return apply(sigma, apply(sigma, Pattern(sigma.alphabet, [[0]])))


def random_substitution(rng, k=None, size=None) -> Substitution:
    k = k or int(rng.integers(1, 5))
    m, n = size or (int(rng.integers(1, 4)), int(rng.integers(1, 4)))
    return Substitution(Alphabet.of_size(k), rng.integers(0, k, size=(k, n, m)))


@st.composite
def substitutions(draw, max_letters=4, max_side=3, min_side=1, letters=None):
    k = letters or draw(st.integers(1, max_letters))
    m = draw(st.integers(min_side, max_side))
    n = draw(st.integers(min_side, max_side))
    flat = draw(st.lists(st.integers(0, k - 1), min_size=k * m * n, max_size=k * m * n))
    return Substitution(Alphabet.of_size(k), np.array(flat).reshape(k, n, m))


@st.composite
def rect_patterns(draw, alphabet, max_w=4, max_h=4, min_side=1):
    w = draw(st.integers(min_side, max_w))
    h = draw(st.integers(min_side, max_h))
    flat = draw(st.lists(st.integers(0, len(alphabet) - 1), min_size=w * h, max_size=w * h))
    return Pattern(alphabet, np.array(flat).reshape(h, w))
