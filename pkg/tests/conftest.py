import pytest
from hypothesis import settings, strategies as st

from tempknow.formula import (
    BOT, TOP, And, Atom, BoxPast, DiamondPast, Iff, Implies, K1, K2, KAll, KParam, Next, Not,
    Or, Since, SinceStrict, Until,
)
from tempknow.kernel import compiled_backend, python_backend
from tempknow.models import Trace

settings.register_profile("default", deadline=None, max_examples=150)
settings.load_profile("default")

LETTERS = ("p", "q", "r")

atoms_st = st.sampled_from([Atom(n) for n in LETTERS])


def _formulas(unary, binary, leaves=None):
    leaves = leaves or st.one_of(atoms_st, st.sampled_from([TOP, BOT]))
    return st.recursive(
        leaves,
        lambda kids: st.one_of(
            st.builds(lambda c, x: c(x), st.sampled_from(unary), kids),
            st.builds(lambda c, x, y: c(x, y), st.sampled_from(binary), kids, kids),
        ),
        max_leaves=10,
    )


past_formulas = _formulas(
    (Not, K1, K2, DiamondPast, BoxPast),
    (And, Or, Implies, Iff, Since, SinceStrict, KParam),
)
any_formulas = _formulas(
    (Not, K1, K2, DiamondPast, BoxPast, Next, KAll),
    (And, Or, Implies, Iff, Since, SinceStrict, KParam, Until),
)


@st.composite
def traces(draw, names=LETTERS, max_len=8):
    n = draw(st.integers(1, max_len))
    return Trace(n, {p: draw(st.sets(st.integers(0, n - 1))) for p in names})


BACKENDS = [python_backend] + ([compiled_backend] if compiled_backend else [])


@pytest.fixture(params=BACKENDS, ids=lambda b: b.name)
def backend(request):
    return request.param


_ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    return _ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
