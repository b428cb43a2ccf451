import pytest
from hypothesis import given, strategies as st

from tempknow.errors import KAllPresent
from tempknow.formula import (
    BOT, TOP, And, Atom, BoxPast, DiamondPast, Iff, Implies, K1, K2, KAll, KParam, Not, Or,
    Since, SinceStrict, Until, apply_substitution, compose, desugar, letters, node_count,
    subformula_closure, walk,
)
from conftest import any_formulas, past_formulas

p, q, x, y = Atom("p"), Atom("q"), Atom("x"), Atom("y")
CORE = (Atom, type(TOP), type(BOT), Not, And, Or, Since, SinceStrict, Until, type(Not(p).arg))


def test_desugar_k1():
    assert desugar(K1(p)) == Since(p, p)


def test_desugar_k2():
    assert desugar(K2(p)) == Not(Since(TOP, Not(p)))


def test_desugar_core_identity():
    assert desugar(Since(p, q)) == Since(p, q)


def test_desugar_kparam_and_modalities():
    assert desugar(KParam(q, p)) == Since(p, q)
    assert desugar(DiamondPast(x)) == Since(TOP, x)
    assert desugar(BoxPast(x)) == Not(Since(TOP, Not(x)))


def test_desugar_connectives():
    assert desugar(Implies(p, q)) == Or(Not(p), q)
    assert desugar(Iff(p, q)) == Or(And(p, q), And(Not(p), Not(q)))


def test_desugar_strict():
    assert desugar(K1(p), strict=True) == SinceStrict(p, p)
    assert desugar(DiamondPast(p), strict=True) == SinceStrict(TOP, p)


def test_desugar_rejects_kall():
    with pytest.raises(KAllPresent):
        desugar(And(p, KAll(q)))


@given(past_formulas)
def test_desugar_idempotent_and_core(phi):
    once = desugar(phi)
    assert desugar(once) == once
    assert all(isinstance(n, (Atom, type(TOP), type(BOT), Not, And, Or, Since, SinceStrict))
               for n in walk(once))


@given(past_formulas)
def test_desugar_keeps_letters(phi):
    # KParam parameters are ordinary subformulas here, so letters never grow
    assert letters(desugar(phi)) <= letters(phi)


def test_substitution_examples():
    assert apply_substitution({"x": TOP}, Since(x, x)) == Since(TOP, TOP)
    assert apply_substitution({}, K2(Or(x, y))) == K2(Or(x, y))
    assert apply_substitution({"x": y, "y": x}, And(x, y)) == And(y, x)


substitutions = st.dictionaries(st.sampled_from(["p", "q", "r"]), past_formulas, max_size=3)


@given(substitutions, substitutions, past_formulas)
def test_substitution_composition(sigma, tau, phi):
    lhs = apply_substitution(sigma, apply_substitution(tau, phi))
    assert lhs == apply_substitution(compose(sigma, tau), phi)


def test_closure_examples():
    assert subformula_closure(p) == [p]
    assert subformula_closure(Since(p, q)) == [p, q, Since(p, q)]
    assert subformula_closure(And(p, p)) == [p, And(p, p)]


@given(any_formulas)
def test_closure_children_first(phi):
    closure = subformula_closure(phi)
    assert len(closure) == len(set(closure))
    assert len(closure) <= node_count(phi)
    seen = set()
    for f in closure:
        assert all(k in seen for k in f.children)
        seen.add(f)
    assert closure[-1] == phi


def test_letters_examples():
    assert letters(And(p, q)) == {"p", "q"}
    assert letters(TOP) == set()
    assert letters(Or(K1(p), p)) == {"p"}


def test_structural_equality_and_hash():
    a = Since(Atom("p"), Not(Atom("q")))
    b = Since(Atom("p"), Not(Atom("q")))
    assert a == b and hash(a) == hash(b) and a is not b
    assert Since(p, q) != SinceStrict(p, q)
    assert K1(p) != K2(p)


def test_atom_needs_name():
    with pytest.raises(ValueError):
        Atom("")


def test_operator_sugar():
    assert (~p & q) | p == Or(And(Not(p), q), p)
    assert p.implies(q) == Implies(p, q)
