import io
import json

import pytest
from hypothesis import given, strategies as st

from tempknow.errors import FormatError, ParseError
from tempknow.formula import (
    BOT, TOP, And, Atom, BoxPast, DiamondPast, Iff, Implies, KAll, KParam, Not, Or, Since,
    SinceStrict, Until, desugar,
)
from tempknow.parser import load_model, load_witness, parse_formula, parse_rule, pretty_print
from conftest import any_formulas

p, q, r, x, y = (Atom(n) for n in "pqrxy")


@pytest.mark.parametrize("text, expected", [
    ("p S q", Since(p, q)),
    ("K[q] p", KParam(q, p)),
    ("~(true S ~p)", Not(Since(TOP, Not(p)))),
    ("p S! q", SinceStrict(p, q)),
    ("p U q", Until(p, q)),
    ("P x & H y", And(DiamondPast(x), BoxPast(y))),
    ("p -> q -> r", Implies(p, Implies(q, r))),
    ("p <-> q <-> r", Iff(Iff(p, q), r)),
    ("p | q & r", Or(p, And(q, r))),
    ("p & q S r", And(p, Since(q, r))),
    ("~p S q", Since(Not(p), q)),
    ("KALL p", KAll(p)),
    ("K[K1 q] p", KParam(parse_formula("K1 q"), p)),
    ("false", BOT),
])
def test_parse_examples(text, expected):
    assert parse_formula(text) == expected


def test_kparam_desugars_to_since():
    assert desugar(parse_formula("K[q] p")) == Since(p, q)


def test_strict_since_flag():
    assert parse_formula("p S q", strict_since=True) == SinceStrict(p, q)


@pytest.mark.parametrize("text", ["p S q S r", "p U q S r", "(p", "p &", "", "K[p q", "p q", "S p", "Pp"])
def test_syntax_errors_carry_span(text):
    with pytest.raises(ParseError) as info:
        parse_formula(text)
    span = info.value.span
    assert 0 <= span.start <= span.end <= len(text) + 1


def test_deep_nesting_is_an_error_not_a_crash():
    with pytest.raises(ParseError):
        parse_formula("~" * 5000 + "p")


@given(any_formulas)
def test_round_trip(phi):
    assert parse_formula(pretty_print(phi)) == phi


@given(st.text(max_size=40))
def test_arbitrary_text_only_raises_parse_error(text):
    try:
        parse_formula(text)
    except ParseError:
        pass


@given(st.text(alphabet="pq()~&|-<>SU!XKPH12[]/, truefals", max_size=30))
def test_token_soup_only_raises_parse_error(text):
    try:
        parse_formula(text)
    except ParseError:
        pass


@pytest.mark.parametrize("text, premises, conclusion", [
    ("x / x | y", (x,), Or(x, y)),
    ("x & ~x / false", (And(x, Not(x)),), BOT),
    ("p, q / p & q", (p, q), And(p, q)),
])
def test_rule_examples(text, premises, conclusion):
    rule = parse_rule(text)
    assert rule.premises == premises and rule.conclusion == conclusion


def test_rule_premise_is_conjunction():
    assert parse_rule("p, q, r / p").premise == And(And(p, q), r)


@pytest.mark.parametrize("text", ["x", "/ x", "x / y z", "x, / y", "x / "])
def test_rule_errors(text):
    with pytest.raises(ParseError):
        parse_rule(text)


def _load(obj):
    return load_model(io.StringIO(json.dumps(obj)))


def test_load_one_agent():
    m = _load({"length": 3, "agents": [{"p": [0, 2]}]})
    assert m.agents == 1 and m.length == 3
    assert [m.agent(0).holds("p", a) for a in range(3)] == [True, False, True]


def test_load_three_agents():
    m = _load({"length": 2, "agents": [{"p": [0]}, {"p": [1]}, {"p": [0, 1]}]})
    assert m.agents == 3


@pytest.mark.parametrize("obj", [
    {"length": 0, "agents": []},
    {"length": 2},
    {"agents": [{}]},
    {"length": 2, "agents": []},
    {"length": 2, "agents": [{"p": [2]}]},
    {"length": 2, "agents": [{"p": [1, 0]}]},
    {"length": 2, "agents": [{"P": [0]}]},
    {"length": 2, "agents": [{"p": "0"}]},
    {"length": "2", "agents": [{}]},
    [1, 2],
])
def test_load_rejects(obj):
    with pytest.raises(FormatError):
        _load(obj)


def test_load_rejects_bad_json():
    with pytest.raises(FormatError):
        load_model(io.StringIO("{length"))


def test_load_from_path(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"length": 1, "agents": [{"q": [0]}]}), encoding="utf-8")
    assert load_model(path).agent(0).holds("q", 0)


def test_load_witness():
    trace, a = load_witness(io.StringIO('{"length": 2, "agents": [{"p": [1]}], "designated": 1}'))
    assert trace.length == 2 and a == 1 and trace.holds("p", 1)
    with pytest.raises(FormatError):
        load_witness(io.StringIO('{"length": 2, "agents": [{}], "designated": 2}'))
