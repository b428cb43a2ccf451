"""Evaluation over finite traces, lasso traces and multi-agent models."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import FutureOperatorPresent, NestedKAll
from .formula import (
    And, Atom, Bottom, Formula, KAll, Next, Not, Or, Since, SinceStrict, Top,
    Until, contains, desugar, subformula_closure,
)
from .kernel import backend as default_backend
from .kernel import compile_program
from .models import LassoTrace, MultiAgentModel, Trace


@dataclass(frozen=True)
class TruthTable:
    """Truth of every subformula of ``formula`` at every state.

    ``formula`` is the desugared root. ``history_dependent`` lists rows whose
    values on lasso loop states are first-unrolling values only.
    """

    formula: Formula
    length: int
    rows: dict[Formula, tuple[bool, ...]]
    history_dependent: frozenset[Formula] = field(default_factory=frozenset)

    def __getitem__(self, phi: Formula) -> tuple[bool, ...]:
        return self.rows[phi]

    def __contains__(self, phi: Formula) -> bool:
        return phi in self.rows

    @property
    def root(self) -> tuple[bool, ...]:
        return self.rows[self.formula]

    def to_json(self, text: str | None = None) -> dict:
        from .parser import pretty_print

        out = {
            "formula": text if text is not None else pretty_print(self.formula),
            "rows": {pretty_print(f): [int(b) for b in r] for f, r in self.rows.items()},
        }
        if self.history_dependent:
            out["history_dependent"] = sorted(pretty_print(f) for f in self.history_dependent)
        return out


def _past_core(phi: Formula, strict: bool) -> Formula:
    core = desugar(phi, strict=strict)
    if contains(core, Until, Next):
        raise FutureOperatorPresent("Until/Next need a lasso trace; use eval_lasso")
    return core


def eval_past(t: Trace, phi: Formula, *, strict: bool = False, backend=None) -> TruthTable:
    """One forward pass of the Since recurrence, O(n * |phi|)."""
    core = _past_core(phi, strict)
    prog = compile_program(core)
    rows = (backend or default_backend).run(prog, t.masks(list(prog.letters)))
    table = {f: tuple(bool(r[i]) for r in rows) for i, f in enumerate(prog.closure)}
    return TruthTable(core, t.length, table)


def eval_brute(t: Trace, phi: Formula, *, strict: bool = False) -> TruthTable:
    """Quantifier-literal evaluation: every Since enumerates its witnesses.

    Quadratic per Since node; meant as an oracle for :func:`eval_past`.
    """
    core = _past_core(phi, strict)
    n = t.length
    val: dict[Formula, list[bool]] = {}
    for f in subformula_closure(core):
        match f:
            case Atom(name):
                row = [t.holds(name, a) for a in range(n)]
            case Top():
                row = [True] * n
            case Bottom():
                row = [False] * n
            case Not(x):
                row = [not v for v in val[x]]
            case And(x, y):
                row = [u and v for u, v in zip(val[x], val[y])]
            case Or(x, y):
                row = [u or v for u, v in zip(val[x], val[y])]
            case Since(x, y) | SinceStrict(x, y):
                last = (lambda a: a + 1) if isinstance(f, Since) else (lambda a: a)
                lhs, rhs = val[x], val[y]
                row = [
                    any(rhs[b] and all(lhs[c] for c in range(b + 1, a + 1)) for b in range(last(a)))
                    for a in range(n)
                ]
            case _:
                raise TypeError(f"unexpected node {f!r}")
        val[f] = row
    return TruthTable(core, n, {f: tuple(r) for f, r in val.items()})


def eval_lasso(lasso: LassoTrace, phi: Formula, *, strict: bool = False) -> TruthTable:
    """Evaluate over ``prefix . loop^omega``; one row entry per prefix and loop state.

    Until/Next are exact. Since rows on loop states are computed along the
    first pass through the loop and are flagged as history dependent: later
    passes can differ because the past keeps growing.
    """
    core = desugar(phi, strict=strict)
    flat = lasso.flat()
    n, start = flat.length, lasso.prefix_length
    succ = [lasso.successor(a) for a in range(n)]
    val: dict[Formula, list[bool]] = {}
    for f in subformula_closure(core):
        match f:
            case Atom(name):
                row = [flat.holds(name, a) for a in range(n)]
            case Top():
                row = [True] * n
            case Bottom():
                row = [False] * n
            case Not(x):
                row = [not v for v in val[x]]
            case And(x, y):
                row = [u and v for u, v in zip(val[x], val[y])]
            case Or(x, y):
                row = [u or v for u, v in zip(val[x], val[y])]
            case Since(x, y):
                lhs, rhs = val[x], val[y]
                row = []
                for a in range(n):
                    row.append(rhs[a] or (a > 0 and lhs[a] and row[a - 1]))
            case SinceStrict(x, y):
                lhs, rhs = val[x], val[y]
                row = [False]
                for a in range(1, n):
                    row.append(lhs[a] and (rhs[a - 1] or row[a - 1]))
            case Next(x):
                row = [val[x][succ[a]] for a in range(n)]
            case Until(x, y):
                lhs, rhs = val[x], val[y]
                row = [False] * n
                # least fixpoint on the loop: two backward sweeps
                for _ in range(2):
                    for a in reversed(range(start, n)):
                        row[a] = rhs[a] or (lhs[a] and row[succ[a]])
                for a in reversed(range(start)):
                    row[a] = rhs[a] or (lhs[a] and row[a + 1])
            case _:
                raise TypeError(f"unexpected node {f!r}")
        val[f] = row
    rows = {f: tuple(r) for f, r in val.items()}
    hist = frozenset(f for f in rows if contains(f, Since, SinceStrict))
    return TruthTable(core, n, rows, hist)


def vote(m: MultiAgentModel) -> Trace:
    """Majority valuation: a letter holds where strictly more than half the agents say so."""
    k = m.agents
    counts: dict[str, list[int]] = {}
    for v in m.agent_valuations:
        for p, pos in v.items():
            row = counts.setdefault(p, [0] * m.length)
            for a in pos:
                row[a] += 1
    return Trace(m.length, {p: {a for a, c in enumerate(row) if 2 * c > k} for p, row in counts.items()})


def _strip_kall(phi: Formula) -> Formula:
    inner = phi.arg if isinstance(phi, KAll) else phi
    if contains(inner, KAll):
        raise NestedKAll("KALL may only occur once, at the top of the formula")
    return inner


def eval_kall(m: MultiAgentModel, phi: Formula, *, strict: bool = False) -> tuple[bool, ...]:
    """Conflict-resolution knowledge at every state: ``phi S phi`` under every agent."""
    inner = _strip_kall(phi)
    S = SinceStrict if strict else Since
    target = S(inner, inner)
    rows = [eval_past(m.agent(i), target, strict=strict).root for i in range(m.agents)]
    return tuple(all(r[a] for r in rows) for a in range(m.length))


def eval_conflict_K(m: MultiAgentModel, phi: Formula, a: int, *, strict: bool = False) -> bool:
    if not 0 <= a < m.length:
        raise IndexError(f"state {a} outside model of length {m.length}")
    return eval_kall(m, phi, strict=strict)[a]
