"""Flattening of a past-only core formula into an instruction array.

Instruction ``i`` computes the truth of closure element ``i`` from earlier
entries of the current row (children precede parents) and, for the temporal
opcodes, from the previous row. Strict Since at state a>0 is
lhs(a) and (rhs(a-1) or self(a-1)); it is false at state 0.
"""
from __future__ import annotations

from array import array
from dataclasses import dataclass

from ..errors import FutureOperatorPresent
from ..formula import (
    And, Atom, Bottom, Formula, Next, Not, Or, Since, SinceStrict, Top, Until,
    contains, subformula_closure,
)

OP_TRUE, OP_FALSE, OP_ATOM, OP_NOT, OP_AND, OP_OR, OP_SINCE, OP_SSINCE = range(8)

_OPCODE = {Top: OP_TRUE, Bottom: OP_FALSE, Atom: OP_ATOM, Not: OP_NOT, And: OP_AND,
           Or: OP_OR, Since: OP_SINCE, SinceStrict: OP_SSINCE}


@dataclass(frozen=True, eq=False)
class Program:
    closure: tuple[Formula, ...]
    letters: tuple[str, ...]
    ops: array
    lhs: array
    rhs: array

    @property
    def size(self) -> int:
        return len(self.closure)

    @property
    def root(self) -> int:
        return len(self.closure) - 1

    def index(self, phi: Formula) -> int:
        return self.closure.index(phi)


def compile_program(phi: Formula, letter_order: list[str] | None = None) -> Program:
    """``phi`` must already be desugared."""
    if contains(phi, Until, Next):
        raise FutureOperatorPresent("Until/Next are outside the past fragment")
    closure = subformula_closure(phi)
    pos = {f: i for i, f in enumerate(closure)}
    names = sorted({f.name for f in closure if isinstance(f, Atom)})
    if letter_order is not None:
        missing = set(names) - set(letter_order)
        if missing:
            raise ValueError(f"letter order lacks {sorted(missing)}")
        names = list(letter_order)
    lidx = {n: i for i, n in enumerate(names)}
    ops, lhs, rhs = array("i"), array("i"), array("i")
    for f in closure:
        try:
            ops.append(_OPCODE[type(f)])
        except KeyError:
            raise TypeError(f"{type(f).__name__} is not a core connective; desugar first") from None
        if isinstance(f, Atom):
            lhs.append(lidx[f.name])
            rhs.append(0)
        else:
            kids = [pos[k] for k in f.children] + [0, 0]
            lhs.append(kids[0])
            rhs.append(kids[1])
    return Program(tuple(closure), tuple(names), ops, lhs, rhs)
