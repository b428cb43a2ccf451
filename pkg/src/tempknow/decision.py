"""Satisfiability and validity for the past fragment.

Truth of a past formula at a state depends only on the prefix ending there,
and the row of subformula truths at state a+1 is a function of the row at a
and the letters true at a+1. Breadth-first search over reachable rows is
therefore exact, and it finds shortest witnesses.
"""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .errors import ResourceLimit
from .formula import Formula, Iff, Not, desugar
from .kernel import backend as default_backend
from .kernel import compile_program
from .models import Trace

DEFAULT_STATE_CAP = 1 << 22
DEFAULT_LETTER_CAP = 16

StateVector = bytes


def default_state_cap() -> int:
    raw = os.environ.get("TEMPKNOW_STATE_CAP")
    if raw:
        cap = int(raw)
        if cap <= 0:
            raise ValueError("TEMPKNOW_STATE_CAP must be positive")
        return cap
    return DEFAULT_STATE_CAP


@dataclass(frozen=True)
class Witness:
    trace: Trace
    designated: int

    def to_json(self) -> dict:
        return {**self.trace.to_json(), "designated": self.designated}


class PastAutomaton:
    """Deterministic automaton whose states are rows of subformula truths."""

    def __init__(self, phi: Formula, *, strict=False, letter_cap=DEFAULT_LETTER_CAP, backend=None):
        self.formula = desugar(phi, strict=strict)
        self.program = compile_program(self.formula)
        if len(self.program.letters) > letter_cap:
            raise ResourceLimit(
                f"{len(self.program.letters)} letters exceed the letter cap of {letter_cap}"
            )
        self.backend = backend or default_backend

    @property
    def closure(self):
        return self.program.closure

    @property
    def letters(self):
        return self.program.letters

    def mask(self, valuation: dict[str, bool]) -> int:
        return sum(1 << i for i, p in enumerate(self.letters) if valuation.get(p))

    def valuation(self, mask: int) -> dict[str, bool]:
        return {p: bool(mask >> i & 1) for i, p in enumerate(self.letters)}

    def initial_states(self) -> list[tuple[dict[str, bool], StateVector]]:
        rows = self.backend.successors(self.program, None)
        return [(self.valuation(m), row) for m, row in enumerate(rows)]

    def step(self, s: StateVector, v: dict[str, bool] | int) -> StateVector:
        mask = v if isinstance(v, int) else self.mask(v)
        return self.backend.step(self.program, s, mask)

    def bit(self, s: StateVector, phi: Formula) -> bool:
        return bool(s[self.program.index(phi)])

    def search(self, state_cap: int | None = None) -> Witness | None:
        cap = default_state_cap() if state_cap is None else state_cap
        prog, succ = self.program, self.backend.successors
        root = prog.root
        parent: dict[bytes, tuple[bytes | None, int]] = {}
        queue: deque[bytes] = deque()

        def visit(src, rows):
            for mask, row in enumerate(rows):
                if row in parent:
                    continue
                parent[row] = (src, mask)
                if row[root]:
                    return row
                if len(parent) > cap:
                    raise ResourceLimit(f"more than {cap} reachable states")
                queue.append(row)
            return None

        hit = visit(None, succ(prog, None))
        while hit is None and queue:
            s = queue.popleft()
            hit = visit(s, succ(prog, s))
        return None if hit is None else self._witness(parent, hit)

    def _witness(self, parent, row) -> Witness:
        masks = []
        while row is not None:
            row, mask = parent[row]
            masks.append(mask)
        masks.reverse()
        rows = [[p for i, p in enumerate(self.letters) if m >> i & 1] for m in masks]
        return Witness(Trace.from_rows(rows), len(masks) - 1)


@lru_cache(maxsize=8192)
def _search(core: Formula, strict: bool, state_cap: int, letter_cap: int, backend) -> Witness | None:
    return PastAutomaton(core, strict=strict, letter_cap=letter_cap, backend=backend).search(state_cap)


def satisfiable(phi: Formula, *, strict=False, state_cap=None, letter_cap=DEFAULT_LETTER_CAP,
                backend=None) -> Witness | None:
    """A shortest witness trace, or None when ``phi`` is unsatisfiable."""
    cap = default_state_cap() if state_cap is None else state_cap
    core = desugar(phi, strict=strict)
    return _search(core, strict, cap, letter_cap, backend or default_backend)


def counterexample(phi: Formula, **kw) -> Witness | None:
    """A state where ``phi`` fails, or None if ``phi`` is in the logic."""
    return satisfiable(Not(phi), **kw)


def valid_in_logic(phi: Formula, **kw) -> bool:
    return counterexample(phi, **kw) is None


def equivalent(phi: Formula, psi: Formula, **kw) -> bool:
    return valid_in_logic(Iff(phi, psi), **kw)


def initial_states(phi: Formula, **kw):
    return PastAutomaton(phi, **kw).initial_states()
