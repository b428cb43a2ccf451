"""Finite traces, lasso traces and multi-agent models over the frame of naturals."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping


@dataclass(frozen=True)
class Trace:
    """An initial segment 0..length-1 of the frame with one valuation.

    ``valuation`` maps a letter to the set of states where it holds; letters
    not mentioned are false everywhere.
    """

    length: int
    valuation: Mapping[str, frozenset[int]] = field(default_factory=dict)

    def __post_init__(self):
        if self.length <= 0:
            raise ValueError("trace length must be positive")
        val = {k: frozenset(v) for k, v in self.valuation.items()}
        for letter, pos in val.items():
            if any(not 0 <= a < self.length for a in pos):
                raise ValueError(f"positions of {letter!r} fall outside the trace")
        object.__setattr__(self, "valuation", val)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[str]]) -> Trace:
        """Build from one set of true letters per state."""
        rows = [set(r) for r in rows]
        val: dict[str, set[int]] = {}
        for a, row in enumerate(rows):
            for p in row:
                val.setdefault(p, set()).add(a)
        return cls(len(rows), val)

    def holds(self, letter: str, a: int) -> bool:
        return a in self.valuation.get(letter, ())

    def masks(self, order: list[str]) -> list[int]:
        """Per state, a bitmask over ``order`` (bit i set iff order[i] is true)."""
        out = [0] * self.length
        for i, p in enumerate(order):
            for a in self.valuation.get(p, ()):
                out[a] |= 1 << i
        return out

    def concat(self, other: Trace) -> Trace:
        val = {p: set(s) for p, s in self.valuation.items()}
        for p, s in other.valuation.items():
            val.setdefault(p, set()).update(a + self.length for a in s)
        return Trace(self.length + other.length, val)

    def to_json(self) -> dict:
        return {
            "length": self.length,
            "agents": [{p: sorted(s) for p, s in sorted(self.valuation.items())}],
        }


@dataclass(frozen=True)
class LassoTrace:
    """The infinite model ``prefix . loop . loop . ...``; the prefix may be empty."""

    prefix: Trace | None
    loop: Trace

    @property
    def prefix_length(self) -> int:
        return 0 if self.prefix is None else self.prefix.length

    @property
    def length(self) -> int:
        return self.prefix_length + self.loop.length

    def flat(self) -> Trace:
        return self.loop if self.prefix is None else self.prefix.concat(self.loop)

    def successor(self, a: int) -> int:
        return a + 1 if a + 1 < self.length else self.prefix_length

    def unroll(self, times: int) -> Trace:
        """prefix followed by ``times`` copies of the loop."""
        t = self.prefix
        for _ in range(times):
            t = self.loop if t is None else t.concat(self.loop)
        return t


@dataclass(frozen=True)
class MultiAgentModel:
    length: int
    agent_valuations: tuple[Mapping[str, frozenset[int]], ...]

    def __post_init__(self):
        if not self.agent_valuations:
            raise ValueError("a model needs at least one agent")
        # validation happens in Trace
        object.__setattr__(
            self, "agent_valuations",
            tuple(Trace(self.length, v).valuation for v in self.agent_valuations),
        )

    @property
    def agents(self) -> int:
        return len(self.agent_valuations)

    def agent(self, i: int) -> Trace:
        return Trace(self.length, self.agent_valuations[i])

    def letters(self) -> set[str]:
        return {p for v in self.agent_valuations for p in v}

    def to_json(self) -> dict:
        return {
            "length": self.length,
            "agents": [{p: sorted(s) for p, s in sorted(v.items())} for v in self.agent_valuations],
        }
