"""Concrete syntax for formulas and rules, plus the JSON model loader.

Grammar, loosest binding first::

    iff     := imp ('<->' imp)*
    imp     := or ('->' imp)?                 right associative
    or      := and ('|' and)*
    and     := temp ('&' temp)*
    temp    := unary (('S' | 'S!' | 'U') unary)?   no chaining
    unary   := ('~' | 'X' | 'K1' | 'K2' | 'P' | 'H' | 'KALL' | 'K' '[' iff ']') unary
             | atom | 'true' | 'false' | '(' iff ')'
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import IO, Union
import os

from .errors import FormatError, ParseError
from .formula import (
    BOT, TOP, And, Atom, BoxPast, Bottom, DiamondPast, Formula, Iff, Implies,
    K1, K2, KAll, KParam, Next, Not, Or, Since, SinceStrict, Top, Until,
)
from .models import MultiAgentModel, Trace

MAX_NESTING = 200

ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<sym><->|->|[~&|()\[\],/])
  | (?P<strict>S!)
  | (?P<word>[A-Za-z][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)

_KEYWORDS = {"S", "U", "X", "K1", "K2", "K", "P", "H", "KALL"}
_PREFIX = {"~": Not, "X": Next, "K1": K1, "K2": K2, "P": DiamondPast, "H": BoxPast, "KALL": KAll}


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int


@dataclass(frozen=True)
class Token:
    kind: str  # 'atom', 'const', or the literal keyword/symbol text; 'eof' at the end
    text: str
    span: SourceSpan


@dataclass(frozen=True)
class Rule:
    premises: tuple[Formula, ...]
    conclusion: Formula

    @property
    def premise(self) -> Formula:
        """All premises folded into one conjunction."""
        out = self.premises[0]
        for p in self.premises[1:]:
            out = And(out, p)
        return out

    def __str__(self):
        return ", ".join(map(pretty_print, self.premises)) + " / " + pretty_print(self.conclusion)


def tokenize(text: str) -> list[Token]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", SourceSpan(pos, pos + 1))
        span = SourceSpan(m.start(), m.end())
        kind = m.lastgroup
        s = m.group()
        if kind == "word":
            if s in ("true", "false"):
                toks.append(Token("const", s, span))
            elif s in _KEYWORDS:
                toks.append(Token(s, s, span))
            elif ATOM_RE.match(s):
                toks.append(Token("atom", s, span))
            else:
                raise ParseError(f"unknown keyword {s!r}", span)
        elif kind != "ws":
            toks.append(Token(s, s, span))
        pos = m.end()
    toks.append(Token("eof", "", SourceSpan(len(text), len(text))))
    return toks


class _Parser:
    def __init__(self, text: str, strict_since: bool = False):
        self.toks = tokenize(text)
        self.i = 0
        self.nesting = 0
        self.since = SinceStrict if strict_since else Since

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind: str, what: str | None = None) -> Token:
        if self.tok.kind != kind:
            self.fail(what or repr(kind))
        return self.advance()

    def fail(self, expected: str):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(f"expected {expected}, found {found}", t.span)

    def formula(self) -> Formula:
        self.nesting += 1
        if self.nesting > MAX_NESTING:
            raise ParseError("formula nested too deeply", self.tok.span)
        left = self.imp()
        while self.tok.kind == "<->":
            self.advance()
            left = Iff(left, self.imp())
        self.nesting -= 1
        return left

    def imp(self) -> Formula:
        left = self.disj()
        if self.tok.kind == "->":
            self.advance()
            self.nesting += 1
            if self.nesting > MAX_NESTING:
                raise ParseError("formula nested too deeply", self.tok.span)
            right = self.imp()
            self.nesting -= 1
            return Implies(left, right)
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.tok.kind == "|":
            self.advance()
            left = Or(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.temporal()
        while self.tok.kind == "&":
            self.advance()
            left = And(left, self.temporal())
        return left

    def temporal(self) -> Formula:
        left = self.unary()
        kind = self.tok.kind
        if kind in ("S", "S!", "U"):
            self.advance()
            right = self.unary()
            if self.tok.kind in ("S", "S!", "U"):
                raise ParseError(
                    "temporal operators do not chain; add parentheses", self.tok.span
                )
            ctor = {"S": self.since, "S!": SinceStrict, "U": Until}[kind]
            return ctor(left, right)
        return left

    def unary(self) -> Formula:
        t = self.tok
        self.nesting += 1
        if self.nesting > MAX_NESTING:
            raise ParseError("formula nested too deeply", t.span)
        try:
            if t.kind in _PREFIX:
                self.advance()
                return _PREFIX[t.kind](self.unary())
            if t.kind == "K":
                self.advance()
                self.expect("[", "'[' after K")
                param = self.formula()
                self.expect("]", "']'")
                return KParam(param, self.unary())
            if t.kind == "atom":
                self.advance()
                return Atom(t.text)
            if t.kind == "const":
                self.advance()
                return TOP if t.text == "true" else BOT
            if t.kind == "(":
                self.advance()
                inner = self.formula()
                self.expect(")", "')'")
                return inner
            self.fail("a formula")
        finally:
            self.nesting -= 1


def parse_formula(text: str, *, strict_since: bool = False) -> Formula:
    """Parse ``text``; with ``strict_since`` the plain ``S`` keyword means ``S!``."""
    p = _Parser(text, strict_since)
    phi = p.formula()
    if p.tok.kind != "eof":
        p.fail("end of input")
    return phi


def parse_rule(text: str, *, strict_since: bool = False) -> Rule:
    p = _Parser(text, strict_since)
    if p.tok.kind == "/":
        raise ParseError("rule needs at least one premise", p.tok.span)
    premises = [p.formula()]
    while p.tok.kind == ",":
        p.advance()
        premises.append(p.formula())
    p.expect("/", "',' or '/'")
    conclusion = p.formula()
    if p.tok.kind != "eof":
        p.fail("end of input")
    return Rule(tuple(premises), conclusion)


_BINARY_SYMBOL = {And: "&", Or: "|", Implies: "->", Iff: "<->", Since: "S", SinceStrict: "S!", Until: "U"}
_PREFIX_SYMBOL = {cls: sym for sym, cls in _PREFIX.items()}


def pretty_print(phi: Formula) -> str:
    """Fully parenthesised text that :func:`parse_formula` reads back exactly."""
    memo: dict[int, str] = {}
    stack = [(phi, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in memo:
            continue
        kids = node.children
        if kids and not expanded:
            stack.append((node, True))
            stack.extend((k, False) for k in kids)
            continue
        parts = [memo[id(k)] for k in kids]
        match node:
            case Atom(name):
                s = name
            case Top():
                s = "true"
            case Bottom():
                s = "false"
            case KParam():
                s = f"K[{parts[0]}] {parts[1]}"
            case _ if type(node) in _PREFIX_SYMBOL:
                sym = _PREFIX_SYMBOL[type(node)]
                s = f"{sym}{parts[0]}" if sym == "~" else f"{sym} {parts[0]}"
            case _:
                s = f"({parts[0]} {_BINARY_SYMBOL[type(node)]} {parts[1]})"
        memo[id(node)] = s
    return memo[id(phi)]


def _decode_valuation(raw, length, where) -> dict[str, frozenset[int]]:
    if not isinstance(raw, dict):
        raise FormatError(f"{where}: valuation must be an object mapping letters to positions")
    val = {}
    for letter, positions in raw.items():
        if not isinstance(letter, str) or not ATOM_RE.match(letter):
            raise FormatError(f"{where}: {letter!r} is not a valid letter")
        if not isinstance(positions, list):
            raise FormatError(f"{where}: positions of {letter!r} must be a list")
        prev = -1
        for x in positions:
            if type(x) is not int:
                raise FormatError(f"{where}: position {x!r} of {letter!r} is not an integer")
            if x <= prev:
                raise FormatError(f"{where}: positions of {letter!r} must be strictly ascending")
            if x >= length:
                raise FormatError(f"{where}: position {x} of {letter!r} is outside length {length}")
            prev = x
        val[letter] = frozenset(positions)
    return val


def model_from_json(data) -> MultiAgentModel:
    if not isinstance(data, dict):
        raise FormatError("model must be a JSON object")
    for key in ("length", "agents"):
        if key not in data:
            raise FormatError(f"missing field {key!r}")
    length = data["length"]
    if type(length) is not int or length <= 0:
        raise FormatError("length must be a positive integer")
    agents = data["agents"]
    if not isinstance(agents, list) or not agents:
        raise FormatError("agents must be a nonempty list")
    vals = tuple(_decode_valuation(a, length, f"agent {i}") for i, a in enumerate(agents))
    return MultiAgentModel(length, vals)


def load_model(source: Union[str, os.PathLike, IO[str]]) -> MultiAgentModel:
    """Read a model file (path or open text stream)."""
    try:
        if hasattr(source, "read"):
            data = json.load(source)
        else:
            with open(source, encoding="utf-8") as fh:
                data = json.load(fh)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    return model_from_json(data)


def load_witness(source) -> tuple[Trace, int]:
    """Read a witness file: a one-agent model with a ``designated`` state."""
    if hasattr(source, "read"):
        data = json.load(source)
    else:
        with open(source, encoding="utf-8") as fh:
            data = json.load(fh)
    model = model_from_json(data)
    a = data.get("designated")
    if type(a) is not int or not 0 <= a < model.length:
        raise FormatError("designated must be a state of the trace")
    return model.agent(0), a
