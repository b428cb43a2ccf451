"""Formula AST, desugaring into the Since core, and substitutions.

Formulas are immutable and compared structurally. Hashes are cached on the
node, which matters once substitutions start producing large shared DAGs.
"""
from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Callable, Iterator, Mapping

from .errors import KAllPresent

Substitution = Mapping[str, "Formula"]


class Formula:
    arity = 0

    @property
    def children(self) -> tuple[Formula, ...]:
        return ()

    def rebuild(self, *children: Formula) -> Formula:
        return self

    def __invert__(self):
        return Not(self)

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def implies(self, other):
        return Implies(self, other)

    def iff(self, other):
        return Iff(self, other)

    def __str__(self):
        from .parser import pretty_print

        return pretty_print(self)


def _node(cls):
    cls = dataclass(frozen=True, repr=False, eq=False)(cls)
    names = tuple(f.name for f in fields(cls))
    tag = cls.__name__

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((tag,) + tuple(getattr(self, n) for n in names))
            object.__setattr__(self, "_hash", h)
        return h

    def __eq__(self, other):
        if self is other:
            return True
        if type(other) is not cls or hash(self) != hash(other):
            return False
        return all(getattr(self, n) == getattr(other, n) for n in names)

    def __repr__(self):
        return f"{tag}({', '.join(repr(getattr(self, n)) for n in names)})"

    cls.__hash__ = __hash__
    cls.__eq__ = __eq__
    cls.__repr__ = __repr__
    return cls


@_node
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("atom names must be nonempty")


@_node
class Top(Formula):
    pass


@_node
class Bottom(Formula):
    pass


class _Unary(Formula):
    arity = 1

    @property
    def children(self):
        return (self.arg,)

    def rebuild(self, arg):
        if arg is self.arg:
            return self
        return type(self)(arg)


class _Binary(Formula):
    arity = 2

    @property
    def children(self):
        return (self.left, self.right)

    def rebuild(self, left, right):
        if left is self.left and right is self.right:
            return self
        return type(self)(left, right)


@_node
class Not(_Unary):
    arg: Formula


@_node
class And(_Binary):
    left: Formula
    right: Formula


@_node
class Or(_Binary):
    left: Formula
    right: Formula


@_node
class Implies(_Binary):
    left: Formula
    right: Formula


@_node
class Iff(_Binary):
    left: Formula
    right: Formula


@_node
class Since(_Binary):
    """``left S right``: right held at some b <= now, left at every point after b."""

    left: Formula
    right: Formula


@_node
class SinceStrict(_Binary):
    """Like Since but the witness must lie strictly in the past."""

    left: Formula
    right: Formula


@_node
class Until(_Binary):
    left: Formula
    right: Formula


@_node
class Next(_Unary):
    arg: Formula


@_node
class K1(_Unary):
    arg: Formula


@_node
class K2(_Unary):
    arg: Formula


@_node
class KParam(Formula):
    """Knowledge of ``arg`` parameterised by the event ``param``."""

    param: Formula
    arg: Formula

    arity = 2

    @property
    def children(self):
        return (self.param, self.arg)

    def rebuild(self, param, arg):
        if param is self.param and arg is self.arg:
            return self
        return KParam(param, arg)


@_node
class DiamondPast(_Unary):
    arg: Formula


@_node
class BoxPast(_Unary):
    arg: Formula


@_node
class KAll(_Unary):
    arg: Formula


TOP = Top()
BOT = Bottom()

CORE_TYPES = (Atom, Top, Bottom, Not, And, Or, Since, SinceStrict, Until, Next)
PAST_TEMPORAL = (Since, SinceStrict)
FUTURE_TEMPORAL = (Until, Next)


def atoms(*names: str) -> tuple[Atom, ...]:
    return tuple(Atom(n) for n in names)


def _transform(phi: Formula, fn: Callable[[Formula, tuple], Formula]) -> Formula:
    """Bottom-up rewrite; ``fn`` receives the node and its rewritten children.

    Iterative, and memoised on node identity so shared subterms are rewritten
    once.
    """
    done: dict[int, Formula] = {}
    stack = [(phi, False)]
    while stack:
        node, expanded = stack.pop()
        key = id(node)
        if key in done:
            continue
        kids = node.children
        if expanded or not kids:
            done[key] = fn(node, tuple(done[id(k)] for k in kids))
        else:
            stack.append((node, True))
            stack.extend((k, False) for k in reversed(kids) if id(k) not in done)
    return done[id(phi)]


def desugar(phi: Formula, *, strict: bool = False) -> Formula:
    """Rewrite knowledge and derived operators into Not/And/Or/Since.

    ``strict`` makes the knowledge operators and P/H expand with the strict
    Since instead of the reflexive one.
    """
    S = SinceStrict if strict else Since

    def rw(node, kids):
        match node:
            case KAll():
                raise KAllPresent("KALL cannot be desugared; evaluate it over a multi-agent model")
            case K1():
                (a,) = kids
                return S(a, a)
            case K2() | BoxPast():
                (a,) = kids
                return Not(S(TOP, Not(a)))
            case DiamondPast():
                (a,) = kids
                return S(TOP, a)
            case KParam():
                p, a = kids
                return S(a, p)
            case Implies():
                a, b = kids
                return Or(Not(a), b)
            case Iff():
                a, b = kids
                return Or(And(a, b), And(Not(a), Not(b)))
        return node.rebuild(*kids) if kids else node

    return _transform(phi, rw)


def apply_substitution(sigma: Substitution, phi: Formula) -> Formula:
    """Simultaneously replace every atom ``x`` by ``sigma[x]``."""
    if not sigma:
        return phi

    def rw(node, kids):
        if isinstance(node, Atom):
            return sigma.get(node.name, node)
        return node.rebuild(*kids) if kids else node

    return _transform(phi, rw)


def compose(sigma: Substitution, tau: Substitution) -> dict[str, Formula]:
    """The substitution x -> sigma(tau(x))."""
    out = {x: apply_substitution(sigma, f) for x, f in tau.items()}
    for x, f in sigma.items():
        out.setdefault(x, f)
    return out


def walk(phi: Formula) -> Iterator[Formula]:
    """Every node, once per distinct object, parents before children."""
    seen = set()
    stack = [phi]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        yield node
        stack.extend(node.children)


def subformula_closure(phi: Formula) -> list[Formula]:
    """Distinct subformulas, children before parents."""
    return list(dict.fromkeys(_postorder(phi)))


def letters(phi: Formula) -> set[str]:
    return {n.name for n in walk(phi) if isinstance(n, Atom)}


def _postorder(phi: Formula) -> list[Formula]:
    """Distinct node objects, children before parents."""
    out = []
    visited: set[int] = set()
    stack = [(phi, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            out.append(node)
            continue
        if id(node) in visited:
            continue
        visited.add(id(node))
        stack.append((node, True))
        stack.extend((k, False) for k in reversed(node.children))
    return out


def node_count(phi: Formula) -> int:
    """Size of the formula as a tree (shared subterms counted every time)."""
    memo: dict[int, int] = {}
    for node in _postorder(phi):
        memo[id(node)] = 1 + sum(memo[id(k)] for k in node.children)
    return memo[id(phi)]


def depth(phi: Formula) -> int:
    memo: dict[int, int] = {}
    for node in _postorder(phi):
        memo[id(node)] = 1 + max((memo[id(k)] for k in node.children), default=-1)
    return memo[id(phi)]


def contains(phi: Formula, *types: type) -> bool:
    return any(isinstance(n, types) for n in walk(phi))


def is_ground(sigma: Substitution) -> bool:
    return all(isinstance(f, (Top, Bottom)) for f in sigma.values())
