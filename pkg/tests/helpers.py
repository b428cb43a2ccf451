"""Random generators and independent oracles shared by the test modules.

Nothing here calls the row kernel or the decision procedure.
"""
import random
from collections import Counter
from itertools import product

from tempknow.formula import (
    TOP, BOT, And, Atom, BoxPast, DiamondPast, Iff, Implies, K1, K2, KParam, Next, Not, Or,
    Since, SinceStrict, Top, Bottom, Until, desugar, subformula_closure,
)
from tempknow.models import LassoTrace, MultiAgentModel, Trace

UNARY_PAST = (Not, K1, K2, DiamondPast, BoxPast)
BINARY_PAST = (And, Or, Implies, Iff, Since, SinceStrict, KParam)


def random_formula(rng, depth, names, *, unary=UNARY_PAST, binary=BINARY_PAST, constants=True):
    """A random formula of depth at most ``depth`` (atoms have depth 0)."""
    leaves = [Atom(n) for n in names] + ([TOP, BOT] if constants else [])
    if depth == 0 or rng.random() < 0.2:
        return rng.choice(leaves)
    if rng.random() < 0.35:
        return rng.choice(unary)(random_formula(rng, depth - 1, names, unary=unary, binary=binary,
                                                constants=constants))
    a = random_formula(rng, depth - 1, names, unary=unary, binary=binary, constants=constants)
    b = random_formula(rng, depth - 1, names, unary=unary, binary=binary, constants=constants)
    return rng.choice(binary)(a, b)


def random_future_formula(rng, depth, names):
    return random_formula(rng, depth, names, unary=(Not, Next), binary=(And, Or, Until))


def random_trace(rng, n, names, density=0.5):
    return Trace(n, {p: {a for a in range(n) if rng.random() < density} for p in names})


def random_lasso(rng, names, max_prefix=4, max_loop=4):
    k = rng.randint(0, max_prefix)
    prefix = random_trace(rng, k, names) if k else None
    return LassoTrace(prefix, random_trace(rng, rng.randint(1, max_loop), names))


def random_model(rng, names, max_len=6, max_agents=6):
    n = rng.randint(1, max_len)
    return MultiAgentModel(n, tuple(random_trace(rng, n, names).valuation
                                    for _ in range(rng.randint(1, max_agents))))


# -- brute force over traces -------------------------------------------------

def _column(f, val, a, letters_now):
    """Truth of core node ``f`` at state ``a`` by direct quantification over
    the already computed rows ``val`` (which cover states 0..a for children)."""
    if isinstance(f, Atom):
        return f.name in letters_now
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Not):
        return not val[f.arg][a]
    if isinstance(f, And):
        return val[f.left][a] and val[f.right][a]
    if isinstance(f, Or):
        return val[f.left][a] or val[f.right][a]
    if isinstance(f, (Since, SinceStrict)):
        hi = a + 1 if isinstance(f, Since) else a
        lhs, rhs = val[f.left], val[f.right]
        return any(rhs[b] and all(lhs[c] for c in range(b + 1, a + 1)) for b in range(hi))
    raise TypeError(f)


class BruteSearch:
    """Enumerate finite traces and evaluate ``phi`` at their last state.

    ``shortest(limit, prune=False)`` inspects every trace of length <= limit
    in order of length. With ``prune`` a prefix is dropped when its column of
    subformula truths at the last state already appeared: two prefixes with
    the same column agree on every extension.
    """

    def __init__(self, phi, names=None, strict=False):
        self.core = desugar(phi, strict=strict)
        self.closure = subformula_closure(self.core)
        own = sorted({f.name for f in self.closure if isinstance(f, Atom)})
        self.names = own if names is None else sorted(names)
        self.alphabet = [frozenset(c) for c in _subsets(self.names)]

    def _extend(self, val, a, letters_now):
        new = {f: r + [None] for f, r in val.items()} if val else {f: [None] for f in self.closure}
        for f in self.closure:
            new[f][a] = _column(f, new, a, letters_now)
        return new

    def shortest(self, limit, prune=False):
        """Letters per state of a shortest trace ending in a phi-state, else None."""
        level = [((), None)]
        seen = set()
        for n in range(1, limit + 1):
            nxt = []
            for word, val in level:
                for letter in self.alphabet:
                    v = self._extend(val, n - 1, letter)
                    w = word + (letter,)
                    if v[self.core][n - 1]:
                        return w
                    if prune:
                        key = tuple(v[f][n - 1] for f in self.closure)
                        if key in seen:
                            continue
                        seen.add(key)
                    nxt.append((w, v))
            if not nxt:
                return None
            level = nxt
        return None

    def words(self, limit):
        total = 0
        for n in range(1, limit + 1):
            total += len(self.alphabet) ** n
        return total


def _subsets(names):
    for bits in product((0, 1), repeat=len(names)):
        yield {p for p, b in zip(names, bits) if b}


def all_traces(names, n):
    for rows in product(list(_subsets(names)), repeat=n):
        yield Trace.from_rows(rows)


# -- lasso unrolling oracle ---------------------------------------------------

def future_depth(f):
    if isinstance(f, (Until, Next)):
        return 1 + max(future_depth(k) for k in f.children)
    return max((future_depth(k) for k in f.children), default=0)


def unrolled_eval(lasso, phi, depth=4):
    """Future-fragment truth on the states of ``prefix . loop`` read off a
    finite unrolling with ``depth`` loop copies, using bounded quantifiers.

    The last unrolled state steps back to the start of the last loop copy,
    so Next never falls off the end. Until only looks forward inside the
    unrolling, which can go wrong in the last copy; each nesting level moves
    such errors at most one copy back, so ``depth`` is raised to nesting + 1
    and only the first pass is reported.
    """
    core = desugar(phi)
    depth = max(depth, future_depth(core) + 1)
    word = lasso.unroll(depth)
    n, len_loop = word.length, lasso.loop.length
    val = {}
    for f in subformula_closure(core):
        if isinstance(f, Atom):
            row = [word.holds(f.name, a) for a in range(n)]
        elif isinstance(f, Top):
            row = [True] * n
        elif isinstance(f, Bottom):
            row = [False] * n
        elif isinstance(f, Not):
            row = [not v for v in val[f.arg]]
        elif isinstance(f, And):
            row = [u and v for u, v in zip(val[f.left], val[f.right])]
        elif isinstance(f, Or):
            row = [u or v for u, v in zip(val[f.left], val[f.right])]
        elif isinstance(f, Next):
            last = n - len_loop
            row = [val[f.arg][a + 1 if a + 1 < n else last] for a in range(n)]
        elif isinstance(f, Until):
            lhs, rhs = val[f.left], val[f.right]
            row = [any(rhs[b] and all(lhs[c] for c in range(a, b)) for b in range(a, n)) for a in range(n)]
        else:
            raise TypeError(f)
        val[f] = row
    return {f: tuple(r[: lasso.length]) for f, r in val.items()}


def count_vote(model):
    """Majority valuation computed position by position."""
    out = {}
    for p in model.letters():
        out[p] = frozenset(
            a for a in range(model.length)
            if Counter(a in v.get(p, ()) for v in model.agent_valuations)[True] * 2 > model.agents
        )
    return {p: s for p, s in out.items() if s}


def seeded(seed):
    return random.Random(seed)
