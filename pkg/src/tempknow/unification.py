"""Unifiers, projective unifiers and rule admissibility for the past logic.

A substitution ``sigma`` is projective for ``phi`` when ``sigma(phi)`` is in
the logic and ``H phi -> (x <-> sigma(x))`` is in the logic for every letter
``x`` of ``phi``. Such a unifier is most general, so it alone decides
admissibility of rules with premise ``phi``.

Candidates come from ground unifiers ``e`` via the Loewenheim-style map
``x -> (H phi & x) | (~H phi & e(x))``. They are tried in this order:

1. each ground candidate and its self-compositions up to ``compose_bound``;
2. the composition of all ground candidates in enumeration order;
3. other compositions of ground candidates of length up to
   ``compose_bound``, at most ``mixed_limit`` of them;
4. latching maps, at most ``mixed_limit`` of them: each letter keeps its
   value while ``H phi`` holds and afterwards is a constant, or "x was true
   at some good point", or "x was true at every good point".

Nothing is reported as projective unless it passed the check above.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import islice, product

from .decision import valid_in_logic
from .errors import NotAUnifier
from .formula import (
    BOT, TOP, And, Atom, BoxPast, DiamondPast, Formula, Iff, Implies, Not, Or, Substitution,
    apply_substitution, compose, desugar, is_ground, letters,
)
from .parser import Rule

DEFAULT_COMPOSE_BOUND = 3
DEFAULT_MIXED_LIMIT = 64


@dataclass(frozen=True)
class NotUnifiable:
    pass


@dataclass(frozen=True)
class Projective:
    """``sigma`` is the composition of the ground candidates listed in
    ``chain`` (outermost first, indices into the ground unifier list),
    raised to ``power``. An empty chain marks a latching map, which has no
    ground seed."""

    sigma: dict[str, Formula]
    ground_seed: dict[str, Formula] | None
    power: int = 1
    chain: tuple[int, ...] = (0,)


@dataclass(frozen=True)
class UnknownProjective:
    ground_unifiers: tuple[dict[str, Formula], ...]


UnificationOutcome = NotUnifiable | Projective | UnknownProjective


def _image(sigma: Substitution, x: str) -> Formula:
    return sigma.get(x, Atom(x))


def _ground_maps(names):
    for values in product((BOT, TOP), repeat=len(names)):
        yield dict(zip(names, values))


def ground_unifiers(phi: Formula, **kw) -> list[dict[str, Formula]]:
    """All {false,true}-valued unifiers, letters in lexicographic order, false first."""
    desugar(phi)  # reject KALL early
    return [e for e in _ground_maps(sorted(letters(phi))) if valid_in_logic(apply_substitution(e, phi), **kw)]


def is_unifiable(phi: Formula, **kw) -> bool:
    desugar(phi)
    return any(valid_in_logic(apply_substitution(e, phi), **kw) for e in _ground_maps(sorted(letters(phi))))


def loewenheim_candidate(phi: Formula, eps: Substitution, *, simplify: bool = True) -> dict[str, Formula]:
    """The map x -> (H phi & x) | (~H phi & eps(x)) on the letters of ``phi``.

    With ``simplify`` the constant disjunct/conjunct is dropped when eps(x) is
    true or false.
    """
    box = BoxPast(phi)
    sigma = {}
    for x in sorted(letters(phi)):
        keep = And(box, Atom(x))
        e = _image(eps, x)
        if simplify and e == TOP:
            sigma[x] = Or(keep, Not(box))
        elif simplify and e == BOT:
            sigma[x] = keep
        else:
            sigma[x] = Or(keep, And(Not(box), e))
    return sigma


def projectivity_conditions(phi: Formula, sigma: Substitution) -> list[Formula]:
    """The formulas that must all be in the logic for ``sigma`` to be projective for ``phi``."""
    box = BoxPast(phi)
    conds = [apply_substitution(sigma, phi)]
    conds += [Implies(box, Iff(Atom(x), _image(sigma, x))) for x in sorted(letters(phi))]
    return conds


def verify_projective(phi: Formula, sigma: Substitution, **kw) -> bool:
    return all(valid_in_logic(c, **kw) for c in projectivity_conditions(phi, sigma))


def _compose_chain(subs):
    out = subs[-1]
    for s in reversed(subs[:-1]):
        out = compose(s, out)
    return out


def _latching(phi, limit):
    box = BoxPast(phi)
    names = sorted(letters(phi))
    after = {
        "false": lambda x: BOT,
        "true": lambda x: TOP,
        "once": lambda x: DiamondPast(And(box, x)),
        "always": lambda x: BoxPast(Implies(box, x)),
    }
    count = 0
    for choice in product(after, repeat=len(names)):
        if not set(choice) & {"once", "always"}:
            continue
        if count >= limit:
            return
        count += 1
        yield {x: Or(And(box, Atom(x)), And(Not(box), after[c](Atom(x)))) for x, c in zip(names, choice)}


def _candidates(phi, grounds, compose_bound, mixed_limit):
    base = [loewenheim_candidate(phi, e) for e in grounds]

    def powers(chain, sigma):
        cur = sigma
        for k in range(1, compose_bound + 1):
            yield chain, k, cur
            cur = compose(sigma, cur)

    for i, sigma in enumerate(base):
        yield from powers((i,), sigma)
    if len(base) > 1:
        full = tuple(range(len(base)))
        yield full, 1, _compose_chain(base)
        words = (
            w for n in range(2, compose_bound + 1) for w in product(range(len(base)), repeat=n)
            if w != full and len(set(w)) > 1
        )
        for word in islice(words, mixed_limit):
            yield word, 1, _compose_chain([base[i] for i in word])
    for sigma in _latching(phi, mixed_limit):
        yield (), 1, sigma


def projective_unifier(phi: Formula, *, compose_bound: int = DEFAULT_COMPOSE_BOUND,
                       mixed_limit: int = DEFAULT_MIXED_LIMIT, **kw) -> UnificationOutcome:
    if compose_bound < 1:
        raise ValueError("compose_bound must be positive")
    grounds = ground_unifiers(phi, **kw)
    if not grounds:
        return NotUnifiable()
    for chain, power, sigma in _candidates(phi, grounds, compose_bound, mixed_limit):
        if verify_projective(phi, sigma, **kw):
            seed = grounds[chain[0]] if chain else None
            return Projective(sigma, seed, power, chain)
    return UnknownProjective(tuple(grounds))


def check_most_general(phi: Formula, sigma_p: Substitution, sigma: Substitution, **kw) -> bool:
    """Whether sigma(x) <-> sigma(sigma_p(x)) is in the logic for every letter x of phi.

    Raises NotAUnifier if ``sigma`` does not unify ``phi``.
    """
    if not valid_in_logic(apply_substitution(sigma, phi), **kw):
        raise NotAUnifier("sigma does not unify phi")
    return all(
        valid_in_logic(Iff(_image(sigma, x), apply_substitution(sigma, _image(sigma_p, x))), **kw)
        for x in sorted(letters(phi))
    )


@dataclass(frozen=True)
class Admissibility:
    """``admissible`` is None when no verified projective unifier was found.

    When the rule is not admissible, ``evidence`` unifies the premise but not
    the conclusion. It is ground whenever some ground substitution does that;
    otherwise it is the projective unifier itself.
    """

    rule: Rule
    admissible: bool | None
    outcome: UnificationOutcome
    evidence: dict[str, Formula] | None = None
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def evidence_is_ground(self) -> bool:
        return self.evidence is not None and is_ground(self.evidence)


def find_counter_unifier(premise: Formula, conclusion: Formula, **kw) -> dict[str, Formula] | None:
    """First ground substitution unifying ``premise`` but not ``conclusion``."""
    names = sorted(letters(premise) | letters(conclusion))
    for g in _ground_maps(names):
        if valid_in_logic(apply_substitution(g, premise), **kw) and not valid_in_logic(
            apply_substitution(g, conclusion), **kw
        ):
            return g
    return None


def check_admissible(rule: Rule, *, compose_bound: int = DEFAULT_COMPOSE_BOUND,
                     mixed_limit: int = DEFAULT_MIXED_LIMIT, **kw) -> Admissibility:
    alpha, beta = rule.premise, rule.conclusion
    desugar(beta)
    outcome = projective_unifier(alpha, compose_bound=compose_bound, mixed_limit=mixed_limit, **kw)
    match outcome:
        case NotUnifiable():
            return Admissibility(rule, True, outcome)
        case UnknownProjective():
            return Admissibility(rule, None, outcome)
    if valid_in_logic(apply_substitution(outcome.sigma, beta), **kw):
        return Admissibility(rule, True, outcome)
    evidence = find_counter_unifier(alpha, beta, **kw)
    if evidence is None:
        evidence = dict(outcome.sigma)
    checks = {
        "unifies_premise": valid_in_logic(apply_substitution(evidence, alpha), **kw),
        "unifies_conclusion": valid_in_logic(apply_substitution(evidence, beta), **kw),
    }
    return Admissibility(rule, False, outcome, evidence, checks)


def is_admissible(rule: Rule, **kw) -> bool | None:
    """True, False, or None for unknown."""
    return check_admissible(rule, **kw).admissible
