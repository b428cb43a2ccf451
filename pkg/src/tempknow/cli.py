"""Command-line entry point.

Exit codes: 0 success (whatever the verdict), 2 syntax/format/usage errors,
3 semantic precondition violations, 4 resource limits.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import decision, unification
from .errors import (
    FormatError, FutureOperatorPresent, KAllPresent, NestedKAll, NotAUnifier,
    ParseError, ResourceLimit,
)
from .parser import load_model, parse_formula, parse_rule, pretty_print
from .semantics import eval_kall, eval_past, vote

EXIT_OK, EXIT_SYNTAX, EXIT_SEMANTIC, EXIT_RESOURCE = 0, 2, 3, 4


@dataclass
class RunConfig:
    state_cap: int
    compose_bound: int = unification.DEFAULT_COMPOSE_BOUND
    strict_since: bool = False
    format: str = "text"

    def __post_init__(self):
        if self.state_cap <= 0 or self.compose_bound <= 0:
            raise ValueError("caps must be positive")

    @property
    def decide_kw(self):
        return {"strict": self.strict_since, "state_cap": self.state_cap}


def _positive(text):
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def _subst_json(sigma):
    return {x: pretty_print(f) for x, f in sorted(sigma.items())}


def _emit(cfg, payload, text_lines):
    if cfg.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(text_lines))


def _write_witness(path, witness):
    if path and witness is not None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(witness.to_json(), fh, indent=2)


def cmd_eval(args, cfg):
    model = load_model(args.model)
    phi = parse_formula(args.formula, strict_since=cfg.strict_since)
    if args.kall:
        row = eval_kall(model, phi, strict=cfg.strict_since)
        rows = {args.formula: [int(b) for b in row]}
        payload = {"formula": args.formula, "rows": rows, "valuation": "kall"}
    else:
        if args.vote:
            trace, source = vote(model), "vote"
        else:
            if args.agent is None and model.agents > 1:
                raise _Usage(f"model has {model.agents} agents; pass --agent N, --vote or --kall")
            i = args.agent or 0
            if not 0 <= i < model.agents:
                raise _Usage(f"agent {i} out of range 0..{model.agents - 1}")
            trace, source = model.agent(i), f"agent {i}"
        table = eval_past(trace, phi, strict=cfg.strict_since)
        payload = {**table.to_json(args.formula), "valuation": source}
        rows = payload["rows"]
    lines = [f"# {payload['formula']}  ({payload['valuation']}, states 0..{model.length - 1})"]
    lines += [" ".join(map(str, r)) + "  " + name for name, r in rows.items()]
    _emit(cfg, payload, lines)


def _verdict(cfg, verdict, witness, label="witness"):
    payload = {"verdict": verdict}
    lines = [verdict]
    if witness is not None:
        payload[label] = witness.to_json()
        lines.append(json.dumps(witness.to_json()))
    _emit(cfg, payload, lines)


def cmd_sat(args, cfg):
    phi = parse_formula(args.formula, strict_since=cfg.strict_since)
    w = decision.satisfiable(phi, **cfg.decide_kw)
    _write_witness(args.witness_out, w)
    _verdict(cfg, "SAT" if w else "UNSAT", w)


def cmd_valid(args, cfg):
    phi = parse_formula(args.formula, strict_since=cfg.strict_since)
    w = decision.counterexample(phi, **cfg.decide_kw)
    _write_witness(args.witness_out, w)
    _verdict(cfg, "INVALID" if w else "VALID", w, "counter_witness")


def cmd_equiv(args, cfg):
    phi = parse_formula(args.left, strict_since=cfg.strict_since)
    psi = parse_formula(args.right, strict_since=cfg.strict_since)
    w = decision.counterexample(phi.iff(psi), **cfg.decide_kw)
    _write_witness(args.witness_out, w)
    _verdict(cfg, "NOT EQUIVALENT" if w else "EQUIVALENT", w, "counter_witness")


def _outcome_json(phi, outcome, cfg):
    match outcome:
        case unification.NotUnifiable():
            return {"status": "NotUnifiable"}
        case unification.UnknownProjective(grounds):
            return {"status": "UnknownProjective", "ground_unifiers": [_subst_json(g) for g in grounds]}
    conds = unification.projectivity_conditions(phi, outcome.sigma)
    return {
        "status": "Projective",
        "sigma": _subst_json(outcome.sigma),
        "ground_seed": None if outcome.ground_seed is None else _subst_json(outcome.ground_seed),
        "chain": list(outcome.chain),
        "power": outcome.power,
        "checks": [
            {"formula": pretty_print(c), "valid": decision.valid_in_logic(c, **cfg.decide_kw)}
            for c in conds
        ],
    }


def _outcome_lines(payload):
    lines = [payload["status"]]
    if payload["status"] == "Projective":
        lines += [f"  {x} := {f}" for x, f in payload["sigma"].items()]
        lines += [f"  check {'ok' if c['valid'] else 'FAILED'}: {c['formula']}" for c in payload["checks"]]
    elif payload["status"] == "UnknownProjective":
        lines += [f"  ground unifier: {g}" for g in payload["ground_unifiers"]]
    return lines


def cmd_unify(args, cfg):
    phi = parse_formula(args.formula, strict_since=cfg.strict_since)
    outcome = unification.projective_unifier(phi, compose_bound=cfg.compose_bound, **cfg.decide_kw)
    payload = {"formula": args.formula, **_outcome_json(phi, outcome, cfg)}
    _emit(cfg, payload, _outcome_lines(payload))


def cmd_admissible(args, cfg):
    rule = parse_rule(args.rule, strict_since=cfg.strict_since)
    res = unification.check_admissible(rule, compose_bound=cfg.compose_bound, **cfg.decide_kw)
    verdict = {True: True, False: False, None: "unknown"}[res.admissible]
    payload = {
        "rule": args.rule,
        "admissible": verdict,
        "unification": _outcome_json(rule.premise, res.outcome, cfg),
    }
    lines = [f"admissible: {'Unknown' if res.admissible is None else str(res.admissible).lower()}"]
    if res.evidence is not None:
        payload["evidence"] = _subst_json(res.evidence)
        payload["evidence_ground"] = res.evidence_is_ground
        payload["evidence_checks"] = res.checks
        lines.append("evidence: " + ", ".join(f"{x} := {f}" for x, f in payload["evidence"].items()))
    _emit(cfg, payload, lines)


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--strict-since", action="store_true",
                        help="read S (and the knowledge operators) with the strict Since")
    common.add_argument("--state-cap", type=_positive, default=None,
                        help="max reachable states per decision (default 2^22 or $TEMPKNOW_STATE_CAP)")
    common.add_argument("--compose-bound", type=_positive, default=unification.DEFAULT_COMPOSE_BOUND)
    common.add_argument("--format", choices=("text", "json"), default="text")

    ap = argparse.ArgumentParser(prog="tempknow", description="Past-time temporal logic with knowledge operators.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="truth table over a model file")
    p.add_argument("model")
    p.add_argument("formula")
    which = p.add_mutually_exclusive_group()
    which.add_argument("--agent", type=int, help="use agent N's valuation (0-based)")
    which.add_argument("--vote", action="store_true", help="use the majority valuation")
    which.add_argument("--kall", action="store_true", help="evaluate KALL over all agents")
    p.set_defaults(run=cmd_eval)

    for name, fn, helptext in (("sat", cmd_sat, "satisfiability with witness"),
                               ("valid", cmd_valid, "membership in the logic")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("formula")
        p.add_argument("--witness-out", metavar="PATH")
        p.set_defaults(run=fn)

    p = sub.add_parser("equiv", parents=[common], help="logical equivalence")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--witness-out", metavar="PATH")
    p.set_defaults(run=cmd_equiv)

    p = sub.add_parser("unify", parents=[common], help="projective unifier")
    p.add_argument("formula")
    p.set_defaults(run=cmd_unify)

    p = sub.add_parser("admissible", parents=[common], help="rule admissibility, e.g. 'x | y / x'")
    p.add_argument("rule")
    p.set_defaults(run=cmd_admissible)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cap = args.state_cap if args.state_cap is not None else decision.default_state_cap()
        cfg = RunConfig(cap, args.compose_bound, args.strict_since, args.format)
        args.run(args, cfg)
    except ParseError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return EXIT_SYNTAX
    except (FormatError, OSError, _Usage, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SYNTAX
    except (FutureOperatorPresent, KAllPresent, NestedKAll, NotAUnifier) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
