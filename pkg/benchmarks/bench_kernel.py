"""Compare the compiled row kernel with the pure-Python one.

    python benchmarks/bench_kernel.py [--repeat N]

Two workloads: a long trace run (eval_past) and a reachability search
(satisfiability). Both backends must return identical results.
"""
import argparse
import random
import sys
import time

from tempknow.decision import PastAutomaton
from tempknow.kernel import compile_program, compiled_backend, python_backend
from tempknow.formula import desugar
from tempknow.parser import parse_formula

RUN_FORMULA = "K2 (p -> P q) & (K[q] (p | r) S! ~r) | H (P p & P q)"
SEARCH_FORMULAS = [
    # unsatisfiable, so the whole reachable space is explored
    "P (a & P (b & P (c & P (d & P e)))) & H ~e",
    "H (p -> (q S r)) & P (s & ~P t) & (u S! v) & P (~q & ~r & ~(q S r) & p)",
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_run(backends, repeat, n=200_000):
    prog = compile_program(desugar(parse_formula(RUN_FORMULA)))
    rng = random.Random(0)
    masks = [rng.getrandbits(len(prog.letters)) for _ in range(n)]
    results = {}
    for be in backends:
        results[be.name] = best_of(lambda: be.run(prog, masks), repeat)
    return f"run {n} states, {prog.size} subformulas", results


def bench_search(backends, repeat, text):
    phi = parse_formula(text)
    results = {}
    for be in backends:
        aut = PastAutomaton(phi, backend=be)
        results[be.name] = best_of(lambda: _search(aut), repeat)
    return f"search {text!r}", results


def _search(aut):
    w = aut.search(1 << 22)
    return None if w is None else w.to_json()


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = [python_backend] + ([compiled_backend] if compiled_backend else [])
    if compiled_backend is None:
        print("compiled extension not built; timing the Python backend only", file=sys.stderr)

    rows = [bench_run(backends, args.repeat)]
    rows += [bench_search(backends, args.repeat, t) for t in SEARCH_FORMULAS]
    for label, res in rows:
        outs = {name: out for name, (_, out) in res.items()}
        first = next(iter(outs.values()))
        same = all(_norm(o) == _norm(first) for o in outs.values())
        print(label)
        for name, (secs, _) in res.items():
            print(f"  {name:8s} {secs * 1000:9.1f} ms")
        if len(res) == 2:
            py, c = (res[b.name][0] for b in backends)
            print(f"  speedup  {py / c:9.1f}x   results identical: {same}")
        if not same:
            return 1
    return 0


def _norm(out):
    return [bytes(r) for r in out] if isinstance(out, list) else out


if __name__ == "__main__":
    sys.exit(main())
