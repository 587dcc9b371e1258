"""Compare the compiled and pure-Python kernels on polynomial products, exact
division and chain stepping.

The compiled polynomial kernels apply when packed monomial keys fit in 64 bits
(n <= 4) and coefficients fit in 64 bits; otherwise both rows time the same
Python code.

    python3 benchmarks/bench_core.py [--repeat 5] [--json]
"""

import argparse
import json
import timeit
from fractions import Fraction

import numpy as np

import tpush.algebra.mpoly as mpoly_mod
import tpush.montecarlo as mc
from tpush import _core_py
from tpush.algebra import MPoly
from tpush.chain import ChainSpec
from tpush.polynomials import e_star

try:
    from tpush import _core as _core_c
except ImportError:
    _core_c = None


def _poly_cases():
    # packed keys fit 64 bits only for n <= 4; larger n always takes the Python path
    n = 4
    a = e_star(2, n) * e_star(3, n) * e_star(1, n)
    b = e_star(2, n) * e_star(1, n) + MPoly.x(n, 1) * MPoly.q(n)
    prod = a * b
    return {
        "mul (e*_1 e*_2 e*_3) x (e*_1 e*_2 + q x_1), n=4": lambda: a * b,
        "divexact of that product, n=4": lambda: prod.divexact(b),
    }


def _chain_case(steps):
    spec = ChainSpec((3, 2, 1, 0, 0))
    params = mc.NumericParams(Fraction(1, 2), [20, 21, 22, 23, 24], seed=1)
    thr = mc.Thresholds(params)
    enc = mc._Encoder(spec)

    def run():
        state = np.array(spec.states[0], dtype=np.int64)
        counts = np.zeros(len(spec.states), dtype=np.int64)
        mc.run_steps(state, thr, mc.WordStream(1), steps, enc, counts)
        return counts

    return {f"run_chain, {steps} steps, lambda=(3,2,1,0,0)": run}


def _time(fn, repeat):
    number = 1
    while True:
        t = timeit.timeit(fn, number=number)
        if t > 0.2 or number >= 1 << 16:
            break
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--steps", type=int, default=20000)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    backends = [("python", _core_py)] + ([("compiled", _core_c)] if _core_c is not None else [])
    rows = []
    cases = {**_poly_cases(), **_chain_case(args.steps)}
    for name, fn in cases.items():
        res = {}
        ref = None
        for label, core in backends:
            mpoly_mod.core = core
            mc.core = core
            out = fn()
            if ref is None:
                ref = out
            elif not (np.array_equal(out, ref) if isinstance(out, np.ndarray) else out == ref):
                raise SystemExit(f"backends disagree on {name}")
            res[label] = _time(fn, args.repeat)
        rows.append({"case": name, **{k: v for k, v in res.items()},
                     "speedup": res["python"] / res["compiled"] if "compiled" in res else None})
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'case':<52} {'python (s)':>12} {'compiled (s)':>13} {'speedup':>8}")
    for r in rows:
        comp = f"{r['compiled']:.3e}" if "compiled" in r else "n/a"
        sp = f"{r['speedup']:.1f}x" if r["speedup"] else "n/a"
        print(f"{r['case']:<52} {r['python']:>12.3e} {comp:>13} {sp:>8}")


if __name__ == "__main__":
    main()
