"""Command-line interface: ``tpush <subcommand> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage
errors.  JSON output is written with a fixed key order so identical inputs
give byte-identical output.
"""

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from itertools import product

from . import BACKEND, __version__
from .algebra import Frac, MPoly
from .chain import (
    ChainSpec,
    densities,
    full_kernel,
    kernel_at,
    lump_check,
    stationary_distribution,
    step1_kernel,
    step2_kernel,
    verify_stationary,
)
from .combinatorics import RecolorMap, as_composition, as_partition
from .montecarlo import NumericParams, estimate_stationary, exact_stationary, tv_distance
from .polynomials import e_star, e_star_nonsym, f_star_vanishing, p_star, s_star
from .queues import (
    a_coeff,
    b_coeff,
    c_coeff,
    c_coeff_unsigned,
    f_star_mlq_q1,
    signed_two_line_queues,
    two_line_queues,
    unsigned_g_queue,
)

__all__ = ["main", "run", "UsageError"]


class UsageError(ValueError):
    pass


# ---- parsing ------------------------------------------------------------------
def _ints(text, what):
    try:
        return tuple(int(v) for v in text.split(",") if v.strip() != "")
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers, got {text!r}") from None


def _composition(text, what="index"):
    parts = _ints(text, what)
    try:
        return as_composition(parts)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _partition(text):
    parts = _ints(text, "--lambda")
    try:
        return as_partition(parts)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _spec(text):
    try:
        return ChainSpec(_partition(text))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _rational(text, what):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{what} must be a rational a/b, got {text!r}") from None


def _point(args, n):
    if args.t is None and args.x is None:
        return None
    if args.t is None or args.x is None:
        raise UsageError("--t and --x must be given together")
    t = _rational(args.t, "--t")
    xs = [_rational(v, "--x") for v in args.x.split(",")]
    if len(xs) != n:
        raise UsageError(f"--x needs {n} values, got {len(xs)}")
    return t, xs


# ---- rendering ------------------------------------------------------------------
def comp_str(mu):
    return "|".join(str(v) for v in mu)


def _rat(v):
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def value_json(v):
    if isinstance(v, Frac):
        if v.is_polynomial():
            return value_json(v.as_poly())
        return {"type": "frac", "num": v.num.to_json(), "den": v.den.to_json(), "text": _frac_text(v)}
    if isinstance(v, MPoly):
        return {"type": "poly", **v.to_json(), "text": str(v)}
    return _rat(v)


def _frac_text(v):
    if v.is_polynomial():
        return str(v.as_poly())
    return f"({v.num}) / ({v.den})"


def value_text(v):
    if isinstance(v, Frac):
        return _frac_text(v)
    if isinstance(v, MPoly):
        return str(v)
    return _rat(v)


def _emit(args, payload, matrix=None, table=None):
    """Write JSON, CSV (matrix or table) or a plain text rendering."""
    out = sys.stdout
    if args.format == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
        return
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if matrix is not None:
            rows, cols, cell = matrix
            w.writerow([""] + [comp_str(c) for c in cols])
            for r in rows:
                w.writerow([comp_str(r)] + [cell(r, c) for c in cols])
        elif table is not None:
            header, body = table
            w.writerow(header)
            for row in body:
                w.writerow(row)
        else:
            raise UsageError("this subcommand has no CSV form")
        out.write(buf.getvalue())
        return
    out.write(_pretty(payload))


def _pretty(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        if "text" in obj and obj.get("type") in ("poly", "frac"):
            return obj["text"] + "\n"
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not (isinstance(v, dict) and "text" in v):
                lines.append(f"{pad}{k}:\n" + _pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_pretty(v, 0).strip()}\n")
        return "".join(lines)
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            return pad + ", ".join(str(v) for v in obj) + "\n"
        return "".join(pad + "- " + _pretty(v, indent + 1).lstrip() for v in obj)
    return f"{pad}{obj}\n"


# ---- subcommands ----------------------------------------------------------------
def cmd_poly(args):
    fam = args.family
    q = args.q
    if fam == "estar":
        if args.n is None:
            raise UsageError("--n is required for estar")
        k = _ints(args.index, "--index")
        if len(k) != 1:
            raise UsageError("estar takes a single degree k as --index")
        value = e_star(k[0], args.n)
        index = list(k)
        n = args.n
    else:
        idx = _composition(args.index)
        if args.n is not None:
            if len(idx) > args.n:
                raise UsageError("--index is longer than --n")
            idx = idx + (0,) * (args.n - len(idx))
        n = len(idx)
        index = list(idx)
        if fam == "Fstar":
            if args.method == "mlq":
                if q != "1":
                    raise UsageError("the multiline-queue route only exists at q = 1")
                value = f_star_mlq_q1(idx)
            else:
                value = f_star_vanishing(idx, q=q, method=args.method or "confluent")
        elif fam == "Estar":
            value = e_star_nonsym(idx, q=q, method=args.method or "confluent")
        elif fam == "Pstar":
            try:
                lam = as_partition(idx)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            if q == "1":
                value = p_star(lam, mode=args.mode or "factored_q1")
            else:
                value = p_star(lam, mode="symmetrize", q="generic")
        elif fam == "sstar":
            try:
                lam = as_partition(idx)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            value = s_star(lam, mode=args.mode or "okounkov")
        else:
            raise UsageError(f"unknown family {fam!r}")
    payload = {"family": fam, "index": index, "n": n, "q": q, "poly": value_json(value)}
    _emit(args, payload)
    return 0


def cmd_kernel(args):
    spec = _spec(args.lam)
    pt = _point(args, spec.n)
    if args.step != "full":
        if args.site is None or not 1 <= args.site <= spec.n:
            raise UsageError(f"--site must be in 1..{spec.n} for a single step")
        build = step1_kernel if args.step == "1" else step2_kernel
        try:
            K = build(spec, args.site, check=True if args.check else None)
        except AssertionError as exc:
            sys.stderr.write(f"cross-check failed: {exc}\n")
            return 1
        rows, cols = K.rows, K.cols

        def cell_value(r, c):
            return K[r, c]
    else:
        K = full_kernel(spec)
        if not K.row_sums_ok():
            sys.stderr.write("kernel rows do not sum to 1\n")
            return 1
        rows = cols = spec.states

        def cell_value(r, c):
            return K.entry(r, c)
    if pt is not None:
        t, xs = pt
        if args.step == "full":
            M = kernel_at(spec, t, xs)
            idx = {s: i for i, s in enumerate(spec.states)}

            def cell_value(r, c):  # noqa: F811
                return M[idx[r]][idx[c]]
        else:
            sym = cell_value

            def cell_value(r, c):  # noqa: F811
                return sym(r, c).evaluate(t=t, x=xs)
    payload = {
        "lambda": list(spec.lam),
        "step": args.step,
        "site": args.site,
        "point": None if pt is None else {"t": _rat(pt[0]), "x": [_rat(v) for v in pt[1]]},
        "rows": [list(r) for r in rows],
        "cols": [list(c) for c in cols],
        "entries": [[value_json(cell_value(r, c)) for c in cols] for r in rows],
    }
    _emit(args, payload, matrix=(rows, cols, lambda r, c: value_text(cell_value(r, c))))
    return 0


def cmd_stationary(args):
    spec = _spec(args.lam)
    pt = _point(args, spec.n)
    if pt is None:
        pi = stationary_distribution(spec, source=args.source)
        vals = {mu: pi[mu] for mu in spec.states}
    else:
        params = NumericParams(pt[0], pt[1])
        if args.source == "vanishing":
            vals = exact_stationary(spec, params)
        else:
            pi = stationary_distribution(spec, source=args.source)
            vals = {mu: pi[mu].evaluate(t=pt[0], x=pt[1]) for mu in spec.states}
    payload = {
        "lambda": list(spec.lam),
        "source": args.source,
        "point": None if pt is None else {"t": _rat(pt[0]), "x": [_rat(v) for v in pt[1]]},
        "stationary": [{"state": list(mu), "pi": value_json(vals[mu])} for mu in spec.states],
    }
    body = [[comp_str(mu), value_text(vals[mu])] for mu in spec.states]
    _emit(args, payload, table=(["state", "pi"], body))
    return 0


def _report_payload(rep, spec=None):
    out = rep.to_json()
    if spec is not None:
        out["states"] = [list(mu) for mu in spec.states]
    return out


def cmd_verify(args):
    spec = _spec(args.lam)
    try:
        rep = verify_stationary(spec, mode=args.mode, source=args.source, points=args.points, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, _report_payload(rep, spec), table=(["check", "ok", "checked"], [[rep.name, rep.ok, rep.checked]]))
    return 0 if rep.ok else 1


def cmd_lump(args):
    spec = _spec(args.lam)
    try:
        phi = RecolorMap(_ints(args.phi, "--phi"))
        if len(phi.images) <= spec.lam[0]:
            raise ValueError(f"--phi must give an image for every label 0..{spec.lam[0]}")
        rep = lump_check(spec, phi, mode=args.mode, points=args.points, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, _report_payload(rep), table=(["check", "ok", "checked"], [[rep.name, rep.ok, rep.checked]]))
    return 0 if rep.ok else 1


def cmd_density(args):
    spec = _spec(args.lam)
    dt = densities(spec, source=args.source)
    species = sorted(set(spec.lam))
    payload = {
        "lambda": list(spec.lam),
        "densities": [
            {"site": site, "species": s, "density": value_json(dt[(site, s)])}
            for site in range(1, spec.n + 1)
            for s in species
        ],
        "checks": [c.to_json() for c in dt.checks],
        "ok": dt.ok,
    }
    body = [[site, s, value_text(dt[(site, s)])] for site in range(1, spec.n + 1) for s in species]
    _emit(args, payload, table=(["site", "species", "density"], body))
    return 0 if dt.ok else 1


def cmd_simulate(args):
    spec = _spec(args.lam)
    pt = _point(args, spec.n)
    if pt is None:
        raise UsageError("simulate needs --t and --x")
    try:
        params = NumericParams(pt[0], pt[1], seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.burnin < 1 or args.samples < 1 or args.trajectories < 1:
        raise UsageError("--burnin, --samples and --trajectories must be at least 1")
    emp = estimate_stationary(spec, params, burnin=args.burnin, samples=args.samples, trajectories=args.trajectories)
    payload = {
        "lambda": list(spec.lam),
        "t": _rat(params.t),
        "x": [_rat(v) for v in params.xs],
        "seed": params.seed,
        "burnin": args.burnin,
        "samples": args.samples,
        "trajectories": args.trajectories,
        "empirical": emp.to_json(),
    }
    body = [[comp_str(mu), emp.counts.get(mu, 0)] for mu in spec.states]
    header = ["state", "count"]
    if args.exact:
        ex = exact_stationary(spec, params)
        tv = tv_distance(emp, ex)
        payload["exact"] = [{"state": list(mu), "pi": _rat(ex[mu])} for mu in spec.states]
        payload["tv_distance"] = _rat(tv)
        payload["tv_distance_float"] = float(tv)
        header.append("pi")
        body = [row + [_rat(ex[mu])] for row, mu in zip(body, spec.states)]
    _emit(args, payload, table=(header, body))
    return 0


def cmd_queues(args):
    top = _composition(args.top, "--top") if args.kind != "signed" else _ints(args.top, "--top")
    bottom = _composition(args.bottom, "--bottom")
    if len(top) != len(bottom):
        raise UsageError("--top and --bottom must have the same length")
    if args.kind == "classical":
        qs = list(two_line_queues(top, bottom))
        items = [{**q.to_json(), "weight": value_json(q.weight())} for q in qs]
        total = a_coeff(top, bottom)
    elif args.kind == "signed":
        if all(v >= 0 for v in top):
            # an unsigned top row stands for every sign pattern over its balls
            idx = [i for i, v in enumerate(top) if v > 0]
            qs = []
            for signs in product((1, -1), repeat=len(idx)):
                alpha = list(top)
                for s, i in zip(signs, idx):
                    alpha[i] = s * top[i]
                qs.extend(signed_two_line_queues(tuple(alpha), bottom))
            total = c_coeff(top, bottom)
        else:
            qs = list(signed_two_line_queues(top, bottom))
            total = b_coeff(top, bottom)
        items = [{**q.to_json(), "weight": value_json(q.weight())} for q in qs]
    else:
        g = unsigned_g_queue(top, bottom)
        qs = [] if g is None else [g]
        items = [{**q.to_json(), "weight": value_json(q.weight())} for q in qs]
        total = c_coeff_unsigned(top, bottom)
    payload = {
        "kind": args.kind,
        "top": list(top),
        "bottom": list(bottom),
        "count": len(items),
        "queues": items,
        "coefficient": None if total is None else value_json(total),
    }
    body = [[comp_str(q["top"]), comp_str(q["bottom"]), json.dumps(q["pairs"]), q["weight"]["text"]
             if isinstance(q["weight"], dict) else q["weight"]] for q in items]
    _emit(args, payload, table=(["top", "bottom", "pairs", "weight"], body))
    return 0


# ---- parser -----------------------------------------------------------------------
def _add_format(p, csv_ok=True):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", dest="format", action="store_const", const="json", help="JSON output")
    if csv_ok:
        g.add_argument("--csv", dest="format", action="store_const", const="csv", help="CSV output")
    g.add_argument("--pretty", dest="format", action="store_const", const="pretty", help="plain text (default)")
    p.set_defaults(format="pretty")


def _add_point(p):
    p.add_argument("--t", help="rational t, e.g. 1/2")
    p.add_argument("--x", help="comma-separated rationals x_1..x_n")


def build_parser():
    parser = argparse.ArgumentParser(prog="tpush", description="Exact interpolation t-Push TASEP toolkit")
    parser.add_argument("--version", action="version", version=f"tpush {__version__} ({BACKEND} core)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", help="interpolation polynomials")
    p.add_argument("--family", required=True, choices=["Fstar", "Estar", "Pstar", "sstar", "estar"])
    p.add_argument("--index", required=True, help="composition, partition, or k for estar")
    p.add_argument("--n", type=int, help="number of variables (pads the index with zeros)")
    p.add_argument("--q", default="1", choices=["1", "generic"])
    p.add_argument("--method", choices=["confluent", "generic", "mlq"], help="q = 1 route for Fstar/Estar")
    p.add_argument("--mode", choices=["factored_q1", "symmetrize", "okounkov", "jacobi_trudi"])
    _add_format(p, csv_ok=False)
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("kernel", help="exact transition kernel")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--step", choices=["full", "1", "2"], default="full")
    p.add_argument("--site", type=int, help="bell site for --step 1/2")
    p.add_argument("--check", action="store_true", help="force the queue cross-check")
    _add_point(p)
    _add_format(p)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("stationary", help="stationary distribution F*/P*")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--source", choices=["vanishing", "mlq"], default="vanishing")
    _add_point(p)
    _add_format(p)
    p.set_defaults(func=cmd_stationary)

    p = sub.add_parser("verify", help="check that F* is a left eigenvector of the kernel")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mode", choices=["symbolic", "points"], default="symbolic")
    p.add_argument("--source", choices=["vanishing", "mlq"], default="vanishing")
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--seed", type=int, default=1)
    _add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lump", help="lumpability under a recoloring")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--phi", required=True, help="images of labels 0..L, e.g. 0,1,1")
    p.add_argument("--mode", choices=["symbolic", "points"], default="symbolic")
    p.add_argument("--points", type=int, default=5)
    p.add_argument("--seed", type=int, default=1)
    _add_format(p)
    p.set_defaults(func=cmd_lump)

    p = sub.add_parser("density", help="per-site, per-species densities")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--source", choices=["vanishing", "mlq"], default="vanishing")
    _add_format(p)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("simulate", help="Monte Carlo estimate of the stationary distribution")
    p.add_argument("--lambda", dest="lam", required=True)
    _add_point(p)
    p.add_argument("--burnin", type=int, default=1000)
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trajectories", type=int, default=1)
    p.add_argument("--exact", action="store_true", help="also report exact masses and the TV distance")
    _add_format(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("queues", help="two-line queues and their generating functions")
    p.add_argument("--kind", choices=["classical", "signed", "unsigned"], default="classical")
    p.add_argument("--top", required=True)
    p.add_argument("--bottom", required=True)
    _add_format(p)
    p.set_defaults(func=cmd_queues)
    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"tpush {args.command}: error: {exc}\n")
        return 2


def main(argv=None):
    sys.exit(run(argv))
