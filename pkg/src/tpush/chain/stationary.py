"""Stationary distribution checks, lumping and density formulas."""

import random
from fractions import Fraction

from ..algebra import Frac, MPoly, upoly
from ..combinatorics import ParticleContent, RecolorMap, recolor, sort_desc
from ..polynomials import e_star, embed, f_star_at, f_star_vanishing, p_star, s_star, x_vars
from ..queues import f_star_mlq_q1
from .dynamics import ChainSpec, full_kernel, kernel_at

__all__ = [
    "Report",
    "fstar_source",
    "stationary_masses",
    "stationary_distribution",
    "sample_points",
    "verify_stationary",
    "lump_check",
    "coarse_spec",
    "densities",
    "DensityTable",
]

SYMBOLIC_MAX_N = 3


class Report:
    """Outcome of an exact check: ok flag, number of cells checked, and failures."""

    __slots__ = ("name", "ok", "checked", "failures", "details")

    def __init__(self, name):
        self.name = name
        self.ok = True
        self.checked = 0
        self.failures = []
        self.details = {}

    def record(self, ok, what):
        self.checked += 1
        if not ok:
            self.ok = False
            self.failures.append(what)

    def to_json(self):
        return {
            "check": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "failures": [str(f) for f in self.failures],
            **self.details,
        }

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"Report({self.name!r}, ok={self.ok}, checked={self.checked}, failures={len(self.failures)})"


def fstar_source(name):
    """F*(x; 1, t) provider: 'vanishing' (confluent solve) or 'mlq' (queue recursion)."""
    if name == "vanishing":
        return lambda mu: f_star_vanishing(mu, q="1")
    if name == "mlq":
        return f_star_mlq_q1
    raise ValueError(f"unknown F* source {name!r}")


def _fstar_values(source, mu, pts):
    if source == "vanishing":
        return f_star_at(mu, pts)
    f = fstar_source(source)(mu)
    return [f.evaluate(t=t, x=xs) for t, xs in pts]


def stationary_masses(spec, source="vanishing"):
    """Unnormalized masses F*_mu(x; 1, t) over the state space, in state order."""
    f = fstar_source(source)
    return {mu: f(mu) for mu in spec.states}


def stationary_distribution(spec, source="vanishing"):
    """pi(mu) = F*_mu(x; 1, t) / P*_lam(x; 1, t)."""
    Z = p_star(spec.lam)
    return {mu: Frac(F.num, F.den * Z) for mu, F in stationary_masses(spec, source).items()}


def _dense_den(F):
    shift, coeffs = upoly.to_dense(F.den)
    if shift:
        raise AssertionError("t-only denominator carries a monomial shift")
    return coeffs


def sample_points(n, count, seed):
    """Exact points in the probability regime: t = a/b with 0 < a < b <= 20, x_i > t^-(n-1)."""
    rng = random.Random(seed)
    pts = []
    for _ in range(count):
        b = rng.randint(2, 20)
        a = rng.randint(1, b - 1)
        t = Fraction(a, b)
        base = t ** (1 - n)
        xs = [base + Fraction(rng.randint(1, 50), rng.randint(1, 50)) for _ in range(n)]
        pts.append((t, xs))
    return pts


def verify_stationary(spec, mode="symbolic", source="vanishing", points=20, seed=1):
    """Check sum_mu F*_mu P(mu, nu) = F*_nu for every nu, and sum_mu F*_mu = P*_lam.

    mode='symbolic' works with polynomial numerators (n <= 3 by policy);
    mode='points' evaluates the kernel and F* exactly at sampled rational
    points and also checks that the entries lie in [0, 1] and rows sum to 1.
    """
    if not isinstance(spec, ChainSpec):
        spec = ChainSpec(spec)
    n = spec.n
    rep = Report("stationary")
    rep.details.update({"lambda": list(spec.lam), "mode": mode, "source": source})
    if mode == "symbolic":
        if n > SYMBOLIC_MAX_N:
            raise ValueError(f"symbolic verification is limited to n <= {SYMBOLIC_MAX_N}; use mode='points'")
        F = stationary_masses(spec, source)
        total = None
        for f in F.values():
            total = f if total is None else total + f
        rep.record(total == Frac.from_poly(p_star(spec.lam)), "sum of F* differs from P*")
        K = full_kernel(spec)
        rep.record(K.row_sums_ok(), "kernel rows do not sum to 1")
        dens = {mu: _dense_den(F[mu]) for mu in spec.states}
        rows = {mu: upoly.to_dense(K.row_den[mu])[1] for mu in spec.states}
        Lc = [1]
        for mu in spec.states:
            Lc = upoly.plcm(Lc, upoly.pmul(dens[mu], rows[mu]))
        mult = {}
        for mu in spec.states:
            f, r = upoly.pdivmod(Lc, upoly.pmul(dens[mu], rows[mu]))
            assert not r
            mult[mu] = F[mu].num * upoly.from_dense(n, 0, f)
        for nu in spec.states:
            lhs = MPoly.zero(n)
            for mu in spec.states:
                v = K.num[mu].get(nu)
                if v is not None:
                    lhs = lhs + mult[mu] * v
            f, r = upoly.pdivmod(Lc, dens[nu])
            assert not r
            rhs = K.E * F[nu].num * upoly.from_dense(n, 0, f)
            rep.record(lhs == rhs, f"column {nu}")
        return rep
    if mode == "points":
        pts = sample_points(n, points, seed)
        rep.details.update({"points": points, "seed": seed})
        Z = p_star(spec.lam)
        table = [_fstar_values(source, mu, pts) for mu in spec.states]
        for k_pt, (t, xs) in enumerate(pts):
            P = kernel_at(spec, t, xs)
            vals = [col[k_pt] for col in table]
            rep.record(sum(vals) == Z.evaluate(t=t, x=xs), f"sum of F* differs from P* at t={t}")
            rep.record(all(sum(r) == 1 for r in P), f"row sums at t={t}")
            rep.record(all(0 <= v <= 1 for r in P for v in r), f"entry outside [0,1] at t={t}")
            for k, nu in enumerate(spec.states):
                lhs = sum(vals[i] * P[i][k] for i in range(len(vals)))
                rep.record(lhs == vals[k], f"column {nu} at t={t}, x={[str(v) for v in xs]}")
        return rep
    raise ValueError(f"unknown mode {mode!r}")


def coarse_spec(fine, phi):
    if phi(0) != 0:
        raise ValueError("a recoloring used for lumping must fix 0")
    return ChainSpec(sort_desc(recolor(phi, fine.lam)))


def lump_check(fine, phi, mode="symbolic", source="vanishing", points=5, seed=1):
    """Lumpability of the chain under phi, plus the stationary-mass summation."""
    if not isinstance(fine, ChainSpec):
        fine = ChainSpec(fine)
    if not isinstance(phi, RecolorMap):
        phi = RecolorMap(phi)
    coarse = coarse_spec(fine, phi)
    n = fine.n
    rep = Report("lump")
    rep.details.update({"lambda": list(fine.lam), "kappa": list(coarse.lam), "phi": list(phi.images), "mode": mode})
    f = fstar_source(source)
    # stationary: P*_kappa * sum_{phi(rho)=eta} F*_rho == P*_lam * F*_eta
    Pf = p_star(fine.lam)
    Pc = p_star(coarse.lam)
    groups = {eta: [] for eta in coarse.states}
    for rho in fine.states:
        groups[recolor(phi, rho)].append(rho)
    for eta, rhos in groups.items():
        g = None
        for rho in rhos:
            g = f(rho) if g is None else g + f(rho)
        rep.record(g * Pc == f(eta) * Pf, f"stationary mass of {eta}")
    if mode == "symbolic":
        Kf = full_kernel(fine)
        Kc = full_kernel(coarse)
        for mu in fine.states:
            eta = recolor(phi, mu)
            sums = {}
            for nu, v in Kf.num[mu].items():
                z = recolor(phi, nu)
                sums[z] = sums[z] + v if z in sums else v
            for zeta in coarse.states:
                lhs = sums.get(zeta, MPoly.zero(n)) * Kc.row_den[eta]
                rhs = Kc.num[eta].get(zeta, MPoly.zero(n)) * Kf.row_den[mu]
                rep.record(lhs == rhs, f"cell ({mu} -> {zeta})")
        return rep
    if mode == "points":
        cidx = {s: i for i, s in enumerate(coarse.states)}
        for t, xs in sample_points(n, points, seed):
            Pf_ = kernel_at(fine, t, xs)
            Pc_ = kernel_at(coarse, t, xs)
            for i, mu in enumerate(fine.states):
                acc = [Fraction(0)] * len(coarse.states)
                for k, nu in enumerate(fine.states):
                    acc[cidx[recolor(phi, nu)]] += Pf_[i][k]
                rep.record(acc == Pc_[cidx[recolor(phi, mu)]], f"row {mu} at t={t}")
        return rep
    raise ValueError(f"unknown mode {mode!r}")


class DensityTable:
    """density[(site, species)] as a Frac, with closed-form comparison reports."""

    __slots__ = ("spec", "table", "checks")

    def __init__(self, spec, table, checks):
        self.spec = spec
        self.table = table
        self.checks = checks

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def __getitem__(self, key):
        return self.table[key]


def _single_species_site1(n, m1, xs_all):
    """Closed form at site 1 for content (1^m1, 0^(n-m1))."""
    t = MPoly.t(n)
    num = (MPoly.x(n, 1) - MPoly.monomial(n, t=1 - n)) * e_star(m1 - 1, xs=[t * x for x in xs_all[1:]])
    den = e_star(m1, xs=xs_all).mul_monomial(0, m1 - 1)
    return Frac(num, den)


def _single_species_siten(n, m1, xs_all):
    m0 = n - m1
    t = MPoly.t(n)
    num = (MPoly.x(n, n) - MPoly.monomial(n, t=m0 + 1 - n)) * e_star(m1 - 1, xs=[t * x for x in xs_all[:-1]])
    den = e_star(m1, xs=xs_all).mul_monomial(0, m1 - 1)
    return Frac(num, den)


def _species_site1_forms(n, pc, i):
    """Both displayed closed forms for the density of species i at site 1."""
    t = MPoly.t(n)
    xs = x_vars(n)
    x1 = xs[1:]
    tx1 = [t * v for v in x1]
    Mi = pc.M[i]
    Mi1 = pc.M[i + 1] if i + 1 < len(pc.M) else 0
    mi = pc.m[i]
    lead = MPoly.x(n, 1) - MPoly.monomial(n, t=1 - n)
    den_common = e_star(Mi, n) * e_star(Mi1, n)
    inner = e_star(Mi - 1, xs=tx1) * e_star(Mi1, xs=x1) - e_star(Mi1 - 1, xs=tx1) * e_star(Mi, xs=x1).mul_monomial(0, mi)
    form1 = Frac(lead * inner, den_common.mul_monomial(0, Mi - 1))
    shape = (2,) * Mi1 + (1,) * (mi - 1)
    s = s_star(shape, n - 1)
    s_tx = embed(s, [t * v for v in x1], n)
    form2 = Frac(lead * s_tx, den_common.mul_monomial(0, Mi1 + Mi - 1))
    return form1, form2


def densities(spec, source="vanishing"):
    """Per-site, per-species stationary densities with closed-form cross-checks."""
    if not isinstance(spec, ChainSpec):
        spec = ChainSpec(spec)
    n = spec.n
    F = stationary_masses(spec, source)
    Z = p_star(spec.lam)
    species = sorted(set(spec.lam))
    table = {}
    for site in range(1, n + 1):
        for s in species:
            acc = None
            for mu, f in F.items():
                if mu[site - 1] == s:
                    acc = f if acc is None else acc + f
            table[(site, s)] = Frac(acc.num, acc.den * Z)
    checks = []
    pc = ParticleContent(spec.lam)
    if set(spec.lam) <= {0, 1}:
        m1 = pc.m[1] if len(pc.m) > 1 else 0
        xs = x_vars(n)
        rep = Report("single-species site 1")
        if m1:
            rep.record(table[(1, 1)] == _single_species_site1(n, m1, xs), "site 1")
        checks.append(rep)
        rep = Report("single-species site n")
        if m1:
            rep.record(table[(n, 1)] == _single_species_siten(n, m1, xs), "site n")
        checks.append(rep)
    for i in range(1, pc.L + 1):
        if pc.m[i] == 0:
            continue
        form1, form2 = _species_site1_forms(n, pc, i)
        rep = Report(f"species {i} site 1")
        rep.record(form1 == form2, "the two closed forms differ")
        rep.record(table[(1, i)] == form1, "closed form differs from the stationary sum")
        checks.append(rep)
    return DensityTable(spec, table, checks)
