"""Vanishing-condition characterisations of F*_mu and E*_mu.

Both families live in the space of polynomials of x-degree at most d = |mu|.
F*_mu has [x^tau] F*_mu = delta(tau, mu) for tau in the orbit of mu and
vanishes at the spectral points of every other composition of size <= d.
E*_mu has [x^mu] E*_mu = 1 and vanishes at every other spectral point of
size <= d.  Pinned coefficients are moved to the right-hand side, leaving a
square system in the remaining monomial coefficients.
"""

from fractions import Fraction
from math import factorial

from ..algebra import Frac, MPoly, bareiss_solve_many, upoly
from ..algebra.modular import prepare_system, solve_monomial_system, solve_monomial_system_at
from ..combinatorics import as_composition, compositions_of, compositions_up_to, k_vector, orbit

__all__ = ["VanishingSystem", "vanishing_system", "solve_generic", "solve_q1", "least_space", "confluent_rows",
           "dehomogenization_system", "point_exponents", "solve_q1_at"]


class VanishingSystem:
    """Unknown monomials, the pinned part and the vanishing points of one solve.

    The solution is ``pinned + sum_e c_e x^e`` over the unknown monomials e,
    vanishing at the spectral point of every composition in ``points``.
    """

    __slots__ = ("n", "d", "unknowns", "pinned", "points")

    def __init__(self, n, d, unknowns, pinned, points):
        if len(unknowns) != len(points):
            raise ValueError("vanishing system is not square")
        self.n = n
        self.d = d
        self.unknowns = unknowns
        self.pinned = pinned
        self.points = points

    def size(self):
        return len(self.unknowns)


def point_exponents(nu, e):
    """(q, t) exponents of the monomial x^e at the spectral point of nu."""
    k = k_vector(nu)
    return sum(a * b for a, b in zip(nu, e)), -sum(a * b for a, b in zip(k, e))


def vanishing_system(mu, family="F"):
    mu = as_composition(mu)
    n = len(mu)
    d = sum(mu)
    monos = list(compositions_up_to(n, d))
    if family == "F":
        pinned_set = set(orbit(mu))
    elif family == "E":
        pinned_set = {mu}
    else:
        raise ValueError(f"unknown family {family!r}")
    unknowns = [e for e in monos if e not in pinned_set]
    points = [nu for nu in monos if nu not in pinned_set]
    return VanishingSystem(n, d, unknowns, MPoly.monomial(n, x=mu), points)


def dehomogenization_system(f):
    """System for the polynomial with top component f vanishing below degree d."""
    n = f.n
    d = f.x_degree()
    if f.is_zero():
        raise ValueError("cannot dehomogenize the zero polynomial")
    if any(sum(xs) != d for (_, _, xs), _ in f.terms()):
        raise ValueError("dehomogenize expects a polynomial homogeneous in x")
    lower = list(compositions_up_to(n, d - 1)) if d > 0 else []
    return VanishingSystem(n, d, lower, f, list(lower))


def _spectral_values(nu, n):
    k = k_vector(nu)
    return {i + 1: MPoly.monomial(n, q=nu[i], t=-k[i]) for i in range(n)}


def solve_generic(sysm):
    """Exact solve over Q(q, t); returns the polynomial as a Frac with a (q, t) denominator."""
    if not isinstance(sysm, VanishingSystem):
        sysm = vanishing_system(sysm)
    n = sysm.n
    pinned = sysm.pinned
    if not sysm.unknowns:
        return Frac(pinned, MPoly.one(n))
    A = []
    rhs = []
    for nu in sysm.points:
        row = []
        for e in sysm.unknowns:
            qe, te = point_exponents(nu, e)
            row.append(MPoly.monomial(n, q=qe, t=te))
        A.append(row)
        rhs.append(-pinned.subs(_spectral_values(nu, n)))
    D, (nums,) = bareiss_solve_many(A, [rhs])
    num = pinned * D
    for e, c in zip(sysm.unknowns, nums):
        if c:
            num = num + c * MPoly.monomial(n, x=e)
    return Frac(num, D)


# ---- the confluent system at q = 1 -----------------------------------------
#
# At q = 1 the spectral point of nu collapses to t^-k(nu), so all points with
# the same k-vector merge.  Writing q = e^h, the conditions f(z * e^(h nu)) = 0
# for a cluster tend to p(theta) f (z) = 0 for p in the least space of the
# exponentials e^<nu, y>, with theta_i = x_i d/dx_i.  On a monomial x^e this
# functional is p(e) z^e.


def _monomials_of_degree(n, d):
    return list(compositions_of(n, d))


def least_space(freqs):
    """Homogeneous basis of the least space of span{exp(<nu, y>) : nu in freqs}.

    Degree segments are generated lazily: at degree d the combinations whose
    lower segments vanish are row-reduced on their degree-d Taylor segment
    sum_nu w_nu nu^alpha / alpha!; pivot rows join the basis and null
    combinations move on to degree d + 1.  Each basis element is a dict
    alpha -> Fraction.
    """
    freqs = [tuple(f) for f in freqs]
    m = len(freqs)
    if not m:
        return []
    n = len(freqs[0])
    combos = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    basis = []
    d = 0
    while combos:
        if d > m:
            raise ArithmeticError("least space did not close")
        block = _monomials_of_degree(n, d)
        T = [[_int_power(nu, alpha) for alpha in block] for nu in freqs]
        width = len(block)
        rows = []
        for c in combos:
            seg = [sum(w * T[k][a] for k, w in enumerate(c) if w) for a in range(width)]
            rows.append(seg + c)
        pivots = []
        rest = []
        for row in rows:
            for pc, prow in pivots:
                f = row[pc]
                if f:
                    row = [v - f * w for v, w in zip(row, prow)]
            pc = next((i for i in range(width) if row[i]), None)
            if pc is None:
                rest.append(row[width:])
                continue
            inv = 1 / row[pc]
            row = [v * inv for v in row]
            pivots.append((pc, row))
        for _, prow in pivots:
            basis.append({alpha: v / _alpha_factorial(alpha) for alpha, v in zip(block, prow[:width]) if v})
        combos = rest
        d += 1
    if len(basis) != m:
        raise ArithmeticError("least space dimension mismatch")
    return basis


def _int_power(nu, alpha):
    v = 1
    for a, b in zip(nu, alpha):
        if b:
            v *= a ** b
    return v


def _alpha_factorial(alpha):
    v = 1
    for b in alpha:
        v *= factorial(b)
    return v


def _apply_least(p, e):
    total = Fraction(0)
    for alpha, c in p.items():
        v = c
        for a, b in zip(e, alpha):
            if b:
                v *= a ** b
        total += v
    return total


def confluent_rows(sysm):
    """Rows (entries, rhs) of the q = 1 limit of a vanishing system.

    entries[r][c] = (coefficient, t-exponent) or None; rhs[r] = {t-exponent: coefficient}.
    """
    clusters = {}
    for nu in sysm.points:
        clusters.setdefault(k_vector(nu), []).append(nu)
    lead = [(xs, te, c) for (_, te, xs), c in sysm.pinned.specialize_q1().terms()]
    entries = []
    rhs = []
    for k in sorted(clusters, reverse=True):
        for p in least_space(clusters[k]):
            row = []
            for e in sysm.unknowns:
                v = _apply_least(p, e)
                row.append((v, -sum(a * b for a, b in zip(k, e))) if v else None)
            b = {}
            for tau, te, c in lead:
                v = _apply_least(p, tau)
                if v:
                    s = te - sum(a * b for a, b in zip(k, tau))
                    b[s] = b.get(s, 0) - c * v
            entries.append(row)
            rhs.append({s: v for s, v in b.items() if v})
    return entries, rhs


def solve_q1(sysm):
    """The q = 1 specialisation via the confluent limit, as a Frac with a t-only denominator."""
    if not isinstance(sysm, VanishingSystem):
        sysm = vanishing_system(sysm)
    n = sysm.n
    pinned_poly = sysm.pinned.specialize_q1()
    if not sysm.unknowns:
        return Frac(pinned_poly, MPoly.one(n))
    entries, rhs = confluent_rows(sysm)
    den, nums = solve_monomial_system(entries, rhs)
    D = upoly.from_dense(n, 0, den)
    items = []
    for e, coeffs in zip(sysm.unknowns, nums):
        for i, c in enumerate(coeffs):
            if c:
                items.append(((0, i, e), c))
    num = MPoly.from_terms(n, items) + pinned_poly * D
    return Frac(num, D)


def solve_q1_at(sysm, points, prepared=None):
    """Values at each (t, xs) in points of the q = 1 solution, solving only at those t.

    ``prepared`` may carry prepare_system(*confluent_rows(sysm)).
    """
    if not isinstance(sysm, VanishingSystem):
        sysm = vanishing_system(sysm)
    pinned = sysm.pinned.specialize_q1()
    points = [(Fraction(t), [Fraction(v) for v in xs]) for t, xs in points]
    values = [pinned.evaluate(t=t, x=xs) for t, xs in points]
    if not sysm.unknowns:
        return values
    if prepared is None:
        prepared = prepare_system(*confluent_rows(sysm))
    sols = solve_monomial_system_at(prepared, [t for t, _ in points])
    for k, ((t, xs), coeffs) in enumerate(zip(points, sols)):
        for e, c in zip(sysm.unknowns, coeffs):
            if c:
                v = c
                for x, d in zip(xs, e):
                    if d:
                        v *= x ** d
                values[k] += v
    return values
