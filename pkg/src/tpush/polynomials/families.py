"""F*, E*, P*, G*, s* and the dehomogenization map, with a shared memo cache."""

import threading

from ..algebra import Frac, MPoly, bareiss_det
from ..algebra.modular import prepare_system
from ..combinatorics import (
    as_composition,
    as_partition,
    conjugate,
    orbit,
    recolor,
    sort_desc,
    ssyt_enumerate,
)
from .elementary import e_star
from .vanishing import confluent_rows, dehomogenization_system, solve_generic, solve_q1, solve_q1_at, vanishing_system

__all__ = [
    "PolyFamilyCache",
    "CACHE",
    "f_star_vanishing",
    "f_star_at",
    "e_star_nonsym",
    "p_star",
    "g_star",
    "s_star",
    "dehomogenize",
]

_Q_MODES = ("generic", "1")


class PolyFamilyCache:
    """Memo keyed by (family, index, n, mode); guarded by a lock so threads may share it."""

    def __init__(self):
        self._data = {}
        self._lock = threading.RLock()

    def get_or_compute(self, key, fn):
        with self._lock:
            if key in self._data:
                return self._data[key]
        value = fn()
        with self._lock:
            return self._data.setdefault(key, value)

    def get(self, key, default=None):
        with self._lock:
            return self._data.get(key, default)

    def clear(self):
        with self._lock:
            self._data.clear()

    def __len__(self):
        return len(self._data)

    def __contains__(self, key):
        return key in self._data


CACHE = PolyFamilyCache()


def _check_q(q):
    q = str(q)
    if q not in _Q_MODES:
        raise ValueError(f"q must be 'generic' or '1', not {q!r}")
    return q


def _solve(mu, family, q, method):
    sysm = vanishing_system(mu, family)
    if q == "generic":
        return solve_generic(sysm)
    if method == "generic":
        return solve_generic(sysm).specialize_q1()
    return solve_q1(sysm)


def f_star_vanishing(mu, q="generic", method="confluent"):
    """Interpolation ASEP polynomial F*_mu from its vanishing characterisation.

    q='generic' solves over Q(q, t).  q='1' returns the q = 1 specialisation,
    by default through the confluent limit of the system; method='generic'
    solves generically first and specialises afterwards.
    """
    mu = as_composition(mu)
    q = _check_q(q)
    key = ("Fstar", mu, len(mu), q if q == "generic" else f"1:{method}")
    return CACHE.get_or_compute(key, lambda: _solve(mu, "F", q, method))


def f_star_at(mu, points):
    """Exact values of F*_mu(x; 1, t) at rational points (t, xs), without the symbolic solve.

    Uses the cached symbolic result when it is already available.
    """
    mu = as_composition(mu)
    done = CACHE.get(("Fstar", mu, len(mu), "1:confluent"))
    if done is not None:
        return [done.evaluate(t=t, x=xs) for t, xs in points]

    def prepare():
        sysm = vanishing_system(mu, "F")
        return sysm, (prepare_system(*confluent_rows(sysm)) if sysm.unknowns else None)

    sysm, prepared = CACHE.get_or_compute(("Fstar-system", mu, len(mu), "1"), prepare)
    return solve_q1_at(sysm, points, prepared=prepared)


def e_star_nonsym(mu, q="generic", method="confluent"):
    """Nonsymmetric interpolation Macdonald polynomial E*_mu (same conventions as F*)."""
    mu = as_composition(mu)
    q = _check_q(q)
    key = ("Estar", mu, len(mu), q if q == "generic" else f"1:{method}")
    return CACHE.get_or_compute(key, lambda: _solve(mu, "E", q, method))


def p_star(lam, mode="factored_q1", n=None, q="1"):
    """Interpolation Macdonald polynomial P*_lam.

    mode='symmetrize' sums F*_mu over the orbit (q may be 'generic' or '1');
    mode='factored_q1' multiplies e*_{lam'_i} and is only valid at q = 1.
    """
    lam = as_partition(lam, n)
    n = len(lam)
    if mode == "factored_q1":
        key = ("Pstar", lam, n, "factored")

        def compute():
            out = MPoly.one(n)
            for c in conjugate(lam):
                out = out * e_star(c, n)
            return out

        return CACHE.get_or_compute(key, compute)
    if mode == "symmetrize":
        q = _check_q(q)
        key = ("Pstar", lam, n, "sym:" + q)

        def compute():
            total = None
            for mu in orbit(lam):
                f = f_star_vanishing(mu, q=q)
                total = f if total is None else total + f
            return total

        return CACHE.get_or_compute(key, compute)
    raise ValueError(f"unknown mode {mode!r}")


def g_star(eta, phi, lam, fstar=None):
    """G*_eta = sum of F*_rho(x; 1, t) over rho in the orbit of lam with phi(rho) = eta.

    ``fstar`` maps a composition to F*(x; 1, t); it defaults to the confluent
    vanishing solve.
    """
    eta = as_composition(eta)
    lam = sort_desc(as_composition(lam))
    if sort_desc(recolor(phi, lam)) != sort_desc(eta):
        raise ValueError(f"phi({lam}) does not rearrange to {eta}")
    fstar = fstar or (lambda mu: f_star_vanishing(mu, q="1"))
    total = None
    for rho in orbit(lam):
        if recolor(phi, rho) == eta:
            f = fstar(rho)
            total = f if total is None else total + f
    if total is None:
        n = len(eta)
        return Frac(MPoly.zero(n), MPoly.one(n))
    return total


def _okounkov(lam, n):
    total = MPoly.zero(n)
    for T in ssyt_enumerate(lam, n):
        term = MPoly.one(n)
        for i, j, v in T.cells():
            term = term * (MPoly.x(n, v) - MPoly.monomial(n, t=(j - i) + v - n))
        total = total + term
    return total


def _jacobi_trudi(lam, n):
    conj = conjugate(lam)
    size = max(n, len(conj))
    conj = tuple(conj) + (0,) * (size - len(conj))
    cache = {}

    def entry(k, ell):
        if (k, ell) not in cache:
            cache[(k, ell)] = e_star(k, n, ell=ell)
        return cache[(k, ell)]

    A = [[entry(conj[i] - (i + 1) + (j + 1), n - (j + 1)) for j in range(size)] for i in range(size)]
    return bareiss_det(A)


def s_star(lam, n=None, mode="okounkov"):
    """t-interpolation Schur polynomial s*_lam(x; t).

    mode='okounkov' sums tableau products; mode='jacobi_trudi' expands the
    dual Jacobi-Trudi determinant of e*_{k,l}, padded to max(n, lam_1) rows.
    """
    lam = as_partition(lam, n)
    n = len(lam)
    if mode == "okounkov":
        return CACHE.get_or_compute(("sstar", lam, n, "okounkov"), lambda: _okounkov(lam, n))
    if mode == "jacobi_trudi":
        return CACHE.get_or_compute(("sstar", lam, n, "jt"), lambda: _jacobi_trudi(lam, n))
    raise ValueError(f"unknown mode {mode!r}")


def dehomogenize(f, q="generic"):
    """The polynomial with top component f that vanishes at every spectral point below deg f."""
    q = _check_q(q)
    sysm = dehomogenization_system(f)
    if q == "generic":
        return solve_generic(sysm)
    return solve_q1(sysm)
