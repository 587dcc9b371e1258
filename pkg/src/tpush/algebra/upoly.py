"""Dense univariate polynomials in t over Q, used to keep t-only denominators small.

A dense polynomial is a list of coefficients, lowest degree first, with no
trailing zeros; the zero polynomial is ``[]``.
"""

from fractions import Fraction
from math import gcd

from .mpoly import MPoly

__all__ = [
    "to_dense",
    "from_dense",
    "pdivmod",
    "pgcd",
    "plcm",
    "pmul",
    "primitive_int",
    "t_content",
]


def _trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def to_dense(p):
    """(shift, coeffs) with p = t^shift * sum coeffs[i] t^i; p must be t-only."""
    if not p.is_t_only():
        raise ValueError("expected a polynomial in t only")
    if p.is_zero():
        return 0, []
    items = [(m[1], c) for m, c in p.terms()]
    lo = min(e for e, _ in items)
    hi = max(e for e, _ in items)
    coeffs = [0] * (hi - lo + 1)
    for e, c in items:
        coeffs[e - lo] = c
    return lo, coeffs


def from_dense(n, shift, coeffs):
    return MPoly.from_terms(n, (((0, shift + i, (0,) * n), c) for i, c in enumerate(coeffs) if c))


def pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def pdivmod(a, b):
    """Quotient and remainder over Q."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = [Fraction(c) for c in a]
    lb = Fraction(b[-1])
    db = len(b) - 1
    if len(a) <= db:
        return [], _trim(a)
    quo = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            f = c / lb
            quo[i - db] = f
            for j in range(db + 1):
                a[i - db + j] -= f * b[j]
    return _trim(quo), _trim(a[:db])


def primitive_int(a):
    """Scale to coprime integer coefficients with positive leading coefficient."""
    if not a:
        return []
    den = 1
    for c in a:
        c = Fraction(c)
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(Fraction(c) * den) for c in a]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def pgcd(a, b):
    """Primitive integer gcd (positive leading coefficient)."""
    a = primitive_int(a)
    b = primitive_int(b)
    while b:
        _, r = pdivmod(a, b)
        a, b = b, primitive_int(r)
    return primitive_int(a)


def plcm(a, b):
    g = pgcd(a, b)
    q, r = pdivmod(pmul(primitive_int(a), primitive_int(b)), g)
    assert not r
    return primitive_int(q)


def t_content(p):
    """Primitive gcd, over Q[t], of the t-coefficient polynomials of p.

    p is grouped by its (q, x) exponents; each group is a Laurent polynomial
    in t whose lowest power is stripped before taking the gcd.
    """
    groups = {}
    for (qe, te, xs), c in p.terms():
        groups.setdefault((qe, xs), []).append((te, c))
    g = []
    for items in groups.values():
        lo = min(e for e, _ in items)
        hi = max(e for e, _ in items)
        coeffs = [0] * (hi - lo + 1)
        for e, c in items:
            coeffs[e - lo] = c
        g = pgcd(g, coeffs) if g else primitive_int(coeffs)
        if len(g) == 1:
            break
    return g
