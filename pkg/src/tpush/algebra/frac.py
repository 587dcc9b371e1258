"""Quotients of MPoly values.

Fractions are reduced only where that is cheap: constant and monomial
denominators, common monomial and integer content, and full univariate gcd
reduction when the denominator involves t alone.  Equality is always decided
by cross-multiplication.
"""

from fractions import Fraction

from .mpoly import MPoly, _is_scalar
from . import upoly

__all__ = ["Frac"]


class Frac:
    __slots__ = ("num", "den")

    def __init__(self, num, den=1, n=None, _reduce=True):
        if n is None:
            if isinstance(num, MPoly):
                n = num.n
            elif isinstance(den, MPoly):
                n = den.n
            else:
                raise ValueError("ambient n required for scalar fractions")
        num = _as_poly(num, n)
        den = _as_poly(den, n)
        if den.is_zero():
            raise ZeroDivisionError("fraction with zero denominator")
        self.num = num
        self.den = den
        if _reduce:
            self._canonicalize()

    @property
    def n(self):
        return self.num.n

    @classmethod
    def from_poly(cls, p):
        return cls(p, MPoly.one(p.n), _reduce=False)

    # ---- normalisation -------------------------------------------------
    def _canonicalize(self):
        num, den = self.num, self.den
        n = num.n
        if num.is_zero():
            self.num = num
            self.den = MPoly.one(n)
            return
        if den.is_monomial():
            (qe, te, xs), c = den.lead_term()
            if not any(xs):
                self.num = num.mul_monomial(-qe, -te).scale(Fraction(1) / Fraction(c))
                self.den = MPoly.one(n)
                return
        # shift q/t so the denominator's minimal exponents are zero, and strip common x content
        dq, dt, dx = den.monomial_content()
        nq, nt, nx = num.monomial_content()
        cx = tuple(min(a, b) for a, b in zip(dx, nx))
        shift_x = tuple(-c for c in cx)
        if dq or dt or any(cx):
            den = den.mul_monomial(-dq, -dt, shift_x)
            num = num.mul_monomial(-dq, -dt, shift_x)
        g = den.content()
        (_, lc) = den.lead_term()
        if lc < 0:
            g = -g
        if g != 1:
            inv = Fraction(1) / g
            den = den.scale(inv)
            num = num.scale(inv)
        if num == den:
            num = MPoly.one(n)
            den = MPoly.one(n)
        elif den.is_t_only():
            num, den = _reduce_t(num, den)
        self.num = num
        self.den = den

    def is_polynomial(self):
        return self.den.is_constant()

    def as_poly(self):
        """The MPoly value if the denominator divides exactly, else raise."""
        if self.den.is_constant():
            return self.num.scale(Fraction(1) / Fraction(self.den.constant_value()))
        return self.num.divexact(self.den)

    # ---- arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Frac):
            if other.n != self.n:
                raise ValueError("ambient n mismatch")
            return other
        if isinstance(other, MPoly):
            if other.n != self.n:
                raise ValueError("ambient n mismatch")
            return Frac(other, MPoly.one(self.n), _reduce=False)
        if _is_scalar(other):
            return Frac(MPoly.const(self.n, other), MPoly.one(self.n), _reduce=False)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            return Frac(self.num + other.num, self.den)
        if self.den.is_t_only() and other.den.is_t_only():
            n = self.n
            s1, d1 = upoly.to_dense(self.den)
            s2, d2 = upoly.to_dense(other.den)
            lcm = upoly.plcm(d1, d2)
            f1, r1 = upoly.pdivmod(lcm, d1)
            f2, r2 = upoly.pdivmod(lcm, d2)
            assert not r1 and not r2
            num = self.num.mul_monomial(0, -s1) * upoly.from_dense(n, 0, f1) + other.num.mul_monomial(
                0, -s2
            ) * upoly.from_dense(n, 0, f2)
            return Frac(num, upoly.from_dense(n, 0, lcm))
        return Frac(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Frac(-self.num, self.den, _reduce=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return Frac(MPoly.zero(self.n), MPoly.one(self.n), _reduce=False)
        if self.den == other.num:
            return Frac(self.num, other.den)
        if other.den == self.num:
            return Frac(other.num, self.den)
        return Frac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of the zero fraction")
        return Frac(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        return Frac(self.num ** e, self.den ** e)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def is_zero(self):
        return self.num.is_zero()

    # ---- maps ------------------------------------------------------------
    def subs(self, assignment):
        return Frac(self.num.subs(assignment), self.den.subs(assignment))

    def evaluate(self, q=None, t=None, x=None):
        d = self.den.evaluate(q=q, t=t, x=x)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at this point")
        return self.num.evaluate(q=q, t=t, x=x) / d

    def specialize_q1(self):
        """Set q = 1, cancelling powers of (q - 1) shared by numerator and denominator."""
        n = self.n
        num, den = self.num, self.den
        qm1 = MPoly.q(n) - 1
        while den.specialize_q1().is_zero():
            den = den.divexact(qm1)
            quo = num.try_divexact(qm1)
            if quo is None:
                raise ZeroDivisionError("pole at q = 1")
            num = quo
        return Frac(num.specialize_q1(), den.specialize_q1())

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    def __repr__(self):
        return f"Frac(({self.num}) / ({self.den}))"

    __str__ = __repr__


def _as_poly(v, n):
    if isinstance(v, MPoly):
        if v.n != n:
            raise ValueError("ambient n mismatch")
        return v
    if _is_scalar(v):
        return MPoly.const(n, v)
    raise TypeError(f"cannot build a fraction from {type(v).__name__}")


def _reduce_t(num, den):
    """Cancel the univariate gcd of a t-only denominator against the numerator."""
    n = num.n
    sd, dd = upoly.to_dense(den)
    if len(dd) <= 1:
        return num, den
    g = upoly.pgcd(dd, upoly.t_content(num))
    if len(g) > 1:
        gp = upoly.from_dense(n, 0, g)
        num = num.divexact(gp)
        den = den.divexact(gp)
        lc = den.lead_term()[1]
        if lc < 0:
            num, den = -num, -den
    return num, den
