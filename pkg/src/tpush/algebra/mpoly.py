"""Sparse polynomials in q, t (Laurent) and x_1..x_n over the rationals.

Each monomial is packed into a single integer key.  From the most significant
end the fields are q (16 bits), t (16 bits) and x_1..x_n (8 bits each); every
field stores its exponent plus a fixed offset, so

* integer order on keys is lexicographic order on (q, t, x_1, ..., x_n), and
* the key of a product monomial is ``k1 + k2 - base``.

For n <= 4 a key fits in 64 bits, which lets the compiled kernel work on
machine words.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .._backend import core

__all__ = ["MPoly", "Layout", "layout"]

_QBITS = 16
_TBITS = 16
_XBITS = 8
_QOFF = 1 << (_QBITS - 1)
_TOFF = 1 << (_TBITS - 1)
_XOFF = 1 << (_XBITS - 1)
_QMASK = (1 << _QBITS) - 1
_TMASK = (1 << _TBITS) - 1
_XMASK = (1 << _XBITS) - 1
QT_LIMIT = _QOFF - 1
X_LIMIT = _XOFF - 1


class Layout:
    """Bit layout of packed monomial keys for a fixed ambient n."""

    __slots__ = ("n", "xshift", "tshift", "qshift", "base", "fits64", "one_key")

    def __init__(self, n):
        self.n = n
        self.xshift = tuple(_XBITS * (n - 1 - i) for i in range(n))
        self.tshift = _XBITS * n
        self.qshift = self.tshift + _TBITS
        base = (_QOFF << self.qshift) | (_TOFF << self.tshift)
        for s in self.xshift:
            base |= _XOFF << s
        self.base = base
        self.one_key = base
        self.fits64 = self.qshift + _QBITS <= 64

    def pack(self, qe, te, xs):
        if not (-QT_LIMIT <= qe <= QT_LIMIT and -QT_LIMIT <= te <= QT_LIMIT):
            raise OverflowError("q/t exponent out of range")
        key = ((qe + _QOFF) << self.qshift) | ((te + _TOFF) << self.tshift)
        for s, e in zip(self.xshift, xs):
            if e < 0:
                raise ValueError("negative x exponent")
            if e > X_LIMIT:
                raise OverflowError("x exponent out of range")
            key |= (e + _XOFF) << s
        return key

    def unpack(self, key):
        qe = ((key >> self.qshift) & _QMASK) - _QOFF
        te = ((key >> self.tshift) & _TMASK) - _TOFF
        xs = tuple(((key >> s) & _XMASK) - _XOFF for s in self.xshift)
        return qe, te, xs

    def qexp(self, key):
        return ((key >> self.qshift) & _QMASK) - _QOFF

    def texp(self, key):
        return ((key >> self.tshift) & _TMASK) - _TOFF

    def xexps(self, key):
        return tuple(((key >> s) & _XMASK) - _XOFF for s in self.xshift)

    def xdeg(self, key):
        return sum(((key >> s) & _XMASK) - _XOFF for s in self.xshift)

    def field_specs(self):
        """(shift, mask, offset) for q, t, x_1..x_n."""
        specs = [(self.qshift, _QMASK, _QOFF), (self.tshift, _TMASK, _TOFF)]
        specs.extend((s, _XMASK, _XOFF) for s in self.xshift)
        return specs


@lru_cache(maxsize=None)
def layout(n):
    if n < 0:
        raise ValueError("ambient n must be non-negative")
    return Layout(n)


def _norm_coeff(c):
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return int(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def _is_scalar(v):
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


class MPoly:
    """Immutable sparse polynomial; see the module docstring for the encoding."""

    __slots__ = ("n", "_t", "_lay", "_hash", "_info")

    def __init__(self, n, terms=None):
        self.n = n
        self._lay = layout(n)
        self._t = terms if terms is not None else {}
        self._hash = None
        self._info = None

    # ---- construction -------------------------------------------------
    @classmethod
    def _raw(cls, n, terms):
        obj = cls.__new__(cls)
        obj.n = n
        obj._lay = layout(n)
        obj._t = terms
        obj._hash = None
        obj._info = None
        return obj

    @classmethod
    def zero(cls, n):
        return cls._raw(n, {})

    @classmethod
    def const(cls, n, c):
        c = _norm_coeff(c)
        return cls._raw(n, {layout(n).one_key: c} if c else {})

    @classmethod
    def one(cls, n):
        return cls.const(n, 1)

    @classmethod
    def monomial(cls, n, q=0, t=0, x=None, coeff=1):
        coeff = _norm_coeff(coeff)
        if not coeff:
            return cls.zero(n)
        xs = tuple(x) if x is not None else (0,) * n
        if len(xs) != n:
            raise ValueError("x exponent vector length must equal n")
        return cls._raw(n, {layout(n).pack(q, t, xs): coeff})

    @classmethod
    def q(cls, n):
        return cls.monomial(n, q=1)

    @classmethod
    def t(cls, n):
        return cls.monomial(n, t=1)

    @classmethod
    def x(cls, n, i):
        """The variable x_i (1-based)."""
        if not 1 <= i <= n:
            raise ValueError(f"x index {i} outside 1..{n}")
        xs = [0] * n
        xs[i - 1] = 1
        return cls.monomial(n, x=xs)

    @classmethod
    def from_terms(cls, n, items):
        lay = layout(n)
        out = {}
        for (qe, te, xs), c in items:
            c = _norm_coeff(c)
            if not c:
                continue
            k = lay.pack(qe, te, tuple(xs))
            v = out.get(k, 0) + c
            if v:
                out[k] = _norm_coeff(v)
            else:
                out.pop(k, None)
        return cls._raw(n, out)

    def coerce(self, other):
        if isinstance(other, MPoly):
            if other.n != self.n:
                raise ValueError(f"ambient n mismatch: {self.n} vs {other.n}")
            return other
        if _is_scalar(other):
            return MPoly.const(self.n, other)
        return NotImplemented

    # ---- inspection ---------------------------------------------------
    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def is_zero(self):
        return not self._t

    def is_constant(self):
        return not self._t or (len(self._t) == 1 and self._lay.one_key in self._t)

    def constant_value(self):
        """Coefficient of the monomial 1."""
        return self._t.get(self._lay.one_key, 0)

    def is_monomial(self):
        return len(self._t) == 1

    def raw_terms(self):
        return self._t

    def terms(self):
        """Canonical (lexicographically ascending) list of ((q, t, xs), coeff)."""
        lay = self._lay
        return [(lay.unpack(k), self._t[k]) for k in sorted(self._t)]

    def lead_term(self):
        """Lexicographically greatest term as ((q, t, xs), coeff)."""
        if not self._t:
            raise ValueError("zero polynomial has no leading term")
        k = max(self._t)
        return self._lay.unpack(k), self._t[k]

    def _bounds(self):
        """(min q, max q, min t, max t, max x-degree, has Fraction coefficients)."""
        if self._info is None:
            lay = self._lay
            qs, ts, xd = lay.qshift, lay.tshift, lay.xdeg
            keys = self._t
            if not keys:
                self._info = (0, 0, 0, 0, -1, False)
            else:
                qv = [((k >> qs) & _QMASK) for k in keys]
                tv = [((k >> ts) & _TMASK) for k in keys]
                self._info = (
                    min(qv) - _QOFF,
                    max(qv) - _QOFF,
                    min(tv) - _TOFF,
                    max(tv) - _TOFF,
                    max(xd(k) for k in keys),
                    any(type(v) is not int for v in keys.values()),
                )
        return self._info

    def x_degree(self):
        return self._bounds()[4]

    def degree_in(self, var):
        """(min, max) exponent of 'q', 't' or x_i (int, 1-based)."""
        lay = self._lay
        if var == "q":
            es = [lay.qexp(k) for k in self._t]
        elif var == "t":
            es = [lay.texp(k) for k in self._t]
        else:
            s = lay.xshift[var - 1]
            es = [((k >> s) & _XMASK) - _XOFF for k in self._t]
        if not es:
            return None
        return min(es), max(es)

    def variables(self):
        """Set of variables that occur: subset of {'q', 't', 1..n}."""
        out = set()
        for (qe, te, xs), _ in self.terms():
            if qe:
                out.add("q")
            if te:
                out.add("t")
            out.update(i + 1 for i, e in enumerate(xs) if e)
        return out

    def has_q(self):
        lay = self._lay
        return any(lay.qexp(k) for k in self._t)

    def is_t_only(self):
        """True when only t occurs (q and x exponents all zero)."""
        lay = self._lay
        return all(lay.qexp(k) == 0 and lay.xdeg(k) == 0 for k in self._t)

    def has_fractions(self):
        return self._bounds()[5]

    def coeff_x(self, xs):
        """[x^xs] as a polynomial in q, t (same ambient n)."""
        lay = self._lay
        xs = tuple(xs)
        out = {}
        for k, c in self._t.items():
            if lay.xexps(k) == xs:
                qe, te, _ = lay.unpack(k)
                out[lay.pack(qe, te, (0,) * self.n)] = c
        return MPoly._raw(self.n, out)

    def x_support(self):
        """Sorted list of distinct x exponent vectors that occur."""
        xe = self._lay.xexps
        return sorted({xe(k) for k in self._t})

    def by_x(self):
        """Map x exponent vector -> coefficient polynomial in q, t."""
        lay = self._lay
        zero_x = (0,) * self.n
        groups = {}
        for k, c in self._t.items():
            qe, te, xs = lay.unpack(k)
            groups.setdefault(xs, {})[lay.pack(qe, te, zero_x)] = c
        return {xs: MPoly._raw(self.n, d) for xs, d in groups.items()}

    # ---- equality / hashing ------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.n == other.n and self._t == other._t
        if _is_scalar(other):
            if not other:
                return not self._t
            return len(self._t) == 1 and self._t.get(self._lay.one_key) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._t.items())))
        return self._hash

    # ---- arithmetic ---------------------------------------------------
    def __neg__(self):
        return MPoly._raw(self.n, {k: -v for k, v in self._t.items()})

    def __pos__(self):
        return self

    def _addsub(self, other, sign):
        other = self.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._t:
            return self
        if not self._t:
            return other if sign > 0 else -other
        out = dict(self._t)
        get = out.get
        frac = False
        if sign > 0:
            for k, v in other._t.items():
                s = get(k, 0) + v
                if s:
                    out[k] = s
                    if type(s) is not int:
                        frac = True
                else:
                    out.pop(k, None)
        else:
            for k, v in other._t.items():
                s = get(k, 0) - v
                if s:
                    out[k] = s
                    if type(s) is not int:
                        frac = True
                else:
                    out.pop(k, None)
        if frac:
            out = {k: _norm_coeff(v) for k, v in out.items()}
        return MPoly._raw(self.n, out)

    def __add__(self, other):
        return self._addsub(other, 1)

    def __radd__(self, other):
        return self._addsub(other, 1)

    def __sub__(self, other):
        return self._addsub(other, -1)

    def __rsub__(self, other):
        other = self.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other._addsub(self, -1)

    def scale(self, c):
        c = _norm_coeff(c)
        if not c:
            return MPoly.zero(self.n)
        if c == 1:
            return self
        out = {k: _norm_coeff(v * c) for k, v in self._t.items()}
        return MPoly._raw(self.n, out)

    def _check_mul_range(self, other):
        a = self._bounds()
        b = other._bounds()
        if a[4] + b[4] > X_LIMIT:
            raise OverflowError("x degree of product exceeds the packed range")
        if a[0] + b[0] < -QT_LIMIT or a[1] + b[1] > QT_LIMIT or a[2] + b[2] < -QT_LIMIT or a[3] + b[3] > QT_LIMIT:
            raise OverflowError("q/t exponent of product exceeds the packed range")

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        other = self.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._t or not other._t:
            return MPoly.zero(self.n)
        if len(other._t) == 1 and other._lay.one_key in other._t:
            return self.scale(other._t[other._lay.one_key])
        if len(self._t) == 1 and self._lay.one_key in self._t:
            return other.scale(self._t[self._lay.one_key])
        self._check_mul_range(other)
        out = core.mul(self._t, other._t, self._lay.base, self._lay.fits64)
        if self.has_fractions() or other.has_fractions():
            out = {k: _norm_coeff(v) for k, v in out.items()}
        return MPoly._raw(self.n, out)

    def __rmul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if len(self._t) != 1:
                raise ValueError("negative power of a non-monomial")
            (k, c), = self._t.items()
            qe, te, xs = self._lay.unpack(k)
            if any(xs):
                raise ValueError("negative power of an x monomial")
            return MPoly.monomial(self.n, q=qe * e, t=te * e, coeff=Fraction(1) / Fraction(c) ** (-e))
        result = MPoly.one(self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        if _is_scalar(other):
            if not other:
                raise ZeroDivisionError("division by zero scalar")
            return self.scale(Fraction(1) / Fraction(other))
        other = self.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_monomial():
            (k, c), = other._t.items()
            qe, te, xs = other._lay.unpack(k)
            if not any(xs):
                return self.mul_monomial(-qe, -te, (0,) * self.n).scale(Fraction(1) / Fraction(c))
        from .frac import Frac

        return Frac(self, other)

    def mul_monomial(self, qe=0, te=0, xs=None):
        """Multiply by q^qe t^te x^xs (x exponents may be negative if the result stays valid)."""
        lay = self._lay
        xs = tuple(xs) if xs is not None else (0,) * self.n
        if qe == 0 and te == 0 and not any(xs):
            return self
        out = {}
        for k, c in self._t.items():
            q0, t0, x0 = lay.unpack(k)
            nx = tuple(a + b for a, b in zip(x0, xs))
            out[lay.pack(q0 + qe, t0 + te, nx)] = c
        return MPoly._raw(self.n, out)

    def try_divexact(self, other):
        """Exact quotient, or None if ``other`` does not divide ``self``."""
        other = self.coerce(other)
        if not other._t:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._t:
            return MPoly.zero(self.n)
        if len(other._t) == 1:
            (k, c), = other._t.items()
            qe, te, xs = self._lay.unpack(k)
            if not any(xs):
                return self.mul_monomial(-qe, -te).scale(Fraction(1) / Fraction(c))
        lay = self._lay
        fields = []
        for idx, (shift, mask, off) in enumerate(lay.field_specs()):
            fa = [(k >> shift) & mask for k in self._t]
            fb = [(k >> shift) & mask for k in other._t]
            lo = min(fa) - min(fb) + off
            hi = max(fa) - max(fb) + off
            if idx >= 2:
                lo = max(lo, off)
            if lo > hi or lo < 0 or hi > mask:
                return None
            fields.append((shift, mask, lo, hi))
        out = core.divexact(self._t, other._t, lay.base, tuple(fields), lay.fits64)
        if out is None:
            return None
        if any(type(v) is not int for v in out.values()):
            out = {k: _norm_coeff(v) for k, v in out.items()}
        return MPoly._raw(self.n, out)

    def divexact(self, other):
        q = self.try_divexact(other)
        if q is None:
            raise ValueError("polynomial division is not exact")
        return q

    # ---- structural maps ---------------------------------------------
    def map_keys(self, fn):
        """Apply fn((q, t, xs)) -> (q, t, xs) to every monomial; merges collisions."""
        lay = self._lay
        out = {}
        for k, c in self._t.items():
            nk = lay.pack(*fn(lay.unpack(k)))
            v = out.get(nk, 0) + c
            if v:
                out[nk] = v
            else:
                del out[nk]
        return MPoly._raw(self.n, out)

    def permute_x(self, perm):
        """New polynomial g with g(x) = f(x_{perm[0]}, ..., x_{perm[n-1]}) (0-based perm).

        Equivalently the exponent of x_{perm[i]} in g equals the exponent of
        x_i in f.
        """
        n = self.n

        def fn(m):
            qe, te, xs = m
            nx = [0] * n
            for i, e in enumerate(xs):
                nx[perm[i]] += e
            return qe, te, tuple(nx)

        return self.map_keys(fn)

    def swap_x(self, i, j):
        """Exchange x_i and x_j (1-based)."""
        perm = list(range(self.n))
        perm[i - 1], perm[j - 1] = perm[j - 1], perm[i - 1]
        return self.permute_x(perm)

    def specialize_q1(self):
        return self.map_keys(lambda m: (0, m[1], m[2]))

    def top_homogeneous(self):
        if not self._t:
            raise ValueError("top homogeneous component of the zero polynomial")
        d = self.x_degree()
        xd = self._lay.xdeg
        return MPoly._raw(self.n, {k: c for k, c in self._t.items() if xd(k) == d})

    def homogeneous_part(self, d):
        xd = self._lay.xdeg
        return MPoly._raw(self.n, {k: c for k, c in self._t.items() if xd(k) == d})

    def extend(self, n2):
        """Same polynomial viewed in n2 >= n variables (new variables appended)."""
        if n2 < self.n:
            raise ValueError("cannot shrink the ambient variable count")
        lay2 = layout(n2)
        pad = (0,) * (n2 - self.n)
        out = {}
        for (qe, te, xs), c in self.terms():
            out[lay2.pack(qe, te, xs + pad)] = c
        return MPoly._raw(n2, out)

    def restrict(self, n2, keep=None):
        """View in n2 variables; ``keep`` lists the 1-based x indices retained in order."""
        keep = list(keep) if keep is not None else list(range(1, n2 + 1))
        lay2 = layout(n2)
        dropped = set(range(1, self.n + 1)) - set(keep)
        out = {}
        for (qe, te, xs), c in self.terms():
            if any(xs[i - 1] for i in dropped):
                raise ValueError("restriction drops a variable that occurs")
            k = lay2.pack(qe, te, tuple(xs[i - 1] for i in keep))
            out[k] = out.get(k, 0) + c
        return MPoly._raw(n2, {k: v for k, v in out.items() if v})

    # ---- substitution / evaluation -----------------------------------
    def subs(self, assignment):
        """Substitution homomorphism.

        ``assignment`` maps 'q', 't' or a 1-based x index to an MPoly (same n)
        or a scalar.  Unassigned variables pass through.  Negative powers are
        only allowed for q and t, and then the substituted value must be a
        monomial without x or a nonzero scalar.
        """
        if not assignment:
            return self
        n = self.n
        lay = self._lay
        subs = {}
        for var, val in assignment.items():
            if var not in ("q", "t") and not (isinstance(var, int) and 1 <= var <= n):
                raise ValueError(f"unknown variable {var!r}")
            if isinstance(val, MPoly):
                if val.n != n:
                    raise ValueError("ambient n mismatch in substitution")
            elif _is_scalar(val):
                val = MPoly.const(n, val)
            else:
                raise TypeError("substitution values must be MPoly or rational")
            subs[var] = val
        mono = all(v.is_monomial() or v.is_zero() for v in subs.values())
        if mono:
            return self._subs_monomial(subs)
        caches = {var: {0: MPoly.one(n), 1: val} for var, val in subs.items()}

        def power(var, e):
            cache = caches[var]
            if e not in cache:
                if e < 0:
                    cache[e] = caches[var][1] ** e
                else:
                    half = power(var, e // 2)
                    p = half * half
                    if e % 2:
                        p = p * cache[1]
                    cache[e] = p
            return cache[e]

        result = MPoly.zero(n)
        groups = {}
        for k, c in self._t.items():
            qe, te, xs = lay.unpack(k)
            sub_exp = []
            keep_q = qe
            keep_t = te
            keep_x = list(xs)
            if "q" in subs:
                sub_exp.append(("q", qe))
                keep_q = 0
            if "t" in subs:
                sub_exp.append(("t", te))
                keep_t = 0
            for i in range(n):
                if (i + 1) in subs:
                    sub_exp.append((i + 1, xs[i]))
                    keep_x[i] = 0
            key = tuple(sub_exp)
            groups.setdefault(key, {})
            rk = lay.pack(keep_q, keep_t, tuple(keep_x))
            groups[key][rk] = groups[key].get(rk, 0) + c
        for key, rest in groups.items():
            factor = MPoly._raw(n, {k: v for k, v in rest.items() if v})
            for var, e in key:
                if e:
                    factor = factor * power(var, e)
            result = result + factor
        return result

    def _subs_monomial(self, subs):
        n = self.n
        lay = self._lay
        info = {}
        for var, val in subs.items():
            if val.is_zero():
                info[var] = None
            else:
                (k, c), = val._t.items()
                info[var] = (c, lay.unpack(k))
        out = {}
        for k, c in self._t.items():
            qe, te, xs = lay.unpack(k)
            coeff = c
            nq, nt, nx = 0, 0, [0] * n
            exps = [("q", qe), ("t", te)] + [(i + 1, xs[i]) for i in range(n)]
            dead = False
            for var, e in exps:
                if var in info:
                    if not e:
                        continue
                    spec = info[var]
                    if spec is None:
                        if e > 0:
                            dead = True
                            break
                        raise ZeroDivisionError("negative power of zero in substitution")
                    sc, (sq, st, sx) = spec
                    if e < 0 and any(sx):
                        raise ValueError("negative power of an x monomial in substitution")
                    coeff = coeff * (Fraction(sc) ** e if e < 0 else sc ** e)
                    nq += sq * e
                    nt += st * e
                    for i in range(n):
                        nx[i] += sx[i] * e
                else:
                    if var == "q":
                        nq += e
                    elif var == "t":
                        nt += e
                    else:
                        nx[var - 1] += e
            if dead:
                continue
            nk = lay.pack(nq, nt, tuple(nx))
            v = out.get(nk, 0) + coeff
            if v:
                out[nk] = v
            else:
                del out[nk]
        return MPoly._raw(n, {k: _norm_coeff(v) for k, v in out.items()})

    def evaluate(self, q=None, t=None, x=None):
        """Exact value at rational q, t, x (all occurring variables must be given)."""
        lay = self._lay
        qv = None if q is None else Fraction(q)
        tv = None if t is None else Fraction(t)
        xv = None if x is None else [Fraction(v) for v in x]
        pq, pt = {}, {}
        px = [dict() for _ in range(self.n)]

        def pw(cache, base, e, name):
            r = cache.get(e)
            if r is None:
                if base is None:
                    raise ValueError(f"value for {name} required")
                if e < 0 and base == 0:
                    raise ZeroDivisionError(f"negative power of {name}=0")
                r = base ** e
                cache[e] = r
            return r

        total = Fraction(0)
        for k, c in self._t.items():
            qe, te, xs = lay.unpack(k)
            v = Fraction(c)
            if qe:
                v *= pw(pq, qv, qe, "q")
            if te:
                v *= pw(pt, tv, te, "t")
            for i, e in enumerate(xs):
                if e:
                    v *= pw(px[i], None if xv is None else xv[i], e, f"x_{i + 1}")
            total += v
        return total

    def eval_mod(self, p, q=None, t=None, x=None):
        """Value modulo the prime p at residues q, t, x."""
        lay = self._lay
        total = 0
        for k, c in self._t.items():
            qe, te, xs = lay.unpack(k)
            if isinstance(c, Fraction):
                v = c.numerator * pow(c.denominator, -1, p)
            else:
                v = c
            if qe:
                v *= pow(q, qe, p)
            if te:
                v *= pow(t, te, p)
            for i, e in enumerate(xs):
                if e:
                    v *= pow(x[i], e, p)
            total = (total + v) % p
        return total % p

    # ---- normalisation helpers ---------------------------------------
    def content(self):
        """Positive rational g with self/g having coprime integer coefficients."""
        if not self._t:
            return Fraction(0)
        nums = 0
        den = 1
        for c in self._t.values():
            if type(c) is int:
                nums = gcd(nums, c)
            else:
                nums = gcd(nums, c.numerator)
                den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(nums, den)

    def primitive(self):
        g = self.content()
        if g == 0:
            return self
        return self.scale(Fraction(1) / g)

    def monomial_content(self):
        """Per-variable minimal exponents (q, t, xs)."""
        lay = self._lay
        ms = [lay.unpack(k) for k in self._t]
        if not ms:
            return 0, 0, (0,) * self.n
        return (
            min(m[0] for m in ms),
            min(m[1] for m in ms),
            tuple(min(m[2][i] for m in ms) for i in range(self.n)),
        )

    # ---- serialisation -------------------------------------------------
    def to_json(self):
        terms = []
        for (qe, te, xs), c in self.terms():
            c = Fraction(c)
            terms.append({"q": qe, "t": te, "x": list(xs), "coeff": f"{c.numerator}/{c.denominator}"})
        return {"n": self.n, "terms": terms}

    @classmethod
    def from_json(cls, obj):
        n = obj["n"]
        items = []
        for term in obj["terms"]:
            num, _, den = term["coeff"].partition("/")
            items.append(((term["q"], term["t"], tuple(term["x"])), Fraction(int(num), int(den or 1))))
        return cls.from_terms(n, items)

    def __repr__(self):
        return f"MPoly({self.n}, {self})"

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for (qe, te, xs), c in reversed(self.terms()):
            factors = []
            if qe:
                factors.append("q" if qe == 1 else f"q^{qe}")
            if te:
                factors.append("t" if te == 1 else f"t^{te}")
            for i, e in enumerate(xs):
                if e:
                    factors.append(f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")
