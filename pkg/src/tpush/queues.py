"""Two-line queues, signed two-line queues and the multiline-queue recursion at q = 1.

Columns are 0-based internally and 1-based in JSON output.  Pairings are
placed in reading order: labels in decreasing order, and within one label the
forced trivial pairings first, then the remaining top balls right to left.
"""

from functools import lru_cache
from itertools import product

from .algebra import Frac, MPoly
from .algebra import upoly
from .combinatorics import as_composition, eta_minus, orbit, sort_desc

__all__ = [
    "TwoLineQueue",
    "SignedTwoLineQueue",
    "UnsignedGQueue",
    "two_line_queues",
    "a_coeff",
    "signed_two_line_queues",
    "b_coeff",
    "ball_weight",
    "c_coeff",
    "unsigned_g_queue",
    "c_coeff_unsigned",
    "f_star_mlq_q1",
]


def _t_poly(coeffs, n):
    """sum coeffs[i] t^i as an MPoly in ambient n."""
    return upoly.from_dense(n, 0, list(coeffs))


def _t_int_dense(m):
    return [1] * m


class TwoLineQueue:
    """A classical two-line queue with its per-pairing statistics.

    ``pairs`` lists (top column, bottom column) in placement order and
    ``stats`` holds (skipped, free) for each nontrivial pairing.
    """

    __slots__ = ("top", "bottom", "pairs", "stats")

    def __init__(self, top, bottom, pairs, stats):
        self.top = top
        self.bottom = bottom
        self.pairs = pairs
        self.stats = stats

    def t_exponent(self):
        return sum(s for s, _ in self.stats)

    def weight(self, n=None):
        """Pairing weight prod t^skipped / [free]_t as a Frac in ambient n."""
        n = len(self.top) if n is None else n
        num = MPoly.monomial(n, t=self.t_exponent())
        den = [1]
        for _, nf in self.stats:
            den = upoly.pmul(den, _t_int_dense(nf))
        return Frac(num, _t_poly(den, n))

    def to_json(self):
        return {
            "top": list(self.top),
            "bottom": list(self.bottom),
            "pairs": [[j + 1, k + 1] for j, k in self.pairs],
        }


def _classical_plan(eta, kappa):
    """Placement plan or None when no queue exists.

    Returns a list of (label, trivial columns, other top columns right to left).
    """
    n = len(eta)
    if len(kappa) != n:
        raise ValueError("rows must have the same length")
    for i in range(n):
        if eta[i] > 0 and 0 < kappa[i] < eta[i]:
            return None
    labels = sorted({a for a in eta if a > 0}, reverse=True)
    plan = []
    for a in labels:
        tops = [i for i in range(n) if eta[i] == a]
        bots = sum(1 for i in range(n) if kappa[i] == a)
        if len(tops) > bots:
            return None
        triv = [i for i in tops if kappa[i] == a]
        rest = sorted((i for i in tops if kappa[i] != a), reverse=True)
        plan.append((a, triv, rest))
    return plan


def two_line_queues(eta, kappa, equal_content=True):
    """Enumerate the classical two-line queues with top row eta and bottom row kappa.

    Strands may wrap around cyclically.  With ``equal_content`` the rows must
    be rearrangements of each other; otherwise the bottom row may carry extra
    balls that stay unmatched.
    """
    eta = as_composition(eta)
    kappa = as_composition(kappa)
    n = len(eta)
    if equal_content and sort_desc(eta) != sort_desc(kappa):
        raise ValueError(f"rows {eta} and {kappa} have different content")
    plan = _classical_plan(eta, kappa)
    if plan is None:
        return
    free0 = frozenset(i for i in range(n) if kappa[i] > 0)
    pairs = []
    stats = []

    def rec(li, ri, free):
        if li == len(plan):
            yield TwoLineQueue(eta, kappa, tuple(pairs), tuple(stats))
            return
        a, triv, rest = plan[li]
        if ri == 0 and triv:
            free = free - set(triv)
            pairs.extend((i, i) for i in triv)
            yield from rec_body(li, 0, free, a, rest)
            del pairs[len(pairs) - len(triv):]
            return
        yield from rec_body(li, ri, free, a, rest)

    def rec_body(li, ri, free, a, rest):
        if ri == len(rest):
            yield from rec(li + 1, 0, free)
            return
        j = rest[ri]
        nf = len(free)
        for k in sorted(free):
            if kappa[k] != a:
                continue
            sk = sum(1 for s in range(1, (k - j) % n) if (j + s) % n in free)
            pairs.append((j, k))
            stats.append((sk, nf))
            yield from rec_body(li, ri + 1, free - {k}, a, rest)
            pairs.pop()
            stats.pop()

    yield from rec(0, 0, free0)


@lru_cache(maxsize=None)
def _a_coeff_cached(eta, kappa, equal_content):
    n = len(eta)
    num = {}
    den = None
    for Q in two_line_queues(eta, kappa, equal_content):
        e = Q.t_exponent()
        num[e] = num.get(e, 0) + 1
        if den is None:
            den = [1]
            for _, nf in Q.stats:
                den = upoly.pmul(den, _t_int_dense(nf))
    if den is None:
        return Frac(MPoly.zero(n), MPoly.one(n))
    top = max(num)
    numer = _t_poly([num.get(i, 0) for i in range(top + 1)], n)
    return Frac(numer, _t_poly(den, n))


def a_coeff(eta, kappa, equal_content=True):
    """Weight generating function a^eta_kappa of classical two-line queues (a Frac in t).

    Every queue for fixed rows sees the same sequence of free-ball counts, so
    the sum is taken over a single product of t-integers.
    """
    return _a_coeff_cached(as_composition(eta), as_composition(kappa), bool(equal_content))


class SignedTwoLineQueue:
    """A signed two-line queue; ``stats`` holds (skipped, emp, sign) per nontrivial pairing."""

    __slots__ = ("top", "bottom", "pairs", "stats")

    def __init__(self, top, bottom, pairs, stats):
        self.top = top
        self.bottom = bottom
        self.pairs = pairs
        self.stats = stats

    def pair_weight(self, n=None):
        """prod of +-(1-t) t^(skipped+emp) over nontrivial pairings."""
        n = len(self.top) if n is None else n
        w = MPoly.one(n)
        one_minus_t = MPoly.one(n) - MPoly.t(n)
        for sk, em, s in self.stats:
            w = w * one_minus_t.mul_monomial(0, sk + em)
            if s < 0:
                w = -w
        return w

    def weight(self):
        return self.pair_weight() * ball_weight(self.top)

    def to_json(self):
        return {
            "top": list(self.top),
            "bottom": list(self.bottom),
            "pairs": [[j + 1, k + 1] for j, k in self.pairs],
        }


def signed_two_line_queues(alpha, nu, fast=None):
    """Enumerate signed two-line queues with top row alpha (signed) and bottom row nu.

    Strands never wrap.  A positive ball must sit above a ball with label at
    least its own, and is then trivially paired when the labels agree; a
    negative ball -a sits above a vacancy or a ball with label at most a.
    ``fast`` selects the single-vacancy description of skipped balls and
    defaults to it whenever nu has exactly one vacancy.
    """
    alpha = tuple(int(a) for a in alpha)
    nu = as_composition(nu)
    n = len(nu)
    if len(alpha) != n:
        raise ValueError("rows must have the same length")
    if sort_desc(abs(a) for a in alpha) != sort_desc(nu):
        raise ValueError(f"rows {alpha} and {nu} have different content")
    if fast is None:
        fast = sum(1 for v in nu if v == 0) == 1
    for i, a in enumerate(alpha):
        if a > 0 and nu[i] < a:
            return
        if a < 0 and nu[i] > -a:
            return
    labels = sorted({abs(a) for a in alpha if a}, reverse=True)
    plan = []
    for a in labels:
        triv = [i for i in range(n) if alpha[i] == a and nu[i] == a]
        rest = sorted(
            ((i, 1 if alpha[i] > 0 else -1) for i in range(n) if abs(alpha[i]) == a and i not in triv),
            reverse=True,
        )
        plan.append((a, triv, rest))
    pairs = []
    stats = []

    def rec(li, ri, free):
        if li == len(plan):
            yield SignedTwoLineQueue(alpha, nu, tuple(pairs), tuple(stats))
            return
        a, triv, rest = plan[li]
        if ri == 0 and triv:
            free = free - set(triv)
            pairs.extend((i, i) for i in triv)
            yield from body(li, 0, free, a, rest)
            del pairs[len(pairs) - len(triv):]
            return
        yield from body(li, ri, free, a, rest)

    def body(li, ri, free, a, rest):
        if ri == len(rest):
            yield from rec(li + 1, 0, free)
            return
        j, s = rest[ri]
        for k in range(j, n):
            if nu[k] != a or k not in free:
                continue
            pairs.append((j, k))
            if k != j:
                if fast:
                    sk = sum(1 for c in range(j + 1, k) if 0 < nu[c] < a)
                    em = 0
                else:
                    sk = sum(1 for c in range(j + 1, k) if c in free)
                    em = sum(1 for c in range(j + 1, k) if nu[c] == 0)
                stats.append((sk, em, s))
            yield from body(li, ri + 1, free - {k}, a, rest)
            pairs.pop()
            if k != j:
                stats.pop()

    yield from rec(0, 0, frozenset(i for i in range(n) if nu[i] > 0))


def b_coeff(alpha, nu, fast=None):
    """Pairing-weight generating function b^alpha_nu (a Laurent polynomial in t)."""
    n = len(nu)
    total = MPoly.zero(n)
    for Q in signed_two_line_queues(alpha, nu, fast):
        total = total + Q.pair_weight(n)
    return total


def ball_weight(alpha):
    """wt_alpha: x_k for each positive entry, -t^(1-n) for each negative entry."""
    n = len(alpha)
    w = MPoly.one(n)
    for k, a in enumerate(alpha):
        if a > 0:
            w = w * MPoly.x(n, k + 1)
        elif a < 0:
            w = w * MPoly.monomial(n, t=1 - n, coeff=-1)
    return w


@lru_cache(maxsize=None)
def _c_coeff_cached(kappa, nu, fast):
    n = len(nu)
    idx = [i for i in range(n) if kappa[i] > 0]
    total = MPoly.zero(n)
    for signs in product((1, -1), repeat=len(idx)):
        alpha = list(kappa)
        for s, i in zip(signs, idx):
            alpha[i] = s * kappa[i]
        alpha = tuple(alpha)
        b = b_coeff(alpha, nu, fast)
        if b:
            total = total + ball_weight(alpha) * b
    return total


def c_coeff(kappa, nu, fast=None):
    """c^kappa_nu = sum over sign patterns alpha with |alpha| = kappa of wt_alpha b^alpha_nu."""
    return _c_coeff_cached(as_composition(kappa), as_composition(nu), fast)


class UnsignedGQueue:
    """The unique unsigned queue for distinct-part rows; ``stats`` holds skipped counts."""

    __slots__ = ("top", "bottom", "pairs", "stats")

    def __init__(self, top, bottom, pairs, stats):
        self.top = top
        self.bottom = bottom
        self.pairs = pairs
        self.stats = stats

    def weight(self):
        n = len(self.top)
        tinv = MPoly.monomial(n, t=1 - n)
        w = MPoly.one(n)
        for k, a in enumerate(self.top):
            if a == 0:
                continue
            b = self.bottom[k]
            if b == a:
                w = w * (MPoly.x(n, k + 1) - tinv)
            elif b > a:
                w = w * MPoly.x(n, k + 1)
            else:
                w = w * tinv
        one_minus_t = MPoly.one(n) - MPoly.t(n)
        for sk in self.stats:
            w = w * one_minus_t.mul_monomial(0, sk)
        return w

    def to_json(self):
        return {
            "top": list(self.top),
            "bottom": list(self.bottom),
            "pairs": [[j + 1, k + 1] for j, k in self.pairs],
        }


def unsigned_g_queue(kappa, nu):
    """The element of the unsigned set for distinct-part content, or None if it is empty."""
    kappa = as_composition(kappa)
    nu = as_composition(nu)
    n = len(nu)
    if sort_desc(kappa) != sort_desc(nu):
        raise ValueError(f"rows {kappa} and {nu} have different content")
    nonzero = [a for a in kappa if a > 0]
    if len(set(nonzero)) != len(nonzero) or sum(1 for a in kappa if a == 0) > 1:
        raise ValueError("unsigned queues require distinct parts")
    where = {a: k for k, a in enumerate(nu) if a > 0}
    free = set(where.values())
    pairs = []
    stats = []
    for a in sorted(nonzero, reverse=True):
        j = kappa.index(a)
        k = where[a]
        if k < j:
            return None
        pairs.append((j, k))
        if k != j:
            stats.append(sum(1 for c in range(j + 1, k) if c in free))
        free.discard(k)
    return UnsignedGQueue(kappa, nu, tuple(pairs), tuple(stats))


def c_coeff_unsigned(kappa, nu):
    Q = unsigned_g_queue(kappa, nu)
    if Q is None:
        return MPoly.zero(len(nu))
    return Q.weight()


@lru_cache(maxsize=None)
def _f_star_mlq(nu):
    n = len(nu)
    if max(nu, default=0) == 0:
        return Frac(MPoly.one(n), MPoly.one(n))
    lam = sort_desc(nu)
    reduced = tuple(0 if a == 1 else a for a in lam)
    states = orbit(lam)
    total = Frac(MPoly.zero(n), MPoly.one(n))
    for eta in orbit(reduced):
        inner = Frac(MPoly.zero(n), MPoly.one(n))
        for mu in states:
            a = a_coeff(eta, mu, equal_content=False)
            if a.is_zero():
                continue
            c = c_coeff(mu, nu)
            if c:
                inner = inner + a * c
        if not inner.is_zero():
            total = total + inner * _f_star_mlq(eta_minus(eta))
    return total


def f_star_mlq_q1(nu):
    """F*_nu(x; 1, t) by the multiline-queue recursion, as a Frac with a t-only denominator."""
    return _f_star_mlq(as_composition(nu))
