"""Multi-modular solver for linear systems over Q(t) with monomial entries.

Entries are single terms c * t^s (Laurent).  Each row is scaled to integer
polynomial entries, the system is solved modulo 31-bit primes at many points
t_i with batched Gauss-Jordan elimination, the common denominator is recovered
by rational function reconstruction and the numerators by interpolation.
Images are combined by CRT and rational number reconstruction, and the final
answer is certified exactly (A N = b D over Q[t]) before it is returned.
"""

from fractions import Fraction
from math import gcd, isqrt

import numpy as np

__all__ = ["ModularSolveError", "solve_monomial_system", "solve_monomial_system_at", "prepare_system", "primes_below"]


class ModularSolveError(ArithmeticError):
    pass


# ---- primes ---------------------------------------------------------------
def _is_prime(m):
    if m < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if m % p == 0:
            return m == p
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


_PRIMES = []


def primes_below(bound=1 << 31):
    """Generator of primes below ``bound`` in decreasing order (cached for the default bound)."""
    if bound == 1 << 31:
        yield from _PRIMES
        m = _PRIMES[-1] - 2 if _PRIMES else bound - 1
        while True:
            if _is_prime(m):
                _PRIMES.append(m)
                yield m
            m -= 2
    m = bound - 1 if bound % 2 == 0 else bound - 2
    while m > 2:
        if _is_prime(m):
            yield m
        m -= 2


# ---- vectorised modular helpers -------------------------------------------
def _powmod(a, e, p):
    a = np.asarray(a, dtype=np.int64) % p
    result = np.ones_like(a)
    while e:
        if e & 1:
            result = result * a % p
        a = a * a % p
        e >>= 1
    return result


def _inv(a, p):
    return _powmod(a, p - 2, p)


def _gauss_jordan(M, p):
    """Solve a batch of augmented systems M (B x N x (N+1)) modulo p.

    Returns (X, ok) with X of shape (B, N); ok marks the nonsingular batch members.
    """
    B, N, _ = M.shape
    M = M % p
    ok = np.ones(B, dtype=bool)
    ar = np.arange(B)
    for k in range(N):
        sub = M[:, k:, k] != 0
        has = sub.any(axis=1)
        ok &= has
        piv = np.argmax(sub, axis=1) + k
        swap = piv != k
        if swap.any():
            rows_k = M[ar, k, :].copy()
            M[ar, k, :] = M[ar, piv, :]
            M[ar, piv, :] = np.where(swap[:, None], rows_k, M[ar, piv, :])
        pivval = M[:, k, k].copy()
        pivval[~has] = 1
        inv = _inv(pivval, p)
        M[:, k, :] = M[:, k, :] * inv[:, None] % p
        col = M[:, :, k].copy()
        col[:, k] = 0
        # columns left of k are already unit vectors
        M[:, :, k:] -= (col[:, :, None] * M[:, k, None, k:]) % p
        M[:, :, k:] %= p
    return M[:, :, N], ok


def _newton_interp(xs, vals, p):
    """Coefficient rows (low degree first) of the interpolants of each column of vals."""
    P = len(xs)
    xs = np.asarray(xs, dtype=np.int64) % p
    c = np.array(vals, dtype=np.int64) % p
    if c.ndim == 1:
        c = c[:, None]
    c = c.copy()
    for k in range(1, P):
        den = (xs[k:] - xs[:-k]) % p
        inv = _inv(den, p)
        c[k:] = (c[k:] - c[k - 1:-1]) % p * inv[:, None] % p
    # Newton to monomial basis (Horner from the top)
    K = c.shape[1]
    poly = np.zeros((P, K), dtype=np.int64)
    poly[0] = c[P - 1]
    deg = 0
    for k in range(P - 2, -1, -1):
        # poly = poly * (t - xs[k]) + c[k]
        shifted = np.zeros_like(poly)
        shifted[1:deg + 2] = poly[:deg + 1]
        shifted[:deg + 1] = (shifted[:deg + 1] - poly[:deg + 1] * xs[k]) % p
        shifted[0] = (shifted[0] + c[k]) % p
        poly = shifted % p
        deg += 1
    return poly.T


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pdivmod_p(a, b, p):
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    if len(a) <= db:
        return [], _trim(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            f = c * inv % p
            q[i - db] = f
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - f * b[j]) % p
    return _trim(q), _trim(a[:db])


def _pmul_p(a, b, p):
    if not a or not b:
        return []
    return _trim((np.convolve(np.array(a, dtype=object), np.array(b, dtype=object)) % p).tolist())


def _psub_p(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _ratrecon_poly(S, Mod, p, slack):
    """Maximal-quotient rational reconstruction of S mod Mod; returns (num, den) or None."""
    r0, r1 = list(Mod), _trim(S)
    s0, s1 = [], [1]
    best = None
    bestq = -1
    P = len(Mod) - 1
    while r1:
        q, r = _pdivmod_p(r0, r1, p)
        dq = len(q) - 1
        if dq > bestq:
            bestq = dq
            best = (r1, s1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub_p(s0, _pmul_p(q, s1, p), p)
    if best is None or bestq <= slack:
        return None
    num, den = best
    if len(num) - 1 + len(den) - 1 + slack >= P:
        return None
    inv = pow(den[-1], p - 2, p)
    return [c * inv % p for c in num], [c * inv % p for c in den]


def _ratrecon_int(a, m):
    """Rational number reconstruction of a mod m, or None."""
    bound = isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        qq = r0 // r1
        r0, r1 = r1, r0 - qq * r1
        s0, s1 = s1, s0 - qq * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


# ---- the solver -------------------------------------------------------------
class _Scaled:
    """Integer-polynomial form of a monomial system after per-row scaling."""

    def __init__(self, entries, rhs):
        N = len(entries)
        self.N = N
        coeff = np.zeros((N, N), dtype=object)
        expo = np.zeros((N, N), dtype=np.int64)
        rhs_terms = []
        for r in range(N):
            row = entries[r]
            if len(row) != N:
                raise ValueError("system must be square")
            exps = [s for v in row if v is not None and v[0] != 0 for (_, s) in [v]]
            exps += [s for s, c in rhs[r].items() if c]
            if not exps:
                raise ModularSolveError(f"row {r} is identically zero")
            lo = min(exps)
            den = 1
            for v in row:
                if v is not None:
                    f = Fraction(v[0])
                    den = den * f.denominator // gcd(den, f.denominator)
            for c in rhs[r].values():
                f = Fraction(c)
                den = den * f.denominator // gcd(den, f.denominator)
            for c_idx, v in enumerate(row):
                if v is not None and v[0] != 0:
                    f = Fraction(v[0]) * den
                    coeff[r, c_idx] = f.numerator
                    expo[r, c_idx] = v[1] - lo
            terms = {}
            for s, c in rhs[r].items():
                if c:
                    f = Fraction(c) * den
                    terms[s - lo] = terms.get(s - lo, 0) + f.numerator
            rhs_terms.append({s: c for s, c in terms.items() if c})
        self.coeff = coeff
        self.expo = expo
        self.rhs = rhs_terms
        self.maxexp = int(max(expo.max(), max((max(t) for t in rhs_terms if t), default=0)))

    def evaluate(self, ts, p):
        """Augmented matrices at the points ts modulo p, shape (B, N, N+1)."""
        ts = np.asarray(ts, dtype=np.int64) % p
        B = len(ts)
        N = self.N
        powers = np.empty((B, self.maxexp + 1), dtype=np.int64)
        powers[:, 0] = 1
        for e in range(1, self.maxexp + 1):
            powers[:, e] = powers[:, e - 1] * ts % p
        cm = np.array([[int(c) % p for c in row] for row in self.coeff], dtype=np.int64)
        M = np.empty((B, N, N + 1), dtype=np.int64)
        M[:, :, :N] = cm[None, :, :] * powers[:, self.expo] % p
        for r, terms in enumerate(self.rhs):
            acc = np.zeros(B, dtype=np.int64)
            for s, c in terms.items():
                acc = (acc + (c % p) * powers[:, s]) % p
            M[:, r, N] = acc
        return M


def _image_mod_p(sc, p, P, slack, rng):
    """Reduced (den, nums) modulo p using P points, or None if P is too small."""
    ts = np.arange(2, P + 2, dtype=np.int64)
    M = sc.evaluate(ts, p)
    X, ok = _gauss_jordan(M, p)
    if not ok.all():
        keep = np.nonzero(ok)[0]
        if len(keep) < P // 2 + 1:
            raise ModularSolveError("system is singular modulo p at most points")
        ts, X = ts[keep], X[keep]
    Pn = len(ts)
    weights = rng.integers(1, p, size=sc.N, dtype=np.int64)
    comb = (X % p * weights[None, :] % p).sum(axis=1) % p
    S = _newton_interp(ts, comb, p)[0].tolist()
    Mod = [1]
    for tv in ts.tolist():
        Mod = _pmul_p(Mod, [(-tv) % p, 1], p)
    if not _trim(S):
        den = [1]
    else:
        rec = _ratrecon_poly(S, Mod, p, slack)
        if rec is None:
            return None
        _, den = rec
    dvals = np.zeros(Pn, dtype=np.int64)
    for c in reversed(den):
        dvals = (dvals * ts + c) % p
    nums_vals = X * dvals[:, None] % p
    nums = _newton_interp(ts, nums_vals, p)
    out = []
    for row in nums:
        row = _trim(row.tolist())
        if len(row) + slack > Pn:
            return None
        out.append(row)
    return den, out


def _crt_pair(r1, m1, r2, m2):
    inv = pow(m1, -1, m2)
    return (r1 + (r2 - r1) * inv % m2 * m1), m1 * m2


def solve_monomial_system(entries, rhs, slack=4, max_primes=400, seed=0):
    """Solve A c = b over Q(t) where A[r][c] = (coeff, t-exponent) or None and b[r] = {t-exponent: coeff}.

    Returns (den, nums): dense coefficient lists (lowest degree first, Fraction
    entries) with c_i = nums[i] / den, den monic.  Raises ModularSolveError if
    the system is singular.
    """
    sc = _Scaled(entries, rhs)
    N = sc.N
    if N == 0:
        return [Fraction(1)], []
    rng = np.random.default_rng(seed)
    P = 32
    primes = primes_below()
    acc = None
    modulus = 1
    shape = None
    prev = None
    used = 0
    while used < max_primes:
        p = next(primes)
        img = _image_mod_p(sc, p, P, slack, rng)
        if img is None:
            P *= 2
            acc = None
            modulus = 1
            shape = None
            prev = None
            continue
        den, nums = img
        this_shape = (len(den), tuple(len(r) for r in nums))
        if shape is not None and this_shape != shape:
            if sum(this_shape[1]) + this_shape[0] < sum(shape[1]) + shape[0]:
                continue
            acc = None
            modulus = 1
        shape = this_shape
        flat = den + [c for r in nums for c in (r + [0] * (max(shape[1]) - len(r)))]
        if acc is None:
            acc = list(flat)
            modulus = p
        else:
            acc = [_crt_pair(a, modulus, b, p)[0] % (modulus * p) for a, b in zip(acc, flat)]
            modulus *= p
        used += 1
        recon = [_ratrecon_int(a, modulus) for a in acc]
        if any(v is None for v in recon):
            prev = None
            continue
        if recon != prev:
            prev = recon
            continue
        dlen = shape[0]
        width = max(shape[1])
        den_q = recon[:dlen]
        nums_q = [recon[dlen + i * width: dlen + i * width + shape[1][i]] for i in range(N)]
        if _certify(sc, den_q, nums_q):
            return den_q, nums_q
        prev = None
    raise ModularSolveError("multi-modular reconstruction did not stabilise")


def _certify(sc, den, nums):
    """Exact check of A N = b D over Q[t] on the scaled system."""
    N = sc.N
    lcm = 1
    for f in den + [c for r in nums for c in r]:
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    D = [int(f * lcm) for f in den]
    Ns = [[int(f * lcm) for f in r] for r in nums]
    if not any(D):
        return False
    for r in range(N):
        acc = {}
        for c in range(N):
            a = sc.coeff[r, c]
            if not a:
                continue
            s = int(sc.expo[r, c])
            for i, v in enumerate(Ns[c]):
                if v:
                    acc[i + s] = acc.get(i + s, 0) + a * v
        for s, b in sc.rhs[r].items():
            for i, v in enumerate(D):
                if v:
                    acc[i + s] = acc.get(i + s, 0) - b * v
        if any(acc.values()):
            return False
    return True


def prepare_system(entries, rhs):
    """Scaled integer form of a monomial system, reusable across pointwise solves."""
    return _Scaled(entries, rhs)


def solve_monomial_system_at(system, ts, max_primes=400):
    """Exact solutions of a prepared system with t fixed to each nonzero rational in ts.

    All points are solved together modulo one prime at a time, lifted by CRT
    and rational number reconstruction, and certified exactly.  Returns one
    list of Fractions per point.
    """
    sc = system
    ts = [Fraction(t) for t in ts]
    if any(t == 0 for t in ts):
        raise ValueError("t must be nonzero")
    N = sc.N
    if N == 0:
        return [[] for _ in ts]
    out = [None] * len(ts)
    acc = [None] * len(ts)
    moduli = [1] * len(ts)
    prev = [None] * len(ts)
    used = 0
    for p in primes_below():
        todo = [i for i, v in enumerate(out) if v is None]
        if not todo:
            return out
        if used >= max_primes:
            break
        if any(ts[i].denominator % p == 0 or ts[i].numerator % p == 0 for i in todo):
            continue
        tps = [ts[i].numerator % p * pow(ts[i].denominator, -1, p) % p for i in todo]
        X, ok = _gauss_jordan(sc.evaluate(tps, p), p)
        used += 1
        for row, i in enumerate(todo):
            if not ok[row]:
                continue
            vals = [int(v) for v in X[row]]
            if acc[i] is None:
                acc[i], moduli[i] = vals, p
            else:
                m = moduli[i]
                acc[i] = [_crt_pair(a, m, b, p)[0] % (m * p) for a, b in zip(acc[i], vals)]
                moduli[i] = m * p
            recon = [_ratrecon_int(a, moduli[i]) for a in acc[i]]
            if any(v is None for v in recon):
                prev[i] = None
                continue
            if recon != prev[i]:
                prev[i] = recon
                continue
            if _certify_at(sc, recon, ts[i]):
                out[i] = recon
            else:
                prev[i] = None
    if all(v is not None for v in out):
        return out
    raise ModularSolveError("pointwise reconstruction did not stabilise")


def _certify_at(sc, vals, t):
    tp = {}

    def tpow(e):
        e = int(e)
        if e not in tp:
            tp[e] = t ** e
        return tp[e]

    for r in range(sc.N):
        acc = Fraction(0)
        for c in range(sc.N):
            a = sc.coeff[r, c]
            if a and vals[c]:
                acc += a * tpow(sc.expo[r, c]) * vals[c]
        for s, b in sc.rhs[r].items():
            acc -= b * tpow(s)
        if acc:
            return False
    return True
