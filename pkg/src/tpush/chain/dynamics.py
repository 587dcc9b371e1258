"""Exact transition kernel of the interpolation t-Push TASEP.

Sites are 1-based in the public API and 0-based internally.  Step 1 and
Step 2 are enumerated as path structures first; the symbolic and the
numeric evaluators both read the same structures.

Step 2 factors share the denominator x_k - t^(2-n) with the bell weights, so
P_j times a Step-2 path weight is (prod of path numerators) times
prod_{k>j} (x_k - t^(1-n)), all over e*_{n-1}.  Full kernel rows are stored as
polynomial numerators over L_mu * e*_{n-1}, with L_mu the univariate lcm of
the Step-1 t-integer denominators in that row.
"""

from fractions import Fraction

from ..algebra import Frac, MPoly, upoly
from ..combinatorics import as_partition, orbit
from ..queues import a_coeff, c_coeff

__all__ = [
    "ChainSpec",
    "Kernel",
    "FullKernel",
    "bell_numerators",
    "bell_denominator",
    "bell_probs",
    "p_frak",
    "q_frak",
    "step1_paths",
    "step2_paths",
    "step1_kernel",
    "step2_kernel",
    "step1_cell",
    "step2_cell",
    "full_kernel",
    "kernel_at",
    "is_restricted",
]


class ChainSpec:
    """Content lam (a partition with at least one zero part) and its state space."""

    __slots__ = ("lam", "n", "states", "_index")

    def __init__(self, lam):
        lam = as_partition(lam)
        if not lam or lam[-1] != 0:
            raise ValueError(f"content {lam} needs at least one part equal to 0")
        self.lam = lam
        self.n = len(lam)
        self.states = orbit(lam)
        self._index = {s: i for i, s in enumerate(self.states)}

    def index(self, mu):
        return self._index[tuple(mu)]

    def __repr__(self):
        return f"ChainSpec({self.lam})"


def is_restricted(lam):
    """Distinct parts, exactly one zero and no part equal to 1."""
    return len(set(lam)) == len(lam) and lam.count(0) == 1 and 1 not in lam


# ---- Step 0 -------------------------------------------------------------------
def bell_numerators(n):
    """D_j = prod_{k<j} (x_k - t^(2-n)) * prod_{k>j} (x_k - t^(1-n)), j = 1..n."""
    a = MPoly.monomial(n, t=2 - n)
    b = MPoly.monomial(n, t=1 - n)
    out = []
    for j in range(1, n + 1):
        p = MPoly.one(n)
        for k in range(1, n + 1):
            if k < j:
                p = p * (MPoly.x(n, k) - a)
            elif k > j:
                p = p * (MPoly.x(n, k) - b)
        out.append(p)
    return out


def bell_denominator(n):
    total = MPoly.zero(n)
    for d in bell_numerators(n):
        total = total + d
    return total


def bell_probs(n):
    if n < 2:
        raise ValueError("the bell needs n >= 2")
    E = bell_denominator(n)
    return [Frac(d, E) for d in bell_numerators(n)]


def p_frak(k, n):
    """t^(1-n) (1-t) / (x_k - t^(2-n))."""
    one = MPoly.one(n)
    return Frac(MPoly.monomial(n, t=1 - n) * (one - MPoly.t(n)), MPoly.x(n, k) - MPoly.monomial(n, t=2 - n))


def q_frak(k, n):
    """(1-t) x_k / (x_k - t^(2-n))."""
    one = MPoly.one(n)
    return Frac((one - MPoly.t(n)) * MPoly.x(n, k), MPoly.x(n, k) - MPoly.monomial(n, t=2 - n))


# ---- path structures ------------------------------------------------------------
def step1_paths(mu, j):
    """Step-1 cascades from mu with the bell at site j (1-based).

    Yields (rho, e, ms): the path has probability t^e / prod_{m in ms} [m]_t.
    """
    mu = tuple(mu)
    n = len(mu)
    j0 = j - 1
    a = mu[j0]
    if a == 0:
        yield mu, 0, ()
        return

    def rec(cfg, pos, lab, e, ms):
        weaker = []
        for s in range(1, n):
            p = (pos + s) % n
            if p != j0 and cfg[p] < lab:
                weaker.append(p)
        m = len(weaker)
        if m == 0:
            raise AssertionError("a cascade found no weaker site")
        for kk, p in enumerate(weaker):
            disp = cfg[p]
            cfg2 = list(cfg)
            cfg2[p] = lab
            if disp == 0:
                cfg2[j0] = 0
                yield tuple(cfg2), e + kk, ms + (m,)
            else:
                yield from rec(cfg2, p, disp, e + kk, ms + (m,))

    yield from rec(list(mu), j0, a, 0, ())


def step2_paths(rho, j):
    """Step-2 walks from rho (rho_j = 0) with the bell at site j (1-based).

    Yields (nu, codes) where codes[k] for sites k < j is one of 'p' (settle,
    b >= a), 'P' (skip, b >= a), 'q' (settle, b < a), 'Q' (skip, b < a).
    """
    rho = tuple(rho)
    j0 = j - 1
    if rho[j0] != 0:
        raise ValueError(f"Step 2 needs a vacancy at the bell site; got {rho} at j={j}")

    def rec(cfg, k, a, codes):
        if k == j0:
            c = list(cfg)
            c[j0] = a
            yield tuple(c), codes
            return
        b = cfg[k]
        ge = b >= a
        yield from rec(cfg, k + 1, a, codes + ("P" if ge else "Q",))
        c = list(cfg)
        c[k] = a
        yield from rec(c, k + 1, b, codes + ("p" if ge else "q",))

    yield from rec(list(rho), 0, 0, ())


def _code_numerator(code, k, n):
    """Numerator over x_k - t^(2-n) of the Step-2 factor at site k (1-based)."""
    one = MPoly.one(n)
    t = MPoly.t(n)
    x = MPoly.x(n, k)
    if code == "p":
        return MPoly.monomial(n, t=1 - n) * (one - t)
    if code == "P":
        return x - MPoly.monomial(n, t=1 - n)
    if code == "q":
        return (one - t) * x
    if code == "Q":
        return t * x - MPoly.monomial(n, t=2 - n)
    raise ValueError(code)


def _tint(m):
    return [1] * m


def _den_of(ms):
    d = [1]
    for m in ms:
        d = upoly.pmul(d, _tint(m))
    return d


class Kernel:
    """Exact matrix with Frac entries; rows and cols are composition lists."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        self.rows = rows
        self.cols = cols
        self.entries = entries

    def __getitem__(self, key):
        mu, nu = key
        row = self.entries.get(tuple(mu), {})
        v = row.get(tuple(nu))
        if v is None:
            n = len(mu)
            return Frac(MPoly.zero(n), MPoly.one(n))
        return v

    def row(self, mu):
        return self.entries.get(tuple(mu), {})


# ---- Step-1 and Step-2 kernels ----------------------------------------------
def _step1_row(mu, j, n):
    acc = {}
    for rho, e, ms in step1_paths(mu, j):
        acc.setdefault(rho, {}).setdefault(tuple(sorted(ms)), {})
        slot = acc[rho][tuple(sorted(ms))]
        slot[e] = slot.get(e, 0) + 1
    out = {}
    for rho, groups in acc.items():
        total = None
        for ms, poly in groups.items():
            top = max(poly)
            num = upoly.from_dense(n, 0, [poly.get(i, 0) for i in range(top + 1)])
            f = Frac(num, upoly.from_dense(n, 0, _den_of(ms)))
            total = f if total is None else total + f
        out[rho] = total
    return out


def step1_cell(mu, rho, j):
    """Step-1 probability from mu to rho with the bell at site j."""
    n = len(mu)
    v = _step1_row(tuple(mu), j, n).get(tuple(rho))
    return Frac(MPoly.zero(n), MPoly.one(n)) if v is None else v


def step1_kernel(spec, j, check=None):
    """Kernel of Step 1 for bell site j: rows all states, columns states with rho_j = 0.

    For restricted content (or when ``check`` is true) each cell is compared
    with the classical queue weight a^mu_rho.
    """
    n = spec.n
    if check is None:
        check = is_restricted(spec.lam)
    cols = [r for r in spec.states if r[j - 1] == 0]
    entries = {}
    for mu in spec.states:
        row = _step1_row(mu, j, n)
        if check:
            for rho in cols:
                got = row.get(rho)
                want = a_coeff(mu, rho)
                if (got is None and not want.is_zero()) or (got is not None and got != want):
                    raise AssertionError(f"Step 1 mismatch at mu={mu}, rho={rho}, j={j}")
        entries[mu] = row
    return Kernel(list(spec.states), cols, entries)


def _step2_numerators(rho, j, n):
    """nu -> sum over walks of the product of factor numerators (without the k > j part)."""
    out = {}
    cache = {}
    for nu, codes in step2_paths(rho, j):
        w = MPoly.one(n)
        for k, code in enumerate(codes, start=1):
            f = cache.get((code, k))
            if f is None:
                f = cache[(code, k)] = _code_numerator(code, k, n)
            w = w * f
        out[nu] = out[nu] + w if nu in out else w
    return out


def _tail(j, n):
    b = MPoly.monomial(n, t=1 - n)
    p = MPoly.one(n)
    for k in range(j + 1, n + 1):
        p = p * (MPoly.x(n, k) - b)
    return p


def _head_den(j, n):
    a = MPoly.monomial(n, t=2 - n)
    p = MPoly.one(n)
    for k in range(1, j):
        p = p * (MPoly.x(n, k) - a)
    return p


def step2_cell(rho, nu, j):
    """Step-2 probability from rho (rho_j = 0) to nu with the bell at site j."""
    n = len(rho)
    v = _step2_numerators(tuple(rho), j, n).get(tuple(nu))
    return Frac(MPoly.zero(n) if v is None else v, _head_den(j, n))


def step2_kernel(spec, j, check=None):
    """Kernel of Step 2 for bell site j: rows rho with rho_j = 0, columns all states.

    For restricted content (or when ``check`` is true) each cell is compared
    with c^rho_nu / (e*_{n-1} P_j).
    """
    n = spec.n
    rows = [r for r in spec.states if r[j - 1] == 0]
    if check is None:
        check = is_restricted(spec.lam)
    head = _head_den(j, n)
    tail = _tail(j, n)
    entries = {}
    for rho in rows:
        nums = _step2_numerators(rho, j, n)
        if check:
            for nu in spec.states:
                got = nums.get(nu, MPoly.zero(n)) * tail
                if got != c_coeff(rho, nu):
                    raise AssertionError(f"Step 2 mismatch at rho={rho}, nu={nu}, j={j}")
        entries[rho] = {nu: Frac(v, head) for nu, v in nums.items()}
    return Kernel(rows, list(spec.states), entries)


# ---- full kernel --------------------------------------------------------------
class FullKernel:
    """Rows stored as num[mu][nu] / (row_den[mu] * E) with row_den univariate in t."""

    __slots__ = ("spec", "num", "row_den", "E")

    def __init__(self, spec, num, row_den, E):
        self.spec = spec
        self.num = num
        self.row_den = row_den
        self.E = E

    @property
    def states(self):
        return self.spec.states

    def entry(self, mu, nu):
        v = self.num[tuple(mu)].get(tuple(nu))
        n = self.spec.n
        if v is None:
            return Frac(MPoly.zero(n), MPoly.one(n))
        return Frac(v, self.row_den[tuple(mu)] * self.E)

    def row_sums_ok(self):
        for mu in self.states:
            total = MPoly.zero(self.spec.n)
            for v in self.num[mu].values():
                total = total + v
            if total != self.row_den[mu] * self.E:
                return False
        return True

    def evaluate(self, t, xs):
        """Matrix of exact rationals at a point (list of rows in state order)."""
        Ev = self.E.evaluate(t=t, x=xs)
        out = []
        for mu in self.states:
            d = self.row_den[mu].evaluate(t=t) * Ev
            out.append([self.num[mu][nu].evaluate(t=t, x=xs) / d if nu in self.num[mu] else Fraction(0)
                        for nu in self.states])
        return out


def full_kernel(spec):
    """The composed kernel sum_j P_j sum_rho P1_j(mu, rho) P2_j(rho, nu)."""
    n = spec.n
    E = bell_denominator(n)
    tails = {j: _tail(j, n) for j in range(1, n + 1)}
    step2_cache = {}
    num = {}
    row_den = {}
    for mu in spec.states:
        terms = []
        dens = []
        for j in range(1, n + 1):
            for rho, e, ms in step1_paths(mu, j):
                key = (rho, j)
                if key not in step2_cache:
                    step2_cache[key] = {nu: v * tails[j] for nu, v in _step2_numerators(rho, j, n).items()}
                d = _den_of(ms)
                terms.append((e, d, step2_cache[key]))
                dens.append(d)
        L = [1]
        for d in dens:
            if len(d) > 1:
                L = upoly.plcm(L, d)
        row = {}
        for e, d, nums in terms:
            f, r = upoly.pdivmod(L, d)
            if r:
                raise AssertionError("lcm is not divisible by a row denominator")
            mult = upoly.from_dense(n, e, f)
            for nu, v in nums.items():
                w = mult * v
                row[nu] = row[nu] + w if nu in row else w
        num[mu] = {nu: v for nu, v in row.items() if v}
        row_den[mu] = upoly.from_dense(n, 0, L)
    return FullKernel(spec, num, row_den, E)


def kernel_at(spec, t, xs):
    """Numeric kernel at rational t and x, built directly from the path structures."""
    n = spec.n
    t = Fraction(t)
    xs = [Fraction(v) for v in xs]
    a = t ** (2 - n)
    b = t ** (1 - n)
    D = []
    for j in range(1, n + 1):
        p = Fraction(1)
        for k in range(1, n + 1):
            if k < j:
                p *= xs[k - 1] - a
            elif k > j:
                p *= xs[k - 1] - b
        D.append(p)
    Esum = sum(D)
    pf = [b * (1 - t) / (x - a) for x in xs]
    qf = [(1 - t) * x / (x - a) for x in xs]
    fac = {"p": pf, "P": [1 - v for v in pf], "q": qf, "Q": [1 - v for v in qf]}
    tint = {}

    def tint_val(m):
        if m not in tint:
            tint[m] = sum(t ** i for i in range(m))
        return tint[m]

    idx = {s: i for i, s in enumerate(spec.states)}
    N = len(spec.states)
    out = [[Fraction(0)] * N for _ in range(N)]
    s2 = {}
    for mu in spec.states:
        row = out[idx[mu]]
        for j in range(1, n + 1):
            Pj = D[j - 1] / Esum
            for rho, e, ms in step1_paths(mu, j):
                p1 = t ** e
                for m in ms:
                    p1 /= tint_val(m)
                key = (rho, j)
                if key not in s2:
                    acc = {}
                    for nu, codes in step2_paths(rho, j):
                        w = Fraction(1)
                        for k, code in enumerate(codes):
                            w *= fac[code][k]
                        acc[nu] = acc.get(nu, 0) + w
                    s2[key] = acc
                for nu, w in s2[key].items():
                    row[idx[nu]] += Pj * p1 * w
    return out
