"""Compositions, partitions, orbits, spectral vectors, tableaux and recolorings.

Compositions and partitions are plain tuples of non-negative ints.  Partitions
are padded with zeros to the ambient length n.
"""

from itertools import combinations_with_replacement
from math import comb, factorial

__all__ = [
    "ParticleContent",
    "RecolorMap",
    "SSYT",
    "as_composition",
    "as_partition",
    "compositions_of",
    "compositions_up_to",
    "conjugate",
    "eta_minus",
    "inc",
    "is_partition",
    "k_vector",
    "orbit",
    "orbit_size",
    "recolor",
    "sort_desc",
    "spectral_vector",
    "ssyt_enumerate",
]


def as_composition(parts):
    parts = tuple(int(p) for p in parts)
    if any(p < 0 for p in parts):
        raise ValueError(f"composition has a negative part: {parts}")
    return parts


def is_partition(parts):
    return all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1)) and all(p >= 0 for p in parts)


def as_partition(parts, n=None):
    parts = as_composition(parts)
    if not is_partition(parts):
        raise ValueError(f"not a partition (parts must weakly decrease): {parts}")
    if n is not None:
        if len(parts) > n and any(parts[n:]):
            raise ValueError(f"partition {parts} has more than {n} nonzero parts")
        parts = (parts + (0,) * n)[:n]
    return parts


def sort_desc(mu):
    return tuple(sorted(mu, reverse=True))


def orbit(lam):
    """All distinct rearrangements of lam, lexicographically descending."""
    lam = sort_desc(as_composition(lam))
    n = len(lam)
    out = []

    def rec(prefix, counts):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for v in sorted(counts, reverse=True):
            if counts[v]:
                counts[v] -= 1
                prefix.append(v)
                rec(prefix, counts)
                prefix.pop()
                counts[v] += 1

    counts = {}
    for v in lam:
        counts[v] = counts.get(v, 0) + 1
    rec([], counts)
    return out


def orbit_size(lam):
    counts = {}
    for v in lam:
        counts[v] = counts.get(v, 0) + 1
    size = factorial(len(lam))
    for c in counts.values():
        size //= factorial(c)
    return size


def k_vector(mu):
    """k_i(mu) = #{j<i: mu_j > mu_i} + #{j>i: mu_j >= mu_i}."""
    n = len(mu)
    return tuple(
        sum(1 for j in range(i) if mu[j] > mu[i]) + sum(1 for j in range(i + 1, n) if mu[j] >= mu[i])
        for i in range(n)
    )


def spectral_vector(mu):
    """Exponent pairs (q, t) of the spectral point: coordinate i is q^mu_i t^-k_i."""
    mu = as_composition(mu)
    return tuple((m, -k) for m, k in zip(mu, k_vector(mu)))


def conjugate(lam):
    """Transpose of the Young diagram, without trailing zeros."""
    lam = [p for p in lam if p > 0]
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(max(lam)))


def compositions_of(n, d):
    """Compositions of d into n parts, lexicographically descending."""
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in compositions_of(n - 1, d - first):
            yield (first,) + rest


def compositions_up_to(n, d):
    """Every nu in N^n with |nu| <= d, by increasing size then lex descending."""
    for s in range(d + 1):
        yield from compositions_of(n, s)


def count_up_to(n, d):
    return comb(n + d, d)


def eta_minus(eta):
    return tuple(max(e - 1, 0) for e in eta)


class ParticleContent:
    """Multiplicities m_i and tail sums M_i of a partition."""

    __slots__ = ("lam", "m", "M")

    def __init__(self, lam):
        lam = as_partition(lam)
        L = lam[0] if lam else 0
        m = [0] * (L + 1)
        for p in lam:
            m[p] += 1
        M = [0] * (L + 1)
        acc = 0
        for i in range(L, -1, -1):
            acc += m[i]
            M[i] = acc
        self.lam = lam
        self.m = tuple(m)
        self.M = tuple(M)

    @property
    def n(self):
        return len(self.lam)

    @property
    def L(self):
        return len(self.m) - 1

    def __repr__(self):
        return f"ParticleContent(lam={self.lam}, m={self.m}, M={self.M})"


class SSYT:
    """Semistandard tableau stored as a tuple of rows (English notation)."""

    __slots__ = ("shape", "rows")

    def __init__(self, rows):
        self.rows = tuple(tuple(r) for r in rows if r)
        self.shape = tuple(len(r) for r in self.rows)

    def cells(self):
        for i, row in enumerate(self.rows):
            for j, v in enumerate(row):
                yield i, j, v

    def content(self, i, j):
        return j - i

    def is_valid(self, n):
        for i, row in enumerate(self.rows):
            for j, v in enumerate(row):
                if not 1 <= v <= n:
                    return False
                if j and row[j - 1] > v:
                    return False
                if i and self.rows[i - 1][j] >= v:
                    return False
        return True

    def __eq__(self, other):
        return isinstance(other, SSYT) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"SSYT({self.rows})"


def ssyt_enumerate(shape, n):
    """All semistandard tableaux of the given shape with entries in 1..n."""
    shape = tuple(p for p in shape if p > 0)
    out = []

    def rec(i, rows):
        if i == len(shape):
            out.append(SSYT(rows))
            return
        above = rows[i - 1] if i else None
        for row in combinations_with_replacement(range(1, n + 1), shape[i]):
            if above is not None and any(row[j] <= above[j] for j in range(shape[i])):
                continue
            rows.append(row)
            rec(i + 1, rows)
            rows.pop()

    rec(0, [])
    return out


class RecolorMap:
    """Weakly increasing map on labels 0..L, given by its images."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(v) for v in images)
        if not images:
            raise ValueError("empty recoloring")
        if any(v < 0 for v in images):
            raise ValueError("recoloring images must be non-negative")
        if any(images[i] > images[i + 1] for i in range(len(images) - 1)):
            raise ValueError(f"recoloring is not weakly increasing: {images}")
        self.images = images

    @classmethod
    def from_dict(cls, mapping, L):
        return cls([mapping.get(i, i) for i in range(L + 1)])

    @classmethod
    def identity(cls, L):
        return cls(range(L + 1))

    def __call__(self, label):
        if not 0 <= label < len(self.images):
            raise ValueError(f"label {label} outside the recoloring domain 0..{len(self.images) - 1}")
        return self.images[label]

    def __repr__(self):
        return f"RecolorMap({self.images})"


def recolor(phi, mu):
    return tuple(phi(v) for v in mu)


def inc(lam, phi, kappa):
    """Lexicographically smallest rho in the orbit of lam with phi(rho) = kappa."""
    lam = sort_desc(lam)
    kappa = tuple(kappa)
    if sort_desc(recolor(phi, lam)) != sort_desc(kappa):
        raise ValueError(f"no rearrangement of {lam} recolors to {kappa}")
    # fill each position with the smallest remaining preimage label
    pool = sorted(lam)
    rho = []
    for target in kappa:
        for idx, v in enumerate(pool):
            if phi(v) == target:
                rho.append(v)
                del pool[idx]
                break
        else:
            raise ValueError(f"no rearrangement of {lam} recolors to {kappa}")
    return tuple(rho)
