"""Interpolation elementary symmetric polynomials e*_{k,l}."""

from ..algebra import MPoly

__all__ = ["e_star", "x_vars", "embed"]


def x_vars(n, scale=None, start=1):
    """[x_start, ..., x_n] in ambient n, each optionally multiplied by ``scale``."""
    xs = [MPoly.x(n, i) for i in range(start, n + 1)]
    if scale is not None:
        xs = [scale * v for v in xs]
    return xs


def embed(p, values, n):
    """Substitute x_i -> values[i-1] in p (ambient len(values)) and land in ambient n."""
    if len(values) != p.n:
        raise ValueError("one value per variable is required")
    if p.n > n:
        raise ValueError("target ambient is too small")
    lifted = p.extend(n)
    return lifted.subs({i + 1: v for i, v in enumerate(values)})


def e_star(k, n=None, ell=None, xs=None):
    """e*_{k,ell}(xs; t) = sum over k-subsets S of prod_{i in S} (xs_i - t^(#S^c cap [i-1] - ell)).

    ``xs`` defaults to x_1..x_n; ell defaults to len(xs) - 1.  Out-of-range k
    gives 0 and e*_0 = 1.
    """
    if xs is None:
        if n is None:
            raise ValueError("either n or xs is required")
        xs = x_vars(n)
    m = len(xs)
    amb = xs[0].n if xs else n
    if ell is None:
        ell = m - 1
    if k < 0 or k > m:
        return MPoly.zero(amb)
    if k == 0:
        return MPoly.one(amb)
    # dp[c] sums over subsets of the first i variables with c chosen
    dp = [MPoly.one(amb)] + [MPoly.zero(amb)] * k
    for i, x in enumerate(xs):
        new = list(dp)
        for c in range(min(i, k - 1), -1, -1):
            if dp[c]:
                factor = x - MPoly.monomial(amb, t=(i - c) - ell)
                new[c + 1] = new[c + 1] + dp[c] * factor
        dp = new
    return dp[k]
