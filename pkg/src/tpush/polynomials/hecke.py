"""Hecke operators, shape-permuting operators and the Knop-Sahi raising operator."""

from ..algebra import Frac, MPoly

__all__ = ["hecke_apply", "reduced_word", "r_j", "shape_scalar", "shape_permute", "ks_raise"]


def _hecke_poly(i, f):
    n = f.n
    if not 1 <= i <= n - 1:
        raise ValueError(f"Hecke index {i} outside 1..{n - 1}")
    t = MPoly.t(n)
    xi = MPoly.x(n, i)
    xj = MPoly.x(n, i + 1)
    diff = f - f.swap_x(i, i + 1)
    if not diff:
        return f * t
    quo = diff.try_divexact(xi - xj)
    if quo is None:
        raise ArithmeticError("Hecke divided difference is not exact")
    return f * t - (t * xi - xj) * quo


def reduced_word(perm):
    """A reduced word (1-based simple transpositions) for a permutation in one-line notation.

    perm = s_{i_1} ... s_{i_l} as a product of maps.
    """
    w = [p - 1 for p in perm] if min(perm) == 1 else list(perm)
    if sorted(w) != list(range(len(w))):
        raise ValueError(f"not a permutation: {perm}")
    word = []
    w = list(w)
    # right-multiply by descents until the identity is reached
    while True:
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                word.append(i + 1)
                break
        else:
            break
    return word[::-1]


def hecke_apply(i, f):
    """T_i f for an int i, or T_sigma f for a permutation sigma (tuple, one-line notation).

    MPoly input gives MPoly output; Frac input with an x-free denominator acts
    on the numerator.
    """
    if isinstance(f, Frac):
        return Frac(hecke_apply(i, f.num), f.den)
    if isinstance(i, int):
        return _hecke_poly(i, f)
    for k in reversed(reduced_word(i)):
        f = _hecke_poly(k, f)
    return f


def r_j(nu, j):
    """#{k<j : nu_{j+1} < nu_k <= nu_j} + #{k>j : nu_{j+1} <= nu_k < nu_j} (1-based j)."""
    a, b = nu[j - 1], nu[j]
    left = sum(1 for k in range(j - 1) if b < nu[k] <= a)
    right = sum(1 for k in range(j, len(nu)) if b <= nu[k] < a)
    return left + right


def shape_scalar(nu, j, n):
    """(1 - t) / (1 - q^(nu_j - nu_{j+1}) t^(r_j)) as a Frac in ambient n."""
    one = MPoly.one(n)
    return Frac(one - MPoly.t(n), one - MPoly.monomial(n, q=nu[j - 1] - nu[j], t=r_j(nu, j)))


def shape_permute(j, nu, E_nu):
    """E*_{s_j nu} = (T_j + (1-t)/(1 - q^(nu_j - nu_{j+1}) t^r_j(nu))) E*_nu, for nu_j > nu_{j+1}."""
    if not nu[j - 1] > nu[j]:
        raise ValueError(f"shape permuting needs nu_j > nu_(j+1); got {nu} at j={j}")
    if isinstance(E_nu, MPoly):
        E_nu = Frac(E_nu, MPoly.one(E_nu.n))
    n = E_nu.n
    return hecke_apply(j, E_nu) + shape_scalar(nu, j, n) * E_nu


def ks_raise(mu, E_mu):
    """E*_{(mu_n + 1, mu_1, ..., mu_{n-1})} from E*_mu by the Knop-Sahi recurrence."""
    if isinstance(E_mu, Frac):
        return Frac(ks_raise(mu, E_mu.num), E_mu.den)
    n = E_mu.n
    assign = {i: MPoly.x(n, i + 1) for i in range(1, n)}
    assign[n] = MPoly.monomial(n, q=-1, x=(1,) + (0,) * (n - 1))
    g = E_mu.subs(assign).mul_monomial(mu[-1], 0)
    g = (MPoly.x(n, 1) - MPoly.monomial(n, t=1 - n)) * g
    return g
