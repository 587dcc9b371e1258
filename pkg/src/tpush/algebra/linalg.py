"""Fraction-free (Bareiss) elimination over MPoly entries."""

from .frac import Frac
from .mpoly import MPoly

__all__ = ["SingularMatrixError", "bareiss_solve", "bareiss_solve_many", "bareiss_det", "mat_vec"]


class SingularMatrixError(ArithmeticError):
    """Raised when elimination finds no nonzero pivot."""

    def __init__(self, stage, size):
        super().__init__(f"singular matrix: no nonzero pivot at stage {stage} of {size}")
        self.stage = stage


def _check_square(A):
    N = len(A)
    if N == 0:
        raise ValueError("empty matrix")
    if any(len(row) != N for row in A):
        raise ValueError("matrix must be square")
    n = A[0][0].n
    for row in A:
        for v in row:
            if not isinstance(v, MPoly):
                raise TypeError("matrix entries must be MPoly")
            if v.n != n:
                raise ValueError("ambient n mismatch in matrix")
    return N, n


def _eliminate(A, cols):
    """Forward Bareiss elimination of [A | cols]; returns (rows, sign)."""
    N, n = _check_square(A)
    R = len(cols)
    M = [list(A[i]) + [cols[r][i] for r in range(R)] for i in range(N)]
    W = N + R
    one = MPoly.one(n)
    prev = one
    sign = 1
    for k in range(N):
        best = None
        for i in range(k, N):
            v = M[i][k]
            if v and (best is None or len(v) < len(M[best][k])):
                best = i
        if best is None:
            raise SingularMatrixError(k, N)
        if best != k:
            M[k], M[best] = M[best], M[k]
            sign = -sign
        p = M[k][k]
        rowk = M[k]
        for i in range(k + 1, N):
            rowi = M[i]
            aik = rowi[k]
            for j in range(k + 1, W):
                aij = rowi[j]
                akj = rowk[j]
                if aik and akj:
                    v = p * aij - aik * akj if aij else -(aik * akj)
                elif aij:
                    v = p * aij
                else:
                    continue
                if prev is not one and v:
                    v = v.divexact(prev)
                rowi[j] = v
            rowi[k] = MPoly.zero(n)
        prev = p
    return M, sign


def bareiss_det(A):
    N, n = _check_square(A)
    try:
        M, sign = _eliminate(A, [])
    except SingularMatrixError:
        return MPoly.zero(n)
    d = M[N - 1][N - 1]
    return d if sign > 0 else -d


def bareiss_solve_many(A, rhs_list):
    """Solve A x = b for each b in rhs_list.

    Returns ``(D, nums)``: D is the final Bareiss pivot (the determinant up to
    sign) and ``nums[r][i]`` the polynomial with x_i = nums[r][i] / D.
    """
    N, n = _check_square(A)
    for b in rhs_list:
        if len(b) != N:
            raise ValueError("right-hand side has the wrong length")
    cols = [[_as_entry(v, n) for v in b] for b in rhs_list]
    M, _ = _eliminate(A, cols)
    D = M[N - 1][N - 1]
    out = []
    for r in range(len(cols)):
        c = N + r
        xs = [None] * N
        for i in range(N - 1, -1, -1):
            acc = D * M[i][c]
            for j in range(i + 1, N):
                if M[i][j] and xs[j]:
                    acc = acc - M[i][j] * xs[j]
            xs[i] = acc.divexact(M[i][i]) if i < N - 1 else M[i][c]
        out.append(xs)
    return D, out


def bareiss_solve(A, rhs):
    """Exact solution of A x = rhs as a list of Frac."""
    D, nums = bareiss_solve_many(A, [rhs])
    return [Frac(v, D) for v in nums[0]]


def mat_vec(A, v):
    """A v for a matrix of MPoly and a vector of MPoly or Frac."""
    out = []
    for row in A:
        acc = None
        for a, x in zip(row, v):
            term = x * a if isinstance(x, Frac) else a * x
            acc = term if acc is None else acc + term
        out.append(acc)
    return out


def _as_entry(v, n):
    if isinstance(v, MPoly):
        return v
    return MPoly.const(n, v)
