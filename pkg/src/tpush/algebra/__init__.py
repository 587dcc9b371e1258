"""Exact scalar, polynomial and fraction arithmetic plus fraction-free solving."""

from fractions import Fraction as Rational

from .frac import Frac
from .linalg import SingularMatrixError, bareiss_det, bareiss_solve, bareiss_solve_many, mat_vec
from .mpoly import MPoly, QT_LIMIT, X_LIMIT

__all__ = [
    "Rational",
    "MPoly",
    "Frac",
    "SingularMatrixError",
    "bareiss_det",
    "bareiss_solve",
    "bareiss_solve_many",
    "mat_vec",
    "poly_arith",
    "poly_eval",
    "specialize_q1",
    "frac_ops",
    "top_homogeneous",
    "t_integer",
    "QT_LIMIT",
    "X_LIMIT",
]


def poly_arith(a, b, op):
    if a.n != b.n:
        raise ValueError("ambient n mismatch")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def poly_eval(p, assignment):
    return p.subs(assignment)


def specialize_q1(p):
    return p.specialize_q1()


def frac_ops(a, b, op):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if (b.is_zero() if isinstance(b, (Frac, MPoly)) else b == 0):
            raise ZeroDivisionError("division by the zero fraction")
        return a / b
    if op == "eq":
        return a == b
    raise ValueError(f"unknown op {op!r}")


def top_homogeneous(p):
    if p.is_zero():
        raise ValueError("top homogeneous component of the zero polynomial")
    return p.top_homogeneous()


def t_integer(m, n=1):
    """[m]_t = 1 + t + ... + t^(m-1) in ambient n; [0]_t = 0."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return MPoly.from_terms(n, (((0, i, (0,) * n), 1) for i in range(m)))
