"""Interpolation polynomial families: e*, F*, E*, P*, G*, s*, Hecke and Knop-Sahi operators."""

from .elementary import e_star, embed, x_vars
from .families import (
    CACHE,
    PolyFamilyCache,
    dehomogenize,
    e_star_nonsym,
    f_star_at,
    f_star_vanishing,
    g_star,
    p_star,
    s_star,
)
from .hecke import hecke_apply, ks_raise, r_j, reduced_word, shape_permute, shape_scalar
from .vanishing import least_space, solve_generic, solve_q1, solve_q1_at, vanishing_system

__all__ = [
    "CACHE",
    "PolyFamilyCache",
    "dehomogenize",
    "e_star",
    "e_star_nonsym",
    "embed",
    "f_star_at",
    "f_star_vanishing",
    "g_star",
    "hecke_apply",
    "ks_raise",
    "least_space",
    "p_star",
    "r_j",
    "reduced_word",
    "s_star",
    "shape_permute",
    "shape_scalar",
    "solve_generic",
    "solve_q1",
    "solve_q1_at",
    "vanishing_system",
    "x_vars",
]
