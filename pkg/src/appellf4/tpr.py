"""Twisted period relations: quadratic identities between F4 at (a,b,c) and dual parameters."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ParameterError, PoleError
from .intersection import c_matrix, h_diagonal
from .params import HypergeometricParams, shifted_params
from .series import Point2, _pt, f4, r_poly
from .solutions import cycle_constants, dual_cycle_constants, f_dual_vector, f_vector

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class TPRReport:
    identity_id: Union[int, str]
    lhs: complex
    rhs: complex
    residual: float
    params: HypergeometricParams
    point: Point2
    terms: int = 4

    def passed(self, tol: float) -> bool:
        return bool(self.residual <= tol)


def _residual(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / (1 + abs(rhs))


def _F(stol: float, x: Point2):
    def F(a, b, c1, c2):
        try:
            return f4(HypergeometricParams(a, b, c1, c2), x, stol).value
        except ParameterError as exc:
            raise PoleError(str(exc)) from exc
    return F


def tpr_identity(p: HypergeometricParams, x, k: int, tol: float = DEFAULT_TOL) -> TPRReport:
    """Evaluate identity ``k`` (1, 2 or 3): four products of F4 pairs against a rational rhs."""
    x = _pt(x)
    F = _F(tol / 100, x)
    a, b, c1, c2 = p.as_tuple()
    s = shifted_params(p)
    a1, a2, a12, b1, b2, b12 = s.a1, s.a2, s.a12, s.b1, s.b2, s.b12
    if k == 1:
        lhs = ((1 - a) / (1 - a12) * F(a, b, c1, c2) * F(2 - a, -b, 2 - c1, 2 - c2)
               - b * (1 - a1) / (b1 * (1 - a12)) * F(a1, b1, 2 - c1, c2) * F(2 - a1, -b1, c1, 2 - c2)
               - b * (1 - a2) / (b2 * (1 - a12)) * F(a2, b2, c1, 2 - c2) * F(2 - a2, -b2, 2 - c1, c2)
               + b / b12 * F(a12, b12, 2 - c1, 2 - c2) * F(2 - a12, -b12, c1, c2))
        rhs = (1 - a + b) * (b1 + b2) * (1 - c1) * (1 - c2) / ((1 - a12) * b1 * b2 * b12)
    elif k == 2:
        lhs = ((1 - a) / (1 - a12) * F(a, b + 1, c1, c2) * F(2 - a, 1 - b, 2 - c1, 2 - c2)
               - b1 * (1 - a1) / (b * (1 - a12)) * F(a1, b1 + 1, 2 - c1, c2) * F(2 - a1, 1 - b1, c1, 2 - c2)
               - b2 * (1 - a2) / (b * (1 - a12)) * F(a2, b2 + 1, c1, 2 - c2) * F(2 - a2, 1 - b2, 2 - c1, c2)
               + b12 / b * F(a12, b12 + 1, 2 - c1, 2 - c2) * F(2 - a12, 1 - b12, c1, c2))
        rhs = 2 * (1 - c1) * (1 - c2) / ((1 - a12) * (-b) * r_poly(x))
    elif k == 3:
        lhs = ((1 - a) / (1 - a12) * F(a, b, c1, c2) * F(2 - a, 1 - b, 2 - c1, 2 - c2)
               - (1 - a1) / (1 - a12) * F(a1, b1, 2 - c1, c2) * F(2 - a1, 1 - b1, c1, 2 - c2)
               - (1 - a2) / (1 - a12) * F(a2, b2, c1, 2 - c2) * F(2 - a2, 1 - b2, 2 - c1, c2)
               + F(a12, b12, 2 - c1, 2 - c2) * F(2 - a12, 1 - b12, c1, c2))
        rhs = 0j
    else:
        raise ValueError("k must be 1, 2 or 3")
    return TPRReport(k, complex(lhs), complex(rhs), _residual(lhs, rhs), p, x)


def tpr_entry11(p: HypergeometricParams, x, tol: float = DEFAULT_TOL,
                phases: bool = True) -> TPRReport:
    """(f_1..f_4) H^{-T} (f^vee_1..f^vee_4)^T against (2 pi i)^2 C_11.

    ``phases=False`` strips the exponential phase factors from entries 2 and 3
    of both vectors; they cancel pairwise, so the result must not change.
    """
    x = _pt(x)
    stol = tol / 100
    try:
        f = f_vector(p, x, stol).entries
        fv = f_dual_vector(p, x, stol).entries
    except ParameterError as exc:
        raise PoleError(str(exc)) from exc
    if not phases:
        f = f * np.array(cycle_constants(p, phases=False)) / np.array(cycle_constants(p))
        fv = fv * np.array(dual_cycle_constants(p, phases=False)) / np.array(dual_cycle_constants(p))
    terms = f * fv / h_diagonal(p)
    lhs = complex(terms.sum())
    rhs = complex((2j * math.pi) ** 2 * c_matrix(p, x).entries[0, 0])
    return TPRReport("entry11", lhs, rhs, _residual(lhs, rhs), p, x, terms=len(terms))
