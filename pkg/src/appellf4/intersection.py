"""Closed-form intersection matrices of twisted cycles and cocycles.

Homology-side matrices are rational in the unit-circle constants
(alpha, beta, gamma1, gamma2); the cohomology matrix C is rational in the
exponents and in x. The dual (1/u) side of a pairing is always obtained by
evaluating the same closed form at :func:`params.conjugate_params`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .errors import DegenerateError, SingularLocusError
from .params import (HypergeometricParams, circuit_constants,
                     conjugate_params, derive_exponents)
from .series import _pt, r_poly

DEGENERACY_TOL = 1e-9


class CycleBasis(str, Enum):
    DeltaCycles = "DeltaCycles"
    HatCycles = "HatCycles"
    PrimeCycles = "PrimeCycles"
    Cycles678 = "Cycles678"
    CohomologyForms = "CohomologyForms"


@dataclass(frozen=True)
class IntersectionMatrix:
    entries: np.ndarray
    row_basis: CycleBasis
    col_basis: CycleBasis
    det_closed_form: Optional[complex] = None

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class CycleVectorPair:
    e5: np.ndarray
    e5_dual: np.ndarray


@dataclass(frozen=True)
class BasisChange:
    P: np.ndarray
    P_prime: np.ndarray


def _nz(*vals, what="denominator"):
    for v in vals:
        if abs(v) < DEGENERACY_TOL:
            raise DegenerateError(f"{what} {v:.3g} vanishes (non-generic parameters)")


def _consts(p: HypergeometricParams):
    cc = circuit_constants(p)
    return cc.alpha, cc.beta, cc.gamma1, cc.gamma2


def h_diagonal(p: HypergeometricParams) -> np.ndarray:
    al, be, g1, g2 = _consts(p)
    g12 = g1 * g2
    _nz(al - g12, 1 - g1, 1 - g2, al - g1, be - g1, 1 - be, al - g2, be - g2)
    return np.array([
        -(1 - al) * g12 / ((al - g12) * (1 - g1) * (1 - g2)),
        al * be * g1 * (1 - g1) * (1 - g2) / ((al - g1) * (al - g12) * (be - g1) * (1 - be)),
        al * be * g2 * (1 - g1) * (1 - g2) / ((al - g2) * (al - g12) * (1 - be) * (be - g2)),
        -(be - g12) / ((1 - be) * (1 - g1) * (1 - g2)),
    ])


def h_matrix(p: HypergeometricParams) -> IntersectionMatrix:
    """Diagonal intersection matrix of Delta_1..Delta_4 against their duals."""
    return IntersectionMatrix(np.diag(h_diagonal(p)), CycleBasis.DeltaCycles,
                              CycleBasis.DeltaCycles)


def delta5_pairings(p: HypergeometricParams) -> np.ndarray:
    """I_h(Delta_5, Delta_j^dual) for j = 1..4."""
    al, be, g1, g2 = _consts(p)
    g12 = g1 * g2
    h = h_diagonal(p)
    mid = -g12 / ((al - g12) * (1 - be))
    return np.array([h[0], mid, mid, h[3]])


def delta5_self_pairing(p: HypergeometricParams) -> complex:
    al, be, g1, g2 = _consts(p)
    g12 = g1 * g2
    _nz(al - g12, 1 - be)
    return -(al * be + g12) / ((al - g12) * (1 - be))


def e5_vectors(p: HypergeometricParams) -> CycleVectorPair:
    """Coordinates of Delta_5 (and its dual) in the Delta_1..Delta_4 basis."""
    al, be, g1, g2 = _consts(p)
    _nz(g1 - 1, g2 - 1, al, be, g1, g2)
    den = (g2 - 1) * (g1 - 1)
    e5 = np.array([
        1.0,
        -g2 * (al - g1) * (be - g1) / (al * be * den),
        -g1 * (al - g2) * (be - g2) / (al * be * den),
        1.0,
    ], dtype=complex)
    e5v = np.array([
        1.0,
        -(al - g1) * (be - g1) / (g1 * den),
        -(al - g2) * (be - g2) / (g2 * den),
        1.0,
    ], dtype=complex)
    return CycleVectorPair(e5, e5v)


def _h678_upper(p: HypergeometricParams):
    cc = circuit_constants(p)
    m0 = cc.alpha
    m1, m2, m4 = cc.mu1, cc.mu2, cc.mu4
    m12, m14, m24 = m1 * m2, m1 * m4, m2 * m4
    m01, m02 = m0 * m1, m0 * m2
    m124, m014, m024 = m1 * m2 * m4, m0 * m1 * m4, m0 * m2 * m4
    _nz(m0 - 1, m1 - 1, m2 - 1, m4 - 1, m124 - 1, m014 - 1, m024 - 1)
    h66 = (1 + 1 / (m0 - 1) + 1 / (m1 - 1) + 1 / (m2 - 1)
           + (m12 - 1) / ((m124 - 1) * (m1 - 1) * (m2 - 1))
           + (m01 - 1) / ((m014 - 1) * (m0 - 1) * (m1 - 1))
           + (m02 - 1) / ((m024 - 1) * (m0 - 1) * (m2 - 1)))
    h67 = -1 / (m1 - 1) * (1 + 1 / (m124 - 1) + 1 / (m014 - 1))
    h68 = -1 / (m2 - 1) * (1 + 1 / (m124 - 1) + 1 / (m024 - 1))
    h77 = (1 + 1 / (m1 - 1) + 1 / (m4 - 1)
           + (m14 - 1) / ((m124 - 1) * (m1 - 1) * (m4 - 1))
           + (m14 - 1) / ((m014 - 1) * (m1 - 1) * (m4 - 1)))
    h78 = -m1 * m4 / ((m4 - 1) * (m124 - 1))
    h88 = (1 + 1 / (m2 - 1) + 1 / (m4 - 1)
           + (m24 - 1) / ((m124 - 1) * (m2 - 1) * (m4 - 1))
           + (m24 - 1) / ((m024 - 1) * (m2 - 1) * (m4 - 1)))
    return h66, h67, h68, h77, h78, h88


def h678_det_closed_form(p: HypergeometricParams) -> complex:
    al, be, g1, g2 = _consts(p)
    g12 = g1 * g2
    den = ((al - 1) * (al - g1) * (al - g2) * (be - 1) ** 2
           * (be - g1) * (be - g2) * (be - g12))
    _nz(den)
    return be ** 2 * (al - g12) ** 2 * (al * be + g12) / den


def h678_matrix(p: HypergeometricParams) -> IntersectionMatrix:
    """3x3 intersection matrix of the rho3-invariant chambers Delta_6..Delta_8."""
    h66, h67, h68, h77, h78, h88 = _h678_upper(p)
    _, v67, v68, _, v78, _ = _h678_upper(conjugate_params(p))
    m = np.array([[h66, h67, h68],
                  [v67, h77, h78],
                  [v68, v78, h88]])
    return IntersectionMatrix(m, CycleBasis.Cycles678, CycleBasis.Cycles678,
                              h678_det_closed_form(p))


def h_hat_det_closed_form(p: HypergeometricParams) -> complex:
    al, be, g1, g2 = _consts(p)
    g12 = g1 * g2
    den = ((1 - al) * (al - g1) * (al - g2) * (al - g12) ** 3
           * (1 - be) ** 5 * (be - g1) * (be - g2))
    _nz(den)
    return al ** 3 * be ** 3 * (be - g12) * g1 ** 2 * g2 ** 2 / den


def h_hat_matrix(p: HypergeometricParams) -> IntersectionMatrix:
    """Intersection matrix of the regularized basis; finite at integral c1, c2."""
    al, be, g1, g2 = _consts(p)
    g12 = g1 * g2
    ab = al * be
    _nz(1 - al, al - g12, 1 - be, al - g1, be - g1, al - g2, be - g2)
    k = (1 - al) * (al - g12) * (1 - be) ** 2
    m = np.array([
        [-ab * (1 - g1) * (1 - g2) / k,
         -ab * (1 - g2) / k,
         -ab * (1 - g1) / k,
         -ab / ((al - g12) * (1 - be))],
        [ab * g1 * (1 - g2) / k,
         ab * (ab - g1) * g1 * (1 - g2) / (k * (al - g1) * (be - g1)),
         ab * g1 / k,
         0],
        [ab * (1 - g1) * g2 / k,
         ab * g2 / ((1 - al) * (al - g12) * (be - 1) ** 2),
         ab * (ab - g2) * (1 - g1) * g2 / ((1 - al) * (al - g2) * (al - g12)
                                           * (be - 1) ** 2 * (be - g2)),
         0],
        [-g12 / ((al - g12) * (1 - be)),
         0,
         0,
         -(ab + g12) / ((al - g12) * (1 - be))],
    ], dtype=complex)
    return IntersectionMatrix(m, CycleBasis.HatCycles, CycleBasis.HatCycles,
                              h_hat_det_closed_form(p))


def h_sub_inverse(p: HypergeometricParams, which: int, scaled: bool = False) -> np.ndarray:
    """Closed-form inverse of the 2x2 submatrix of H-hat on indices (1,2) or (1,3).

    With ``scaled=True`` returns ``(1 - 1/gamma_k) * inverse`` (k = 2 for 12,
    k = 1 for 13) with the factor ``1 - gamma_k`` cancelled, which stays finite
    at gamma_k = 1.
    """
    al, be, g1, g2 = _consts(p)
    g12 = g1 * g2
    ab = al * be
    if which == 12:
        gk, gother = g2, g1
    elif which == 13:
        gk, gother = g1, g2
    else:
        raise ValueError("which must be 12 or 13")
    # (H_sub)^{-1} = lead / (1 - g_k) * core, with g_other carrying the matrix
    lead = (al - g12) * (1 - be) / (ab * gother ** 2)
    t = (al - gother) * (be - gother)
    core = np.array([[(ab - gother) * gother, t],
                     [-t * gother, -t * (1 - gother)]], dtype=complex)
    if scaled:
        _nz(gk, what="gamma")
        return -lead / gk * core
    _nz(1 - gk, what="1 - gamma")
    return lead / (1 - gk) * core


def basis_changes(p: HypergeometricParams) -> BasisChange:
    al, be, g1, g2 = _consts(p)
    g12 = g1 * g2
    ab = al * be
    _nz(1 - al, 1 - be, 1 - g1, 1 - g2, g1, g2)
    k = (1 - al) * (1 - be)
    rows3 = [
        [ab * (1 - g1) * (1 - g2) / (k * g12), 0, 0, 0],
        [-ab * (1 - g2) / (k * g2), g1 / (1 - g1), 0, 0],
        [-ab * (1 - g1) / (k * g1), 0, g2 / (1 - g2), 0],
    ]
    P = np.array(rows3 + [[0, 0, 0, 1]], dtype=complex)
    _nz(al - g12, be - g12)
    q = (1 - g1) * (1 - g2)
    Pp = np.array(rows3 + [[ab / k, -g12 / q, -g12 / q,
                            ab * g12 / ((al - g12) * (be - g12))]], dtype=complex)
    return BasisChange(P, Pp)


def hat_transform(p: HypergeometricParams) -> np.ndarray:
    """T with (hatted cycles) = T (Delta_1..Delta_4): P applied to rows e1, e2, e3, e5."""
    E = np.eye(4, dtype=complex)
    E[3] = e5_vectors(p).e5
    return basis_changes(p).P @ E


def hat_transform_dual(p: HypergeometricParams) -> np.ndarray:
    E = np.eye(4, dtype=complex)
    E[3] = e5_vectors(p).e5_dual
    return basis_changes(conjugate_params(p)).P @ E


def c_det_closed_form(p: HypergeometricParams, x) -> complex:
    a, b, c1, c2 = p.as_tuple()
    den = ((a - 1) * (a - c1) * (a - c2) * (-a + c1 + c2 - 1) ** 3 * (b - c1 + 1)
           * (b - c2 + 1) * (b - c1 - c2 + 2) * r_poly(x))
    return -4 * b / den


def c_matrix(p: HypergeometricParams, x) -> IntersectionMatrix:
    """Cohomology intersection matrix C(x); the full pairing is (2 pi i)^2 C."""
    x = _pt(x)
    a, b, c1, c2 = p.as_tuple()
    ex = derive_exponents(p)
    _nz(ex.l1, ex.l2, ex.l3, ex.l4, ex.l0, ex.l124, ex.l134m, ex.l234m, what="exponent")
    R = r_poly(x)
    if abs(R) < DEGENERACY_TOL:
        raise SingularLocusError(f"R(x) = {R:.3g} at {x}")
    C = np.zeros((4, 4), dtype=complex)
    C[0, 0] = ((-a + 1 + b) * (2 * b - c1 - c2 + 2)
               / ((-a + c1 + c2 - 1) * (b - c1 + 1) * (b - c2 + 1) * (b - c1 - c2 + 2)))
    C[0, 1] = C[1, 0] = 1 / ((b - c2 + 1) * (-a + c1 + c2 - 1))
    C[0, 2] = C[2, 0] = 1 / ((b - c1 + 1) * (-a + c1 + c2 - 1))
    C[1, 1] = (c1 - 1) * (a + b - c2) / ((a - 1) * (a - c2) * (b - c2 + 1) * (-a + c1 + c2 - 1))
    C[1, 2] = C[2, 1] = -1 / ((a - 1) * (-a + c1 + c2 - 1))
    C[2, 2] = (c2 - 1) * (a + b - c1) / ((a - 1) * (a - c1) * (b - c1 + 1) * (-a + c1 + c2 - 1))
    C[3, 3] = 2 / ((-a + c1 + c2 - 1) * (-b) * R)
    return IntersectionMatrix(C, CycleBasis.CohomologyForms, CycleBasis.CohomologyForms,
                              c_det_closed_form(p, x))
