"""Circuit matrices of the three generating loops in several cycle bases.

Convention: a cycle with coordinate row vector ``d`` is ``d @ basis`` (basis
as a column of cycles) and a loop acts by ``d -> d @ M``. Row ``i`` of ``M``
is therefore the image of the ``i``-th basis cycle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateError
from .intersection import (DEGENERACY_TOL, basis_changes, e5_vectors, h_diagonal,
                           h_hat_matrix, h_sub_inverse, hat_transform)
from .params import HypergeometricParams, circuit_constants, conjugate_params


class LoopId(str, Enum):
    Rho1 = "Rho1"
    Rho2 = "Rho2"
    Rho3 = "Rho3"


class MatrixBasis(str, Enum):
    DeltaCycles = "DeltaCycles"
    HatCycles = "HatCycles"
    PrimeCycles = "PrimeCycles"
    LocalSeries = "LocalSeries"


class Source(str, Enum):
    ClosedForm = "ClosedForm"
    Continued = "Continued"


LOOPS = (LoopId.Rho1, LoopId.Rho2, LoopId.Rho3)


@dataclass(frozen=True)
class CircuitMatrix:
    entries: np.ndarray
    loop: LoopId
    basis: MatrixBasis
    source: Source = Source.ClosedForm

    @property
    def det(self) -> complex:
        return complex(np.linalg.det(self.entries))


def _loop(loop) -> LoopId:
    return LoopId(loop) if not isinstance(loop, LoopId) else loop


def _consts(p):
    cc = circuit_constants(p)
    return cc.alpha, cc.beta, cc.gamma1, cc.gamma2


def rho3_eigenvalue(p: HypergeometricParams) -> complex:
    """The non-trivial eigenvalue -gamma1*gamma2/(alpha*beta) of rho3."""
    al, be, g1, g2 = _consts(p)
    return -g1 * g2 / (al * be)


def theoretical_spectrum(p: HypergeometricParams, loop) -> np.ndarray:
    al, be, g1, g2 = _consts(p)
    loop = _loop(loop)
    if loop is LoopId.Rho1:
        return np.array([1, 1, 1 / g1, 1 / g1], dtype=complex)
    if loop is LoopId.Rho2:
        return np.array([1, 1, 1 / g2, 1 / g2], dtype=complex)
    return np.array([1, 1, 1, rho3_eigenvalue(p)], dtype=complex)


def m_delta(p: HypergeometricParams, loop) -> CircuitMatrix:
    """Circuit matrix on Delta_1..Delta_4; undefined at integral c1 or c2."""
    loop = _loop(loop)
    al, be, g1, g2 = _consts(p)
    for name, g in (("gamma1", g1), ("gamma2", g2)):
        if abs(g - 1) < DEGENERACY_TOL:
            raise DegenerateError(f"{name} = 1: Delta cycles are linearly dependent")
    if loop is LoopId.Rho1:
        M = np.diag([1, 1 / g1, 1, 1 / g1]).astype(complex)
    elif loop is LoopId.Rho2:
        M = np.diag([1, 1, 1 / g2, 1 / g2]).astype(complex)
    else:
        e = e5_vectors(p)
        k = (be - 1) * (al - g1 * g2) / (al * be)
        M = np.eye(4, dtype=complex) - k * np.outer(h_diagonal(p) * e.e5_dual, e.e5)
    return CircuitMatrix(M, loop, MatrixBasis.DeltaCycles)


def m_hat(p: HypergeometricParams, loop) -> CircuitMatrix:
    """Circuit matrix on the regularized basis; finite at integral c1, c2."""
    loop = _loop(loop)
    al, be, g1, g2 = _consts(p)
    ab = al * be
    M = np.eye(4, dtype=complex)
    if loop is LoopId.Rho1:
        M[1, 0] = 1
        M[1, 1] = M[3, 3] = 1 / g1
        M[3, 0] = (ab - g2) / ab
        M[3, 2] = (al - g2) * (be - g2) / (ab * g2)
    elif loop is LoopId.Rho2:
        M[2, 0] = 1
        M[2, 2] = M[3, 3] = 1 / g2
        M[3, 0] = (ab - g1) / ab
        M[3, 1] = (al - g1) * (be - g1) / (ab * g1)
    else:
        M[0, 3] = -1
        M[3, 3] = rho3_eigenvalue(p)
    return CircuitMatrix(M, loop, MatrixBasis.HatCycles)


def m_prime(p: HypergeometricParams, loop) -> CircuitMatrix:
    """Circuit matrix on the basis P' (Delta_1..Delta_4)."""
    loop = _loop(loop)
    al, be, g1, g2 = _consts(p)
    M = np.eye(4, dtype=complex)
    if loop is LoopId.Rho1:
        M[1, 0] = M[3, 2] = 1
        M[1, 1] = M[3, 3] = 1 / g1
    elif loop is LoopId.Rho2:
        M[2, 0] = M[3, 1] = 1
        M[2, 2] = M[3, 3] = 1 / g2
    else:
        t = g1 * g2 / (al * be)
        M[0] = [-t, t - 1 / g1, t - 1 / g2,
                -(al - g1 * g2) * (be - g1 * g2) / (al * be * g1 * g2)]
    return CircuitMatrix(M, loop, MatrixBasis.PrimeCycles)


def m_hat_from_operator(p: HypergeometricParams, loop) -> CircuitMatrix:
    """Matrix form of :func:`apply_operator`, assembled from H-hat and its submatrix inverses."""
    loop = _loop(loop)
    M = np.array([apply_operator(p, loop, row) for row in np.eye(4)])
    return CircuitMatrix(M, loop, MatrixBasis.HatCycles)


def apply_operator(p: HypergeometricParams, loop, coords) -> np.ndarray:
    """Image of the cycle ``coords @ hat-basis`` under a loop, via intersection pairings.

    rho1 and rho2 fix the span of two hatted cycles and scale its orthogonal
    complement; rho3 is a pseudo-reflection along Delta_5. Only the scaled
    submatrix inverses are used, so no 1 - gamma_k division occurs.
    """
    loop = _loop(loop)
    d = np.asarray(coords, dtype=complex)
    al, be, g1, g2 = _consts(p)
    Hh = h_hat_matrix(p).entries
    pairings = d @ Hh
    if loop is LoopId.Rho3:
        # Delta_5 is the fourth hatted cycle
        k = (be - 1) * (al - g1 * g2) / (al * be)
        out = d.copy()
        out[3] -= k * pairings[3]
        return out
    if loop is LoopId.Rho1:
        g, idx, inv = g1, (0, 2), h_sub_inverse(p, 13, scaled=True)
    else:
        g, idx, inv = g2, (0, 1), h_sub_inverse(p, 12, scaled=True)
    coef = pairings[list(idx)] @ inv
    out = d / g
    out[list(idx)] += coef
    return out


def conjugated_hat_from_delta(p: HypergeometricParams, loop) -> np.ndarray:
    """T M_delta T^{-1}, the hatted matrix obtained from the Delta-basis matrix."""
    T = hat_transform(p)
    return T @ m_delta(p, loop).entries @ np.linalg.inv(T)


def conjugated_prime_from_delta(p: HypergeometricParams, loop) -> np.ndarray:
    Pp = basis_changes(p).P_prime
    return Pp @ m_delta(p, loop).entries @ np.linalg.inv(Pp)


def preservation_residual(p: HypergeometricParams, loop) -> float:
    """max |M H-hat M^vee^T - H-hat| for the hatted circuit matrix."""
    Hh = h_hat_matrix(p).entries
    M = m_hat(p, loop).entries
    Mv = m_hat(conjugate_params(p), loop).entries
    return float(np.abs(M @ Hh @ Mv.T - Hh).max())


def charpoly(M) -> np.ndarray:
    """Coefficients of det(lambda I - M), highest degree first (Faddeev-LeVerrier)."""
    M = np.asarray(M, dtype=complex)
    n = M.shape[0]
    coeffs = [1.0 + 0j]
    N = np.zeros_like(M)
    eye = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        N = M @ N + coeffs[-1] * eye
        coeffs.append(-np.trace(M @ N) / k)
    return np.array(coeffs)


def poly_from_roots(roots) -> np.ndarray:
    return np.poly(np.asarray(roots, dtype=complex)).astype(complex)


def eigenvalues(M) -> np.ndarray:
    return np.linalg.eigvals(np.asarray(M, dtype=complex))


def spectrum_distance(found, expected) -> float:
    """Smallest max-distance over all pairings of two small multisets."""
    found = np.asarray(found, dtype=complex)
    expected = np.asarray(expected, dtype=complex)
    if found.shape != expected.shape:
        raise ValueError("spectra of different sizes")
    best = np.inf
    for perm in itertools.permutations(range(len(found))):
        best = min(best, float(np.abs(found[list(perm)] - expected).max()))
    return best


@dataclass(frozen=True)
class JordanReport:
    rank_minus_identity: int
    is_identity: bool
    eigenvalues: np.ndarray
    nilpotent: bool

    @property
    def non_diagonalizable(self) -> bool:
        """All eigenvalues 1, M != id, and (M - id)^2 = 0: a single 2x2 Jordan block."""
        return (not self.is_identity and self.rank_minus_identity == 1
                and self.nilpotent)


def jordan_check(M, tol: float = 1e-8) -> JordanReport:
    M = np.asarray(M, dtype=complex)
    N = M - np.eye(M.shape[0])
    scale = max(1.0, float(np.abs(M).max()))
    sv = np.linalg.svd(N, compute_uv=False)
    rank = int(np.sum(sv > tol * scale))
    return JordanReport(
        rank_minus_identity=rank,
        is_identity=bool(np.abs(N).max() <= tol * scale),
        eigenvalues=eigenvalues(M),
        nilpotent=bool(np.abs(N @ N).max() <= tol * scale ** 2),
    )
