"""Numerical monodromy: transport solution jets around the generating loops.

The two F4 equations are closed into a rank-4 first-order system for
``F = (f, d1 f, d2 f, d1 d2 f)``::

    dF = (A1 dx1 + A2 dx2) F

and a fundamental matrix whose columns are the jets of a solution basis is
integrated around each loop. Loops start and end at (1/8, 1/8).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from .errors import (DegenerateError, IntegrationError, SingularApproachError)
from .intersection import DEGENERACY_TOL
from .monodromy import (CircuitMatrix, LoopId, MatrixBasis, Source, charpoly,
                        eigenvalues, m_delta, m_hat, poly_from_roots,
                        spectrum_distance, theoretical_spectrum)
from .params import HypergeometricParams
from .series import Point2, _pt, f4_jet, r_poly
from .solutions import cycle_constants, f_hat_vector, f_vector, local_basis

BASE_POINT = Point2(0.125, 0.125)
PATH_MARGIN = 1e-3
PATH_SAMPLES = 2000
COND_LIMIT = 1e10
RESEED_T = 0.1
VALIDATION_POINTS = 5
VALIDATION_TOL = 1e-5
FD_STEP = 1e-5


def _coupling(x1, x2):
    return np.array([[x1 * (1 - x1), -x2 * x2], [-x1 * x1, x2 * (1 - x2)]])


class ConnectionEvaluator:
    """Connection matrices (A1, A2) of the F4 system at a point."""

    def __init__(self, p: HypergeometricParams):
        self.parameters = p
        a, b, c1, c2 = p.as_tuple()
        self._ab = a * b
        self._s = a + b + 1
        self._c1 = c1
        self._c2 = c2

    def _rhs(self, x1, x2):
        ab, s, c1, c2 = self._ab, self._s, self._c1, self._c2
        r = np.array([[ab, -(c1 - s * x1), s * x2, 2 * x1 * x2],
                      [ab, s * x1, -(c2 - s * x2), 2 * x1 * x2]])
        d1r = np.array([[0, s, 0, 2 * x2], [0, s, 0, 2 * x2]], dtype=complex)
        d2r = np.array([[0, 0, s, 2 * x1], [0, 0, s, 2 * x1]], dtype=complex)
        return r, d1r, d2r

    def second_order(self, x) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """S (with (f11, f22) = S F) and its partial derivatives."""
        x1, x2 = _pt(x).as_tuple()
        K = _coupling(x1, x2)
        if abs(np.linalg.det(K)) < DEGENERACY_TOL:
            raise DegenerateError(f"second-order solve is singular at {(x1, x2)}")
        r, d1r, d2r = self._rhs(x1, x2)
        S = np.linalg.solve(K, r)
        d1K = np.array([[1 - 2 * x1, 0], [-2 * x1, 0]])
        d2K = np.array([[0, -2 * x2], [0, 1 - 2 * x2]])
        d1S = np.linalg.solve(K, d1r - d1K @ S)
        d2S = np.linalg.solve(K, d2r - d2K @ S)
        return S, d1S, d2S

    def evaluate(self, x) -> Tuple[np.ndarray, np.ndarray]:
        S, d1S, d2S = self.second_order(x)
        S1, S2 = S
        # f112 = u, f122 = v; each is linear in F plus a multiple of the other
        au = d2S[0] + S1[0] * np.array([0, 0, 1, 0]) + S1[1] * np.array([0, 0, 0, 1]) + S1[2] * S2
        av = d1S[1] + S2[0] * np.array([0, 1, 0, 0]) + S2[1] * S1 + S2[2] * np.array([0, 0, 0, 1])
        det = 1 - S1[3] * S2[3]
        if abs(det) < DEGENERACY_TOL:
            raise DegenerateError(f"third-order solve is singular at {x} (apparent singularity)")
        u = (au + S1[3] * av) / det
        v = (av + S2[3] * au) / det
        A1 = np.array([[0, 1, 0, 0], S1, [0, 0, 0, 1], u], dtype=complex)
        A2 = np.array([[0, 0, 1, 0], [0, 0, 0, 1], S2, v], dtype=complex)
        return A1, A2

    def flatness_residual(self, x, h: float = 1e-5) -> float:
        """max |d2 A1 - d1 A2 + A1 A2 - A2 A1| with central differences."""
        x1, x2 = _pt(x).as_tuple()
        A1, A2 = self.evaluate((x1, x2))
        d2A1 = (self.evaluate((x1, x2 + h))[0] - self.evaluate((x1, x2 - h))[0]) / (2 * h)
        d1A2 = (self.evaluate((x1 + h, x2))[1] - self.evaluate((x1 - h, x2))[1]) / (2 * h)
        return float(np.abs(d2A1 - d1A2 + A1 @ A2 - A2 @ A1).max())


def build_connection(p: HypergeometricParams) -> ConnectionEvaluator:
    return ConnectionEvaluator(p)


def jet_derivative_oracle(p: HypergeometricParams, x, h: float = FD_STEP):
    """(d1 F, d2 F) of the series jet by central differences."""
    x1, x2 = _pt(x).as_tuple()

    def F(y1, y2):
        return f4_jet(p, (y1, y2)).as_array()

    return ((F(x1 + h, x2) - F(x1 - h, x2)) / (2 * h),
            (F(x1, x2 + h) - F(x1, x2 - h)) / (2 * h))


def validate_connection(conn: ConnectionEvaluator, seed: int = 0,
                        npoints: int = VALIDATION_POINTS) -> float:
    """Largest relative mismatch of A_k F against the finite-difference oracle."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(npoints):
        x = (complex(rng.uniform(0.02, 0.15), rng.uniform(-0.03, 0.03)),
             complex(rng.uniform(0.02, 0.15), rng.uniform(-0.03, 0.03)))
        F = f4_jet(conn.parameters, x).as_array()
        A1, A2 = conn.evaluate(x)
        d1, d2 = jet_derivative_oracle(conn.parameters, x)
        for A, d in ((A1, d1), (A2, d2)):
            worst = max(worst, float(np.abs(A @ F - d).max() / max(1.0, np.abs(d).max())))
    return worst


# --------------------------------------------------------------------------
# loops
# --------------------------------------------------------------------------

def loop_path(loop, theta: float) -> Point2:
    loop = LoopId(loop)
    e = cmath.exp(2j * math.pi * theta)
    if loop is LoopId.Rho1:
        return Point2(e / 8, 0.125)
    if loop is LoopId.Rho2:
        return Point2(0.125, e / 8)
    z = (2 - e) / 8
    return Point2(z, z)


def loop_velocity(loop, theta: float) -> Tuple[complex, complex]:
    loop = LoopId(loop)
    de = 2j * math.pi * cmath.exp(2j * math.pi * theta)
    if loop is LoopId.Rho1:
        return de / 8, 0j
    if loop is LoopId.Rho2:
        return 0j, de / 8
    return -de / 8, -de / 8


def locus_margin(x) -> float:
    """min(|x1|, |x2|, |1 - x1 - x2|, |R(x)|): distance-like margin to the poles of A1, A2."""
    x1, x2 = _pt(x).as_tuple()
    return min(abs(x1), abs(x2), abs(1 - x1 - x2), abs(r_poly((x1, x2))))


def path_margin(loop, samples: int = PATH_SAMPLES) -> float:
    return min(locus_margin(loop_path(loop, t)) for t in np.linspace(0, 1, samples + 1))


@dataclass(frozen=True)
class PathSpec:
    loop: LoopId
    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    max_steps: int = 200000

    def point(self, theta: float) -> Point2:
        return loop_path(self.loop, theta)


# --------------------------------------------------------------------------
# integration
# --------------------------------------------------------------------------

@dataclass
class TransportStats:
    nfev: int = 0
    steps: int = 0
    reseeded: bool = False
    condition: float = 0.0


def _transport(conn: ConnectionEvaluator, Phi0: np.ndarray, point: Callable,
               velocity: Callable, rel_tol: float, abs_tol: float,
               stats: TransportStats, max_steps: int = 200000) -> np.ndarray:
    n = Phi0.shape[1]

    def rhs(theta, y):
        A1, A2 = conn.evaluate(point(theta))
        v1, v2 = velocity(theta)
        return ((A1 * v1 + A2 * v2) @ y.reshape(4, n)).ravel()

    scale = max(1.0, float(np.abs(Phi0).max()))
    sol = solve_ivp(rhs, (0.0, 1.0), Phi0.astype(complex).ravel(), method="RK45",
                    rtol=rel_tol, atol=abs_tol * scale, max_step=0.05)
    if not sol.success:
        raise IntegrationError(sol.message)
    stats.nfev += sol.nfev
    stats.steps += len(sol.t) - 1
    if stats.steps > max_steps:
        raise IntegrationError(f"step budget {max_steps} exceeded")
    return sol.y[:, -1].reshape(4, n)


def seed_jets(p: HypergeometricParams, x, basis: str) -> np.ndarray:
    """Fundamental matrix at x: column j is the jet of the j-th basis solution."""
    if basis == "local":
        rows = local_basis(p, x, jet=True)
    elif basis == "f":
        rows = f_vector(p, x, jet=True)
    elif basis == "hat":
        rows = f_hat_vector(p, x, jet=True)
    else:
        raise ValueError(f"unknown basis {basis!r}")
    return np.asarray(rows).T


def initial_fundamental(conn: ConnectionEvaluator, basis: str, rel_tol: float,
                        abs_tol: float, stats: TransportStats) -> np.ndarray:
    p = conn.parameters
    Phi0 = seed_jets(p, BASE_POINT, basis)
    stats.condition = float(np.linalg.cond(Phi0))
    if stats.condition <= COND_LIMIT:
        return Phi0
    # re-seed on the diagonal and carry the jets to the base point along a segment
    start = Point2(RESEED_T, RESEED_T)
    alt = seed_jets(p, start, basis)
    step = BASE_POINT.x1 - RESEED_T
    stats.reseeded = True
    stats.condition = float(np.linalg.cond(alt))
    return _transport(conn, alt,
                      lambda t: Point2(RESEED_T + t * step, RESEED_T + t * step),
                      lambda t: (step, step), rel_tol, abs_tol, stats)


def expected_matrix(p: HypergeometricParams, loop, basis: str) -> np.ndarray:
    """Closed-form circuit matrix in the basis of the seeded solutions."""
    if basis == "hat":
        return m_hat(p, loop).entries
    M = m_delta(p, loop).entries
    if basis == "f":
        return M
    D = np.diag(cycle_constants(p))
    return np.linalg.inv(D) @ M @ D


def continue_fundamental(p: HypergeometricParams, loop, rel_tol: float = 1e-10,
                         basis: str = "local", conn: Optional[ConnectionEvaluator] = None,
                         stats: Optional[TransportStats] = None,
                         abs_tol: float = 1e-14) -> CircuitMatrix:
    """Continue the seeded fundamental matrix once around ``loop``.

    Solutions transform as ``f -> M f``, so with solutions as columns
    ``Phi(1) = Phi(0) M^T`` and the returned matrix is ``(Phi(0)^{-1} Phi(1))^T``.
    """
    loop = LoopId(loop)
    margin = path_margin(loop)
    if margin < PATH_MARGIN:
        raise SingularApproachError(f"{loop.value} passes within {margin:.3g} of the singular locus")
    conn = conn or build_connection(p)
    stats = stats if stats is not None else TransportStats()
    Phi0 = initial_fundamental(conn, basis, rel_tol, abs_tol, stats)
    Phi1 = _transport(conn, Phi0, lambda t: loop_path(loop, t),
                      lambda t: loop_velocity(loop, t), rel_tol, abs_tol, stats)
    M = np.linalg.solve(Phi0, Phi1).T
    mb = MatrixBasis.HatCycles if basis == "hat" else (
        MatrixBasis.DeltaCycles if basis == "f" else MatrixBasis.LocalSeries)
    return CircuitMatrix(M, loop, mb, Source.Continued)


@dataclass
class VerificationReport:
    loop: LoopId
    basis: str
    tol: float
    continued: np.ndarray
    expected: np.ndarray
    matrix_residual: float
    charpoly_residual: float
    spectrum_residual: float
    det_residual: float
    connection_residual: float
    stats: TransportStats
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        worst = max(self.matrix_residual, self.charpoly_residual, self.det_residual)
        return bool(np.isfinite(worst) and worst <= self.tol)


def _relative(A, B) -> float:
    return float(np.abs(A - B).max() / max(1.0, np.abs(B).max()))


def verify_monodromy(p: HypergeometricParams, loop, tol: float = 1e-6,
                     rel_tol: float = 1e-10, basis: str = "local",
                     seed: int = 0) -> VerificationReport:
    """Continue around ``loop`` and compare with the closed-form circuit matrix.

    At integral c1 or c2 the Delta-basis matrix does not exist; the check then
    falls back to the regularized basis and the hatted matrix.
    """
    loop = LoopId(loop)
    notes = []
    if basis != "hat":
        try:
            m_delta(p, loop)
        except DegenerateError as exc:
            notes.append(f"DegenerateError: {exc}; falling back to the regularized basis")
            basis = "hat"
    conn = build_connection(p)
    conn_res = validate_connection(conn, seed=seed)
    if conn_res > VALIDATION_TOL:
        raise IntegrationError(f"connection disagrees with the series oracle ({conn_res:.3g})")
    stats = TransportStats()
    M = continue_fundamental(p, loop, rel_tol, basis, conn, stats).entries
    E = expected_matrix(p, loop, basis)
    spec = theoretical_spectrum(p, loop)
    return VerificationReport(
        loop=loop, basis=basis, tol=tol, continued=M, expected=E,
        matrix_residual=_relative(M, E),
        charpoly_residual=float(np.abs(charpoly(M) - poly_from_roots(spec)).max()),
        spectrum_residual=spectrum_distance(eigenvalues(M), spec),
        det_residual=abs(np.linalg.det(M) - np.prod(spec)),
        connection_residual=conn_res,
        stats=stats,
        notes=notes,
    )
