"""Local fundamental systems of the F4 system near the origin.

Four bases are provided, all evaluated with the principal branch of
``x_k ** s`` (cut along the closed negative real axis):

* ``LocalPlain``  the bare power-times-series solutions,
* ``FCycle``      the same solutions scaled by Gamma-constants so that they are
                  the periods over the twisted cycles Delta_1..Delta_4,
* ``FDual``       the periods for the dual weight 1/u,
* ``FHat``        periods over the regularized cycles, finite at integral c1, c2.

Every vector is available either as values or as jets
``(f, d1 f, d2 f, d1 d2 f)``; the jets seed the numerical continuation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict

import numpy as np

from .errors import BranchError
from .gammafn import gamma_fn, gamma_ratio
from .params import HypergeometricParams, circuit_constants, dist_to_int
from .series import (DEFAULT_MARGIN, Point2, _pt, f4, f4_jet,
                     f4_regularized, f4_regularized_jet)

# removable-singularity handling near integral c1 or c2
SWITCH_THRESHOLD = 1e-3
CONTOUR_NODES = 32
CONTOUR_RADIUS = 0.05


class Basis(str, Enum):
    LocalPlain = "LocalPlain"
    FCycle = "FCycle"
    FDual = "FDual"
    FHat = "FHat"


@dataclass(frozen=True)
class PrefactorSet:
    g1: complex
    g2: complex
    g3: complex
    g4: complex
    d: tuple
    dual_d: tuple


@dataclass(frozen=True)
class SolutionVector:
    entries: np.ndarray
    basis: Basis
    at: Point2

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]


def _phase(z: complex) -> complex:
    return cmath.exp(-1j * math.pi * z)


def g4_constant(p: HypergeometricParams) -> complex:
    a, b, c1, c2 = p.as_tuple()
    return gamma_fn(1 - b) * gamma_fn(c1 + c2 - a - 1) * _phase(c1 + c2 - a - b)


def cycle_constants(p: HypergeometricParams, phases: bool = True) -> tuple:
    """Constants d_i with f_i = d_i * (i-th plain local solution)."""
    a, b, c1, c2 = p.as_tuple()
    ph = _phase(c1 + c2 - a - b) if phases else 1.0
    return (
        gamma_ratio([1 - c1, 1 - c2, c1 + c2 - a - 1], [1 - a]),
        gamma_ratio([a + 1 - c1, b + 1 - c1, 1 - b, c1 + c2 - a - 1], [2 - c1, c2]) * ph,
        gamma_ratio([a + 1 - c2, b + 1 - c2, 1 - b, c1 + c2 - a - 1], [c1, 2 - c2]) * ph,
        gamma_ratio([c1 - 1, c2 - 1, 1 - b], [c1 + c2 - b - 1]),
    )


def dual_cycle_constants(p: HypergeometricParams, phases: bool = True) -> tuple:
    a, b, c1, c2 = p.as_tuple()
    ph = _phase(a + b - c1 - c2) if phases else 1.0
    return (
        gamma_ratio([c1 - 1, c2 - 1, 1 - c1 - c2 + a], [a - 1]),
        gamma_ratio([c1 - b - 1, c1 - a + 1, 1 + b, 1 - c1 - c2 + a], [c1, 2 - c2]) * ph,
        gamma_ratio([c2 - a + 1, c2 - b - 1, 1 + b, 1 - c1 - c2 + a], [2 - c1, c2]) * ph,
        gamma_ratio([1 - c1, 1 - c2, 1 + b], [3 - c1 - c2 + b]),
    )


def prefactors(p: HypergeometricParams) -> PrefactorSet:
    a, b, c1, c2 = p.as_tuple()
    return PrefactorSet(
        g1=gamma_ratio([1 - a], [1 - c1, 1 - c2, c1 + c2 - a - 1]),
        g2=gamma_ratio([c1, c2, a - c1 - c2 + 2], [a]) / (2j * math.pi) ** 2,
        g3=gamma_ratio([c1, c2], [a, b, c1 - a, c2 - b]),
        g4=g4_constant(p),
        d=cycle_constants(p),
        dual_d=dual_cycle_constants(p),
    )


def integral_convergence(p: HypergeometricParams) -> Dict[str, bool]:
    """Which of the integrals f_1..f_5 converge as ordinary integrals."""
    a, b, c1, c2 = p.as_tuple()

    def notint(*zs):
        return all(dist_to_int(z) > 0 for z in zs)

    def pos(*zs):
        return all(complex(z).real > 0 for z in zs)

    return {
        "f1": notint(c1, c2, a - c1 - c2),
        "f2": pos(b - c1 + 1, c1 + c2 - a - 1, 1 - b, a - c1 + 1),
        "f3": pos(b - c2 + 1, c1 + c2 - a - 1, 1 - b, a - c2 + 1),
        "f4": notint(c1, c2, b - c1 - c2),
        "f5": pos(c1 + c2 - a - 1, 1 - b),
    }


# --------------------------------------------------------------------------
# jet arithmetic: arrays (f, d1, d2, d12)
# --------------------------------------------------------------------------

def _check_branch(x: Point2) -> None:
    for name, v in (("x1", x.x1), ("x2", x.x2)):
        if v.imag == 0 and v.real <= 0:
            raise BranchError(f"{name} = {v} lies on the cut of the principal logarithm")


def _power_jet(x: Point2, s1: complex, s2: complex) -> np.ndarray:
    x1, x2 = x.as_tuple()
    pw = 1.0 + 0j
    if s1 != 0:
        pw *= cmath.exp(s1 * cmath.log(x1))
    if s2 != 0:
        pw *= cmath.exp(s2 * cmath.log(x2))
    return np.array([pw, s1 * pw / x1, s2 * pw / x2, s1 * s2 * pw / (x1 * x2)])


def _mul_jet(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.array([
        u[0] * v[0],
        u[1] * v[0] + u[0] * v[1],
        u[2] * v[0] + u[0] * v[2],
        u[3] * v[0] + u[1] * v[2] + u[2] * v[1] + u[0] * v[3],
    ])


def _series(q: HypergeometricParams, x: Point2, tol: float, jet: bool, margin: float):
    if jet:
        return f4_jet(q, x, tol, margin).as_array()
    return np.array([f4(q, x, tol, margin).value, 0, 0, 0], dtype=complex)


def _reg_series(q: HypergeometricParams, x: Point2, tol: float, jet: bool, margin: float):
    if jet:
        return f4_regularized_jet(q, x, tol, margin).as_array()
    return np.array([f4_regularized(q, x, tol, margin).value, 0, 0, 0], dtype=complex)


def _powered(x, s1, s2, series, jet):
    if not jet:
        return _power_jet(x, s1, s2)[0] * series
    return _mul_jet(_power_jet(x, s1, s2), series)


def _plain_jets(p: HypergeometricParams, x: Point2, tol: float, jet: bool,
                margin: float) -> np.ndarray:
    a, b, c1, c2 = p.as_tuple()
    H = HypergeometricParams
    rows = [
        _series(p, x, tol, jet, margin),
        _powered(x, 1 - c1, 0, _series(H(a + 1 - c1, b + 1 - c1, 2 - c1, c2), x, tol, jet, margin), jet),
        _powered(x, 0, 1 - c2, _series(H(a + 1 - c2, b + 1 - c2, c1, 2 - c2), x, tol, jet, margin), jet),
        _powered(x, 1 - c1, 1 - c2,
                 _series(H(a + 2 - c1 - c2, b + 2 - c1 - c2, 2 - c1, 2 - c2), x, tol, jet, margin), jet),
    ]
    return np.array(rows)


def _dual_plain_jets(p: HypergeometricParams, x: Point2, tol: float, jet: bool,
                     margin: float) -> np.ndarray:
    a, b, c1, c2 = p.as_tuple()
    H = HypergeometricParams
    rows = [
        _series(H(2 - a, -b, 2 - c1, 2 - c2), x, tol, jet, margin),
        _powered(x, c1 - 1, 0, _series(H(c1 - a + 1, c1 - b - 1, c1, 2 - c2), x, tol, jet, margin), jet),
        _powered(x, 0, c2 - 1, _series(H(c2 - a + 1, c2 - b - 1, 2 - c1, c2), x, tol, jet, margin), jet),
        _powered(x, c1 - 1, c2 - 1,
                 _series(H(c1 + c2 - a, c1 + c2 - b - 2, c1, c2), x, tol, jet, margin), jet),
    ]
    return np.array(rows)


# --------------------------------------------------------------------------
# removable singularities at integral c_k: average over a small circle in c_k
# --------------------------------------------------------------------------

def _contour_radius(p: HypergeometricParams, k: int) -> float:
    a, b, c1, c2 = p.as_tuple()
    ck = c1 if k == 1 else c2
    # quantities that turn integral (true singularities) as c_k moves
    others = [a - ck, b - ck, a - c1 - c2, b - c1 - c2]
    d = min(dist_to_int(z) for z in others)
    return min(CONTOUR_RADIUS, 0.4 * d)


def near_integral_c(p: HypergeometricParams) -> tuple:
    """Indices k in (1, 2) with |gamma_k - 1| below the switch threshold."""
    cc = circuit_constants(p)
    return tuple(k for k, g in ((1, cc.gamma1), (2, cc.gamma2))
                 if abs(g - 1) < SWITCH_THRESHOLD)


def removable_limit(func: Callable[[HypergeometricParams], np.ndarray],
                    p: HypergeometricParams, ks: tuple, nodes: int = CONTOUR_NODES):
    """Value at ``p`` of a function analytic in c_k (k in ks) with removable
    singularities at integers, as the mean over circles centred at p."""
    if not ks:
        return func(p)
    k, rest = ks[0], ks[1:]
    r = _contour_radius(p, k)
    acc = None
    for j in range(nodes):
        shift = r * cmath.exp(2j * math.pi * (j + 0.5) / nodes)
        q = p.replace(c1=p.c1 + shift) if k == 1 else p.replace(c2=p.c2 + shift)
        v = removable_limit(func, q, rest, nodes)
        acc = v if acc is None else acc + v
    return acc / nodes


# --------------------------------------------------------------------------
# public constructors
# --------------------------------------------------------------------------

def _vector(rows: np.ndarray, basis: Basis, x: Point2, jet: bool):
    if jet:
        return rows
    return SolutionVector(np.asarray(rows[:, 0], dtype=complex), basis, x)


def local_basis(p: HypergeometricParams, x, tol: float = 1e-14, *, jet: bool = False,
                margin: float = DEFAULT_MARGIN):
    """The four power-times-F4 solutions. With ``jet=True`` returns a 4x4 array
    whose row i is the jet (f, d1, d2, d12) of entry i."""
    x = _pt(x)
    _check_branch(x)
    return _vector(_plain_jets(p, x, tol, jet, margin), Basis.LocalPlain, x, jet)


def f_vector(p: HypergeometricParams, x, tol: float = 1e-14, *, jet: bool = False,
             margin: float = DEFAULT_MARGIN):
    """Periods f_1..f_4 over Delta_1..Delta_4 (Gamma-constant times local solution)."""
    x = _pt(x)
    _check_branch(x)
    d = np.array(cycle_constants(p))
    rows = d[:, None] * _plain_jets(p, x, tol, jet, margin)
    return _vector(rows, Basis.FCycle, x, jet)


def f_dual_vector(p: HypergeometricParams, x, tol: float = 1e-14, *, jet: bool = False,
                  margin: float = DEFAULT_MARGIN):
    """Dual periods f_1^v..f_4^v (weight 1/u)."""
    x = _pt(x)
    _check_branch(x)
    d = np.array(dual_cycle_constants(p))
    rows = d[:, None] * _dual_plain_jets(p, x, tol, jet, margin)
    return _vector(rows, Basis.FDual, x, jet)


def _hat_rows_quotient(p: HypergeometricParams, x: Point2, tol: float, jet: bool,
                       margin: float) -> np.ndarray:
    """Entries 1-3 of the hatted vector from the reciprocal-Gamma series."""
    a, b, c1, c2 = p.as_tuple()
    H = HypergeometricParams
    cc = circuit_constants(p)
    g4 = g4_constant(p)
    fh1 = g4 * gamma_fn(a) * gamma_fn(b) * _reg_series(p, x, tol, jet, margin)
    f2 = g4 * gamma_fn(a + 1 - c1) * gamma_fn(b + 1 - c1) * _powered(
        x, 1 - c1, 0, _reg_series(H(a + 1 - c1, b + 1 - c1, 2 - c1, c2), x, tol, jet, margin), jet)
    f3 = g4 * gamma_fn(a + 1 - c2) * gamma_fn(b + 1 - c2) * _powered(
        x, 0, 1 - c2, _reg_series(H(a + 1 - c2, b + 1 - c2, c1, 2 - c2), x, tol, jet, margin), jet)
    g1, g2 = cc.gamma1, cc.gamma2
    fh2 = g1 / (1 - g1) * (f2 - fh1)
    fh3 = g2 / (1 - g2) * (f3 - fh1)
    return np.array([fh1, fh2, fh3])


def _f5_rows(p: HypergeometricParams, x: Point2, tol: float, jet: bool, margin: float):
    from .intersection import e5_vectors
    e5 = np.asarray(e5_vectors(p).e5)
    f = np.array(cycle_constants(p))[:, None] * _plain_jets(p, x, tol, jet, margin)
    return e5 @ f


def f5(p: HypergeometricParams, x, tol: float = 1e-14, *, jet: bool = False,
       margin: float = DEFAULT_MARGIN):
    """Period over Delta_5, expanded in f_1..f_4; finite through integral c_k."""
    x = _pt(x)
    _check_branch(x)
    out = removable_limit(lambda q: _f5_rows(q, x, tol, jet, margin), p,
                          near_integral_c(p))
    return out if jet else complex(out[0])


def f_hat_vector(p: HypergeometricParams, x, tol: float = 1e-14, *, jet: bool = False,
                 margin: float = DEFAULT_MARGIN):
    """Periods over the regularized cycles (hatted basis), well defined for integral c.

    Entries 1-3 use the reciprocal-Gamma series and the quotient
    ``gamma/(1-gamma) * (f2 - f1_hat)``; entry 4 is the Delta_5 period. When
    |gamma_k - 1| < SWITCH_THRESHOLD the quotient is evaluated as a mean over a
    circle in c_k, where it is well conditioned, instead of at the cancelling point.
    """
    x = _pt(x)
    _check_branch(x)

    def rows(q):
        return np.vstack([_hat_rows_quotient(q, x, tol, jet, margin),
                          np.atleast_2d(_f5_rows(q, x, tol, jet, margin))])

    out = removable_limit(rows, p, near_integral_c(p))
    return _vector(out, Basis.FHat, x, jet)
