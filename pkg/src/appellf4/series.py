"""Truncated evaluation of Appell's F4 double series.

Terms are generated one anti-diagonal (fixed total degree n1 + n2) at a time
from ratio recurrences, so the cost to order N is O(N^2) and the tail can be
estimated from the last completed diagonal.

The tail estimate is a heuristic, not a rigorous bound: after diagonal N it is
``10 * S_N * rho / (1 - rho)`` with ``S_N`` the sum of moduli of the diagonal's
terms and ``rho = (sqrt|x1| + sqrt|x2|)**2`` the asymptotic diagonal ratio.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterator, Tuple

import numpy as np

from .errors import ConvergenceError, DomainError, ParameterError
from .gammafn import rgamma_fn
from .params import GENERICITY_TOL, HypergeometricParams

DEFAULT_MARGIN = 0.05
TAIL_SAFETY = 10.0
MIN_ORDER = 4


def max_order() -> int:
    """Series order cap, overridable with the F4_MAX_ORDER environment variable."""
    return int(os.environ.get("F4_MAX_ORDER", "400"))


@dataclass(frozen=True)
class Point2:
    x1: complex
    x2: complex

    def __post_init__(self):
        for name in ("x1", "x2"):
            v = complex(getattr(self, name))
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, v)

    def swapped(self) -> "Point2":
        return Point2(self.x2, self.x1)

    def as_tuple(self):
        return (self.x1, self.x2)


@dataclass(frozen=True)
class SeriesValue:
    value: complex
    order: int
    tail_bound: float


@dataclass(frozen=True)
class SeriesJet:
    f: complex
    d1: complex
    d2: complex
    d12: complex
    order: int = 0
    tail_bound: float = 0.0

    def as_array(self) -> np.ndarray:
        return np.array([self.f, self.d1, self.d2, self.d12], dtype=complex)


def _pt(x) -> Point2:
    return x if isinstance(x, Point2) else Point2(*x)


def pochhammer(z: complex, n: int) -> complex:
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = 1.0
    for k in range(n):
        out *= z + k
    return out


def domain_measure(x) -> float:
    x = _pt(x)
    return math.sqrt(abs(x.x1)) + math.sqrt(abs(x.x2))


def in_convergence_domain(x) -> bool:
    return domain_measure(x) < 1.0


def r_poly(x) -> complex:
    x1, x2 = _pt(x).as_tuple()
    return x1 * x1 + x2 * x2 - 2 * x1 * x2 - 2 * x1 - 2 * x2 + 1


def _check_point(x: Point2, margin: float) -> float:
    s = domain_measure(x)
    if s > 1.0 - margin:
        raise DomainError(
            f"sqrt|x1| + sqrt|x2| = {s:.6g} exceeds 1 - margin = {1 - margin:.6g}")
    return s * s


def _check_lower(c: complex, name: str, tol: float = GENERICITY_TOL) -> None:
    n = round(c.real)
    if n <= 0 and abs(c - n) < tol:
        raise ParameterError(f"{name} = {c} is within {tol:g} of the pole {n}")


def _diagonals(a, b, c1, c2, x1, x2) -> Iterator[Tuple[complex, float]]:
    """Yield (sum, sum of moduli) of successive anti-diagonals n1 + n2 = N."""
    row = np.array([1.0 + 0j])
    yield complex(row[0]), 1.0
    N = 0
    while True:
        n1 = np.arange(N + 1)
        n2 = N - n1
        common = (a + N) * (b + N)
        new = np.empty(N + 2, dtype=complex)
        # (n1, n2) -> (n1, n2 + 1)
        new[:N + 1] = row * (common * x2 / ((c2 + n2) * (n2 + 1)))
        # (N, 0) -> (N + 1, 0)
        new[N + 1] = row[N] * (common * x1 / ((c1 + N) * (N + 1)))
        row = new
        N += 1
        yield complex(row.sum()), float(np.abs(row).sum())


def _tail(absdiag: float, rho: float) -> float:
    return TAIL_SAFETY * absdiag * rho / (1.0 - rho)


def _sum_to_tol(gen, rho, target_tol, cap):
    total = 0j
    for N, (s, sabs) in enumerate(gen):
        total += s
        tail = _tail(sabs, rho)
        if N >= MIN_ORDER and tail <= target_tol:
            return total, N, tail
        if N >= cap:
            raise ConvergenceError(
                f"order cap {cap} reached with tail estimate {tail:.3g} > {target_tol:.3g}")
    raise AssertionError("unreachable")


def _sum_to_order(gen, rho, order):
    total = 0j
    tail = 0.0
    for N, (s, sabs) in enumerate(gen):
        if N > order:
            break
        total += s
        tail = _tail(sabs, rho)
    return total, tail


def f4(p: HypergeometricParams, x, target_tol: float = 1e-14,
       margin: float = DEFAULT_MARGIN, cap: int | None = None) -> SeriesValue:
    """F4(a, b, c1, c2; x) summed by ascending total degree until the tail estimate
    drops below ``target_tol``."""
    x = _pt(x)
    _check_lower(p.c1, "c1")
    _check_lower(p.c2, "c2")
    rho = _check_point(x, margin)
    cap = max_order() if cap is None else cap
    val, N, tail = _sum_to_tol(_diagonals(p.a, p.b, p.c1, p.c2, x.x1, x.x2),
                               rho, target_tol, cap)
    return SeriesValue(val, N, tail)


def f4_partial(p: HypergeometricParams, x, order: int,
               margin: float = DEFAULT_MARGIN) -> SeriesValue:
    """Partial sum over n1 + n2 <= order, with the tail estimate after that order."""
    x = _pt(x)
    _check_lower(p.c1, "c1")
    _check_lower(p.c2, "c2")
    rho = _check_point(x, margin)
    val, tail = _sum_to_order(_diagonals(p.a, p.b, p.c1, p.c2, x.x1, x.x2), rho, order)
    return SeriesValue(val, order, tail)


def _derivative_params(p: HypergeometricParams, k1: int, k2: int):
    """Coefficient and parameters of d1^k1 d2^k2 F4 as a rescaled F4 series."""
    a, b, c1, c2 = p.as_tuple()
    k = k1 + k2
    coeff = pochhammer(a, k) * pochhammer(b, k) / (pochhammer(c1, k1) * pochhammer(c2, k2))
    return coeff, HypergeometricParams(a + k, b + k, c1 + k1, c2 + k2)


def _derivative_partial(p, x, order, k1, k2, rho):
    # d1^k1 d2^k2 of the degree-<=order polynomial is a shifted series of degree order-k
    k = k1 + k2
    if order < k:
        return 0j, 0.0
    coeff, q = _derivative_params(p, k1, k2)
    val, tail = _sum_to_order(_diagonals(q.a, q.b, q.c1, q.c2, x.x1, x.x2), rho, order - k)
    return coeff * val, abs(coeff) * tail


def f4_jet_partial(p: HypergeometricParams, x, order: int,
                   margin: float = DEFAULT_MARGIN) -> SeriesJet:
    x = _pt(x)
    _check_lower(p.c1, "c1")
    _check_lower(p.c2, "c2")
    rho = _check_point(x, margin)
    parts = [_derivative_partial(p, x, order, k1, k2, rho)
             for k1, k2 in ((0, 0), (1, 0), (0, 1), (1, 1))]
    return SeriesJet(*(v for v, _ in parts), order=order,
                     tail_bound=max(t for _, t in parts))


def f4_jet(p: HypergeometricParams, x, target_tol: float = 1e-14,
           margin: float = DEFAULT_MARGIN, cap: int | None = None) -> SeriesJet:
    """Value and first mixed derivatives of one truncated polynomial.

    The order is raised until all four tail estimates are below ``target_tol``;
    d1, d2, d12 are exact derivatives of the same truncation.
    """
    x = _pt(x)
    _check_lower(p.c1, "c1")
    _check_lower(p.c2, "c2")
    _check_point(x, margin)
    cap = max_order() if cap is None else cap
    # the value series fixes a starting order; derivative tails decay at the same rate
    N = f4(p, x, target_tol, margin, cap).order
    while True:
        jet = f4_jet_partial(p, x, N, margin)
        if jet.tail_bound <= target_tol:
            return jet
        if N >= cap:
            raise ConvergenceError(
                f"order cap {cap} reached with jet tail {jet.tail_bound:.3g}")
        N = min(cap, N + max(4, N // 4))


_PDE_INDICES = ((0, 0), (1, 0), (0, 1), (2, 0), (0, 2), (1, 1))


def _pde_coefficients(p: HypergeometricParams, x: Point2):
    """Coefficients of (f, f1, f2, f11, f22, f12) in the two operators."""
    a, b, c1, c2 = p.as_tuple()
    x1, x2 = x.as_tuple()
    s = a + b + 1
    op1 = (-a * b, c1 - s * x1, -s * x2, x1 * (1 - x1), -x2 * x2, -2 * x1 * x2)
    op2 = (-a * b, -s * x1, c2 - s * x2, -x1 * x1, x2 * (1 - x2), -2 * x1 * x2)
    return np.array(op1), np.array(op2)


def _pde_parts(p: HypergeometricParams, x, order: int, margin: float):
    x = _pt(x)
    _check_lower(p.c1, "c1")
    _check_lower(p.c2, "c2")
    rho = _check_point(x, margin)
    parts = [_derivative_partial(p, x, order, k1, k2, rho) for k1, k2 in _PDE_INDICES]
    vals = np.array([v for v, _ in parts])
    tails = np.array([t for _, t in parts])
    return _pde_coefficients(p, x), vals, tails


def pde_residual(p: HypergeometricParams, x, order: int,
                 margin: float = DEFAULT_MARGIN) -> Tuple[complex, complex]:
    """Both F4 operators applied term-wise to the degree-<=order truncation at x."""
    (op1, op2), vals, _ = _pde_parts(p, x, order, margin)
    return complex(op1 @ vals), complex(op2 @ vals)


def pde_residual_bound(p: HypergeometricParams, x, order: int,
                       margin: float = DEFAULT_MARGIN) -> float:
    """Expected size of :func:`pde_residual` for a given order.

    The operators annihilate F4 exactly, so the residual of the truncation
    is the operator applied to the dropped terms: this is bounded by the
    coefficient-weighted tails of the six derivative series (not the tail
    of F4 itself), plus a rounding floor from the size of each summand.
    """
    (op1, op2), vals, tails = _pde_parts(p, x, order, margin)
    out = 0.0
    for op in (op1, op2):
        w = np.abs(op)
        out = max(out, float(w @ tails) + 64 * np.finfo(float).eps * float(w @ np.maximum(1.0, np.abs(vals))))
    return out


# --------------------------------------------------------------------------
# Series with reciprocal-Gamma lower parameters (finite for any c1, c2)
# --------------------------------------------------------------------------

def _weights(c: complex, x: complex, n: int) -> np.ndarray:
    """w[k] = k! x^k / Gamma(c + k) for k = 0..n, stable through the poles of Gamma."""
    w = np.empty(n + 1, dtype=complex)
    # start the recurrence past every near-pole index
    start = max(0, -math.floor(c.real) + 1)
    xp = 1.0 + 0j
    fact = 1.0
    for k in range(min(start, n) + 1):
        w[k] = rgamma_fn(c + k) * fact * xp
        xp *= x
        fact *= k + 1
    for k in range(start, n):
        w[k + 1] = w[k] * x * (k + 1) / (c + k)
    return w


def _reg_diagonals(a, b, c1, c2, x1, x2, cap) -> Iterator[Tuple[complex, float]]:
    # term(n1, n2) = [(a)_n (b)_n / n!^2] * binom(n, n1)^2 * w1[n1] * w2[n2]
    w1 = _weights(c1, x1, cap)
    w2 = _weights(c2, x2, cap)
    v = 1.0 + 0j
    for N in range(cap + 1):
        if N:
            v *= (a + N - 1) * (b + N - 1) / (N * N)
        n1 = np.arange(N + 1)
        binom = np.array([float(math.comb(N, k)) for k in range(N + 1)])
        row = v * binom * binom * w1[n1] * w2[N - n1]
        yield complex(row.sum()), float(np.abs(row).sum())


def f4_regularized(p: HypergeometricParams, x, target_tol: float = 1e-14,
                   margin: float = DEFAULT_MARGIN, cap: int | None = None) -> SeriesValue:
    """sum (a)_n (b)_n x^n / (Gamma(c1+n1) Gamma(c2+n2) n1! n2!).

    Equals F4 / (Gamma(c1) Gamma(c2)) for generic c and stays finite when
    c1 or c2 is a nonpositive integer.
    """
    x = _pt(x)
    rho = _check_point(x, margin)
    cap = max_order() if cap is None else cap
    val, N, tail = _sum_to_tol(_reg_diagonals(p.a, p.b, p.c1, p.c2, x.x1, x.x2, cap),
                               rho, target_tol, cap)
    return SeriesValue(val, N, tail)


def f4_regularized_jet(p: HypergeometricParams, x, target_tol: float = 1e-14,
                       margin: float = DEFAULT_MARGIN, cap: int | None = None) -> SeriesJet:
    a, b, c1, c2 = p.as_tuple()
    parts = [
        (1.0, p),
        (a * b, HypergeometricParams(a + 1, b + 1, c1 + 1, c2)),
        (a * b, HypergeometricParams(a + 1, b + 1, c1, c2 + 1)),
        (a * (a + 1) * b * (b + 1), HypergeometricParams(a + 2, b + 2, c1 + 1, c2 + 1)),
    ]
    vals = []
    tail = 0.0
    for coeff, q in parts:
        sv = f4_regularized(q, x, target_tol / max(1.0, abs(coeff)), margin, cap)
        vals.append(coeff * sv.value)
        tail = max(tail, abs(coeff) * sv.tail_bound)
    return SeriesJet(*vals, order=0, tail_bound=tail)
