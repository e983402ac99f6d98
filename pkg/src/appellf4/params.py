"""Parameters of the F4 system and every quantity derived from them.

All other modules read exponents and unit-circle constants from here, so
the conventions (principal ``exp(2*pi*i*z)``, no argument reduction) live in
one place.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Dict, List

TWO_PI_I = 2j * math.pi

#: distance to the integer lattice below which a quantity counts as integral
GENERICITY_TOL = 1e-6


def _c(z) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"parameter must be finite, got {z!r}")
    return z


def e2pi(z: complex) -> complex:
    """``exp(2*pi*i*z)`` on the principal convention."""
    return cmath.exp(TWO_PI_I * z)


def dist_to_int(z: complex) -> float:
    """Distance from ``z`` to the nearest integer."""
    z = complex(z)
    return abs(z - round(z.real))


@dataclass(frozen=True)
class HypergeometricParams:
    a: complex
    b: complex
    c1: complex
    c2: complex

    def __post_init__(self):
        for name in ("a", "b", "c1", "c2"):
            object.__setattr__(self, name, _c(getattr(self, name)))

    def replace(self, **kw) -> "HypergeometricParams":
        d = dict(a=self.a, b=self.b, c1=self.c1, c2=self.c2)
        d.update(kw)
        return HypergeometricParams(**d)

    def swap_ab(self) -> "HypergeometricParams":
        return HypergeometricParams(self.b, self.a, self.c1, self.c2)

    def swap_c(self) -> "HypergeometricParams":
        return HypergeometricParams(self.a, self.b, self.c2, self.c1)

    def as_tuple(self):
        return (self.a, self.b, self.c1, self.c2)


@dataclass(frozen=True)
class ExponentSet:
    l1: complex
    l2: complex
    l3: complex
    l4: complex
    l0: complex
    l124: complex
    l134m: complex
    l234m: complex


@dataclass(frozen=True)
class CircuitConstants:
    alpha: complex
    beta: complex
    gamma1: complex
    gamma2: complex
    mu0: complex
    mu1: complex
    mu2: complex
    mu3: complex
    mu4: complex

    def mu(self, *idx: int) -> complex:
        """Product ``mu_i mu_j ...`` for the given indices (e.g. ``mu(0, 1, 4)``)."""
        vals = (self.mu0, self.mu1, self.mu2, self.mu3, self.mu4)
        out = 1.0 + 0j
        for i in idx:
            out *= vals[i]
        return out

    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma1, self.gamma2,
                self.mu0, self.mu1, self.mu2, self.mu3, self.mu4)


@dataclass(frozen=True)
class ShiftedParams:
    a1: complex
    a2: complex
    a12: complex
    b1: complex
    b2: complex
    b12: complex


@dataclass(frozen=True)
class GenericityReport:
    violated_conditions: List[str] = field(default_factory=list)
    min_distance: float = math.inf
    degenerate_flag: bool = False
    distances: Dict[str, float] = field(default_factory=dict)

    @property
    def generic(self) -> bool:
        return not self.violated_conditions and not self.degenerate_flag


def derive_exponents(p: HypergeometricParams) -> ExponentSet:
    a, b, c1, c2 = p.as_tuple()
    l1 = b - c1 + 1
    l2 = b - c2 + 1
    l3 = c1 + c2 - a - 1
    l4 = -b
    return ExponentSet(
        l1=l1, l2=l2, l3=l3, l4=l4,
        l0=-l1 - l2 - l3 - 2 * l4,
        l124=l1 + l2 + l4,
        l134m=a - c2,
        l234m=a - c1,
    )


def circuit_constants(p: HypergeometricParams) -> CircuitConstants:
    ex = derive_exponents(p)
    mu1, mu2, mu3, mu4 = (e2pi(ex.l1), e2pi(ex.l2), e2pi(ex.l3), e2pi(ex.l4))
    return CircuitConstants(
        alpha=e2pi(p.a),
        beta=e2pi(p.b),
        gamma1=e2pi(p.c1),
        gamma2=e2pi(p.c2),
        mu0=1.0 / (mu1 * mu2 * mu3 * mu4 ** 2),
        mu1=mu1, mu2=mu2, mu3=mu3, mu4=mu4,
    )


def shifted_params(p: HypergeometricParams) -> ShiftedParams:
    a, b, c1, c2 = p.as_tuple()
    return ShiftedParams(
        a1=a - c1 + 1, a2=a - c2 + 1, a12=a - c1 - c2 + 2,
        b1=b - c1 + 1, b2=b - c2 + 1, b12=b - c1 - c2 + 2,
    )


def _excluded_quantities(p: HypergeometricParams) -> Dict[str, complex]:
    a, b, c1, c2 = p.as_tuple()
    return {
        "a": a,
        "a-c1": a - c1,
        "a-c2": a - c2,
        "a-c1-c2": a - c1 - c2,
        "b": b,
        "b-c1": b - c1,
        "b-c2": b - c2,
        "b-c1-c2": b - c1 - c2,
        "c1": c1,
        "c2": c2,
    }


def genericity_check(p: HypergeometricParams, tol: float = GENERICITY_TOL) -> GenericityReport:
    """Report which of the ten excluded quantities sit within ``tol`` of an integer.

    Near-violations are reported, not refused; callers decide whether to
    proceed. ``degenerate_flag`` marks the stratum ``alpha*beta + gamma1*gamma2 = 0``
    on which the rho3 circuit transformation is not diagonalizable.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    dists = {k: dist_to_int(v) for k, v in _excluded_quantities(p).items()}
    violated = [f"{k} ∈ ℤ" for k, d in dists.items() if d < tol]
    cc = circuit_constants(p)
    degenerate = abs(cc.alpha * cc.beta + cc.gamma1 * cc.gamma2) < tol
    return GenericityReport(
        violated_conditions=violated,
        min_distance=min(dists.values()),
        degenerate_flag=degenerate,
        distances=dists,
    )


def conjugate_params(p: HypergeometricParams) -> HypergeometricParams:
    """Parameters whose circuit constants are the reciprocals of those of ``p``.

    Evaluating any closed form at the result realises the involution
    ``mu_k -> 1/mu_k`` used for the dual (1/u) side of every pairing.
    """
    return HypergeometricParams(-p.a, -p.b, -p.c1, -p.c2)


def degenerate_b(a: complex, c1: complex, c2: complex) -> complex:
    """A value of ``b`` with ``alpha*beta + gamma1*gamma2 = 0``."""
    return c1 + c2 - a + 0.5
