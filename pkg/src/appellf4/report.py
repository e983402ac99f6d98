"""Assembly of the JSON verification report.

Each section is ``{"checks": [...], "values": {...}}``; a check carries its
value, a reference formula id, residual, tolerance and pass flag. Complex
numbers are written as ``{"re": .., "im": ..}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from . import continuation, intersection, monodromy, solutions, tpr
from .errors import F4Error
from .params import HypergeometricParams, genericity_check
from .series import Point2, f4

DEFAULT_PARAMS = HypergeometricParams(0.31, 0.47, 0.62, 0.79)
DEFAULT_POINT = Point2(0.04, 0.06)
RANDOM_DRAWS = 5


@dataclass(frozen=True)
class Tolerances:
    series: float = 1e-12
    report: Optional[float] = None  # overrides every per-check tolerance when set
    rk: float = 1e-10

    def pick(self, default: float) -> float:
        return default if self.report is None else self.report


def cjson(z) -> Any:
    """Recursively convert complex scalars/arrays into {re, im} pairs."""
    if isinstance(z, np.ndarray):
        return [cjson(v) for v in z.tolist()]
    if isinstance(z, (list, tuple)):
        return [cjson(v) for v in z]
    if isinstance(z, (complex, np.complexfloating)):
        return {"re": float(z.real), "im": float(z.imag)}
    if isinstance(z, (np.floating, np.integer)):
        return z.item()
    return z


@dataclass
class Section:
    checks: List[Dict[str, Any]] = field(default_factory=list)
    values: Dict[str, Any] = field(default_factory=dict)

    def add(self, check_id: str, reference: str, residual: float, tolerance: float,
            value: Any = None) -> None:
        residual = float(residual)
        self.checks.append({
            "id": check_id,
            "value": cjson(value),
            "reference": reference,
            "residual": residual,
            "tolerance": tolerance,
            "pass": bool(np.isfinite(residual) and residual <= tolerance),
        })

    def fail(self, check_id: str, reference: str, exc: Exception) -> None:
        self.checks.append({
            "id": check_id, "value": None, "reference": reference,
            "residual": None, "tolerance": None, "pass": False,
            "error": {"type": type(exc).__name__, "message": str(exc)},
        })

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def as_dict(self) -> Dict[str, Any]:
        return {"checks": self.checks, "values": self.values}


def _rel(a, b) -> float:
    return float(abs(a - b) / max(abs(b), 1e-300))


def random_params(rng: np.random.Generator) -> HypergeometricParams:
    """A parameter draw kept well away from every non-generic stratum."""
    while True:
        vals = [complex(rng.uniform(0.1, 0.9), rng.uniform(-0.3, 0.3)) for _ in range(4)]
        p = HypergeometricParams(*vals)
        if genericity_check(p, 0.05).generic:
            return p


def params_section(p: HypergeometricParams, x: Point2) -> Dict[str, Any]:
    return {"a": cjson(p.a), "b": cjson(p.b), "c1": cjson(p.c1), "c2": cjson(p.c2),
            "x": cjson(x.as_tuple())}


def genericity_section(p: HypergeometricParams) -> Dict[str, Any]:
    g = genericity_check(p)
    return {"violated_conditions": g.violated_conditions,
            "min_distance": g.min_distance,
            "degenerate_flag": g.degenerate_flag,
            "generic": g.generic}


def eval_section(p: HypergeometricParams, x: Point2, tol: Tolerances) -> Section:
    s = Section()
    v = f4(p, x, tol.series)
    s.values["F4"] = {"value": cjson(v.value), "order": v.order, "tail_bound": v.tail_bound}
    for name, fn in (("local", solutions.local_basis), ("f", solutions.f_vector),
                     ("f_dual", solutions.f_dual_vector), ("f_hat", solutions.f_hat_vector)):
        try:
            s.values[name] = cjson(fn(p, x, tol.series).entries)
        except F4Error as exc:
            s.values[name] = {"unavailable": type(exc).__name__, "message": str(exc)}
    return s


def _intersection_checks(s: Section, p: HypergeometricParams, x: Point2,
                         tol: Tolerances, tag: str = "") -> None:
    H = intersection.h_matrix(p).entries
    Hh = intersection.h_hat_matrix(p)
    T = intersection.hat_transform(p)
    Tv = intersection.hat_transform_dual(p)
    s.add(f"H_hat_from_H{tag}", "H_hat = (P E) H (P^v E^v)^T",
          np.abs(T @ H @ Tv.T - Hh.entries).max(), tol.pick(1e-10))
    s.add(f"det_H_hat{tag}", "det H_hat closed form",
          _rel(np.linalg.det(Hh.entries), Hh.det_closed_form), tol.pick(1e-9),
          Hh.det_closed_form)
    H6 = intersection.h678_matrix(p)
    s.add(f"det_H678{tag}", "det H678 closed form",
          _rel(np.linalg.det(H6.entries), H6.det_closed_form), tol.pick(1e-9),
          H6.det_closed_form)
    C = intersection.c_matrix(p, x)
    s.add(f"C_symmetric{tag}", "C = C^T, C14 = C24 = C34 = 0",
          max(np.abs(C.entries - C.entries.T).max(), np.abs(C.entries[:3, 3]).max()),
          tol.pick(1e-12))
    s.add(f"det_C{tag}", "det C closed form",
          _rel(np.linalg.det(C.entries), C.det_closed_form), tol.pick(1e-9), C.det_closed_form)


def matrices_section(p: HypergeometricParams, x: Point2, tol: Tolerances) -> Section:
    s = Section()
    bc = intersection.basis_changes(p)
    s.values["H"] = cjson(intersection.h_matrix(p).entries)
    s.values["H_hat"] = cjson(intersection.h_hat_matrix(p).entries)
    s.values["H678"] = cjson(intersection.h678_matrix(p).entries)
    s.values["C"] = cjson(intersection.c_matrix(p, x).entries)
    s.values["P"] = cjson(bc.P)
    s.values["P_prime"] = cjson(bc.P_prime)
    e = intersection.e5_vectors(p)
    s.values["e5"] = cjson(e.e5)
    s.values["e5_dual"] = cjson(e.e5_dual)
    for name, fn in (("M_delta", monodromy.m_delta), ("M_hat", monodromy.m_hat),
                     ("M_prime", monodromy.m_prime)):
        try:
            s.values[name] = {L.value: cjson(fn(p, L).entries) for L in monodromy.LOOPS}
        except F4Error as exc:
            s.values[name] = {"unavailable": type(exc).__name__, "message": str(exc)}
    try:
        _intersection_checks(s, p, x, tol)
    except F4Error as exc:
        s.fail("intersection", "closed-form intersection matrices", exc)
    return s


def monodromy_closed_form(s: Section, p: HypergeometricParams, tol: Tolerances) -> None:
    for L in monodromy.LOOPS:
        spec = monodromy.theoretical_spectrum(p, L)
        for name, fn in (("delta", monodromy.m_delta), ("hat", monodromy.m_hat),
                         ("prime", monodromy.m_prime)):
            try:
                M = fn(p, L).entries
            except F4Error as exc:
                s.fail(f"spectrum_{name}_{L.value}", "circuit eigenvalues", exc)
                continue
            s.add(f"spectrum_{name}_{L.value}", "circuit eigenvalues",
                  monodromy.spectrum_distance(monodromy.eigenvalues(M), spec),
                  tol.pick(1e-8), spec)
        s.add(f"preservation_{L.value}", "M_hat H_hat M_hat^v^T = H_hat",
              monodromy.preservation_residual(p, L), tol.pick(1e-9))
        s.add(f"operator_{L.value}", "pairing operator = M_hat",
              np.abs(monodromy.m_hat_from_operator(p, L).entries
                     - monodromy.m_hat(p, L).entries).max(), tol.pick(1e-10))
    e5 = intersection.e5_vectors(p).e5
    M3 = monodromy.m_delta(p, monodromy.LoopId.Rho3).entries
    s.add("e5_eigenvector", "e5 M3 = -(g1 g2/(a b)) e5",
          np.abs(e5 @ M3 - monodromy.rho3_eigenvalue(p) * e5).max(), tol.pick(1e-10))


def monodromy_continued(s: Section, p: HypergeometricParams, tol: Tolerances,
                        seed: int) -> None:
    for L in monodromy.LOOPS:
        check_tol = tol.pick(1e-6 if L is not monodromy.LoopId.Rho3 else 1e-5)
        try:
            r = continuation.verify_monodromy(p, L, tol=check_tol, rel_tol=tol.rk, seed=seed)
        except F4Error as exc:
            s.fail(f"continued_{L.value}", "continued circuit matrix", exc)
            continue
        s.add(f"continued_{L.value}", f"continued = closed form ({r.basis} basis)",
              max(r.matrix_residual, r.charpoly_residual, r.det_residual), check_tol,
              r.continued)
        s.values[L.value] = {"basis": r.basis, "connection_residual": r.connection_residual,
                             "nfev": r.stats.nfev, "condition": r.stats.condition,
                             "notes": r.notes}


def monodromy_section(p: HypergeometricParams, tol: Tolerances, seed: int,
                      continued: bool = True) -> Section:
    s = Section()
    try:
        monodromy_closed_form(s, p, tol)
    except F4Error as exc:
        s.fail("closed_form", "closed-form circuit matrices", exc)
    if continued:
        monodromy_continued(s, p, tol, seed)
    return s


def tpr_section(p: HypergeometricParams, x: Point2, tol: Tolerances, seed: int = 0,
                draws: int = 0) -> Section:
    s = Section()
    stol = tol.series * 100

    def run(q, tag):
        for k in (1, 2, 3):
            try:
                r = tpr.tpr_identity(q, x, k, stol)
                s.add(f"identity_{k}{tag}", f"period relation {k}", r.residual,
                      tol.pick(1e-9), r.lhs)
            except F4Error as exc:
                s.fail(f"identity_{k}{tag}", f"period relation {k}", exc)
        try:
            r = tpr.tpr_entry11(q, x, stol)
            s.add(f"entry11{tag}", "(1,1) entry bilinear form", r.residual,
                  tol.pick(1e-8), r.lhs)
        except F4Error as exc:
            s.fail(f"entry11{tag}", "(1,1) entry bilinear form", exc)

    run(p, "")
    rng = np.random.default_rng(seed)
    for i in range(draws):
        run(random_params(rng), f"_draw{i}")
    return s


def full_report(p: HypergeometricParams, x: Point2, tol: Tolerances, seed: int) -> Dict[str, Any]:
    rng = np.random.default_rng(seed)
    mats = matrices_section(p, x, tol)
    for i in range(RANDOM_DRAWS):
        q = random_params(rng)
        try:
            _intersection_checks(mats, q, x, tol, tag=f"_draw{i}")
        except F4Error as exc:
            mats.fail(f"intersection_draw{i}", "closed-form intersection matrices", exc)
    sections = {
        "matrices": mats,
        "monodromy": monodromy_section(p, tol, seed),
        "tpr": tpr_section(p, x, tol, seed, draws=RANDOM_DRAWS),
    }
    return assemble(p, x, sections, seed)


def assemble(p: HypergeometricParams, x: Point2, sections: Dict[str, Section],
             seed: int) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "params": params_section(p, x),
        "seed": seed,
        "genericity": genericity_section(p),
    }
    for name, sec in sections.items():
        doc[name] = sec.as_dict()
    doc["pass"] = all(sec.passed for sec in sections.values())
    return doc


__all__ = ["Tolerances", "Section", "full_report", "assemble", "cjson",
           "eval_section", "matrices_section", "monodromy_section", "tpr_section",
           "DEFAULT_PARAMS", "DEFAULT_POINT"]
