"""Acceptance criteria 1-8, each printed as one PASS/FAIL line."""

import cmath
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from appellf4.continuation import build_connection, validate_connection, verify_monodromy
from appellf4.intersection import (c_matrix, delta5_self_pairing, e5_vectors, h678_matrix,
                                   h_hat_matrix, h_matrix, hat_transform, hat_transform_dual)
from appellf4.monodromy import (LOOPS, LoopId, charpoly, eigenvalues, jordan_check, m_delta,
                                m_hat, m_prime, preservation_residual, rho3_eigenvalue,
                                spectrum_distance, theoretical_spectrum)
from appellf4.params import HypergeometricParams, degenerate_b
from appellf4.series import f4, pde_residual
from appellf4.tpr import tpr_entry11, tpr_identity

from conftest import DEFAULT, random_generic
from oracles import f4_bruteforce_fast


@pytest.fixture
def verdict(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {n}: {'PASS' if ok else 'FAIL'} ({detail})")
        assert ok, detail
    return emit


def test_criterion_1_series(verdict):
    x = (0.05, 0.07)
    draws = random_generic(101, 20)
    t0 = time.perf_counter()
    sym = brute = 0.0
    ok = True
    for p in draws:
        u, v = f4(p, x), f4(p.swap_ab(), x)
        ok &= abs(u.value - v.value) <= 2 * max(u.tail_bound, v.tail_bound)
        sym = max(sym, abs(u.value - v.value))
        brute = max(brute, abs(u.value - f4_bruteforce_fast(*p.as_tuple(), *x)))
    elapsed = time.perf_counter() - t0
    ok &= brute < 1e-12 and elapsed < 1.0
    verdict(1, ok, f"symmetry {sym:.1e}, oracle {brute:.1e}, {elapsed:.2f}s")


def test_criterion_2_pde(verdict):
    x = (0.05, 0.05)
    s = 2 * math.sqrt(0.05)
    t0 = time.perf_counter()
    res = {n: max(map(abs, pde_residual(DEFAULT, x, n))) for n in (2, 4, 8, 16, 60)}
    elapsed = time.perf_counter() - t0
    decays = all(res[2 * n] <= res[n] * s ** n for n in (2, 4, 8))
    ok = res[60] < 1e-8 and decays and elapsed < 1.0
    verdict(2, ok, f"order-60 residual {res[60]:.1e}, decay {decays}, {elapsed:.2f}s")


def test_criterion_3_intersection(verdict):
    x = (0.05, 0.07)
    t0 = time.perf_counter()
    worst = {"hat": 0.0, "detHh": 0.0, "det678": 0.0, "detC": 0.0, "C": 0.0}
    for p in random_generic(303, 20):
        H = h_matrix(p).entries
        Hh = h_hat_matrix(p)
        worst["hat"] = max(worst["hat"],
                           np.abs(hat_transform(p) @ H @ hat_transform_dual(p).T - Hh.entries).max())
        worst["detHh"] = max(worst["detHh"],
                             abs(np.linalg.det(Hh.entries) / Hh.det_closed_form - 1))
        H6 = h678_matrix(p)
        worst["det678"] = max(worst["det678"], abs(np.linalg.det(H6.entries) / H6.det_closed_form - 1))
        C = c_matrix(p, x)
        worst["C"] = max(worst["C"], np.abs(C.entries - C.entries.T).max(),
                         np.abs(C.entries[:3, 3]).max())
        worst["detC"] = max(worst["detC"], abs(np.linalg.det(C.entries) / C.det_closed_form - 1))
    elapsed = time.perf_counter() - t0
    ok = (worst["hat"] < 1e-10 and worst["detHh"] < 1e-9 and worst["det678"] < 1e-9
          and worst["C"] == 0 and worst["detC"] < 1e-9 and elapsed < 1.0)
    verdict(3, ok, ", ".join(f"{k} {v:.1e}" for k, v in worst.items()) + f", {elapsed:.2f}s")


def test_criterion_4_closed_form_monodromy(verdict):
    p = DEFAULT
    t0 = time.perf_counter()
    spec_err = max(spectrum_distance(eigenvalues(fn(p, L).entries), theoretical_spectrum(p, L))
                   for L in LOOPS for fn in (m_delta, m_hat, m_prime))
    pres = max(preservation_residual(p, L) for L in LOOPS)
    e5 = e5_vectors(p).e5
    eig = np.abs(e5 @ m_delta(p, LoopId.Rho3).entries - rho3_eigenvalue(p) * e5).max()
    rows = []
    for k in range(3, 9):
        q = p.replace(c1=1 + cmath.log(1 + 10.0 ** -k) / (2j * math.pi))
        rows.append(np.concatenate([fn(q, L).entries.ravel() for L in LOOPS
                                    for fn in (m_hat, m_prime)]))
    rows = np.array(rows)
    steps = np.abs(np.diff(rows, axis=0)).max(axis=1)
    finite = bool(np.all(np.isfinite(rows)) and np.abs(rows).max() < 1e3
                  and np.all(steps[1:] <= steps[:-1] + 1e-15))
    elapsed = time.perf_counter() - t0
    ok = spec_err < 1e-8 and pres < 1e-9 and eig < 1e-10 and finite and elapsed < 1.0
    verdict(4, ok, f"spectra {spec_err:.1e}, preservation {pres:.1e}, e5 {eig:.1e}, "
                   f"gamma1->1 finite {finite}, {elapsed:.2f}s")


def test_criterion_5_numerical_monodromy(verdict):
    p = DEFAULT
    t0 = time.perf_counter()
    conn_err = validate_connection(build_connection(p), seed=5)
    reps = {L: verify_monodromy(p, L, tol=1e-6 if L is not LoopId.Rho3 else 1e-5, seed=5)
            for L in LOOPS}
    elapsed = time.perf_counter() - t0
    diag = max(reps[L].matrix_residual for L in (LoopId.Rho1, LoopId.Rho2))
    r3 = reps[LoopId.Rho3]
    ok = (conn_err < 1e-6 and diag < 1e-6 and r3.charpoly_residual < 1e-6
          and r3.matrix_residual < 1e-5 and all(r.passed for r in reps.values())
          and elapsed < 30)
    verdict(5, ok, f"connection {conn_err:.1e}, rho1/2 {diag:.1e}, rho3 charpoly "
                   f"{r3.charpoly_residual:.1e}, rho3 matrix {r3.matrix_residual:.1e}, {elapsed:.1f}s")


def test_criterion_6_period_relations(verdict):
    x = (0.04, 0.06)
    t0 = time.perf_counter()
    ident = entry = 0.0
    for p in random_generic(606, 20):
        ident = max(ident, *(tpr_identity(p, x, k, tol=1e-10).residual for k in (1, 2, 3)))
        entry = max(entry, tpr_entry11(p, x, tol=1e-10).residual)
    elapsed = time.perf_counter() - t0
    ok = ident < 1e-9 and entry < 1e-8 and elapsed < 10
    verdict(6, ok, f"identities {ident:.1e}, entry11 {entry:.1e}, {elapsed:.2f}s")


def test_criterion_7_degenerate(verdict):
    a, c1, c2 = 0.31, 0.62, 0.79
    p = HypergeometricParams(a, degenerate_b(a, c1, c2), c1, c2)
    t0 = time.perf_counter()
    i55 = abs(delta5_self_pairing(p))
    d678 = abs(np.linalg.det(h678_matrix(p).entries))
    jordan = []
    for fn in (m_delta, m_hat, m_prime):
        M = fn(p, LoopId.Rho3).entries
        rep = jordan_check(M)
        only_one = np.abs(charpoly(M) - np.poly([1, 1, 1, 1])).max() < 1e-10
        jordan.append(bool(not rep.is_identity and rep.rank_minus_identity == 1 and only_one))
    elapsed = time.perf_counter() - t0
    ok = i55 < 1e-10 and d678 < 1e-10 and all(jordan) and elapsed < 1.0
    verdict(7, ok, f"I55 {i55:.1e}, det H678 {d678:.1e}, Jordan block {jordan}, {elapsed:.2f}s")


def test_criterion_8_cli_determinism(verdict, tmp_path):
    outs, codes = [], []
    for i in range(2):
        out = tmp_path / f"r{i}.json"
        proc = subprocess.run([sys.executable, "-m", "appellf4", "full-report", "--seed", "7",
                               "--json", "--out", str(out)], capture_output=True)
        codes.append(proc.returncode)
        outs.append(out.read_bytes())
    ok = codes == [0, 0] and outs[0] == outs[1]
    verdict(8, ok, f"exit codes {codes}, identical {outs[0] == outs[1]}")
