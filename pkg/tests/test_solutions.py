import cmath

import mpmath
import numpy as np
import pytest

from appellf4.errors import BranchError
from appellf4.gammafn import gamma_fn
from appellf4.intersection import basis_changes, e5_vectors
from appellf4.params import HypergeometricParams
from appellf4.series import f4
from appellf4.solutions import (Basis, cycle_constants, f5, f_dual_vector, f_hat_vector,
                                f_vector, g4_constant, local_basis)

from conftest import DEFAULT, SAMPLE, random_generic

X = (0.05, 0.07)


def mg(z):
    return complex(mpmath.gamma(mpmath.mpc(complex(z).real, complex(z).imag)))


def test_local_leading_term():
    eps = 1e-8
    v = local_basis(DEFAULT, (eps, eps))
    assert v.basis is Basis.LocalPlain
    assert abs(v[0] - 1) < 10 * eps


def test_local_entry2_factorisation():
    a, b, c1, c2 = DEFAULT.as_tuple()
    v = local_basis(DEFAULT, X)
    series = f4(HypergeometricParams(a + 1 - c1, b + 1 - c1, 2 - c1, c2), X).value
    assert abs(v[1] / X[0] ** (1 - c1) - series) < 1e-13


def test_local_jets_nonsingular_at_base_point():
    J = local_basis(DEFAULT, (1 / 8, 1 / 8), jet=True)
    assert J.shape == (4, 4)
    assert np.linalg.cond(J) < 1e8


def test_f1_constant():
    a, b, c1, c2 = DEFAULT.as_tuple()
    ratio = f_vector(DEFAULT, X)[0] / f4(DEFAULT, X).value
    ref = mg(1 - c1) * mg(1 - c2) * mg(c1 + c2 - a - 1) / mg(1 - a)
    assert abs(ratio - ref) < 1e-12 * abs(ref)


def test_f2_with_independent_gamma():
    a, b, c1, c2 = SAMPLE.as_tuple()
    d2 = (mg(a + 1 - c1) * mg(b + 1 - c1) * mg(1 - b) * mg(c1 + c2 - a - 1)
          / (mg(2 - c1) * mg(c2)) * cmath.exp(-1j * cmath.pi * (c1 + c2 - a - b)))
    series = f4(HypergeometricParams(a + 1 - c1, b + 1 - c1, 2 - c1, c2), X).value
    assert abs(f_vector(SAMPLE, X)[1] - d2 * X[0] ** (1 - c1) * series) < 1e-10 * abs(d2)


def test_f4_entry_series_factor_ab_symmetric():
    # the power-times-series part is symmetric; the constant involves b alone
    u = local_basis(DEFAULT, X)[3]
    v = local_basis(DEFAULT.swap_ab(), X)[3]
    assert abs(u - v) < 1e-12 * abs(u)
    assert abs(f_vector(DEFAULT, X)[3] - cycle_constants(DEFAULT)[3] * v) < 1e-12 * abs(u)


@pytest.mark.parametrize("p", random_generic(7, 20))
def test_f_is_constant_times_local(p):
    assert np.allclose(f_vector(p, X).entries,
                       np.array(cycle_constants(p)) * local_basis(p, X).entries,
                       rtol=1e-12, atol=0)


def test_dual_first_entry():
    a, b, c1, c2 = DEFAULT.as_tuple()
    ratio = f_dual_vector(DEFAULT, X)[0] / f4(HypergeometricParams(2 - a, -b, 2 - c1, 2 - c2), X).value
    ref = mg(c1 - 1) * mg(c2 - 1) * mg(1 - c1 - c2 + a) / mg(a - 1)
    assert abs(ratio - ref) < 1e-12 * abs(ref)
    assert f4(HypergeometricParams(2 - a, -b, 2 - c1, 2 - c2), (0, 0)).value == 1


def test_dual_is_f_at_dual_parameters():
    a, b, c1, c2 = SAMPLE.as_tuple()
    q = HypergeometricParams(2 - a, -b, 2 - c1, 2 - c2)
    fv = f_dual_vector(SAMPLE, X).entries
    assert np.all(np.isfinite(fv))
    assert np.allclose(fv, f_vector(q, X).entries, rtol=1e-12, atol=0)


def test_branch_cut_rejected():
    with pytest.raises(BranchError):
        local_basis(DEFAULT, (-0.05, 0.07))


def test_hat_leading_term():
    a, b, c1, c2 = DEFAULT.as_tuple()
    eps = 1e-10
    lead = g4_constant(DEFAULT) * gamma_fn(a) * gamma_fn(b) / (gamma_fn(c1) * gamma_fn(c2))
    assert abs(f_hat_vector(DEFAULT, (eps, eps))[0] - lead) < 1e-8 * abs(lead)


@pytest.mark.parametrize("p", [DEFAULT] + random_generic(3, 5))
def test_hat_is_P_times_f(p):
    f = f_vector(p, X).entries
    rhs = basis_changes(p).P @ np.array([f[0], f[1], f[2], f5(p, X)])
    assert np.allclose(f_hat_vector(p, X).entries, rhs, rtol=1e-9, atol=0)


def test_f5_is_e5_combination():
    assert abs(f5(DEFAULT, X) - e5_vectors(DEFAULT).e5 @ f_vector(DEFAULT, X).entries) < 1e-12


def test_hat_finite_and_stable_near_integer_c1():
    u = f_hat_vector(DEFAULT.replace(c1=1 + 1e-4), X).entries
    v = f_hat_vector(DEFAULT.replace(c1=1 + 1e-5), X).entries
    w = f_hat_vector(DEFAULT.replace(c1=1), X).entries
    assert np.all(np.isfinite(w))
    assert abs(u[1] - v[1]) < 1e-3 * abs(v[1])
    assert np.allclose(v, w, rtol=1e-4, atol=0)


def test_f2_tends_to_f1hat_at_integer_c1():
    # the difference f2 - f1_hat vanishes like (1 - gamma1), keeping f2_hat finite
    diffs = []
    for k in (3, 4, 5):
        p = DEFAULT.replace(c1=1 + 10.0 ** -k)
        f = f_vector(p, X).entries
        fh1 = basis_changes(p).P[0, 0] * f[0]
        diffs.append(abs(f[1] - fh1))
    assert diffs[0] > diffs[1] > diffs[2]


def test_jet_mode_shape_and_first_row():
    J = f_hat_vector(DEFAULT, X, jet=True)
    assert J.shape == (4, 4)
    assert np.allclose(J[:, 0], f_hat_vector(DEFAULT, X).entries, rtol=1e-13, atol=0)
