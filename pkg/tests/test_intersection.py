import numpy as np
import pytest
from hypothesis import given

from appellf4.errors import DegenerateError, SingularLocusError
from appellf4.intersection import (CycleBasis, basis_changes, c_matrix, delta5_pairings,
                                   delta5_self_pairing, e5_vectors, h678_matrix, h_diagonal,
                                   h_hat_matrix, h_matrix, h_sub_inverse, hat_transform,
                                   hat_transform_dual)
from appellf4.params import (HypergeometricParams, circuit_constants, conjugate_params,
                             degenerate_b)

from conftest import SAMPLE, generic_params, random_generic


def test_h_is_diagonal_with_h11():
    cc = circuit_constants(SAMPLE)
    al, g1, g2 = cc.alpha, cc.gamma1, cc.gamma2
    H = h_matrix(SAMPLE)
    assert H.row_basis is CycleBasis.DeltaCycles and H.n == 4
    assert np.count_nonzero(H.entries - np.diag(np.diag(H.entries))) == 0
    ref = -(1 - al) * g1 * g2 / ((al - g1 * g2) * (1 - g1) * (1 - g2))
    assert abs(H.entries[0, 0] - ref) < 1e-14


def test_h_ab_swap_pattern():
    # a <-> b exchanges alpha and beta inside the H11 and H44 formulas
    cc = circuit_constants(SAMPLE)
    al, be, g1, g2 = cc.alpha, cc.beta, cc.gamma1, cc.gamma2
    h, hs = h_diagonal(SAMPLE), h_diagonal(SAMPLE.swap_ab())
    q = (1 - g1) * (1 - g2)
    assert abs(hs[3] - (-(al - g1 * g2) / ((1 - al) * q))) < 1e-13
    assert abs(hs[0] - (-(1 - be) * g1 * g2 / ((be - g1 * g2) * q))) < 1e-13
    # so H11(a, b) * H44(b, a) = gamma1 gamma2 / ((1 - gamma1)(1 - gamma2))^2
    assert abs(h[0] * hs[3] - g1 * g2 / q ** 2) < 1e-13


def test_e5_first_and_last_entries():
    e = e5_vectors(SAMPLE)
    for v in (e.e5, e.e5_dual):
        assert v[0] == 1 and v[3] == 1


def test_e5_dual_is_e5_at_conjugate_parameters():
    e = e5_vectors(SAMPLE)
    assert np.allclose(e.e5_dual, e5_vectors(conjugate_params(SAMPLE)).e5, atol=1e-13)


def test_delta5_pairings_from_e5():
    e = e5_vectors(SAMPLE)
    assert np.allclose(delta5_pairings(SAMPLE), h_diagonal(SAMPLE) * e.e5, atol=1e-14)
    assert abs(e.e5 @ np.diag(h_diagonal(SAMPLE)) @ e.e5_dual - delta5_self_pairing(SAMPLE)) < 1e-13


@given(generic_params())
def test_h_hat_from_h(p):
    H = h_matrix(p).entries
    lhs = hat_transform(p) @ H @ hat_transform_dual(p).T
    assert np.abs(lhs - h_hat_matrix(p).entries).max() < 1e-10 * max(1, np.abs(lhs).max())


@given(generic_params())
def test_h_hat_transpose_property(p):
    assert np.allclose(h_hat_matrix(conjugate_params(p)).entries, h_hat_matrix(p).entries.T,
                       rtol=1e-11, atol=1e-11)


@given(generic_params())
def test_determinants(p):
    for m in (h_hat_matrix(p), h678_matrix(p)):
        d = np.linalg.det(m.entries)
        assert abs(d - m.det_closed_form) < 1e-9 * abs(m.det_closed_form)


@pytest.mark.parametrize("which,idx", [(12, [0, 1]), (13, [0, 2])])
def test_sub_inverse(which, idx):
    sub = h_hat_matrix(SAMPLE).entries[np.ix_(idx, idx)]
    assert np.allclose(h_sub_inverse(SAMPLE, which), np.linalg.inv(sub), atol=1e-13)
    g = circuit_constants(SAMPLE).gamma2 if which == 12 else circuit_constants(SAMPLE).gamma1
    assert np.allclose(h_sub_inverse(SAMPLE, which, scaled=True),
                       (1 - 1 / g) * np.linalg.inv(sub), atol=1e-13)


def test_scaled_sub_inverse_finite_at_integer_c():
    p = SAMPLE.replace(c1=1)
    with pytest.raises(DegenerateError):
        h_sub_inverse(p, 13)
    assert np.all(np.isfinite(h_sub_inverse(p, 13, scaled=True)))


def test_P_entries():
    cc = circuit_constants(SAMPLE)
    al, be, g1, g2 = cc.alpha, cc.beta, cc.gamma1, cc.gamma2
    bc = basis_changes(SAMPLE)
    ref = al * be * (1 - g1) * (1 - g2) / ((1 - al) * (1 - be) * g1 * g2)
    assert abs(bc.P[0, 0] - ref) < 1e-14
    assert np.array_equal(bc.P[:3], bc.P_prime[:3])
    assert np.allclose(np.triu(bc.P, 1), 0) and np.allclose(np.triu(bc.P_prime, 1), 0)
    assert abs(np.linalg.det(bc.P)) > 1e-12


def test_c_entries():
    a, b, c1, c2 = SAMPLE.as_tuple()
    C = c_matrix(SAMPLE, (0.05, 0.07))
    assert abs(C.entries[0, 1] - 1 / ((b - c2 + 1) * (-a + c1 + c2 - 1))) < 1e-14
    assert C.entries[0, 3] == C.entries[1, 3] == C.entries[2, 3] == 0
    assert np.array_equal(C.entries, C.entries.T)


@pytest.mark.parametrize("p", random_generic(11, 20))
def test_c_determinant(p):
    x = (0.05, 0.07)
    a, b, c1, c2 = p.as_tuple()
    den = ((a - 1) * (a - c1) * (a - c2) * (-a + c1 + c2 - 1) ** 3 * (b - c1 + 1)
           * (b - c2 + 1) * (b - c1 - c2 + 2) * (1 - 0.24 + 0.05 ** 2 + 0.07 ** 2 - 2 * 0.05 * 0.07))
    d = np.linalg.det(c_matrix(p, x).entries)
    assert abs(d * den + 4 * b) < 1e-9 * abs(4 * b)


def test_c_singular_locus():
    with pytest.raises(SingularLocusError):
        c_matrix(SAMPLE, (0.25, 0.25))


def test_degenerate_denominator_raises():
    with pytest.raises(DegenerateError):
        h_matrix(SAMPLE.replace(c1=2))


def test_degenerate_stratum():
    a, c1, c2 = 0.3, 0.53, 0.67
    p = HypergeometricParams(a, degenerate_b(a, c1, c2), c1, c2)
    assert abs(delta5_self_pairing(p)) < 1e-10
    assert abs(np.linalg.det(h678_matrix(p).entries)) < 1e-10
    assert abs(h678_matrix(p).det_closed_form) < 1e-10
