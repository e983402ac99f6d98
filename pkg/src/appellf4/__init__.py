"""Appell F4: series, solution bases, intersection matrices, monodromy and period relations."""

from .errors import (BranchError, ConvergenceError, DegenerateError, DomainError,
                     F4Error, IntegrationError, ParameterError, PoleError,
                     SingularApproachError, SingularLocusError)
from .params import (HypergeometricParams, circuit_constants, conjugate_params,
                     derive_exponents, genericity_check, shifted_params)
from .series import Point2, f4, f4_jet, f4_regularized, pde_residual
from .solutions import f_dual_vector, f_hat_vector, f_vector, f5, local_basis
from .intersection import (basis_changes, c_matrix, e5_vectors, h678_matrix,
                           h_hat_matrix, h_matrix, h_sub_inverse)
from .monodromy import LoopId, apply_operator, m_delta, m_hat, m_prime
from .continuation import build_connection, continue_fundamental, verify_monodromy
from .tpr import tpr_entry11, tpr_identity

__version__ = "0.1.0"
