"""Exception hierarchy shared by every module of the package."""


class F4Error(Exception):
    """Base class for all errors raised by appellf4."""


class DomainError(F4Error, ValueError):
    """Point lies outside the (margin-shrunk) convergence set of the series."""


class ParameterError(F4Error, ValueError):
    """A lower parameter of the series is (numerically) a nonpositive integer."""


class ConvergenceError(F4Error, ArithmeticError):
    """Series truncation order cap reached before the tail bound met the target."""


class PoleError(F4Error, ArithmeticError):
    """Gamma function argument too close to a pole."""


class BranchError(F4Error, ValueError):
    """Coordinate lies on the branch cut of the principal logarithm."""


class DegenerateError(F4Error, ArithmeticError):
    """A closed-form denominator vanishes (non-generic parameters)."""


class SingularLocusError(F4Error, ValueError):
    """Point lies on (or too close to) the singular locus R(x) = 0."""


class IntegrationError(F4Error, RuntimeError):
    """Adaptive integrator failed (step underflow or step budget exhausted)."""


class SingularApproachError(F4Error, RuntimeError):
    """Continuation path came closer to a singular divisor than allowed."""
