"""Exception types shared across the package."""


class QcspecError(Exception):
    """Base class for all qcspec errors."""


class InvalidParameterError(QcspecError, ValueError):
    """A map-family parameter, grid spec, or numeric input is out of range."""


class DomainError(QcspecError, ValueError):
    """The requested point is outside the operation's domain of validity."""


class DegenerateMapError(QcspecError):
    """|psi_z| <= |psi_zbar| at the evaluation point; distortion undefined."""


class VacuousBoundError(QcspecError):
    """K * ||J||_inf >= 1, so the growth-gap bound gives no positive gap."""


class DegenerateTriangleError(QcspecError):
    """A triangle with (near-)zero signed area reached the assembler."""


class ConvergenceError(QcspecError):
    """An iterative solver (CG or inverse power iteration) failed to converge."""
