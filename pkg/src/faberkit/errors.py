"""Exception types shared across the package."""


class FaberkitError(Exception):
    """Base class for all package errors."""


class ConfigurationError(FaberkitError, ValueError):
    """Invalid domain parameters, matrix input or run configuration."""


class UnsupportedDomain(FaberkitError):
    """The requested operation has no implementation for this domain family."""


class DomainContainsOrigin(FaberkitError):
    """0 lies in E, so gamma = 1/|Phi(0)| is undefined."""


class ConvergenceError(FaberkitError, ArithmeticError):
    """An iterative or series computation did not reach its tolerance."""


class IllConditioned(FaberkitError, ArithmeticError):
    pass


class SpectrumTooClose(FaberkitError):
    """An eigenvalue lies on, outside, or too close to the boundary of E."""


class SingularResolvent(FaberkitError, ArithmeticError):
    pass


class DimensionMismatch(FaberkitError, ValueError):
    pass


class EigSolverFailure(FaberkitError, ArithmeticError):
    pass
