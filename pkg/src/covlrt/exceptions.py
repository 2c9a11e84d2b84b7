"""Exception hierarchy.

Every error raised deliberately by the library derives from
:class:`CovLRTError`, so callers (and the CLI) can separate assumption or
numerical failures from programming errors.
"""


class CovLRTError(Exception):
    """Base class for all library errors."""


class DegenerateSampleError(CovLRTError, ValueError):
    """A sample has too few observations for the requested quantity."""


class DimensionsAssumptionError(CovLRTError, ValueError):
    """The Dimensions Assumption p < n1+n2 is violated."""

    def __init__(self, p, n1, n2, detail=""):
        self.p, self.n1, self.n2 = p, n1, n2
        msg = f"Dimensions Assumption p < n1+n2 violated: p={p}, n1={n1}, n2={n2}"
        if detail:
            msg = f"{msg} ({detail})"
        super().__init__(msg)


class SingularPooledError(DimensionsAssumptionError):
    """The pooled scatter matrix n1*S1 + n2*S2 is numerically singular."""


class CalibrationError(CovLRTError, ArithmeticError):
    """Centering parameters could not be evaluated (e.g. nonpositive variance)."""


class SpectrumIntegrityError(CovLRTError, ArithmeticError):
    """A bulk eigenvalue fell outside the open interval (0, 1)."""


class OracleError(CovLRTError, ArithmeticError):
    """Numerical quadrature failed to converge."""


class SingularLeaveOneOutError(CovLRTError, ArithmeticError):
    """A leave-one-out covariance matrix is numerically singular."""

    def __init__(self, index, msg=None):
        self.index = index
        super().__init__(msg or f"leave-one-out matrix singular when removing observation {index}")


class ScenarioFailure(CovLRTError, RuntimeError):
    """Too many Monte Carlo replicates failed numerically."""
