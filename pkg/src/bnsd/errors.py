"""Exception hierarchy shared across the package."""


class BnsdError(ValueError):
    """Base class for all errors raised by :mod:`bnsd`."""


class DimensionError(BnsdError):
    """Matrix shapes are incompatible or outside the supported sizes."""


class NormalizationError(BnsdError):
    """State amplitudes or vectors do not have unit norm."""


class DensityMatrixError(BnsdError):
    """A matrix fails one of the density-matrix invariants.

    ``code`` identifies which invariant failed.
    """

    code = "density"


class HermiticityError(DensityMatrixError):
    code = "hermiticity"


class TraceError(DensityMatrixError):
    code = "trace"


class PositivityError(DensityMatrixError):
    code = "positivity"


class ConsistencyError(BnsdError):
    """An internal numerical self-check failed."""


class HorizonTooShortError(BnsdError):
    """The crossing search reached ``t_max`` without crossing the threshold."""

    def __init__(self, t_max: float, value: float):
        self.t_max = t_max
        self.value = value
        super().__init__(
            f"|<B>| is still {value!r} at t_max={t_max!r}; increase the horizon"
        )
