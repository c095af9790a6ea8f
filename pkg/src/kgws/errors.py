"""Exception taxonomy shared across the package."""


class KgwsError(Exception):
    """Base class for all package-specific failures."""


class PoleError(KgwsError):
    """Evaluation requested at (or numerically on top of) a pole."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class DivergenceError(KgwsError):
    """A series or integral has no finite value in the requested regime."""


class DegenerateError(KgwsError):
    """Root selection collapsed: the defining equation degenerates."""


class UnsupportedSigmaError(KgwsError):
    """The polynomial reduction only handles sigma(s) = s - s^2."""


class ConditionViolated(KgwsError):
    """A reality/existence inequality on the parameters fails."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class EmptySpectrum(KgwsError):
    """No level index satisfies the existence gate."""


class NonNormalizable(KgwsError):
    """The bound-state profile has no finite norm on the unit interval."""


class QuadratureFailure(KgwsError):
    """Adaptive quadrature did not reach the requested error target."""


class NoBracket(KgwsError):
    """Sign-change search found no interval to bisect."""


class StiffnessError(KgwsError):
    """Propagation blew up: non-finite values during integration."""
