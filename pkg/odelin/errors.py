"""
Exceptions raised by the odelin engine

All engine errors derive from :class:`OdelinError` so callers (the console
script, the HTTP service) can map them to exit codes and status codes.
Configuration problems keep using :mod:`configparser` errors.
"""


class OdelinError(Exception):
    """Base class of all odelin errors"""


class ODEParseError(OdelinError):
    """Input text could not be turned into an ODE problem

    :param str message:     Human readable reason
    :param int position:    0-based character offset of the problem, if known
    """

    def __init__(self, message, position=None):
        super().__init__(message)
        self.message = message
        self.position = position

    def __str__(self):
        if self.position is None:
            return self.message
        return "%s (at position %d)" % (self.message, self.position)


class NoLeaderError(OdelinError):
    """Leader, initial or separant requested for a constant"""

    def __init__(self, message="no leader"):
        super().__init__(message)


class JetOverflowError(OdelinError):
    """A total derivative would exceed the jet bound of the computation"""


class PartialDerivativeError(OdelinError):
    """Partial derivative applied to a polynomial containing jet variables"""


class ParametersPresentError(OdelinError):
    """Test I was asked to handle parameters or undetermined functions"""

    def __init__(self, message="parameters/functions present - use Test II"):
        super().__init__(message)


class InconsistentSystemError(OdelinError):
    """Janet completion produced a nonzero constant equation"""


class NonlinearSystemError(OdelinError):
    """Janet completion was given a system that is not linear"""


class InfiniteDimensionError(OdelinError):
    """The solution space of an involutive system is infinite dimensional"""


class SingularPointError(OdelinError):
    """A leading coefficient vanishes at the chosen expansion point"""


class TruncationError(OdelinError):
    """Brackets could not be re-expressed at the working series order"""


class ResourceLimitError(OdelinError):
    """A configured ceiling of the decomposition was exceeded

    :param str limit:   Name of the ceiling (branches, terms, steps)
    :param int value:   Configured value of the ceiling
    """

    def __init__(self, limit, value):
        super().__init__("resource limit exceeded: %s > %d" % (limit, value))
        self.limit = limit
        self.value = value


class UnsupportedOrderError(OdelinError):
    """The requested criterion does not apply to the order of the ODE"""
