"""Exception hierarchy shared by the simulator modules."""


class TiadcError(Exception):
    """Base class for all simulator errors."""


class ConfigError(TiadcError, ValueError):
    """A configuration value violates a stated invariant."""


class UnsupportedOrderError(TiadcError, ValueError):
    pass


class InvalidEdgeError(TiadcError, ValueError):
    pass


class InfeasibleConditioningError(TiadcError, ValueError):
    """Conditioning parameters cannot be realized for some channel.

    ``channel`` is the offending channel index when known.
    """

    def __init__(self, message, channel=None):
        super().__init__(message)
        self.channel = channel


class InfeasibleProbabilitiesError(InfeasibleConditioningError):
    pass


class OverloadError(InfeasibleConditioningError):
    pass


class NyquistError(ConfigError):
    pass


class AnalysisError(TiadcError, ValueError):
    pass
