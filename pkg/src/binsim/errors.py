"""Exception types raised by the simulator."""


class BinSimError(Exception):
    """Base class for all simulator errors."""


class PlacementExhausted(BinSimError):
    pass


class DisconnectedGraph(BinSimError):
    pass


class InvalidVertex(BinSimError):
    pass


class NegativeWeight(BinSimError):
    pass


class Unreachable(BinSimError):
    """A required vertex cannot be reached while planning a tour."""


class InvalidThresholds(BinSimError):
    pass


class TruckBusy(BinSimError):
    pass


class RouteMismatch(BinSimError):
    pass


class NotEnRoute(BinSimError):
    pass


class CapacityWouldExceed(BinSimError):
    """A pickup would overflow the truck. Indicates a planner bug."""


class ConfigError(BinSimError, ValueError):
    pass


class ParseError(ConfigError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class SchemaError(ConfigError):
    def __init__(self, key, message):
        self.key = key
        super().__init__(f"{key}: {message}")
