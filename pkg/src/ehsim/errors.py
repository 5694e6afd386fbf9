"""Exception types shared across the simulator."""


class SimError(Exception):
    """Base class for all simulator errors."""


class ConfigError(SimError):
    """Scenario or component configuration is invalid."""


class TraceParseError(ConfigError):
    """A power trace file could not be parsed."""


class DomainError(SimError, ValueError):
    """A query left the valid domain of a model (e.g. time outside a trace)."""


class AuditError(SimError):
    """The post-run energy audit identity failed."""

    def __init__(self, message: str, breakdown: dict | None = None):
        super().__init__(message)
        self.breakdown = breakdown or {}
