from arhe_core.errors import ConfigurationError


class InvalidThreadCountError(ConfigurationError):
    """Raised when the worker count is not a positive integer"""


class NoDeviceSelectedError(ConfigurationError):
    """Raised when the device picker is closed without a choice"""
