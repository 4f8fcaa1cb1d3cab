class ArheError(Exception):
    """Base class for every error raised by arhe-core"""


class FormatError(ArheError):
    """Raised when input data violates a format or content contract"""


class ConfigurationError(ArheError):
    """Raised when the caller supplies an invalid option, key or policy"""


class BadMagic(FormatError):
    """Raised when a container does not start with the ARHE magic bytes"""


class UnsupportedVersion(FormatError):
    """Raised when a container declares a version this library cannot read"""


class TruncatedStream(FormatError):
    """Raised when a bit or byte stream ends before a complete element"""


class InvalidHeader(FormatError):
    """Raised when container header fields violate their invariants"""


class DimensionMismatch(FormatError):
    """Raised when frame, tile or plane dimensions disagree"""


class MalformedPayload(FormatError):
    """Raised when a tile payload is complete but structurally impossible"""


class TruncatedInput(FormatError):
    """Raised when a raw YUV file holds fewer frames than requested"""


class InvalidGrid(FormatError):
    """Raised when a tile grid cannot be laid over the frame"""


class OutOfBounds(FormatError):
    """Raised when a tracking box does not fit inside the frame"""


class EmptyTrack(FormatError):
    """Raised when a ROI track has no keyframes"""


class KeystreamExhausted(FormatError):
    """Raised when a keystream is shorter than the elements it must mask"""


class NoRegion(FormatError):
    """Raised when a region-restricted metric selects no pixels"""


class InvalidKeyFile(FormatError):
    """Raised when a key file does not follow the key file grammar"""


class UnknownTier(ConfigurationError):
    """Raised when a device tier is not defined"""


class UnknownClass(ConfigurationError):
    """Raised when a sensitivity class name or id is not defined"""


class InvalidKey(ConfigurationError):
    """Raised when key material is not 64 lowercase hex characters"""


class PolicyViolationError(ConfigurationError):
    """Raised in strict mode when a policy breaks monotone nesting"""


class PolicyViolationWarning(Warning):
    """Raised when a policy breaks monotone nesting"""
