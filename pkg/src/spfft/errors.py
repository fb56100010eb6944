"""Exception hierarchy shared by all spfft modules.

The split into validation / file-format / algorithm branches mirrors the
CLI exit codes (2 / 3 / 4).
"""


class SpfftError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(SpfftError, ValueError):
    """Bad parameters or malformed inputs (CLI exit code 2)."""


class InvalidLength(ValidationError):
    """Vector length is not a supported power of two."""


class InvalidLevel(ValidationError):
    """Folding level outside [0, log2(N)]."""


class InvalidOffset(ValidationError):
    """Spectrum index or subsampling offset out of range."""


class InvalidSupportLength(ValidationError):
    """Support length outside [1, N]."""


class AmbiguousSupport(ValidationError):
    """Window longer than half the vector: the argmax window is not unique."""


class NotInvertible(ValidationError):
    """Even integers have no inverse modulo a power of two."""


class NoVectors(ValidationError):
    """Averaging requested over an empty collection of vectors."""


class CannotCalibrate(ValidationError):
    """A target SNR cannot be realized (zero spectrum or zero noise draw)."""


class WrongDomain(ValidationError):
    """Vector file holds time-domain data where frequency-domain was expected,
    or vice versa."""


class FileFormatError(SpfftError):
    """Structurally invalid vector file (CLI exit code 3)."""


class AlgorithmError(SpfftError):
    """Reconstruction failed on the given data (CLI exit code 4)."""


class DegenerateQuotient(AlgorithmError):
    """The reference odd-indexed value vanished; the shift quotient is 0/0."""


class NoisyQuotient(AlgorithmError):
    """Shift quotient too far from a root of unity: data are inconsistent
    with the exact-spectrum assumption."""


class ZeroSignal(AlgorithmError):
    """Every odd-indexed spectrum value is zero (only possible for x = 0)."""
