"""Exception hierarchy shared by the whole package.

Every error carries a stable ``code`` string so the CLI and the HTTP
service can map failures onto the wire format without inspecting types.
"""


class EntwineError(Exception):
    """Base class for all package errors."""

    #: wire-level error code; subclasses override
    code = "INTERNAL"

    def __init__(self, message: str, path: str | None = None):
        super().__init__(message)
        self.message = message
        self.path = path


# ---------------------------------------------------------------------------
# linear-algebra kernel

class DimensionMismatch(EntwineError):
    code = "VALIDATION"


class NotHermitian(EntwineError):
    code = "VALIDATION"


class NoConvergence(EntwineError):
    code = "INTERNAL"


class NonCommuting(EntwineError):
    code = "NON_COMMUTING"


# ---------------------------------------------------------------------------
# algebra / representation layer

class BadParameter(EntwineError):
    code = "VALIDATION"


class NotClosed(EntwineError):
    code = "VALIDATION"


class WrongNormalization(EntwineError):
    code = "VALIDATION"


class JacobiViolation(EntwineError):
    code = "VALIDATION"


class AlgebraMismatch(EntwineError):
    code = "VALIDATION"


class UnknownIrrep(EntwineError):
    code = "VALIDATION"


class CommutantFailure(EntwineError):
    code = "INTERNAL"


class UnsupportedAlgebra(EntwineError):
    code = "VALIDATION"


# ---------------------------------------------------------------------------
# questions, scenarios, sessions

class NotNormalized(EntwineError):
    code = "VALIDATION"


class LengthMismatch(EntwineError):
    code = "VALIDATION"


class SchemaError(EntwineError):
    code = "SCHEMA"


class ValidationError(EntwineError):
    code = "VALIDATION"


class UnknownName(EntwineError):
    code = "UNKNOWN_NAME"


class UnknownSession(EntwineError):
    code = "UNKNOWN_SESSION"


#: the complete set of wire codes, in the order they are documented
API_ERROR_CODES = (
    "SCHEMA",
    "VALIDATION",
    "UNKNOWN_NAME",
    "UNKNOWN_SESSION",
    "NON_COMMUTING",
    "INTERNAL",
)
