"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes: parameter and format errors
are usage errors (2), budget overruns are resource errors (3), and
decoder contract breaches are reported as contract violations (4).
"""


class SegcodeError(Exception):
    """Base class for all package errors."""


class ParameterError(SegcodeError, ValueError):
    """An argument is outside its documented domain."""


class CodebookFormatError(SegcodeError):
    """A codebook file is malformed or fails invariant revalidation."""


class ResourceBudgetError(SegcodeError):
    """The requested computation exceeds the configured budget."""


class EmptyCodeError(SegcodeError):
    """A construction produced no codewords for the given parameters."""


class DecodeFailureError(SegcodeError):
    """A single-edit decoding step found no consistent codeword."""


class ContractViolationError(SegcodeError):
    """The received sequence is not producible under the channel contract.

    Carries the 1-based index of the segment being decoded and a short
    description of the case that fired, for diagnosability.
    """

    def __init__(self, segment: int, reason: str):
        self.segment = segment
        self.reason = reason
        super().__init__(f"segment {segment}: {reason}")
