"""Exception types shared across the package."""

PATTERN_LENGTH_MESSAGE = "The length of the sign pattern is not correct!"


class SsrError(ValueError):
    """Base error for invalid arguments or broken contracts."""


class PatternLengthError(SsrError):
    """Sign pattern length does not match the matrix it describes."""

    def __init__(self, message: str = PATTERN_LENGTH_MESSAGE):
        super().__init__(message)


class ContractViolation(SsrError):
    """An input failed a precondition the construction relies on."""
