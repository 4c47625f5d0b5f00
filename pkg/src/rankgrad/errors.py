"""Exception types shared across the package."""


class RankgradError(Exception):
    """Base class for all package-specific errors."""


class CapExceeded(RankgradError):
    """A computation would exceed a configured size cap.

    Caps are configuration, not heuristics: exceeding one is always an
    explicit error, never a silent truncation.
    """

    def __init__(self, what, size, cap):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


class NotNormal(RankgradError):
    """A subgroup required to be normal is not."""


class NotSurjective(RankgradError):
    """A homomorphism required to be onto is not."""


class EnumerationOverflow(RankgradError):
    """Coset enumeration did not complete within max_cosets.

    Signals a possibly-infinite index or a cap that is too small; it is
    never returned as an answer.
    """

    def __init__(self, max_cosets):
        self.max_cosets = max_cosets
        super().__init__(f"coset enumeration exceeded max_cosets={max_cosets}")


class IncompleteTable(RankgradError):
    """An operation needs a completed coset table."""


class DomainError(RankgradError, ValueError):
    """Arguments outside an operation's stated domain."""


class UnknownSuite(RankgradError, ValueError):
    """Verification suite name not recognized."""


class SpecFileError(RankgradError, ValueError):
    """Malformed input file; carries a line number when available."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
