"""Exception hierarchy for growthindex."""


class GrowthIndexError(Exception):
    """Base class for every error raised by growthindex."""


class DomainError(GrowthIndexError, ValueError):
    """A parameter lies outside the domain of an operation.

    Attributes:
        parameter: Name of the offending parameter
        value: The rejected value
    """

    def __init__(self, parameter: str, value: object, requirement: str) -> None:
        """Initialize DomainError.

        Args:
            parameter: Name of the offending parameter
            value: The rejected value
            requirement: Human readable statement of the domain
        """
        self.parameter = parameter
        self.value = value
        super().__init__(f"{parameter}={value!r} is invalid: {requirement}")


class ConstructionError(GrowthIndexError, ValueError):
    """A sequence or function failed its construction invariants."""


class HorizonError(GrowthIndexError):
    """A value would be censored by the tabulated or evaluable horizon.

    Attributes:
        requested: The index or argument that was asked for
        horizon: The largest index or argument that can be served
    """

    def __init__(self, requested: float, horizon: float, what: str = "index") -> None:
        """Initialize HorizonError.

        Args:
            requested: The index or argument that was asked for
            horizon: The largest index or argument that can be served
            what: Noun used in the message
        """
        self.requested = requested
        self.horizon = horizon
        super().__init__(f"{what} {requested:g} lies beyond the horizon {horizon:g}")


class DivergenceError(GrowthIndexError):
    """A supremum is infinite at a finite argument.

    Attributes:
        argument: The argument at which the supremum diverges
    """

    def __init__(self, argument: float) -> None:
        """Initialize DivergenceError.

        Args:
            argument: The argument at which the supremum diverges
        """
        self.argument = argument
        super().__init__(f"supremum is unbounded at t={argument:g}")


class InputFormatError(GrowthIndexError, ValueError):
    """Malformed input file.

    Attributes:
        path: File being read
        line: 1-based line number of the problem, 0 when not line specific
    """

    def __init__(self, path: str, message: str, line: int = 0) -> None:
        """Initialize InputFormatError.

        Args:
            path: File being read
            message: Description of the problem
            line: 1-based line number of the problem
        """
        self.path = path
        self.line = line
        where = f"{path}:{line}" if line else path
        super().__init__(f"{where}: {message}")


class VerificationError(GrowthIndexError):
    """Two definite verdicts contradict each other.

    Attributes:
        first: Identifier of the first verdict
        second: Identifier of the contradicting verdict
    """

    def __init__(self, first: str, second: str, detail: str = "") -> None:
        """Initialize VerificationError.

        Args:
            first: Identifier of the first verdict
            second: Identifier of the contradicting verdict
            detail: Optional extra context
        """
        self.first = first
        self.second = second
        suffix = f" ({detail})" if detail else ""
        super().__init__(f"contradiction between {first} and {second}{suffix}")


class IncompleteVerificationError(GrowthIndexError):
    """Some cases of a verification suite raised instead of reporting verdicts.

    Attributes:
        failed: Number of cases that raised
    """

    def __init__(self, failed: int, detail: str = "") -> None:
        """Initialize IncompleteVerificationError.

        Args:
            failed: Number of cases that raised
            detail: Optional extra context
        """
        self.failed = failed
        suffix = f" ({detail})" if detail else ""
        super().__init__(f"{failed} case(s) could not be checked{suffix}")
