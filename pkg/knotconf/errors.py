from typing import Optional


class KnotconfError(Exception):
    """Base class for errors raised by the engine."""

    exit_code: int = 1
    """Process exit status the command line reports for this error."""

    def record(self) -> dict:
        """Build the machine-readable error record for the command line.

        Returns:
            dict: The error name, message and exit status.
        """
        return {
            "error": type(self).__name__,
            "message": str(self),
            "exit_code": self.exit_code,
        }


class ParseError(KnotconfError, ValueError):
    """Malformed expression, stratum label or pairing table."""

    exit_code = 3

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        if line is not None:
            message = "line {}: {}".format(line, message)
        super().__init__(message)
        self.line = line

    def record(self) -> dict:
        record = super().record()
        if self.line is not None:
            record["line"] = self.line
        return record


class DomainError(KnotconfError, ValueError):
    """Input outside the domain of an operation."""

    exit_code = 4


class MissingPairingError(KnotconfError, KeyError):
    """A pairing table has no entry for a key needed in strict mode."""

    exit_code = 5

    def __str__(self) -> str:
        # KeyError would otherwise repr() the message.
        return str(self.args[0]) if self.args else ""


class UnsupportedArgumentError(KnotconfError):
    """The operation is not defined for the given parameters."""

    exit_code = 6


class UsageError(KnotconfError):
    """Unknown flag, missing argument or missing subcommand."""

    exit_code = 2


EXIT_CODES = {
    0: "success",
    UsageError.exit_code: "usage error",
    ParseError.exit_code: "parse error",
    DomainError.exit_code: "domain error",
    MissingPairingError.exit_code: "missing pairing entry (strict mode)",
    UnsupportedArgumentError.exit_code: "unsupported argument",
}
