"""Exception hierarchy shared by every module."""


class EnriqError(Exception):
    """Base class for domain errors; the CLI maps these to exit code 1."""

    kind = "error"

    def to_json(self):
        return {"error": self.kind, "message": str(self)}


class InvalidClassError(EnriqError, ValueError):
    kind = "invalid-class"


class ParseError(EnriqError, ValueError):
    kind = "parse-error"

    def __init__(self, message, position, expected):
        self.position = position
        self.expected = tuple(expected)
        super().__init__(
            f"{message} at position {position} (expected {' or '.join(self.expected)})"
        )

    def to_json(self):
        out = super().to_json()
        out.update(position=self.position, expected=list(self.expected))
        return out


class CongruenceParseError(ParseError, InvalidClassError):
    """Well-formed text whose coefficients break the thirds congruence."""

    kind = "invalid-class"


class ZeroClassError(EnriqError, ValueError):
    kind = "zero-class"


class NotDefiniteError(EnriqError, ValueError):
    kind = "not-definite"


class TargetPositiveError(EnriqError, ValueError):
    kind = "target-positive"


class NonPositiveSquareError(EnriqError, ValueError):
    kind = "nonpositive-square"


class NonZeroSumError(EnriqError, ValueError):
    kind = "nonzero-sum"


class NegativeInputError(EnriqError, ValueError):
    kind = "negative-input"


class ChainStuckError(EnriqError, RuntimeError):
    kind = "chain-stuck"

    def __init__(self, message, state):
        self.state = state
        super().__init__(message)

    def to_json(self):
        out = super().to_json()
        out["state"] = self.state
        return out


class VerificationError(EnriqError, AssertionError):
    """An internal consistency check failed; always a bug."""

    kind = "internal-verification"
