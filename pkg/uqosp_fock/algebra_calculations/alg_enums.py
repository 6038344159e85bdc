from enum import Enum


class Sign(Enum):
    PLUS = "+"
    MINUS = "-"

    @property
    def factor(self) -> int:
        return 1 if self is Sign.PLUS else -1

    @property
    def flipped(self) -> "Sign":
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS

    @classmethod
    def from_factor(cls, factor: int) -> "Sign":
        return cls.PLUS if factor > 0 else cls.MINUS


class Grade(Enum):
    EVEN = 0
    ODD = 1


class RewriteStrategy(Enum):
    LEFTMOST = "leftmost-innermost"
    RIGHTMOST = "rightmost-innermost"


class Status(Enum):
    PASS = "pass"
    FAIL = "fail"


class OspqError(Exception):
    """Base class of every error raised by the algebra calculations."""


class IndexRangeError(OspqError, ValueError):
    pass


class WordParseError(OspqError, ValueError):
    def __init__(self, message: str, position: int, token: str) -> None:
        super().__init__(f"{message} (token {position}: {token!r})")
        self.position = position
        self.token = token


class GuardError(OspqError, ValueError):
    pass


class UnitarityError(OspqError):
    def __init__(self, message: str, diagnostic: object) -> None:
        super().__init__(message)
        self.diagnostic = diagnostic


class RelationFamily(Enum):
    CK = "CK"
    SERRE = "SERRE"
    PRE = "PRE"
    T = "T"
    G = "G"
