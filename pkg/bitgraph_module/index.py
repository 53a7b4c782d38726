# index.py

from dataclasses import dataclass
from enum import Enum
from typing import Tuple


class IndexFormatError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Index:
    """
    Vertex index: nonnegative integer part plus a fractional digit string.

    Ordering is (int_part, frac) with frac compared as a string. That is the
    decimal order, except that 1 sorts before 1.0 although both are the same value.
    """

    int_part: int
    frac: str = ""

    def __post_init__(self):
        if self.int_part < 0:
            raise IndexFormatError(f"Negative integer part: {self.int_part}")
        if self.frac and not self.frac.isdigit():
            raise IndexFormatError(f"Fraction must be decimal digits, got {self.frac!r}")

    @property
    def is_zero(self) -> bool:
        return self.int_part == 0

    def split(self) -> Tuple["Index", "Index"]:
        """a -> (a0, a1)"""
        return Index(self.int_part, self.frac + "0"), Index(self.int_part, self.frac + "1")

    def same_value(self, other: "Index") -> bool:
        """Numeric equality: 1, 1.0 and 1.00 name the same value."""
        return self.int_part == other.int_part and self.frac.rstrip("0") == other.frac.rstrip("0")

    def __str__(self) -> str:
        return f"{self.int_part}.{self.frac}" if self.frac else str(self.int_part)

    @classmethod
    def parse(cls, text: str) -> "Index":
        text = text.strip().lstrip("±+")
        head, dot, tail = text.partition(".")
        if not head.isdigit() or (dot and not tail.isdigit()):
            raise IndexFormatError(f"Malformed index {text!r}")
        return cls(int(head), tail)


class EdgeLabel(str, Enum):
    MINUS = "-"
    ZERO = "0"
    PLUS = "+"

    @property
    def color(self) -> str:
        return LABEL_COLORS[self]

    @classmethod
    def from_product(cls, value: int) -> "EdgeLabel":
        if value > 0:
            return cls.PLUS
        if value < 0:
            return cls.MINUS
        return cls.ZERO


LABEL_COLORS = {
    EdgeLabel.PLUS: "blue",
    EdgeLabel.ZERO: "purple",
    EdgeLabel.MINUS: "red",
}

LABEL_RANK = {EdgeLabel.MINUS: 0, EdgeLabel.ZERO: 1, EdgeLabel.PLUS: 2}


def rank_fraction(rank: int, largest: int) -> str:
    """Decimal rendering of `rank`, zero-padded to the width of `largest`."""
    width = len(str(largest))
    return str(rank).zfill(width)
