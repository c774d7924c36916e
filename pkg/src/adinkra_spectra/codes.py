"""Binary linear codes over GF(2): weight enumeration, parity flags, cosets.

Codewords are packed into Python ints.  The first coordinate of a length-N
word is the most significant bit, so the coordinate i (1-based) of a word
``w`` is ``w >> (N - i) & 1`` and the bit-string ``"1100"`` parses to
``0b1100``.  Lexicographic order on bit-strings coincides with integer order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import ResourceBoundError

MAX_LENGTH = 64
MAX_ENUM_LENGTH = 16


class DependentRowError(ValueError):
    """A generator row is zero or GF(2)-dependent on the rows before it."""

    def __init__(self, row_index: int, message: str):
        super().__init__(message)
        self.row_index = row_index


def weight(word: int) -> int:
    """Hamming weight of a packed codeword."""
    return word.bit_count()


def parse_word(text: str, length: int) -> int:
    if len(text) != length or set(text) - {"0", "1"}:
        raise ValueError(f"bad bit-string {text!r} for length {length}")
    return int(text, 2)


def format_word(word: int, length: int) -> str:
    return format(word, f"0{length}b")


def coordinate_mask(length: int, i: int) -> int:
    """Packed unit vector e_i, coordinates 1-based (e_1 = leftmost bit)."""
    if not 1 <= i <= length:
        raise ValueError(f"coordinate {i} out of range 1..{length}")
    return 1 << (length - i)


def _echelon(rows: Iterable[int]) -> list[int]:
    """Row-reduce over GF(2); raise on zero or dependent rows."""
    basis: list[int] = []  # kept in decreasing pivot order
    for idx, row in enumerate(rows):
        r = row
        for b in basis:
            if r >> (b.bit_length() - 1) & 1:
                r ^= b
        if r == 0:
            kind = "zero" if row == 0 else "dependent"
            raise DependentRowError(idx, f"generator row {idx} is {kind}")
        basis.append(r)
        basis.sort(reverse=True)
    return basis


@dataclass(frozen=True)
class BinaryCode:
    """An [N, k] binary linear code given by k independent generator rows."""

    length: int
    generators: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.length <= MAX_LENGTH:
            raise ValueError(f"code length must be in 1..{MAX_LENGTH}")
        full = (1 << self.length) - 1
        for idx, g in enumerate(self.generators):
            if g & ~full:
                raise ValueError(f"generator row {idx} exceeds length {self.length}")
        _echelon(self.generators)

    @classmethod
    def from_strings(cls, length: int, rows: Iterable[str]) -> "BinaryCode":
        return cls(length, tuple(parse_word(r, length) for r in rows))

    @classmethod
    def trivial(cls, length: int) -> "BinaryCode":
        return cls(length, ())

    @property
    def dimension(self) -> int:
        return len(self.generators)

    @property
    def size(self) -> int:
        return 1 << self.dimension

    def codewords(self) -> list[int]:
        """All 2^k codewords, by XOR over generator subsets."""
        words = [0]
        for g in self.generators:
            words += [w ^ g for w in words]
        return words

    def __iter__(self) -> Iterator[int]:
        return iter(self.codewords())

    def coset_representative(self, word: int) -> int:
        """Lexicographically smallest member of word + L."""
        return min(word ^ c for c in self.codewords())

    def to_json(self) -> dict:
        return {
            "n": self.length,
            "generators": [format_word(g, self.length) for g in self.generators],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BinaryCode":
        return cls.from_strings(int(obj["n"]), obj["generators"])


@dataclass(frozen=True)
class CodeReport:
    """Weight statistics for the full codeword enumeration of one code."""

    size: int
    weight_distribution: dict[int, int] = field(compare=False)
    is_even: bool = False
    is_doubly_even: bool = False

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "weight_distribution": {str(w): c for w, c in sorted(self.weight_distribution.items())},
            "is_even": self.is_even,
            "is_doubly_even": self.is_doubly_even,
        }


def analyze_code(code: BinaryCode) -> CodeReport:
    """Enumerate all codewords and report the weight distribution.

    ``is_even`` means every weight is divisible by 2, ``is_doubly_even``
    by 4; the zero code is doubly-even.
    """
    dist = Counter(weight(c) for c in code.codewords())
    is_even = all(w % 2 == 0 for w in dist)
    is_de = all(w % 4 == 0 for w in dist)
    return CodeReport(code.size, dict(dist), is_even, is_de)


def enumerate_cosets(code: BinaryCode, max_length: int = MAX_ENUM_LENGTH) -> list[int]:
    """Representatives of the 2^(N-k) cosets of the code in GF(2)^N.

    Each representative is the lexicographically smallest coset member;
    the result is sorted.  Full-space enumeration is refused above
    ``max_length``.
    """
    n = code.length
    if n > max_length:
        raise ResourceBoundError(
            f"coset enumeration needs 2^{n} words; bound is 2^{max_length}"
        )
    words = code.codewords()
    seen = bytearray(1 << n)
    reps = []
    for v in range(1 << n):
        if not seen[v]:
            reps.append(v)  # ascending scan: v is the coset minimum
            for c in words:
                seen[v ^ c] = 1
    return reps
