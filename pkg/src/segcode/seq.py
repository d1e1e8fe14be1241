"""Symbol sequences over a finite alphabet {0, ..., q-1}.

A sequence is an immutable value type backed by ``bytes`` (one byte per
symbol), so it hashes, compares and slices cheaply, and lexicographic
order on the raw bytes coincides with symbol-wise lexicographic order.

Textual form: for q <= 10 a plain digit string ("011100010"); for larger
alphabets a comma-separated list of decimal symbols ("0,11,3").
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ParameterError


@dataclass(frozen=True, slots=True)
class Seq:
    """Immutable sequence of symbols drawn from {0, ..., q-1}."""

    data: bytes
    q: int

    def __post_init__(self):
        if not isinstance(self.data, bytes):
            object.__setattr__(self, "data", bytes(self.data))
        if not 2 <= self.q <= 256:
            raise ParameterError(f"alphabet size must be in [2, 256], got {self.q}")
        for s in self.data:
            if s >= self.q:
                raise ParameterError(f"symbol {s} out of range for q={self.q}")

    @classmethod
    def from_symbols(cls, symbols: Iterable[int], q: int) -> "Seq":
        try:
            data = bytes(symbols)
        except (ValueError, TypeError) as exc:
            raise ParameterError(f"invalid symbols: {exc}") from None
        return cls(data, q)

    @classmethod
    def parse(cls, text: str, q: int) -> "Seq":
        """Parse the textual sequence form, rejecting out-of-range symbols."""
        text = text.strip()
        if not text:
            return cls(b"", q)
        if q <= 10:
            if not text.isdigit():
                raise ParameterError(f"expected a digit string for q={q}: {text!r}")
            symbols = [int(ch) for ch in text]
        else:
            try:
                symbols = [int(tok) for tok in text.split(",")]
            except ValueError:
                raise ParameterError(f"expected comma-separated symbols: {text!r}") from None
            if any(s < 0 for s in symbols):
                raise ParameterError(f"negative symbol in {text!r}")
        return cls.from_symbols(symbols, q)

    def text(self) -> str:
        if self.q <= 10:
            return "".join(str(s) for s in self.data)
        return ",".join(str(s) for s in self.data)

    def __len__(self) -> int:
        return len(self.data)

    def __iter__(self) -> Iterator[int]:
        return iter(self.data)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Seq(self.data[item], self.q)
        return self.data[item]

    def __str__(self) -> str:
        return self.text()
