"""Shared types and the backend interface consumed by the factorizers.

Positions and ranks are 1-based at this interface.  Every backend appends a
sentinel (code 0) internally; the sentinel suffix always has raw rank 1 and is
hidden, so exposed ranks are ``raw - 1`` and lie in ``[1..n]``.
"""
from __future__ import annotations

import abc
from typing import NamedTuple

import numpy as np


class SubzipError(Exception):
    pass


class InvalidInput(SubzipError, ValueError):
    pass


class PositionError(SubzipError, IndexError):
    pass


class FormatError(SubzipError):
    pass


class SaInterval(NamedTuple):
    lo: int
    hi: int

    def __contains__(self, rank):
        return self.lo <= rank <= self.hi

    @property
    def width(self):
        return self.hi - self.lo + 1


def encode_text(data: bytes) -> tuple[np.ndarray, bytes]:
    """Map bytes to dense codes ``1..sigma`` (order preserving).

    Returns the code array (uint16, no sentinel) and the alphabet, where
    ``alphabet[c - 1]`` is the byte value of code ``c``.
    """
    if len(data) == 0:
        raise InvalidInput("empty text")
    if len(data) > 2**32 - 2:
        raise InvalidInput("text longer than 2^32 - 2 bytes")
    raw = np.frombuffer(bytes(data), dtype=np.uint8)
    present = np.zeros(256, dtype=bool)
    present[raw] = True
    alphabet = np.flatnonzero(present).astype(np.uint8)
    table = np.zeros(256, dtype=np.uint16)
    table[alphabet] = np.arange(1, len(alphabet) + 1, dtype=np.uint16)
    return table[raw], alphabet.tobytes()


class TextIndex(abc.ABC):
    """Read-only index over a text ``T[1..n]``.

    Subclasses provide ``suffix_rank``, ``char_at`` and ``substring_range``.
    Symbols are alphabet codes in ``[1..sigma]``; use ``symbol_bytes`` to map
    them back to the original byte values.
    """

    backend = ""

    n: int
    alphabet: bytes

    @property
    def sigma(self) -> int:
        return len(self.alphabet)

    def text_length(self) -> int:
        return self.n

    @abc.abstractmethod
    def char_at(self, i: int) -> int: ...

    @abc.abstractmethod
    def suffix_rank(self, i: int) -> int: ...

    @abc.abstractmethod
    def substring_range(self, x: int, y: int) -> SaInterval: ...

    def cursor(self, i: int) -> "SuffixCursor":
        """Rank of suffix ``i`` plus lazy ranges of its prefixes."""
        return SuffixCursor(self, i)

    def symbol_bytes(self, symbols) -> bytes:
        alphabet = self.alphabet
        try:
            return bytes(alphabet[c - 1] for c in symbols)
        except IndexError:
            raise InvalidInput("symbol outside the alphabet") from None

    def symbol_code(self, byte: int) -> int:
        k = self.alphabet.find(bytes([byte]))
        if k < 0:
            raise InvalidInput(f"byte {byte:#04x} does not occur in the text")
        return k + 1

    def extract(self, x: int, y: int) -> list[int]:
        self._check_range(x, y)
        return [self.char_at(k) for k in range(x, y + 1)]

    def _check_position(self, i):
        if not 1 <= i <= self.n:
            raise PositionError(f"position {i} outside [1..{self.n}]")

    def _check_range(self, x, y):
        if not 1 <= x <= y <= self.n:
            raise PositionError(f"interval [{x}..{y}] invalid for n={self.n}")


class SuffixCursor:
    """Generic cursor: one rank lookup, ranges computed on demand."""

    __slots__ = ("index", "start", "rank")

    def __init__(self, index: TextIndex, start: int):
        self.index = index
        self.start = start
        self.rank = index.suffix_rank(start)

    def range(self, length: int) -> SaInterval:
        return self.index.substring_range(self.start, self.start + length - 1)

    def char(self, offset: int) -> int:
        """``T[start + offset]``."""
        return self.index.char_at(self.start + offset)

    def successor(self, length: int) -> "SuffixCursor":
        """Cursor at ``start + length``; backends may reuse work from
        :meth:`range`."""
        return self.index.cursor(self.start + length)
