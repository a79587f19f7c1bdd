"""LZ78, LZD and LZMW factorization of ``T[i..j]`` over any TextIndex.

The dictionary of already computed factors is never materialized as a trie.
Each dictionary string is stored as its SA range in a :class:`StabSet`, and
the longest dictionary string starting at position ``p`` is the longest entry
stabbed by ``rank(p)``.  A cap of ``j - p + 1`` keeps every factor inside the
queried substring; the last factor may therefore be shorter than a regular
one (see the factor types).

Factor ids are local to one query and start at 1; id 0 is the empty factor.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Union

from .index import FormatError, TextIndex
from .stab import StabSet

SCHEMES = ("lz78", "lzd", "lzmw")


class Literal(NamedTuple):
    symbol: int


Part = Union[int, Literal]


class Lz78Factor(NamedTuple):
    """``F[ref] + char``; ``char`` is None only for a final factor equal to
    ``F[ref]``."""

    ref: int
    char: int | None


class LzdFactor(NamedTuple):
    """Two halves, each a factor id or a literal; ``right`` is None only when
    the substring ends after the left half."""

    left: Part
    right: Part | None


class LzmwFactor(NamedTuple):
    """``F[pair] + F[pair + 1]`` when ``pair`` is set, else a single literal."""

    pair: int | None
    literal: int | None


@dataclass
class Factorization:
    scheme: str
    factors: list = field(default_factory=list)
    starts: list = field(default_factory=list)
    length: int = 0

    def __len__(self):
        return len(self.factors)

    def decode(self) -> list[int]:
        """Expand the factors back into the symbol sequence."""
        expansions = [[]]
        out = []

        def part(p):
            if isinstance(p, Literal):
                return [p.symbol]
            if not 0 <= p < len(expansions):
                raise FormatError(f"dangling reference to factor {p}")
            return expansions[p]

        for f in self.factors:
            if self.scheme == "lz78":
                exp = part(f.ref) + ([] if f.char is None else [f.char])
            elif self.scheme == "lzd":
                exp = part(f.left) + ([] if f.right is None else part(f.right))
            elif self.scheme == "lzmw":
                if f.pair is None:
                    exp = [f.literal]
                else:
                    if not 1 <= f.pair < len(expansions) - 1:
                        raise FormatError(f"dangling reference to pair {f.pair}")
                    exp = expansions[f.pair] + expansions[f.pair + 1]
            else:
                raise FormatError(f"unknown scheme {self.scheme!r}")
            expansions.append(exp)
            out.extend(exp)
        return out

    def lengths(self) -> list[int]:
        ends = self.starts[1:] + [self.starts[0] + self.length] if self.starts else []
        return [b - a for a, b in zip(self.starts, ends)]


def compress_lz78(index: TextIndex, i: int, j: int, stab: StabSet | None = None) -> Factorization:
    index._check_range(i, j)
    if stab is None:
        stab = StabSet(index.n)
    out = Factorization("lz78", length=j - i + 1)
    factors, starts = out.factors, out.starts
    dst = i
    x = 1
    cur = index.cursor(i)
    while True:
        rem = j - dst + 1
        best = stab.stab_longest(cur.rank, rem)
        starts.append(dst)
        if best.len == rem:
            factors.append(Lz78Factor(best.id, None))
            break
        size = best.len + 1
        interval = cur.range(size)
        factors.append(Lz78Factor(best.id, cur.char(best.len)))
        stab.insert(interval, size, x)
        dst += size
        x += 1
        if dst > j:
            break
        cur = cur.successor(size)
    return out


def _half(stab, cur, rem):
    """Longest dictionary string at the cursor within ``rem``, else a literal."""
    best = stab.stab_longest(cur.rank, rem)
    if best.len == 0:
        return Literal(cur.char(0)), 1
    return best.id, best.len


def compress_lzd(index: TextIndex, i: int, j: int, stab: StabSet | None = None) -> Factorization:
    index._check_range(i, j)
    if stab is None:
        stab = StabSet(index.n)
    out = Factorization("lzd", length=j - i + 1)
    factors, starts = out.factors, out.starts
    dst = i
    x = 1
    cur = index.cursor(i)
    while True:
        left, l1 = _half(stab, cur, j - dst + 1)
        starts.append(dst)
        if dst + l1 > j:
            factors.append(LzdFactor(left, None))
            break
        right, l2 = _half(stab, cur.successor(l1), j - dst - l1 + 1)
        factors.append(LzdFactor(left, right))
        size = l1 + l2
        stab.insert(cur.range(size), size, x)
        dst += size
        x += 1
        if dst > j:
            break
        cur = cur.successor(size)
    return out


def compress_lzmw(index: TextIndex, i: int, j: int, stab: StabSet | None = None) -> Factorization:
    index._check_range(i, j)
    if stab is None:
        stab = StabSet(index.n)
    out = Factorization("lzmw", length=j - i + 1)
    factors, starts = out.factors, out.starts
    dst = i
    x = 1
    cur = index.cursor(i)
    prev = None  # (cursor, length) of the previous factor
    while True:
        best = stab.stab_longest(cur.rank, j - dst + 1)
        if best.len >= 1:
            factors.append(LzmwFactor(best.id, None))
            size = best.len
        else:
            factors.append(LzmwFactor(None, cur.char(0)))
            size = 1
        starts.append(dst)
        nxt = None
        if prev is not None:
            pcur, psize = prev
            pair = psize + size
            stab.insert(pcur.range(pair), pair, x - 1)
            if dst + size <= j:
                nxt = pcur.successor(pair)
        prev = (cur, size)
        dst += size
        x += 1
        if dst > j:
            break
        cur = nxt if nxt is not None else cur.successor(size)
    return out


COMPRESSORS = {"lz78": compress_lz78, "lzd": compress_lzd, "lzmw": compress_lzmw}


def compress(index: TextIndex, scheme: str, i: int, j: int) -> Factorization:
    try:
        fn = COMPRESSORS[scheme]
    except KeyError:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}") from None
    return fn(index, i, j)
