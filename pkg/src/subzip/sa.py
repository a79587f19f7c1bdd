"""Uncompressed baseline: suffix array, inverse, LCP and a min-tree over LCP."""
from __future__ import annotations

from array import array

import numpy as np

from . import _suffix
from .index import SaInterval, TextIndex, encode_text

_PAD = 2**31 - 1


def _to_array(values, typecode="l"):
    out = array(typecode)
    out.frombytes(np.ascontiguousarray(values, dtype=np.dtype(typecode)).tobytes())
    return out


class MinTree:
    """Bottom-up segment tree over an integer sequence.

    Answers range minima and "nearest position with value < d" to either side,
    both in O(log m).
    """

    def __init__(self, values: np.ndarray):
        m = len(values)
        size = 1
        while size < m:
            size *= 2
        tree = np.full(2 * size, _PAD, dtype=np.int32)
        tree[size:size + m] = values
        lo = size
        while lo > 1:
            half = lo // 2
            tree[half:lo] = np.minimum(tree[lo:2 * lo:2], tree[lo + 1:2 * lo:2])
            lo = half
        self.size = size
        self.m = m
        self.tree = _to_array(tree, "i")

    def range_min(self, a: int, b: int) -> int:
        """Minimum over 0-based ``[a..b]``."""
        tree = self.tree
        res = _PAD
        a += self.size
        b += self.size + 1
        while a < b:
            if a & 1:
                res = min(res, tree[a])
                a += 1
            if b & 1:
                b -= 1
                res = min(res, tree[b])
            a >>= 1
            b >>= 1
        return res

    def prev_less(self, pos: int, d: int) -> int:
        """Largest index ``<= pos`` holding a value ``< d``, or -1."""
        if pos < 0:
            return -1
        tree = self.tree
        i = pos + self.size
        if tree[i] >= d:
            while True:
                if i & 1 and tree[i - 1] < d:
                    i -= 1
                    break
                i >>= 1
                if i <= 1:
                    return -1
            size = self.size
            while i < size:
                i = 2 * i + 1 if tree[2 * i + 1] < d else 2 * i
        return i - self.size

    def next_less(self, pos: int, d: int) -> int:
        """Smallest index ``>= pos`` holding a value ``< d``, or -1."""
        if pos >= self.m:
            return -1
        tree = self.tree
        i = pos + self.size
        if tree[i] >= d:
            while True:
                if not i & 1 and tree[i + 1] < d:
                    i += 1
                    break
                i >>= 1
                if i <= 1:
                    return -1
            size = self.size
            while i < size:
                i = 2 * i if tree[2 * i] < d else 2 * i + 1
        return i - self.size


class SaIndex(TextIndex):
    """Suffix array backend.

    Internal arrays are 0-based over the sentinel-extended text, so raw rank
    0 is the sentinel suffix and normalized rank ``r`` is raw index ``r``.
    ``lcp[k]`` compares raw ranks ``k`` and ``k + 1``; ``lcp[0] = lcp[n] = 0``.
    """

    backend = "sa"

    def __init__(self, codes, alphabet: bytes, sa, lcp):
        self.n = len(codes)
        self.alphabet = alphabet
        self.codes = np.asarray(codes, dtype=np.uint16)
        self.sa = np.asarray(sa, dtype=np.int64)
        self.lcp = np.asarray(lcp, dtype=np.int64)
        isa = _suffix.inverse(self.sa)
        self._text = _to_array(self.codes, "H")
        self._isa = _to_array(isa, "l")
        self.rmq = MinTree(self.lcp)

    @classmethod
    def build(cls, data: bytes) -> "SaIndex":
        codes, alphabet = encode_text(data)
        sa = _suffix.suffix_array(data)
        lcp = _suffix.lcp_array(data, sa)
        return cls(codes, alphabet, sa, lcp)

    def char_at(self, i):
        self._check_position(i)
        return self._text[i - 1]

    def suffix_rank(self, i):
        self._check_position(i)
        return self._isa[i - 1]

    def psv(self, r: int, d: int) -> int:
        """``max({0} | {1 <= y < r : lcp[y] < d})`` in normalized ranks."""
        return max(self.rmq.prev_less(r - 1, d), 0)

    def nsv(self, r: int, d: int) -> int:
        """``min({n} | {r <= y < n : lcp[y] < d})`` in normalized ranks."""
        y = self.rmq.next_less(r, d)
        return self.n if y < 0 or y > self.n else y

    def substring_range(self, x, y):
        self._check_range(x, y)
        r = self._isa[x - 1]
        d = y - x + 1
        return SaInterval(self.psv(r, d) + 1, self.nsv(r, d))

    def normalized_sa(self) -> list[int]:
        """1-based start positions in rank order, sentinel excluded."""
        return (self.sa[1:] + 1).tolist()

    def normalized_lcp(self) -> list[int]:
        """``lcp[r]`` for normalized ranks ``r = 1..n-1``."""
        return self.lcp[1:self.n].tolist()

    def memory_bits(self, p: int = 32) -> int:
        """SA + ISA + LCP words, plus the text at ``ceil(lg sigma)`` bits."""
        m = self.n + 1
        return 3 * p * m + self.n * max(1, (self.sigma - 1).bit_length())

    def payload(self):
        return {"text": self.codes, "sa": self.sa, "lcp": self.lcp}

    @classmethod
    def from_payload(cls, alphabet, arrays):
        return cls(arrays["text"], alphabet, arrays["sa"], arrays["lcp"])
