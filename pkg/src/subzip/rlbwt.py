"""Run-length BWT index with LF walks, ISA samples and backward search."""
from __future__ import annotations

from bisect import bisect_right

import numpy as np

from . import _suffix
from .index import SaInterval, SuffixCursor, TextIndex, encode_text
from .sa import _to_array

DEFAULT_SAMPLE_RATE = 64


def run_length(bwt: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Maximal equal-symbol runs as (symbols, lengths)."""
    starts = np.flatnonzero(np.r_[True, bwt[1:] != bwt[:-1]])
    lengths = np.diff(np.r_[starts, len(bwt)])
    return bwt[starts].astype(np.int64), lengths.astype(np.int64)


class RlbwtCursor(SuffixCursor):
    """Cursor whose range walk also yields the substring symbols and the
    rank of the suffix right after it, so the factorizers avoid two more
    LF walks per factor."""

    __slots__ = ("_syms", "_after")

    def __init__(self, index: "RlbwtIndex", start: int, rank: int | None = None):
        self.index = index
        self.start = start
        self.rank = index.suffix_rank(start) if rank is None else rank
        self._syms = None
        self._after = None

    def range(self, length):
        index = self.index
        y = self.start + length - 1
        index._check_range(self.start, y)
        sp, ep, syms, after = index._range_walk(self.start, y)
        syms.reverse()
        self._syms = syms
        self._after = (length, after)
        return SaInterval(sp, ep - 1)

    def char(self, offset):
        syms = self._syms
        if syms is not None and offset < len(syms):
            return syms[offset]
        return self.index.char_at(self.start + offset)

    def successor(self, length):
        nxt = self.start + length
        if self._after is not None and self._after[0] == length and nxt <= self.index.n:
            return RlbwtCursor(self.index, nxt, self._after[1])
        return RlbwtCursor(self.index, nxt)


class RlbwtIndex(TextIndex):
    """FM-index over the run-length encoded BWT of ``T + sentinel``.

    Raw ranks are 0-based BWT positions; raw 0 is the sentinel suffix, so a
    normalized rank equals its raw position.  Samples hold the raw rank of
    every text position that is a multiple of the sample rate (1-based, in
    the sentinel-extended text) and of position ``m``.
    """

    backend = "rlbwt"

    def __init__(self, n, alphabet, run_syms, run_lens, sample_rate, samples):
        self.n = n
        self.m = n + 1
        self.alphabet = alphabet
        self.sample_rate = int(sample_rate)
        self.run_syms = np.asarray(run_syms, dtype=np.int64)
        self.run_lens = np.asarray(run_lens, dtype=np.int64)
        self.samples = np.asarray(samples, dtype=np.int64)
        if self.run_lens.sum() != self.m:
            raise ValueError("run lengths do not add up to n + 1")

        starts = np.zeros(len(self.run_lens), dtype=np.int64)
        np.cumsum(self.run_lens[:-1], out=starts[1:])
        self._run_start = _to_array(starts)
        self._run_sym = _to_array(self.run_syms)
        sigma = len(alphabet)
        counts = np.bincount(self.run_syms, weights=self.run_lens, minlength=sigma + 1).astype(np.int64)
        self.C = [0] + np.cumsum(counts).tolist()[:-1]
        # per symbol: BWT start of each of its runs and how many copies of
        # the symbol precede that run
        self._sym_starts = []
        self._sym_before = []
        self._sym_lens = []
        # LF of the first position in each run; LF is a shift inside a run
        base = np.zeros(len(self.run_lens), dtype=np.int64)
        for c in range(sigma + 1):
            sel = self.run_syms == c
            lens = self.run_lens[sel]
            before = np.zeros(len(lens), dtype=np.int64)
            np.cumsum(lens[:-1], out=before[1:])
            self._sym_starts.append(_to_array(starts[sel]))
            self._sym_before.append(_to_array(before))
            self._sym_lens.append(_to_array(lens))
            base[sel] = self.C[c] + before
        self._run_base = _to_array(base)
        self._samples = _to_array(self.samples)

    @classmethod
    def build(cls, data: bytes, sample_rate: int = DEFAULT_SAMPLE_RATE) -> "RlbwtIndex":
        if sample_rate < 1:
            raise ValueError("sample rate must be positive")
        codes, alphabet = encode_text(data)
        sa = _suffix.suffix_array(data)
        bwt = _suffix.bwt_from_sa(codes, sa)
        syms, lens = run_length(bwt)
        del bwt
        m = len(sa)
        isa = _suffix.inverse(sa)
        del sa
        # sampled 1-based positions s, 2s, ..., then m
        pos = np.r_[np.arange(sample_rate, m + 1, sample_rate), m]
        if len(pos) > 1 and pos[-2] == m:
            pos = pos[:-1]
        samples = isa[pos - 1]
        return cls(len(data), alphabet, syms, lens, sample_rate, samples)

    @property
    def runs(self) -> int:
        return len(self.run_lens)

    def bwt_at(self, t: int) -> int:
        return self._run_sym[bisect_right(self._run_start, t) - 1]

    def occ(self, c: int, t: int) -> int:
        """Copies of symbol ``c`` in ``BWT[0..t-1]``."""
        starts = self._sym_starts[c]
        k = bisect_right(starts, t - 1) - 1
        if k < 0:
            return 0
        return self._sym_before[c][k] + min(self._sym_lens[c][k], t - starts[k])

    def lf(self, t: int) -> int:
        """Raw rank of suffix ``i - 1`` given the raw rank ``t`` of suffix ``i``."""
        k = bisect_right(self._run_start, t) - 1
        return self._run_base[k] + t - self._run_start[k]

    def lf_step(self, raw_rank: int) -> int:
        """1-based wrapper around :meth:`lf`."""
        return self.lf(raw_rank - 1) + 1

    def _sample_at_or_after(self, pos: int) -> tuple[int, int]:
        """(position, raw rank) of the nearest sample at 1-based ``pos`` or later."""
        s = self.sample_rate
        k = (pos + s - 1) // s
        if k * s >= self.m:
            return self.m, self._samples[-1]
        return k * s, self._samples[k - 1]

    def suffix_rank(self, i):
        self._check_position(i)
        j, t = self._sample_at_or_after(i)
        run_start, run_base = self._run_start, self._run_base
        for _ in range(j - i):
            k = bisect_right(run_start, t) - 1
            t = run_base[k] + t - run_start[k]
        return t

    def _walk(self, x, y):
        """Yield ``T[y], T[y-1], ..., T[x]`` via LF from the sample past ``y``."""
        j, t = self._sample_at_or_after(y + 1)
        run_start, run_sym, run_base = self._run_start, self._run_sym, self._run_base
        for _ in range(j - y - 1):
            k = bisect_right(run_start, t) - 1
            t = run_base[k] + t - run_start[k]
        for _ in range(y - x + 1):
            k = bisect_right(run_start, t) - 1
            yield run_sym[k]
            t = run_base[k] + t - run_start[k]

    def extract(self, x, y):
        self._check_range(x, y)
        out = list(self._walk(x, y))
        out.reverse()
        return out

    def char_at(self, i):
        self._check_position(i)
        return next(self._walk(i, i))

    def backward_search(self, pattern) -> tuple[int, int]:
        """Raw half-open BWT interval of suffixes prefixed by ``pattern``."""
        sp, ep = 0, self.m
        for c in reversed(pattern):
            sp = self.C[c] + self.occ(c, sp)
            ep = self.C[c] + self.occ(c, ep)
            if sp >= ep:
                break
        return sp, ep

    def _range_walk(self, x, y):
        """One LF walk over ``T[x..y]`` from the sample past ``y``.

        Returns the raw half-open interval of ``T[x..y]``, its symbols in
        reverse, and the raw rank of suffix ``y + 1``.
        """
        j, t = self._sample_at_or_after(y + 1)
        run_start, run_sym, run_base = self._run_start, self._run_sym, self._run_base
        for _ in range(j - y - 1):
            k = bisect_right(run_start, t) - 1
            t = run_base[k] + t - run_start[k]
        after = t
        C, occ = self.C, self.occ
        sp, ep = 0, self.m
        syms = []
        for _ in range(y - x + 1):
            k = bisect_right(run_start, t) - 1
            c = run_sym[k]
            syms.append(c)
            sp = C[c] + occ(c, sp)
            ep = C[c] + occ(c, ep)
            t = run_base[k] + t - run_start[k]
        if sp >= ep:
            raise AssertionError(f"empty SA range for substring [{x}..{y}]")
        return sp, ep, syms, after

    def substring_range(self, x, y):
        self._check_range(x, y)
        sp, ep, _, _ = self._range_walk(x, y)
        return SaInterval(sp, ep - 1)

    def cursor(self, i):
        self._check_position(i)
        return RlbwtCursor(self, i)

    def invert(self) -> list[int]:
        """The sentinel-extended text (sentinel as 0) rebuilt from the runs."""
        out = []
        t = 0
        for _ in range(self.m):
            c = self.bwt_at(t)
            out.append(c)
            t = self.lf(t)
        out.reverse()
        return out[1:] + out[:1]

    def memory_bits(self, p: int = 32) -> int:
        """Runs (symbol, start), per-symbol directories and samples as
        p-bit words."""
        return p * (4 * self.runs + len(self.samples))

    def payload(self):
        return {"run_syms": self.run_syms, "run_lens": self.run_lens, "samples": self.samples}

    @classmethod
    def from_payload(cls, n, alphabet, sample_rate, arrays):
        return cls(n, alphabet, arrays["run_syms"], arrays["run_lens"], sample_rate, arrays["samples"])
