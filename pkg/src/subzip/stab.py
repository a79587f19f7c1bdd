"""Weighted laminar SA-rank intervals with capped longest-match stabbing.

Every stored string is a substring of the text, so its interval is the SA
range of all suffixes it prefixes.  Two such ranges are equal, disjoint or
nested, and a strictly inner range always belongs to a strictly longer
string.  Hence the stored intervals containing a rank ``q`` form a chain whose
lengths grow inwards, and the longest stored prefix of suffix ``q`` that
fits a cap is found by starting at the innermost interval and walking out.

Intervals live in a splay tree keyed by left end.  A node keeps the sorted
right ends sharing its left end; ``agg`` is the largest right end in its
subtree, which lets "rightmost left end <= x whose interval reaches h" run
as a single descent.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right, insort
from typing import NamedTuple

from .index import SaInterval

_INF = float("inf")


class LaminarityError(AssertionError):
    pass


class StabEntry(NamedTuple):
    interval: SaInterval
    len: int
    id: int


class _Node:
    __slots__ = ("key", "his", "agg", "left", "right", "parent")

    def __init__(self, key, hi, parent=None):
        self.key = key
        self.his = [hi]
        self.agg = hi
        self.left = None
        self.right = None
        self.parent = parent


class StabSet:
    """Dynamic dictionary of (interval, length, id) entries.

    Created with the seed entry ``([1..n], 0, 0)`` standing for the empty
    factor, so every query has an answer.
    """

    def __init__(self, n: int, check: bool = True):
        if n < 1:
            raise ValueError("universe must be non-empty")
        self.n = n
        self.check = check
        self._root = None
        self._lists: dict[tuple[int, int], list[tuple[int, int]]] = {}
        self._size = 0
        self.insert(SaInterval(1, n), 0, 0)

    def __len__(self):
        return self._size

    # splay tree plumbing

    def _splay(self, x):
        # bottom-up splay with the rotations and max updates inlined; this
        # is the hot loop of every query
        while True:
            p = x.parent
            if p is None:
                break
            g = p.parent
            if g is None:
                steps = (x,)
            elif (g.left is p) != (p.left is x):
                steps = (x, x)
            else:
                steps = (p, x)
            for y in steps:
                q = y.parent
                h = q.parent
                if q.left is y:
                    q.left = b = y.right
                    y.right = q
                else:
                    q.right = b = y.left
                    y.left = q
                if b is not None:
                    b.parent = q
                q.parent = y
                y.parent = h
                if h is not None:
                    if h.left is q:
                        h.left = y
                    else:
                        h.right = y
                # y now spans q's old subtree
                y.agg = q.agg
                agg = q.his[-1]
                c = q.left
                if c is not None and c.agg > agg:
                    agg = c.agg
                c = q.right
                if c is not None and c.agg > agg:
                    agg = c.agg
                q.agg = agg
        self._root = x

    def _rightmost(self, bound, need):
        """Node with the largest key ``<= bound`` and some right end
        ``>= need``, or None."""
        x = self._root
        last = None
        spine = []
        while x is not None:
            last = x
            if x.key <= bound:
                spine.append(x)
                x = x.right
            else:
                x = x.left
        found = None
        for c in reversed(spine):
            if c.his[-1] >= need:
                found = c
                break
            y = c.left
            if y is not None and y.agg >= need:
                while True:
                    r = y.right
                    if r is not None and r.agg >= need:
                        y = r
                    elif y.his[-1] >= need:
                        break
                    else:
                        y = y.left
                found = y
                break
        if found is not None:
            self._splay(found)
        elif last is not None:
            self._splay(last)
        return found

    def _add_interval(self, lo, hi):
        x = self._root
        if x is None:
            self._root = _Node(lo, hi)
            return
        while True:
            if lo == x.key:
                insort(x.his, hi)
                break
            nxt = x.left if lo < x.key else x.right
            if nxt is None:
                node = _Node(lo, hi, x)
                if lo < x.key:
                    x.left = node
                else:
                    x.right = node
                x = node
                break
            x = nxt
        # inserting only raises maxima on the search path
        y = x
        while y is not None and y.agg < hi:
            y.agg = hi
            y = y.parent
        self._splay(x)

    # public operations

    def insert(self, interval, length: int, ident: int):
        lo, hi = interval
        if not 1 <= lo <= hi <= self.n:
            raise LaminarityError(f"interval [{lo}..{hi}] outside [1..{self.n}]")
        key = (lo, hi)
        lst = self._lists.get(key)
        if lst is None:
            if self.check:
                self._check_laminar(lo, hi)
            self._lists[key] = [(length, ident)]
            self._add_interval(lo, hi)
        else:
            insort(lst, (length, ident))
        self._size += 1

    def _check_laminar(self, lo, hi):
        if self._root is None:
            return
        j = self._rightmost(lo - 1, lo)
        if j is not None:
            inner = j.his[bisect_left(j.his, lo)]
            if inner < hi:
                raise LaminarityError(f"[{lo}..{hi}] crosses [{j.key}..{inner}]")
        k = self._rightmost(hi, hi + 1)
        if k is not None and k.key > lo:
            raise LaminarityError(f"[{lo}..{hi}] crosses [{k.key}..{k.his[-1]}]")

    def stab_longest(self, q: int, cap=_INF) -> StabEntry:
        """Longest entry whose interval contains ``q`` and whose length is at
        most ``cap``; ties go to the larger id."""
        bound = need = q
        probe = (cap, _INF)
        while True:
            node = self._rightmost(bound, need)
            if node is None:
                raise LaminarityError(f"no interval contains rank {q}")
            his = node.his
            lo = node.key
            for k in range(bisect_left(his, need), len(his)):
                lst = self._lists[(lo, his[k])]
                j = bisect_right(lst, probe) - 1
                if j >= 0:
                    length, ident = lst[j]
                    return StabEntry(SaInterval(lo, his[k]), length, ident)
            need = his[-1]
            bound = lo - 1

    def entries(self) -> list[StabEntry]:
        out = [
            StabEntry(SaInterval(lo, hi), length, ident)
            for (lo, hi), lst in self._lists.items()
            for length, ident in lst
        ]
        out.sort(key=lambda e: e.id)
        return out

    def validate(self):
        """Full quadratic check of laminarity and inward length growth."""
        keys = list(self._lists)
        for a in keys:
            for b in keys:
                if a == b:
                    continue
                (alo, ahi), (blo, bhi) = a, b
                if ahi < blo or bhi < alo:
                    continue
                if alo <= blo and bhi <= ahi:
                    if max(self._lists[a])[0] >= min(self._lists[b])[0]:
                        raise LaminarityError(f"lengths do not grow from {a} into {b}")
                elif not (blo <= alo and ahi <= bhi):
                    raise LaminarityError(f"{a} and {b} overlap")
