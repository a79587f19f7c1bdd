"""Brute-force references for tests.

Nothing here is shared with the indexes or factorizers: suffixes are sorted
by plain comparison and the three parsings walk explicit tries.  Results use
the same 1-based, sentinel-free conventions and the same factor types.
"""
from __future__ import annotations

from .factorize import Factorization, Literal, Lz78Factor, LzdFactor, LzmwFactor
from .index import SaInterval


def naive_suffix_tables(text):
    """(sa, isa, lcp) with 1-based positions and ranks; ``lcp[r-1]`` compares
    ranks ``r`` and ``r + 1``."""
    text = list(text)
    n = len(text)
    sa = sorted(range(1, n + 1), key=lambda i: text[i - 1:])
    isa = [0] * (n + 1)
    for r, i in enumerate(sa, 1):
        isa[i] = r
    lcp = []
    for a, b in zip(sa, sa[1:]):
        k = 0
        while a - 1 + k < n and b - 1 + k < n and text[a - 1 + k] == text[b - 1 + k]:
            k += 1
        lcp.append(k)
    return sa, isa[1:], lcp


def naive_range(text, x, y):
    text = list(text)
    pattern = text[x - 1:y]
    sa, _, _ = naive_suffix_tables(text)
    hits = [r for r, i in enumerate(sa, 1) if text[i - 1:i - 1 + len(pattern)] == pattern]
    assert hits == list(range(hits[0], hits[-1] + 1))
    return SaInterval(hits[0], hits[-1])


class TrieNode:
    __slots__ = ("children", "mark")

    def __init__(self):
        self.children = {}
        self.mark = None  # (len, id)


def _add(root, string, mark):
    node = root
    for c in string:
        node = node.children.setdefault(c, TrieNode())
    node.mark = mark


def _longest(root, s, pos, cap):
    """Deepest marked node along ``s[pos:pos+cap]``: (id, len) or (0, 0)."""
    best = (0, 0)
    node = root
    for k in range(cap):
        node = node.children.get(s[pos + k])
        if node is None:
            break
        if node.mark is not None:
            best = (node.mark[1], node.mark[0])
    return best


def _lz78(s):
    out = Factorization("lz78", length=len(s))
    root = TrieNode()
    pos = 0
    x = 1
    while pos < len(s):
        node = root
        ref = 0
        k = pos
        while k < len(s) and s[k] in node.children:
            node = node.children[s[k]]
            ref = node.mark[1]
            k += 1
        out.starts.append(pos + 1)
        if k == len(s):
            out.factors.append(Lz78Factor(ref, None))
            break
        out.factors.append(Lz78Factor(ref, s[k]))
        child = TrieNode()
        child.mark = (k - pos + 1, x)
        node.children[s[k]] = child
        pos = k + 1
        x += 1
    return out


def _lzd(s):
    out = Factorization("lzd", length=len(s))
    root = TrieNode()
    pos = 0
    x = 1

    def half(p):
        ident, length = _longest(root, s, p, len(s) - p)
        if length == 0:
            return Literal(s[p]), 1
        return ident, length

    while pos < len(s):
        out.starts.append(pos + 1)
        left, l1 = half(pos)
        if pos + l1 == len(s):
            out.factors.append(LzdFactor(left, None))
            break
        right, l2 = half(pos + l1)
        out.factors.append(LzdFactor(left, right))
        _add(root, s[pos:pos + l1 + l2], (l1 + l2, x))
        pos += l1 + l2
        x += 1
    return out


def _lzmw(s):
    out = Factorization("lzmw", length=len(s))
    root = TrieNode()
    pos = 0
    x = 1
    prev = None
    while pos < len(s):
        ident, length = _longest(root, s, pos, len(s) - pos)
        if length:
            out.factors.append(LzmwFactor(ident, None))
        else:
            out.factors.append(LzmwFactor(None, s[pos]))
            length = 1
        out.starts.append(pos + 1)
        if prev is not None:
            ppos, plen = prev
            _add(root, s[ppos:pos + length], (plen + length, x - 1))
        prev = (pos, length)
        pos += length
        x += 1
    return out


def trie_parse(scheme: str, s) -> Factorization:
    """Greedy parse of ``s`` (any symbol sequence); starts are 1-based in ``s``."""
    s = list(s)
    return {"lz78": _lz78, "lzd": _lzd, "lzmw": _lzmw}[scheme](s)
