"""CDAWG backend: ranks and SA ranges by climbing from the sink.

Layout follows the usual node/edge split.  Nodes carry the start of their
incoming-edge group, ``max(len(v))`` and the number of paths to the sink.
Edges are grouped by child and sorted inside a group by
``min(len(parent)) + label_len``; each stores its parent, its label length and
its aggregated value (leaves hanging off lexicographically smaller siblings).
The root's outgoing edges additionally keep their first symbol.

All lengths and counts include the sentinel; node 0 is the root and the last
node is the sink.
"""
from __future__ import annotations

from bisect import bisect_left
from collections import Counter

import numpy as np
from numba import njit

from . import _suffix
from .index import SaInterval, SuffixCursor, SubzipError, TextIndex, encode_text
from .sa import _to_array


class CdawgConsistencyError(SubzipError, AssertionError):
    pass


@njit(cache=True)
def _lcp_interval_tree(lcp, m):
    """Internal suffix-tree nodes as LCP intervals (bottom-up traversal).

    Returns depth, lb, rb and parent of each internal node (node 0 is the
    root) and the parent of every leaf, indexed by raw rank.
    """
    depth = np.empty(m, np.int64)
    lb = np.empty(m, np.int64)
    rb = np.empty(m, np.int64)
    parent = np.full(m, -1, np.int64)
    leaf_parent = np.empty(m, np.int64)
    stack = np.empty(m, np.int64)
    depth[0] = 0
    lb[0] = 0
    stack[0] = 0
    top = 0
    count = 1
    for k in range(1, m):
        h = lcp[k - 1]
        last = -1
        last_lb = k - 1
        while depth[stack[top]] > h:
            node = stack[top]
            top -= 1
            rb[node] = k - 1
            if last < 0:
                leaf_parent[k - 1] = node
            else:
                parent[last] = node
            last = node
            last_lb = lb[node]
        if depth[stack[top]] < h:
            node = count
            count += 1
            depth[node] = h
            lb[node] = last_lb
            top += 1
            stack[top] = node
        if last < 0:
            leaf_parent[k - 1] = stack[top]
        else:
            parent[last] = stack[top]
    last = -1
    while top >= 0:
        node = stack[top]
        top -= 1
        rb[node] = m - 1
        if last < 0:
            leaf_parent[m - 1] = node
        else:
            parent[last] = node
        last = node
    return depth[:count], lb[:count], rb[:count], parent[:count], leaf_parent


@njit(cache=True)
def _relax_len_min(order, in_start, parent, label):
    """min(len(v)) for nodes visited in topological order."""
    V = len(order)
    len_min = np.full(V, -1, np.int64)
    len_min[order[0]] = 0
    for t in range(1, V):
        v = order[t]
        best = -1
        for k in range(in_start[v], in_start[v + 1]):
            cand = len_min[parent[k]] + label[k]
            if best < 0 or cand < best:
                best = cand
        len_min[v] = best
    return len_min


def _build_arrays(data: bytes, codes: np.ndarray):
    n = len(data)
    m = n + 1
    sa = _suffix.suffix_array(data)
    lcp = _suffix.lcp_array(data, sa)
    depth, lb, rb, parent, leaf_parent = _lcp_interval_tree(lcp, m)
    del lcp
    bwt = _suffix.bwt_from_sa(codes, sa)

    # A node X whose occurrences are all preceded by the same symbol a shares
    # its end-position set with aX, the node reached by one LF step on the
    # interval.  Following these steps leads to the class representative.
    runs = np.zeros(m, dtype=np.int64)
    np.cumsum(bwt[1:] != bwt[:-1], out=runs[1:])
    unary = runs[rb] == runs[lb]
    unary[0] = False
    del runs
    lf = np.empty(m, dtype=np.int64)
    lf[np.argsort(bwt, kind="stable")] = np.arange(m)
    del bwt
    keys = (lb.astype(np.uint64) << np.uint64(32)) | rb.astype(np.uint64)
    key_order = np.argsort(keys)
    sorted_keys = keys[key_order]
    del keys
    cand = np.flatnonzero(unary)
    nlb = lf[lb[cand]]
    nkey = (nlb.astype(np.uint64) << np.uint64(32)) | (nlb + rb[cand] - lb[cand]).astype(np.uint64)
    pos = np.searchsorted(sorted_keys, nkey)
    if np.any(pos >= len(sorted_keys)) or np.any(sorted_keys[np.minimum(pos, len(sorted_keys) - 1)] != nkey):
        raise CdawgConsistencyError("left extension of a non-left-maximal node is missing")
    rep = np.arange(len(depth), dtype=np.int64)
    rep[cand] = key_order[pos]
    del lf, sorted_keys, key_order, nlb, nkey, pos, cand
    while True:
        nxt = rep[rep]
        if np.array_equal(nxt, rep):
            break
        rep = nxt

    is_rep = ~unary
    reps = np.flatnonzero(is_rep)          # root first (id 0)
    V = len(reps) + 1
    sink = V - 1
    cid = np.full(len(depth), -1, dtype=np.int64)
    cid[reps] = np.arange(len(reps))
    node_class = cid[rep]

    len_max = np.empty(V, dtype=np.int64)
    len_max[:-1] = depth[reps]
    len_max[sink] = m
    len_min = np.full(V, np.iinfo(np.int64).max, dtype=np.int64)
    np.minimum.at(len_min, node_class, depth)
    len_min[sink] = 1
    path_count = np.empty(V, dtype=np.int64)
    path_count[:-1] = rb[reps] - lb[reps] + 1
    path_count[sink] = 1

    ext = np.zeros(m, dtype=np.uint16)
    ext[:-1] = codes

    child = np.flatnonzero((parent >= 0) & is_rep[np.maximum(parent, 0)])
    p = parent[child]
    e_src = [cid[p]]
    e_dst = [node_class[child]]
    e_len = [depth[child] - depth[p]]
    e_agg = [lb[child] - lb[p]]
    e_chr = [ext[sa[lb[child]]]]
    leaves = np.flatnonzero(is_rep[leaf_parent])
    p = leaf_parent[leaves]
    e_src.append(cid[p])
    e_dst.append(np.full(len(leaves), sink, dtype=np.int64))
    e_len.append((m - sa[leaves]) - depth[p])
    e_agg.append(leaves - lb[p])
    e_chr.append(ext[sa[leaves]])
    src = np.concatenate(e_src)
    dst = np.concatenate(e_dst)
    label = np.concatenate(e_len)
    agg = np.concatenate(e_agg)
    first = np.concatenate(e_chr)

    order = np.lexsort((len_min[src] + label, dst))
    src, dst, label, agg, first = src[order], dst[order], label[order], agg[order], first[order]
    in_start = np.searchsorted(dst, np.arange(V + 1))
    root_edges = np.flatnonzero(src == 0)
    return {
        "in_start": in_start,
        "len_max": len_max,
        "path_count": path_count,
        "parent": src,
        "label": label,
        "agg": agg,
        "root_edges": root_edges,
        "root_chars": first[root_edges].astype(np.int64),
    }, len_min


class PathRecord:
    """The unique root-to-sink path spelling one suffix.

    ``edges`` and ``nodes`` run top-down; ``nodes[k]`` is the lower end of
    ``edges[k]``.  ``prefix_lens[k]`` is the string length from the root down
    to ``nodes[k]`` and ``below_aggs[k]`` sums the aggregated values of the
    edges strictly below it.  ``rank`` is the normalized suffix rank.
    """

    __slots__ = ("start", "edges", "nodes", "prefix_lens", "below_aggs", "rank")

    def __init__(self, start, edges, nodes, prefix_lens, below_aggs, rank):
        self.start = start
        self.edges = edges
        self.nodes = nodes
        self.prefix_lens = prefix_lens
        self.below_aggs = below_aggs
        self.rank = rank

    def __len__(self):
        return len(self.edges)


class CdawgCursor(SuffixCursor):
    __slots__ = ("path",)

    def __init__(self, index: "CdawgIndex", start: int):
        self.index = index
        self.start = start
        self.path = index.climb_path(start)
        self.rank = self.path.rank

    def range(self, length):
        return self.index._locus_range(self.path, length)

    def char(self, offset):
        if offset == 0:
            return self.index._root_chars[self.path.edges[0]]
        return self.index.char_at(self.start + offset)


class CdawgIndex(TextIndex):
    backend = "cdawg"

    def __init__(self, n: int, alphabet: bytes, arrays: dict, len_min=None):
        self.n = n
        self.m = n + 1
        self.alphabet = alphabet
        self.arrays = {k: np.asarray(v, dtype=np.int64) for k, v in arrays.items()}
        a = self.arrays
        self.num_nodes = len(a["len_max"])
        self.num_edges = len(a["parent"])
        self.sink = self.num_nodes - 1
        self._in_start = _to_array(a["in_start"])
        self._len_max = _to_array(a["len_max"])
        self._path_count = _to_array(a["path_count"])
        self._parent = _to_array(a["parent"])
        self._label = _to_array(a["label"])
        self._agg = _to_array(a["agg"])
        self._key = _to_array(a["len_max"][a["parent"]] + a["label"])
        self._root_chars = dict(zip(a["root_edges"].tolist(), a["root_chars"].tolist()))
        self._len_min = None if len_min is None else np.asarray(len_min, dtype=np.int64)

    @classmethod
    def build(cls, data: bytes) -> "CdawgIndex":
        codes, alphabet = encode_text(data)
        arrays, len_min = _build_arrays(data, codes)
        return cls(len(data), alphabet, arrays, len_min)

    @property
    def len_min(self) -> np.ndarray:
        if self._len_min is None:
            a = self.arrays
            order = np.argsort(a["len_max"], kind="stable")
            self._len_min = _relax_len_min(order, a["in_start"], a["parent"], a["label"])
        return self._len_min

    @property
    def len_max(self) -> np.ndarray:
        return self.arrays["len_max"]

    @property
    def path_count(self) -> np.ndarray:
        return self.arrays["path_count"]

    @property
    def edge_count(self) -> int:
        """Number of edges, not counting the root's sentinel edge."""
        return self.num_edges - 1

    def in_edges(self, v: int) -> range:
        return range(self._in_start[v], self._in_start[v + 1])

    def climb_path(self, i: int) -> PathRecord:
        """Climb from the sink along the unique path of length ``m - i + 1``."""
        self._check_position(i)
        in_start, key, parent = self._in_start, self._key, self._parent
        label, agg = self._label, self._agg
        ell = self.m - i + 1
        v = self.sink
        edges = []
        nodes = []
        prefix = []
        below = []
        acc = 0
        while v:
            hi = in_start[v + 1]
            k = bisect_left(key, ell, in_start[v], hi)
            if k == hi:
                raise CdawgConsistencyError(f"no parent edge of node {v} for length {ell}")
            edges.append(k)
            nodes.append(v)
            prefix.append(ell)
            below.append(acc)
            acc += agg[k]
            ell -= label[k]
            v = parent[k]
        if ell != 0:
            raise CdawgConsistencyError(f"climb for suffix {i} ended at length {ell}")
        edges.reverse()
        nodes.reverse()
        prefix.reverse()
        below.reverse()
        # agg on root edges counts the sentinel leaf, which is exactly the
        # shift from raw to normalized ranks
        return PathRecord(i, edges, nodes, prefix, below, acc)

    def suffix_rank(self, i):
        return self.climb_path(i).rank

    def _locus_range(self, path: PathRecord, d: int) -> SaInterval:
        prefix = path.prefix_lens
        k = bisect_left(prefix, d)
        left = path.rank - path.below_aggs[k]
        return SaInterval(left, left + self._path_count[path.nodes[k]] - 1)

    def substring_range(self, x, y):
        self._check_range(x, y)
        return self._locus_range(self.climb_path(x), y - x + 1)

    def cursor(self, i):
        return CdawgCursor(self, i)

    def char_at(self, i):
        return self._root_chars[self.climb_path(i).edges[0]]

    def path_length_histogram(self) -> dict[int, int]:
        """Number of suffixes (sentinel included) per root-sink edge count."""
        a = self.arrays
        order = np.argsort(a["len_max"], kind="stable").tolist()
        parent = self._parent
        counts = [None] * self.num_nodes
        counts[0] = Counter({0: 1})
        for v in order[1:]:
            acc = Counter()
            for k in self.in_edges(v):
                for depth, c in counts[parent[k]].items():
                    acc[depth + 1] += c
            counts[v] = acc
        return dict(sorted(counts[self.sink].items()))

    def memory_bits(self, p: int = 32) -> int:
        """Analytical size: three p-bit integers per node and per edge plus
        the first symbols of the root edges."""
        sigma = self.sigma
        return 3 * p * (self.num_nodes + self.edge_count) + sigma * (sigma - 1).bit_length()

    def payload(self):
        return dict(self.arrays)

    @classmethod
    def from_payload(cls, n, alphabet, arrays):
        return cls(n, alphabet, arrays)
