"""Raw suffix tables over the sentinel-extended text (0-based ranks)."""
import numpy as np
import pydivsufsort


def suffix_array(data: bytes) -> np.ndarray:
    """SA of ``data + sentinel`` as 0-based positions, length n + 1.

    The sentinel suffix (position n) is smallest; divsufsort already orders a
    suffix before any longer suffix it prefixes, which matches a smallest
    terminator, so the remaining order is taken verbatim.
    """
    n = len(data)
    sa = np.empty(n + 1, dtype=np.int64)
    sa[0] = n
    sa[1:] = pydivsufsort.divsufsort(bytes(data))
    return sa


def lcp_array(data: bytes, sa: np.ndarray) -> np.ndarray:
    """``lcp[k] = lcp(suffix sa[k], suffix sa[k+1])``; ``lcp[m-1] = 0``."""
    n = len(data)
    lcp = np.zeros(n + 1, dtype=np.int64)
    if n > 1:
        inner = pydivsufsort.kasai(bytes(data), sa[1:].astype(np.int64))
        lcp[1:n] = inner[: n - 1]
    return lcp


def inverse(sa: np.ndarray) -> np.ndarray:
    isa = np.empty_like(sa)
    isa[sa] = np.arange(len(sa), dtype=sa.dtype)
    return isa


def bwt_from_sa(codes: np.ndarray, sa: np.ndarray) -> np.ndarray:
    """BWT of the sentinel-extended code sequence (sentinel is code 0)."""
    ext = np.zeros(len(codes) + 1, dtype=np.uint16)
    ext[:-1] = codes
    return ext[sa - 1]
