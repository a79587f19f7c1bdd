"""Substring compression (LZ78, LZD, LZMW) over SA, CDAWG and RLBWT indexes."""
from .cdawg import CdawgIndex
from .factorize import (
    Factorization,
    Literal,
    Lz78Factor,
    LzdFactor,
    LzmwFactor,
    compress,
    compress_lz78,
    compress_lzd,
    compress_lzmw,
)
from .index import FormatError, InvalidInput, PositionError, SaInterval, TextIndex
from .rlbwt import RlbwtIndex
from .sa import SaIndex
from .serialize import build, load, save
from .stab import StabSet

__all__ = [
    "CdawgIndex", "Factorization", "FormatError", "InvalidInput", "Literal",
    "Lz78Factor", "LzdFactor", "LzmwFactor", "PositionError", "RlbwtIndex",
    "SaIndex", "SaInterval", "StabSet", "TextIndex", "build", "compress",
    "compress_lz78", "compress_lzd", "compress_lzmw", "load", "save",
]
