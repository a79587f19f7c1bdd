"""On-disk index format.

Layout (all integers little-endian)::

    magic      8 bytes  b"SUBZIP01"
    header     <H B B Q H I H>: version, backend tag, int width p, n, sigma,
               sample rate (0 unless rlbwt), number of arrays
    alphabet   sigma bytes
    arrays     per array: <B> name length, name, <Q> count, count p-bit words
    checksum   <I> CRC-32 of everything above
"""
from __future__ import annotations

import struct
import zlib

import numpy as np

from .cdawg import CdawgIndex
from .index import FormatError, TextIndex
from .rlbwt import RlbwtIndex
from .sa import SaIndex

MAGIC = b"SUBZIP01"
VERSION = 1
_HEADER = struct.Struct("<HBBQHIH")
BACKENDS = {"sa": (1, SaIndex), "cdawg": (2, CdawgIndex), "rlbwt": (3, RlbwtIndex)}
_BY_TAG = {tag: name for name, (tag, _) in BACKENDS.items()}


def dumps(index: TextIndex, int_width: int = 32) -> bytes:
    if int_width not in (32, 64):
        raise ValueError("integer width must be 32 or 64")
    tag = BACKENDS[index.backend][0]
    arrays = index.payload()
    word = np.dtype(f"<u{int_width // 8}")
    limit = 2**int_width
    parts = [
        MAGIC,
        _HEADER.pack(VERSION, tag, int_width, index.n, index.sigma,
                     getattr(index, "sample_rate", 0), len(arrays)),
        index.alphabet,
    ]
    for name, values in arrays.items():
        values = np.asarray(values, dtype=np.int64)
        if len(values) and (values.min() < 0 or values.max() >= limit):
            raise ValueError(f"array {name!r} does not fit {int_width}-bit words")
        raw = name.encode("ascii")
        parts.append(struct.pack("<B", len(raw)) + raw + struct.pack("<Q", len(values)))
        parts.append(values.astype(word).tobytes())
    body = b"".join(parts)
    return body + struct.pack("<I", zlib.crc32(body))


def loads(blob: bytes) -> TextIndex:
    if len(blob) < len(MAGIC) + _HEADER.size + 4 or blob[:len(MAGIC)] != MAGIC:
        raise FormatError("not a subzip index file")
    body, (crc,) = blob[:-4], struct.unpack("<I", blob[-4:])
    if zlib.crc32(body) != crc:
        raise FormatError("checksum mismatch")
    pos = len(MAGIC)
    version, tag, width, n, sigma, rate, count = _HEADER.unpack_from(body, pos)
    if version != VERSION:
        raise FormatError(f"unsupported format version {version}")
    if tag not in _BY_TAG or width not in (32, 64):
        raise FormatError("corrupt header")
    pos += _HEADER.size
    alphabet = bytes(body[pos:pos + sigma])
    pos += sigma
    word = np.dtype(f"<u{width // 8}")
    arrays = {}
    try:
        for _ in range(count):
            (k,) = struct.unpack_from("<B", body, pos)
            name = body[pos + 1:pos + 1 + k].decode("ascii")
            pos += 1 + k
            (size,) = struct.unpack_from("<Q", body, pos)
            pos += 8
            end = pos + size * word.itemsize
            if end > len(body):
                raise FormatError(f"array {name!r} truncated")
            arrays[name] = np.frombuffer(body, dtype=word, count=size, offset=pos).astype(np.int64)
            pos = end
    except struct.error as exc:
        raise FormatError(f"truncated index file: {exc}") from None
    if pos != len(body):
        raise FormatError("trailing bytes after arrays")

    backend = _BY_TAG[tag]
    try:
        if backend == "sa":
            index = SaIndex.from_payload(alphabet, arrays)
        elif backend == "cdawg":
            index = CdawgIndex.from_payload(n, alphabet, arrays)
        else:
            index = RlbwtIndex.from_payload(n, alphabet, rate, arrays)
    except (KeyError, ValueError) as exc:
        raise FormatError(f"inconsistent payload: {exc}") from None
    if index.n != n:
        raise FormatError("payload length disagrees with header")
    index.int_width = width
    return index


def save(index: TextIndex, path, int_width: int = 32):
    with open(path, "wb") as f:
        f.write(dumps(index, int_width))


def load(path) -> TextIndex:
    with open(path, "rb") as f:
        return loads(f.read())


def build(data: bytes, backend: str, sample_rate: int | None = None) -> TextIndex:
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}")
    cls = BACKENDS[backend][1]
    if backend == "rlbwt" and sample_rate is not None:
        return cls.build(data, sample_rate)
    return cls.build(data)
