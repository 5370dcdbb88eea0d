"""graph6 serialization.

Layout: a size header N(n) followed by the upper triangle of the adjacency
matrix read column by column (bit (i, j) for i < j, j = 1..n-1), packed
big-endian into 6-bit groups, each group offset by 63.
"""

from __future__ import annotations

import os
from typing import Iterable

import numpy as np

from .graph import Graph

__all__ = ["encode", "decode", "read_file", "write_file", "Graph6Error"]

_HEADER = ">>graph6<<"
_MAX_N = 68719476735
_WEIGHTS = np.array([32, 16, 8, 4, 2, 1], dtype=np.int64)


class Graph6Error(ValueError):
    pass


def _size_header(n: int) -> bytes:
    if n < 0 or n > _MAX_N:
        raise Graph6Error(f"unsupported vertex count {n}")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def encode(g: Graph) -> str:
    n = g.n
    head = _size_header(n)
    if n < 2:
        return head.decode("ascii")
    a = g.adjacency_matrix()
    # row j of the lower triangle == column j of the upper triangle
    bits = np.concatenate([a[j, :j] for j in range(1, n)]).astype(np.uint8)
    pad = (-bits.size) % 6
    if pad:
        bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    vals = bits.reshape(-1, 6) @ _WEIGHTS + 63
    return head.decode("ascii") + vals.astype(np.uint8).tobytes().decode("ascii")


def decode(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii")
    s = text.strip()
    if s.startswith(_HEADER):
        s = s[len(_HEADER):]
    data = s.encode("ascii")
    if not data:
        raise Graph6Error("empty graph6 string")
    if any(c < 63 or c > 126 for c in data):
        raise Graph6Error("byte outside the graph6 range 63..126")
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) > 1 and data[1] != 126:
        if len(data) < 4:
            raise Graph6Error("truncated size header")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        pos = 4
    else:
        if len(data) < 8:
            raise Graph6Error("truncated size header")
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
        pos = 8
    nbits = n * (n - 1) // 2
    body = np.frombuffer(data[pos:], dtype=np.uint8)
    if body.size != (nbits + 5) // 6:
        raise Graph6Error(f"expected {(nbits + 5) // 6} data bytes for n={n}, got {body.size}")
    bits = np.unpackbits((body - 63)[:, None], axis=1)[:, 2:].ravel()
    if bits[nbits:].any():
        raise Graph6Error("nonzero padding bits")
    a = np.zeros((n, n), dtype=bool)
    off = 0
    for j in range(1, n):
        a[j, :j] = bits[off:off + j]
        off += j
    a |= a.T
    return Graph.from_matrix(a)


def read_file(path) -> list[Graph]:
    """Read a newline-separated graph6 file; blank lines are skipped."""
    with open(path, "r", encoding="ascii") as fh:
        return [decode(line) for line in fh if line.strip()]


def write_file(path, graphs: Iterable[Graph]) -> None:
    """Write graphs one per line, atomically."""
    path = os.fspath(path)
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="ascii", newline="\n") as fh:
        for g in graphs:
            fh.write(encode(g) + "\n")
    os.replace(tmp, path)
