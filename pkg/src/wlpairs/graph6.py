"""graph6 text encoding (short form) and pair files.

Bits are packed in the standard column order of the upper triangle,
``(0,1), (0,2), (1,2), (0,3), ...`` over 0-based indices; node ``i`` of the
encoding is node ``i + 1`` of :class:`~wlpairs.graph.Graph`.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .graph import Graph

HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _check_byte(ch: str, offset: int) -> int:
    b = ord(ch)
    if not 63 <= b <= 126:
        raise Graph6Error(f"byte {b!r} outside the graph6 range 63..126", offset)
    return b - 63


def _decode_n(s: str) -> tuple[int, int]:
    if not s:
        raise Graph6Error("empty graph6 string", 0)
    if s[0] != "~":
        return _check_byte(s[0], 0), 1
    if len(s) >= 2 and s[1] == "~":
        if len(s) < 8:
            raise Graph6Error("truncated 8-byte length header", len(s))
        vals = [_check_byte(s[i], i) for i in range(2, 8)]
        pos = 8
    else:
        if len(s) < 4:
            raise Graph6Error("truncated 4-byte length header", len(s))
        vals = [_check_byte(s[i], i) for i in range(1, 4)]
        pos = 4
    n = 0
    for v in vals:
        n = (n << 6) | v
    return n, pos


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def _triu_order(n: int) -> tuple[np.ndarray, np.ndarray]:
    # column-major upper triangle: for j in 1..n-1, for i in 0..j-1
    j, i = np.triu_indices(n, 1)[::-1]
    order = np.lexsort((i, j))
    return i[order], j[order]


def parse_graph6(line: str) -> Graph:
    s = line.rstrip("\r\n")
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    n, pos = _decode_n(s)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    for k in range(pos, min(len(s), pos + nbytes)):
        _check_byte(s[k], k)
    if len(s) < pos + nbytes:
        raise Graph6Error(f"expected {nbytes} edge bytes for n={n}, found {len(s) - pos}", len(s))
    if len(s) > pos + nbytes:
        raise Graph6Error("trailing garbage after edge data", pos + nbytes)
    vals = np.frombuffer(s[pos:].encode("ascii"), dtype=np.uint8) - 63
    bits = np.unpackbits(vals[:, None], axis=1)[:, 2:].reshape(-1)
    if bits[nbits:].any():
        raise Graph6Error("nonzero padding bits", len(s) - 1)
    adj = np.zeros((n, n), dtype=np.int8)
    if nbits:
        i, j = _triu_order(n)
        on = bits[:nbits].astype(bool)
        adj[i[on], j[on]] = 1
        adj[j[on], i[on]] = 1
    return Graph.from_adjacency(adj)


def write_graph6(g: Graph) -> str:
    n = g.n
    nbits = n * (n - 1) // 2
    out = _encode_n(n)
    if nbits == 0:
        return out
    i, j = _triu_order(n)
    bits = g.adjacency()[i, j].astype(np.uint8)
    pad = (-nbits) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)]).reshape(-1, 6)
    vals = bits @ (1 << np.arange(5, -1, -1))
    return out + "".join(chr(int(v) + 63) for v in vals)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    """Parse a graph6 stream, skipping blank lines; a line-number prefix is added to errors."""
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            yield parse_graph6(line)
        except Graph6Error as exc:
            raise Graph6Error(f"line {lineno}: {exc}", exc.offset) from None


def read_graph6_file(path: str | Path) -> list[Graph]:
    with open(path, encoding="ascii") as fh:
        return list(read_graph6_lines(fh))


def write_graph6_file(path: str | Path, graphs: Iterable[Graph]) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for g in graphs:
            fh.write(write_graph6(g) + "\n")
