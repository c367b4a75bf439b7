"""graph6 and plain edge-list serialization."""

from __future__ import annotations

from typing import Iterable, TextIO

from .graph import Graph, GraphError, all_pairs, from_edge_list

GRAPH6_HEADER = ">>graph6<<"


class ParseError(GraphError):
    """Malformed serialized graph; ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


def _size_field(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(63 + ((n >> s) & 63)) for s in (30, 24, 18, 12, 6, 0))
    raise GraphError(f"graph6 cannot encode n={n}")


def encode_graph6(G: Graph) -> str:
    bits = [1 if G.has_edge(i, j) else 0 for i, j in all_pairs(G.n)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _size_field(G.n) + body


def decode_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    base = 0
    s = text.rstrip("\r\n")
    if s.startswith(GRAPH6_HEADER):
        base = len(GRAPH6_HEADER)
        s = s[base:]
    if not s:
        raise ParseError("empty graph6 string", base)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"invalid graph6 character {ch!r}", base + i)
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 4 and vals[1] < 63:
        n, pos = (vals[1] << 12) | (vals[2] << 6) | vals[3], 4
    elif len(vals) >= 8 and vals[1] == 63:
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
    else:
        raise ParseError("truncated graph6 size field", base)
    need = n * (n - 1) // 2
    nbytes = (need + 5) // 6
    if len(vals) - pos != nbytes:
        raise ParseError(
            f"graph6 body has {len(vals) - pos} bytes, expected {nbytes} for n={n}",
            base + min(len(vals), pos + nbytes),
        )
    edges = []
    for k, (i, j) in enumerate(all_pairs(n)):
        byte = vals[pos + k // 6]
        if (byte >> (5 - k % 6)) & 1:
            edges.append((i, j))
    pad = nbytes * 6 - need
    if pad and vals[-1] & ((1 << pad) - 1):
        raise ParseError("nonzero graph6 padding bits", base + len(vals) - 1)
    return from_edge_list(n, edges)


def format_edge_list(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines of ``u v``; blank lines and ``#`` comments are skipped."""
    rows: list[tuple[int, list[str]]] = []
    offset = 0
    for line in text.splitlines(keepends=True):
        body = line.split("#", 1)[0].strip()
        if body:
            rows.append((offset, body.split()))
        offset += len(line.encode())
    if not rows:
        raise ParseError("empty edge list", 0)

    def ints(off: int, toks: list[str]) -> tuple[int, int]:
        if len(toks) != 2:
            raise ParseError(f"expected two integers, got {' '.join(toks)!r}", off)
        try:
            return int(toks[0]), int(toks[1])
        except ValueError:
            raise ParseError(f"non-integer token in {' '.join(toks)!r}", off) from None

    n, m = ints(*rows[0])
    if len(rows) - 1 != m:
        raise ParseError(f"header promises {m} edges, found {len(rows) - 1}", rows[0][0])
    edges = [ints(off, toks) for off, toks in rows[1:]]
    for (off, _), (u, v) in zip(rows[1:], edges):
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ParseError(f"invalid edge ({u}, {v}) for n={n}", off)
    return from_edge_list(n, edges)


def read_graph6_lines(stream: TextIO) -> Iterable[Graph]:
    for line in stream:
        line = line.strip()
        if line:
            yield decode_graph6(line)
