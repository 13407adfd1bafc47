"""Text formats: edge lists, graph6 and DOT."""
from __future__ import annotations

from typing import Iterable, List

from .graph import Graph, GraphError


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None, source: str = "<input>"):
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)
        self.line = line


def parse_edge_list(text: str, source: str = "<input>") -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v`` with 0-based ids."""
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty input, expected header 'n m'", None, source)
    lineno, head = lines[0]
    try:
        n, m = (int(t) for t in head.split())
    except ValueError:
        raise ParseError(f"bad header {head!r}, expected 'n m'", lineno, source) from None
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header declares {m} edges but {len(body)} edge lines follow", lineno, source)
    edges = []
    seen = set()
    for lineno, ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {ln!r}", lineno, source)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer vertex in {ln!r}", lineno, source) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex out of range 0..{n - 1} in {ln!r}", lineno, source)
        if u == v:
            raise ParseError(f"self-loop {ln!r}", lineno, source)
        if (min(u, v), max(u, v)) in seen:
            raise ParseError(f"parallel edge {ln!r}", lineno, source)
        seen.add((min(u, v), max(u, v)))
        edges.append((u, v))
    return Graph(range(n), edges)


def format_edge_list(g: Graph) -> str:
    dg, _ = g.dense()
    lines = [f"{dg.n} {dg.m}"] + [f"{u} {v}" for u, v in dg.edges]
    return "\n".join(lines) + "\n"


def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def to_graph6(g: Graph, header: bool = False) -> str:
    """graph6 string; vertices are taken in sorted id order."""
    dg, _ = g.dense()
    n = dg.n
    bits = [1 if dg.has_edge(i, j) else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    data = bytes(
        63 + sum(b << (5 - k) for k, b in enumerate(bits[i:i + 6])) for i in range(0, len(bits), 6)
    )
    out = (_encode_n(n) + data).decode("ascii")
    return (">>graph6<<" if header else "") + out


def from_graph6(s: str) -> Graph:
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= x <= 63 for x in data):
        raise ParseError(f"invalid graph6 character in {s!r}")
    if not data:
        raise ParseError("empty graph6 string")
    if data[0] <= 62:
        n, rest = data[0], data[1:]
    elif len(data) >= 4 and data[1] <= 62:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        rest = data[4:]
    else:
        if len(data) < 8:
            raise ParseError("truncated graph6 size field")
        n = 0
        for x in data[2:8]:
            n = (n << 6) | x
        rest = data[8:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(rest) != need:
        raise ParseError(f"graph6 body has {len(rest)} bytes, expected {need} for n={n}")
    bits = [(x >> (5 - k)) & 1 for x in rest for k in range(6)]
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                edges.append((i, j))
            pos += 1
    return Graph(range(n), edges)


def read_graphs(text: str, source: str = "<input>") -> List[Graph]:
    """Read one edge-list graph, or any number of graph6 lines."""
    stripped = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if stripped and (stripped[0].startswith(">>graph6<<") or len(stripped[0].split()) == 1):
        out = []
        for i, ln in enumerate(stripped):
            try:
                out.append(from_graph6(ln))
            except ParseError as exc:
                raise ParseError(str(exc), i + 1, source) from None
        return out
    return [parse_edge_list(text, source)]


def to_dot(g: Graph, name: str = "G", highlight: Iterable[int] = ()) -> str:
    hl = set(highlight)
    lines = [f"graph {name} {{"]
    for v in g.vertices:
        attrs = [f'label="{g.label(v)}"']
        if v in hl:
            attrs.append("style=filled")
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for u, v in g.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
