"""Brute-force ground truth: exact pathwidth, head vertices, strongly chordal
treewidth, chordless cycles, minors by operation search, and exhaustive
small-graph enumeration.

Everything here fails loudly past its size cap instead of approximating.
"""
from __future__ import annotations

import os
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .chordal import is_chordal, is_strongly_chordal
from .graph import Graph, GraphError, canonical_form, canonical_graph, max_clique_size, one_step_minors

PATHWIDTH_CAP = 22
HEAD_ORACLE_CAP = 20
CYCLE_ENUM_CAP = 12
NONEDGE_CAP = 20
MINOR_ORACLE_CAP = 9


class OracleLimitError(GraphError):
    pass


def _check(size: int, cap: int, what: str) -> None:
    if size > cap:
        raise OracleLimitError(f"{what}: size {size} exceeds oracle cap {cap}")


# ---------------------------------------------------------------------------
# Vertex separation subset search


def _masks(g: Graph) -> Tuple[List[int], List[int]]:
    vs = list(g.vertices)
    idx = {v: i for i, v in enumerate(vs)}
    nb = [0] * len(vs)
    for v in vs:
        for w in g.neighbors(v):
            nb[idx[v]] |= 1 << idx[w]
    return vs, nb


def _boundary(nb: List[int], s: int) -> int:
    out = 0
    x = s
    while x:
        low = x & -x
        i = low.bit_length() - 1
        if nb[i] & ~s:
            out |= low
        x ^= low
    return out


def _separation_order(nb: List[int], k: int, start: Optional[int] = None) -> Optional[List[int]]:
    """An ordering whose every prefix has at most k boundary vertices, or None.

    Adding a vertex whose neighbours are all placed never hurts, so such
    vertices are absorbed greedily before branching.
    """
    n = len(nb)
    full = (1 << n) - 1
    dead = set()

    def close(s: int, order: List[int]) -> int:
        changed = True
        while changed:
            changed = False
            for i in range(n):
                if not (s >> i) & 1 and nb[i] & ~s == 0:
                    s |= 1 << i
                    order.append(i)
                    changed = True
        return s

    def dfs(s: int, order: List[int]) -> bool:
        mark = len(order)
        s = close(s, order)
        if s == full:
            return True
        if s in dead:
            del order[mark:]
            return False
        for i in range(n):
            if (s >> i) & 1:
                continue
            t = s | (1 << i)
            if bin(_boundary(nb, t)).count("1") <= k:
                order.append(i)
                if dfs(t, order):
                    return True
                order.pop()
        dead.add(s)
        del order[mark:]
        return False

    order: List[int] = []
    if start is None:
        return order if dfs(0, order) else None
    order.append(start)
    return order if dfs(1 << start, order) else None


def bags_from_order(g: Graph, order: Sequence[int]) -> List[frozenset]:
    """Path bags of a vertex ordering: each vertex plus the placed vertices
    that still have unplaced neighbours."""
    placed = set()
    bags = []
    for v in order:
        boundary = {x for x in placed if not g.neighbors(x) <= placed}
        bags.append(frozenset(boundary | {v}))
        placed.add(v)
    # drop bags swallowed by a neighbour bag; the first bag keeps or passes on its content
    changed = True
    while changed and len(bags) > 1:
        changed = False
        for i, b in enumerate(bags):
            if (i + 1 < len(bags) and b <= bags[i + 1]) or (i > 0 and b <= bags[i - 1]):
                del bags[i]
                changed = True
                break
    return bags


def pathwidth_exact(g: Graph, k_max: int = 4) -> Optional[int]:
    """Exact pathwidth, or None when it exceeds ``k_max``."""
    _check(g.n, PATHWIDTH_CAP, "pathwidth_exact")
    if g.m == 0:
        return 0
    _, nb = _masks(g)
    for k in range(1, k_max + 1):
        if _separation_order(nb, k) is not None:
            return k
    return None


def optimal_path_bags(g: Graph, k: int, first: Optional[int] = None) -> Optional[List[frozenset]]:
    """Bags of a path decomposition of width <= k, with ``first`` in the first bag."""
    _check(g.n, PATHWIDTH_CAP, "optimal_path_bags")
    vs, nb = _masks(g)
    start = None if first is None else vs.index(first)
    order = _separation_order(nb, k, start)
    if order is None:
        return None
    return bags_from_order(g, [vs[i] for i in order])


def head_vertex_oracle(b: Graph, v: int):
    """A width-2 path decomposition with v in its first bag, or None."""
    from .decomp import Decomposition

    _check(b.n, HEAD_ORACLE_CAP, "head_vertex_oracle")
    if v not in b:
        raise GraphError(f"vertex {v} not in graph")
    bags = optimal_path_bags(b, 2, v)
    if bags is None:
        return None
    return Decomposition.path(bags)


# ---------------------------------------------------------------------------
# Strongly chordal supergraphs


def _max_edges_chordal(n: int, c: int) -> int:
    if n <= c:
        return n * (n - 1) // 2
    return (c - 1) * n - c * (c - 1) // 2


def sc_supergraph_search(g: Graph, omega_cap: int) -> Optional[Graph]:
    """A strongly chordal supergraph on the same vertices with clique number <= cap."""
    if max_clique_size(g) > omega_cap:
        return None
    if is_strongly_chordal(g) is not None:
        return g
    nonedges = g.complement_edges()
    _check(len(nonedges), NONEDGE_CAP, "sc_supergraph_search")
    budget = _max_edges_chordal(g.n, omega_cap) - g.m
    if budget < 0:
        return None
    adj = {v: set(g.neighbors(v)) for v in g.vertices}

    def current() -> Graph:
        return Graph.from_adjacency(adj)

    def dfs(start: int, left: int) -> Optional[Graph]:
        h = current()
        if is_chordal(h) is not None and is_strongly_chordal(h) is not None:
            return h
        if left == 0:
            return None
        for j in range(start, len(nonedges)):
            u, v = nonedges[j]
            common = adj[u] & adj[v]
            if common and 2 + max_clique_size(h.subgraph(common)) > omega_cap:
                continue
            if not common and omega_cap < 2:
                continue
            adj[u].add(v)
            adj[v].add(u)
            found = dfs(j + 1, left - 1)
            adj[u].discard(v)
            adj[v].discard(u)
            if found is not None:
                return found
        return None

    return dfs(0, budget)


def sctw_exact(g: Graph) -> int:
    """Least k with a strongly chordal supergraph of clique number k+1."""
    _check(len(g.complement_edges()), NONEDGE_CAP, "sctw_exact")
    if g.n == 0:
        return 0
    lo = max(1, max_clique_size(g))
    for cap in range(lo, g.n + 1):
        if sc_supergraph_search(g, cap) is not None:
            return cap - 1
    return g.n - 1


# ---------------------------------------------------------------------------
# Chordless cycles


def chordless_cycles_enum(g: Graph) -> List[Tuple[int, ...]]:
    """Every chordless cycle once, starting at its least vertex, second vertex < last."""
    _check(g.n, CYCLE_ENUM_CAP, "chordless_cycles_enum")
    out = []
    for s in g.vertices:
        def grow(path: List[int]) -> None:
            last = path[-1]
            for x in sorted(g.neighbors(last)):
                if x <= s or x in path:
                    continue
                if any(g.has_edge(x, p) for p in path[1:-1]):
                    continue
                if g.has_edge(x, s):
                    if len(path) >= 2 and path[1] < x:
                        out.append(tuple(path + [x]))
                    continue
                grow(path + [x])

        for p1 in sorted(g.neighbors(s)):
            if p1 > s:
                grow([s, p1])
    return sorted(out, key=lambda c: (len(c), c))


# ---------------------------------------------------------------------------
# Minors by operation search


def minor_oracle(host: Graph, pattern: Graph, root: Optional[int] = None, pattern_root: Optional[int] = None) -> bool:
    """Is pattern reachable from host by deletions and contractions?

    Searches the space of one-step minors memoised by canonical form; with
    roots, the host root is never deleted and keeps its name when contracted.
    """
    _check(host.n, MINOR_ORACLE_CAP, "minor_oracle")
    rooted = root is not None
    target = canonical_form(pattern, pattern_root if rooted else None)
    seen = set()

    def dfs(h: Graph) -> bool:
        key = canonical_form(h, root if rooted else None)
        if key in seen:
            return False
        seen.add(key)
        if h.n == pattern.n and h.m == pattern.m:
            return key == target
        for _, m in one_step_minors(h, root if rooted else None):
            if m.n >= pattern.n and m.m >= pattern.m and dfs(m):
                return True
        return False

    if host.n < pattern.n or host.m < pattern.m:
        return False
    return dfs(host)


# ---------------------------------------------------------------------------
# Exhaustive enumeration up to isomorphism


def _cache_dir() -> Optional[Path]:
    d = os.environ.get("WIDTH2LAB_CACHE")
    if not d:
        return None
    p = Path(d)
    p.mkdir(parents=True, exist_ok=True)
    return p


@lru_cache(maxsize=None)
def _graphs_on(n: int, connected: bool) -> Tuple[Graph, ...]:
    from .io import from_graph6, to_graph6

    cache = _cache_dir()
    fname = cache / f"graphs_{'c' if connected else 'a'}{n}.g6" if cache else None
    if fname is not None and fname.exists():
        return tuple(from_graph6(ln) for ln in fname.read_text().split())
    if n == 0:
        out = [Graph()]
    elif n == 1:
        out = [Graph([0])]
    else:
        found: Dict[bytes, Graph] = {}
        for g in _graphs_on(n - 1, connected):
            new = n - 1
            for r in range(1 if connected else 0, n):
                for nbrs in combinations(range(n - 1), r):
                    h = g.with_vertices([new]).with_edges((new, x) for x in nbrs)
                    key = canonical_form(h)
                    if key not in found:
                        found[key] = canonical_graph(h)
        out = [found[k] for k in sorted(found)]
    if fname is not None:
        fname.write_text("\n".join(to_graph6(g) for g in out) + "\n")
    return tuple(out)


def all_graphs(n: int, connected: bool = False) -> Tuple[Graph, ...]:
    """One representative per isomorphism class on exactly n vertices (0..n-1)."""
    _check(n, 10, "all_graphs")
    return _graphs_on(n, connected)


def graphs_up_to(max_n: int, connected: bool = True, min_n: int = 1) -> Iterator[Graph]:
    for n in range(min_n, max_n + 1):
        yield from all_graphs(n, connected)
