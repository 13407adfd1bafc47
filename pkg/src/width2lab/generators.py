"""Graph constructions: the obstruction catalog, suns, subdivisions, the
strongly chordal family SC_k and its subtree model, doubled trees, spider
trees, random trees of cycles and the random corpora used by the tests.
"""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .graph import Graph, GraphError, canonical_form, norm_edge
from .minors import ALL_IDS, obstruction_graph

# sha256 prefixes of the canonical forms of the audited transcriptions
# (rooted at vertex 0 for the two rooted blocks)
AUDITED = {
    "G1": "44b04135cadd58bf",
    "G2": "6d3a07264fb74bef",
    "G3": "50b02f22c8cf9ed7",
    "H1": "530bad4a20e8c682",
    "H2": "0fd2c3e84a4f25c1",
}


def _digest(g: Graph, root: Optional[int] = None) -> str:
    return hashlib.sha256(canonical_form(g, root)).hexdigest()[:16]


def make_obstruction(oid: str) -> Graph:
    """A catalog graph; the hand-transcribed ones must match their audited digest."""
    if oid not in ALL_IDS:
        raise GraphError(f"unknown obstruction {oid!r}")
    g = obstruction_graph(oid)
    if oid in AUDITED and _digest(g, 0 if oid.startswith("H") else None) != AUDITED[oid]:
        raise GraphError(f"transcription of {oid} does not match its audited digest")
    return g


def make_sun(n: int) -> Graph:
    """Clique u_0..u_{n-1} with rim vertex w_i adjacent to u_i and u_{i+1}."""
    if n < 3:
        raise GraphError("a sun needs n >= 3")
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges += [(n + i, i) for i in range(n)] + [(n + i, (i + 1) % n) for i in range(n)]
    return Graph(range(2 * n), edges)


def subdivide(g: Graph, scheme: Union[Mapping[Tuple[int, int], int], Callable[[Tuple[int, int]], int]]) -> Graph:
    """Replace each edge by a path with scheme(edge) inner vertices (new ids above max)."""
    get = scheme if callable(scheme) else (lambda e: scheme.get(e, 0))
    start = nxt = max(g.vertices, default=-1) + 1
    edges = []
    for e in g.edges:
        k = int(get(e))
        if k < 0:
            raise GraphError("negative subdivision count")
        path = [e[0]] + list(range(nxt, nxt + k)) + [e[1]]
        nxt += k
        edges += list(zip(path, path[1:]))
    return Graph(list(g.vertices) + list(range(start, nxt)), edges)


def random_subdivision(g: Graph, rng: random.Random, max_extra: int = 3) -> Graph:
    return subdivide(g, {e: rng.randint(0, max_extra) for e in g.edges})


# ---------------------------------------------------------------------------
# SC_k and its subtree model


def _sc_ids(k: int) -> Tuple[List[int], Dict[Tuple[int, int], int]]:
    w = [0, 1, 2, 3]
    v = {}
    nxt = 4
    for i in (1, 2, 3):
        v[(i, 1)], v[(i, 2)] = w[i - 1], w[i]
        for j in range(3, k + 1):
            v[(i, j)] = nxt
            nxt += 1
    return w, v


def _sc_labels(k: int) -> Dict[int, str]:
    w, v = _sc_ids(k)
    labels = {x: f"w{x + 1}" for x in w}
    labels.update({x: f"v{i}_{j}" for (i, j), x in v.items() if j >= 3})
    return labels


def make_sc(k: int) -> Graph:
    """Three k-cliques hung on consecutive edges of a K4, plus the cross edges."""
    if k < 4:
        raise GraphError("SC_k needs k >= 4")
    w, v = _sc_ids(k)
    edges = [(a, b) for a in w for b in w if a < b]
    for i in (1, 2, 3):
        clique = [v[(i, j)] for j in range(1, k + 1)]
        edges += [(a, b) for a in clique for b in clique if a < b]
    cross = {1: w[2], 2: w[0], 3: w[1]}
    for i in (1, 2, 3):
        edges += [(cross[i], v[(i, j)]) for j in range(3, k)]
    return Graph(range(3 * (k - 2) + 4), edges, labels=_sc_labels(k))


@dataclass
class NeSTModel:
    """Subtrees T(c, r) of a host tree; vertices adjacent when their subtrees share >= tolerance nodes."""

    tree: Graph
    subtrees: Dict[int, Tuple[int, int]]
    tolerance: int = 1
    labels: Dict[int, str] = field(default_factory=dict)

    def nodes(self, x: int) -> frozenset:
        c, r = self.subtrees[x]
        dist = {c: 0}
        frontier = [c]
        while frontier:
            nxt = []
            for y in frontier:
                if dist[y] == r:
                    continue
                for z in self.tree.neighbors(y):
                    if z not in dist:
                        dist[z] = dist[y] + 1
                        nxt.append(z)
            frontier = nxt
        return frozenset(dist)

    def graph(self) -> Graph:
        sets = {x: self.nodes(x) for x in self.subtrees}
        xs = sorted(sets)
        edges = [(a, b) for i, a in enumerate(xs) for b in xs[i + 1:] if len(sets[a] & sets[b]) >= self.tolerance]
        return Graph(xs, edges, labels=self.labels)


def make_nest_sc(k: int) -> NeSTModel:
    """Subtree model (tolerance 1) of SC_{k+1} on a spider with legs of 6, 5 and 7 nodes."""
    if k < 3:
        raise GraphError("the model needs k >= 3")
    a = {i: i for i in range(1, 7)}
    b = {i: 6 + i for i in range(1, 6)}
    c = {i: 11 + i for i in range(1, 8)}
    edges = [(0, a[1]), (0, b[1]), (0, c[1])]
    for leg in (a, b, c):
        edges += [(leg[i], leg[i + 1]) for i in range(1, len(leg))]
    tree = Graph(range(19), edges)
    w, v = _sc_ids(k + 1)
    sub = {w[0]: (a[2], 4), w[1]: (a[1], 6), w[2]: (c[1], 6), w[3]: (c[4], 3)}
    tip = {1: (a[6], 0), 2: (b[5], 0), 3: (c[7], 0)}
    mid = {1: (a[5], 2), 2: (b[4], 2), 3: (c[6], 2)}
    for i in (1, 2, 3):
        sub[v[(i, k + 1)]] = tip[i]
        for j in range(3, k + 1):
            sub[v[(i, j)]] = mid[i]
    return NeSTModel(tree, sub, 1, _sc_labels(k + 1))


# ---------------------------------------------------------------------------
# Trees


def _need_tree(t: Graph) -> None:
    if not t.is_tree():
        raise GraphError("input must be a tree")


def make_gt(t: Graph) -> Graph:
    """Two copies of the tree (ids 2v and 2v+1) plus the rungs 2v-2v+1."""
    _need_tree(t)
    edges = [(2 * u, 2 * v) for u, v in t.edges] + [(2 * u + 1, 2 * v + 1) for u, v in t.edges]
    edges += [(2 * v, 2 * v + 1) for v in t.vertices]
    return Graph([x for v in t.vertices for x in (2 * v, 2 * v + 1)], edges)


def make_gt_prime(t: Graph) -> Graph:
    """The tree plus one universal vertex (id max + 1)."""
    _need_tree(t)
    w = max(t.vertices) + 1
    return Graph(list(t.vertices) + [w], list(t.edges) + [(w, v) for v in t.vertices])


def make_spider_tree(k: int) -> Graph:
    """Smallest trees of pathwidth k for k >= 2 (7 and 22 vertices for k = 2, 3);
    the three-vertex path for k = 1.

    The family grows by joining a new centre to the roots of three copies,
    starting from a single edge rooted at one end.
    """
    if k < 1:
        raise GraphError("k must be >= 1")
    if k == 1:
        return Graph(range(3), [(0, 1), (1, 2)])

    def grow(level: int, nxt: int) -> Tuple[int, List[Tuple[int, int]], int]:
        # returns (root, edges, next free id)
        if level == 1:
            return nxt, [(nxt, nxt + 1)], nxt + 2
        root = nxt
        nxt += 1
        edges = []
        for _ in range(3):
            r, e, nxt = grow(level - 1, nxt)
            edges += e + [(root, r)]
        return root, edges, nxt

    _, edges, n = grow(k, 0)
    return Graph(range(n), edges)


# ---------------------------------------------------------------------------
# Trees of cycles


@dataclass
class CellFlags:
    chain: bool
    two_boundaried: bool


def _flags(cells: Sequence[Tuple[int, ...]]) -> CellFlags:
    """Flags of a tree of cycles given its cell list (no completion needed)."""
    on: Dict[Tuple[int, int], List[int]] = {}
    deg: Dict[int, set] = {}
    for i, c in enumerate(cells):
        for k in range(len(c)):
            e = norm_edge(c[k], c[(k + 1) % len(c)])
            on.setdefault(e, []).append(i)
            deg.setdefault(e[0], set()).add(e[1])
            deg.setdefault(e[1], set()).add(e[0])
    simp = [len(c) == 3 and any(len(deg[x]) == 2 for x in c) for c in cells]
    nsep = [0] * len(cells)
    chain = True
    for e, cs in on.items():
        if len(cs) >= 2:
            for i in cs:
                nsep[i] += 1
        if len(cs) >= 3 and sum(1 for i in cs if not simp[i]) > 2:
            chain = False
    return CellFlags(chain, all(s <= 2 for s in nsep))


class _Builder:
    def __init__(self, rng: random.Random):
        self.rng = rng
        self.cells: List[Tuple[int, ...]] = []
        self.n = 0

    def edges(self) -> List[Tuple[int, int]]:
        out = []
        for c in self.cells:
            out += [norm_edge(c[k], c[(k + 1) % len(c)]) for k in range(len(c))]
        return out

    def first(self, length: int) -> None:
        self.cells.append(tuple(range(length)))
        self.n = length

    def glue(self, e: Tuple[int, int], length: int) -> Tuple[int, ...]:
        new = tuple([e[0]] + list(range(self.n, self.n + length - 2)) + [e[1]])
        self.n += length - 2
        self.cells.append(new)
        return new

    def undo(self, length: int) -> None:
        self.cells.pop()
        self.n -= length - 2

    def graph(self) -> Graph:
        return Graph(range(self.n), self.edges())


def make_tree_of_cycles(
    seed: Union[int, random.Random, None] = None,
    cells: int = 4,
    max_cell_len: int = 6,
    chain: bool = True,
    two_boundaried: bool = True,
    attach_style: str = "random",
    tries: int = 200,
) -> Graph:
    """Random tree of cycles whose chain / two-boundaried flags equal the request.

    ``attach_style``: "random" glues each new cell on any existing edge,
    "path" on an edge of the latest cell, "star" on an edge of the first cell.
    Requested true flags are kept at every step; requested false flags are
    forced at the end; the result is checked against the full cell analysis.
    """
    from .cellmodel import cells as find_cells, classify, cell_completion

    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if cells < 1 or max_cell_len < 3:
        raise GraphError("need cells >= 1 and max_cell_len >= 3")
    if not chain and cells < 4 or not two_boundaried and cells < 4:
        raise GraphError("breaking a flag needs at least four cells")
    for _ in range(tries):
        b = _Builder(rng)
        b.first(rng.randint(3, max_cell_len))
        budget = cells - 1
        forced = []
        if not chain:
            forced.append("chain")
        if not two_boundaried:
            forced.append("two")
        budget -= 3 * len(forced)
        ok = True
        for _ in range(max(budget, 0)):
            if attach_style == "path":
                pool = b.cells[-1]
            elif attach_style == "star":
                pool = b.cells[0]
            else:
                pool = rng.choice(b.cells)
            k = rng.randrange(len(pool))
            e = norm_edge(pool[k], pool[(k + 1) % len(pool)])
            length = rng.randint(3, max_cell_len)
            b.glue(e, length)
            f = _flags(b.cells)
            if (chain and not f.chain) or (two_boundaried and not f.two_boundaried):
                b.undo(length)
        for what in forced:
            if what == "chain":
                # three body cells on one edge
                c = rng.choice(b.cells)
                e = norm_edge(c[0], c[1])
                for _ in range(3):
                    b.glue(e, rng.randint(4, max(4, max_cell_len)))
            else:
                # three cells on three distinct edges of one cell
                c = max(b.cells, key=len)
                if len(c) < 3:
                    ok = False
                for k in range(3):
                    b.glue(norm_edge(c[k], c[(k + 1) % len(c)]), rng.randint(3, max_cell_len))
        if not ok:
            continue
        g = b.graph()
        flags = classify(find_cells(cell_completion(g)))
        if flags.chain == chain and flags.two_boundaried == two_boundaried:
            return g
    raise GraphError("could not sample a tree of cycles with the requested flags")


def random_mamba(rng: random.Random, cells: int = 3, max_cell_len: int = 5) -> Graph:
    """A random 2-connected path of cycles."""
    return make_tree_of_cycles(rng, cells, max_cell_len, True, True, rng.choice(["random", "path"]))


def sample_path_of_cycles() -> Graph:
    """A fixed 16-vertex mamba: nine cells (four of them pendant triangles) on five shared edges.

    Vertices v1..v13 get ids 0..12 and w1..w3 get ids 13..15.
    """
    v = {i: i - 1 for i in range(1, 14)}
    w = {i: 12 + i for i in range(1, 4)}
    edges = []
    for path in ([1, 2, 6, 8, 10, 13, 12], [1, 3, 4, 5, 7, 9, 11, 12]):
        edges += [(v[a], v[b]) for a, b in zip(path, path[1:])]
    edges += [(v[a], v[b]) for a, b in ((2, 3), (5, 6), (5, 8), (7, 8), (9, 10))]
    edges += [(v[5], w[1]), (w[1], v[6]), (v[5], w[2]), (w[2], v[6]), (v[9], w[3]), (w[3], v[10])]
    labels = {v[i]: f"v{i}" for i in v}
    labels.update({w[i]: f"w{i}" for i in w})
    return Graph(range(16), edges, labels=labels)


# ---------------------------------------------------------------------------
# Block attachments


def attach_blocks(parts: Sequence[Graph], rng: random.Random) -> Graph:
    """Glue the parts into one connected graph, each new part sharing one
    vertex with what is already built."""
    edges: List[Tuple[int, int]] = []
    n = 0
    for k, p in enumerate(parts):
        vs = list(p.vertices)
        ids: Dict[int, int] = {}
        if k > 0:
            ids[rng.choice(vs)] = rng.randrange(n)
        for x in vs:
            if x not in ids:
                ids[x] = n
                n += 1
        edges += [(ids[a], ids[b]) for a, b in p.edges]
    return Graph(range(n), edges)


def _random_part(rng: random.Random, profile: str) -> Graph:
    r = rng.random()
    if profile == "mamba" or (profile == "mixed" and r < 0.3):
        if rng.random() < 0.2:
            return Graph(range(2), [(0, 1)])
        if rng.random() < 0.3:
            # subdividing these can create other obstructions, so keep them plain
            return obstruction_graph(rng.choice(["H1", "H2"]))
        return random_mamba(rng, rng.randint(2, 6), rng.randint(3, 6))
    if profile == "cycles" or r < 0.85:
        chain = rng.random() < 0.6
        two = rng.random() < 0.6
        size = rng.randint(1 if chain and two else 4, 9)
        return make_tree_of_cycles(rng, size, rng.randint(3, 7), chain, two, rng.choice(["random", "path", "star"]))
    if r < 0.95:
        return random_subdivision(obstruction_graph(rng.choice(["D3", "S3"])), rng, 1)
    return random_subdivision(obstruction_graph("K4"), rng, 2)


def random_width_two_graph(rng: random.Random, max_n: int = 60) -> Graph:
    """A connected graph made of random blocks glued at random vertices: mambas
    and bridges, general trees of cycles, and occasional obstruction
    subdivisions.  At most ``max_n`` vertices."""
    profile = rng.choices(["mamba", "cycles", "mixed"], weights=[5, 3, 2])[0]
    parts: List[Graph] = []
    total = 1
    target = rng.randint(8, max_n)
    for _ in range(100):
        p = _random_part(rng, profile)
        if total + p.n - 1 > target:
            if parts:
                break
            continue
        parts.append(p)
        total += p.n - 1
    return attach_blocks(parts, rng)


def corpus(seed: int, count: int, max_n: int = 60):
    """Deterministic stream of ``count`` random connected graphs."""
    rng = random.Random(seed)
    for _ in range(count):
        yield random_width_two_graph(rng, max_n)
