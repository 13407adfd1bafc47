"""Simple undirected graphs, block structure, minor operations and isomorphism.

Graphs are immutable. Vertex ids are plain integers that survive deletions and
contractions, so a minor of a graph still talks about the host's vertices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

Edge = Tuple[int, int]

MAX_ISO_VERTICES = 16


class GraphError(ValueError):
    pass


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph on integer vertex ids.

    ``labels`` is an optional sidecar map from vertex id to a display string;
    it takes no part in equality or hashing.
    """

    __slots__ = ("_adj", "labels", "_hash", "_edges")

    def __init__(
        self,
        vertices: Iterable[int] = (),
        edges: Iterable[Tuple[int, int]] = (),
        labels: Optional[Mapping[int, str]] = None,
    ):
        adj: Dict[int, set] = {int(v): set() for v in vertices}
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        self._adj: Dict[int, FrozenSet[int]] = {v: frozenset(nb) for v, nb in sorted(adj.items())}
        self.labels: Dict[int, str] = dict(labels) if labels else {}
        self._hash: Optional[int] = None
        self._edges: Optional[Tuple[Edge, ...]] = None

    @classmethod
    def from_adjacency(cls, adj: Mapping[int, Iterable[int]], labels=None) -> "Graph":
        g = cls.__new__(cls)
        g._adj = {v: frozenset(adj[v]) for v in sorted(adj)}
        g.labels = dict(labels) if labels else {}
        g._hash = None
        g._edges = None
        return g

    @classmethod
    def from_edges(cls, edges: Iterable[Tuple[int, int]], n: Optional[int] = None, labels=None) -> "Graph":
        return cls(range(n) if n is not None else (), edges, labels)

    # -- basic queries -------------------------------------------------
    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(self._adj)

    @property
    def edges(self) -> Tuple[Edge, ...]:
        if self._edges is None:
            self._edges = tuple(sorted((u, v) for u, nb in self._adj.items() for v in nb if u < v))
        return self._edges

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return sum(len(nb) for nb in self._adj.values()) // 2

    def __len__(self) -> int:
        return len(self._adj)

    def __contains__(self, v) -> bool:
        return v in self._adj

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def adjacency(self) -> Dict[int, FrozenSet[int]]:
        return dict(self._adj)

    def label(self, v: int) -> str:
        return self.labels.get(v, str(v))

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple((v, tuple(sorted(nb))) for v, nb in self._adj.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, edges={list(self.edges)})"

    # -- derived graphs -----------------------------------------------
    def _sub_labels(self, keep) -> Dict[int, str]:
        return {v: s for v, s in self.labels.items() if v in keep}

    def subgraph(self, vs: Iterable[int]) -> "Graph":
        keep = set(vs)
        missing = keep - self._adj.keys()
        if missing:
            raise GraphError(f"vertices not in graph: {sorted(missing)}")
        return Graph.from_adjacency({v: self._adj[v] & keep for v in keep}, self._sub_labels(keep))

    def without_vertices(self, vs: Iterable[int]) -> "Graph":
        drop = set(vs)
        return self.subgraph(v for v in self._adj if v not in drop)

    def with_edges(self, edges: Iterable[Tuple[int, int]]) -> "Graph":
        adj = {v: set(nb) for v, nb in self._adj.items()}
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        return Graph.from_adjacency(adj, self.labels)

    def without_edges(self, edges: Iterable[Tuple[int, int]]) -> "Graph":
        adj = {v: set(nb) for v, nb in self._adj.items()}
        for u, v in edges:
            adj[u].discard(v)
            adj[v].discard(u)
        return Graph.from_adjacency(adj, self.labels)

    def with_vertices(self, vs: Iterable[int]) -> "Graph":
        adj = {v: set(nb) for v, nb in self._adj.items()}
        for v in vs:
            adj.setdefault(v, set())
        return Graph.from_adjacency(adj, self.labels)

    def relabel(self, mapping: Mapping[int, int]) -> "Graph":
        if len(set(mapping[v] for v in self._adj)) != self.n:
            raise GraphError("relabeling is not injective")
        adj = {mapping[v]: [mapping[u] for u in nb] for v, nb in self._adj.items()}
        labels = {mapping[v]: s for v, s in self.labels.items()}
        return Graph.from_adjacency(adj, labels)

    def dense(self) -> Tuple["Graph", Dict[int, int]]:
        """Relabel to 0..n-1 in sorted order; returns the graph and old->new map."""
        mp = {v: i for i, v in enumerate(self._adj)}
        return self.relabel(mp), mp

    def union(self, other: "Graph") -> "Graph":
        adj = {v: set(nb) for v, nb in self._adj.items()}
        for v, nb in other._adj.items():
            adj.setdefault(v, set()).update(nb)
        labels = dict(self.labels)
        labels.update(other.labels)
        return Graph.from_adjacency(adj, labels)

    def complement_edges(self) -> List[Edge]:
        vs = self.vertices
        return [(u, v) for i, u in enumerate(vs) for v in vs[i + 1:] if v not in self._adj[u]]

    # -- connectivity --------------------------------------------------
    def components(self, within: Optional[Iterable[int]] = None) -> List[FrozenSet[int]]:
        """Connected components, optionally of the subgraph induced on ``within``."""
        allowed = set(self._adj) if within is None else set(within)
        seen = set()
        comps = []
        for s in self._adj:
            if s not in allowed or s in seen:
                continue
            comp = {s}
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if y in allowed and y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def is_forest(self) -> bool:
        return self.m == self.n - len(self.components())

    def is_tree(self) -> bool:
        return self.n >= 1 and self.m == self.n - 1 and self.is_connected()

    def is_biconnected(self) -> bool:
        """2-connected in the sense used throughout: at least 3 vertices, no cut vertex."""
        if self.n < 3 or not self.is_connected():
            return False
        bt = blocks(self)
        return len(bt.blocks) == 1

    def shortest_path(self, s: int, t: int, allowed: Optional[Iterable[int]] = None) -> Optional[List[int]]:
        ok = None if allowed is None else set(allowed) | {s, t}
        prev = {s: None}
        frontier = [s]
        while frontier:
            nxt = []
            for x in frontier:
                if x == t:
                    path = [t]
                    while prev[path[-1]] is not None:
                        path.append(prev[path[-1]])
                    return path[::-1]
                for y in sorted(self._adj[x]):
                    if y not in prev and (ok is None or y in ok):
                        prev[y] = x
                        nxt.append(y)
            frontier = nxt
        return None


# ---------------------------------------------------------------------------
# Blocks


@dataclass(frozen=True)
class BlockTree:
    blocks: List[FrozenSet[int]]
    cut_vertices: FrozenSet[int]
    incidence: List[Tuple[int, int]] = field(default_factory=list)  # (block index, cut vertex)

    def blocks_at(self, v: int) -> List[int]:
        return [i for i, b in enumerate(self.blocks) if v in b]


def blocks(g: Graph) -> BlockTree:
    """Blocks and cut vertices via an iterative Hopcroft-Tarjan DFS.

    Isolated vertices form singleton blocks; bridges form two-vertex blocks.
    """
    index: Dict[int, int] = {}
    low: Dict[int, int] = {}
    found: List[FrozenSet[int]] = []
    cuts = set()
    counter = 0
    for root in g.vertices:
        if root in index:
            continue
        if g.degree(root) == 0:
            index[root] = counter
            counter += 1
            found.append(frozenset([root]))
            continue
        index[root] = low[root] = counter
        counter += 1
        edge_stack: List[Edge] = []
        stack = [(root, None, iter(sorted(g.neighbors(root))))]
        root_children = 0
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    edge_stack.append((v, w))
                    stack.append((w, v, iter(sorted(g.neighbors(w)))))
                    if v == root:
                        root_children += 1
                    advanced = True
                    break
                if index[w] < index[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            stack.pop()
            if parent is None:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= index[parent]:
                comp = set()
                while True:
                    a, b = edge_stack.pop()
                    comp.add(a)
                    comp.add(b)
                    if (a, b) == (parent, v):
                        break
                found.append(frozenset(comp))
                if parent != root:
                    cuts.add(parent)
        if root_children > 1:
            cuts.add(root)
    incidence = [(i, c) for i, b in enumerate(found) for c in sorted(b & cuts)]
    return BlockTree(found, frozenset(cuts), incidence)


def articulation_points(g: Graph) -> FrozenSet[int]:
    return blocks(g).cut_vertices


# ---------------------------------------------------------------------------
# Minor operations

DELETE_VERTEX = "delete-vertex"
DELETE_EDGE = "delete-edge"
CONTRACT_EDGE = "contract-edge"


@dataclass(frozen=True)
class MinorOp:
    kind: str
    target: object  # vertex id, or (u, v) for the edge kinds
    survivor: Optional[int] = None  # contraction only; defaults to the smaller endpoint


def apply_minor_op(g: Graph, op: MinorOp) -> Graph:
    if op.kind == DELETE_VERTEX:
        if op.target not in g:
            raise GraphError(f"cannot delete missing vertex {op.target}")
        return g.without_vertices([op.target])
    u, v = op.target
    if not g.has_edge(u, v):
        raise GraphError(f"missing edge {(u, v)}")
    if op.kind == DELETE_EDGE:
        return g.without_edges([(u, v)])
    if op.kind == CONTRACT_EDGE:
        keep = min(u, v) if op.survivor is None else op.survivor
        if keep not in (u, v):
            raise GraphError(f"survivor {keep} is not an endpoint of {(u, v)}")
        return contract(g, u, v, keep)
    raise GraphError(f"unknown minor operation {op.kind!r}")


def contract(g: Graph, u: int, v: int, keep: Optional[int] = None) -> Graph:
    """Contract edge (or non-edge pair) uv; the merged vertex is named ``keep``."""
    keep = min(u, v) if keep is None else keep
    gone = v if keep == u else u
    adj = {x: set(nb) for x, nb in g.adjacency().items() if x != gone}
    merged = (g.neighbors(u) | g.neighbors(v)) - {u, v}
    for x in g.neighbors(gone):
        if x != keep:
            adj[x].discard(gone)
            adj[x].add(keep)
    adj[keep] = set(merged)
    labels = {x: s for x, s in g.labels.items() if x != gone}
    return Graph.from_adjacency(adj, labels)


def one_step_minors(g: Graph, root: Optional[int] = None):
    """Yield (op, minor) for every single deletion/contraction.

    With ``root`` set, the root is never deleted and keeps its name when
    contracted, as rooted minors require.
    """
    for v in g.vertices:
        if v != root:
            yield MinorOp(DELETE_VERTEX, v), g.without_vertices([v])
    for e in g.edges:
        yield MinorOp(DELETE_EDGE, e), g.without_edges([e])
    for u, v in g.edges:
        keep = root if root in (u, v) else min(u, v)
        yield MinorOp(CONTRACT_EDGE, (u, v), keep), contract(g, u, v, keep)


# ---------------------------------------------------------------------------
# Canonical labeling (individualisation/refinement, no external solver)


def _refine(adj: List[int], cells: List[List[int]]) -> List[List[int]]:
    changed = True
    while changed:
        changed = False
        masks = []
        for c in cells:
            mk = 0
            for x in c:
                mk |= 1 << x
            masks.append(mk)
        out = []
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            sig = {x: tuple(bin(adj[x] & mk).count("1") for mk in masks) for x in c}
            keys = sorted(set(sig.values()))
            if len(keys) > 1:
                changed = True
                for k in keys:
                    out.append([x for x in c if sig[x] == k])
            else:
                out.append(c)
        cells = out
    return cells


def _certificate(adj: List[int], order: List[int]) -> int:
    n = len(order)
    cert = 0
    for i, x in enumerate(order):
        row = 0
        nb = adj[x]
        for y in order[i + 1:]:
            row = (row << 1) | ((nb >> y) & 1)
        cert = (cert << (n - 1 - i)) | row
    return cert


def _search(adj: List[int], cells: List[List[int]], best: list) -> None:
    cells = _refine(adj, cells)
    if all(len(c) == 1 for c in cells):
        order = [c[0] for c in cells]
        cert = _certificate(adj, order)
        if best[0] is None or cert > best[0]:
            best[0] = cert
            best[1] = order
        return
    target = min((len(c), i) for i, c in enumerate(cells) if len(c) > 1)[1]
    cell = cells[target]
    tried: List[int] = []
    for x in cell:
        # twins inside one cell are exchanged by an automorphism fixing the partition
        if any((adj[x] & ~(1 << t)) == (adj[t] & ~(1 << x)) for t in tried):
            continue
        tried.append(x)
        rest = [y for y in cell if y != x]
        _search(adj, cells[:target] + [[x], rest] + cells[target + 1:], best)


def canonical_labeling(g: Graph, root: Optional[int] = None, limit: int = MAX_ISO_VERTICES) -> Tuple[List[int], int]:
    """Return (vertex order, certificate); equal certificates iff isomorphic."""
    if g.n > limit:
        raise GraphError(f"canonical labeling refused: {g.n} vertices exceeds limit {limit}")
    vs = g.vertices
    idx = {v: i for i, v in enumerate(vs)}
    adj = [0] * len(vs)
    for v in vs:
        for w in g.neighbors(v):
            adj[idx[v]] |= 1 << idx[w]
    if not vs:
        return [], 0
    if root is None:
        cells = [list(range(len(vs)))]
    else:
        r = idx[root]
        cells = [[r]] + ([[i for i in range(len(vs)) if i != r]] if len(vs) > 1 else [])
    best: list = [None, None]
    _search(adj, cells, best)
    return [vs[i] for i in best[1]], best[0]


def canonical_form(g: Graph, root: Optional[int] = None, limit: int = MAX_ISO_VERTICES) -> bytes:
    _, cert = canonical_labeling(g, root, limit)
    nbits = g.n * (g.n - 1) // 2
    return g.n.to_bytes(2, "big") + (b"R" if root is not None else b"") + cert.to_bytes((nbits + 7) // 8, "big")


def is_isomorphic(g: Graph, h: Graph, limit: int = MAX_ISO_VERTICES) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    if sorted(g.degree(v) for v in g.vertices) != sorted(h.degree(v) for v in h.vertices):
        return False
    return canonical_form(g, limit=limit) == canonical_form(h, limit=limit)


def is_rooted_isomorphic(g: Graph, gr: int, h: Graph, hr: int, limit: int = MAX_ISO_VERTICES) -> bool:
    if g.n != h.n or g.m != h.m or g.degree(gr) != h.degree(hr):
        return False
    return canonical_form(g, gr, limit) == canonical_form(h, hr, limit)


def canonical_graph(g: Graph) -> Graph:
    """The canonical representative of g's isomorphism class on vertices 0..n-1."""
    order, _ = canonical_labeling(g)
    return Graph.from_adjacency(g.relabel({v: i for i, v in enumerate(order)}).adjacency())


def max_clique_size(g: Graph) -> int:
    """Exact clique number by simple branch and bound (small graphs)."""
    best = 0

    def expand(clique_size: int, cand: set) -> None:
        nonlocal best
        if not cand:
            best = max(best, clique_size)
            return
        if clique_size + len(cand) <= best:
            return
        for v in sorted(cand):
            expand(clique_size + 1, cand & g.neighbors(v))
            cand = cand - {v}
            if clique_size + len(cand) <= best:
                return

    expand(0, set(g.vertices))
    return best


def relabel_sequence(vertices: Sequence[int]) -> Dict[int, int]:
    return {v: i for i, v in enumerate(vertices)}
