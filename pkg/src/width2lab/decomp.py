"""Tree decompositions and their path / spaghetti / directed / special variants,
a validator for each, and constructive builders for width-2 graph classes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .graph import Graph, GraphError
from .oracles import bags_from_order

TREE = "tree"
PATH = "path"
SPAGHETTI = "spaghetti"
DIRECTED = "directed-spaghetti"
SPECIAL = "special"
VARIANTS = (TREE, PATH, SPAGHETTI, DIRECTED, SPECIAL)


class DecompositionError(GraphError):
    pass


@dataclass
class Decomposition:
    """Bags on the nodes of a tree.

    ``edges`` are the undirected tree edges.  Directed variants also carry
    ``arcs`` (one orientation per tree edge); the special variant carries a
    ``root`` and its arcs all point toward it.
    """

    bags: Dict[int, FrozenSet[int]]
    edges: List[Tuple[int, int]] = field(default_factory=list)
    variant: str = TREE
    arcs: Optional[List[Tuple[int, int]]] = None
    root: Optional[int] = None

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1

    @property
    def nodes(self) -> List[int]:
        return sorted(self.bags)

    @classmethod
    def path(cls, bags: Sequence[Iterable[int]], variant: str = PATH) -> "Decomposition":
        """A path of bags, oriented toward its first node when a direction is needed."""
        d = cls({i: frozenset(b) for i, b in enumerate(bags)}, [(i, i + 1) for i in range(len(bags) - 1)], PATH)
        return d.as_variant(variant) if variant != PATH else d

    def orient_toward(self, root: int) -> List[Tuple[int, int]]:
        adj = self.tree_adjacency()
        arcs = []
        seen = {root}
        stack = [root]
        while stack:
            x = stack.pop()
            for y in sorted(adj[x]):
                if y not in seen:
                    seen.add(y)
                    arcs.append((y, x))
                    stack.append(y)
        return arcs

    def tree_adjacency(self) -> Dict[int, set]:
        adj: Dict[int, set] = {x: set() for x in self.bags}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def as_variant(self, variant: str) -> "Decomposition":
        """Relabel the variant, adding or dropping orientation as needed.

        Path-shaped trees are oriented from the last node toward the first.
        A special decomposition keeps its own arcs when relabelled as
        directed; undirected variants drop arcs.
        """
        if variant not in VARIANTS:
            raise DecompositionError(f"unknown variant {variant!r}")
        if variant in (TREE, PATH, SPAGHETTI):
            return Decomposition(dict(self.bags), list(self.edges), variant)
        arcs = self.arcs
        root = self.root
        if arcs is None:
            root = min(self.bags) if root is None else root
            arcs = self.orient_toward(root) if self.bags else []
        if variant == DIRECTED:
            return Decomposition(dict(self.bags), list(self.edges), DIRECTED, list(arcs))
        if root is None:
            root = _sink(self.bags, arcs)
        return Decomposition(dict(self.bags), list(self.edges), SPECIAL, list(arcs), root)

    def node_sets(self) -> Dict[int, List[int]]:
        out: Dict[int, List[int]] = {}
        for x in sorted(self.bags):
            for v in self.bags[x]:
                out.setdefault(v, []).append(x)
        return out

    def to_json(self) -> dict:
        d = {
            "variant": self.variant,
            "width": self.width,
            "nodes": [{"id": x, "bag": sorted(self.bags[x])} for x in sorted(self.bags)],
            "edges": [list(e) for e in self.edges],
        }
        if self.root is not None:
            d["root"] = self.root
        if self.arcs is not None:
            d["arcs"] = [list(a) for a in self.arcs]
        return d

    @classmethod
    def from_json(cls, d: dict) -> "Decomposition":
        bags = {int(nd["id"]): frozenset(nd["bag"]) for nd in d["nodes"]}
        arcs = [tuple(a) for a in d["arcs"]] if "arcs" in d else None
        return cls(bags, [tuple(e) for e in d.get("edges", [])], d.get("variant", TREE), arcs, d.get("root"))

    def to_dot(self, name: str = "T") -> str:
        directed = self.arcs is not None
        lines = [("digraph" if directed else "graph") + f" {name} {{"]
        for x in sorted(self.bags):
            label = "{" + ",".join(str(v) for v in sorted(self.bags[x])) + "}"
            extra = ", peripheries=2" if x == self.root else ""
            lines.append(f'  n{x} [label="{label}"{extra}];')
        for a, b in (self.arcs if directed else self.edges):
            lines.append(f"  n{a} {'->' if directed else '--'} n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _sink(bags, arcs) -> Optional[int]:
    out = {a for a, _ in arcs}
    sinks = [x for x in bags if x not in out]
    return sinks[0] if len(sinks) == 1 else None


@dataclass
class ValidationReport:
    ok: bool
    width: int
    violations: List[str]

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "width": self.width, "violations": list(self.violations)}


def _is_tree(nodes: Sequence[int], edges: Sequence[Tuple[int, int]]) -> bool:
    if not nodes:
        return not edges
    if len(edges) != len(nodes) - 1:
        return False
    adj: Dict[int, List[int]] = {x: [] for x in nodes}
    for a, b in edges:
        if a not in adj or b not in adj:
            return False
        adj[a].append(b)
        adj[b].append(a)
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(nodes)


def validate(g: Graph, d: Decomposition, variant: Optional[str] = None, max_width: Optional[int] = None) -> ValidationReport:
    """Check the tree-decomposition conditions plus the variant's extra rule."""
    variant = d.variant if variant is None else variant
    bad: List[str] = []
    nodes = sorted(d.bags)
    if not _is_tree(nodes, d.edges):
        bad.append("decomposition graph is not a tree")
        return ValidationReport(False, d.width, bad)
    covered = set().union(*d.bags.values()) if d.bags else set()
    for v in g.vertices:
        if v not in covered:
            bad.append(f"(T1) vertex {v} in no bag")
    extra = covered - set(g.vertices)
    if extra:
        bad.append(f"bags mention non-vertices {sorted(extra)}")
    for u, v in g.edges:
        if not any(u in b and v in b for b in d.bags.values()):
            bad.append(f"(T2) edge {(u, v)} in no bag")
    adj = d.tree_adjacency()
    sets = d.node_sets()
    for v, xs in sets.items():
        xset = set(xs)
        k = len(Graph(xs, [(a, b) for a, b in d.edges if a in xset and b in xset]).components())
        if k != 1:
            bad.append(f"(T3) bags of vertex {v} are not connected")
    if variant == PATH:
        if any(len(nb) > 2 for nb in adj.values()):
            bad.append("path variant: tree has a node of degree > 2")
    elif variant in (SPAGHETTI, DIRECTED, SPECIAL):
        for v, xs in sets.items():
            xset = set(xs)
            if any(len(adj[x] & xset) > 2 for x in xs):
                bad.append(f"{variant}: bags of vertex {v} do not induce a path")
    if variant in (DIRECTED, SPECIAL):
        bad += _check_arcs(d, sets, variant)
    if max_width is not None and d.width > max_width:
        bad.append(f"width {d.width} exceeds {max_width}")
    return ValidationReport(not bad, d.width, bad)


def _check_arcs(d: Decomposition, sets: Dict[int, List[int]], variant: str) -> List[str]:
    bad = []
    if not d.bags:
        return []
    if d.arcs is None:
        return [f"{variant}: missing arc orientation"]
    und = sorted(tuple(sorted(e)) for e in d.edges)
    if sorted(tuple(sorted(a)) for a in d.arcs) != und:
        return [f"{variant}: arcs do not orient each tree edge exactly once"]
    if variant == SPECIAL:
        if d.root not in d.bags:
            return ["special: missing root"]
        expected = set(d.orient_toward(d.root))
        if set(map(tuple, d.arcs)) != expected:
            bad.append("special: some arc does not point toward the root")
    for v, xs in sets.items():
        xset = set(xs)
        indeg: Dict[int, int] = {x: 0 for x in xs}
        outdeg: Dict[int, int] = {x: 0 for x in xs}
        for a, b in d.arcs:
            if a in xset and b in xset:
                outdeg[a] += 1
                indeg[b] += 1
        if any(indeg[x] > 1 or outdeg[x] > 1 for x in xs):
            bad.append(f"{variant}: bags of vertex {v} do not induce a directed path")
    return bad


# ---------------------------------------------------------------------------
# Generic constructions


def tw2_elimination_order(g: Graph) -> Optional[List[int]]:
    """Eliminate vertices of degree <= 2 (joining the two neighbours) until
    nothing is left.  Succeeds exactly when the treewidth is at most two."""
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    order: List[int] = []
    ready = sorted(v for v in adj if len(adj[v]) <= 2)
    while adj:
        ready = [v for v in ready if v in adj and len(adj[v]) <= 2]
        if not ready:
            return None
        v = ready.pop(0)
        nb = adj.pop(v)
        for w in nb:
            adj[w].discard(v)
        if len(nb) == 2:
            a, b = nb
            adj[a].add(b)
            adj[b].add(a)
        for w in nb:
            if len(adj[w]) <= 2:
                ready.append(w)
        order.append(v)
    return order


def decomposition_from_elimination(g: Graph, order: Sequence[int]) -> Decomposition:
    """Tree decomposition whose bags are each vertex with its later neighbours
    in the filled graph."""
    pos = {v: i for i, v in enumerate(order)}
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    bags: Dict[int, FrozenSet[int]] = {}
    parent: Dict[int, Optional[int]] = {}
    for i, v in enumerate(order):
        later = adj[v]
        bags[i] = frozenset(later | {v})
        parent[i] = min((pos[w] for w in later), default=None)
        for a in later:
            adj[a] |= later - {a}
            adj[a].discard(v)
        del adj[v]
    edges = [(i, p) for i, p in parent.items() if p is not None]
    roots = [i for i, p in parent.items() if p is None]
    edges += list(zip(roots, roots[1:]))
    return Decomposition(bags, edges, TREE)


def cycle_path_bags(cycle: Sequence[int]) -> Tuple[List[FrozenSet[int]], Dict[Tuple[int, int], int]]:
    """Width-2 path bags of a chordless cycle c_1..c_m with its edge map.

    Every bag holds c_m; the edge map sends each cycle edge to the path node
    where the bag sets of its two ends share an end node.
    """
    c = list(cycle)
    m = len(c)
    last = c[-1]
    bags = [frozenset([last, c[0]])]
    for i in range(m - 2):
        bags.append(frozenset([last, c[i], c[i + 1]]))
    bags.append(frozenset([last, c[m - 2]]))
    emap = {_e(last, c[0]): 0}
    for i in range(m - 1):
        emap[_e(c[i], c[i + 1])] = i + 1
    return bags, emap


def _e(u: int, v: int) -> Tuple[int, int]:
    return (u, v) if u < v else (v, u)


def build_cycle_decomposition(cycle: Sequence[int], first: Optional[int] = None) -> Decomposition:
    c = list(cycle)
    if first is not None:
        i = c.index(first)
        c = c[i:] + c[:i]
    return Decomposition.path(cycle_path_bags(c)[0])


# ---------------------------------------------------------------------------
# Blocks of width two: cell analysis shared by the builders


def block_cells(b: Graph):
    """(cell completion, cell structure) of a 2-connected block with >= 3 vertices."""
    from .cellmodel import cell_completion, cells

    gt = cell_completion(b)
    return gt, cells(gt)


def _walk(cycle: Sequence[int], a: int, b: int) -> List[int]:
    """The path from a to b around the cycle that avoids the edge ab."""
    c = list(cycle)
    m = len(c)
    i = c.index(a)
    if c[(i + 1) % m] == b:
        c = c[::-1]
        i = c.index(a)
    return [c[(i + k) % m] for k in range(m)]


def _cells_vertex_order(seq: Sequence[Tuple[int, ...]], first: Optional[int] = None) -> List[int]:
    """A vertex ordering of width 2 for a sequence of cycles that consecutively
    share one edge; ``first`` (which must lie on the first cycle) comes first."""
    p = len(seq)
    shared = []
    for x, y in zip(seq, seq[1:]):
        common = [(u, v) for u, v in zip(x, x[1:] + x[:1]) if u in y and v in y and _adjacent_in(y, u, v)]
        shared.append(common[0])
    c1 = list(seq[0])
    if p == 1:
        start = c1.index(first) if first is not None else 0
        return c1[start:] + c1[:start]
    a, b = shared[0]
    path = _walk(c1, a, b)
    if first is None:
        order = list(path)
    else:
        j = path.index(first)
        order = path[j::-1] + path[j + 1:]
    placed = set(order)
    for i in range(1, p):
        x, y = shared[i - 1]
        q = _walk(seq[i], x, y)
        if not set(seq[i]) & placed <= {x, y}:
            raise DecompositionError("cycle sequence is not a path of cycles")
        t = len(q) - 1
        if i == p - 1 or set(shared[i]) == {x, y}:
            new = q[1:t]
        else:
            ex = set(shared[i])
            s = next(k for k in range(t) if {q[k], q[k + 1]} == ex)
            new = q[1:s + 1] + q[s + 1:t][::-1]
        order += new
        placed.update(new)
    return order


def _adjacent_in(cycle: Sequence[int], u: int, v: int) -> bool:
    m = len(cycle)
    i = cycle.index(u)
    return cycle[(i + 1) % m] == v or cycle[(i - 1) % m] == v


def _head_sequences(cs, model) -> List[List[Tuple[int, ...]]]:
    """Both orientations of the cycle path model."""
    seq = list(model.cycles)
    return [seq, seq[::-1]]


def head_sequence(cs, model, v: int) -> Optional[List[Tuple[int, ...]]]:
    """A reordering of the model that starts with a cell the vertex can open, or None.

    The first cell may be any member of the leading run of simplicial triangles
    that share one edge; otherwise it is the first cell of an orientation.
    """
    simp = {c: s for c, s in zip(cs.cells, cs.simplicial)}
    for seq in _head_sequences(cs, model):
        if v in seq[0]:
            return seq
        if not simp[seq[0]] or len(seq) == 1:
            continue
        e = set(seq[0]) & set(seq[1])
        k = 0
        while k < len(seq) and simp[seq[k]] and e <= set(seq[k]):
            if v in seq[k]:
                return [seq[k]] + seq[:k] + seq[k + 1:]
            k += 1
    return None


def build_mamba_path(b: Graph, first: Optional[int] = None, oracle_fallback: bool = True) -> Decomposition:
    """Width-2 path decomposition of a mamba block, ``first`` in the first bag.

    Raises DecompositionError when the block is not a mamba or ``first`` is not
    a head vertex.
    """
    from .cellmodel import CellError, cycle_path_model

    if b.n <= 2:
        vs = list(b.vertices)
        if first is not None:
            vs.sort(key=lambda x: x != first)
        return Decomposition.path([frozenset(vs)])
    try:
        gt, cs = block_cells(b)
        model = cycle_path_model(cs)
    except CellError as exc:
        raise DecompositionError(f"block is not a mamba: {exc}") from exc
    seq = list(model.cycles) if first is None else head_sequence(cs, model, first)
    if seq is None:
        if oracle_fallback and b.n <= 20:
            from .oracles import head_vertex_oracle

            d = head_vertex_oracle(b, first)
            if d is not None:
                return d
        raise DecompositionError(f"vertex {first} is not a head vertex of the block")
    order = _cells_vertex_order(seq, first)
    d = Decomposition.path(bags_from_order(gt, order))
    if first is not None and first not in d.bags[0]:
        raise DecompositionError("head vertex fell out of the first bag")
    rep = validate(b, d, PATH, max_width=2)
    if not rep.ok:
        raise DecompositionError("internal: mamba path failed validation: " + "; ".join(rep.violations))
    return d


# ---------------------------------------------------------------------------
# Spaghetti decompositions of chain trees of cycles


def _potential_set(cs) -> set:
    """Per separator with fewer than two body cells, promote the lowest simplicial
    triangles on it until two cells on it count."""
    pot = set()
    for e in sorted(cs.separators):
        on = cs.cells_on(e)
        need = 2 - len(cs.bodies_on(e))
        for i in sorted(i for i in on if cs.simplicial[i])[:max(need, 0)]:
            pot.add(i)
    return pot


class _Piece:
    """Decomposition under construction: bags, edges and the edge-to-node map."""

    def __init__(self):
        self.bags: List[FrozenSet[int]] = []
        self.edges: List[Tuple[int, int]] = []
        self.emap: Dict[Tuple[int, int], int] = {}

    def absorb(self, other: "_Piece") -> Dict[int, int]:
        off = len(self.bags)
        self.bags += other.bags
        self.edges += [(a + off, b + off) for a, b in other.edges]
        for e, x in other.emap.items():
            self.emap[e] = x + off
        return {x: x + off for x in range(len(other.bags))}

    def add_bag(self, bag) -> int:
        self.bags.append(frozenset(bag))
        return len(self.bags) - 1


def _spaghetti_part(all_cells, part: List[int], pot: set) -> _Piece:
    cyc = {i: all_cells[i] for i in part}
    edge_cells: Dict[Tuple[int, int], List[int]] = {}
    for i, c in cyc.items():
        for k in range(len(c)):
            edge_cells.setdefault(_e(c[k], c[(k + 1) % len(c)]), []).append(i)
    seps = sorted(e for e, on in edge_cells.items() if len(on) >= 2)
    if not seps:
        (i,) = part
        piece = _Piece()
        bags, emap = cycle_path_bags(cyc[i])
        piece.bags = bags
        piece.edges = [(k, k + 1) for k in range(len(bags) - 1)]
        piece.emap = emap
        return piece
    nbrs: Dict[int, set] = {}
    for u, v in edge_cells:
        nbrs.setdefault(u, set()).add(v)
        nbrs.setdefault(v, set()).add(u)

    def simplicial(i: int) -> bool:
        return len(cyc[i]) == 3 and any(len(nbrs[x]) == 2 for x in cyc[i])

    u, v = seps[0]
    on = edge_cells[(u, v)]
    counted = [i for i in on if not simplicial(i) or i in pot]
    if len(counted) != 2:
        raise DecompositionError("internal: separator without exactly two body or potential cells")
    # every other cell belongs to the side of exactly one cell on uv
    side = {i: i for i in on}
    owner: Dict[int, int] = {}
    for i in on:
        for x in cyc[i]:
            if x not in (u, v):
                owner[x] = i
    pending = [i for i in part if i not in side]
    while pending:
        rest = []
        for i in pending:
            hit = [owner[x] for x in cyc[i] if x in owner]
            if hit:
                side[i] = hit[0]
                for x in cyc[i]:
                    if x not in (u, v):
                        owner[x] = hit[0]
            else:
                rest.append(i)
        if len(rest) == len(pending):
            raise DecompositionError("internal: disconnected part")
        pending = rest
    piece = _Piece()
    ends = []
    for c in counted:
        sub = [i for i in part if side[i] == c]
        sub_pot = {i for i in pot if i in sub}
        sub_seps = sum(1 for k in range(len(cyc[c])) if len(edge_cells[_e(cyc[c][k], cyc[c][(k + 1) % len(cyc[c])])]) >= 2)
        if len(cyc[c]) == 3 and sub_seps == 2:
            sub_pot.add(c)
        child = _spaghetti_part(all_cells, sub, sub_pot)
        shift = piece.absorb(child)
        ends.append(shift[child.emap[(u, v)]])
    others = sorted((i for i in on if i not in counted), key=lambda i: min(cyc[i]))
    prev = ends[0]
    for i in others:
        z = piece.add_bag(cyc[i])
        piece.edges.append((prev, z))
        prev = z
    piece.edges.append((prev, ends[1]))
    piece.emap.pop((u, v), None)
    return piece


def spaghetti_block(b: Graph) -> Decomposition:
    """Width-2 spaghetti decomposition of a 2-connected chain tree of cycles."""
    from .cellmodel import CellError, classify

    if b.n <= 2:
        return Decomposition({0: frozenset(b.vertices)}, [], SPAGHETTI)
    try:
        gt, cs = block_cells(b)
    except CellError as exc:
        raise DecompositionError(f"block is not a tree of cycles: {exc}") from exc
    if not classify(cs).chain:
        raise DecompositionError("block is not a chain tree of cycles")
    piece = _spaghetti_part(cs.cells, list(range(len(cs.cells))), _potential_set(cs))
    return Decomposition(dict(enumerate(piece.bags)), piece.edges, SPAGHETTI)


def _path_ends(d: Decomposition, v: int, directed: bool) -> Tuple[int, int]:
    """First and last node of the path of bags containing v."""
    xs = [x for x in sorted(d.bags) if v in d.bags[x]]
    xset = set(xs)
    if directed:
        out = {a: b for a, b in d.arcs if a in xset and b in xset}
        head = [x for x in xs if x not in out.values()][0]
        tail = [x for x in xs if x not in out][0]
        return head, tail
    deg = {x: 0 for x in xs}
    for a, b in d.edges:
        if a in xset and b in xset:
            deg[a] += 1
            deg[b] += 1
    ends = [x for x in xs if deg[x] <= 1]
    return ends[0], ends[-1]


def glue_blocks(g: Graph, parts: Sequence[Decomposition], variant: str) -> Decomposition:
    """Join per-block decompositions into one for g.

    At each cut vertex the blocks (in order of their least vertex) are chained
    end to start along the vertex's bag paths; components are then linked
    arbitrarily.  Arcs, when present, are kept and the new links point forward.
    """
    directed = variant == DIRECTED
    bags: Dict[int, FrozenSet[int]] = {}
    edges: List[Tuple[int, int]] = []
    arcs: List[Tuple[int, int]] = []
    shifted: List[Decomposition] = []
    off = 0
    for d in parts:
        m = {x: i + off for i, x in enumerate(sorted(d.bags))}
        nd = Decomposition({m[x]: d.bags[x] for x in d.bags}, [(m[a], m[b]) for a, b in d.edges], d.variant,
                           [(m[a], m[b]) for a, b in d.arcs] if d.arcs is not None else None)
        shifted.append(nd)
        bags.update(nd.bags)
        edges += nd.edges
        arcs += nd.arcs or []
        off += len(d.bags)
    holders: Dict[int, List[int]] = {}
    for k, d in enumerate(shifted):
        for v in set().union(*d.bags.values()):
            holders.setdefault(v, []).append(k)
    for v in sorted(holders):
        ks = sorted(holders[v], key=lambda k: min(set().union(*shifted[k].bags.values())))
        for k1, k2 in zip(ks, ks[1:]):
            a = _path_ends(shifted[k1], v, directed)[1]
            b = _path_ends(shifted[k2], v, directed)[0]
            edges.append((a, b))
            arcs.append((a, b))
    # link components of the decomposition tree
    tree = Graph(list(bags), edges)
    comps = sorted(tree.components(), key=min)
    for c1, c2 in zip(comps, comps[1:]):
        edges.append((min(c1), min(c2)))
        arcs.append((min(c1), min(c2)))
    return Decomposition(bags, edges, variant, arcs if directed else None)


def _blocks_of(g: Graph) -> List[Graph]:
    from .graph import blocks

    out = [g.subgraph(b) for b in blocks(g).blocks]
    covered = set().union(*[set(b.vertices) for b in out]) if out else set()
    out += [g.subgraph([v]) for v in g.vertices if v not in covered]
    return out


def build_spaghetti(g: Graph) -> Decomposition:
    """Width-2 spaghetti decomposition of a graph whose blocks are chain trees of cycles."""
    parts = [spaghetti_block(b) for b in _blocks_of(g)]
    d = glue_blocks(g, parts, SPAGHETTI)
    return _checked(g, d, SPAGHETTI)


def build_directed_spaghetti(g: Graph) -> Decomposition:
    """Width-2 directed spaghetti decomposition of a graph whose blocks are mambas."""
    parts = [build_mamba_path(b).as_variant(DIRECTED) for b in _blocks_of(g)]
    # paths come oriented toward node 0; flip so they run first bag -> last bag
    parts = [Decomposition(p.bags, p.edges, DIRECTED, [(b, a) for a, b in p.arcs]) for p in parts]
    d = glue_blocks(g, parts, DIRECTED)
    return _checked(g, d, DIRECTED)


def _checked(g: Graph, d: Decomposition, variant: str, width: int = 2) -> Decomposition:
    rep = validate(g, d, variant, max_width=width)
    if not rep.ok:
        raise DecompositionError(f"internal: {variant} construction failed: " + "; ".join(rep.violations[:3]))
    return d


# ---------------------------------------------------------------------------
# Special decompositions from a peeling trace


def build_special(g: Graph, trace, width: int = 2) -> Decomposition:
    """Width-2 special decomposition from a peeling trace.

    ``trace.residual`` lists the vertex set left in each component once no
    more leaf blocks could be peeled; each must induce a mamba block, whose
    path decomposition becomes a spine rooted at its first bag.
    ``trace.steps`` lists the peeled leaf blocks with their cut vertices; they
    are re-attached in reverse peel order, each as a path opening at its cut
    vertex and hanging below the deepest bag holding that vertex.
    """
    bags: Dict[int, FrozenSet[int]] = {}
    arcs: List[Tuple[int, int]] = []
    deepest: Dict[int, int] = {}

    def add_path(path_bags: Sequence[FrozenSet[int]], parent: Optional[int]) -> int:
        first = len(bags)
        for k, b in enumerate(path_bags):
            x = first + k
            bags[x] = frozenset(b)
            if k > 0:
                arcs.append((x, x - 1))
            for v in b:
                deepest[v] = x
        if parent is not None:
            arcs.append((first, parent))
        return first

    root = None
    for res in trace.residual:
        d = build_mamba_path(g.subgraph(res))
        x = add_path([d.bags[i] for i in sorted(d.bags)], root)
        if root is None:
            root = x
    for step in reversed(trace.steps):
        c = step.cut
        d = build_mamba_path(g.subgraph(step.block), first=c)
        if c not in deepest:
            raise DecompositionError(f"cut vertex {c} not yet placed when re-attaching a peeled block")
        add_path([d.bags[i] for i in sorted(d.bags)], deepest[c])
    edges = [(a, b) for a, b in arcs]
    out = Decomposition(bags, edges, SPECIAL, arcs, root)
    return _checked(g, out, SPECIAL, width)


# ---------------------------------------------------------------------------
# Strongly chordal triangulation of 2-boundaried trees of cycles


def ladder_triangles(cycle: Sequence[int], first_edge: Tuple[int, int], second_edge: Tuple[int, int]):
    """Triangulate a cycle by sweeping a rung from one edge to the other.

    Returns (chords, triangles).  Every triangle keeps one cycle edge that no
    other triangle uses and that is neither of the two given edges.
    """
    c = list(cycle)
    m = len(c)
    if m == 3:
        return [], [tuple(sorted(c))]
    a, b = first_edge
    i = c.index(a)
    if c[(i - 1) % m] != b:
        c = c[::-1]
        i = c.index(a)
    c = c[i:] + c[:i]  # now c[0] = a and c[-1] = b
    ex = set(second_edge)
    s = next(k for k in range(m - 1) if {c[k], c[k + 1]} == ex)
    xs = c[:s + 1]
    ys = c[s + 1:][::-1]
    chords = []
    tris = []
    i = j = 0
    while i < len(xs) - 1 or j < len(ys) - 1:
        if i < len(xs) - 1 and (j == len(ys) - 1 or i <= j):
            tris.append(tuple(sorted((xs[i], ys[j], xs[i + 1]))))
            i += 1
        else:
            tris.append(tuple(sorted((xs[i], ys[j], ys[j + 1]))))
            j += 1
        if i < len(xs) - 1 or j < len(ys) - 1:
            chords.append(_e(xs[i], ys[j]))
    return chords, tris


def _designated(cycle: Sequence[int], seps: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
    c = list(cycle)
    m = len(c)
    edges = [_e(c[k], c[(k + 1) % m]) for k in range(m)]
    chosen = list(seps)
    if not chosen:
        chosen.append(edges[0])
    if len(chosen) == 1:
        k = edges.index(_e(*chosen[0]))
        chosen.append(edges[(k + m // 2) % m])
    return chosen


def sc_triangulation(g: Graph) -> Graph:
    """Strongly chordal supergraph of clique number <= 3 for a graph whose
    blocks are 2-boundaried trees of cycles."""
    from .cellmodel import CellError, classify, cycle_edges
    from .chordal import clique_number_chordal, is_strongly_chordal

    extra: List[Tuple[int, int]] = []
    for b in _blocks_of(g):
        if b.n <= 2:
            continue
        try:
            gt, cs = block_cells(b)
        except CellError as exc:
            raise DecompositionError(f"block is not a tree of cycles: {exc}") from exc
        if not classify(cs).two_boundaried:
            raise DecompositionError("block has a cell with three or more separators")
        extra += list(gt.edges)
        for i, cyc in enumerate(cs.cells):
            e1, e2 = _designated(cyc, cs.separators_of(i))
            chords, tris = ladder_triangles(cyc, e1, e2)
            extra += chords
            boundary = set(cycle_edges(cyc)) - {e1, e2}
            for t in tris:
                own = {_e(t[0], t[1]), _e(t[0], t[2]), _e(t[1], t[2])} & boundary
                others = [t2 for t2 in tris if t2 != t]
                if not any(all(not set(e) <= set(t2) for t2 in others) for e in own):
                    raise DecompositionError("internal: triangle without a private edge")
    h = g.with_edges(e for e in set(extra) if not g.has_edge(*e))
    seo = is_strongly_chordal(h)
    if seo is None or clique_number_chordal(h, seo) > 3:
        raise DecompositionError("internal: triangulation is not strongly chordal of clique number <= 3")
    return h


def sc_decomposition(g: Graph) -> Tuple[Graph, Decomposition]:
    """The triangulation and a width-2 tree decomposition read off its elimination order."""
    from .chordal import is_strongly_chordal

    h = sc_triangulation(g)
    d = decomposition_from_elimination(h, is_strongly_chordal(h).order)
    return h, _checked(g, d, TREE)


# ---------------------------------------------------------------------------
# Doubled trees


def build_special_GT(t: Graph, root: Optional[int] = None) -> Decomposition:
    """Width-3 special decomposition of the doubled tree (copies 2v and 2v+1)."""
    if not t.is_forest():
        raise DecompositionError("input must be a forest")
    bags: Dict[int, FrozenSet[int]] = {}
    arcs: List[Tuple[int, int]] = []
    deepest: Dict[int, int] = {}
    top = None
    for comp in sorted(t.components(), key=min):
        r = min(comp) if root is None or root not in comp else root
        x = len(bags)
        bags[x] = frozenset([2 * r, 2 * r + 1])
        deepest[r] = x
        if top is None:
            top = x
        else:
            arcs.append((x, top))
        frontier = [r]
        seen = {r}
        while frontier:
            nxt = []
            for y in frontier:
                for z in sorted(t.neighbors(y)):
                    if z in seen:
                        continue
                    seen.add(z)
                    x = len(bags)
                    bags[x] = frozenset([2 * y, 2 * y + 1, 2 * z, 2 * z + 1])
                    arcs.append((x, deepest[y]))
                    deepest[y] = x
                    deepest[z] = x
                    nxt.append(z)
            frontier = nxt
    return Decomposition(bags, list(arcs), SPECIAL, arcs, top)
