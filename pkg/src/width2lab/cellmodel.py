"""Cell completion and trees of cycles.

A 2-connected graph of treewidth two becomes, after cell completion, a graph
glued together from chordless cycles ("cells") along shared edges.  This
module finds the cells, the shared edges (separators) and the structural
flags used by the recognizers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .graph import Edge, Graph, GraphError, blocks, norm_edge


class CellError(GraphError):
    """The input is not a tree of cycles (or violates a precondition)."""


def _pair_component_counts(g: Graph) -> Dict[Edge, int]:
    """For every vertex pair {v, w}: number of components of g - {v, w}.

    Only pairs where the count differs from one are reported.  Uses one
    block decomposition of g - v per vertex: removing w from g - v leaves as
    many components as there are blocks of g - v at w.
    """
    out: Dict[Edge, int] = {}
    for v in g.vertices:
        h = g.without_vertices([v])
        base = len(h.components())
        count: Dict[int, int] = {}
        for b in blocks(h).blocks:
            for w in b:
                count[w] = count.get(w, 0) + 1
        for w in h.vertices:
            c = base - 1 + count.get(w, 0) if h.degree(w) else base - 1
            if c != 1:
                out[norm_edge(v, w)] = c
    return out


def cell_completion(g: Graph) -> Graph:
    """Add vw for each non-adjacent pair whose removal leaves >= 3 components."""
    if not g.is_biconnected():
        raise CellError("cell completion needs a 2-connected graph")
    counts = _pair_component_counts(g)
    extra = [e for e, c in counts.items() if c >= 3 and not g.has_edge(*e)]
    return g.with_edges(extra)


def separator_edges(g: Graph) -> FrozenSet[Edge]:
    """Edges uv with g - {u, v} disconnected."""
    counts = _pair_component_counts(g)
    return frozenset(e for e in g.edges if counts.get(e, 1) >= 2)


def normalize_cycle(cyc: Sequence[int]) -> Tuple[int, ...]:
    """Rotate to the least vertex and orient so the second entry is below the last."""
    c = list(cyc)
    i = c.index(min(c))
    c = c[i:] + c[:i]
    if len(c) > 2 and c[1] > c[-1]:
        c = [c[0]] + c[:0:-1]
    return tuple(c)


def cycle_edges(cyc: Sequence[int]) -> List[Edge]:
    return [norm_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]


@dataclass
class CellStructure:
    host: Graph
    cells: List[Tuple[int, ...]]
    separators: FrozenSet[Edge]
    simplicial: List[bool] = field(default_factory=list)
    separator_count: List[int] = field(default_factory=list)
    # bipartite cell/separator incidence: (cell index, separator edge)
    tree: List[Tuple[int, Edge]] = field(default_factory=list)

    def cells_on(self, e: Edge) -> List[int]:
        e = norm_edge(*e)
        return [i for i, s in self.tree if s == e]

    def separators_of(self, i: int) -> List[Edge]:
        return [s for j, s in self.tree if j == i]

    def body_cells(self) -> List[int]:
        return [i for i in range(len(self.cells)) if not self.simplicial[i]]

    def bodies_on(self, e: Edge) -> List[int]:
        return [i for i in self.cells_on(e) if not self.simplicial[i]]

    def to_json(self) -> dict:
        return {
            "n": self.host.n,
            "cells": [list(c) for c in self.cells],
            "separators": [list(e) for e in sorted(self.separators)],
            "simplicial_triangle": list(self.simplicial),
            "separator_count": list(self.separator_count),
            "flags": classify(self).to_json(),
        }


def _is_cycle(g: Graph) -> Optional[List[int]]:
    if g.n < 3 or any(g.degree(v) != 2 for v in g.vertices) or not g.is_connected():
        return None
    start = g.vertices[0]
    order = [start]
    prev, cur = None, start
    while True:
        nxt = min(x for x in g.neighbors(cur) if x != prev)
        if nxt == start:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    return order


def cells(gt: Graph) -> CellStructure:
    """Split a tree of cycles into its chordless cells.

    Raises CellError when some piece is neither splittable along an edge nor a
    chordless cycle, which happens exactly when gt is not a tree of cycles.
    """
    if gt.n <= 2:
        if gt.n == 2 and gt.m != 1 or not gt.is_connected():
            raise CellError("not a block")
        return CellStructure(gt, [], frozenset())
    if not gt.is_biconnected():
        raise CellError("cells need a 2-connected host")
    found: List[Tuple[int, ...]] = []
    seps = set()
    stack = [(frozenset(gt.vertices), sorted(separator_edges(gt)))]
    while stack:
        verts, cand = stack.pop()
        part = gt.subgraph(verts)
        for k, (u, v) in enumerate(cand):
            comps = part.components(within=verts - {u, v})
            if len(comps) >= 2:
                seps.add((u, v))
                rest = cand[k + 1:]
                for comp in comps:
                    sub = comp | {u, v}
                    stack.append((sub, [e for e in rest if e[0] in sub and e[1] in sub]))
                break
        else:
            cyc = _is_cycle(part)
            if cyc is None:
                raise CellError(f"piece on vertices {list(part.vertices)} is not a chordless cycle")
            found.append(normalize_cycle(cyc))
    found.sort()
    edge_cells: Dict[Edge, List[int]] = {}
    for i, c in enumerate(found):
        for e in cycle_edges(c):
            edge_cells.setdefault(e, []).append(i)
    shared = {e for e, cs in edge_cells.items() if len(cs) >= 2}
    if shared != seps:
        raise CellError("cell split is inconsistent with the shared edges")
    simplicial = [len(c) == 3 and any(gt.degree(x) == 2 for x in c) for c in found]
    tree = sorted((i, e) for e in shared for i in edge_cells[e])
    count = [sum(1 for e in cycle_edges(c) if e in shared) for c in found]
    return CellStructure(gt, found, frozenset(shared), simplicial, count, tree)


@dataclass(frozen=True)
class TocClass:
    is_tree_of_cycles: bool
    chain: bool
    two_boundaried: bool
    path: bool

    def to_json(self) -> dict:
        return {
            "tree_of_cycles": self.is_tree_of_cycles,
            "chain": self.chain,
            "two_boundaried": self.two_boundaried,
            "path": self.path,
        }


def classify(cs: CellStructure) -> TocClass:
    chain = True
    for e in cs.separators:
        on = cs.cells_on(e)
        if len(on) >= 3 and sum(cs.simplicial[i] for i in on) < len(on) - 2:
            chain = False
            break
    two = all(c <= 2 for c in cs.separator_count)
    return TocClass(True, chain, two, chain and two)


def try_cells(g: Graph) -> Optional[CellStructure]:
    try:
        return cells(g)
    except CellError:
        return None


@dataclass
class CyclePathModel:
    cycles: List[Tuple[int, ...]]
    shared: List[Edge]

    def to_json(self) -> dict:
        return {"cycles": [list(c) for c in self.cycles], "shared_edges": [list(e) for e in self.shared]}


def _model_order(cs: CellStructure) -> List[int]:
    bodies = cs.body_cells()
    tri_on: Dict[Edge, List[int]] = {}
    for i, c in enumerate(cs.cells):
        if cs.simplicial[i]:
            for e in cs.separators_of(i):
                tri_on.setdefault(e, []).append(i)
    if not bodies:
        # only simplicial triangles, all hanging on one edge (or a lone triangle)
        return list(range(len(cs.cells)))
    # body cells form a path through separators shared by two bodies
    link: Dict[int, List[Tuple[Edge, int]]] = {b: [] for b in bodies}
    for e in cs.separators:
        bs = cs.bodies_on(e)
        if len(bs) == 2:
            link[bs[0]].append((e, bs[1]))
            link[bs[1]].append((e, bs[0]))
    ends = [b for b in bodies if len(link[b]) <= 1]
    start = min(ends, key=lambda b: min(cs.cells[b]))
    seq = [start]
    via: List[Optional[Edge]] = [None]
    while len(seq) < len(bodies):
        nxt = [(e, b) for e, b in link[seq[-1]] if b not in seq]
        e, b = nxt[0]
        seq.append(b)
        via.append(e)

    def outer(b: int, used: Sequence[Optional[Edge]]) -> List[int]:
        out = []
        for e in cs.separators_of(b):
            if e not in used:
                out += sorted(tri_on.get(e, []))
        return out

    if len(seq) == 1:
        # a lone body cell: one triangle group before it, the other after
        groups = sorted((sorted(tri_on.get(e, [])) for e in cs.separators_of(start)),
                        key=lambda t: min(cs.cells[t[0]]) if t else -1)
        groups = [t for t in groups if t]
        lead = groups[0] if groups else []
        tail = groups[1] if len(groups) > 1 else []
    else:
        lead = outer(seq[0], [via[1]])
        tail = outer(seq[-1], [via[-1]])
    order: List[int] = []
    order += lead
    for k, b in enumerate(seq):
        if k > 0:
            order += sorted(tri_on.get(via[k], []))
        order.append(b)
    order += tail
    return order


def cycle_path_model(cs: CellStructure) -> CyclePathModel:
    if not classify(cs).path:
        raise CellError("not a path of cycles")
    if not cs.cells:
        return CyclePathModel([], [])
    order = _model_order(cs)
    rev = order[::-1]
    if min(cs.cells[rev[0]]) < min(cs.cells[order[0]]):
        order = rev
    cyc = [cs.cells[i] for i in order]
    shared = []
    for a, b in zip(cyc, cyc[1:]):
        common = set(cycle_edges(a)) & set(cycle_edges(b))
        if len(common) != 1:
            raise CellError("cells in the model do not share exactly one edge")
        shared.append(common.pop())
    if sorted(order) != list(range(len(cs.cells))):
        raise CellError("cycle path model misses a cell")
    return CyclePathModel(cyc, shared)
