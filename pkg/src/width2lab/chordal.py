"""Chordal and strongly chordal recognition via elimination orderings."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set

from .graph import Graph, GraphError

PERFECT = "perfect"
SIMPLE = "simple"


@dataclass(frozen=True)
class EliminationOrdering:
    order: tuple
    kind: str = PERFECT


def mcs_order(g: Graph) -> List[int]:
    """Maximum cardinality search; the reverse visit order is a PEO iff g is chordal."""
    weight = {v: 0 for v in g.vertices}
    visited: List[int] = []
    left = set(g.vertices)
    while left:
        v = max(left, key=lambda x: (weight[x], -x))
        left.discard(v)
        visited.append(v)
        for w in g.neighbors(v):
            if w in left:
                weight[w] += 1
    return visited[::-1]


def is_perfect_elimination(g: Graph, order: Sequence[int]) -> bool:
    if sorted(order) != sorted(g.vertices):
        return False
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in g.neighbors(v) if pos[w] > pos[v]]
        if not later:
            continue
        # enough to check that the earliest later neighbour sees the rest
        p = min(later, key=pos.__getitem__)
        nb = g.neighbors(p)
        if any(w != p and w not in nb for w in later):
            return False
    return True


def is_chordal(g: Graph) -> Optional[EliminationOrdering]:
    order = mcs_order(g)
    if is_perfect_elimination(g, order):
        return EliminationOrdering(tuple(order), PERFECT)
    return None


def _is_simple(adj: Dict[int, Set[int]], v: int) -> bool:
    closed = sorted((adj[u] | {u} for u in adj[v] | {v}), key=len)
    return all(a <= b for a, b in zip(closed, closed[1:]))


def is_simple_vertex(g: Graph, v: int) -> bool:
    return _is_simple({x: set(g.neighbors(x)) for x in g.vertices}, v)


def is_strongly_chordal(g: Graph, rng: Optional[random.Random] = None) -> Optional[EliminationOrdering]:
    """Greedy simple-vertex elimination.

    By default the lowest-id simple vertex goes first; passing ``rng`` picks a
    random simple vertex instead (used to test order independence).
    """
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    order: List[int] = []
    while adj:
        simple = [v for v in adj if _is_simple(adj, v)]
        if not simple:
            return None
        v = rng.choice(simple) if rng is not None else min(simple)
        for w in adj.pop(v):
            adj[w].discard(v)
        order.append(v)
    return EliminationOrdering(tuple(order), SIMPLE)


def is_simple_elimination(g: Graph, order: Sequence[int]) -> bool:
    if sorted(order) != sorted(g.vertices):
        return False
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    for v in order:
        if not _is_simple(adj, v):
            return False
        for w in adj.pop(v):
            adj[w].discard(v)
    return True


def clique_number_chordal(g: Graph, peo: EliminationOrdering) -> int:
    """Clique number of a chordal graph read off a perfect or simple ordering."""
    if not g.n:
        return 0
    ok = is_simple_elimination(g, peo.order) if peo.kind == SIMPLE else is_perfect_elimination(g, peo.order)
    if not ok:
        raise GraphError(f"invalid {peo.kind} elimination ordering")
    pos = {v: i for i, v in enumerate(peo.order)}
    return 1 + max(sum(1 for w in g.neighbors(v) if pos[w] > pos[v]) for v in g.vertices)


def clique_number(g: Graph) -> Optional[int]:
    """Clique number when g is chordal, else None."""
    peo = is_chordal(g)
    return None if peo is None else clique_number_chordal(g, peo)
