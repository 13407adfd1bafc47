"""Minor containment by branch-set search, model verification, and the catalog
of small obstruction graphs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from .graph import Graph, GraphError, blocks, contract

DEFAULT_BUDGET = 2_000_000


class MinorBudgetError(GraphError):
    """The branch-set search ran out of nodes; the answer is unknown."""


@dataclass
class MinorModel:
    branch_sets: Dict[int, FrozenSet[int]]
    edge_witnesses: Dict[Tuple[int, int], Tuple[int, int]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "branch_sets": {str(p): sorted(s) for p, s in sorted(self.branch_sets.items())},
            "edge_witnesses": [[a, b, x, y] for (a, b), (x, y) in sorted(self.edge_witnesses.items())],
        }

    @classmethod
    def from_json(cls, d: dict) -> "MinorModel":
        bs = {int(p): frozenset(s) for p, s in d["branch_sets"].items()}
        ew = {(a, b): (x, y) for a, b, x, y in d.get("edge_witnesses", [])}
        return cls(bs, ew)


def witnesses(host: Graph, pattern: Graph, branch: Dict[int, FrozenSet[int]]) -> Optional[Dict]:
    out = {}
    for a, b in pattern.edges:
        hit = next(((x, y) for x in sorted(branch[a]) for y in sorted(host.neighbors(x)) if y in branch[b]), None)
        if hit is None:
            return None
        out[(a, b)] = hit
    return out


def verify_model(
    host: Graph, pattern: Graph, m: MinorModel, root: Optional[Tuple[int, int]] = None
) -> Tuple[bool, List[str]]:
    """Check every model invariant; returns (ok, list of violations)."""
    bad: List[str] = []
    bs = m.branch_sets
    if set(bs) != set(pattern.vertices):
        bad.append(f"branch sets cover {sorted(bs)} but pattern has {list(pattern.vertices)}")
        return False, bad
    seen: Dict[int, int] = {}
    for p, s in bs.items():
        if not s:
            bad.append(f"branch set of {p} is empty")
            continue
        missing = [x for x in s if x not in host]
        if missing:
            bad.append(f"branch set of {p} uses non-host vertices {missing}")
            continue
        for x in s:
            if x in seen:
                bad.append(f"host vertex {x} in branch sets of {seen[x]} and {p}")
            seen[x] = p
        if len(host.components(within=s)) != 1:
            bad.append(f"branch set of {p} is not connected")
    for a, b in pattern.edges:
        w = m.edge_witnesses.get((a, b)) or m.edge_witnesses.get((b, a))
        if w is None:
            bad.append(f"no witness for pattern edge {(a, b)}")
            continue
        x, y = w
        ok_side = (x in bs.get(a, ()) and y in bs.get(b, ())) or (x in bs.get(b, ()) and y in bs.get(a, ()))
        if not ok_side or not host.has_edge(x, y):
            bad.append(f"witness {w} does not join branch sets of {a} and {b}")
    if root is not None:
        z, v = root
        if z not in bs.get(v, ()):
            bad.append(f"host root {z} is not in the branch set of pattern root {v}")
    return not bad, bad


def model_ok(host: Graph, pattern: Graph, m: MinorModel, root=None) -> bool:
    return verify_model(host, pattern, m, root)[0]


# ---------------------------------------------------------------------------
# Branch-set search


def _connected_sets(nb: List[int], seed: int, allowed: int, max_size: int) -> Iterator[int]:
    """Connected vertex sets containing ``seed`` inside ``allowed``, each once."""

    def grow(s: int, cand: int, banned: int, size: int) -> Iterator[int]:
        yield s
        if size >= max_size:
            return
        while cand:
            low = cand & -cand
            cand ^= low
            i = low.bit_length() - 1
            banned |= low
            yield from grow(s | low, cand | (nb[i] & allowed & ~s & ~banned), banned, size + 1)

    start = 1 << seed
    yield from grow(start, nb[seed] & allowed & ~start, start, 1)


def _pattern_order(pattern: Graph, root: Optional[int]) -> List[int]:
    if root is not None:
        first = root
    else:
        first = max(pattern.vertices, key=lambda v: (pattern.degree(v), -v))
    order = [first]
    while len(order) < pattern.n:
        placed = set(order)
        rest = [v for v in pattern.vertices if v not in placed]
        # most constrained next: many placed neighbours, then high degree
        nxt = max(rest, key=lambda v: (len(pattern.neighbors(v) & placed), pattern.degree(v), -v))
        order.append(nxt)
    return order


def _search(host: Graph, pattern: Graph, root: Optional[Tuple[int, int]], budget: int) -> Optional[MinorModel]:
    hv = list(host.vertices)
    idx = {v: i for i, v in enumerate(hv)}
    nb = [0] * len(hv)
    for v in hv:
        for w in host.neighbors(v):
            nb[idx[v]] |= 1 << idx[w]
    full = (1 << len(hv)) - 1
    order = _pattern_order(pattern, root[1] if root else None)
    pos = {p: i for i, p in enumerate(order)}
    earlier = [[q for q in pattern.neighbors(p) if pos[q] < pos[p]] for p in order]
    later_of = {p: [q for q in pattern.neighbors(p) if pos[q] > pos[p]] for p in order}
    k = len(order)
    chosen: List[int] = [0] * k
    nodes = [0]

    def nbhd(s: int) -> int:
        out = 0
        x = s
        while x:
            low = x & -x
            out |= nb[low.bit_length() - 1]
            x ^= low
        return out & ~s

    def feasible(i: int, used: int) -> bool:
        free = full & ~used
        if bin(free).count("1") < k - i - 1:
            return False
        for j in range(i + 1):
            if any(pos[q] > i for q in later_of[order[j]]) and not (nbhd(chosen[j]) & free):
                return False
        return True

    def place(i: int, used: int) -> bool:
        if i == k:
            return True
        free = full & ~used
        max_size = bin(free).count("1") - (k - i - 1)
        need = [chosen[pos[q]] for q in earlier[i]]
        if i == 0 and root is not None:
            z = idx[root[0]]
            seeds = [(z, free)]
        elif need:
            touch = nbhd(need[0]) & free
            seeds = []
            x = touch
            while x:
                low = x & -x
                x ^= low
                # the seed is the least vertex of the set that touches need[0]
                seeds.append((low.bit_length() - 1, free & ~(touch & (low - 1))))
        else:
            seeds = []
            x = free
            while x:
                low = x & -x
                x ^= low
                seeds.append((low.bit_length() - 1, free & ~(low - 1)))
        for seed, allowed in seeds:
            for s in _connected_sets(nb, seed, allowed, max_size):
                nodes[0] += 1
                if nodes[0] > budget:
                    raise MinorBudgetError(f"minor search exceeded {budget} nodes")
                ns = nbhd(s)
                if any(not (ns & c) for c in need):
                    continue
                chosen[i] = s
                if feasible(i, used | s) and place(i + 1, used | s):
                    return True
        chosen[i] = 0
        return False

    if not place(0, 0):
        return None
    branch = {}
    for i, p in enumerate(order):
        branch[p] = frozenset(hv[j] for j in range(len(hv)) if (chosen[i] >> j) & 1)
    return MinorModel(branch, witnesses(host, pattern, branch))


def _strip(host: Graph, keep: Sequence[int], min_deg: int) -> Graph:
    """Drop vertices of degree below ``min_deg`` repeatedly (never those in keep)."""
    h = host
    while True:
        low = [v for v in h.vertices if h.degree(v) < min_deg and v not in keep]
        if not low:
            return h
        h = h.without_vertices(low)


def has_minor(host: Graph, pattern: Graph, budget: int = DEFAULT_BUDGET) -> Optional[MinorModel]:
    """A model of pattern in host, or None if pattern is not a minor.

    Raises MinorBudgetError instead of guessing when the search is too large.
    """
    if pattern.n == 0:
        return MinorModel({})
    if host.n < pattern.n or host.m < pattern.m:
        return None
    pmin = min(pattern.degree(v) for v in pattern.vertices)
    h = _strip(host, (), min(pmin, 2))
    if h.n < pattern.n or h.m < pattern.m:
        return None
    if pattern.is_biconnected():
        # a 2-connected pattern sits inside one block of the host
        for b in sorted(blocks(h).blocks, key=len):
            if len(b) < pattern.n:
                continue
            sub = h.subgraph(b)
            if sub.m < pattern.m:
                continue
            found = _search(sub, pattern, None, budget)
            if found is not None:
                return _checked(host, pattern, found)
        return None
    found = _search(h, pattern, None, budget)
    return None if found is None else _checked(host, pattern, found)


def has_rooted_minor(
    host: Graph, z: int, pattern: Graph, v: int, budget: int = DEFAULT_BUDGET
) -> Optional[MinorModel]:
    """A model of (pattern, v) in (host, z): z lies in the branch set of v."""
    if z not in host or v not in pattern:
        raise GraphError("root vertex missing")
    if host.n < pattern.n or host.m < pattern.m:
        return None
    pmin = min(pattern.degree(x) for x in pattern.vertices)
    h = _strip(host, (z,), min(pmin, 2))
    if h.n < pattern.n or h.m < pattern.m:
        return None
    found = _search(h, pattern, (z, v), budget)
    return None if found is None else _checked(host, pattern, found, (z, v))


def _checked(host: Graph, pattern: Graph, m: MinorModel, root=None) -> MinorModel:
    ok, bad = verify_model(host, pattern, m, root)
    if not ok:
        raise AssertionError(f"internal error, minor model failed verification: {bad}")
    return m


# ---------------------------------------------------------------------------
# Shrinking a large host before searching


def shrink_host(
    host: Graph, keep: Callable[[Graph], bool], protect: Sequence[int] = ()
) -> Tuple[Graph, Dict[int, FrozenSet[int]]]:
    """Greedily take deletions and contractions that preserve ``keep``.

    Returns the reduced graph and, per surviving vertex, the set of host
    vertices contracted into it (always connected in the host).  Protected
    vertices are never deleted and survive contractions under their own name.
    """
    if not keep(host):
        raise GraphError("shrink predicate fails on the input")
    h = host
    merged: Dict[int, FrozenSet[int]] = {v: frozenset([v]) for v in host.vertices}
    prot = set(protect)

    # vertex deletion, in halving chunks first
    verts = [v for v in h.vertices if v not in prot]
    chunk = max(1, len(verts) // 2)
    while chunk >= 1:
        i = 0
        verts = [v for v in h.vertices if v not in prot]
        while i < len(verts):
            part = verts[i:i + chunk]
            cand = h.without_vertices(part)
            if keep(cand):
                h = cand
                verts = verts[:i] + verts[i + chunk:]
            else:
                i += chunk
        if chunk == 1:
            break
        chunk //= 2
    changed = True
    while changed:
        changed = False
        for e in h.edges:
            cand = h.without_edges([e])
            if keep(cand):
                h = cand
                changed = True
                break
        if changed:
            continue
        for u, v in h.edges:
            if u in prot and v in prot:
                continue
            keepv = u if u in prot else v if v in prot else min(u, v)
            gone = v if keepv == u else u
            cand = contract(h, u, v, keepv)
            if keep(cand):
                h = cand
                merged[keepv] = merged[keepv] | merged[gone]
                changed = True
                break
    return h, {v: merged[v] for v in h.vertices}


def expand_model(host: Graph, pattern: Graph, m: MinorModel, merged: Dict[int, FrozenSet[int]]) -> MinorModel:
    branch = {p: frozenset().union(*(merged[x] for x in s)) for p, s in m.branch_sets.items()}
    return MinorModel(branch, witnesses(host, pattern, branch) or {})


def minor_by_shrinking(
    host: Graph, pattern: Graph, keep: Callable[[Graph], bool], root: Optional[Tuple[int, int]] = None
) -> Optional[MinorModel]:
    """Shrink host under ``keep`` and search the small remainder.

    ``keep`` must imply that the pattern (rooted, if given) is a minor.
    """
    small, merged = shrink_host(host, keep, (root[0],) if root else ())
    if root is None:
        m = has_minor(small, pattern)
    else:
        m = has_rooted_minor(small, root[0], pattern, root[1])
    if m is None:
        return None
    big = expand_model(host, pattern, m, merged)
    return _checked(host, pattern, big, root)


# ---------------------------------------------------------------------------
# Obstruction catalog

K3, K4, D3, S3 = "K3", "K4", "D3", "S3"
G1, G2, G3, H1, H2 = "G1", "G2", "G3", "H1", "H2"
ALL_IDS = (K3, K4, D3, S3, G1, G2, G3, H1, H2)

# obstruction sets per parameter at bound 2 (K3 alone for bound 1)
OBSTRUCTIONS = {
    "tw": (K4,),
    "sptw": (K4, D3),
    "sctw": (K4, S3),
    "dptw": (K4, D3, S3),
    "mamba": (K4, D3, S3),
    "spctw": (K4, D3, S3, G1, G2, G3),
}
WIDTH_ONE = (K3,)

# Rooted blocks.  Root is vertex 0 in both.
#   H1: the root z sees u1 and u2; hub w sees u1 and u2; triangles w-u1-a and w-u2-b.
#   H2: the root z sees x and y; two further x-y paths with two inner vertices each.
_H1_EDGES = [(0, 2), (0, 3), (1, 2), (1, 3), (1, 4), (2, 4), (1, 5), (3, 5)]
_H2_EDGES = [(0, 1), (0, 2), (1, 3), (3, 4), (4, 2), (1, 5), (5, 6), (6, 2)]
ROOTED = {H1: (6, _H1_EDGES), H2: (7, _H2_EDGES)}
ROOT = 0
# the two-block obstructions glue two rooted blocks at their roots
GLUED = {G1: (H1, H1), G2: (H1, H2), G3: (H2, H2)}


def _glue(a: str, b: str) -> Tuple[Graph, Dict[str, Dict[int, int]]]:
    na, ea = ROOTED[a]
    nb_, eb = ROOTED[b]
    left = {x: x for x in range(na)}
    right = {0: 0}
    right.update({x: na + x - 1 for x in range(1, nb_)})
    edges = [(left[u], left[v]) for u, v in ea] + [(right[u], right[v]) for u, v in eb]
    return Graph(range(na + nb_ - 1), edges), {"left": left, "right": right}


def obstruction_graph(oid: str) -> Graph:
    if oid == K3:
        return Graph(range(3), [(0, 1), (1, 2), (0, 2)])
    if oid == K4:
        return Graph(range(4), [(i, j) for i in range(4) for j in range(i + 1, 4)])
    if oid == D3:
        return Graph(range(8), [(0, 2), (2, 3), (3, 1), (0, 4), (4, 5), (5, 1), (0, 6), (6, 7), (7, 1)])
    if oid == S3:
        return Graph(range(6), [(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (4, 1), (4, 2), (5, 2), (5, 0)])
    if oid in ROOTED:
        n, e = ROOTED[oid]
        return Graph(range(n), e)
    if oid in GLUED:
        return _glue(*GLUED[oid])[0]
    raise GraphError(f"unknown obstruction {oid!r}")


def glue_maps(oid: str) -> Dict[str, Dict[int, int]]:
    """Vertex maps from the two rooted blocks into G1/G2/G3."""
    return _glue(*GLUED[oid])[1]
