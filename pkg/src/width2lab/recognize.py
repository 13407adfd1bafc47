"""Certificate-producing recognizers for width one and width two.

Every answer carries a witness: a decomposition of the right variant when the
answer is yes, an obstruction id with a minor model when it is no.
``check_certificate`` re-verifies either kind independently.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import decomp as dc
from .cellmodel import CellError, CellStructure, TocClass, cell_completion, cells, classify, cycle_path_model, cycle_edges
from .chordal import clique_number_chordal, is_strongly_chordal
from .graph import Graph, GraphError, blocks, norm_edge
from .minors import (
    D3, G1, G2, G3, H1, H2, K3, K4, S3, GLUED, OBSTRUCTIONS, ROOT, WIDTH_ONE,
    MinorModel, glue_maps, has_rooted_minor, minor_by_shrinking, obstruction_graph, verify_model,
)

PARAMS = ("tw", "sptw", "sctw", "dptw", "spctw", "mamba")
VARIANT = {
    "tw": dc.TREE,
    "sptw": dc.SPAGHETTI,
    "sctw": dc.TREE,
    "dptw": dc.DIRECTED,
    "spctw": dc.SPECIAL,
    "mamba": dc.PATH,
}


class RecognitionError(GraphError):
    pass


# ---------------------------------------------------------------------------
# Certificates


@dataclass
class PeelStep:
    block: Tuple[int, ...]
    cut: int
    head: bool = True

    def to_json(self) -> dict:
        return {"block": list(self.block), "cut": self.cut, "head": self.head}


@dataclass
class PeelTrace:
    steps: List[PeelStep] = field(default_factory=list)
    residual: List[Tuple[int, ...]] = field(default_factory=list)
    stuck: List[PeelStep] = field(default_factory=list)

    def to_json(self) -> dict:
        d = {"steps": [s.to_json() for s in self.steps], "residual": [list(r) for r in self.residual]}
        if self.stuck:
            d["stuck"] = [s.to_json() for s in self.stuck]
        return d

    @classmethod
    def from_json(cls, d: dict) -> "PeelTrace":
        mk = lambda s: PeelStep(tuple(s["block"]), s["cut"], s.get("head", True))
        return cls([mk(s) for s in d.get("steps", [])], [tuple(r) for r in d.get("residual", [])],
                   [mk(s) for s in d.get("stuck", [])])


@dataclass
class Certificate:
    parameter: str
    bound: int
    answer: bool
    decomposition: Optional[dc.Decomposition] = None
    obstruction: Optional[str] = None
    model: Optional[MinorModel] = None
    supergraph: Optional[Graph] = None
    peel_trace: Optional[PeelTrace] = None

    def to_json(self) -> dict:
        d: dict = {"parameter": self.parameter, "bound": self.bound, "answer": "yes" if self.answer else "no"}
        if self.answer:
            w: dict = {"decomposition": self.decomposition.to_json()}
            if self.supergraph is not None:
                w["supergraph_edges"] = [list(e) for e in self.supergraph.edges]
        else:
            w = {"obstruction": self.obstruction, "model": self.model.to_json()}
        d["witness"] = w
        if self.peel_trace is not None:
            d["peel_trace"] = self.peel_trace.to_json()
        return d

    @classmethod
    def from_json(cls, d: dict, g: Optional[Graph] = None) -> "Certificate":
        yes = d["answer"] == "yes"
        w = d["witness"]
        cert = cls(d["parameter"], int(d["bound"]), yes)
        if yes:
            cert.decomposition = dc.Decomposition.from_json(w["decomposition"])
            if "supergraph_edges" in w:
                verts = g.vertices if g is not None else ()
                cert.supergraph = Graph(verts, [tuple(e) for e in w["supergraph_edges"]])
        else:
            cert.obstruction = w["obstruction"]
            cert.model = MinorModel.from_json(w["model"])
        if "peel_trace" in d:
            cert.peel_trace = PeelTrace.from_json(d["peel_trace"])
        return cert


def _yes(param: str, bound: int, d: dc.Decomposition, **kw) -> Certificate:
    return Certificate(param, bound, True, decomposition=d, **kw)


def _no(param: str, bound: int, oid: str, m: MinorModel, **kw) -> Certificate:
    return Certificate(param, bound, False, obstruction=oid, model=m, **kw)


def check_certificate(g: Graph, cert: Certificate) -> Tuple[bool, List[str]]:
    """Independently re-check a certificate against its graph."""
    problems: List[str] = []
    if cert.answer:
        d = cert.decomposition
        if d is None:
            return False, ["yes answer without a decomposition"]
        variant = VARIANT[cert.parameter]
        rep = dc.validate(g, d, variant, max_width=cert.bound)
        problems += rep.violations
        if d.variant != variant and not (variant == dc.TREE and cert.parameter == "sctw"):
            problems.append(f"decomposition variant {d.variant} differs from {variant}")
        if cert.parameter == "sctw":
            h = cert.supergraph
            if h is None:
                problems.append("strongly chordal witness missing")
            else:
                if any(not h.has_edge(u, v) for u, v in g.edges) or set(h.vertices) != set(g.vertices):
                    problems.append("witness is not a supergraph on the same vertices")
                seo = is_strongly_chordal(h)
                if seo is None:
                    problems.append("witness supergraph is not strongly chordal")
                elif clique_number_chordal(h, seo) > cert.bound + 1:
                    problems.append("witness supergraph clique number too large")
    else:
        allowed = WIDTH_ONE if cert.bound == 1 else OBSTRUCTIONS[cert.parameter]
        if cert.obstruction not in allowed:
            problems.append(f"obstruction {cert.obstruction} not in the set {allowed}")
        elif cert.model is None:
            problems.append("no answer without a model")
        else:
            ok, bad = verify_model(g, obstruction_graph(cert.obstruction), cert.model)
            problems += bad
    return not problems, problems


# ---------------------------------------------------------------------------
# Width one


def _cycle_model(g: Graph) -> MinorModel:
    """A triangle model from any cycle."""
    for u, v in g.edges:
        p = g.without_edges([(u, v)]).shortest_path(u, v)
        if p is not None:
            bs = {0: frozenset([p[0]]), 1: frozenset([p[1]]), 2: frozenset(p[2:])}
            return _model(g, obstruction_graph(K3), bs)
    raise RecognitionError("no cycle found")


def _model(host: Graph, pattern: Graph, branch: Dict[int, FrozenSet[int]], root=None) -> MinorModel:
    from .minors import witnesses

    w = witnesses(host, pattern, branch)
    if w is None:
        raise RecognitionError("internal: branch sets miss a pattern edge")
    m = MinorModel(dict(branch), w)
    ok, bad = verify_model(host, pattern, m, root)
    if not ok:
        raise RecognitionError("internal: constructed model fails verification: " + "; ".join(bad))
    return m


def width_at_most_one(g: Graph, param: str = "spctw") -> Certificate:
    """Forests are exactly the graphs of width one for every parameter here."""
    if not g.is_forest():
        return _no(param, 1, K3, _cycle_model(g))
    if param == "mamba":
        raise RecognitionError("the mamba test has no width-one form")
    trace = PeelTrace()
    d = _special_from_trace(g, _peel_all(g, trace))
    d = d.as_variant(VARIANT[param]) if VARIANT[param] != dc.SPECIAL else d
    extra = {"supergraph": g} if param == "sctw" else {}
    return _yes(param, 1, d, peel_trace=trace if param == "spctw" else None, **extra)


def _special_from_trace(g: Graph, trace: PeelTrace) -> dc.Decomposition:
    return dc.build_special(g, trace, width=1)


# ---------------------------------------------------------------------------
# Block analysis


@dataclass
class BlockInfo:
    block: Graph
    completion: Optional[Graph]
    cells: Optional[CellStructure]
    flags: Optional[TocClass]


@lru_cache(maxsize=4096)
def analyze_block(b: Graph) -> BlockInfo:
    """Cell completion and flags of a block; ``cells`` is None when it is not a tree of cycles."""
    if b.n <= 2:
        return BlockInfo(b, b, None, TocClass(True, True, True, True))
    gt = cell_completion(b)
    try:
        cs = cells(gt)
    except CellError:
        return BlockInfo(b, gt, None, None)
    return BlockInfo(b, gt, cs, classify(cs))


def block_graphs(g: Graph) -> List[Graph]:
    return [g.subgraph(b) for b in blocks(g).blocks]


def _k4_model(g: Graph) -> MinorModel:
    # restrict to a block that fails, then shrink under the degree-two reduction test
    bad = [b for b in block_graphs(g) if dc.tw2_elimination_order(b) is None]
    b = min(bad, key=lambda h: h.n)
    m = minor_by_shrinking(b, obstruction_graph(K4), lambda h: dc.tw2_elimination_order(h) is None)
    if m is None:
        raise RecognitionError("internal: K4 model not found")
    return m


def _big_components(b: Graph, u: int, v: int) -> List[FrozenSet[int]]:
    comps = b.components(within=set(b.vertices) - {u, v})
    return sorted((frozenset(c) for c in comps if len(c) >= 2), key=min)


def _through(b: Graph, comp: FrozenSet[int], u: int, v: int) -> List[int]:
    """A u-v path of length >= 3 whose inner vertices lie in comp (|comp| >= 2)."""
    nu = sorted(b.neighbors(u) & comp)
    nv = sorted(b.neighbors(v) & comp)
    for x in nu:
        for y in nv:
            if x != y:
                p = b.shortest_path(x, y, allowed=comp)
                if p is not None:
                    return [u] + p + [v]
    raise RecognitionError("internal: no long path through the component")


def _d3_model(g: Graph, info: BlockInfo) -> MinorModel:
    b, cs = info.block, info.cells
    for e in sorted(cs.separators):
        if len(cs.bodies_on(e)) < 3:
            continue
        u, v = e
        comps = _big_components(b, u, v)
        if len(comps) < 3:
            continue
        bs = {0: frozenset([u]), 1: frozenset([v])}
        for k, comp in enumerate(comps[:3]):
            p = _through(b, comp, u, v)
            bs[2 + 2 * k] = frozenset([p[1]])
            bs[3 + 2 * k] = frozenset(p[2:-1])
        return _model(g, obstruction_graph(D3), bs)
    raise RecognitionError("internal: no separator in three body cells")


def _s3_model(g: Graph, info: BlockInfo) -> MinorModel:
    b, cs = info.block, info.cells
    i = next(k for k, c in enumerate(cs.separator_count) if c >= 3)
    cyc = list(cs.cells[i])
    m = len(cyc)
    seps = set(cs.separators_of(i))
    inside = set(cyc)
    chosen = [k for k in range(m) if norm_edge(cyc[k], cyc[(k + 1) % m]) in seps][:3]
    realized: List[int] = []
    cut_after: List[int] = []  # index in realized of the vertex before each chosen cut
    rims: List[List[int]] = []
    for k in range(m):
        a, a2 = cyc[k], cyc[(k + 1) % m]
        realized.append(a)
        comps = b.components(within=set(b.vertices) - {a, a2})
        others = sorted((frozenset(c) for c in comps if not (set(c) & inside)), key=min)
        used = 0
        if not b.has_edge(a, a2):
            p = b.subgraph(others[0] | {a, a2}).shortest_path(a, a2)
            realized += p[1:-1]
            used = 1
        if k in chosen:
            cut_after.append(len(realized) - 1)
            p = b.subgraph(others[used] | {a, a2}).without_edges([(a, a2)]).shortest_path(a, a2)
            rims.append(p[1:-1])
    # three arcs of the realized cycle between consecutive cuts
    n = len(realized)
    arcs = []
    for j in range(3):
        start = (cut_after[j - 1] + 1) % n
        end = cut_after[j]
        arc = []
        x = start
        while True:
            arc.append(realized[x])
            if x == end:
                break
            x = (x + 1) % n
        arcs.append(arc)
    # arcs[j] runs from just after cut j-1 to cut j, so cut j joins arcs[j] and arcs[j+1]
    bs = {0: frozenset(arcs[0]), 1: frozenset(arcs[1]), 2: frozenset(arcs[2])}
    bs[3] = frozenset(rims[0])
    bs[4] = frozenset(rims[1])
    bs[5] = frozenset(rims[2])
    return _model(g, obstruction_graph(S3), bs)


def _block_failure(g: Graph, want: Sequence[str]) -> Optional[Tuple[str, MinorModel]]:
    """The first obstruction among ``want`` (a subset of K4, D3, S3) found in g's blocks."""
    if K4 in want and dc.tw2_elimination_order(g) is None:
        return K4, _k4_model(g)
    if dc.tw2_elimination_order(g) is None:
        return None
    infos = [analyze_block(b) for b in block_graphs(g)]
    for oid, flag, build in ((D3, "chain", _d3_model), (S3, "two_boundaried", _s3_model)):
        if oid not in want:
            continue
        for info in infos:
            if info.cells is not None and not getattr(info.flags, flag):
                return oid, build(g, info)
    return None


# ---------------------------------------------------------------------------
# Width two recognizers


def recognize_tw2(g: Graph) -> Certificate:
    order = dc.tw2_elimination_order(g)
    if order is None:
        return _no("tw", 2, K4, _k4_model(g))
    return _yes("tw", 2, dc.decomposition_from_elimination(g, order))


def recognize_sptw2(g: Graph) -> Certificate:
    fail = _block_failure(g, (K4, D3))
    if fail:
        return _no("sptw", 2, *fail)
    return _yes("sptw", 2, dc.build_spaghetti(g))


def recognize_sctw2(g: Graph) -> Certificate:
    fail = _block_failure(g, (K4, S3))
    if fail:
        return _no("sctw", 2, *fail)
    h, d = dc.sc_decomposition(g)
    return _yes("sctw", 2, d, supergraph=h)


def recognize_dptw2(g: Graph) -> Certificate:
    fail = _block_failure(g, (K4, D3, S3))
    if fail:
        return _no("dptw", 2, *fail)
    return _yes("dptw", 2, dc.build_directed_spaghetti(g))


def _is_block(b: Graph) -> bool:
    return b.n <= 1 or (b.n == 2 and b.m == 1) or b.is_biconnected()


def is_mamba_block(b: Graph) -> Certificate:
    if not _is_block(b):
        raise RecognitionError("input is not a block")
    fail = _block_failure(b, (K4, D3, S3))
    if fail:
        return _no("mamba", 2, *fail)
    return _yes("mamba", 2, dc.build_mamba_path(b))


# ---------------------------------------------------------------------------
# Head vertices


def _mamba_model(info: BlockInfo):
    return cycle_path_model(info.cells)


def is_head_vertex(b: Graph, v: int, with_model: bool = False):
    """Can v open a width-2 path decomposition of the mamba block b?

    Read off the cycle path model of the cell completion.  With
    ``with_model``, returns (verdict, (obstruction id, rooted model) or None).
    """
    if v not in b:
        raise RecognitionError(f"vertex {v} not in the block")
    if not _is_block(b):
        raise RecognitionError("input is not a block")
    if b.n <= 2:
        return (True, None) if with_model else True
    info = analyze_block(b)
    if info.cells is None or not info.flags.path:
        raise RecognitionError("block is not a mamba")
    verdict = dc.head_sequence(info.cells, _mamba_model(info), v) is not None
    if not with_model:
        return verdict
    return verdict, (None if verdict else head_obstruction(b, v, info))


def head_obstruction(b: Graph, v: int, info: Optional[BlockInfo] = None) -> Tuple[str, MinorModel]:
    """A rooted (H1 or H2) model at a non-head vertex v of a mamba block."""
    info = info or analyze_block(b)
    cs = info.cells
    for i, c in enumerate(cs.cells):
        if cs.simplicial[i] and v in c and info.completion.degree(v) == 2:
            x, y = sorted(set(c) - {v})
            comps = _big_components(b, x, y)
            if len(comps) >= 2:
                p1 = _through(b, comps[0], x, y)
                p2 = _through(b, comps[1], x, y)
                bs = {0: frozenset([v]), 1: frozenset([x]), 2: frozenset([y]),
                      3: frozenset([p1[1]]), 4: frozenset(p1[2:-1]),
                      5: frozenset([p2[1]]), 6: frozenset(p2[2:-1])}
                return H2, _model(b, obstruction_graph(H2), bs, root=(v, ROOT))

    def keep(h: Graph) -> bool:
        if v not in h or h.n < 3 or not h.is_biconnected():
            return False
        hi = analyze_block(h)
        if hi.cells is None or not hi.flags.path:
            return False
        return dc.head_sequence(hi.cells, _mamba_model(hi), v) is None

    for oid in (H1, H2):
        m = minor_by_shrinking(b, obstruction_graph(oid), keep, root=(v, ROOT))
        if m is not None:
            return oid, m
    raise RecognitionError("internal: no rooted obstruction at a non-head vertex")


# ---------------------------------------------------------------------------
# Mamba trees


def _peel_all(g: Graph, trace: PeelTrace, rng: Optional[random.Random] = None,
              head=None) -> PeelTrace:
    """Greedy leaf peeling per component; fills ``trace`` and returns it.

    A component that cannot be reduced to a single block leaves its current
    leaf blocks in ``trace.stuck``.
    """
    head = head or (lambda blk, c: is_head_vertex(g.subgraph(blk), c))
    for comp in sorted(g.components(), key=min):
        h = g.subgraph(comp)
        bt = blocks(h)
        alive = {i: b for i, b in enumerate(bt.blocks)}
        count: Dict[int, int] = {}
        for b in alive.values():
            for x in b:
                count[x] = count.get(x, 0) + 1
        verdicts: Dict[Tuple[int, int], bool] = {}
        while len(alive) > 1:
            leaves = []
            for i, b in alive.items():
                cuts = [x for x in b if count[x] > 1]
                if len(cuts) == 1:
                    leaves.append((i, cuts[0]))
            leaves.sort(key=lambda t: (min(alive[t[0]]), t[1]))
            if rng is not None:
                rng.shuffle(leaves)
            done = False
            for i, c in leaves:
                key = (i, c)
                if key not in verdicts:
                    verdicts[key] = head(tuple(sorted(alive[i])), c)
                if verdicts[key]:
                    trace.steps.append(PeelStep(tuple(sorted(alive[i])), c, True))
                    for x in alive[i]:
                        count[x] -= 1
                    del alive[i]
                    done = True
                    break
            if not done:
                trace.stuck += [PeelStep(tuple(sorted(alive[i])), c, False) for i, c in leaves]
                break
        if len(alive) == 1:
            (b,) = alive.values()
            trace.residual.append(tuple(sorted(b)))
    return trace


def recognize_spctw2(g: Graph, rng: Optional[random.Random] = None) -> Certificate:
    fail = _block_failure(g, (K4, D3, S3))
    if fail:
        return _no("spctw", 2, *fail)
    trace = _peel_all(g, PeelTrace(), rng)
    if not trace.stuck:
        return _yes("spctw", 2, dc.build_special(g, trace), peel_trace=trace)
    oid, m = _glued_model(g, trace)
    return _no("spctw", 2, oid, m, peel_trace=trace)


def _glued_model(g: Graph, trace: PeelTrace) -> Tuple[str, MinorModel]:
    """Join rooted obstructions from two stuck leaf blocks along a connecting path."""
    (first, second) = trace.stuck[:2]
    peeled = set()
    for s in trace.steps:
        peeled |= set(s.block) - {s.cut}
    parts = []
    for s in (first, second):
        blk = g.subgraph(s.block)
        oid, m = head_obstruction(blk, s.cut)
        parts.append((oid, m, s))
    order = {H1: 0, H2: 1}
    parts.sort(key=lambda t: order[t[0]])
    (oa, ma, sa), (ob, mb, sb) = parts
    gid = {(H1, H1): G1, (H1, H2): G2, (H2, H2): G3}[(oa, ob)]
    # path between the two cut vertices avoiding the two leaf blocks' other vertices
    avoid = (set(sa.block) - {sa.cut}) | (set(sb.block) - {sb.cut}) | peeled
    allowed = set(g.vertices) - avoid
    path = g.shortest_path(sa.cut, sb.cut, allowed=allowed)
    if path is None:
        raise RecognitionError("internal: stuck leaves are not connected")
    maps = glue_maps(gid)
    bs: Dict[int, FrozenSet[int]] = {}
    for side, mm in (("left", ma), ("right", mb)):
        for x, sset in mm.branch_sets.items():
            y = maps[side][x]
            bs[y] = bs.get(y, frozenset()) | sset
    bs[maps["left"][ROOT]] = bs[maps["left"][ROOT]] | frozenset(path)
    return gid, _model(g, obstruction_graph(gid), bs)


# ---------------------------------------------------------------------------
# Dispatch


RECOGNIZERS = {
    "tw": recognize_tw2,
    "sptw": recognize_sptw2,
    "sctw": recognize_sctw2,
    "dptw": recognize_dptw2,
    "spctw": recognize_spctw2,
    "mamba": is_mamba_block,
}


def recognize(g: Graph, param: str, bound: int = 2, rng: Optional[random.Random] = None) -> Certificate:
    if param not in PARAMS:
        raise RecognitionError(f"unknown parameter {param!r}")
    if bound == 1:
        return width_at_most_one(g, param)
    if bound != 2:
        raise RecognitionError("only bounds 1 and 2 are supported")
    if param == "spctw":
        return recognize_spctw2(g, rng)
    return RECOGNIZERS[param](g)
