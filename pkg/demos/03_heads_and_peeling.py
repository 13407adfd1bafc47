# Head vertices and the peeling test for special treewidth two.
#
# A vertex of a mamba block is a head when some width-2 path decomposition
# starts with it.  A graph passes when leaf blocks can be peeled off at
# head vertices until one block is left.

from width2lab.generators import attach_blocks, make_obstruction, random_mamba
from width2lab.oracles import head_vertex_oracle
from width2lab.recognize import is_head_vertex, recognize_spctw2
import random

for oid in ("H1", "H2"):
    h = make_obstruction(oid)
    heads = [v for v in h.vertices if is_head_vertex(h, v)]
    oracle = [v for v in h.vertices if head_vertex_oracle(h, v) is not None]
    print(f"{oid}: heads {heads}  (search agrees: {heads == oracle}); root 0 is not a head")

verdict, (pid, model) = is_head_vertex(make_obstruction("H2"), 0, with_model=True)
print("rooted witness at the H2 root:", pid, {k: sorted(v) for k, v in model.branch_sets.items()})

rng = random.Random(7)
g = attach_blocks([random_mamba(rng, cells=3) for _ in range(4)], rng)
cert = recognize_spctw2(g)
print(f"\nfour random mambas glued together: {g.n} vertices -> {'yes' if cert.answer else cert.obstruction}")
for step in cert.peel_trace.steps:
    print(f"  peel block {step.block} at cut vertex {step.cut}")
print("  residual:", cert.peel_trace.residual)

# Two H1 blocks glued at their roots: nothing can be peeled.
g1 = make_obstruction("G1")
cert = recognize_spctw2(g1)
print(f"\nG1: {'yes' if cert.answer else 'no, ' + cert.obstruction + ' minor'}")
print("  stuck leaves:", [(s.block, s.cut) for s in cert.peel_trace.stuck])
