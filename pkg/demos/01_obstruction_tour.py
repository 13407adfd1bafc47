# A tour of the small graphs that block each width parameter.
#
# Every recognizer answers yes with a decomposition, or no with a minor
# model of one forbidden graph.  Here we feed each forbidden graph to every
# recognizer and print who rejects it.

from width2lab.generators import make_obstruction
from width2lab.minors import ALL_IDS
from width2lab.recognize import check_certificate, recognize

params = ["tw", "sptw", "sctw", "dptw", "spctw"]
print(f"{'graph':<6}{'n':>3}{'m':>4}  " + "".join(f"{p:>7}" for p in params))
for oid in ALL_IDS:
    if oid in ("H1", "H2"):
        continue  # rooted blocks, not obstructions on their own
    g = make_obstruction(oid)
    row = []
    for p in params:
        cert = recognize(g, p)
        assert check_certificate(g, cert)[0]
        row.append("yes" if cert.answer else cert.obstruction)
    print(f"{oid:<6}{g.n:>3}{g.m:>4}  " + "".join(f"{r:>7}" for r in row))

# K3 is the only thing that stops width one, for every parameter.
tri = make_obstruction("K3")
print("\ntriangle at width 1:", recognize(tri, "spctw", bound=1).obstruction)

# A no-answer carries branch sets: one connected host set per pattern vertex.
from width2lab.generators import random_subdivision
import random

d3 = make_obstruction("D3")
host = random_subdivision(d3, random.Random(1), max_extra=2)
cert = recognize(host, "sptw")
print(f"\nsubdivided D3 on {host.n} vertices -> {cert.obstruction}")
for pv, bs in sorted(cert.model.branch_sets.items()):
    print(f"  pattern vertex {pv}: host vertices {sorted(bs)}")
