# From a graph to its cells, and from cells to decompositions.

import json

from width2lab.cellmodel import cell_completion, cells, classify, cycle_path_model
from width2lab.decomp import DIRECTED, SPAGHETTI, build_directed_spaghetti, build_spaghetti, validate
from width2lab.generators import sample_path_of_cycles, make_obstruction

g = sample_path_of_cycles()
print(f"path of cycles: {g.n} vertices, {g.m} edges")

cs = cells(cell_completion(g))
print(f"{len(cs.cells)} cells, {len(cs.separators)} separator edges, {sum(cs.simplicial)} simplicial triangles")
for c, simp in zip(cs.cells, cs.simplicial):
    print("  ", c, "(simplicial)" if simp else "(body)")
print("flags:", classify(cs).to_json())

model = cycle_path_model(cs)
print("cells in path order:", model.cycles)
print("shared edges:       ", model.shared)

# The same graph as a spaghetti and as a directed spaghetti decomposition.
for build, variant in ((build_spaghetti, SPAGHETTI), (build_directed_spaghetti, DIRECTED)):
    d = build(g)
    rep = validate(g, d, variant, max_width=2)
    print(f"\n{variant}: {len(d.bags)} bags, width {d.width}, valid={rep.ok}")
    print(json.dumps(d.to_json())[:200] + " ...")

# The 3-sun: cells exist and form a chain, but the centre touches three separators.
s3 = make_obstruction("S3")
print("\n3-sun flags:", classify(cells(s3)).to_json())
