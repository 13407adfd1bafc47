# Two parameters that are not closed under minors, checked by brute force.

from width2lab.chordal import clique_number_chordal, is_chordal, is_strongly_chordal
from width2lab.decomp import SPECIAL, build_special_GT, validate
from width2lab.generators import make_gt, make_gt_prime, make_nest_sc, make_sc, make_spider_tree
from width2lab.graph import contract, is_isomorphic
from width2lab.oracles import pathwidth_exact, sc_supergraph_search
from width2lab.recognize import recognize_spctw2

# Strongly chordal treewidth: SC_4 has it 3, one contraction pushes it to 4.
sc = make_sc(4)
print(f"SC_4: {sc.n} vertices, strongly chordal={is_strongly_chordal(sc) is not None},"
      f" clique number {clique_number_chordal(sc, is_chordal(sc))}")
print("subtree model reproduces SC_5:", is_isomorphic(make_nest_sc(4).graph(), make_sc(5)))
ids = {sc.label(v): v for v in sc.vertices}
h = contract(sc, ids["w1"], ids["w4"], keep=ids["w1"])
print("after contracting w1w4, supergraph with clique number <= 4:", sc_supergraph_search(h, 4))

# Special treewidth: doubling a tree keeps it at 3, contracting one copy does not.
t = make_spider_tree(3)
print(f"\nspider tree: {t.n} vertices, pathwidth {pathwidth_exact(t)}")
gt = make_gt(t)
d = build_special_GT(t)
rep = validate(gt, d, SPECIAL)
print(f"doubled tree: {gt.n} vertices, special decomposition valid={rep.ok}, width {rep.width}")
gp = make_gt_prime(t)
cert = recognize_spctw2(gp)
print(f"one copy contracted: special treewidth <= 2? {cert.answer} ({cert.obstruction} minor)")
