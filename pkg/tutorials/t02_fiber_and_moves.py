"""
Representations and two-by-two moves
====================================

Enumerate every representation of u<A,B|∅> for |A| = 2, |B| = 3, group them
up to relabeling, and walk the move graph.
"""

from imsets import Triplet, apply_move, available_moves, standard_representation
from imsets.enumeration import brute_force_fiber, connected_components, degree_table, fiber_graph
from imsets.representation import Canonicalizer

fiber = brute_force_fiber(2, 3)
canon = Canonicalizer(Triplet.standard(2, 3))
print(len(fiber), "labeled representations,", len({canon.key(g.cells) for g in fiber}), "up to relabeling")

# Every representation is a grid: one elementary imset per level (s, t).
g = standard_representation(Triplet.standard(2, 3))
print(g)
for m in available_moves(g):
    h = apply_move(g, m)
    print(f"{m.kind} at {m.anchor}: sum preserved = {h.imset() == g.imset()}")

graph = fiber_graph(fiber)
print("edges:", graph.n_edges, "components:", connected_components(graph))
print("degree histogram:", degree_table(graph))
