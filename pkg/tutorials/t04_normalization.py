"""
Eliminating rifts
=================

Remove the rifts of the bundled 3x3 grid one at a time, then sort the
element orders until the standard representation is reached.
"""

from imsets import normalize_to_standard, standard_representation
from imsets.representation import replay
from imsets.resources import counterexample
from imsets.rift import detect_rifts, elimination_steps

g = counterexample()
for r, after, moves in elimination_steps(g):
    print(f"eliminate {r} with {[f'{m.kind}{m.anchor}' for m in moves]}")
    print("  pattern now", detect_rifts(after).to_string())

trace = normalize_to_standard(g)
print(len(trace), "moves in total")
print("reaches the standard form:", replay(g, trace) == standard_representation(g.triplet))
