"""
Rifts and σ-decomposability
===========================

The 3x3 grid bundled with the package has four rifts of length 2 and cannot
be split recursively into smaller representations.
"""

from collections import Counter

from imsets.resources import counterexample
from imsets.rift import classify_points, detect_rifts, is_separable, sigma_decomposition

g = counterexample()
p = detect_rifts(g)
print("rift pattern (rows s = 1, 2):")
print(p.render())
for r in p.rifts:
    print(" ", r, "length", r.length)

print("point classes:", dict(Counter(pc.kind for pc in classify_points(g))))
print("separable anywhere:", any(is_separable(g, ax, i) for ax in "AB" for i in (1, 2)))
print("σ-decomposition:", sigma_decomposition(g))
