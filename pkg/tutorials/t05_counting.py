"""
Counting representations by rift pattern
========================================

Weight each trit pattern by the product of d(length) over its rifts and sum;
σ-indecomposable patterns are found by trying every cut recursively.
"""

from imsets.enumeration import count_two_row, table_report
from imsets.rift import RiftPattern, degree_of_freedom, pattern_is_decomposable

print("d(1..6):", [degree_of_freedom(l) for l in range(1, 7)])
print("two-row counts r2(1..6):", [count_two_row(m) for m in range(1, 7)])

p = RiftPattern.from_string(3, 3, "bs sb")
print("pattern", p.to_string(), "weight", p.weight(), "decomposable", pattern_is_decomposable(p))

print(table_report(4, 4).to_text())
