"""
Imsets and the configuration matrix
===================================

Build a few semi-elementary imsets, check the split identity, and look at
the configuration matrix of the 2x2 family.
"""

from imsets import Triplet, configuration_matrix, elementary, semi_elementary, split_identity_check
from imsets.core import element_names

# Ground set {a1, a2, b1, b2} with A = {a1, a2}, B = {b1, b2} and C empty.
t = Triplet.standard(2, 2)
names = element_names(t)
u = semi_elementary(t)
print("u<A,B|C>:", u.to_pairs(names))

# An elementary imset u<a2,b1|a1>.
print("u<a2,b1|a1>:", elementary(1, 2, 0b0001, ground=4).to_pairs(names))

# Splitting B = {b1} ∪ {b2}: u<a,b1b2|∅> = u<a,b1|∅> + u<a,b2|b1>.
print("split identity holds:", split_identity_check(0b001, 0b010, 0b100, 0))

# The configuration matrix: one column per elementary imset of the family,
# one row per subset S with C ⊆ S ⊆ ABC.
m = configuration_matrix(Triplet.standard(2, 2, 1))
print(m.to_csv())
