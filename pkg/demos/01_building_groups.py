"""
Building quasi-elementary groups
================================

A parameter tuple fixes ``G = C_q ⋊ (K ⋊ A)``. Here we build a few, look at
their subgroup lattices and check the distinguished subgroups.
"""

from brauer_qe import QEParams, realize
from brauer_qe.groups import family_test
from brauer_qe.relations import subgroup_classes

# p = 3, q = 7: K = <c> of order 3, A = <h> of order 3 acting trivially on K
real = realize(QEParams(3, 7, "cyclic", 1, 1, 1))
G = real.group
print(G, "| exponent", G.exponent)

# every subgroup up to conjugacy, smallest first
table = subgroup_classes(G)
for i, cls in enumerate(table.classes):
    print(f"  class {i:2d}: order {cls.order:3d}, {cls.size} conjugate(s), cyclic={cls.is_cyclic}")

# K is exactly the part of P that centralises C
print("K =", real.K, "C_bar cyclic:", real.C_bar.is_cyclic())

# a dihedral K: the realised K passes the structural family test
d = realize(QEParams(2, 17, "dihedral", 3, 4, 3, 1))
k_local, _ = d.K.as_group()
print("dihedral K:", family_test(k_local, "dihedral_2group"), "| |P| =", d.p_group.order)

# bad parameters are reported, not silently fixed
from brauer_qe import validate

print(validate(QEParams(3, 7, "cyclic", 1, 2, 1)))
print(validate(QEParams(2, 5, "semidihedral", 3, 2, 1, 1)))
