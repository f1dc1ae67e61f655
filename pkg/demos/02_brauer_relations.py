"""
Brauer relations and the primitive quotient
===========================================

A Brauer relation is a virtual G-set whose permutation character vanishes.
We compute the lattice K(G) of all of them from the marks on cyclic
subgroups, then quotient by relations coming from proper subquotients.
"""

from brauer_qe import QEParams, brauer_kernel, prim, realize
from brauer_qe.burnside import marks_matrix
from brauer_qe.groups import cyclic_group, direct_product

# Klein four: one relation, [1] - [a] - [b] - [c] + 2[V]
V = direct_product(cyclic_group(2), cyclic_group(2))
rel = brauer_kernel(V)
print("V4 relations:", [e for e in rel.elements()])

# the marks matrix has full column rank, so
# rank K(G) = #classes - #cyclic classes
G = realize(QEParams(3, 7, "cyclic", 1, 1, 1)).group
kernel = brauer_kernel(G)
m = marks_matrix(kernel.table)
print("marks matrix", m.matrix.shape, "| kernel rank", kernel.rank)

s = prim(G)
print("Prim(G) =", s.invariants, "| imprimitive rank", s.imprimitive.rank)

# S_3 has no K part; its single relation is primitive and Prim is Z
print("Prim(S3) =", prim(realize(QEParams(2, 3, "cyclic", 0, 1)).group).invariants)

# above the oracle bound the computation refuses instead of running for hours
from brauer_qe.groups import ResourceLimitError

try:
    prim(realize(QEParams(2, 17, "quaternion", 2, 3, 1, 1)).group, bound=600)
except ResourceLimitError as exc:
    print("skipped:", exc)
