"""
The component-count criterion
=============================

Vertices are the largest subgroups of P avoiding Z; each connected
component beyond the first contributes a factor C_p to Prim(G). The graph
only needs P, so it reaches groups far beyond the exact oracle.
"""

from pathlib import Path

from brauer_qe import QEParams, realize
from brauer_qe.gamma import enumerate_Hm, gamma_route

for params in [
    QEParams(2, 5, "cyclic", 2, 2, 1),
    QEParams(2, 17, "quaternion", 2, 3, 1, 1),
    QEParams(2, 17, "dihedral", 3, 4, 3, 1),
]:
    real = realize(params)
    everything, top = enumerate_Hm(real)
    result = gamma_route(real)
    print(f"{params.label():40s} |P|={real.p_group.order:4d}  avoiding Z: {len(everything):3d}  "
          f"vertices: {len(top):3d}  d={result.d}  -> {result.prediction}")

# when |K| = p the graph is not the right tool; the route falls back to F_p^(p-2)
small = gamma_route(realize(QEParams(3, 7, "cyclic", 1, 1, 1)))
print(small.applicability.value, small.prediction, small.notes)

# export for graphviz
out = Path("gamma_dihedral.dot")
out.write_text(gamma_route(realize(QEParams(2, 17, "dihedral", 3, 4, 3, 1))).graph.to_dot())
print("wrote", out)
