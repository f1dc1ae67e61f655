"""
Three routes to Prim(G)
=======================

The closed-form classifier, the graph and the exact oracle are independent.
A sweep over a box of parameters runs all of them and flags any mismatch.
"""

import json

from brauer_qe import QEParams, classify
from brauer_qe.sweep import SweepRanges, run_sweep, run_tuple

# a verdict shows each divisibility test with its numbers filled in
v = classify(QEParams(2, 17, "dihedral", 3, 4, 3, 1))
print(v.status, v.matched_case, v.invariants)
for c in v.reasons:
    print("  ", "T" if c.holds else "F", c.text, c.values)

# j = 3 is -1 mod 4 here, so there is nothing primitive
print(json.dumps(run_tuple(QEParams(2, 5, "cyclic", 2, 2, 3), bound=600).to_json(timings=False)))

# a small sweep; the full acceptance box is p in {2, 3}, q <= 17, n, m <= 3
report = run_sweep(SweepRanges(p_values=(2,), q_max=5, n_max=2, m_max=2), bound=600)
print(json.dumps(report.summary, indent=1))
