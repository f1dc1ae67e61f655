"""The component-count criterion for Prim(G) when K is larger than Z.

Vertices are the subgroups of P of largest order among those avoiding the
distinguished order-p subgroup Z of K. Two vertices are joined when they
generate a proper subgroup of P, or when they meet in a common subgroup
of index p whose quotient of the generated group is dihedral (or, for odd
p, Heisenberg of order p^3). With d components, Prim(G) ≅ (C_p)^(d-1).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from scipy.cluster.hierarchy import DisjointSet

from .construct import Realization, hypothesis_flags
from .groups import FiniteGroup, Subgroup, SubgroupClassTable, closure, family_test, is_normal, quotient
from .intlattice import AbelianInvariants
from .numtheory import is_prime

PROPER = "proper-generation"
QUOTIENT = "quotient-family"


class Applicability(str, enum.Enum):
    APPLIES = "applies"
    K_TOO_SMALL = "K_too_small"
    K_TRIVIAL = "K_trivial"
    PREREQUISITES_FAIL = "prerequisites_fail"


@dataclass
class GammaGraph:
    p: int
    vertices: list[Subgroup]
    edges: list[tuple[int, int, str]]
    components: list[list[int]]

    @property
    def d(self) -> int:
        return len(self.components)

    def component_of(self) -> dict[int, int]:
        return {v: ci for ci, comp in enumerate(self.components) for v in comp}

    def to_dot(self) -> str:
        lines = ["graph Gamma {"]
        for i, v in enumerate(self.vertices):
            lines.append(f'  v{i} [label="{i}: order {v.order}"];')
        for a, b, why in self.edges:
            style = "solid" if why == PROPER else "dashed"
            lines.append(f"  v{a} -- v{b} [style={style}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def enumerate_Hm(
    p_group: FiniteGroup | Realization, z: Subgroup | None = None, table: SubgroupClassTable | None = None
) -> tuple[list[Subgroup], list[Subgroup]]:
    """All subgroups of P not containing ``z``, and those among them of largest order.

    Accepts a realisation in place of ``(P, Z)``.
    """
    if isinstance(p_group, Realization):
        p_group, z = p_group.p_group, p_group.Z_in_P
    if z is None or not is_prime(z.order):
        raise ValueError("Z must be a subgroup of prime order")
    if table is None:
        from .relations import subgroup_classes

        table = subgroup_classes(p_group)
    avoid = [s for s in table.all_subgroups() if not (z <= s)]
    top = max(s.order for s in avoid)
    return avoid, [s for s in avoid if s.order == top]


def _maximal_subgroups(table: SubgroupClassTable) -> list[Subgroup]:
    return [s for i in table.maximal_indices() for s in table.classes[i].conjugates]


def _quotient_family(j_group: Subgroup, d: Subgroup, p: int, include_klein: bool) -> bool:
    if not is_normal(d, j_group):
        return False
    local, embedding = j_group.as_group()
    where = np.searchsorted(embedding, d.elements)
    quot, _ = quotient(local, Subgroup(local, where))
    if family_test(quot, "dihedral_2group"):
        return True
    if include_klein and family_test(quot, "klein_four"):
        return True
    return p != 2 and family_test(quot, "heisenberg_p")


def build_gamma(
    p_group: FiniteGroup,
    hm: list[Subgroup],
    p: int,
    table: SubgroupClassTable | None = None,
    include_klein: bool = False,
) -> GammaGraph:
    """Edges and components of the graph on ``hm``.

    ``<H, H'>`` is proper iff both lie in a common maximal subgroup, which
    is how the first edge condition is tested. The second condition takes
    ``HH'`` to mean the generated subgroup J and needs ``H ∩ H'`` normal
    in J. A Klein four quotient counts as dihedral only with ``include_klein``.
    """
    if table is None:
        from .relations import subgroup_classes

        table = subgroup_classes(p_group)
    n = len(hm)
    maximal = _maximal_subgroups(table)
    masks = np.array([h.mask for h in hm], dtype=np.int64).reshape(n, p_group.order)
    if maximal:
        max_masks = np.array([m.mask for m in maximal], dtype=np.int64)
        sizes = np.array([h.order for h in hm])
        inside = (masks @ max_masks.T) == sizes[:, None]
        proper = (inside.astype(np.int64) @ inside.T.astype(np.int64)) > 0
    else:
        proper = np.zeros((n, n), dtype=bool)
    meet = masks @ masks.T

    uf = DisjointSet(range(n))
    edges = []
    seen: dict[tuple[bytes, bytes], bool] = {}
    for a in range(n):
        for b in range(a + 1, n):
            if proper[a, b]:
                edges.append((a, b, PROPER))
                uf.merge(a, b)
                continue
            ha, hb = hm[a], hm[b]
            if meet[a, b] * p != ha.order or meet[a, b] * p != hb.order:
                continue
            joined = closure(p_group, np.concatenate([ha.elements, hb.elements]))
            inter = ha & hb
            key = (joined.key, inter.key)
            if key not in seen:
                seen[key] = _quotient_family(joined, inter, p, include_klein)
            if seen[key]:
                edges.append((a, b, QUOTIENT))
                uf.merge(a, b)
    comps = sorted((sorted(c) for c in uf.subsets()), key=lambda c: c[0])
    return GammaGraph(p, list(hm), edges, comps)


def predict_prim_from_gamma(d: int, p: int) -> AbelianInvariants:
    if d < 1:
        raise ValueError("the graph needs at least one component")
    return AbelianInvariants.elementary(p, d - 1)


def applicability(real: Realization) -> Applicability:
    flags = hypothesis_flags(real)
    if flags.K_trivial:
        return Applicability.K_TRIVIAL
    if not (flags.A_faithful_on_C and flags.action_kernel_nontrivial):
        return Applicability.PREREQUISITES_FAIL
    if flags.K_order_p:
        return Applicability.K_TOO_SMALL
    return Applicability.APPLIES


@dataclass
class GammaResult:
    applicability: Applicability
    prediction: AbelianInvariants | None
    graph: GammaGraph | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def d(self) -> int | None:
        return None if self.graph is None else self.graph.d

    def to_json(self, full: bool = False) -> dict:
        out = {
            "applicability": self.applicability.value,
            "invariants": None if self.prediction is None else self.prediction.to_list(),
        }
        if self.graph is not None:
            g = self.graph
            out["vertices"] = len(g.vertices)
            out["d"] = g.d
            out["edge_count"] = len(g.edges)
            out["edges"] = [{"u": a, "v": b, "reason": why} for a, b, why in g.edges] if full else None
            if not full:
                out.pop("edges")
        if self.notes:
            out["notes"] = self.notes
        return out


def gamma_route(real: Realization, include_klein: bool = False) -> GammaResult:
    """Predict Prim(G) from the graph (or from the closed form when ``|K| = p``)."""
    status = applicability(real)
    if status in (Applicability.K_TRIVIAL, Applicability.PREREQUISITES_FAIL):
        return GammaResult(status, None)
    p = real.params.p
    _, hm = enumerate_Hm(real)
    graph = build_gamma(real.p_group, hm, p, include_klein=include_klein)
    if status is Applicability.K_TOO_SMALL:
        notes = [f"|K| = p: Prim(G) is elementary of rank p-2; the graph itself has {graph.d} components"]
        return GammaResult(status, AbelianInvariants.elementary(p, p - 2), graph, notes)
    return GammaResult(status, predict_prim_from_gamma(graph.d, p), graph)
