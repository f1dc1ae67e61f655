"""Brauer relations K(G), the imprimitive part, and Prim(G), computed exactly.

K(G) is the left kernel of the marks matrix on cyclic subgroups: a
virtual G-set has zero rational character iff all its cyclic marks vanish.
Imprimitive relations are those induced from maximal subgroups or
inflated from quotients by minimal normal subgroups; by transitivity these
generate everything coming from proper subquotients.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .burnside import BurnsideElement, induction_map, inflation_map, marks_matrix
from .groups import (
    DEFAULT_ORDER_BOUND,
    FiniteGroup,
    ResourceLimitError,
    SubgroupClassTable,
    all_subgroup_classes,
    quotient,
)
from .intlattice import AbelianInvariants, IntegerLattice, kernel_lattice, quotient_invariants

DEFAULT_ORACLE_MAX = 600


def oracle_bound() -> int:
    """The oracle's order bound; ``BRAUER_ORACLE_MAX`` overrides the default of 600."""
    value = os.environ.get("BRAUER_ORACLE_MAX")
    return int(value) if value else DEFAULT_ORACLE_MAX


@lru_cache(maxsize=256)
def subgroup_classes(group: FiniteGroup) -> SubgroupClassTable:
    """Memoised :func:`all_subgroup_classes` (keyed by the multiplication table)."""
    return all_subgroup_classes(group, bound=max(DEFAULT_ORDER_BOUND, group.order))


@dataclass
class RelationLattice:
    table: SubgroupClassTable
    lattice: IntegerLattice

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def elements(self) -> list[BurnsideElement]:
        return [BurnsideElement(self.table, row) for row in self.lattice.basis.tolist()]


@dataclass
class PrimStructure:
    invariants: AbelianInvariants
    kernel: RelationLattice
    imprimitive: IntegerLattice
    generator_witnesses: list[BurnsideElement] = field(default_factory=list)

    def contains_imprimitive(self, elt: BurnsideElement) -> bool:
        """Whether a relation is imprimitive, i.e. zero in Prim(G)."""
        return self.imprimitive.contains(list(elt.coeffs))


def _table(group: FiniteGroup, table: SubgroupClassTable | None) -> SubgroupClassTable:
    return table if table is not None else subgroup_classes(group)


@lru_cache(maxsize=256)
def _kernel_cached(group: FiniteGroup) -> RelationLattice:
    table = subgroup_classes(group)
    return RelationLattice(table, kernel_lattice(marks_matrix(table).matrix))


def brauer_kernel(group: FiniteGroup, table: SubgroupClassTable | None = None) -> RelationLattice:
    """K(G) in the basis of subgroup classes."""
    if table is None:
        return _kernel_cached(group)
    return RelationLattice(table, kernel_lattice(marks_matrix(table).matrix))


def _imprimitive_generators(group: FiniteGroup, table: SubgroupClassTable, all_subgroups: bool = False) -> list[np.ndarray]:
    blocks = []
    sources = range(len(table)) if all_subgroups else table.maximal_indices()
    for i in sources:
        cls = table.classes[i]
        if cls.order == group.order:
            continue
        sub_group, embedding = cls.rep.as_group()
        kernel = brauer_kernel(sub_group)
        if kernel.rank:
            induced = kernel.lattice.basis.astype(object) @ induction_map(kernel.table, embedding, table).astype(object)
            blocks.append(induced)
    for i in table.minimal_normal_indices():
        quot, projection = quotient(group, table.classes[i].rep)
        kernel = brauer_kernel(quot)
        if kernel.rank:
            inflated = kernel.lattice.basis.astype(object) @ inflation_map(kernel.table, projection, table).astype(object)
            blocks.append(inflated)
    return blocks


def imprimitive_sublattice(
    group: FiniteGroup, table: SubgroupClassTable | None = None, all_subgroups: bool = False
) -> IntegerLattice:
    """Relations induced from proper subgroups or inflated from proper quotients.

    With ``all_subgroups`` induction runs over every proper subgroup class
    rather than only the maximal ones (used to test that nothing is missed).
    """
    table = _table(group, table)
    blocks = _imprimitive_generators(group, table, all_subgroups)
    if not blocks:
        return IntegerLattice(len(table))
    return IntegerLattice(len(table), np.vstack(blocks))


def prim(group: FiniteGroup, table: SubgroupClassTable | None = None, bound: int | None = None) -> PrimStructure:
    """Prim(G) = K(G) / (imprimitive relations) as an abelian group."""
    bound = oracle_bound() if bound is None else bound
    if group.order > bound:
        raise ResourceLimitError("Brauer relation oracle", group.order, bound)
    table = _table(group, table)
    kernel = brauer_kernel(group, table)
    imprim = imprimitive_sublattice(group, table)
    if not imprim <= kernel.lattice:
        raise AssertionError("imprimitive relations escaped the Brauer kernel")
    invariants = quotient_invariants(kernel.lattice, imprim)
    # finite whenever K is nontrivial; K-trivial groups such as S_3 can give Z
    return PrimStructure(invariants, kernel, imprim)


def prim_of_realization(real, bound: int | None = None) -> PrimStructure:
    return prim(real.group, bound=bound)
