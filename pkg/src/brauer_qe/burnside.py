"""Burnside-ring elements, marks on cyclic subgroups, induction and inflation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import FiniteGroup, Subgroup, SubgroupClassTable, closure
from .numtheory import moebius


class MarksError(RuntimeError):
    pass


@dataclass
class MarksMatrix:
    """``matrix[H, C] = |(G/H)^C|`` for every subgroup class ``H`` and cyclic class ``C``."""

    table: SubgroupClassTable
    columns: list[int]
    matrix: np.ndarray

    def marks_of(self, coeffs) -> np.ndarray:
        return np.asarray(coeffs, dtype=object) @ self.matrix.astype(object)


def _rep_masks(table: SubgroupClassTable) -> np.ndarray:
    return np.array([c.rep.mask for c in table.classes])


def marks_matrix(table: SubgroupClassTable) -> MarksMatrix:
    """Fixed points of each cyclic class on each transitive G-set.

    ``|(G/H)^C| = #{g : g^-1 c g in H} / |H|`` for a generator ``c`` of ``C``.
    """
    group = table.group
    masks = _rep_masks(table)
    orders = np.array([c.order for c in table.classes], dtype=np.int64)
    cols = table.cyclic_indices
    out = np.empty((len(table), len(cols)), dtype=np.int64)
    for k, ci in enumerate(cols):
        gen = table.classes[ci].rep.generator()
        counts = masks[:, group.conj[:, gen]].sum(axis=1)
        if (counts % orders).any():
            raise MarksError(f"non-integral fixed-point count in column {ci}")
        out[:, k] = counts // orders
    return MarksMatrix(table, cols, out)


class BurnsideElement:
    """``sum a_H [G/H]`` with one integer coefficient per subgroup class of ``table``."""

    __slots__ = ("table", "coeffs")

    def __init__(self, table: SubgroupClassTable, coeffs=None):
        self.table = table
        if coeffs is None:
            coeffs = [0] * len(table)
        coeffs = tuple(int(a) for a in coeffs)
        if len(coeffs) != len(table):
            raise ValueError(f"expected {len(table)} coefficients, got {len(coeffs)}")
        self.coeffs = coeffs

    @classmethod
    def basis(cls, table: SubgroupClassTable, index: int) -> BurnsideElement:
        coeffs = [0] * len(table)
        coeffs[index] = 1
        return cls(table, coeffs)

    @classmethod
    def of_subgroup(cls, table: SubgroupClassTable, sub: Subgroup) -> BurnsideElement:
        return cls.basis(table, table.class_of(sub))

    def _same(self, other: BurnsideElement) -> None:
        if other.table is not self.table:
            raise ValueError("elements of different Burnside rings")

    def __add__(self, other: BurnsideElement) -> BurnsideElement:
        self._same(other)
        return BurnsideElement(self.table, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: BurnsideElement) -> BurnsideElement:
        self._same(other)
        return BurnsideElement(self.table, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> BurnsideElement:
        return BurnsideElement(self.table, [-a for a in self.coeffs])

    def __mul__(self, k: int) -> BurnsideElement:
        return BurnsideElement(self.table, [k * a for a in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, BurnsideElement) and other.table is self.table and other.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __repr__(self) -> str:
        terms = [f"{a:+d}[{self.table.classes[i].order}#{i}]" for i, a in enumerate(self.coeffs) if a]
        return "BurnsideElement(" + (" ".join(terms) or "0") + ")"

    def marks(self, marks: MarksMatrix | None = None) -> np.ndarray:
        marks = marks or marks_matrix(self.table)
        return marks.marks_of(self.coeffs)

    def to_json(self) -> list[dict]:
        return [
            {"subgroup_order": self.table.classes[i].order, "class_index": i, "coefficient": a}
            for i, a in enumerate(self.coeffs)
            if a
        ]


def induce(elt: BurnsideElement, embedding: np.ndarray, target: SubgroupClassTable) -> BurnsideElement:
    """``[H/U] -> [G/U]``; ``elt`` lives on a subgroup H realised via ``Subgroup.as_group``."""
    n = target.group.order
    out = [0] * len(target)
    for i, a in enumerate(elt.coeffs):
        if not a:
            continue
        mask = np.zeros(n, dtype=bool)
        mask[embedding[elt.table.classes[i].rep.elements]] = True
        out[target.class_of(mask)] += a
    return BurnsideElement(target, out)


def inflate(elt: BurnsideElement, projection: np.ndarray, target: SubgroupClassTable) -> BurnsideElement:
    """``[(G/N)/(U/N)] -> [G/U]`` with U the full preimage under ``projection``."""
    out = [0] * len(target)
    for i, a in enumerate(elt.coeffs):
        if not a:
            continue
        mask = elt.table.classes[i].rep.mask[projection]
        out[target.class_of(mask)] += a
    return BurnsideElement(target, out)


def induction_map(source: SubgroupClassTable, embedding: np.ndarray, target: SubgroupClassTable) -> np.ndarray:
    """Matrix of :func:`induce` on basis elements (rows: source classes)."""
    m = np.zeros((len(source), len(target)), dtype=np.int64)
    for i in range(len(source)):
        m[i] = induce(BurnsideElement.basis(source, i), embedding, target).coeffs
    return m


def inflation_map(source: SubgroupClassTable, projection: np.ndarray, target: SubgroupClassTable) -> np.ndarray:
    m = np.zeros((len(source), len(target)), dtype=np.int64)
    for i in range(len(source)):
        m[i] = inflate(BurnsideElement.basis(source, i), projection, target).coeffs
    return m


def _cyclic_subgroups(cyc: Subgroup) -> dict[int, Subgroup]:
    """The subgroups of a cyclic group, keyed by order."""
    group = cyc.parent
    gen = cyc.generator()
    if gen is None:
        raise ValueError("expected a cyclic subgroup")
    n = cyc.order
    return {d: closure(group, [group.power(gen, n // d)]) for d in range(1, n + 1) if n % d == 0}


def theta(real, h1: Subgroup, h2: Subgroup, table: SubgroupClassTable, hm=None) -> BurnsideElement:
    """``sum over C' <= C_bar of mu(|C'|) ([C'H] - [C'H'])`` for ``H, H'`` in the top layer of 𝓗.

    ``h1``/``h2`` may be given as subgroups of P or of G (indices agree).
    ``hm`` is an optional precomputed 𝓗_m (e.g. from ``gamma.enumerate_Hm``).
    """
    group: FiniteGroup = table.group
    if hm is None:
        from .gamma import enumerate_Hm

        hm = enumerate_Hm(real)[1]
    keys = {s.key for s in hm}
    subs = []
    for h in (h1, h2):
        lifted = Subgroup(real.p_group, h.elements) if h.parent is not real.p_group else h
        if lifted.key not in keys:
            raise ValueError("theta needs both subgroups in the top layer H_m")
        subs.append(Subgroup(group, h.elements))
    coeffs = [0] * len(table)
    for d, sub in _cyclic_subgroups(real.C_bar).items():
        mu = moebius(d)
        if not mu:
            continue
        for sign, h in zip((1, -1), subs):
            product = np.unique(group.table[np.ix_(sub.elements, h.elements)])
            coeffs[table.class_of(Subgroup(group, product))] += sign * mu
    return BurnsideElement(table, coeffs)
