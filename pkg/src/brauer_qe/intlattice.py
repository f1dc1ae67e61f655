"""Exact integer linear algebra: Hermite/Smith normal forms and lattices in Z^r.

Matrices are numpy arrays. Elimination runs in int64 while every update
provably fits, and restarts on Python-int object arrays otherwise, so
results are always exact. Row vectors throughout: a lattice is the row
space of its basis matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Iterable, Sequence

import numpy as np

_LIMIT = 1 << 62


class ContainmentError(ValueError):
    pass


class _Overflow(Exception):
    pass


def as_matrix(m, cols: int | None = None) -> np.ndarray:
    """A 2-d object array of Python ints (``cols`` fixes the width of an empty input)."""
    a = np.array(m, dtype=object)
    if a.size == 0:
        width = cols if cols is not None else (a.shape[1] if a.ndim == 2 else 0)
        return np.zeros((0, width), dtype=object)
    if a.ndim == 1:
        a = a[None, :]
    if a.ndim != 2:
        raise ValueError("expected a 2-d integer matrix")
    return np.vectorize(int, otypes=[object])(a)


def _fits(a: np.ndarray) -> bool:
    if a.size == 0:
        return True
    return max(abs(int(a.max())), abs(int(a.min()))) < (1 << 31)


def _echelon(a: np.ndarray, pivot_cols: int, checked: bool) -> tuple[np.ndarray, list[int]]:
    """Row echelon form by Euclidean row reduction; pivots only in the first ``pivot_cols`` columns."""
    rows = a.shape[0]
    r = 0
    pivots: list[int] = []
    for col in range(pivot_cols):
        if r == rows:
            break
        found = False
        while True:
            column = a[r:, col]
            nz = np.flatnonzero(column)
            if len(nz) == 0:
                break
            found = True
            best = r + int(nz[np.argmin(np.abs(column[nz]))])
            if best != r:
                a[[r, best]] = a[[best, r]]
            others = r + 1 + np.flatnonzero(a[r + 1:, col])
            if len(others) == 0:
                break
            piv = a[r, col]
            qs = a[others, col] // piv
            if checked:
                span = int(np.abs(a[r, col:]).max()) * int(np.abs(qs).max())
                if span + int(np.abs(a[others, col:]).max()) >= _LIMIT:
                    raise _Overflow
            a[others, col:] -= qs[:, None] * a[r, col:]
        if found:
            if a[r, col] < 0:
                a[r] = -a[r]
            pivots.append(col)
            r += 1
    return a, pivots


def _reduce_above(a: np.ndarray, pivots: Sequence[int], checked: bool) -> np.ndarray:
    for i, col in enumerate(pivots):
        if i == 0:
            continue
        piv = a[i, col]
        qs = a[:i, col] // piv
        if not qs.any():
            continue
        if checked:
            span = int(np.abs(a[i, col:]).max()) * int(np.abs(qs).max())
            if span + int(np.abs(a[:i]).max()) >= _LIMIT:
                raise _Overflow
        a[:i, col:] -= qs[:, None] * a[i, col:]
    return a


def _run(a: np.ndarray, pivot_cols: int, reduce: bool) -> tuple[np.ndarray, list[int]]:
    if _fits(a):
        try:
            work = a.astype(np.int64)
            work, piv = _echelon(work, pivot_cols, checked=True)
            if reduce:
                work = _reduce_above(work, piv, checked=True)
            return work.astype(object), piv
        except _Overflow:
            pass
    work = a.astype(object)
    work, piv = _echelon(work, pivot_cols, checked=False)
    if reduce:
        work = _reduce_above(work, piv, checked=False)
    return work, piv


def hnf(m) -> np.ndarray:
    """Row Hermite normal form of the row space of ``m`` (zero rows dropped).

    >>> hnf([[2, 4], [1, 3]]).tolist()
    [[1, 1], [0, 2]]
    """
    a = as_matrix(m)
    if a.shape[0] == 0:
        return a
    work, piv = _run(a, a.shape[1], reduce=True)
    return work[: len(piv)]


def hnf_with_pivots(m) -> tuple[np.ndarray, list[int]]:
    a = as_matrix(m)
    if a.shape[0] == 0:
        return a, []
    work, piv = _run(a, a.shape[1], reduce=True)
    return work[: len(piv)], piv


def rank(m) -> int:
    a = as_matrix(m)
    if a.shape[0] == 0:
        return 0
    return len(_run(a, a.shape[1], reduce=False)[1])


# ---------------------------------------------------------------------------
# abelian groups


@dataclass(frozen=True)
class AbelianInvariants:
    """``Z/d_1 x ... x Z/d_s x Z^free_rank`` with ``d_1 | d_2 | ...`` and every ``d_i >= 2``."""

    factors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        f = tuple(int(d) for d in self.factors)
        if any(d < 2 for d in f) or any(b % a for a, b in zip(f, f[1:])):
            raise ValueError(f"not a canonical invariant factor list: {f}")
        object.__setattr__(self, "factors", f)

    @classmethod
    def from_diagonal(cls, diagonal: Iterable[int], free_rank: int = 0) -> AbelianInvariants:
        """Canonical form of ``⊕ Z/d`` over the given diagonal (zeros count as free summands)."""
        ds = [abs(int(d)) for d in diagonal]
        free_rank += sum(1 for d in ds if d == 0)
        ds = [d for d in ds if d > 1]
        for i in range(len(ds)):
            for k in range(i + 1, len(ds)):
                a, b = ds[i], ds[k]
                g = gcd(a, b)
                ds[i], ds[k] = g, a // g * b
        return cls(tuple(sorted(d for d in ds if d > 1)), free_rank)

    @classmethod
    def elementary(cls, p: int, rank: int) -> AbelianInvariants:
        return cls((p,) * rank)

    @property
    def is_trivial(self) -> bool:
        return not self.factors and self.free_rank == 0

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        return prod(self.factors) if self.is_finite else None

    def is_elementary(self, p: int) -> bool:
        return self.is_finite and all(d == p for d in self.factors)

    def to_list(self) -> list[int]:
        return list(self.factors) + [0] * self.free_rank

    def __str__(self) -> str:
        parts = [f"C{d}" for d in self.factors] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "trivial"


@dataclass(frozen=True)
class SmithForm:
    diagonal: tuple[int, ...]
    cokernel: AbelianInvariants


def snf(m) -> SmithForm:
    """Smith normal form diagonal of ``m`` and the invariants of ``Z^cols / rowspace(m)``."""
    a = as_matrix(m)
    rows, cols = a.shape
    work = a
    for _ in range(10_000):
        if work.shape[0] == 0:
            break
        work, piv = _run(work, work.shape[1], reduce=False)
        work = work[: len(piv)]
        off = work.copy()
        np.fill_diagonal(off, 0)
        if not off.any():
            break
        work = work.T.copy()
    else:  # pragma: no cover
        raise RuntimeError("Smith normal form did not converge")
    diag = [abs(int(d)) for d in np.diag(work)] if work.size else []
    r = len(diag)
    inv = AbelianInvariants.from_diagonal(diag, free_rank=cols - r)
    full = list(inv.factors)
    full = [1] * (r - len(full)) + full + [0] * (min(rows, cols) - r)
    return SmithForm(tuple(full), inv)


# ---------------------------------------------------------------------------
# lattices


class IntegerLattice:
    """Sublattice of ``Z^ambient_rank`` spanned by the rows of ``generators``; stored in HNF."""

    def __init__(self, ambient_rank: int, generators=()):
        self.ambient_rank = ambient_rank
        gens = as_matrix(generators, cols=ambient_rank)
        if gens.shape[1] != ambient_rank:
            raise ValueError(f"generators have width {gens.shape[1]}, expected {ambient_rank}")
        self.basis, self.pivots = hnf_with_pivots(gens)
        if self.basis.shape[0] == 0:
            self.basis = np.zeros((0, ambient_rank), dtype=object)

    @classmethod
    def full(cls, rank: int) -> IntegerLattice:
        return cls(rank, np.eye(rank, dtype=np.int64))

    @property
    def rank(self) -> int:
        return self.basis.shape[0]

    def __repr__(self) -> str:
        return f"<IntegerLattice rank {self.rank} in Z^{self.ambient_rank}>"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntegerLattice)
            and self.ambient_rank == other.ambient_rank
            and self.basis.shape == other.basis.shape
            and bool((self.basis == other.basis).all())
        )

    def __add__(self, other: IntegerLattice) -> IntegerLattice:
        return IntegerLattice(self.ambient_rank, np.vstack([self.basis, other.basis]))

    def _solve(self, vectors: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Coordinates in the basis, and the residual left after peeling off pivots."""
        v = as_matrix(vectors, cols=self.ambient_rank).copy()
        coords = np.zeros((v.shape[0], self.rank), dtype=object)
        bad = np.zeros(v.shape[0], dtype=bool)
        for i, col in enumerate(self.pivots):
            piv = self.basis[i, col]
            bad |= (v[:, col] % piv) != 0
            c = v[:, col] // piv
            coords[:, i] = c
            v -= c[:, None] * self.basis[i][None, :]
        residual_bad = bad | v.any(axis=1) if v.size else bad
        return coords, residual_bad

    def contains(self, vector) -> bool:
        _, bad = self._solve(as_matrix(vector, cols=self.ambient_rank))
        return not bool(bad[0])

    def coordinates(self, vectors) -> np.ndarray:
        vectors = as_matrix(vectors, cols=self.ambient_rank)
        coords, bad = self._solve(vectors)
        if bad.any():
            raise ContainmentError(f"{int(bad.sum())} vector(s) not in the lattice")
        return coords

    def __le__(self, other: IntegerLattice) -> bool:
        if self.rank == 0:
            return True
        return not other._solve(self.basis)[1].any()


def kernel_lattice(m) -> IntegerLattice:
    """All integer row vectors ``v`` with ``v @ m == 0``."""
    a = as_matrix(m)
    rows, cols = a.shape
    if rows == 0:
        return IntegerLattice(0)
    aug = np.hstack([a, np.eye(rows, dtype=np.int64).astype(object)])
    work, piv = _run(aug, cols, reduce=False)
    return IntegerLattice(rows, work[len(piv):, cols:])


def quotient_invariants(lattice: IntegerLattice, sub: IntegerLattice) -> AbelianInvariants:
    """Invariants of ``lattice / sub``; raises ContainmentError unless ``sub`` ⊆ ``lattice``."""
    if lattice.ambient_rank != sub.ambient_rank:
        raise ValueError("lattices live in different ambient spaces")
    if sub.rank == 0:
        return AbelianInvariants(free_rank=lattice.rank)
    coords = lattice.coordinates(sub.basis)
    return snf(coords).cokernel


def matrix_to_text(m) -> str:
    a = as_matrix(m)
    lines = [f"{a.shape[0]} {a.shape[1]}"] + [" ".join(str(x) for x in row) for row in a.tolist()]
    return "\n".join(lines) + "\n"


def matrix_from_text(text: str) -> np.ndarray:
    tokens = text.split()
    rows, cols = int(tokens[0]), int(tokens[1])
    values = [int(x) for x in tokens[2:]]
    if len(values) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got {len(values)}")
    return as_matrix(np.array(values, dtype=object).reshape(rows, cols), cols=cols)
