"""Finite groups given by a multiplication table, and their subgroups.

Elements are the integers ``0..N-1``. A subgroup is stored as a sorted
index array together with a packed membership bitmap; the bitmap bytes
serve as a hash key, so equality and lookup of subgroups are cheap.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .numtheory import is_prime, prime_factors

DEFAULT_ORDER_BOUND = 1200

FAMILIES = (
    "cyclic",
    "klein_four",
    "dihedral_2group",
    "generalized_quaternion",
    "semidihedral",
    "heisenberg_p",
)


class GroupError(ValueError):
    pass


class NotNormalError(GroupError):
    pass


class ResourceLimitError(RuntimeError):
    def __init__(self, what: str, size: int, bound: int):
        super().__init__(f"{what}: order {size} exceeds the configured bound {bound}")
        self.size = size
        self.bound = bound


class FiniteGroup:
    """A finite group given by its Cayley table ``table[i, j] = i*j``."""

    def __init__(self, table, name: str = ""):
        table = np.array(table, dtype=np.int32)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise GroupError("multiplication table must be a non-empty square array")
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            raise GroupError("table entries out of range")
        ar = np.arange(n)
        ids = np.flatnonzero((table == ar).all(axis=1))
        if len(ids) != 1 or not (table[:, ids[0]] == ar).all():
            raise GroupError("no two-sided identity")
        e = int(ids[0])
        rows, cols = np.nonzero(table == e)
        if len(rows) != n or not np.array_equal(np.sort(rows), ar):
            raise GroupError("not every element has a unique inverse")
        inverse = np.empty(n, dtype=np.int32)
        inverse[rows] = cols
        if not (table[inverse, ar] == e).all():
            raise GroupError("left and right inverses differ")
        table.setflags(write=False)
        inverse.setflags(write=False)
        self.table = table
        self.order = n
        self.identity = e
        self.inverse = inverse
        self.name = name

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{label} of order {self.order}>"

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return isinstance(other, FiniteGroup) and self.order == other.order and self.digest == other.digest

    def __hash__(self) -> int:
        return hash(self.digest)

    @cached_property
    def digest(self) -> str:
        return hashlib.sha1(self.table.tobytes()).hexdigest()

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = int(self.inverse[a]), -k
        out, base = self.identity, a
        while k:
            if k & 1:
                out = int(self.table[out, base])
            base = int(self.table[base, base])
            k >>= 1
        return out

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        ar = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        pw = ar.copy()
        k = 1
        while True:
            hit = (pw == self.identity) & (orders == 0)
            orders[hit] = k
            if orders.all():
                break
            pw = self.table[pw, ar]
            k += 1
        orders.setflags(write=False)
        return orders

    @cached_property
    def conj(self) -> np.ndarray:
        """``conj[g, x] = g x g^-1``."""
        t = self.table
        out = t[t, self.inverse[:, None]]
        out.setflags(write=False)
        return out

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    @property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.element_orders))

    def whole(self) -> Subgroup:
        return Subgroup(self, np.arange(self.order))

    def trivial(self) -> Subgroup:
        return Subgroup(self, [self.identity])

    def centre(self) -> Subgroup:
        return Subgroup(self, np.flatnonzero((self.table == self.table.T).all(axis=1)))

    def check_axioms(self, samples: int = 100_000, seed: int = 0) -> None:
        """Verify associativity; exhaustive for N <= 128, sampled otherwise."""
        t = self.table
        if self.order <= 128:
            lhs = t[t[:, :, None], np.arange(self.order)[None, None, :]]
            rhs = t[np.arange(self.order)[:, None, None], t[None, :, :]]
            ok = np.array_equal(lhs, rhs)
        else:
            rng = np.random.default_rng(seed)
            a, b, c = rng.integers(0, self.order, size=(3, samples))
            ok = np.array_equal(t[t[a, b], c], t[a, t[b, c]])
        if not ok:
            raise GroupError("multiplication is not associative")

    def to_text(self) -> str:
        lines = [str(self.order)]
        lines += [" ".join(map(str, row)) for row in self.table.tolist()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, name: str = "") -> FiniteGroup:
        tokens = text.split()
        if not tokens:
            raise GroupError("empty group description")
        n = int(tokens[0])
        if len(tokens) != 1 + n * n:
            raise GroupError(f"expected {n * n} table entries, got {len(tokens) - 1}")
        return cls(np.array(tokens[1:], dtype=np.int64).reshape(n, n), name=name)


def _mask_key(mask: np.ndarray) -> bytes:
    return np.packbits(mask).tobytes()


class Subgroup:
    """A subgroup of ``parent``; closure is the caller's responsibility."""

    __slots__ = ("parent", "elements", "mask", "key")

    def __init__(self, parent: FiniteGroup, elements):
        self.parent = parent
        mask = np.zeros(parent.order, dtype=bool)
        mask[np.asarray(elements, dtype=np.int64)] = True
        mask.setflags(write=False)
        self.mask = mask
        self.elements = np.flatnonzero(mask)
        self.key = _mask_key(mask)

    @classmethod
    def from_mask(cls, parent: FiniteGroup, mask: np.ndarray) -> Subgroup:
        return cls(parent, np.flatnonzero(mask))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: int) -> bool:
        return bool(self.mask[g])

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements.tolist())

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and self.key == other.key and self.parent == other.parent

    def __hash__(self) -> int:
        return hash(self.key)

    def __le__(self, other: Subgroup) -> bool:
        return bool(other.mask[self.elements].all())

    def __lt__(self, other: Subgroup) -> bool:
        return self.order < other.order and self <= other

    def __and__(self, other: Subgroup) -> Subgroup:
        return Subgroup.from_mask(self.parent, self.mask & other.mask)

    def __repr__(self) -> str:
        return f"<Subgroup of order {self.order} in {self.parent!r}>"

    def is_closed(self) -> bool:
        t = self.parent.table
        idx = self.elements
        return bool(self.mask[t[np.ix_(idx, idx)]].all()) and self.mask[self.parent.identity]

    def is_cyclic(self) -> bool:
        return int(self.parent.element_orders[self.elements].max()) == self.order

    def generator(self) -> int | None:
        """An element generating the subgroup, or ``None`` if it is not cyclic."""
        orders = self.parent.element_orders[self.elements]
        hits = np.flatnonzero(orders == self.order)
        return int(self.elements[hits[0]]) if len(hits) else None

    def conjugate(self, g: int) -> Subgroup:
        """``g S g^-1``."""
        return Subgroup(self.parent, self.parent.conj[g, self.elements])

    def _conjugate_masks(self) -> np.ndarray:
        n = self.parent.order
        images = self.parent.conj[:, self.elements]
        masks = np.zeros((n, n), dtype=bool)
        masks[np.arange(n)[:, None], images] = True
        return masks

    def normalizer(self) -> Subgroup:
        masks = self._conjugate_masks()
        return Subgroup.from_mask(self.parent, (masks == self.mask).all(axis=1))

    def conjugates(self) -> list[Subgroup]:
        packed = np.unique(np.packbits(self._conjugate_masks(), axis=1), axis=0)
        bits = np.unpackbits(packed, axis=1, count=self.parent.order).astype(bool)
        return [Subgroup.from_mask(self.parent, row) for row in bits]

    def as_group(self) -> tuple[FiniteGroup, np.ndarray]:
        """The subgroup as a group in its own right, with the embedding into the parent.

        Local element ``i`` corresponds to parent element ``embedding[i]``; the
        order of elements is preserved, so the identity keeps its relative place.
        """
        idx = self.elements
        local = np.full(self.parent.order, -1, dtype=np.int64)
        local[idx] = np.arange(len(idx))
        table = local[self.parent.table[np.ix_(idx, idx)]]
        return FiniteGroup(table), idx.copy()


def closure(group: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``gens`` (breadth-first over right multiplication)."""
    gens = np.unique(np.fromiter((int(g) for g in gens), dtype=np.int64))
    mask = np.zeros(group.order, dtype=bool)
    mask[group.identity] = True
    if len(gens) == 0:
        return Subgroup.from_mask(group, mask)
    frontier = np.array([group.identity])
    while len(frontier):
        products = np.unique(group.table[np.ix_(frontier, gens)])
        frontier = products[~mask[products]]
        mask[frontier] = True
    return Subgroup.from_mask(group, mask)


def is_normal(sub: Subgroup, ambient: FiniteGroup | Subgroup | None = None) -> bool:
    """Whether ``g sub g^-1 = sub`` for every ``g`` of the ambient group (default: the parent)."""
    group = sub.parent
    if ambient is None or isinstance(ambient, FiniteGroup):
        gs = np.arange(group.order)
    else:
        gs = ambient.elements
    images = group.conj[np.ix_(gs, sub.elements)]
    return bool(sub.mask[images].all())


def derived_subgroup(sub: Subgroup) -> Subgroup:
    t = sub.parent.table
    inv = sub.parent.inverse
    idx = sub.elements
    ab = t[np.ix_(idx, idx)]
    comm = t[ab, inv[ab.T]]  # (ab)(ba)^-1 = a b a^-1 b^-1
    return closure(sub.parent, np.unique(comm))


def is_solvable(group: FiniteGroup) -> bool:
    if len(prime_factors(group.order)) <= 1:
        return True
    sub = group.whole()
    while sub.order > 1:
        nxt = derived_subgroup(sub)
        if nxt.order == sub.order:
            return False
        sub = nxt
    return True


def quotient(group: FiniteGroup, normal: Subgroup) -> tuple[FiniteGroup, np.ndarray]:
    """``G/N`` with cosets indexed by their least element; returns ``(quotient, projection)``."""
    if normal.parent != group:
        raise GroupError("subgroup belongs to a different group")
    if not is_normal(normal):
        raise NotNormalError(f"subgroup of order {normal.order} is not normal")
    least = group.table[:, normal.elements].min(axis=1)
    reps = np.unique(least)
    projection = np.searchsorted(reps, least)
    table = projection[group.table[np.ix_(reps, reps)]]
    projection.setflags(write=False)
    return FiniteGroup(table), projection


@dataclass
class SubgroupClass:
    """One conjugacy class of subgroups; ``rep`` has the lexicographically least element list."""

    rep: Subgroup
    conjugates: list[Subgroup]
    normalizer_order: int
    is_cyclic: bool

    @property
    def order(self) -> int:
        return self.rep.order

    @property
    def size(self) -> int:
        return len(self.conjugates)

    @property
    def is_normal(self) -> bool:
        return len(self.conjugates) == 1


@dataclass
class SubgroupClassTable:
    group: FiniteGroup
    classes: list[SubgroupClass]
    _index: dict[bytes, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.classes)

    def __getitem__(self, i: int) -> SubgroupClass:
        return self.classes[i]

    def __iter__(self) -> Iterator[SubgroupClass]:
        return iter(self.classes)

    def class_of(self, sub: Subgroup | np.ndarray) -> int:
        """Index of the class containing ``sub`` (a Subgroup or a boolean mask)."""
        key = sub.key if isinstance(sub, Subgroup) else _mask_key(sub)
        try:
            return self._index[key]
        except KeyError:
            raise GroupError("not a subgroup of this group") from None

    @property
    def cyclic_flags(self) -> list[bool]:
        return [c.is_cyclic for c in self.classes]

    @cached_property
    def cyclic_indices(self) -> list[int]:
        return [i for i, c in enumerate(self.classes) if c.is_cyclic]

    def all_subgroups(self) -> list[Subgroup]:
        return [s for c in self.classes for s in c.conjugates]

    def maximal_indices(self) -> list[int]:
        """Classes of maximal subgroups (proper, contained in no other proper subgroup)."""
        n = self.group.order
        proper = [s for c in self.classes for s in c.conjugates if s.order < n]
        masks = np.array([s.mask for s in proper])
        sizes = np.array([s.order for s in proper])
        out = []
        for i, c in enumerate(self.classes):
            if c.order == n:
                continue
            above = masks[:, c.rep.elements].all(axis=1) & (sizes > c.order)
            if not above.any():
                out.append(i)
        return out

    def minimal_normal_indices(self) -> list[int]:
        normal = [i for i, c in enumerate(self.classes) if c.is_normal and c.order > 1]
        out = []
        for i in normal:
            rep = self.classes[i].rep
            if not any(self.classes[k].order < rep.order and self.classes[k].rep <= rep for k in normal):
                out.append(i)
        return out


def all_subgroup_classes(group: FiniteGroup, bound: int = DEFAULT_ORDER_BOUND) -> SubgroupClassTable:
    """Every subgroup of ``group``, grouped into conjugacy classes.

    Classes are grown from the trivial subgroup. For solvable groups each
    class representative ``S`` is extended by elements ``z`` of its
    normalizer whose image in ``N(S)/S`` has prime order (every nontrivial
    subgroup of a solvable group has a normal subgroup of prime index, so
    nothing is missed); other groups fall back to closing ``S`` with any
    single outside element.
    """
    if group.order > bound:
        raise ResourceLimitError("subgroup enumeration", group.order, bound)
    n = group.order
    t = group.table
    solvable = is_solvable(group)
    primes = set(prime_factors(n))

    found: dict[bytes, int] = {}
    classes: list[SubgroupClass] = []
    normalizers: list[np.ndarray] = []

    def register(mask: np.ndarray) -> None:
        if _mask_key(mask) in found:
            return
        probe = Subgroup.from_mask(group, mask)
        conjugates = probe.conjugates()
        rep = max(conjugates, key=lambda s: s.key)  # max bitmap == least sorted element list
        norm = rep.normalizer()
        for s in conjugates:
            found[s.key] = len(classes)
        classes.append(SubgroupClass(rep, conjugates, norm.order, rep.is_cyclic()))
        normalizers.append(norm.mask)

    trivial = np.zeros(n, dtype=bool)
    trivial[group.identity] = True
    register(trivial)

    i = 0
    while i < len(classes):
        rep = classes[i].rep
        s_mask, s_idx = rep.mask, rep.elements
        done = s_mask.copy()
        candidates = np.flatnonzero(normalizers[i]) if solvable else np.arange(n)
        for z in candidates.tolist():
            if done[z]:
                continue
            if solvable:
                w, ell = z, 1
                while not s_mask[w]:
                    w = int(t[w, z])
                    ell += 1
                if ell not in primes:
                    continue
                cosets = [s_idx]
                zi = z
                for _ in range(ell - 1):
                    cosets.append(t[s_idx, zi])
                    zi = int(t[zi, z])
                mask = np.zeros(n, dtype=bool)
                mask[np.concatenate(cosets)] = True
                done |= mask  # any z' in T - S gives S<z'> = T again
            else:
                mask = closure(group, np.append(s_idx, z)).mask
            register(mask)
        i += 1

    order = sorted(range(len(classes)), key=lambda k: (classes[k].order, classes[k].rep.elements.tolist()))
    renumber = {old: new for new, old in enumerate(order)}
    classes = [classes[k] for k in order]
    for s in classes:
        s.conjugates.sort(key=lambda sub: sub.key, reverse=True)
    index = {key: renumber[k] for key, k in found.items()}
    return SubgroupClassTable(group, classes, index)


# ---------------------------------------------------------------------------
# structural family tests


def _cyclic_index_two(group: FiniteGroup) -> list[int]:
    """Generators of cyclic subgroups of index 2 (one per subgroup is enough for callers)."""
    half = group.order // 2
    return np.flatnonzero(group.element_orders == half).tolist()


def _two_power_exponent(n: int) -> int | None:
    if n < 1 or n & (n - 1):
        return None
    return n.bit_length() - 1


def _inverting_outside(group: FiniteGroup, c: int, involution: bool) -> bool:
    cyc = closure(group, [c])
    inv_c = int(group.inverse[c])
    for x in range(group.order):
        if x in cyc:
            continue
        if involution and group.element_orders[x] != 2:
            continue
        if group.conj[x, c] == inv_c:
            return True
    return False


def family_test(group: FiniteGroup, family: str) -> bool:
    """Recognise one of a handful of small families by a structural certificate."""
    n = group.order
    orders = group.element_orders
    if family == "cyclic":
        return int(orders.max()) == n
    if family == "klein_four":
        return n == 4 and int(orders.max()) == 2
    t = _two_power_exponent(n)
    if family == "dihedral_2group":
        if t is None or t < 3 or group.is_abelian:
            return False
        return any(_inverting_outside(group, c, involution=True) for c in _cyclic_index_two(group))
    if family == "generalized_quaternion":
        if t is None or t < 3 or group.is_abelian or int((orders == 2).sum()) != 1:
            return False
        return any(_inverting_outside(group, c, involution=False) for c in _cyclic_index_two(group))
    if family == "semidihedral":
        if t is None or t < 4 or group.is_abelian:
            return False
        half = n // 2
        for c in _cyclic_index_two(group):
            target = group.power(c, half // 2 - 1)
            cyc = closure(group, [c])
            for x in np.flatnonzero(orders == 2).tolist():
                if x not in cyc and group.conj[x, c] == target:
                    return True
        return False
    if family == "heisenberg_p":
        primes = prime_factors(n)
        if len(primes) != 1 or primes[0] == 2 or n != primes[0] ** 3:
            return False
        return not group.is_abelian and int(orders.max()) == primes[0]
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


# ---------------------------------------------------------------------------
# small constructors used by tests and demos


def cyclic_group(n: int) -> FiniteGroup:
    ar = np.arange(n)
    return FiniteGroup((ar[:, None] + ar[None, :]) % n, name=f"C{n}")


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """Index ``i * |B| + j`` for the pair ``(i, j)``."""
    nb = b.order
    ia, ib = np.divmod(np.arange(a.order * nb), nb)
    table = a.table[ia[:, None], ia[None, :]] * nb + b.table[ib[:, None], ib[None, :]]
    return FiniteGroup(table, name=f"{a.name}x{b.name}" if a.name and b.name else "")


def semidirect_product(normal: FiniteGroup, acting: FiniteGroup, action: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    """``N ⋊ H`` where ``action[h]`` is the permutation of N given by ``h``.

    Pairs ``(n, h)`` are indexed ``n * |H| + h`` and multiply as
    ``(n1, h1)(n2, h2) = (n1 * h1(n2), h1 h2)``.
    """
    act = np.asarray(action, dtype=np.int64)
    nh = acting.order
    idx = np.arange(normal.order * nh)
    nn, hh = np.divmod(idx, nh)
    moved = act[hh[:, None], nn[None, :]]
    table = normal.table[nn[:, None], moved] * nh + acting.table[hh[:, None], hh[None, :]]
    return FiniteGroup(table, name=name)


def dihedral_group(order: int) -> FiniteGroup:
    """Dihedral group of the given (even) order, as ``C_{order/2} ⋊ C_2``."""
    half = order // 2
    rot = cyclic_group(half)
    flip = [list(range(half)), [(-i) % half for i in range(half)]]
    return semidirect_product(rot, cyclic_group(2), flip, name=f"D{order}")


def quaternion_group(order: int = 8) -> FiniteGroup:
    """Generalised quaternion group ``<c, x | c^(2^n), x^2 = c^(2^(n-1)), x c x^-1 = c^-1>``.

    Elements ``c^b x^e`` are indexed ``b + e * half``.
    """
    half = order // 2
    quarter = half // 2
    table = np.empty((order, order), dtype=np.int64)
    for a in range(order):
        b1, e1 = a % half, a // half
        for b in range(order):
            b2, e2 = b % half, b // half
            exp = b1 + (-b2 if e1 else b2)
            e = e1 + e2
            if e == 2:
                exp += quarter
                e = 0
            table[a, b] = exp % half + e * half
    return FiniteGroup(table, name=f"Q{order}")


def heisenberg_group(p: int) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over F_p; ``(a, b, c)`` indexed ``(a*p + b)*p + c``."""
    if not is_prime(p):
        raise ValueError("p must be prime")
    n = p ** 3
    a, rest = np.divmod(np.arange(n), p * p)
    b, c = np.divmod(rest, p)
    A = (a[:, None] + a[None, :]) % p
    B = (b[:, None] + b[None, :]) % p
    Cc = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % p
    return FiniteGroup((A * p + B) * p + Cc, name=f"Heis{p}")
