"""Quasi-elementary groups ``G = C_q ⋊ (K ⋊ A)`` from a parameter tuple.

``K`` is cyclic, dihedral, generalised quaternion or semidihedral with
generators ``c`` (order ``p^n``) and possibly ``x``; ``A = <h>`` is cyclic of
order ``p^m`` acting by ``h c h^-1 = c^j``, ``h x h^-1 = c^k x`` on ``K`` and by
``t -> t^r`` on ``C = <t>``. ``K`` centralises ``C``.
"""

from __future__ import annotations

import re
from dataclasses import asdict, dataclass, replace
from functools import cached_property
from math import gcd
from pathlib import Path
from typing import Iterable

import numpy as np

from .groups import FiniteGroup, Subgroup, closure, cyclic_group, semidirect_product
from .numtheory import element_of_order, is_prime, mult_order

K_TYPES = ("cyclic", "dihedral", "quaternion", "semidihedral")

# smallest admissible n per K type
MIN_N = {"cyclic": 0, "dihedral": 2, "quaternion": 2, "semidihedral": 3}


class ValidationError(ValueError):
    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


@dataclass(frozen=True)
class QEParams:
    p: int
    q: int
    k_type: str
    n: int
    m: int
    j: int = 1
    k: int | None = None
    r: int | None = None

    @property
    def has_x(self) -> bool:
        return self.k_type != "cyclic"

    @property
    def k_order(self) -> int:
        return self.p ** self.n * (2 if self.has_x else 1)

    @property
    def p_order(self) -> int:
        return self.k_order * self.p ** self.m

    @property
    def order(self) -> int:
        return self.q * self.p_order

    @property
    def action_on_c(self) -> int:
        """The exponent ``r`` with ``h t h^-1 = t^r`` (defaults to a faithful choice)."""
        if self.r is not None:
            return self.r
        return element_of_order(self.q, self.p ** self.m)

    def label(self) -> str:
        parts = [f"p={self.p}", f"q={self.q}", self.k_type, f"n={self.n}", f"m={self.m}", f"j={self.j}"]
        if self.k is not None:
            parts.append(f"k={self.k}")
        if self.r is not None:
            parts.append(f"r={self.r}")
        return " ".join(parts)

    def to_dict(self) -> dict:
        return {key: value for key, value in asdict(self).items() if value is not None}

    @classmethod
    def from_dict(cls, data: dict) -> QEParams:
        data = {key.replace("-", "_"): value for key, value in data.items()}
        unknown = set(data) - {"p", "q", "k_type", "n", "m", "j", "k", "r"}
        if unknown:
            raise ValueError(f"unknown parameter(s): {', '.join(sorted(unknown))}")
        ints = {key: int(value) for key, value in data.items() if key != "k_type" and value is not None}
        return cls(k_type=str(data.get("k_type", "cyclic")), **ints)


def parse_config(text: str) -> list[QEParams]:
    """Parameter blocks of ``key = value`` lines, separated by blank lines; ``#`` starts a comment."""
    out = []
    for block in re.split(r"\n\s*\n", text):
        entries = {}
        for line in block.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"expected 'key = value', got {line!r}")
            key, value = (s.strip() for s in line.split("=", 1))
            entries[key] = value
        if entries:
            out.append(QEParams.from_dict(entries))
    return out


def load_config(path: str | Path) -> list[QEParams]:
    return parse_config(Path(path).read_text())


# ---------------------------------------------------------------------------
# K and its automorphism


def k_group(k_type: str, p: int, n: int) -> FiniteGroup:
    """``K`` with element ``c^b x^e`` at index ``b + e * p^n``."""
    size = p ** n
    if k_type == "cyclic":
        return cyclic_group(size)
    half = size // 2
    twist, x_square = {
        "dihedral": (-1, 0),
        "quaternion": (-1, half),
        "semidihedral": (half - 1, 0),
    }[k_type]
    idx = np.arange(2 * size)
    b, e = idx % size, idx // size
    b2 = np.where(e[:, None] == 1, twist * b[None, :], b[None, :])
    exp = b[:, None] + b2
    ee = e[:, None] + e[None, :]
    exp = exp + np.where(ee == 2, x_square, 0)
    table = exp % size + (ee % 2) * size
    return FiniteGroup(table, name=f"{k_type[0].upper()}{2 * size}")


def k_action(params: QEParams) -> np.ndarray:
    """Images of the elements of ``K`` under ``c -> c^j``, ``x -> c^k x`` (unchecked)."""
    size = params.p ** params.n
    if not params.has_x:
        return (np.arange(size) * params.j) % size
    idx = np.arange(2 * size)
    b, e = idx % size, idx // size
    k = params.k or 0
    return (params.j * b + e * k) % size + e * size


def _automorphism_problems(params: QEParams) -> list[str]:
    group = k_group(params.k_type, params.p, params.n)
    phi = k_action(params)
    problems = []
    t = group.table
    if not np.array_equal(phi[t], t[phi[:, None], phi[None, :]]):
        problems.append("c -> c^j, x -> c^k x does not respect the relations of K")
        return problems
    if len(np.unique(phi)) != group.order:
        problems.append("c -> c^j, x -> c^k x is not bijective on K")
        return problems
    power = np.arange(group.order)
    for _ in range(params.p ** params.m):
        power = phi[power]
    if not np.array_equal(power, np.arange(group.order)):
        problems.append(f"the action of h on K does not have order dividing p^m = {params.p ** params.m}")
    return problems


def validate(params: QEParams) -> list[str]:
    """Every violated constraint on ``params``; an empty list means valid."""
    v = []
    p, q, n, m = params.p, params.q, params.n, params.m
    if not is_prime(p):
        v.append(f"p = {p} is not prime")
    if not is_prime(q):
        v.append(f"q = {q} is not prime")
    if p == q:
        v.append("p and q must be distinct")
    if params.k_type not in K_TYPES:
        v.append(f"k_type must be one of {', '.join(K_TYPES)}")
        return v
    if m < 1:
        v.append("m must be positive")
    if n < MIN_N[params.k_type]:
        v.append(f"{params.k_type} K needs n >= {MIN_N[params.k_type]}")
    if params.has_x and p != 2:
        v.append(f"{params.k_type} K requires p = 2")
    if params.has_x and params.k is None:
        v.append(f"k is required for {params.k_type} K")
    if not params.has_x and params.k is not None:
        v.append("k applies only to non-cyclic K")
    if v:
        return v
    if (q - 1) % p ** m:
        v.append("p^m ∤ q−1")
    if n > 0 and gcd(params.j, p) != 1:
        v.append(f"j = {params.j} is not a unit mod p^n")
    if params.k_type == "semidihedral" and params.k % 2:
        v.append("k odd forbidden for semidihedral K (k must be even)")
    if params.r is not None:
        r = params.r
        if gcd(r, q) != 1 or pow(r, p ** m, q) != 1:
            v.append(f"r = {r} does not define an action of order dividing p^m on C")
    if not any(s.startswith("j = ") for s in v):
        v.extend(_automorphism_problems(params))
    return v


# ---------------------------------------------------------------------------
# realisation


@dataclass
class HypothesisFlags:
    A_faithful_on_C: bool
    action_kernel_nontrivial: bool
    K_order_p: bool
    K_trivial: bool


class Realization:
    """Concrete ``G`` and ``P`` with the distinguished subgroups.

    ``P = K ⋊ A`` has element ``(kappa, i)`` (``kappa`` a K-index, ``h^i``) at
    index ``kappa * p^m + i``; ``G = C ⋊ P`` has ``(t^a, g)`` at
    ``a * |P| + g``. So P sits inside G as the first ``|P|`` indices, and the
    generator indices below are valid in both.
    """

    def __init__(self, params: QEParams):
        problems = validate(params)
        if problems:
            raise ValidationError(problems)
        self.params = params
        p, m = params.p, params.m
        a_order = p ** m
        self.k_group = k_group(params.k_type, p, params.n)
        phi = k_action(params)
        powers = [np.arange(self.k_group.order)]
        for _ in range(a_order - 1):
            powers.append(phi[powers[-1]])
        self._phi_powers = powers
        self.p_group = semidirect_product(self.k_group, cyclic_group(a_order), powers, name="P")
        size = p ** params.n
        self.h = 1
        self.c = a_order if size > 1 else self.p_group.identity
        self.x = size * a_order if params.has_x else None
        self.t = self.p_group.order

    @cached_property
    def group(self) -> FiniteGroup:
        q = self.params.q
        r = self.params.action_on_c
        a_order = self.params.p ** self.params.m
        ar = np.arange(q)
        by_i = [(ar * pow(r, i, q)) % q for i in range(a_order)]
        action = [by_i[g % a_order] for g in range(self.p_group.order)]
        return semidirect_product(cyclic_group(q), self.p_group, action, name="G")

    # subgroups of P (indices of P, valid in G too)

    def _in_p(self, gens: Iterable[int]) -> Subgroup:
        return closure(self.p_group, gens)

    @cached_property
    def K_in_P(self) -> Subgroup:
        return self._in_p([g for g in (self.c, self.x) if g is not None])

    @cached_property
    def A_in_P(self) -> Subgroup:
        return self._in_p([self.h])

    @cached_property
    def Z_in_P(self) -> Subgroup | None:
        """The order-p subgroup ``<c^(p^(n-1))>`` of K (None when K is trivial)."""
        if self.params.n == 0:
            return None
        z = self.p_group.power(self.c, self.params.p ** (self.params.n - 1))
        return self._in_p([z])

    # subgroups of G

    def _lift(self, sub: Subgroup) -> Subgroup:
        return Subgroup(self.group, sub.elements)

    @cached_property
    def C(self) -> Subgroup:
        return closure(self.group, [self.t])

    @cached_property
    def K(self) -> Subgroup:
        return self._lift(self.K_in_P)

    @cached_property
    def P(self) -> Subgroup:
        return Subgroup(self.group, np.arange(self.p_group.order))

    @cached_property
    def A(self) -> Subgroup:
        return self._lift(self.A_in_P)

    @cached_property
    def Z(self) -> Subgroup | None:
        return None if self.Z_in_P is None else self._lift(self.Z_in_P)

    @cached_property
    def C_K(self) -> Subgroup:
        """K itself when cyclic, otherwise ``<c>`` (for Q_8 this fixes one of three choices)."""
        return closure(self.group, [self.c])

    @cached_property
    def C_bar(self) -> Subgroup:
        return closure(self.group, [self.t, self.c])

    def flags(self) -> HypothesisFlags:
        return hypothesis_flags(self)


def realize(params: QEParams) -> Realization:
    return Realization(params)


def hypothesis_flags(real: Realization) -> HypothesisFlags:
    pa = real.params
    faithful = mult_order(pa.action_on_c, pa.q) == pa.p ** pa.m
    # h^(p^(m-1)) acts on K as phi^(p^(m-1))
    phi = real._phi_powers[pa.p ** (pa.m - 1)]
    kernel = bool(np.array_equal(phi, np.arange(len(phi))))
    return HypothesisFlags(
        A_faithful_on_C=faithful,
        action_kernel_nontrivial=kernel,
        K_order_p=pa.k_order == pa.p,
        K_trivial=pa.k_order == 1,
    )


def with_defaults(params: QEParams) -> QEParams:
    """``params`` with ``r`` filled in explicitly."""
    return replace(params, r=params.action_on_c)
