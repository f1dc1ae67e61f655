"""Closed-form prediction of Prim(G) directly from the parameters.

Each divisibility test is recorded with the numbers that went into it, so
a verdict can be audited by hand. ``(j^s - 1)/(j - 1)`` is always taken as
the geometric sum ``1 + j + ... + j^(s-1)`` reduced mod ``2^n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .construct import QEParams, ValidationError, hypothesis_flags, realize, validate
from .intlattice import AbelianInvariants
from .numtheory import geometric_sum_mod, mult_order

CLASSIFIED = "classified"
NONE = "no_primitive_relations"
OUT_OF_SCOPE = "out_of_scope"


@dataclass
class Condition:
    text: str
    holds: bool
    values: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"condition": self.text, "holds": self.holds, "values": self.values}


@dataclass
class Verdict:
    status: str
    invariants: AbelianInvariants | None
    matched_case: int | str | None
    reasons: list[Condition]

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "case": self.matched_case,
            "invariants": None if self.invariants is None else self.invariants.to_list(),
            "reasons": [c.to_json() for c in self.reasons],
        }


class _Log:
    def __init__(self):
        self.reasons: list[Condition] = []

    def __call__(self, text: str, holds: bool, **values) -> bool:
        self.reasons.append(Condition(text, bool(holds), values))
        return bool(holds)


def classify(params: QEParams) -> Verdict:
    problems = validate(params)
    if problems:
        raise ValidationError(problems)
    log = _Log()
    p, n, m, j = params.p, params.n, params.m, params.j
    flags = hypothesis_flags(realize(params))

    if not log("A acts faithfully on C", flags.A_faithful_on_C, r=params.action_on_c, q=params.q, order_of_A=p ** m):
        return Verdict(OUT_OF_SCOPE, None, "prerequisite_failure", log.reasons)
    if log("K is trivial", flags.K_trivial, n=n):
        return Verdict(OUT_OF_SCOPE, None, None, log.reasons)
    if not log("h^(p^(m-1)) acts trivially on K", flags.action_kernel_nontrivial, p=p, m=m):
        # each of the five cases needs this, so nothing primitive is left
        return Verdict(NONE, AbelianInvariants(), "prerequisite_failure", log.reasons)

    mod = p ** n
    kt = params.k_type
    minus_one = log("j ≡ -1 (mod p^n)", (j + 1) % mod == 0, j=j, modulus=mod)
    plus_one = log("j ≡ 1 (mod p^n)", (j - 1) % mod == 0, j=j, modulus=mod)

    if kt == "cyclic" and p != 2:
        if log("n <= m", n <= m, n=n, m=m):
            u = p - 2 if n == 1 else p - 1
            return Verdict(CLASSIFIED, AbelianInvariants.elementary(p, u), 1, log.reasons)

    if kt == "cyclic" and p == 2 and not minus_one:
        first = log("1 < n <= m", 1 < n <= m, n=n, m=m)
        j3 = log("j ≡ 3 (mod 4)", j % 4 == 3, j=j)
        ordj = mult_order(j, mod)
        divides = log("ord(j mod 2^n) | 2^(m-1)", 2 ** (m - 1) % ordj == 0, order=ordj, bound=2 ** (m - 1))
        if first or (j3 and divides):
            return Verdict(CLASSIFIED, AbelianInvariants.elementary(2, 1), 2, log.reasons)

    k = params.k
    if kt == "quaternion":
        odd = log("k odd", k % 2 == 1, k=k)
        if odd and log("n < m", n < m, n=n, m=m):
            return Verdict(CLASSIFIED, AbelianInvariants.elementary(2, 1), 3, log.reasons)

    if kt == "dihedral":
        s = 2 ** (m - 1)
        geo = geometric_sum_mod(j, s, mod)
        if k % 2 == 0:
            log("k even", True, k=k)
            if not (minus_one or plus_one):
                c1 = log("2^n | j^(2^(m-1)) - 1", pow(j, s, mod) == 1, residue=(pow(j, s, mod) - 1) % mod, modulus=mod)
                c2 = log("2^n | k (j^(2^(m-1)) - 1)/(j - 1)", k * geo % mod == 0, residue=k * geo % mod, modulus=mod)
                if c1 and c2:
                    return Verdict(CLASSIFIED, AbelianInvariants.elementary(2, 1), 4, log.reasons)
        else:
            log("k odd", True, k=k)
            big_m = log("m > n", m > n, n=n, m=m)
            second = not (minus_one or plus_one) and log(
                "2^n | (j^(2^(m-1)) - 1)/(j - 1)", geo == 0, residue=geo, modulus=mod
            )
            if big_m or second:
                rank = 2 if big_m and not (minus_one or plus_one) else 1
                return Verdict(CLASSIFIED, AbelianInvariants.elementary(2, rank), 5, log.reasons)

    if kt == "semidihedral":
        log("K is semidihedral", True)
        return Verdict(NONE, AbelianInvariants(), None, log.reasons)

    if log("|K| = p", flags.K_order_p, order_of_K=params.k_order):
        inv = AbelianInvariants.elementary(p, p - 2)
        return Verdict(CLASSIFIED if p > 2 else NONE, inv, "K_order_p", log.reasons)

    return Verdict(NONE, AbelianInvariants(), None, log.reasons)
