"""Acceptance checks, one per criterion, each printing a PASS/FAIL line.

Run under pytest (lines are repeated in the terminal summary) or directly:
``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from brauer_qe.burnside import theta  # noqa: E402
from brauer_qe.classifier import CLASSIFIED, NONE, classify  # noqa: E402
from brauer_qe.construct import QEParams, realize  # noqa: E402
from brauer_qe.gamma import Applicability, gamma_route  # noqa: E402
from brauer_qe.intlattice import AbelianInvariants, IntegerLattice, hnf, quotient_invariants, snf  # noqa: E402
from brauer_qe.numtheory import valuation  # noqa: E402
from brauer_qe import relations  # noqa: E402
from brauer_qe.relations import brauer_kernel, prim, subgroup_classes  # noqa: E402
from brauer_qe.sweep import SweepRanges, run_sweep, run_tuple  # noqa: E402

LINES: list[str] = []
C2, C3, TRIVIAL = AbelianInvariants((2,)), AbelianInvariants((3,)), AbelianInvariants()


def report(label: str, ok: bool, detail: str, seconds: float) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail} ({seconds:.2f}s)"
    LINES.append(line)
    print(line)


class Clock:
    def __enter__(self):
        # timings are taken cold
        relations.subgroup_classes.cache_clear()
        relations._kernel_cached.cache_clear()
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def three_routes(params):
    real = realize(params)
    v = classify(params)
    g = gamma_route(real)
    o = prim(real.group).invariants
    return v, g, o


def test_criterion_1_case_one():
    params = QEParams(3, 7, "cyclic", 1, 1, 1)
    with Clock() as t:
        v, g, o = three_routes(params)
    effective_d = len(g.prediction.factors) + 1
    ok = (
        realize(params).group.order == 63
        and o == C3
        and (v.status, v.matched_case, v.invariants) == (CLASSIFIED, 1, C3)
        and g.prediction == C3
        and effective_d == 2
        and t.seconds < 10
    )
    report("criterion 1", ok, f"oracle {o}, classifier case {v.matched_case} -> {v.invariants}, "
           f"graph route {g.prediction} (d-1 = 1; raw graph on |K| = p has {g.graph.d} components)", t.seconds)
    assert ok


@pytest.mark.xfail(strict=True, reason="j = 3 is -1 mod 4, which rules out the C_2 case; every route gives trivial Prim")
def test_criterion_2_case_two_as_stated():
    params = QEParams(2, 5, "cyclic", 2, 2, 3)
    with Clock() as t:
        v, g, o = three_routes(params)
    ok = realize(params).group.order == 80 and o == C2 and v.invariants == C2 and g.prediction == C2 and t.seconds < 10
    report("criterion 2", ok, f"oracle {o}, classifier {v.status} -> {v.invariants}, graph d={g.d} -> {g.prediction}; "
           "expected C2 on all routes", t.seconds)
    assert ok


def test_criterion_2_companion_j_one():
    params = QEParams(2, 5, "cyclic", 2, 2, 1)
    with Clock() as t:
        v, g, o = three_routes(params)
    ok = o == C2 and (v.matched_case, v.invariants) == (2, C2) and g.prediction == C2 and t.seconds < 10
    report("criterion 2 (j = 1 companion)", ok, f"oracle {o}, classifier case {v.matched_case}, graph d={g.d}", t.seconds)
    assert ok


def test_criterion_2_routes_agree_at_j_three():
    params = QEParams(2, 5, "cyclic", 2, 2, 3)
    v, g, o = three_routes(params)
    assert v.status == NONE and v.invariants == TRIVIAL and g.prediction == TRIVIAL and o == TRIVIAL


def test_criterion_3_semidihedral():
    params = QEParams(2, 5, "semidihedral", 3, 2, 1, 0)
    with Clock() as t:
        v, g, o = three_routes(params)
    ok = params.order == 320 and g.d == 1 and o == TRIVIAL and v.status == NONE and t.seconds < 60
    report("criterion 3", ok, f"|G| = {params.order}, graph d={g.d}, oracle {o}, classifier {v.status}", t.seconds)
    assert ok


def test_criterion_4_quaternion():
    params = QEParams(2, 17, "quaternion", 2, 3, 1, 1)
    with Clock() as t:
        rec = run_tuple(params, bound=600)
    g, v = rec.gamma, rec.verdict
    skipped = [s for s in rec.skipped if s.startswith("oracle:")]
    ok = (
        realize(params).p_group.order == 64
        and g["d"] == 2 and g["invariants"] == [2]
        and v["case"] == 3 and v["invariants"] == [2]
        and rec.oracle is None and bool(skipped) and rec.routes_agree
        and t.seconds < 5
    )
    report("criterion 4", ok, f"graph d={g['d']}, classifier case {v['case']}, oracle skipped: {skipped[0] if skipped else '-'}",
           t.seconds)
    assert ok


def test_criterion_5_dihedral():
    params = QEParams(2, 17, "dihedral", 3, 4, 3, 1)
    with Clock() as t:
        v = classify(params)
        real = realize(params)
        g = gamma_route(real)
    c22 = AbelianInvariants((2, 2))
    ok = real.p_group.order == 256 and v.invariants == c22 and v.matched_case == 5 and g.d == 3 and g.prediction == c22 and t.seconds < 30
    report("criterion 5", ok, f"classifier case {v.matched_case} -> {v.invariants}, graph d={g.d} on |P| = {real.p_group.order}", t.seconds)
    assert ok


@pytest.fixture(scope="module")
def full_sweep():
    return run_sweep(SweepRanges((2, 3), 17, 3, 3), bound=600)


def test_criterion_6_sweep(full_sweep):
    s = full_sweep.summary
    ok = s["disagreements"] == 0 and s["compared"] > 0 and full_sweep.elapsed < 1800
    bad = "; ".join(r.params.label() for r in full_sweep.disagreements()[:5])
    report("criterion 6", ok, f"{s['tuples']} tuples, {s['valid']} valid, {s['compared']} compared, "
           f"{s['disagreements']} disagreements{' ' + bad if bad else ''}", full_sweep.elapsed)
    assert ok


def test_sweep_klein_policy_is_immaterial(full_sweep):
    # the graph with a Klein four quotient counted as dihedral gives the same counts
    seen = set()
    for rec in full_sweep.records:
        g = rec.gamma
        if not g or g["applicability"] != "applies":
            continue
        key = (rec.params.p, rec.params.k_type, rec.params.n, rec.params.m, rec.params.j, rec.params.k)
        if key in seen:
            continue
        seen.add(key)
        assert gamma_route(realize(rec.params), include_klein=True).d == g["d"], rec.params.label()
    assert seen


def _property_suite() -> list[str]:
    from conftest import CORPUS_PARAMS
    from test_intlattice import bareiss_det, determinantal_divisors

    failures = []
    # rank identity
    for params in CORPUS_PARAMS:
        g = realize(params).group
        table = subgroup_classes(g)
        if brauer_kernel(g).rank != len(table) - len(table.cyclic_indices):
            failures.append(f"rank identity {params.label()}")
    # cyclic centre of P with nontrivial K forces trivial Prim
    for params in CORPUS_PARAMS:
        real = realize(params)
        z = real.p_group.centre()
        if params.n and z.is_cyclic() and not prim(real.group).invariants.is_trivial:
            failures.append(f"cyclic centre {params.label()}")
    # Θ across components
    for params in [QEParams(2, 5, "cyclic", 2, 2, 1), QEParams(2, 5, "cyclic", 3, 2, 3), QEParams(2, 5, "dihedral", 3, 2, 3, 0)]:
        real = realize(params)
        gr = gamma_route(real)
        assert gr.applicability is Applicability.APPLIES
        structure, table = prim(real.group), subgroup_classes(real.group)
        comp, verts = gr.graph.component_of(), gr.graph.vertices
        for a in range(len(verts)):
            for b in range(a + 1, len(verts)):
                elt = theta(real, verts[a], verts[b], table, hm=verts)
                if not structure.kernel.lattice.contains(list(elt.coeffs)):
                    failures.append(f"theta outside K(G) {params.label()}")
                if comp[a] != comp[b] and structure.contains_imprimitive(elt):
                    failures.append(f"theta imprimitive across components {params.label()}")
    # v_l(n^s - 1) = v_l(n - 1) + v_l(s) on 10^4 random triples
    rng = random.Random(7)
    for _ in range(10_000):
        l = rng.choice([2, 3, 5, 7, 11, 13])
        n = 1 + (4 if l == 2 else l) * rng.randint(1, 50)
        s = rng.randint(1, 50)
        if valuation(l, n ** s - 1) != valuation(l, n - 1) + valuation(l, s):
            failures.append(f"valuation {l} {n} {s}")
    # HNF/SNF/quotient against determinantal divisors on random 4x4 matrices
    for _ in range(200):
        m = [[rng.randint(-20, 20) for _ in range(4)] for _ in range(4)]
        expected = determinantal_divisors(m)
        if [d for d in snf(m).diagonal if d] != expected:
            failures.append(f"snf {m}")
        if IntegerLattice(4, hnf(m)) != IntegerLattice(4, m):
            failures.append(f"hnf {m}")
        q = quotient_invariants(IntegerLattice.full(4), IntegerLattice(4, m))
        if q != AbelianInvariants.from_diagonal(expected, free_rank=4 - len(expected)):
            failures.append(f"quotient {m}")
        if len(expected) == 4 and q.order != abs(bareiss_det(m)):
            failures.append(f"order {m}")
    return failures


def test_criterion_7_properties():
    with Clock() as t:
        failures = _property_suite()
    ok = not failures
    report("criterion 7", ok, "rank identity, cyclic centre, theta witnesses, valuation identity (10^4), "
           f"HNF/SNF vs determinantal divisors (200); {len(failures)} failures {failures[:3]}", t.seconds)
    assert ok


if __name__ == "__main__":
    tests = [
        test_criterion_1_case_one,
        test_criterion_2_case_two_as_stated,
        test_criterion_2_companion_j_one,
        test_criterion_3_semidihedral,
        test_criterion_4_quaternion,
        test_criterion_5_dihedral,
        lambda: test_criterion_6_sweep(run_sweep(SweepRanges((2, 3), 17, 3, 3), bound=600)),
        test_criterion_7_properties,
    ]
    for fn in tests:
        try:
            fn()
        except AssertionError:
            pass
    print(f"{sum(line.startswith('[PASS]') for line in LINES)} of {len(LINES)} criteria lines passed")
