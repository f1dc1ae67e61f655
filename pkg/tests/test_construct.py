import numpy as np
import pytest

from brauer_qe.construct import (
    QEParams,
    ValidationError,
    hypothesis_flags,
    k_group,
    load_config,
    parse_config,
    realize,
    validate,
    with_defaults,
)
from brauer_qe.groups import Subgroup, closure, family_test, is_normal

FAMILY = {"dihedral": "dihedral_2group", "quaternion": "generalized_quaternion", "semidihedral": "semidihedral"}


def test_validation_examples():
    assert validate(QEParams(2, 7, "cyclic", 2, 1, 3)) == []
    assert "p^m ∤ q−1" in validate(QEParams(3, 7, "cyclic", 1, 2, 1))
    assert any("k odd forbidden" in v for v in validate(QEParams(2, 5, "semidihedral", 3, 2, 1, 1)))
    assert any("requires p = 2" in v for v in validate(QEParams(3, 7, "dihedral", 2, 1, 1, 0)))
    assert any("not a unit" in v for v in validate(QEParams(2, 5, "cyclic", 2, 1, 2)))
    assert any("k is required" in v for v in validate(QEParams(2, 5, "dihedral", 2, 1, 1)))
    assert any("order dividing" in v for v in validate(QEParams(3, 7, "cyclic", 2, 1, 2)))
    with pytest.raises(ValidationError) as err:
        realize(QEParams(3, 7, "cyclic", 1, 2, 1))
    assert err.value.violations


def test_orders():
    assert realize(QEParams(3, 7, "cyclic", 1, 1, 1)).group.order == 63
    assert realize(QEParams(2, 3, "dihedral", 2, 1, 1, 0)).group.order == 48
    real = realize(QEParams(2, 5, "quaternion", 2, 2, 3, 1))
    assert real.group.order == 5 * 8 * 4
    assert real.group.element_orders[real.h] == 4
    real.group.check_axioms()


def test_presentation_relations():
    real = realize(QEParams(2, 17, "dihedral", 3, 4, 3, 1))
    P, h, c, x = real.p_group, real.h, real.c, real.x
    assert P.conj[h, c] == P.power(c, 3)
    assert P.conj[h, x] == P.mul(c, x)
    assert P.element_orders[x] == 2
    assert P.conj[x, c] == P.inverse[c]
    sd = realize(QEParams(2, 5, "semidihedral", 3, 2, 1, 2))
    P = sd.p_group
    assert P.conj[sd.x, sd.c] == P.power(sd.c, 3)
    assert P.conj[sd.h, sd.x] == P.mul(P.power(sd.c, 2), sd.x)
    q = realize(QEParams(2, 5, "quaternion", 2, 2, 1, 1))
    assert q.p_group.power(q.x, 2) == q.p_group.power(q.c, 2)


def test_realization_invariants(corpus):
    for real in corpus:
        G, pa = real.group, real.params
        assert G.order == pa.q * pa.k_order * pa.p ** pa.m
        assert is_normal(real.C)
        # brute-force kernel of P acting on C by conjugation
        t = real.t
        kernel = [g for g in real.P.elements if G.conj[g, t] == t]
        assert np.array_equal(np.array(kernel), real.K.elements)
        assert real.C_bar.is_cyclic()
        if pa.n:
            order_p = [closure(G, [g]) for g in real.K.elements if G.element_orders[g] == pa.p]
            normal = {s.key for s in order_p if is_normal(s)}
            assert normal == {real.Z.key}
        if pa.k_type != "cyclic":
            k_local, _ = real.K.as_group()
            assert family_test(k_local, FAMILY[pa.k_type])


def test_k_group_families():
    assert family_test(k_group("dihedral", 2, 2), "dihedral_2group")
    assert family_test(k_group("quaternion", 2, 2), "generalized_quaternion")
    assert family_test(k_group("semidihedral", 2, 3), "semidihedral")
    assert family_test(k_group("cyclic", 3, 2), "cyclic")


def test_flags_examples():
    f = hypothesis_flags(realize(QEParams(3, 7, "cyclic", 1, 1, 1)))
    assert f.action_kernel_nontrivial and f.K_order_p and not f.K_trivial
    assert hypothesis_flags(realize(QEParams(2, 5, "cyclic", 2, 2, 3))).action_kernel_nontrivial
    assert hypothesis_flags(realize(QEParams(2, 5, "cyclic", 2, 1, 3))).A_faithful_on_C
    assert not hypothesis_flags(realize(QEParams(2, 5, "cyclic", 3, 1, 3))).action_kernel_nontrivial
    # r = 4 has order 2 mod 5 while |A| = 4
    assert not hypothesis_flags(realize(QEParams(2, 5, "cyclic", 2, 2, 1, r=4))).A_faithful_on_C
    assert hypothesis_flags(realize(QEParams(3, 7, "cyclic", 0, 1))).K_trivial


def test_default_action_has_full_order():
    pa = QEParams(2, 17, "cyclic", 1, 4, 1)
    assert with_defaults(pa).r == 3
    assert pow(3, 16, 17) == 1 and pow(3, 8, 17) != 1


def test_config_round_trip(tmp_path):
    text = """
# two groups
p = 3
q = 7
k_type = cyclic
n = 1
m = 1
j = 1

p = 2
q = 17
k-type = dihedral   # hyphen accepted
n = 3
m = 4
j = 3
k = 1
"""
    params = parse_config(text)
    assert params == [QEParams(3, 7, "cyclic", 1, 1, 1), QEParams(2, 17, "dihedral", 3, 4, 3, 1)]
    path = tmp_path / "groups.cfg"
    path.write_text(text)
    assert load_config(path) == params
    assert [QEParams.from_dict(p.to_dict()) for p in params] == params
    with pytest.raises(ValueError):
        parse_config("p = 2\nbogus = 1\n")
    with pytest.raises(ValueError):
        parse_config("p 2\n")


def test_p_embeds_in_g():
    real = realize(QEParams(2, 5, "dihedral", 2, 2, 3, 0))
    n = real.p_group.order
    assert np.array_equal(real.group.table[:n, :n], real.p_group.table)
    assert Subgroup(real.group, real.K_in_P.elements) == real.K
