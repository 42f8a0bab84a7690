from math import gcd
from functools import reduce

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dblplane.abgroup import FGAbelianGroup
from dblplane.classgroup import (
    ScenarioError,
    branch_curve_table,
    brauer_ranks,
    cl_even_case_descriptor,
    cl_hyperelliptic_doubleplane,
    hyper_cl_module,
    hyper_table_checks,
    hyperelliptic_two_torsion,
    is_split_cover,
    lines_odd_presentation,
    lines_table_checks,
    local_class_group,
    nagata_class_group,
    pic_S,
    pic_S_even_case,
    pic_S_module,
    pic_T,
    quadratic_covers,
    relative_brauer_check,
    scalar_extension_doubling,
    singularity_types,
)
from dblplane.cohomology import cohomology_table
from dblplane.polyring import HyperellipticSpec

E = FGAbelianGroup.elementary
mults = st.lists(st.integers(1, 8), min_size=1, max_size=4).filter(lambda m: sum(m) >= 2)


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
def test_lines_odd_class_group(n):
    assert nagata_class_group(lines_odd_presentation(n)) == E(2, n - 1)
    assert all(c.ok for c in lines_table_checks(n))


@given(mults)
def test_hyper_class_group_formula(m):
    h = HyperellipticSpec.from_mults(m)
    D = reduce(gcd, m)
    cl = cl_hyperelliptic_doubleplane(h).group
    assert cl == FGAbelianGroup(h.v - 1, (D,))
    assert hyper_cl_module(h).group == cl
    assert all(c.ok for c in hyper_table_checks(h))


@given(mults)
def test_pic_T_is_free(m):
    h = HyperellipticSpec.from_mults(m)
    P = pic_T(h)
    assert P.group == FGAbelianGroup(h.v - 1) and P.local_map_ok


@given(mults)
def test_pic_S_parity_formula(m):
    h = HyperellipticSpec.from_mults(m)
    expect = FGAbelianGroup(h.v - 1, (h.D // 2,)) if h.D % 2 == 0 else FGAbelianGroup(h.v - 1, (h.D,))
    assert pic_S(h) == expect


@given(mults)
def test_hyper_cohomology_is_elementary(m):
    h = HyperellipticSpec.from_mults(m)
    for M in (hyper_cl_module(h), pic_S_module(h)):
        t = cohomology_table(M)
        for k in ("Hodd", "Heven"):
            assert t[k].rank == 0 and all(d == 2 for d in t[k].torsion)


def test_hyper_cohomology_examples():
    h = HyperellipticSpec.from_mults((2, 4))
    t = cohomology_table(hyper_cl_module(h))
    assert t["Hodd"] == E(2, 2)
    h = HyperellipticSpec.from_mults((4,))
    assert pic_S(h) == FGAbelianGroup.cyclic(2)
    assert cohomology_table(pic_S_module(h))["Hodd"] == E(2, 1)


@given(mults, st.fractions(-3, 3, max_denominator=3))
def test_invariants_do_not_depend_on_roots(m, c):
    h = HyperellipticSpec.from_mults(m)
    for g in (h.shifted(c), h.permuted(list(reversed(range(h.v))))):
        assert cl_hyperelliptic_doubleplane(g).group == cl_hyperelliptic_doubleplane(h).group
        assert cohomology_table(hyper_cl_module(g)) == cohomology_table(hyper_cl_module(h))
        assert cohomology_table(pic_S_module(g)) == cohomology_table(pic_S_module(h))


def test_local_groups():
    h = HyperellipticSpec.from_mults((1, 3, 6))
    assert [local_class_group(h, i) for i in (1, 2, 3)] == [
        FGAbelianGroup(), FGAbelianGroup.cyclic(3), FGAbelianGroup.cyclic(6)]
    assert singularity_types(h) == ["smooth", "A2", "A5"]
    with pytest.raises(IndexError):
        local_class_group(h, 4)


def test_degree_one_rejected():
    with pytest.raises(ScenarioError):
        cl_hyperelliptic_doubleplane(HyperellipticSpec.from_mults((1,)))


@pytest.mark.parametrize("n", range(3, 9))
def test_two_torsion_and_split_covers(n):
    assert hyperelliptic_two_torsion(n) == E(2, n - 2 if n % 2 == 0 else n - 1)
    q = quadratic_covers(n)
    assert q["split"] == [[0] * n, [1] * n]
    assert q["nontrivial_classes"] == 2 ** (n - 1) - 1


@given(st.lists(st.integers(0, 1), min_size=3, max_size=8))
def test_split_iff_constant(e):
    assert is_split_cover(e) == (len(set(e)) == 1)


def test_branch_curve_table():
    t = branch_curve_table(3)
    assert t.valuation("l2", "Q2") == 2 and t.valuation("w", "Q1") == 1


@pytest.mark.parametrize("n", [4, 6, 8])
def test_even_lines_functors(n):
    d = cl_even_case_descriptor(n)
    assert d.functors["two_torsion"] == E(2, n - 1)
    assert d.functors["tensor_Z2"] == E(2, 1)
    pe = pic_S_even_case(n)
    assert pe["H_even"] == E(2, n - 2) and pe["H_odd"].is_trivial


def test_even_lines_rejects_odd():
    with pytest.raises(ScenarioError):
        cl_even_case_descriptor(5)
    with pytest.raises(ScenarioError):
        pic_S_even_case(3)


def test_relative_brauer_check():
    assert relative_brauer_check(E(2, 2), E(2, 2), "x").passed
    assert not relative_brauer_check(E(2, 2), E(2, 1), "x").passed


@pytest.mark.parametrize("d", [2, 3, 4, 6])
def test_scalar_extension_doubling(d):
    out = scalar_extension_doubling(3, d)
    assert out["kernel"] == (E(2, 3) if d % 2 == 0 else FGAbelianGroup())
    assert out["zero_map"] == (d == 2)


def test_brauer_ranks():
    assert brauer_ranks("lines-odd", n=5) == {"B(S)": 4}
    assert brauer_ranks("hyperelliptic", h=HyperellipticSpec.from_mults((2, 4)))["B(R)"] == 2
    assert brauer_ranks("hyperelliptic", h=HyperellipticSpec.from_mults((1, 1, 1)))["B(R)"] == 2
    with pytest.raises(ScenarioError):
        brauer_ranks("planes")


@pytest.mark.parametrize("m", [(1, 1, 1), (2, 4), (2, 2), (3, 3), (4,), (6, 10, 15), (4, 8), (6, 6, 6)])
def test_pic_S_cohomology(m):
    h = HyperellipticSpec.from_mults(m)
    t = cohomology_table(pic_S_module(h))
    four = h.D % 4 == 0
    assert t["Hodd"] == E(2, h.v if four else h.v - 1)
    assert t["Heven"] == E(2, 1 if four else 0)
