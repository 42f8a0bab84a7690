import pytest
from hypothesis import given
from hypothesis import strategies as st

from dblplane.scenarios import tame_symbol_orders, tame_symbol_tables
from dblplane.valuation import (
    DivisorTable,
    MonomialElem,
    PrimeDivisor,
    UnknownElementError,
    content,
    divisor_of,
    kummer_order,
    mismatches,
    table_consistency,
    tame_symbol,
    valuation,
)

NAMES = ("a", "b", "c")


def random_table(vecs):
    t = DivisorTable([PrimeDivisor("P"), PrimeDivisor("Q")], label="t")
    for n, v in zip(NAMES, vecs):
        t.add(n, v)
    return t


vecs = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=3, max_size=3)
elems = st.dictionaries(st.sampled_from(NAMES), st.integers(-3, 3), max_size=3).map(MonomialElem)


@given(vecs, elems, elems)
def test_valuation_is_additive(vs, m1, m2):
    t = random_table(vs)
    d1, d2, d12 = divisor_of(m1, t), divisor_of(m2, t), divisor_of(m1 * m2, t)
    assert d12 == tuple(x + y for x, y in zip(d1, d2))
    assert divisor_of(m1.inverse(), t) == tuple(-x for x in d1)


@given(vecs, vecs, elems, elems, st.integers(2, 6))
def test_tame_symbol_antisymmetric(vs, rs, a, b, d):
    t = random_table(vs)
    res = random_table(rs)
    s_ab = tame_symbol(a, b, "P", d, t, res)
    s_ba = tame_symbol(b, a, "P", d, t, res)
    assert s_ab.residue == s_ba.residue.inverse()
    assert s_ab.order == s_ba.order


@given(vecs, elems, elems, elems)
def test_tame_residue_bilinear(vs, a1, a2, b):
    t = random_table(vs)

    def res(x, y):
        vx, vy = valuation(x, "P", t), valuation(y, "P", t)
        return x ** vy * y ** (-vx)

    assert res(a1 * a2, b) == res(a1, b) * res(a2, b)
    assert res(a1, a1) == MonomialElem()


@given(vecs, elems, st.integers(2, 8))
def test_kummer_order_divides_d(vs, g, d):
    res = DivisorTable([PrimeDivisor("P"), PrimeDivisor("Q")])
    for n, v in zip(NAMES, vs):
        res.add(n, v)
    k, _ = kummer_order(g, d, res)
    assert d % k == 0
    assert kummer_order(g ** d, d, res)[0] == 1


def test_kummer_order_on_affine_line():
    res = DivisorTable([PrimeDivisor("(x)")], {"x": (1,)})
    x = MonomialElem.of("x")
    assert kummer_order(x ** 2, 6, res)[0] == 3
    assert kummer_order(x ** 3, 6, res)[0] == 2
    assert kummer_order(MonomialElem(), 6, res)[0] == 1


@pytest.mark.parametrize("n", [4, 6, 8])
@pytest.mark.parametrize("m", [2, 3, 4, 6])
def test_blowup_chart_residues(n, m):
    out = tame_symbol_orders(n, m)
    assert out["I"]["residue"] == "(x)^2"
    assert out["I"]["order"] == m // (2 if m % 2 == 0 else 1)
    assert out["J"]["residue"] == "(v)^-1"
    assert out["J"]["residue_divisor"][0] == -2
    assert not any(out["J"]["residue_divisor"][1:])
    assert out["J"]["order"] == m


def test_chart_valuations():
    t, _, res_J = tame_symbol_tables(4)
    assert t.valuation("v", "I") == 2 and t.valuation("x", "I") == 0
    assert t.valuation("x", "J") == 1 and t.valuation("v", "J") == 0
    assert res_J.valuation("v", "P2") == 2


def test_table_consistency_flags_mismatch():
    t = random_table([(1, 0), (0, 1), (1, 1)])
    ab, c = MonomialElem.of("a", "b"), MonomialElem.of("c")
    ok = table_consistency(t, [(ab, c)])
    assert not mismatches(ok)
    bad = table_consistency(t, [(MonomialElem.of("a"), c)])
    assert len(mismatches(bad)) == 1 and bad[0].to_json()["pass"] is False


def test_unknown_element():
    t = random_table([(1, 0), (0, 1), (1, 1)])
    with pytest.raises(UnknownElementError):
        divisor_of(MonomialElem.of("zz"), t)
    with pytest.raises(ValueError):
        t.add("d", (1, 2, 3))
    with pytest.raises(ValueError):
        tame_symbol(MonomialElem.of("a"), MonomialElem.of("b"), "P", 1, t)


def test_content():
    assert content([4, -6, 0]) == 2
    assert content([]) == 0
