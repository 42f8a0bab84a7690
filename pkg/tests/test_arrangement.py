from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dblplane.arrangement import (
    ArrangementError,
    Curve,
    DuplicateCurveError,
    IrrationalIntersectionError,
    MalformedChainError,
    ProjLine,
    ProjPoint,
    concurrent_lines,
    curve_arrangement_graph,
    cycle_rank,
    fundamental_cycles,
    lines_arrangement,
    span_rank_mod2,
)
from dblplane.polyring import HyperellipticSpec, X

slopes = st.lists(st.integers(-20, 20), min_size=3, max_size=7, unique=True)


def through_origin(ks):
    return [ProjLine(1, k) for k in ks]


@pytest.mark.parametrize("n", range(3, 11))
def test_concurrent_cycle_rank(n):
    g = lines_arrangement(concurrent_lines(n)).graph
    assert g.s == n + 1  # the origin and n points at infinity
    assert cycle_rank(g) == g.e - (g.n + 1 + g.s) + 1 == n - 1
    assert g.is_connected()


@given(slopes)
def test_fundamental_cycles_are_cycles(ks):
    A = lines_arrangement(through_origin(ks))
    assert len(A.basis) == cycle_rank(A.graph)
    for cyc in A.basis:
        assert not any(A.graph.boundary(cyc).values())


def test_general_position():
    lines = [ProjLine(1, 0, 0), ProjLine(0, 1, 0), ProjLine(1, 1, -1), ProjLine(1, -2, 3)]
    g = lines_arrangement(lines).graph
    s = comb(len(lines) + 1, 2)
    assert g.s == s and g.e == 2 * s
    assert cycle_rank(g) == s - len(lines)


def test_point_normalization():
    assert ProjPoint.of(2, 4, 2).coords == (1, 2, 1)
    assert ProjPoint.of(0, 3, 0).coords == (0, 1, 0)
    assert ProjPoint.of(-2, 1, 0).coords == (1, Fraction(-1, 2), 0)
    with pytest.raises(ArrangementError):
        ProjPoint.of(0, 0, 0)


def test_duplicate_lines_rejected():
    with pytest.raises(DuplicateCurveError):
        lines_arrangement([ProjLine(1, 1), ProjLine(2, 2), ProjLine(1, 0)])
    with pytest.raises(DuplicateCurveError):
        lines_arrangement([ProjLine(0, 0, 3), ProjLine(1, 0)])


def test_bezout_for_graph_curves():
    h = HyperellipticSpec.from_mults((2, 4))
    A = curve_arrangement_graph(h)
    # F1 and F2 are cubics; they meet in 9 points counted with multiplicity
    assert sum(A.meet("F1", "F2").values()) == 9
    assert sum(A.meet("F1", "F0").values()) == 3
    assert sum(A.meet("F1", "L1").values()) == 3


def test_curve_contains_meet_points():
    C = Curve.graph("F1", (X - 1) * (X - 2))
    with pytest.raises(IrrationalIntersectionError):
        C.meet(Curve.line("M", 1, 1, -3).form, "M")
    pts = C.meet(Curve.line("L", 0, 1, 0).form, "L")
    assert sum(pts.values()) == 2
    for P in pts:
        assert C.contains(P)


@given(slopes, st.integers(2, 6))
def test_symbol_antisymmetry_and_bilinearity(ks, d):
    A = lines_arrangement(through_origin(ks))
    F = [f"F{i + 1}" for i in range(len(ks))]

    def cls(a, b):
        return A.symbol_class(a, b, d).coords

    c12, c21 = cls({F[0]: 1}, {F[1]: 1}), cls({F[1]: 1}, {F[0]: 1})
    assert all((x + y) % d == 0 for x, y in zip(c12, c21))
    c13, c23 = cls({F[0]: 1}, {F[2]: 1}), cls({F[1]: 1}, {F[2]: 1})
    prod = cls({F[0]: 1, F[1]: 1}, {F[2]: 1})
    assert all((x - y - z) % d == 0 for x, y, z in zip(prod, c13, c23))
    # (a, a) = (a, -1) is zero on the complement of the arrangement
    assert not any(cls({F[0]: 1}, {F[0]: 1}))


@given(slopes)
def test_symbols_span_two_torsion(ks):
    A = lines_arrangement(through_origin(ks))
    n, r = len(ks), cycle_rank(A.graph)
    F = [f"F{i + 1}" for i in range(n)]
    classes = [A.symbol_class({F[i]: 1}, {F[j]: 1}, 2) for i in range(n) for j in range(i + 1, n)]
    assert span_rank_mod2(classes, r) == r == n - 1


@given(slopes)
def test_chain_is_a_cycle(ks):
    A = lines_arrangement(through_origin(ks))
    sc = A.symbol_chain({"F1": 1}, {"F2": 1}, 3)
    assert not any(A.graph.boundary(sc.chain).values())


@pytest.mark.parametrize("mults", [(2,), (2, 2), (2, 4), (4, 4), (6, 10)])
def test_two_curve_arrangement(mults):
    h = HyperellipticSpec.from_mults(mults)
    A = curve_arrangement_graph(h)
    assert cycle_rank(A.graph) == h.v
    c = A.symbol_class({"F1": 1}, {"F2": 1}, 2)
    assert c.order == (2 if h.D % 4 == 2 else 1)
    for i in range(h.v):
        sc = A.symbol_chain({"F1": 1, "F2": -1}, {f"L{i + 1}": 1}, 6)
        assert sc.unramified_off_arrangement


def test_auxiliary_ramification_detected():
    h = HyperellipticSpec.from_mults((2, 2))
    A = curve_arrangement_graph(h)
    # (f1, x - lambda_1) ramifies along the auxiliary line, so it is no cycle of the graph
    with pytest.raises(MalformedChainError):
        A.symbol_chain({"F1": 1}, {"L1": 1}, 2)


def test_odd_D_rejected():
    with pytest.raises(ArrangementError):
        curve_arrangement_graph(HyperellipticSpec.from_mults((1, 3)))


def test_exports():
    A = lines_arrangement(concurrent_lines(3))
    dot = A.graph.to_dot()
    assert dot.startswith("graph arrangement") and dot.count("--") == A.graph.e
    js = A.graph.to_json()
    assert js["cycle_rank"] == 2 and len(js["edges"]) == A.graph.e
    assert fundamental_cycles(A.graph) == A.basis
