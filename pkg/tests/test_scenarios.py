import pytest

from dblplane.abgroup import FGAbelianGroup
from dblplane.classgroup import ScenarioError
from dblplane.polyring import HyperellipticSpec
from dblplane.scenarios import (
    Scenario,
    chr_order_check,
    intersection_data,
    intersection_matrix,
    run_hyperelliptic_scenario,
    run_lines_scenario,
    tame_symbol_orders,
)

E = FGAbelianGroup.elementary


def lines(n):
    return Scenario.lines([(1, k) for k in range(n)])


def g(rep, key):
    return rep.computed[key]["str"]


def test_lines_n3():
    rep = run_lines_scenario(lines(3))
    assert rep.ok
    assert g(rep, "Cl(T)") == "Z/2 + Z/2"
    assert g(rep, "B(S/R)") == "Z/2 + Z/2"
    assert rep.computed["intersection"]["abs_det"] == 4


def test_lines_n4():
    rep = run_lines_scenario(lines(4))
    assert rep.ok
    assert g(rep, "B(S/R)") == "Z/2"
    assert rep.computed["Cl(T)"]["functors"]["two_torsion"]["torsion"] == [2, 2, 2]
    assert rep.computed["H(G,Pic S)"]["Heven"]["str"] == "Z/2 + Z/2"


@pytest.mark.parametrize("coeffs", [[(1, 0), (0, 1), (1, 1), (2, -3), (5, 7)],
                                    [(1, 2), (3, 1), (1, -1), (2, 5)]])
def test_lines_non_standard_coefficients(coeffs):
    assert run_lines_scenario(Scenario.lines(coeffs)).ok


def test_lines_rejections():
    with pytest.raises(ScenarioError):
        run_lines_scenario(lines(2))
    with pytest.raises(ScenarioError):
        run_lines_scenario(Scenario.lines([(1, 0), (2, 0), (1, 1)]))
    with pytest.raises(ScenarioError):
        run_lines_scenario(Scenario.lines([(0, 0), (1, 0), (1, 1)]))
    s = lines(3)
    s.family = "lines-even"
    with pytest.raises(ScenarioError):
        run_lines_scenario(s)


def test_hyper_d2():
    rep = run_hyperelliptic_scenario(Scenario.hyper(HyperellipticSpec.from_mults((2, 4)), assoc_trials=3),
                                     vary_roots=True)
    assert rep.ok
    assert g(rep, "Cl(T)") == "Z/2 + Z"
    assert g(rep, "B_breve(S/R)") == "Z/2"
    assert rep.computed["H(G,Cl T)"]["Hodd"]["str"] == "Z/2 + Z/2"
    assert rep.asserted["brauer_ranks"]["B(R)"] == 2
    assert all(rep.computed["root_variation"].values())


def test_hyper_d4():
    rep = run_hyperelliptic_scenario(Scenario.hyper(HyperellipticSpec.from_mults((4,))), crossed=False)
    assert rep.ok
    assert g(rep, "Pic(S)") == "Z/2"
    assert g(rep, "B_breve(S/R)") == "0"
    assert rep.computed["H(G,Pic S)"]["Hodd"]["str"] == "Z/2"


def test_hyper_d1():
    rep = run_hyperelliptic_scenario(Scenario.hyper(HyperellipticSpec.from_mults((1, 1, 1))), crossed=False)
    assert rep.ok
    assert g(rep, "Cl(T)") == "Z^2"
    assert g(rep, "B(S/R)") == "Z/2 + Z/2"
    assert "asserted" in rep.computed["B(S/R)_source"]


def test_hyper_rejections():
    with pytest.raises(ScenarioError):
        run_hyperelliptic_scenario(Scenario.hyper(HyperellipticSpec.from_mults((1,))))
    with pytest.raises(ScenarioError):
        run_hyperelliptic_scenario(lines(3))


def test_reports_are_deterministic():
    a = run_lines_scenario(lines(5)).dumps()
    b = run_lines_scenario(lines(5)).dumps()
    assert a == b
    h = HyperellipticSpec.from_mults((2, 2))
    a = run_hyperelliptic_scenario(Scenario.hyper(h, assoc_trials=2)).dumps()
    b = run_hyperelliptic_scenario(Scenario.hyper(h, assoc_trials=2)).dumps()
    assert a == b


def test_report_schema():
    js = run_lines_scenario(lines(3)).to_json()
    assert set(js) == {"scenario", "computed", "asserted", "checks"}
    assert all(set(c) == {"name", "pass", "detail"} for c in js["checks"])


def test_chr_order_check_reports_mismatch():
    bad = chr_order_check(E(2, 1), E(2, 1), E(2, 2), FGAbelianGroup())
    assert not bad[0].passed and "|B(S/R)|=4" in bad[0].detail
    good = chr_order_check(E(2, 2), E(2, 3), E(2, 1), FGAbelianGroup(), E(2, 1))
    assert all(c.passed for c in good)


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_intersection(n):
    d = intersection_data(n)
    assert d["abs_det"] == 2 ** (n - 1)
    assert d["cokernel"] == E(2, n - 1)
    M = d["matrix"]
    assert M[0][0] == -(n + 1) // 2 and M == [list(r) for r in zip(*M)]


def test_intersection_rejects_even():
    with pytest.raises(ScenarioError):
        intersection_matrix(4)


def test_tame_orders_table():
    assert tame_symbol_orders(4, 6)["I"]["order"] == 3
