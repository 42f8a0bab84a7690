"""Class groups, Picard groups and their Galois cohomology for double planes.

Nagata presentations are built from divisor tables: the inverted element's
minimal primes generate, the divisors of the localized ring's units give
the relations. Class groups that are not finitely generated never get
materialized. Only their finite functors are computed, from the exact
sequences that contain them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .abgroup import (
    FGAbelianGroup,
    annihilator,
    cokernel,
    columns_to_matrix,
    span_order_mod,
    subquotient,
)
from .cohomology import GModule, UnitModule, cohomology_table
from .polyring import HyperellipticSpec
from .valuation import DivisorTable, MonomialElem, PrimeDivisor, kummer_order, table_consistency


class ScenarioError(ValueError):
    pass


def _unit(i: int, n: int) -> tuple[int, ...]:
    return tuple(int(j == i) for j in range(n))


@dataclass(frozen=True)
class NagataPresentation:
    primes: tuple[str, ...]
    relations: tuple[tuple[int, ...], ...]
    relation_names: tuple[str, ...] = ()

    def __post_init__(self):
        if any(len(r) != len(self.primes) for r in self.relations):
            raise ValueError("relation vectors must be indexed by the prime list")

    @classmethod
    def from_table(cls, t: DivisorTable, elements: Sequence[str]) -> "NagataPresentation":
        return cls(tuple(t.prime_names), tuple(t.divisors[e] for e in elements), tuple(elements))

    def to_json(self) -> dict:
        return {"primes": list(self.primes),
                "relations": [{"element": n, "divisor": list(r)}
                              for n, r in zip(self.relation_names or [""] * len(self.relations),
                                              self.relations)]}


def nagata_class_group(p: NagataPresentation) -> FGAbelianGroup:
    return cokernel(columns_to_matrix(p.relations, len(p.primes)), nrows=len(p.primes))


@dataclass(frozen=True)
class ClassGroupDescriptor:
    """Either a finitely generated group or an extension of a divisible group by a finite kernel."""

    kind: str
    group: FGAbelianGroup | None = None
    kernel: FGAbelianGroup | None = None
    genus_tag: int | None = None
    functors: dict = field(default_factory=dict)
    generators: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        if self.kind == "fg":
            out = {"kind": "fg", "group": self.group.to_json()}
            if self.generators:
                out["generators"] = self.generators
            return out
        return {"kind": "extension", "kernel": self.kernel.to_json(),
                "genus_tag": self.genus_tag,
                "functors": {k: v.to_json() for k, v in sorted(self.functors.items())}}


# ---------------------------------------------------------------- lines, n odd

def lines_divisor_table(n: int) -> DivisorTable:
    """Primes I_j = (z, f_j) of T; Div(z) and Div(f_j)."""
    if n < 3:
        raise ScenarioError("need n > 2 lines")
    primes = [PrimeDivisor(f"I{j}", ("z", f"f{j}")) for j in range(1, n + 1)]
    t = DivisorTable(primes, label="T, primes over z")
    t.add("z", [1] * n, "z")
    for j in range(n):
        t.add(f"f{j + 1}", [2 * int(i == j) for i in range(n)])
    return t


def lines_odd_presentation(n: int) -> NagataPresentation:
    if n % 2 == 0:
        raise ScenarioError("the class group for even n is not finitely generated")
    t = lines_divisor_table(n)
    return NagataPresentation.from_table(t, ["z"] + [f"f{j}" for j in range(1, n + 1)])


def lines_table_checks(n: int):
    """z^2 = f_1 ... f_n up to a unit, checked on divisors."""
    t = lines_divisor_table(n)
    rhs = MonomialElem({f"f{j}": 1 for j in range(1, n + 1)})
    return table_consistency(t, [(MonomialElem(z=2), rhs)])


def lines_odd_cl_module(n: int) -> GModule:
    # sigma(z, f_j) = (-z, f_j) is the same ideal: trivial action
    p = lines_odd_presentation(n)
    act = tuple(_unit(i, n) for i in range(n))
    return GModule(n, p.relations, act, p.primes)


# ------------------------------------------------------------- hyperelliptic

def hyper_divisor_table(h: HyperellipticSpec) -> DivisorTable:
    """Primes I_i = (z - y, l_i) and I_i' = (z + y, l_i); sigma swaps them."""
    v = h.v
    primes = [PrimeDivisor(f"I{i + 1}", ("z-y", f"l{i + 1}")) for i in range(v)] + \
             [PrimeDivisor(f"I{i + 1}'", ("z+y", f"l{i + 1}")) for i in range(v)]
    t = DivisorTable(primes, label="T, primes over l_1 ... l_v")
    t.add("z-y", list(h.mults) + [0] * v, "z - y")
    t.add("z+y", [0] * v + list(h.mults), "z + y")
    for i in range(v):
        t.add(f"l{i + 1}", [int(j == i) for j in range(v)] * 2, str(h.ell(i)))
    return t


def hyper_table_checks(h: HyperellipticSpec):
    """(z - y)(z + y) = -p = -prod l_i^e_i, checked on divisors."""
    t = hyper_divisor_table(h)
    rhs = MonomialElem({f"l{i + 1}": e for i, e in enumerate(h.mults)})
    return table_consistency(t, [(MonomialElem.of("z-y", "z+y"), rhs)])


def _swap_action(v: int) -> tuple[tuple[int, ...], ...]:
    n = 2 * v
    rows = [[0] * n for _ in range(n)]
    for i in range(v):
        rows[i][v + i] = 1
        rows[v + i][i] = 1
    return tuple(map(tuple, rows))


def hyper_cl_module(h: HyperellipticSpec) -> GModule:
    t = hyper_divisor_table(h)
    elems = [f"l{i + 1}" for i in range(h.v)] + ["z-y", "z+y"]
    rels = tuple(t.divisors[e] for e in elems)
    return GModule(2 * h.v, rels, _swap_action(h.v), tuple(t.prime_names))


def cl_hyperelliptic_doubleplane(h: HyperellipticSpec) -> ClassGroupDescriptor:
    """Cl(T) = Z/D + Z^(v-1) from Div(z - y) = sum e_i I_i on T[(z-y)^-1]."""
    if h.degree < 2:
        raise ScenarioError("deg p must be at least 2")
    t = hyper_divisor_table(h)
    primes = tuple(t.prime_names[: h.v])
    pres = NagataPresentation(primes, (tuple(h.mults),), ("z-y",))
    G = nagata_class_group(pres)
    full = hyper_cl_module(h).group
    if not G.is_isomorphic(full):
        raise AssertionError(f"Nagata presentation {G} disagrees with the 2v-prime model {full}")
    gens = {f"I{i + 1}": f"(z-y, {h.ell(i)})" for i in range(h.v)}
    return ClassGroupDescriptor("fg", group=G, generators=gens)


def local_class_group(h: HyperellipticSpec, i: int) -> FGAbelianGroup:
    """Class group at the singular point P_i (1-based); cyclic of order e_i."""
    if not 1 <= i <= h.v:
        raise IndexError(f"branch index {i} outside 1..{h.v}")
    return FGAbelianGroup.cyclic(h.mults[i - 1])


def singularity_types(h: HyperellipticSpec) -> list[str]:
    return [f"A{e - 1}" if e > 1 else "smooth" for e in h.mults]


@dataclass(frozen=True)
class PicT:
    group: FGAbelianGroup
    generators: tuple[str, ...]
    local_map_ok: bool

    def to_json(self) -> dict:
        return {"group": self.group.to_json(), "generators": list(self.generators)}


def pic_T(h: HyperellipticSpec) -> PicT:
    """Kernel of Cl(T) -> sum Z/e_i with I_j -> delta_ij."""
    v, e = h.v, list(h.mults)
    # lattice {x : e_i | x_i} modulo the relation vector e
    num = [[e[i] * int(j == i) for j in range(v)] for i in range(v)]
    G = subquotient(num, [e], v)
    if G.torsion:
        raise AssertionError("Pic(T) should be torsion free")
    return PicT(G, tuple(f"{m}*I{i + 1}" for i, m in enumerate(e)), G.rank == v - 1)


def pic_S_module(h: HyperellipticSpec) -> GModule:
    """Pic(S) with sigma.

    D even: z - y and z + y become units and (y - q) has divisor
    sum (e_i/2) I_i, (y + q) has sum (e_i/2) I_i'. D odd: Cl(T) itself.
    """
    if h.D % 2:
        return hyper_cl_module(h)
    v = h.v
    half = [m // 2 for m in h.mults]
    rels = [tuple(int(j == i) for j in range(v)) * 2 for i in range(v)]
    rels += [tuple(h.mults) + (0,) * v, (0,) * v + tuple(h.mults),
             tuple(half) + (0,) * v, (0,) * v + tuple(half)]
    return GModule(2 * v, tuple(rels), _swap_action(v))


def pic_S(h: HyperellipticSpec) -> FGAbelianGroup:
    return pic_S_module(h).group


def lines_units(n: int) -> UnitModule:
    """z, f_2, ..., f_n with sigma(z) = -z."""
    return UnitModule.diagonal(["z"] + [f"f{j}" for j in range(2, n + 1)], negated=["z"])


def hyper_units(h: HyperellipticSpec) -> UnitModule:
    """z alone for D odd; z and y - q for D even (y - q lies in k[x, y], so sigma fixes it)."""
    if h.D % 2:
        return UnitModule.diagonal(["z"], negated=["z"])
    return UnitModule.diagonal(["z", "y-q"], negated=["z"])


def units_group(scenario) -> UnitModule:
    if isinstance(scenario, HyperellipticSpec):
        return hyper_units(scenario)
    return lines_units(int(scenario))


# ------------------------------------------------------- hyperelliptic curves

def two_torsion_presentation(n: int) -> NagataPresentation:
    """Generators Q_i - Q_n (i < n) of the 2-torsion for a curve with n branch points."""
    if n < 3:
        raise ScenarioError("need at least 3 branch points")
    g = n - 1
    rels = [tuple(2 * int(j == i) for j in range(g)) for i in range(g)]
    names = [f"2(Q{i + 1}-Q{n})" for i in range(g)]
    if n % 2 == 0:
        # Div(z) = Q_1 + ... + Q_{n-1} - (n-1) Q_n
        rels.append((1,) * g)
        names.append("Div(z)")
    return NagataPresentation(tuple(f"Q{i + 1}-Q{n}" for i in range(g)), tuple(rels), tuple(names))


def hyperelliptic_two_torsion(n: int) -> FGAbelianGroup:
    return nagata_class_group(two_torsion_presentation(n))


def branch_curve_table(n: int) -> DivisorTable:
    """Affine curve w^2 = l_1 ... l_n: div(l_i) = 2 Q_i and div(w) = Q_1 + ... + Q_n."""
    t = DivisorTable([PrimeDivisor(f"Q{i + 1}", (f"l{i + 1}", "w")) for i in range(n)],
                     label=f"branch curve, n={n}")
    for i in range(n):
        t.add(f"l{i + 1}", tuple(2 * x for x in _unit(i, n)))
    t.add("w", (1,) * n)
    return t


def is_split_cover(e: Sequence[int]) -> bool:
    """Whether adjoining the square root of prod l_i^e_i is split over the branch curve."""
    n = len(e)
    g = MonomialElem({f"l{i + 1}": x for i, x in enumerate(e)})
    return kummer_order(g, 2, branch_curve_table(n))[0] == 1


def quadratic_covers(n: int) -> dict:
    """Exponent vectors e in {0,1}^n for the covers w'^2 = prod l_i^e_i."""
    if n < 3:
        raise ScenarioError("need n >= 3")
    vecs = list(product((0, 1), repeat=n))
    split = [v for v in vecs if is_split_cover(v)]
    classes = len(vecs) // len(split)
    return {"n": n, "vectors": len(vecs), "split": [list(v) for v in split],
            "nontrivial_classes": classes - 1}


# ----------------------------------------------------------------- n even

def _order(A: FGAbelianGroup) -> int:
    o = A.order
    if o is None:
        raise ScenarioError(f"{A} is infinite where a finite group was expected")
    return o


def cl_even_case_descriptor(n: int) -> ClassGroupDescriptor:
    r"""Finite functors of Cl(T) for n even lines.

    0 -> Z/2 -> Cl(T) -> Cl(C) -> 0 with Cl(C) divisible of genus (n-2)/2.
    Multiplication by 2 and the snake lemma give
    0 -> K[2] -> Cl[2] -> C[2] -> K/2 -> Cl/2 -> C/2 = 0. The connecting map
    is zero because the lifts I_j of the basis of C[2] satisfy 2 I_j = Div(f_j).
    """
    if n < 4 or n % 2:
        raise ScenarioError("the extension descriptor needs n >= 4 even")
    table = lines_divisor_table(n)
    sub = NagataPresentation.from_table(table, ["z"] + [f"f{j}" for j in range(1, n + 1)])
    span = nagata_class_group(sub)                      # subgroup generated by I_1..I_n
    K = FGAbelianGroup.cyclic(span_order_mod([_unit(0, n)], 2, n)) if n else None
    C2 = hyperelliptic_two_torsion(n)                   # n branch points, genus (n-2)/2
    # beta: I_1 -> 0, I_j -> Q_{j-1} - Q_n; the quotient of span by I_1 must be C[2]
    quotient = nagata_class_group(NagataPresentation(sub.primes, sub.relations + (_unit(0, n),)))
    if not quotient.is_isomorphic(C2):
        raise AssertionError("beta does not map the span of the I_j onto C[2]")
    K2 = annihilator(K, 2)
    Kmod2 = K.direct_sum(FGAbelianGroup())  # K/2K = K for K = Z/2
    two_cl_order = _order(K2) * _order(C2)  # connecting map is zero
    if _order(span) != two_cl_order:
        raise AssertionError("the I_j do not exhaust Cl(T)[2]")
    two_cl = span                                        # elementary: every I_j has order 2
    cl_mod2 = Kmod2                                      # C/2 = 0 and the connecting map is zero
    h = _even_case_cohomology(K, C2)
    return ClassGroupDescriptor(
        "extension", kernel=K, genus_tag=(n - 2) // 2,
        functors={"two_torsion": two_cl, "tensor_Z2": cl_mod2,
                  "H_even": h["H_even"], "H_odd": h["H_odd"]},
    )


def _elementary(order: int) -> FGAbelianGroup:
    r = order.bit_length() - 1
    if 1 << r != order:
        raise AssertionError(f"{order} is not a power of two")
    return FGAbelianGroup.elementary(2, r)


def _even_case_cohomology(K: FGAbelianGroup, C2: FGAbelianGroup) -> dict:
    """Long exact sequence for 0 -> K -> Cl(T) -> Cl(C) -> 0.

    Inputs for the divisible quotient: H^odd(Cl C) = 0 and H^even(Cl C) = Cl(C)[2]
    (taken as known), and Cl(T)^G contains Cl(T)[2], which surjects onto Cl(C)[2].
    Then the connecting maps out of H^0 and H^2 vanish, so
    |H^odd(Cl T)| = |H^odd K| and |H^even(Cl T)| = |H^even K| * |Cl(C)[2]|.
    Everything is killed by |G| = 2, hence elementary.
    """
    hk = cohomology_table(GModule.from_group(K, "trivial"))
    h_odd = _order(hk["Hodd"]) * 1
    h_even = _order(hk["Heven"]) * _order(C2)
    return {"H_odd": _elementary(h_odd), "H_even": _elementary(h_even)}


def pic_S_even_case(n: int) -> dict:
    r"""H^i(G, Pic S) for n even, from 0 -> K -> Cl(U) -> Pic(S) -> 0.

    K = (Z/2)^(n-2) with trivial action, H^odd(Cl U) = 0, H^even(Cl U) = (Z/2)^(n-2)
    and every map H^i(Cl U) -> H^i(Pic S) is zero, so
    0 -> H^i(Pic S) -> H^(i+1)(K) -> H^(i+1)(Cl U) -> 0 is exact.
    """
    if n < 4 or n % 2:
        raise ScenarioError("needs n >= 4 even")
    K = hyperelliptic_two_torsion(n)
    hk = cohomology_table(GModule.from_group(K, "trivial"))
    cl_u = {"Hodd": FGAbelianGroup(), "Heven": K}
    # i odd: next degree is even; i even: next degree is odd
    odd = _order(hk["Heven"]) // _order(cl_u["Heven"])
    even = _order(hk["Hodd"]) // _order(cl_u["Hodd"])
    return {"H_odd": _elementary(odd), "H_even": _elementary(even), "H0": _elementary(even),
            "kernel": K, "divisible": True}


# ------------------------------------------------------------------ Brauer

def brauer_ranks(family: str, *, n: int | None = None, h: HyperellipticSpec | None = None) -> dict:
    """Ranks of free Q/Z-modules; these are stated values, flagged as such by callers."""
    if family == "hyperelliptic":
        return {"B(R)": h.v if h.D % 2 == 0 else h.v - 1}
    if family == "lines-even":
        return {"B(S)": (n - 2) + (n - 1), "coker B(R)->B(S)": n - 2}
    if family == "lines-odd":
        return {"B(S)": n - 1}
    raise ScenarioError(f"unknown family {family!r}")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "detail": self.detail}


def relative_brauer_check(h1_cl: FGAbelianGroup, b_s_r: FGAbelianGroup, source: str) -> CheckResult:
    ok = h1_cl.is_isomorphic(b_s_r)
    return CheckResult("relative_brauer", ok,
                       f"H^1(G, Cl T) = {h1_cl}; B(S/R) = {b_s_r} ({source})")


def scalar_extension_doubling(rank: int, d: int) -> dict:
    """B(R) -> B(S) on d-torsion coordinates is multiplication by 2 on (Z/d)^rank."""
    if d < 2:
        raise ValueError("modulus must be at least 2")
    A = FGAbelianGroup.from_orders([d] * rank)
    ker = annihilator(A, 2)
    matrix = [[2 * int(i == j) % d for j in range(rank)] for i in range(rank)]
    return {"d": d, "rank": rank, "matrix": matrix, "kernel": ker,
            "zero_map": all(x == 0 for row in matrix for x in row)}
