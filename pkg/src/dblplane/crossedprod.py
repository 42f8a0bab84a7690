"""The algebra T + I_i with product (a,b)(c,d) = (ac + b sigma(d)/l_i, b sigma(c) + ad).

T = k[x,y,z]/(z^2 - y^2 + p(x)), A = k[x,y], I_i = (z - y, l_i). Elements of
I_i carry a witness b = c1 (z - y) + c2 l_i so membership never needs ideal
arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

from .polyring import (
    Y,
    Z,
    HyperellipticSpec,
    Poly,
    exact_divide,
    sigma,
    t_reduce,
    t_split,
)


class CrossedProductError(ArithmeticError):
    pass


@dataclass(frozen=True)
class CrossedAlgebra:
    spec: HyperellipticSpec
    i: int  # 0-based branch index

    def __post_init__(self):
        if not 0 <= self.i < self.spec.v:
            raise IndexError(f"branch index {self.i} outside 0..{self.spec.v - 1}")

    @cached_property
    def ell(self) -> Poly:
        return self.spec.ell(self.i)

    @cached_property
    def f(self) -> Poly:
        return self.spec.f

    def reduce(self, a: Poly) -> Poly:
        return t_reduce(a, self.f)

    def mul_t(self, a: Poly, b: Poly) -> Poly:
        return self.reduce(a * b)

    @cached_property
    def root(self):
        return self.spec.roots[self.i]

    def div_ell(self, a: Poly) -> Poly:
        """Exact division by l_i = x - lambda_i in T (normal forms have z-degree <= 1)."""
        return divide_linear(self.reduce(a), self.root)

    def elem(self, a, c1=0, c2=0) -> "CrossedElem":
        a, c1, c2 = (self.reduce(Poly.coerce(t)) for t in (a, c1, c2))
        b = self.reduce(c1 * (Z - Y) + c2 * self.ell)
        return CrossedElem(a, b, c1, c2, valid=True)

    def basis(self) -> dict[str, "CrossedElem"]:
        return {"(1,0)": self.elem(1), "(z,0)": self.elem(Z),
                "(0,l)": self.elem(0, 0, 1), "(0,z-y)": self.elem(0, 1, 0)}

    def raw_mul(self, a: Poly, b: Poly, c: Poly, d: Poly) -> tuple[Poly, Poly]:
        first = self.mul_t(a, c) + self.div_ell(self.mul_t(b, sigma(d)))
        second = self.mul_t(b, sigma(c)) + self.mul_t(a, d)
        return self.reduce(first), self.reduce(second)


@dataclass(frozen=True)
class CrossedElem:
    a: Poly
    b: Poly
    c1: Poly
    c2: Poly
    # set for elements built from their witness; others are checked on use
    valid: bool = field(default=False, compare=False)

    def check(self, alg: CrossedAlgebra) -> bool:
        return alg.reduce(self.c1 * (Z - Y) + self.c2 * alg.ell) == alg.reduce(self.b)

    def __add__(self, other: "CrossedElem") -> "CrossedElem":
        return CrossedElem(self.a + other.a, self.b + other.b, self.c1 + other.c1,
                           self.c2 + other.c2, valid=self.valid and other.valid)

    def pair(self) -> tuple[Poly, Poly]:
        return self.a, self.b

    def __str__(self):
        return f"({self.a}, {self.b})"


def cp_mul(u: CrossedElem, w: CrossedElem, alg: CrossedAlgebra) -> CrossedElem:
    for e in (u, w):
        if not e.valid and not e.check(alg):
            raise CrossedProductError(f"witness for {e} does not reproduce b")
    a, b = alg.raw_mul(u.a, u.b, w.a, w.b)
    # b sigma(c) + a d with witnesses sigma(c) (c1, c2) + a (d1, d2)
    sc = sigma(w.a)
    c1 = alg.reduce(sc * u.c1 + u.a * w.c1)
    c2 = alg.reduce(sc * u.c2 + u.a * w.c2)
    out = CrossedElem(a, b, c1, c2)
    if not out.check(alg):
        raise CrossedProductError("recomputed witness is inconsistent")
    return CrossedElem(a, b, c1, c2, valid=True)


def divide_linear(p: Poly, lam) -> Poly:
    """p / (x - lam) by synthetic division on each (y, z)-monomial slice."""
    slices: dict[tuple[int, int], dict[int, object]] = {}
    for (ex, ey, ez), c in p.terms.items():
        slices.setdefault((ey, ez), {})[ex] = c
    out = {}
    for (ey, ez), coeffs in slices.items():
        carry = 0
        for k in range(max(coeffs), -1, -1):
            carry = coeffs.get(k, 0) + carry * lam
            if k == 0:
                if carry:
                    raise CrossedProductError(f"{p} is not divisible by x - {lam}")
            else:
                out[(k - 1, ey, ez)] = carry
    return Poly(out)


# ------------------------------------------------------------------ oracle

@dataclass(frozen=True)
class LFrac:
    """num / l^k in T[1/l]."""

    num: Poly
    k: int


class MatrixOracle:
    """Send a + b j to [[a, b/l], [sigma b, sigma a]] with j c = sigma(c) j, j^2 = 1/l.

    Products are ordinary 2x2 matrix products over T[1/l]; the pair is read
    back as a = M[0][0], b = sigma(M[1][0]). No call to ``cp_mul`` is made.
    """

    def __init__(self, alg: CrossedAlgebra):
        self.alg = alg

    def _mul(self, u: LFrac, w: LFrac) -> LFrac:
        return LFrac(self.alg.mul_t(u.num, w.num), u.k + w.k)

    def _add(self, u: LFrac, w: LFrac) -> LFrac:
        k = max(u.k, w.k)
        lu = self.alg.ell ** (k - u.k)
        lw = self.alg.ell ** (k - w.k)
        return LFrac(self.alg.reduce(u.num * lu + w.num * lw), k)

    def _eq(self, u: LFrac, w: LFrac) -> bool:
        k = max(u.k, w.k)
        return self.alg.reduce(u.num * self.alg.ell ** (k - u.k)) == \
            self.alg.reduce(w.num * self.alg.ell ** (k - w.k))

    def _integral(self, u: LFrac) -> Poly:
        out = u.num
        for _ in range(u.k):
            out = self.alg.div_ell(out)
        return out

    def matrix(self, a: Poly, b: Poly) -> list[list[LFrac]]:
        return [[LFrac(a, 0), LFrac(b, 1)], [LFrac(sigma(b), 0), LFrac(sigma(a), 0)]]

    def mul(self, a: Poly, b: Poly, c: Poly, d: Poly) -> tuple[Poly, Poly]:
        M, N = self.matrix(a, b), self.matrix(c, d)
        P = [[self._add(self._mul(M[r][0], N[0][s]), self._mul(M[r][1], N[1][s]))
              for s in range(2)] for r in range(2)]
        ra = self.alg.reduce(self._integral(P[0][0]))
        rb = self.alg.reduce(sigma(self._integral(P[1][0])))
        expect = self.matrix(ra, rb)
        if not all(self._eq(P[r][s], expect[r][s]) for r in range(2) for s in range(2)):
            raise CrossedProductError("matrix product is not of the form a + b j")
        return ra, rb


# ------------------------------------------------------- printed table

Cell = Callable[[Poly, Poly, Poly], tuple]
_ROWS = ["(1,0)", "(z,0)", "(0,l)", "(0,z-y)"]

# entries as printed, in terms of l = l_i, p = p(x) and pl = p(x)/l_i;
# "f_i" marks the printed symbol where l_i is meant
PRINTED_TABLE: dict[tuple[str, str], Cell] = {
    ("(1,0)", "(1,0)"): lambda l, p, pl: (1, 0),
    ("(1,0)", "(z,0)"): lambda l, p, pl: (Z, 0),
    ("(1,0)", "(0,l)"): lambda l, p, pl: (0, "f_i"),
    ("(1,0)", "(0,z-y)"): lambda l, p, pl: (0, Z - Y),
    ("(z,0)", "(1,0)"): lambda l, p, pl: (Z, 0),
    ("(z,0)", "(z,0)"): lambda l, p, pl: (Y * Y - p, 0),
    ("(z,0)", "(0,l)"): lambda l, p, pl: (0, Z * l),
    ("(z,0)", "(0,z-y)"): lambda l, p, pl: (0, Z * (Z - Y)),
    ("(0,l)", "(1,0)"): lambda l, p, pl: (0, l),
    ("(0,l)", "(z,0)"): lambda l, p, pl: (0, -(Z * l)),
    ("(0,l)", "(0,l)"): lambda l, p, pl: (l, 0),
    ("(0,l)", "(0,z-y)"): lambda l, p, pl: (-(Z + Y), 0),
    ("(0,z-y)", "(1,0)"): lambda l, p, pl: (0, Z - Y),
    ("(0,z-y)", "(z,0)"): lambda l, p, pl: (0, -(Z * (Z - Y))),
    ("(0,z-y)", "(0,l)"): lambda l, p, pl: (Z - Y, 0),
    ("(0,z-y)", "(0,z-y)"): lambda l, p, pl: (-pl, 0),
}


@dataclass(frozen=True)
class TableCell:
    row: str
    col: str
    computed: tuple[Poly, Poly]
    oracle: tuple[Poly, Poly]
    printed: tuple[str, str]
    verbatim: bool
    normalized: bool
    note: str = ""

    @property
    def oracle_agrees(self) -> bool:
        return self.computed == self.oracle

    def to_json(self) -> dict:
        return {"cell": f"{self.row} x {self.col}",
                "computed": [str(t) for t in self.computed],
                "oracle": [str(t) for t in self.oracle],
                "printed": list(self.printed), "verbatim_match": self.verbatim,
                "match_after_normalizing": self.normalized,
                "oracle_agrees": self.oracle_agrees, "note": self.note}


def verify_table(alg: CrossedAlgebra) -> list[TableCell]:
    basis = alg.basis()
    oracle = MatrixOracle(alg)
    l, p = alg.ell, alg.spec.p
    pl = exact_divide(p, l)
    out = []
    for r in _ROWS:
        for c in _ROWS:
            u, w = basis[r], basis[c]
            prod = cp_mul(u, w, alg)
            comp = (prod.a, prod.b)
            orc = oracle.mul(u.a, u.b, w.a, w.b)
            raw = PRINTED_TABLE[(r, c)](l, p, pl)
            printed = tuple(t if isinstance(t, str) else str(alg.reduce(Poly.coerce(t))) for t in raw)
            note = ""
            if "f_i" in raw:
                # notational slip: f_i stands for l_i
                raw = tuple(l if t == "f_i" else t for t in raw)
                verbatim = False
                note = "printed f_i read as l_i"
            else:
                verbatim = None
            expected = tuple(alg.reduce(Poly.coerce(t)) for t in raw)
            matched = expected == comp
            if verbatim is None:
                verbatim = matched
            if not matched:
                note = note or ("sign differs from the printed entry" if
                                tuple(-t for t in expected) == comp else "differs from the printed entry")
            out.append(TableCell(r, c, comp, orc, printed, verbatim, matched, note))
    return out


def table_summary(cells: list[TableCell]) -> dict:
    return {"cells": len(cells),
            "verbatim": sum(c.verbatim for c in cells),
            "oracle_agrees": sum(c.oracle_agrees for c in cells),
            "flagged": [c.to_json() for c in cells if not c.verbatim]}


def check_symbol_relations(alg: CrossedAlgebra) -> dict[str, bool]:
    u, v = alg.elem(Z), alg.elem(0, 0, 1)
    uu, vv = cp_mul(u, u, alg), cp_mul(v, v, alg)
    uv, vu = cp_mul(u, v, alg), cp_mul(v, u, alg)
    zero = Poly()
    return {"u^2 = y^2 - p": uu.pair() == (alg.reduce(alg.f), zero),
            "v^2 = l": vv.pair() == (alg.ell, zero),
            "uv = -vu": alg.reduce(uv.a + vu.a).is_zero() and alg.reduce(uv.b + vu.b).is_zero()}


def _random_a(rng: random.Random, deg: int) -> Poly:
    terms = {}
    for i in range(deg + 1):
        for j in range(deg + 1 - i):
            c = rng.randint(-3, 3)
            if c:
                terms[(i, j, 0)] = c
    return Poly(terms)


def random_elem(alg: CrossedAlgebra, rng: random.Random, deg: int = 2) -> CrossedElem:
    """Random A-combination of the four basis elements, coefficients of degree <= deg."""
    a0, a1, c1, c2 = (_random_a(rng, deg) for _ in range(4))
    return alg.elem(a0 + Z * a1, c1, c2)


def _assoc(alg, u, v, w) -> bool:
    left = cp_mul(cp_mul(u, v, alg), w, alg)
    right = cp_mul(u, cp_mul(v, w, alg), alg)
    return left.pair() == right.pair()


def associativity_sample(alg: CrossedAlgebra, trials: int = 100, seed: int = 0,
                         deg: int = 2) -> dict:
    if trials < 1:
        raise ValueError("need at least one trial")
    basis = list(alg.basis().values())
    exhaustive = 0
    for u in basis:
        for v in basis:
            for w in basis:
                if not _assoc(alg, u, v, w):
                    raise CrossedProductError(f"non-associative on basis triple {u}, {v}, {w}")
                exhaustive += 1
    rng = random.Random(seed)
    for _ in range(trials):
        u, v, w = (random_elem(alg, rng, deg) for _ in range(3))
        if not _assoc(alg, u, v, w):
            raise CrossedProductError(f"non-associative on {u}, {v}, {w}")
        s = cp_mul(u, v + w, alg).pair()
        t = cp_mul(u, v, alg) + cp_mul(u, w, alg)
        if (alg.reduce(s[0] - t.a), alg.reduce(s[1] - t.b)) != (Poly(), Poly()):
            raise CrossedProductError("left distributivity fails")
    return {"basis_triples": exhaustive, "random_triples": trials, "seed": seed, "failures": 0}


def sigma_semilinear(alg: CrossedAlgebra, u: CrossedElem, w: CrossedElem) -> bool:
    """sigma of the product equals the product of the sigma-conjugates (raw formula)."""
    a, b = alg.raw_mul(u.a, u.b, w.a, w.b)
    sa, sb = alg.raw_mul(sigma(u.a), sigma(u.b), sigma(w.a), sigma(w.b))
    return (alg.reduce(sigma(a)), alg.reduce(sigma(b))) == (sa, sb)


def coordinates(e: CrossedElem, alg: CrossedAlgebra) -> tuple[Poly, Poly, Poly, Poly]:
    """A-coordinates on (1,0), (z,0), (0,l), (0,z-y)."""
    a0, a1 = t_split(e.a, alg.f)
    p0, p1 = t_split(e.b, alg.f)
    try:
        c2 = divide_linear(p0 + Y * p1, alg.root)
    except CrossedProductError as exc:
        raise CrossedProductError(f"{e.b} is not in I_i") from exc
    return a0, a1, c2, p1


def free_basis_check(alg: CrossedAlgebra, samples: int = 20, seed: int = 0) -> dict:
    """The four basis elements are A-independent and span: decompositions are unique."""
    basis = list(alg.basis().values())
    zero = alg.elem(0)
    if any(not c.is_zero() for c in coordinates(zero, alg)):
        raise CrossedProductError("zero element has nonzero coordinates")
    rng = random.Random(seed)
    for _ in range(samples):
        e = random_elem(alg, rng)
        co = coordinates(e, alg)
        if any(c.variables() & {"z"} for c in co):
            raise CrossedProductError("coordinates leave A")
        rebuilt_a = alg.reduce(co[0] * basis[0].a + co[1] * basis[1].a)
        rebuilt_b = alg.reduce(co[2] * basis[2].b + co[3] * basis[3].b)
        if (rebuilt_a, rebuilt_b) != e.pair():
            raise CrossedProductError("decomposition does not reproduce the element")
    probe = alg.elem(0, alg.ell, 0)
    return {"rank": 4, "samples": samples, "seed": seed,
            "probe (0, l(z-y))": [str(c) for c in coordinates(probe, alg)]}
