"""Curve arrangements in P^2, their incidence graphs and symbol cycles.

Homogeneous coordinates are (x : y : z) where z is the coordinate whose
zero set is the line at infinity F0. Every curve carries a rational
parametrization, so intersection multiplicities are orders of vanishing of
a univariate polynomial in the parameter u (stored in the variable ``x``).

A symbol (alpha, beta)_d with alpha, beta products of curve equations is
turned into a 1-chain on the graph: on each curve C the tame residue
alpha^v(beta) beta^-v(alpha) is a rational function on C, and the edge
(C, P) gets minus that function's order at P.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from .abgroup import columns_to_matrix, identity, solve_integer, span_order_mod
from .polyring import X, Y, Z, HyperellipticSpec, Poly, rational_roots


class ArrangementError(ValueError):
    pass


class DuplicateCurveError(ArrangementError):
    pass


class IrrationalIntersectionError(ArrangementError):
    pass


class MalformedChainError(ArrangementError):
    pass


U = X  # the parameter variable


@dataclass(frozen=True, order=True)
class ProjPoint:
    coords: tuple[Fraction, Fraction, Fraction]

    @classmethod
    def of(cls, x, y, z) -> "ProjPoint":
        c = [Fraction(x), Fraction(y), Fraction(z)]
        # affine points get z = 1, points at infinity a leading 1
        lead = c[2] if c[2] != 0 else next((v for v in c if v != 0), None)
        if lead is None:
            raise ArrangementError("(0:0:0) is not a point")
        return cls(tuple(v / lead for v in c))

    @property
    def at_infinity(self) -> bool:
        return self.coords[2] == 0

    def sort_key(self):
        return (self.at_infinity, self.coords)

    def __str__(self):
        return "(" + ":".join(str(v) for v in self.coords) + ")"


def homogenize(p: Poly, degree: int | None = None) -> Poly:
    """Homogenize a polynomial in x, y with z, to ``degree`` (default: total degree)."""
    if "z" in p.variables():
        raise ArrangementError("expected an affine polynomial in x and y")
    deg = max((a + b for (a, b, _), _c in p.items()), default=0)
    if degree is None:
        degree = deg
    if degree < deg:
        raise ArrangementError("target degree below the total degree")
    return Poly({(a, b, degree - a - b): c for (a, b, _), c in p.items()})


def _total_degree(form: Poly) -> int:
    degs = {sum(m) for m, _ in form.items()}
    if len(degs) != 1:
        raise ArrangementError(f"{form} is not homogeneous")
    return degs.pop()


@dataclass(frozen=True)
class Curve:
    """An irreducible rational curve: homogeneous equation plus parametrization.

    ``param`` gives (X(u), Y(u), W(u)) of formal degree ``m``; u = infinity maps
    to the vector of u^m coefficients.
    """

    name: str
    form: Poly
    param: tuple[Poly, Poly, Poly]
    m: int

    @property
    def degree(self) -> int:
        return _total_degree(self.form)

    @classmethod
    def line(cls, name: str, a, b, c=0) -> "Curve":
        a, b, c = Fraction(a), Fraction(b), Fraction(c)
        if a == b == c == 0:
            raise ArrangementError("all line coefficients are zero")
        # two independent points of the kernel of (a, b, c)
        if a != 0:
            p, q = (-b, a, 0), (-c, 0, a)
        elif b != 0:
            p, q = (1, 0, 0), (0, -c, b)
        else:
            p, q = (1, 0, 0), (0, 1, 0)
        param = tuple(Poly.const(q[i]) + Poly.const(p[i]) * U for i in range(3))
        form = X.scale(a) + Y.scale(b) + Z.scale(c)
        return cls(name, form, param, 1)

    @classmethod
    def infinity(cls, name: str = "F0") -> "Curve":
        return cls.line(name, 0, 0, 1)

    @classmethod
    def graph(cls, name: str, g: Poly, sign: int = 1) -> "Curve":
        """The curve y = sign * g(x)."""
        if g.variables() - {"x"}:
            raise ArrangementError("graph curves need g in x only")
        g = g.scale(sign)
        m = max(g.degree("x"), 1)
        form = homogenize(Y - g, m)
        return cls(name, form, (U, g, Poly.const(1)), m)

    def point_at(self, u) -> ProjPoint:
        u = Fraction(u)
        return ProjPoint.of(*(c.substitute({"x": u}).constant_value() for c in self.param))

    def point_at_infinity(self) -> ProjPoint:
        lead = []
        for c in self.param:
            coeffs = c.coefficients_in("x")
            lead.append(coeffs[self.m].constant_value() if len(coeffs) > self.m else 0)
        return ProjPoint.of(*lead)

    def contains(self, P: ProjPoint) -> bool:
        x, y, z = P.coords
        return self.form.substitute({"x": x, "y": y, "z": z}).is_zero()

    def meet(self, other: Poly, label: str = "") -> dict[ProjPoint, int]:
        """Intersection cycle of this curve with the curve ``other = 0``."""
        h = _total_degree(other)
        Xu, Yu, Wu = self.param
        r = other.substitute({"x": Xu, "y": Yu, "z": Wu})
        if r.is_zero():
            raise DuplicateCurveError(f"{self.name} is a component of {label or other}")
        total = self.m * h
        out: dict[ProjPoint, int] = {}
        for u, k in rational_roots(r, "x").items():
            P = self.point_at(u)
            out[P] = out.get(P, 0) + k
        at_inf = total - r.degree("x")
        if at_inf:
            P = self.point_at_infinity()
            out[P] = out.get(P, 0) + at_inf
        if sum(out.values()) != total:
            raise IrrationalIntersectionError(
                f"{self.name} meets {label or other} in points that are not rational")
        return out


@dataclass(frozen=True)
class ProjLine:
    a: Fraction
    b: Fraction
    c: Fraction = Fraction(0)

    def __post_init__(self):
        for k in ("a", "b", "c"):
            object.__setattr__(self, k, Fraction(getattr(self, k)))
        if self.a == self.b == self.c == 0:
            raise ArrangementError("all line coefficients are zero")

    def to_curve(self, name: str) -> Curve:
        return Curve.line(name, self.a, self.b, self.c)

    def proportional_to(self, other: "ProjLine") -> bool:
        u, v = (self.a, self.b, self.c), (other.a, other.b, other.c)
        return all(u[i] * v[j] == u[j] * v[i] for i in range(3) for j in range(3))


@dataclass(frozen=True)
class Edge:
    curve: int
    point: int
    mu: int


@dataclass
class ArrangementGraph:
    """Bipartite incidence graph: curve vertices, point vertices, edges."""

    curve_names: list[str]
    points: list[ProjPoint]
    edges: list[Edge]
    # (curve index, point index) -> {other curve name: intersection multiplicity}
    local: dict[tuple[int, int], dict[str, int]] = field(default_factory=dict)
    has_infinity: bool = True

    @property
    def e(self) -> int:
        return len(self.edges)

    @property
    def s(self) -> int:
        return len(self.points)

    @property
    def n(self) -> int:
        return len(self.curve_names) - (1 if self.has_infinity else 0)

    @property
    def vertex_count(self) -> int:
        return len(self.curve_names) + len(self.points)

    def edge_index(self) -> dict[tuple[int, int], int]:
        return {(ed.curve, ed.point): k for k, ed in enumerate(self.edges)}

    def _adjacency(self):
        adj: dict[tuple[str, int], list[tuple[tuple[str, int], int]]] = {}
        for k, ed in enumerate(self.edges):
            c, p = ("C", ed.curve), ("P", ed.point)
            adj.setdefault(c, []).append((p, k))
            adj.setdefault(p, []).append((c, k))
        return adj

    def vertices(self) -> list[tuple[str, int]]:
        return [("C", i) for i in range(len(self.curve_names))] + \
               [("P", j) for j in range(len(self.points))]

    def components(self) -> int:
        adj = self._adjacency()
        seen: set = set()
        count = 0
        for v in self.vertices():
            if v in seen:
                continue
            count += 1
            stack = [v]
            seen.add(v)
            while stack:
                u = stack.pop()
                for w, _k in adj.get(u, []):
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
        return count

    def is_connected(self) -> bool:
        return self.components() == 1

    def boundary(self, chain: Sequence[int]) -> dict[tuple[str, int], int]:
        """Boundary of a chain with edges oriented curve -> point."""
        out: dict[tuple[str, int], int] = {}
        for w, ed in zip(chain, self.edges):
            if w:
                out[("P", ed.point)] = out.get(("P", ed.point), 0) + w
                out[("C", ed.curve)] = out.get(("C", ed.curve), 0) - w
        return {k: v for k, v in out.items() if v}

    def to_json(self) -> dict:
        return {
            "curves": list(self.curve_names),
            "points": [str(P) for P in self.points],
            "edges": [{"curve": self.curve_names[ed.curve], "point": str(self.points[ed.point]),
                       "mu": ed.mu} for ed in self.edges],
            "e": self.e, "s": self.s, "n": self.n,
            "cycle_rank": cycle_rank(self),
        }

    def to_dot(self) -> str:
        lines = ["graph arrangement {"]
        for i, name in enumerate(self.curve_names):
            lines.append(f'  C{i} [label="{name}", shape=box];')
        for j, P in enumerate(self.points):
            lines.append(f'  P{j} [label="{P}", shape=ellipse];')
        for ed in self.edges:
            lines.append(f'  C{ed.curve} -- P{ed.point} [label="{ed.mu}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def cycle_rank(g: ArrangementGraph) -> int:
    """r = e - (vertices) + (components); equals e - (n+1+s) + 1 when connected."""
    return g.e - g.vertex_count + g.components()


def fundamental_cycles(g: ArrangementGraph) -> list[list[int]]:
    """Cycle basis from a BFS spanning forest rooted at the first curve vertex (F0)."""
    adj = g._adjacency()
    parent: dict[tuple[str, int], tuple[tuple[str, int], int] | None] = {}
    depth: dict[tuple[str, int], int] = {}
    tree_edges: set[int] = set()
    for root in g.vertices():
        if root in parent:
            continue
        parent[root] = None
        depth[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w, k in adj.get(u, []):
                if w not in parent:
                    parent[w] = (u, k)
                    depth[w] = depth[u] + 1
                    tree_edges.add(k)
                    queue.append(w)

    def orient(k: int, frm: tuple[str, int]) -> int:
        # +1 when traversing edge k from its curve end
        return 1 if frm == ("C", g.edges[k].curve) else -1

    cycles = []
    for k, ed in enumerate(g.edges):
        if k in tree_edges:
            continue
        vec = [0] * g.e
        vec[k] += 1
        a, b = ("P", ed.point), ("C", ed.curve)
        # walk a and b up to their common ancestor; path a -> ... -> b
        up_a, up_b = [], []
        while a != b:
            if depth[a] >= depth[b]:
                (pa, ka) = parent[a]
                up_a.append((ka, a))
                a = pa
            else:
                (pb, kb) = parent[b]
                up_b.append((kb, pb))
                b = pb
        for ka, frm in up_a:
            vec[ka] += orient(ka, frm)
        for kb, frm in up_b:
            vec[kb] += orient(kb, frm)
        cycles.append(vec)
    return cycles


@dataclass(frozen=True)
class BrauerClassCoords:
    d: int
    coords: tuple[int, ...]

    @property
    def order(self) -> int:
        return class_order(self)

    def to_json(self) -> dict:
        return {"d": self.d, "coords": list(self.coords), "order": self.order}


def class_order(c: BrauerClassCoords) -> int:
    g = c.d
    for x in c.coords:
        g = gcd(g, x)
    return c.d // g


def brauer_class(chain: Sequence[int], d: int, g: ArrangementGraph,
                 basis: list[list[int]] | None = None) -> BrauerClassCoords:
    if d < 2:
        raise ValueError("modulus must be at least 2")
    bd = g.boundary(chain)
    if any(v % d for v in bd.values()):
        raise MalformedChainError(f"chain has nonzero boundary mod {d}: {bd}")
    if basis is None:
        basis = fundamental_cycles(g)
    if not basis:
        return BrauerClassCoords(d, ())
    cols = list(basis) + [[d * x for x in col] for col in identity(g.e)]
    sol = solve_integer(columns_to_matrix(cols, g.e), list(chain))
    if sol is None:
        raise MalformedChainError("chain is not a cycle modulo d")
    return BrauerClassCoords(d, tuple(x % d for x in sol[:len(basis)]))


def span_rank_mod2(classes: Iterable[BrauerClassCoords], r: int) -> int:
    vecs = [list(c.coords) for c in classes]
    order = span_order_mod(vecs, 2, r) if vecs else 1
    return order.bit_length() - 1


@dataclass
class SymbolChain:
    alpha: dict[str, int]
    beta: dict[str, int]
    d: int
    chain: list[int]
    residues: dict[str, dict[str, int]]
    auxiliary_residues: dict[str, dict[str, int]]

    @property
    def unramified_off_arrangement(self) -> bool:
        return all(not div for div in self.auxiliary_residues.values())

    def to_json(self) -> dict:
        return {"alpha": dict(sorted(self.alpha.items())), "beta": dict(sorted(self.beta.items())),
                "d": self.d, "chain": list(self.chain),
                "residues": {k: dict(sorted(v.items())) for k, v in self.residues.items()},
                "auxiliary_residues": self.auxiliary_residues}


class Arrangement:
    """Arrangement curves (the first is the line at infinity) plus auxiliary curves.

    Auxiliary curves are extra named equations that may appear in symbol
    entries; they are not vertices of the graph, and a symbol is only
    accepted as a class of the complement if it is unramified along them.
    """

    def __init__(self, curves: Sequence[Curve], auxiliary: Sequence[Curve] = (),
                 include_infinity: bool = True):
        names = [c.name for c in curves] + [c.name for c in auxiliary]
        if len(set(names)) != len(names):
            raise DuplicateCurveError("curve names must be unique")
        self.curves = list(curves)
        self.auxiliary = list(auxiliary)
        self.include_infinity = include_infinity
        self._all = {c.name: c for c in list(curves) + list(auxiliary)}
        self._meet_cache: dict[tuple[str, str], dict[ProjPoint, int]] = {}
        self.graph = self._build()
        self.basis = fundamental_cycles(self.graph)

    @property
    def infinity_name(self) -> str:
        if not self.include_infinity:
            raise ArrangementError("symbols need the line at infinity in the arrangement")
        return self.curves[0].name

    def meet(self, on: str, other: str) -> dict[ProjPoint, int]:
        key = (on, other)
        if key not in self._meet_cache:
            self._meet_cache[key] = self._all[on].meet(self._all[other].form, other)
        return self._meet_cache[key]

    def _build(self) -> ArrangementGraph:
        pts: set[ProjPoint] = set()
        local: dict[tuple[str, ProjPoint], dict[str, int]] = {}
        for C in self.curves:
            for G in self.curves:
                if G is C:
                    continue
                for P, k in self.meet(C.name, G.name).items():
                    pts.add(P)
                    local.setdefault((C.name, P), {})[G.name] = k
        points = sorted(pts, key=ProjPoint.sort_key)
        pidx = {P: j for j, P in enumerate(points)}
        edges = []
        loc = {}
        for i, C in enumerate(self.curves):
            for P in points:
                data = local.get((C.name, P))
                if data:
                    edges.append(Edge(i, pidx[P], min(data.values())))
                    loc[(i, pidx[P])] = dict(sorted(data.items()))
        return ArrangementGraph([c.name for c in self.curves], points, edges, loc,
                                self.include_infinity)

    def _homogeneous(self, elem: Mapping[str, int]) -> dict[str, int]:
        w = self.infinity_name
        out = {k: v for k, v in elem.items() if v}
        for k in out:
            if k not in self._all:
                raise ArrangementError(f"unknown curve {k!r}")
        shift = -sum(e * self._all[k].degree for k, e in out.items() if k != w)
        out[w] = out.get(w, 0) + shift
        return {k: v for k, v in out.items() if v}

    def residue_divisor(self, on: str, c: Mapping[str, int]) -> dict[ProjPoint, int]:
        div: dict[ProjPoint, int] = {}
        for G, e in c.items():
            if G == on or not e:
                continue
            for P, k in self.meet(on, G).items():
                div[P] = div.get(P, 0) + e * k
        return {P: v for P, v in div.items() if v}

    def _residue_exponents(self, on: str, a: dict[str, int], b: dict[str, int]) -> dict[str, int]:
        va, vb = a.get(on, 0), b.get(on, 0)
        keys = set(a) | set(b)
        return {k: vb * a.get(k, 0) - va * b.get(k, 0) for k in keys}

    def symbol_chain(self, alpha: Mapping[str, int], beta: Mapping[str, int], d: int) -> SymbolChain:
        """Edge chain of (alpha, beta)_d, where alpha and beta map curve names to exponents."""
        if d < 2:
            raise ValueError("modulus must be at least 2")
        a, b = self._homogeneous(alpha), self._homogeneous(beta)
        g = self.graph
        eidx = g.edge_index()
        pidx = {P: j for j, P in enumerate(g.points)}
        chain = [0] * g.e
        residues = {}
        for i, C in enumerate(self.curves):
            c = self._residue_exponents(C.name, a, b)
            div = self.residue_divisor(C.name, c)
            residues[C.name] = {str(P): v for P, v in sorted(div.items(), key=lambda t: t[0].sort_key())}
            for P, v in div.items():
                j = pidx.get(P)
                if j is None or (i, j) not in eidx:
                    raise MalformedChainError(
                        f"residue of the symbol on {C.name} is supported off the graph at {P}")
                chain[eidx[(i, j)]] -= v
        aux = {}
        for L in self.auxiliary:
            c = self._residue_exponents(L.name, a, b)
            div = self.residue_divisor(L.name, c)
            aux[L.name] = {str(P): v for P, v in sorted(div.items(), key=lambda t: t[0].sort_key())}
        bd = g.boundary(chain)
        if any(v % d for v in bd.values()):
            raise MalformedChainError(f"symbol chain has nonzero boundary mod {d}")
        return SymbolChain(dict(alpha), dict(beta), d, chain, residues, aux)

    def symbol_class(self, alpha: Mapping[str, int], beta: Mapping[str, int], d: int) -> BrauerClassCoords:
        sc = self.symbol_chain(alpha, beta, d)
        return brauer_class(sc.chain, d, self.graph, self.basis)


def build_graph(lines: Sequence[ProjLine], include_infinity: bool = True) -> ArrangementGraph:
    return lines_arrangement(lines, include_infinity).graph


def lines_arrangement(lines: Sequence[ProjLine], include_infinity: bool = True) -> Arrangement:
    infinity = ProjLine(0, 0, 1)
    for i, L in enumerate(lines):
        if include_infinity and L.proportional_to(infinity):
            raise DuplicateCurveError(f"line {i + 1} is the line at infinity")
        for j in range(i):
            if L.proportional_to(lines[j]):
                raise DuplicateCurveError(f"lines {j + 1} and {i + 1} coincide")
    curves = [L.to_curve(f"F{i + 1}") for i, L in enumerate(lines)]
    if include_infinity:
        curves = [Curve.infinity("F0")] + curves
    return Arrangement(curves, include_infinity=include_infinity)


def concurrent_lines(n: int) -> list[ProjLine]:
    """n distinct lines through the origin: x, then x + k*y for k = 1..n-1."""
    return [ProjLine(1, k) for k in range(n)]


def curve_arrangement_graph(h: HyperellipticSpec, with_ell: bool = True) -> Arrangement:
    """F0 + F1 + F2 with F1 = Z(y - q), F2 = Z(y + q); the lines x = lambda_i are auxiliary."""
    if h.D % 2:
        raise ArrangementError("F1 and F2 exist only when every multiplicity is even")
    q = h.q
    curves = [Curve.infinity("F0"), Curve.graph("F1", q), Curve.graph("F2", q, sign=-1)]
    aux = [Curve.line(f"L{i + 1}", 1, 0, -lam) for i, lam in enumerate(h.roots)] if with_ell else []
    return Arrangement(curves, aux)
