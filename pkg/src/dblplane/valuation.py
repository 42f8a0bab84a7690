"""Prime divisors, divisor tables and the tame symbol.

A :class:`DivisorTable` records, for a fixed list of named ring elements,
their divisors on a fixed list of prime divisors. Function-field elements
are handled as formal products of named elements (:class:`MonomialElem`),
which is all the class-group and ramification computations need.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Mapping, Sequence

from .abgroup import columns_to_matrix, solve_integer


class UnknownElementError(KeyError):
    pass


@dataclass(frozen=True)
class PrimeDivisor:
    name: str
    generators: tuple[str, ...] = ()
    note: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "generators": list(self.generators)}
        if self.note:
            out["note"] = self.note
        return out


class MonomialElem:
    """A formal product of named elements, ``{name: exponent}``."""

    __slots__ = ("_exps",)

    def __init__(self, exps: Mapping[str, int] | None = None, **kw: int):
        merged = dict(exps or {})
        merged.update(kw)
        self._exps = {k: int(v) for k, v in merged.items() if v}

    @classmethod
    def of(cls, *names: str) -> "MonomialElem":
        out: dict[str, int] = {}
        for n in names:
            out[n] = out.get(n, 0) + 1
        return cls(out)

    @property
    def exponents(self) -> dict[str, int]:
        return dict(self._exps)

    def __mul__(self, other: "MonomialElem") -> "MonomialElem":
        out = dict(self._exps)
        for k, v in other._exps.items():
            out[k] = out.get(k, 0) + v
        return MonomialElem(out)

    def __pow__(self, k: int) -> "MonomialElem":
        return MonomialElem({n: e * k for n, e in self._exps.items()})

    def inverse(self) -> "MonomialElem":
        return self ** -1

    def __truediv__(self, other: "MonomialElem") -> "MonomialElem":
        return self * other.inverse()

    def __eq__(self, other):
        return isinstance(other, MonomialElem) and self._exps == other._exps

    def __hash__(self):
        return hash(frozenset(self._exps.items()))

    def is_one(self) -> bool:
        return not self._exps

    def __repr__(self):
        return f"MonomialElem({self._exps})"

    def __str__(self):
        if not self._exps:
            return "1"
        parts = []
        for n in sorted(self._exps):
            e = self._exps[n]
            parts.append(f"({n})" if e == 1 else f"({n})^{e}")
        return "*".join(parts)


@dataclass
class DivisorTable:
    primes: list[PrimeDivisor]
    divisors: dict[str, tuple[int, ...]] = field(default_factory=dict)
    polys: dict[str, str] = field(default_factory=dict)
    label: str = ""

    def __post_init__(self):
        names = [p.name for p in self.primes]
        if len(set(names)) != len(names):
            raise ValueError("prime divisor names must be unique")
        for name, vec in list(self.divisors.items()):
            self._check_vec(name, vec)
            self.divisors[name] = tuple(vec)

    def _check_vec(self, name, vec):
        if len(vec) != len(self.primes):
            raise ValueError(f"divisor of {name} has {len(vec)} entries, "
                             f"expected {len(self.primes)}")

    @property
    def prime_names(self) -> list[str]:
        return [p.name for p in self.primes]

    def index(self, prime: str | PrimeDivisor) -> int:
        name = prime.name if isinstance(prime, PrimeDivisor) else prime
        return self.prime_names.index(name)

    def add(self, name: str, divisor: Mapping[str, int] | Sequence[int], poly: str | None = None):
        if isinstance(divisor, Mapping):
            vec = [0] * len(self.primes)
            for pname, e in divisor.items():
                vec[self.index(pname)] += e
        else:
            vec = list(divisor)
        self._check_vec(name, vec)
        self.divisors[name] = tuple(vec)
        if poly is not None:
            self.polys[name] = poly
        return self

    def valuation(self, name: str, prime: str | PrimeDivisor) -> int:
        if name not in self.divisors:
            raise UnknownElementError(name)
        return self.divisors[name][self.index(prime)]

    def divisor_of(self, m: MonomialElem) -> tuple[int, ...]:
        return divisor_of(m, self)

    def principal_lattice(self) -> list[tuple[int, ...]]:
        return [self.divisors[n] for n in sorted(self.divisors)]

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "primes": [p.to_json() for p in self.primes],
            "elements": [
                {"name": n, "poly": self.polys.get(n), "divisor": list(self.divisors[n])}
                for n in sorted(self.divisors)
            ],
        }


def divisor_of(m: MonomialElem, t: DivisorTable) -> tuple[int, ...]:
    """Sum of exponent times divisor over the factors of ``m``."""
    out = [0] * len(t.primes)
    for name, e in m.exponents.items():
        if name not in t.divisors:
            raise UnknownElementError(f"{name!r} is not in table {t.label!r}")
        for i, v in enumerate(t.divisors[name]):
            out[i] += e * v
    return tuple(out)


def valuation(m: MonomialElem, prime: str | PrimeDivisor, t: DivisorTable) -> int:
    return divisor_of(m, t)[t.index(prime)]


@dataclass(frozen=True)
class TameSymbol:
    residue: MonomialElem
    order: int
    residue_divisor: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {"residue": str(self.residue), "order": self.order,
                "residue_divisor": list(self.residue_divisor)}


def kummer_order(g: MonomialElem, d: int, residue_table: DivisorTable | None) -> tuple[int, tuple]:
    """Order of g in K*/K*^d for the residue field K described by ``residue_table``.

    ``g^k`` is a d-th power exactly when ``k*div(g)`` lies in ``d`` times the
    lattice of divisors of the table's named functions; constants are
    d-th powers over the algebraically closed ground field.
    """
    if g.is_one():
        return 1, ()
    if residue_table is None:
        raise ValueError("a residue-curve table is needed for a nontrivial residue")
    div = divisor_of(g, residue_table)
    lattice = residue_table.principal_lattice()
    dim = len(residue_table.primes)
    L = columns_to_matrix(lattice, dim)
    for k in range(1, d + 1):
        target = [k * x for x in div]
        if any(x % d for x in target):
            continue
        if solve_integer(L, [x // d for x in target]) is not None:
            return k, div
    raise AssertionError("unreachable: g^d is always a d-th power")


def tame_symbol(alpha: MonomialElem, beta: MonomialElem, C: str | PrimeDivisor,
                d: int, table: DivisorTable,
                residue_table: DivisorTable | None = None) -> TameSymbol:
    """Residue ``alpha^v(beta) * beta^-v(alpha)`` of ``(alpha, beta)_d`` along C.

    The order is that of the induced cyclic degree-d extension of the residue
    field of C.
    """
    if d < 2:
        raise ValueError("symbol degree must be at least 2")
    va = valuation(alpha, C, table)
    vb = valuation(beta, C, table)
    residue = alpha ** vb * beta ** (-va)
    order, div = kummer_order(residue, d, residue_table)
    return TameSymbol(residue, order, div)


@dataclass(frozen=True)
class ConsistencyResult:
    relation: str
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {"relation": self.relation, "pass": self.ok,
                "lhs": list(self.lhs), "rhs": list(self.rhs)}


def table_consistency(t: DivisorTable,
                      relations: Iterable[tuple[MonomialElem, MonomialElem]]) -> list[ConsistencyResult]:
    """Check that both sides of each relation ``lhs = rhs`` (up to units) have equal divisors."""
    out = []
    for lhs, rhs in relations:
        out.append(ConsistencyResult(f"{lhs} = {rhs}", divisor_of(lhs, t), divisor_of(rhs, t)))
    return out


def mismatches(results: Iterable[ConsistencyResult]) -> list[ConsistencyResult]:
    return [r for r in results if not r.ok]


def content(vec: Iterable[int]) -> int:
    g = 0
    for x in vec:
        g = gcd(g, abs(x))
    return g
