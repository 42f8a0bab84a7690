"""Cohomology of G = {1, sigma} of order two.

For a G-module M with norm N = sigma + 1 and difference D = sigma - 1,

    H^0 = M^G,  H^even = ker D / im N,  H^odd = ker N / im D,

and the positive degrees repeat with period two.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .abgroup import (
    FGAbelianGroup,
    cokernel,
    columns_to_matrix,
    hstack,
    kernel_basis,
    matmul,
    matvec,
    solve_integer,
    subquotient,
)


class NotAnInvolutionError(ValueError):
    pass


class NotFinitelyGeneratedError(TypeError):
    pass


@dataclass(frozen=True)
class GModule:
    """``Z^g / <relations>`` with sigma acting by the integer matrix ``action``.

    ``action[i][j]`` is the coefficient of generator i in sigma(generator j).
    """

    ngens: int
    relations: tuple[tuple[int, ...], ...]
    action: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(tuple(int(x) for x in r) for r in self.relations))
        object.__setattr__(self, "action", tuple(tuple(int(x) for x in r) for r in self.action))
        if any(len(r) != self.ngens for r in self.relations):
            raise ValueError("relation vectors must have one entry per generator")
        if len(self.action) != self.ngens or any(len(r) != self.ngens for r in self.action):
            raise ValueError("action must be a square matrix on the generators")
        self.check_involution()

    @classmethod
    def from_group(cls, A, action: str = "trivial") -> "GModule":
        """Module on the canonical presentation of ``A`` with sigma = +1 or -1."""
        if not isinstance(A, FGAbelianGroup):
            raise NotFinitelyGeneratedError(
                f"{type(A).__name__} is not a finitely generated abelian group")
        orders = list(A.torsion) + [0] * A.rank
        g = len(orders)
        rels = [tuple(d if i == j else 0 for i in range(g)) for j, d in enumerate(orders) if d]
        sign = {"trivial": 1, "inversion": -1}[action]
        act = [[sign * int(i == j) for j in range(g)] for i in range(g)]
        return cls(g, tuple(rels), tuple(map(tuple, act)))

    # lattice helpers
    def _rel_matrix(self):
        return columns_to_matrix(self.relations, self.ngens)

    def in_relations(self, v: Sequence[int]) -> bool:
        if not any(v):
            return True
        if not self.relations:
            return False
        return solve_integer(self._rel_matrix(), list(v)) is not None

    def check_involution(self) -> None:
        A = [list(r) for r in self.action]
        for rel in self.relations:
            if not self.in_relations(matvec(A, rel)):
                raise NotAnInvolutionError(f"sigma does not preserve the relation {rel}")
        A2 = matmul(A, A)
        for j in range(self.ngens):
            col = [A2[i][j] - int(i == j) for i in range(self.ngens)]
            if not self.in_relations(col):
                raise NotAnInvolutionError("sigma^2 is not the identity on the module")

    @property
    def group(self) -> FGAbelianGroup:
        return cokernel(self._rel_matrix(), nrows=self.ngens)

    def _map(self, sign: int):
        # sigma + sign * id
        return [[self.action[i][j] + sign * int(i == j) for j in range(self.ngens)]
                for i in range(self.ngens)]

    def _kernel_lattice(self, phi) -> list[list[int]]:
        """Generators of {x in Z^g : phi(x) in relations}."""
        g = self.ngens
        if self.relations:
            R = self._rel_matrix()
            big = hstack(phi, [[-a for a in row] for row in R])
        else:
            big = phi
        kb = kernel_basis(big, ncols=g + len(self.relations))
        return [v[:g] for v in kb]

    def _image(self, phi) -> list[list[int]]:
        return [[phi[i][j] for i in range(self.ngens)] for j in range(self.ngens)]

    def _subquotient(self, ker_map, im_map) -> FGAbelianGroup:
        num = self._kernel_lattice(ker_map) + [list(r) for r in self.relations]
        den = (self._image(im_map) if im_map is not None else []) + [list(r) for r in self.relations]
        return subquotient(num, den, self.ngens)

    def to_json(self) -> dict:
        return {"group": self.group.to_json(), "names": list(self.names),
                "action": [list(r) for r in self.action]}


def h_zero(M: GModule) -> FGAbelianGroup:
    """Fixed submodule M^G."""
    return M._subquotient(M._map(-1), None)


def h_even(M: GModule) -> FGAbelianGroup:
    """M^G / N M, the value of H^2i for every i >= 1."""
    return M._subquotient(M._map(-1), M._map(+1))


def h_odd(M: GModule) -> FGAbelianGroup:
    """ker N / D M, the value of H^(2i+1) for every i >= 0."""
    return M._subquotient(M._map(+1), M._map(-1))


def cohomology_table(M: GModule) -> dict[str, FGAbelianGroup]:
    return {"H0": h_zero(M), "Hodd": h_odd(M), "Heven": h_even(M)}


def inversion_cohomology(A: FGAbelianGroup) -> dict[str, FGAbelianGroup]:
    return cohomology_table(GModule.from_group(A, "inversion"))


@dataclass(frozen=True)
class UnitModule:
    """Units modulo k*, on named generators.

    sigma(u_j) = (-1)^signs[j] * prod_i u_i^action[i][j]. The sign matters:
    z with sigma(z) = -z is not a fixed unit although its class mod k* is.
    """

    names: tuple[str, ...]
    action: tuple[tuple[int, ...], ...]
    signs: tuple[int, ...]

    @classmethod
    def diagonal(cls, names: Sequence[str], negated: Sequence[str] = ()) -> "UnitModule":
        g = len(names)
        act = tuple(tuple(int(i == j) for j in range(g)) for i in range(g))
        signs = tuple(int(n in negated) for n in names)
        return cls(tuple(names), act, signs)

    @property
    def rank(self) -> int:
        return len(self.names)

    def _fixed_lattice(self) -> list[list[int]]:
        # {a : A a = a and signs . a even}
        g = self.rank
        rows = [[self.action[i][j] - int(i == j) for j in range(g)] for i in range(g)]
        rows = rows + [list(self.signs)]
        # the parity row becomes an integer equation with a slack column times 2
        big = [row + [0] for row in rows[:-1]] + [rows[-1] + [-2]]
        return [v[:g] for v in kernel_basis(big, ncols=g + 1)]

    def mu4_module(self) -> GModule:
        """``mu_4 x Z^g`` with sigma; the mu_4 factor holds the square roots of the signs."""
        g = self.rank
        n = g + 1
        act = [[0] * n for _ in range(n)]
        act[0][0] = 1
        for j in range(g):
            act[0][j + 1] = 2 * self.signs[j]
            for i in range(g):
                act[i + 1][j + 1] = self.action[i][j]
        rels = [tuple([4] + [0] * g)]
        return GModule(n, tuple(rels), tuple(map(tuple, act)), ("zeta4",) + self.names)

    def fixed(self) -> FGAbelianGroup:
        return FGAbelianGroup(len(self._fixed_lattice()))

    def h_even(self) -> FGAbelianGroup:
        g = self.rank
        norm = [[self.action[i][j] + int(i == j) for i in range(g)] for j in range(g)]
        return subquotient(self._fixed_lattice(), norm, g)

    def h_odd(self) -> FGAbelianGroup:
        return h_odd(self.mu4_module())


def units_cohomology(U: UnitModule) -> dict:
    """H^0 (named part; the full group is this times k*), H^odd and H^even."""
    return {"H0": U.fixed(), "H0_times_kstar": True, "Hodd": U.h_odd(), "Heven": U.h_even()}
