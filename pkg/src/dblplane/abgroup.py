"""Exact integer linear algebra and finitely generated abelian groups.

Matrices are plain lists of rows of Python ints, so entries never overflow.
A matrix ``M`` with ``r`` rows and ``c`` columns is read as the map
``Z^c -> Z^r``; for a matrix with no columns pass ``[[] for _ in range(r)]``
or use the ``nrows`` argument where offered.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd, prod
from typing import Iterable, Sequence

Matrix = list[list[int]]


class DimensionError(ValueError):
    pass


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def shape(M: Sequence[Sequence[int]]) -> tuple[int, int]:
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if any(len(row) != cols for row in M):
        raise DimensionError("ragged matrix")
    return rows, cols


def copy(M: Sequence[Sequence[int]]) -> Matrix:
    return [list(map(int, row)) for row in M]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    ra, ca = shape(A)
    rb, cb = shape(B)
    if ca != rb:
        raise DimensionError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    Bt = list(zip(*B)) if rb else [()] * cb
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence[int]], x: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def transpose(M: Sequence[Sequence[int]], nrows: int | None = None) -> Matrix:
    r, c = shape(M)
    if r == 0:
        return [[] for _ in range(nrows or 0)]
    return [list(col) for col in zip(*M)]


def columns_to_matrix(cols: Sequence[Sequence[int]], nrows: int) -> Matrix:
    """Stack column vectors side by side into an ``nrows``-row matrix."""
    return [[col[i] for col in cols] for i in range(nrows)]


def hstack(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if len(A) != len(B):
        raise DimensionError("row counts differ")
    return [list(a) + list(b) for a, b in zip(A, B)]


def det(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n, c = shape(M)
    if n != c:
        raise DimensionError(f"determinant of non-square {n}x{c} matrix")
    if n == 0:
        return 1
    A = copy(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, S, V)`` with ``U @ M @ V == S``.

    ``U`` and ``V`` are unimodular and ``S`` is diagonal with nonnegative
    entries ``s_1 | s_2 | ...``. Pivots are chosen by smallest nonzero
    absolute value.
    """
    r, c = shape(M)
    S = copy(M)
    U = identity(r)
    V = identity(c)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        if q:
            S[dst] = [a - q * b for a, b in zip(S[dst], S[src])]
            U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        if q:
            for row in S:
                row[dst] -= q * row[src]
            for row in V:
                row[dst] -= q * row[src]

    t = 0
    while t < min(r, c):
        # smallest nonzero entry in the remaining block
        best = None
        for i in range(t, r):
            for j in range(t, c):
                if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = S[t][t]
            dirty = False
            for i in range(t + 1, r):
                if S[i][t]:
                    add_row(i, t, S[i][t] // p)
                    if S[i][t]:
                        dirty = True
            for j in range(t + 1, c):
                if S[t][j]:
                    add_col(j, t, S[t][j] // p)
                    if S[t][j]:
                        dirty = True
            if dirty:
                # a remainder smaller than the pivot appeared; re-pivot on it
                best = (t, t)
                for i in range(t, r):
                    if S[i][t] and abs(S[i][t]) < abs(S[best[0]][best[1]]):
                        best = (i, t)
                for j in range(t, c):
                    if S[t][j] and abs(S[t][j]) < abs(S[best[0]][best[1]]):
                        best = (t, j)
                swap_rows(t, best[0])
                swap_cols(t, best[1])
                continue
            # divisibility: pivot must divide the rest of the block
            bad = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if S[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, -1)
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return U, S, V


def diagonal(S: Sequence[Sequence[int]]) -> list[int]:
    r, c = shape(S)
    return [S[i][i] for i in range(min(r, c))]


def _canonical(orders: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """Free rank and invariant factors of the direct sum of ``Z/m`` over ``orders``.

    An order of 0 stands for a copy of Z.
    """
    orders = [abs(int(m)) for m in orders]
    rank = sum(1 for m in orders if m == 0)
    finite = [m for m in orders if m > 1]
    if not finite:
        return rank, ()
    _, S, _ = smith_normal_form([[m if i == j else 0 for j in range(len(finite))]
                                 for i, m in enumerate(finite)])
    return rank, tuple(d for d in diagonal(S) if d > 1)


@dataclass(frozen=True)
class FGAbelianGroup:
    """``Z^rank`` plus ``Z/d_1 + ... + Z/d_t`` with ``d_1 | d_2 | ... | d_t``."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        rank, torsion = _canonical([0] * self.rank + list(self.torsion))
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "torsion", torsion)

    @classmethod
    def cyclic(cls, m: int) -> "FGAbelianGroup":
        return cls(*_canonical([m]))

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "FGAbelianGroup":
        return cls(*_canonical(orders))

    @classmethod
    def elementary(cls, p: int, k: int) -> "FGAbelianGroup":
        return cls(0, (p,) * k)

    @property
    def order(self) -> int | None:
        """Group order, or None when the group is infinite."""
        return None if self.rank else prod(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def is_free(self) -> bool:
        return not self.torsion

    def two_rank(self) -> int:
        return sum(1 for d in self.torsion if d % 2 == 0)

    def direct_sum(self, other: "FGAbelianGroup") -> "FGAbelianGroup":
        return FGAbelianGroup(self.rank + other.rank, self.torsion + other.torsion)

    def is_isomorphic(self, other: "FGAbelianGroup") -> bool:
        return self == other

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        return " + ".join(parts) if parts else "0"


def _check_modulus(d: int) -> None:
    if d < 2:
        raise ValueError(f"modulus must be at least 2, got {d}")


def tensor_mod(A: FGAbelianGroup, d: int) -> FGAbelianGroup:
    """``A (x) Z/d``."""
    _check_modulus(d)
    return FGAbelianGroup.from_orders([d] * A.rank + [gcd(t, d) for t in A.torsion])


def annihilator(A: FGAbelianGroup, d: int) -> FGAbelianGroup:
    """The subgroup of ``A`` killed by ``d``."""
    _check_modulus(d)
    return FGAbelianGroup.from_orders([gcd(t, d) for t in A.torsion])


def cokernel(M: Sequence[Sequence[int]], nrows: int | None = None) -> FGAbelianGroup:
    """``Z^rows / image(M)``."""
    r, c = shape(M)
    if nrows is not None and r == 0:
        r = nrows
        M = [[] for _ in range(r)]
    if c == 0:
        return FGAbelianGroup(r)
    _, S, _ = smith_normal_form(M)
    diag = diagonal(S) + [0] * (r - min(r, c))
    return FGAbelianGroup.from_orders(diag)


def solve_integer(M: Sequence[Sequence[int]], b: Sequence[int]) -> list[int] | None:
    """An integer solution of ``M x = b``, or None if there is none."""
    r, c = shape(M)
    if len(b) != r:
        raise DimensionError(f"right-hand side has length {len(b)}, expected {r}")
    if c == 0:
        return [] if all(v == 0 for v in b) else None
    U, S, V = smith_normal_form(M)
    ub = matvec(U, b)
    y = [0] * c
    for i in range(r):
        s = S[i][i] if i < c else 0
        if s == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % s:
                return None
            y[i] = ub[i] // s
    return matvec(V, y)


def kernel_basis(M: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """A Z-basis (as column vectors) of the integer kernel of ``M``."""
    r, c = shape(M)
    if r == 0:
        c = ncols if ncols is not None else c
        return [[int(i == j) for i in range(c)] for j in range(c)]
    _, S, V = smith_normal_form(M)
    rk = sum(1 for s in diagonal(S) if s)
    return [[V[i][j] for i in range(c)] for j in range(rk, c)]


def lattice_basis(gens: Sequence[Sequence[int]], dim: int) -> list[list[int]]:
    """A Z-basis of the sublattice of ``Z^dim`` spanned by the vectors ``gens``."""
    gens = [list(g) for g in gens if any(g)]
    if not gens:
        return []
    G = columns_to_matrix(gens, dim)
    U, S, _ = smith_normal_form(G)
    Uinv = inverse_unimodular(U)
    basis = []
    for j, s in enumerate(diagonal(S)):
        if s:
            basis.append([Uinv[i][j] * s for i in range(dim)])
    return basis


def inverse_unimodular(U: Sequence[Sequence[int]]) -> Matrix:
    """Exact inverse of a unimodular integer matrix via Gauss-Jordan over Z."""
    n, _ = shape(U)
    A = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(U)]
    for col in range(n):
        # bring a unit into the pivot by Euclid on the column
        while True:
            nz = [i for i in range(col, n) if A[i][col]]
            if not nz:
                raise ValueError("matrix is singular")
            piv = min(nz, key=lambda i: abs(A[i][col]))
            A[col], A[piv] = A[piv], A[col]
            done = True
            for i in range(col + 1, n):
                q = A[i][col] // A[col][col]
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[col])]
                if A[i][col]:
                    done = False
            if done:
                break
        if abs(A[col][col]) != 1:
            raise ValueError("matrix is not unimodular")
        if A[col][col] < 0:
            A[col] = [-a for a in A[col]]
        for i in range(n):
            if i != col and A[i][col]:
                q = A[i][col]
                A[i] = [a - q * b for a, b in zip(A[i], A[col])]
    return [row[n:] for row in A]


def subquotient(numerator: Sequence[Sequence[int]], denominator: Sequence[Sequence[int]],
                dim: int) -> FGAbelianGroup:
    """``<numerator> / <denominator>`` for lattices in ``Z^dim``.

    The denominator lattice must lie inside the numerator lattice.
    """
    basis = lattice_basis(numerator, dim)
    if not basis:
        return FGAbelianGroup()
    B = columns_to_matrix(basis, dim)
    coords = []
    for g in denominator:
        x = solve_integer(B, list(g))
        if x is None:
            raise ValueError("denominator is not contained in numerator")
        coords.append(x)
    m = len(basis)
    if not coords:
        return FGAbelianGroup(m)
    return cokernel(columns_to_matrix(coords, m))


def elementwise_mod(v: Iterable[int], d: int) -> list[int]:
    return [x % d for x in v]


def span_order_mod(vectors: Sequence[Sequence[int]], d: int, dim: int) -> int:
    """Order of the subgroup of ``(Z/d)^dim`` generated by ``vectors``."""
    gens = [list(v) for v in vectors] + [[d * int(i == j) for i in range(dim)] for j in range(dim)]
    G = columns_to_matrix(gens, dim) if dim else []
    if dim == 0:
        return 1
    quotient = cokernel(G)
    return d ** dim // quotient.order


def vector_gcd(v: Iterable[int]) -> int:
    return reduce(gcd, (abs(x) for x in v), 0)
