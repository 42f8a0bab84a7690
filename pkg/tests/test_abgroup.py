from math import gcd, prod

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors

from dblplane.abgroup import (
    DimensionError,
    FGAbelianGroup,
    annihilator,
    cokernel,
    det,
    kernel_basis,
    matmul,
    matvec,
    smith_normal_form,
    solve_integer,
    span_order_mod,
    subquotient,
    tensor_mod,
)

small = st.integers(-6, 6)


def matrices(max_r=4, max_c=4):
    return st.integers(1, max_r).flatmap(
        lambda r: st.integers(1, max_c).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def groups():
    return st.builds(FGAbelianGroup, st.integers(0, 3), st.lists(st.integers(1, 12), max_size=4))


@given(matrices())
def test_snf_factorization(M):
    U, S, V = smith_normal_form(M)
    assert matmul(matmul(U, M), V) == S
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = [S[i][i] for i in range(min(len(S), len(S[0])))]
    for i in range(len(S)):
        for j in range(len(S[0])):
            if i != j:
                assert S[i][j] == 0
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@given(matrices())
def test_snf_matches_sympy(M):
    _, S, _ = smith_normal_form(M)
    ours = [S[i][i] for i in range(min(len(S), len(S[0]))) if S[i][i]]
    ref = [abs(int(d)) for d in invariant_factors(sympy.Matrix(M), domain=sympy.ZZ) if d]
    assert ours == sorted(ref)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n),
                                                   min_size=n, max_size=n)))
def test_det_matches_sympy(M):
    assert det(M) == int(sympy.Matrix(M).det())


@given(matrices())
def test_cokernel_order_is_abs_det_for_square(M):
    if len(M) != len(M[0]):
        return
    d = det(M)
    G = cokernel(M, nrows=len(M))
    if d == 0:
        assert G.rank > 0
    else:
        assert G.order == abs(d)


def test_cokernel_examples():
    assert cokernel([[2, 0], [0, 3]]).is_isomorphic(FGAbelianGroup.cyclic(6))
    assert str(cokernel([[2, 4], [6, 8]])) == "Z/2 + Z/4"
    assert cokernel([], nrows=2) == FGAbelianGroup(2)


def test_canonical_form():
    G = FGAbelianGroup(1, [6, 4, 1])
    assert G.torsion == (2, 12)
    assert str(G) == "Z/2 + Z/12 + Z"
    assert FGAbelianGroup().is_trivial
    assert FGAbelianGroup.elementary(2, 3).order == 8
    assert FGAbelianGroup(1).order is None


@given(groups(), st.integers(2, 12))
def test_tensor_and_annihilator_orders(G, d):
    # for finite cyclic pieces |A/dA| = |A[d]|
    tens, ann = tensor_mod(G, d), annihilator(G, d)
    expect = prod(gcd(t, d) for t in G.torsion) * d ** G.rank
    assert tens.order == expect
    assert ann.order == prod(gcd(t, d) for t in G.torsion)


@given(groups(), groups())
def test_direct_sum_orders(A, B):
    C = A.direct_sum(B)
    assert C.rank == A.rank + B.rank
    if A.order and B.order:
        assert C.order == A.order * B.order


@given(matrices(), st.lists(small, min_size=4, max_size=4))
def test_solve_integer(M, x):
    x = x[:len(M[0])]
    b = matvec(M, x)
    sol = solve_integer(M, b)
    assert sol is not None and matvec(M, sol) == b


def test_solve_integer_insoluble():
    assert solve_integer([[2]], [1]) is None


@given(matrices())
def test_kernel_basis(M):
    for v in kernel_basis(M, ncols=len(M[0])):
        assert not any(matvec(M, v))
    rank = sympy.Matrix(M).rank()
    assert len(kernel_basis(M, ncols=len(M[0]))) == len(M[0]) - rank


def test_subquotient():
    # <e1, e2> / <2 e1, 4 e2>
    assert str(subquotient([[1, 0], [0, 1]], [[2, 0], [0, 4]], 2)) == "Z/2 + Z/4"
    assert subquotient([[2, 0]], [[4, 0]], 2) == FGAbelianGroup.cyclic(2)
    with pytest.raises(ValueError):
        subquotient([[2, 0]], [[1, 0]], 2)


def test_span_order_mod():
    assert span_order_mod([[1, 0], [0, 1]], 3, 2) == 9
    assert span_order_mod([[1, 1], [2, 2]], 4, 2) == 4
    assert span_order_mod([[2, 0]], 4, 2) == 2


def test_dimension_errors():
    with pytest.raises(DimensionError):
        matmul([[1, 2]], [[1, 2]])
    with pytest.raises(DimensionError):
        det([[1, 2]])
