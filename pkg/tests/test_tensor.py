import numpy as np
import pytest
from fractions import Fraction
from hypothesis import given, settings, strategies as st

from conftest import as_np, np_swap
from pptkit.scalars import EXACT, FLOAT, QQi, BackendMismatchError
from pptkit.tensor import (
    CapacityError,
    Matrix,
    ShapeError,
    SingularMatrixError,
    adjoint,
    charpoly,
    determinant,
    deviation,
    embed,
    embed_site,
    inverse,
    kron,
    mul,
    partial_trace_last,
    partial_transpose,
    trace,
)

small = st.integers(-4, 4)


def exact_matrix(draw_rows):
    return Matrix.from_rows(draw_rows, 2, 1)


@st.composite
def exact_4x4(draw):
    rows = [[QQi(draw(small), draw(small)) for _ in range(4)] for _ in range(4)]
    return Matrix.from_rows(rows, 2, 2)


@settings(max_examples=40, deadline=None)
@given(exact_4x4(), exact_4x4())
def test_exact_mul_matches_numpy(A, B):
    assert np.allclose(as_np(A @ B), as_np(A) @ as_np(B))


@settings(max_examples=40, deadline=None)
@given(exact_4x4())
def test_exact_inverse_or_singular(A):
    det = determinant(A)
    assert abs(complex(det) - np.linalg.det(as_np(A))) < 1e-6 * (1 + abs(complex(det)))
    if det == 0:
        with pytest.raises(SingularMatrixError):
            inverse(A)
    else:
        assert deviation(A @ inverse(A), Matrix.identity(2, 2)) == 0


@settings(max_examples=25, deadline=None)
@given(exact_4x4())
def test_charpoly_cayley_hamilton(A):
    c = charpoly(A)
    acc = Matrix.zeros(2, 2)
    power = Matrix.identity(2, 2)
    for coeff in c:
        acc = acc + power * coeff
        power = power @ A
    assert deviation(acc, Matrix.zeros(2, 2)) == 0
    assert c[0] == determinant(A) * (1 if A.side % 2 == 0 else -1)


def test_capacity_guard():
    with pytest.raises(CapacityError):
        Matrix.identity(2, 13)
    Matrix.identity(2, 12, FLOAT)  # 4096 is allowed
    with pytest.raises(CapacityError):
        embed(Matrix.identity(17, 2), 1, 3)


def test_backends_do_not_mix():
    with pytest.raises(BackendMismatchError):
        Matrix.identity(2, 1, EXACT) + Matrix.identity(2, 1, FLOAT)


def test_kron_row_major():
    a = Matrix.from_rows([[1, 2], [3, 4]], 2, 1)
    b = Matrix.from_rows([[0, 1], [1, 0]], 2, 1)
    assert np.array_equal(as_np(kron(a, b)), np.kron(as_np(a), as_np(b)))


def test_embed_matches_numpy():
    P = Matrix.from_rows(np_swap(3).real.astype(int).tolist(), 3, 2)
    E = embed(P, 2, 3)
    want = np.kron(np.eye(3), np_swap(3))
    assert np.array_equal(as_np(E), want)
    with pytest.raises(IndexError):
        embed(P, 3, 3)
    with pytest.raises(ShapeError):
        embed(Matrix.identity(3, 1), 1, 3)


def test_embed_site():
    z = Matrix.from_rows([[1, 0], [0, -1]], 2, 1)
    assert np.array_equal(as_np(embed_site(z, 2, 3)), np.kron(np.kron(np.eye(2), np.diag([1, -1])), np.eye(2)))


def test_partial_transpose_of_swap_is_ppt():
    for d in (2, 3):
        P = Matrix.from_rows(np_swap(d).real.astype(int).tolist(), d, 2)
        want = np.zeros((d * d, d * d))
        for i in range(d):
            for j in range(d):
                want[i * d + i, j * d + j] = 1
        assert np.array_equal(as_np(partial_transpose(P, [2])), want)
        assert np.array_equal(as_np(partial_transpose(P, [1])), want)
        assert deviation(partial_transpose(partial_transpose(P, [1]), [1]), P) == 0


def test_partial_trace():
    rng = np.random.default_rng(3)
    M = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    A = Matrix(M, 2, 3, FLOAT)
    want = np.einsum("acbc->ab", M.reshape(4, 2, 4, 2))
    assert np.allclose(as_np(partial_trace_last(A)), want)


def test_adjoint_and_trace_exact():
    A = Matrix.from_rows([[QQi(1, 1), 2], [QQi(0, 3), 4]], 2, 1)
    assert adjoint(A)[0, 1] == QQi(0, -3)
    assert trace(A) == QQi(5, 1)
