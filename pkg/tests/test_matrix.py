import numpy as np
import pytest

from rankforge.errors import DimensionMismatchError, InputError, InvalidMatrixError, ZeroVectorError
from rankforge.matrix import (
    NonNegMatrix,
    ScoreVector,
    StorageKind,
    mat_vec,
    normalize_1,
    one_vector,
    scale,
    shift,
)


def test_mat_vec_a1_perron_vector(a1):
    out = mat_vec(a1, ScoreVector([4, 1, 1]))
    assert out.tolist() == [2.0, 0.5, 0.5]


def test_mat_vec_zero_matrix():
    out = mat_vec(NonNegMatrix.zeros(3), ScoreVector([1, 2, 3]))
    assert out.tolist() == [0.0, 0.0, 0.0]


def test_mat_vec_kendall_row_sums(kendall):
    assert mat_vec(kendall, one_vector(6)).tolist() == [4.5, 2.5, 4.5, 1.5, 2.5, 2.5]


def test_mat_vec_dimension_mismatch(a1):
    with pytest.raises(DimensionMismatchError):
        mat_vec(a1, one_vector(4))


def test_mat_vec_keeps_labels(a1):
    v = ScoreVector([1, 1, 1], ("x", "y", "z"))
    assert mat_vec(a1, v).labels == ("x", "y", "z")


@pytest.mark.parametrize("n", [1, 3, 6])
def test_one_vector(n):
    v = one_vector(n)
    assert v.tolist() == [1.0] * n
    assert v.labels == tuple(str(i) for i in range(1, n + 1))


def test_one_vector_rejects_empty():
    with pytest.raises(InputError):
        one_vector(0)


def test_normalize_prize_shares():
    shares = normalize_1(ScoreVector([4, 1, 1]))
    assert shares.values == pytest.approx([2 / 3, 1 / 6, 1 / 6], abs=1e-15)
    assert normalize_1(ScoreVector([1, 0, 0])).tolist() == [1.0, 0.0, 0.0]


def test_normalize_zero_vector():
    with pytest.raises(ZeroVectorError, match="ZeroVector"):
        normalize_1(ScoreVector([0, 0, 0]))


def test_scale_examples(a1):
    assert scale(a1, 2) == NonNegMatrix.dense([[0, 2, 2], [0, 0, 1], [0, 1, 0]])
    assert np.array_equal(scale(a1, 1).to_dense(), a1.to_dense())
    assert scale(NonNegMatrix.dense([[0, 1], [0.5, 0]]), 3) == NonNegMatrix.dense([[0, 3], [1.5, 0]])


@pytest.mark.parametrize("c", [0.0, -1.0, float("inf"), float("nan")])
def test_scale_rejects_bad_factor(a1, c):
    with pytest.raises(InputError):
        scale(a1, c)


def test_shift_adds_to_diagonal(a1):
    shifted = shift(a1.as_sparse(), 0.25)
    assert shifted.is_sparse
    assert shifted.diagonal().tolist() == [0.25, 0.25, 0.25]
    assert shifted.entry(0, 1) == 1.0


@pytest.mark.parametrize("rows", [
    [[0, -1], [0, 0]],
    [[0, float("nan")], [0, 0]],
    [[0, float("inf")], [0, 0]],
    [[0, 1, 0], [0, 0, 1]],
    np.zeros((0, 0)),
])
def test_invalid_matrices(rows):
    with pytest.raises(InvalidMatrixError):
        NonNegMatrix.dense(rows)


def test_sparse_rejects_negative():
    with pytest.raises(InvalidMatrixError):
        NonNegMatrix.sparse([[0, -2], [1, 0]])


def test_score_vector_validation():
    with pytest.raises(InputError):
        ScoreVector([1, -0.5])
    with pytest.raises(InputError):
        ScoreVector([1, float("nan")])
    with pytest.raises(DimensionMismatchError):
        ScoreVector([1, 2], ("only-one",))


def test_matrices_are_read_only(a1):
    with pytest.raises(ValueError):
        a1.data[0, 0] = 5.0
    v = one_vector(3)
    with pytest.raises(ValueError):
        v.values[0] = 2.0


def test_from_entries_and_columns():
    M = NonNegMatrix.from_entries(3, {(1, 0): 0.5, (2, 0): 0.5, (0, 2): 1.0})
    assert M.storage_kind is StorageKind.SPARSE
    rows, vals = M.column(0)
    assert rows.tolist() == [1, 2] and vals.tolist() == [0.5, 0.5]
    assert len(M.column(1)[0]) == 0
    assert M.column_sums().tolist() == [1.0, 0.0, 1.0]
    assert M == M.as_dense()


def test_sparse_dense_matvec_bitwise(rng):
    for _ in range(200):
        n = int(rng.integers(1, 51))
        density = rng.uniform(0.1, 1.0)
        a = rng.random((n, n)) * (rng.random((n, n)) < density)
        v = ScoreVector(rng.random(n))
        dense = mat_vec(NonNegMatrix.dense(a), v)
        sparse = mat_vec(NonNegMatrix.sparse(a), v)
        assert np.array_equal(dense.values, sparse.values)


def test_mat_vec_linearity(rng):
    for _ in range(50):
        n = int(rng.integers(1, 20))
        M = NonNegMatrix.dense(rng.random((n, n)))
        u, v = rng.random(n), rng.random(n)
        a, b = rng.random(2) * 3
        lhs = mat_vec(M, ScoreVector(a * u + b * v)).values
        rhs = a * mat_vec(M, ScoreVector(u)).values + b * mat_vec(M, ScoreVector(v)).values
        assert np.allclose(lhs, rhs, rtol=1e-12, atol=0)


def test_normalize_properties(rng):
    for _ in range(100):
        v = rng.random(int(rng.integers(1, 30))) + 1e-3
        shares = normalize_1(ScoreVector(v))
        assert abs(shares.total - 1.0) <= 1e-15
        assert np.allclose(shares.values / shares.values[0], v / v[0], rtol=1e-14, atol=0)


def test_scale_then_matvec(rng):
    for _ in range(50):
        n = int(rng.integers(1, 20))
        M = NonNegMatrix.dense(rng.random((n, n)))
        v = one_vector(n)
        c = float(rng.uniform(0.1, 10))
        assert np.allclose(mat_vec(scale(M, c), v).values, c * mat_vec(M, v).values, rtol=1e-14, atol=0)
