from fractions import Fraction as F

import pytest

from hopfdual.exact import (NoSolution, ShapeError, SparseMatrix, SparseTensor, contract, inverse,
                            kernel, rank, rref, solve_linear, sparse_kernel, to_scalar, vsparse)


def test_scalars_are_exact():
    assert to_scalar("3/6") == F(1, 2)
    assert to_scalar(-4) == F(-4)
    with pytest.raises(TypeError):
        to_scalar(0.5)


def test_vsparse_drops_zero_strings():
    assert vsparse(["0", "1/2", 0, "-0"]) == {1: F(1, 2)}


def test_rref_small():
    r, piv, rk = rref([[2, 4, 6], [1, 2, 4]])
    assert rk == 2 and piv == [0, 2]
    assert r == [[1, 2, 0], [0, 0, 1]]


def test_solve_and_inconsistent():
    assert solve_linear([[1, 1], [1, -1]], [3, 1]) == [2, 1]
    with pytest.raises(NoSolution):
        solve_linear([[1, 1], [2, 2]], [1, 3])


def test_kernel_and_inverse():
    k = kernel([[1, 2, 3]])
    assert len(k) == 2
    assert all(sum(a * b for a, b in zip([1, 2, 3], v)) == 0 for v in k)
    m = [[2, 1], [1, 1]]
    assert inverse(m) == [[1, -1], [-1, 2]]
    assert rank([[1, 2], [2, 4]]) == 1


def test_sparse_tensor_contract_matches_matrix_product():
    a = SparseTensor((2, 3), {(0, 0): 1, (1, 2): F(1, 3)})
    b = SparseTensor((3, 2), {(0, 1): 2, (2, 0): 3})
    c = contract(a, b, [(1, 0)])
    assert c == SparseTensor((2, 2), {(0, 1): 2, (1, 0): 1})


def test_sparse_tensor_rejects_bad_index():
    with pytest.raises(ShapeError):
        SparseTensor((2,), {(2,): 1})


def test_sparse_matrix_algebra():
    m = SparseMatrix.from_dense([[1, 2], [3, 4]])
    assert m @ m.inverse() == SparseMatrix.identity(2)
    assert (m - m).is_zero()
    assert m.transpose().to_dense() == [[1, 3], [2, 4]]
    sing = SparseMatrix.from_dense([[1, 2], [2, 4]])
    assert sing.rank() == 1
    ker = sparse_kernel(sing)
    assert len(ker) == 1 and sing.apply(ker[0]) == {}
