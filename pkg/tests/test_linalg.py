import numpy as np
import pytest

from syzkit.gf import FieldError, field_of_order, make_field
from syzkit.linalg import (
    MatrixFq,
    backend_for,
    format_matrix,
    left_kernel_array,
    left_kernel_basis,
    mat_mul,
    matmul_array,
    parse_matrix,
    rank,
    rank_array,
    read_matrix,
    rref,
    rref_array,
    write_matrix,
)


def _generic_rref(F, A):
    """Schoolbook Gauss-Jordan with scalar field ops, used as an oracle."""
    A = [list(map(int, row)) for row in A]
    rows, cols = len(A), len(A[0]) if A else 0
    piv, r = [], 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(inv, v) for v in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(A[i], A[r])]
        piv.append(c)
        r += 1
    return np.array(A, dtype=np.int64), piv


def test_identity_and_zero():
    F = field_of_order(5)
    R, rk, piv = rref(MatrixFq.identity(F, 4))
    assert rk == 4 and piv == [0, 1, 2, 3]
    assert R == MatrixFq.identity(F, 4)
    R, rk, piv = rref(MatrixFq.zeros(F, 3, 4))
    assert rk == 0 and piv == [] and R.is_zero()
    assert left_kernel_basis(MatrixFq.identity(F, 3)).rows == 0


def test_gf2_examples():
    F = field_of_order(2)
    assert rank(MatrixFq(F, [[1, 1, 0], [0, 1, 1], [1, 0, 1]])) == 2
    K = left_kernel_basis(MatrixFq(F, [[1, 0], [1, 0]]))
    assert K.data.tolist() == [[1, 1]]
    P = mat_mul(MatrixFq(F, [[1, 1], [0, 1]]), MatrixFq(F, [[1, 0], [1, 1]]))
    assert P.data.tolist() == [[0, 1], [1, 1]]


def test_mul_mismatch():
    F = field_of_order(2)
    with pytest.raises(ValueError):
        mat_mul(MatrixFq.zeros(F, 2, 3), MatrixFq.zeros(F, 2, 3))
    with pytest.raises(FieldError):
        mat_mul(MatrixFq.zeros(F, 2, 2), MatrixFq.zeros(field_of_order(3), 2, 2))


def test_entries_checked():
    with pytest.raises(FieldError):
        MatrixFq(field_of_order(3), [[0, 3]])
    with pytest.raises(ValueError):
        MatrixFq(field_of_order(3), [[0, 1]], row_labels=["a", "b"])


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16, 25, 256, 1024])
def test_backends_agree_with_schoolbook(q):
    F = field_of_order(q)
    rng = np.random.default_rng(q)
    for _ in range(6):
        r, c = rng.integers(1, 14, size=2)
        A = F.random(rng, size=(r, c))
        if rng.random() < 0.5 and r > 1:
            A[-1] = F.add(A[0], F.mul(A[-2], 1))  # force a dependency
        R, piv = rref_array(F, A)
        R0, piv0 = _generic_rref(F, A)
        assert list(piv) == piv0
        assert np.array_equal(R, R0)
        # idempotence
        R2, _ = rref_array(F, R)
        assert np.array_equal(R2, R)


def test_random_gf3_kernel():
    F = field_of_order(3)
    rng = np.random.default_rng(5)
    M = F.random(rng, size=(6, 9))
    K = left_kernel_array(F, M)
    assert K.shape[0] == 6 - rank_array(F, M)
    assert not matmul_array(F, K, M).any()


@pytest.mark.parametrize("q", [2, 3, 4, 16])
def test_kernel_rank_nullity_and_canonical(q):
    F = field_of_order(q)
    rng = np.random.default_rng(11 + q)
    for _ in range(10):
        r, c = rng.integers(1, 20, size=2)
        M = F.random(rng, size=(r, c))
        M[: r // 2] = 0 if rng.random() < 0.3 else M[: r // 2]
        K = left_kernel_array(F, M)
        assert K.shape[0] + rank_array(F, M) == r
        if K.shape[0]:
            assert not matmul_array(F, K, M).any()
            R, _ = rref_array(F, K)
            assert np.array_equal(R, K)  # already canonical


def test_gf2_packed_path_matches_generic_large():
    # a 0/1 matrix has the same RREF over GF(4), where the byte-table backend runs
    F2, F4 = field_of_order(2), field_of_order(4)
    rng = np.random.default_rng(3)
    for _ in range(200):
        r, c = rng.integers(1, 513, size=2)
        A = rng.integers(0, 2, size=(r, c))
        if rng.random() < 0.3:
            A[r // 2 :] = A[: r - r // 2]
        R, piv = rref_array(F2, A)
        R4, piv4 = rref_array(F4, A)
        assert list(piv) == list(piv4)
        assert np.array_equal(R, R4)


def test_text_format_round_trip(tmp_path):
    F = field_of_order(9)
    rng = np.random.default_rng(0)
    A = F.random(rng, size=(4, 7))
    text = format_matrix(9, A)
    assert text.splitlines()[0] == "9 4 7"
    q, B = parse_matrix(text)
    assert q == 9 and np.array_equal(A, B)
    write_matrix(tmp_path / "m.txt", MatrixFq(F, A))
    assert read_matrix(tmp_path / "m.txt") == MatrixFq(F, A)
    with pytest.raises(ValueError):
        parse_matrix("2 2 2\n0 1\n1")
    with pytest.raises(ValueError):
        parse_matrix("2 1 2\n0 2")


def test_backend_selection():
    assert type(backend_for(field_of_order(2))).__name__ == "GF2Backend"
    assert type(backend_for(make_field(2, 4))).__name__ == "Char2Backend"
    assert type(backend_for(field_of_order(9))).__name__ == "OddBackend"
