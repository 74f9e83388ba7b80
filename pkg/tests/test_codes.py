import numpy as np
import pytest
from mpmath import mp

from syzkit.codes import (
    CodeError,
    FamilySpec,
    LinearCode,
    SupportMultiplier,
    code_from_text,
    distance_profile,
    dual_alternant_code,
    dual_distance,
    dual_distance_leq,
    dual_goppa_code,
    golay_binary,
    golay_ternary,
    grs_code,
    grs_rows,
    hamming_code,
    macwilliams,
    min_distance,
    pi_bits,
    pi_code,
    pi_matrix,
    power_dims,
    projectivize,
    puncture,
    random_code,
    random_code_conditioned,
    read_code,
    repetition_code,
    sample_family_member,
    shorten,
    weight_distribution,
    write_code,
)
from syzkit.gf import SubfieldEmbedding, field_of_order, find_irreducible, poly_eval
from syzkit.linalg import matmul_array, rank_array


def _same_space(A: LinearCode, B: LinearCode) -> bool:
    return A.k == B.k and rank_array(A.field, np.vstack([A.G, B.G])) == A.k


def test_hamming_basics():
    C = hamming_code()
    assert (C.n, C.k) == (7, 4)
    assert min_distance(C) == 3
    assert weight_distribution(C) == [1, 0, 0, 7, 7, 0, 0, 1]
    assert dual_distance(C) == 4


def test_golay_distances():
    G2, G3 = golay_binary(), golay_ternary()
    assert (min_distance(G2), dual_distance(G2)) == (7, 8)
    assert (min_distance(G3), dual_distance(G3)) == (5, 6)
    assert dual_distance_leq(G2, 7) is False
    assert dual_distance_leq(G2, 8) is True
    # capped mode answers through the dual's column dependencies
    assert min_distance(G2, cap=9) == 7
    assert min_distance(G2, cap=6) == ">=6"


def test_dual_distance_count():
    G2 = golay_binary()
    found, count = dual_distance_leq(G2.dual(), 7, count=True)
    assert found and count == 253


def test_proportional_columns():
    F = field_of_order(5)
    G = np.array([[1, 2, 0, 1], [0, 0, 1, 3]])
    C = LinearCode(F, G)
    assert dual_distance_leq(C, 2)
    P = projectivize(C)
    assert P.n == 3


def test_pi_matrix_rows():
    M = pi_matrix()
    assert M.shape == (12, 23)
    assert "".join(map(str, M[0])) == "11001001000011111101101"
    assert "".join(map(str, M[1])) == "01010001000100001011010"
    assert "".join(map(str, M[11])) == "01001010001010010100000"
    # independent oracle: mpmath's binary expansion of pi
    mp.prec = 400
    bits = bin(int(mp.pi * 2**274))[2:]
    assert pi_bits(276) == bits[:276]
    C = pi_code()
    assert (min_distance(C), dual_distance(C)) == (3, 4)


def test_dual_invariants():
    rng = np.random.default_rng(0)
    for q in (2, 3, 4, 7):
        for _ in range(5):
            n = int(rng.integers(3, 12))
            k = int(rng.integers(1, n))
            C = random_code(n, k, q, rng)
            D = C.dual()
            assert C.k + D.k == n
            assert not matmul_array(C.field, C.G, D.G.T).any()
            assert D.dual() == C


def test_shorten_puncture_duality():
    rng = np.random.default_rng(1)
    for i in range(100):
        q = (2, 3, 4)[i % 3]
        n = int(rng.integers(4, 14))
        k = int(rng.integers(1, n))
        C = random_code(n, k, q, rng)
        S = rng.choice(n, size=int(rng.integers(0, min(k, n - 1) + 1)), replace=False)
        lhs = shorten(C, S)
        rhs = puncture(C.dual(), S).dual()
        assert _same_space(lhs, rhs)


def test_shorten_examples():
    C = hamming_code()
    assert shorten(C, []) == C
    S = shorten(C, [0])
    assert (S.n, S.k) == (6, 3)
    assert S.flags == {"expected_k": 3, "excess_dimension": False}


def test_puncture_repetition():
    C = repetition_code(6)
    assert puncture(C, [1, 3]).k == 1
    assert puncture(C, []) == C


def test_grs():
    F = field_of_order(4)
    sm = SupportMultiplier(F, np.array([0, 1, 2]), np.array([1, 1, 1]))
    assert grs_rows(sm, 2).tolist() == [[1, 1, 1], [0, 1, 2]]
    assert grs_code(sm, 2).k == 2
    assert grs_code(sm, 3).k == 3  # full space at k = n
    with pytest.raises(CodeError):
        SupportMultiplier(F, np.array([0, 1, 1]), np.array([1, 1, 1]))
    with pytest.raises(CodeError):
        SupportMultiplier(F, np.array([0, 1, 2]), np.array([1, 0, 1]))


def test_grs15_square_is_full():
    F = field_of_order(16)
    C = grs_code(SupportMultiplier(F, np.arange(1, 16), np.ones(15, dtype=np.int64)), 8)
    dims, reg = power_dims(C, 2)
    assert dims == [8, 15] and reg == 2


def test_power_dims():
    assert power_dims(hamming_code(), 3) == ([4, 7, 7], 2)
    assert power_dims(golay_binary(), 2)[0] == [12, 23]


def test_dual_alternant_and_goppa():
    rng = np.random.default_rng(2)
    C, info = sample_family_member(FamilySpec("alt-dual", 2, 6, 3), rng)
    assert (C.n, C.k, C.q) == (64, 18, 2)
    C, info = sample_family_member(FamilySpec("goppa-dual", 2, 6, 3), rng)
    assert (C.n, C.k) == (64, 18)
    C, _ = sample_family_member(FamilySpec("goppa_dual", 4, 4, 4), rng)
    assert (C.n, C.k, C.q) == (256, 16, 4)
    # t = 1, y = 1: the expansion of a single row has rank at most m
    small, big = field_of_order(2), field_of_order(16)
    emb = SubfieldEmbedding(small, big)
    C1, proper = dual_alternant_code(SupportMultiplier(big, np.arange(16), np.ones(16, dtype=np.int64)), 1, emb)
    assert C1.k <= 4


def test_goppa_root_in_support():
    small, big = field_of_order(2), field_of_order(16)
    emb = SubfieldEmbedding(small, big)
    g = np.array([0, 1], dtype=np.int64)  # g = X vanishes at 0
    with pytest.raises(CodeError, match="root in support"):
        dual_goppa_code(np.arange(16), g, emb)


def test_goppa_large_dimension():
    rng = np.random.default_rng(3)
    small, big = field_of_order(2), field_of_order(1024)
    emb = SubfieldEmbedding(small, big)
    g = find_irreducible(big, 10, rng)
    assert not np.any(poly_eval(big, g, np.arange(1024)) == 0)
    C, proper = dual_goppa_code(np.arange(1024), g, emb)
    assert proper and (C.n, C.k) == (1024, 100)


def test_family_spec_validation():
    with pytest.raises(CodeError):
        FamilySpec("alt_dual", 2, 4, 5)  # mt = 20 > 16
    with pytest.raises(CodeError):
        FamilySpec("other", 2, 4, 2)
    assert FamilySpec("alt-dual", 2, 4, 2).n == 16


def test_random_conditioned():
    rng = np.random.default_rng(4)
    C, draws = random_code_conditioned(56, 16, 2, 12, 4, rng)
    prof = distance_profile(C)
    assert (C.k, prof.d, prof.d_dual) == (16, 12, 4)
    assert draws >= 1


def test_singleton_and_macwilliams():
    rng = np.random.default_rng(5)
    for q in (2, 3, 4):
        for _ in range(5):
            C = random_code(10, 4, q, rng)
            d = min_distance(C)
            assert d <= C.n - C.k + 1
            dist = weight_distribution(C)
            dd = macwilliams(dist, C.n, q, C.k)
            assert dd == weight_distribution(C.dual())


def test_code_file_round_trip(tmp_path):
    C = golay_ternary()
    write_code(tmp_path / "c.txt", C)
    text = (tmp_path / "c.txt").read_text()
    assert text.splitlines()[0] == "3 11 6"
    assert read_code(tmp_path / "c.txt") == C
    with pytest.raises((CodeError, ValueError)):
        code_from_text("2 3 2\n1 0 1")


def test_rank_deficient_generator():
    F = field_of_order(2)
    with pytest.raises(CodeError):
        LinearCode(F, [[1, 1, 0], [1, 1, 0]])
    assert LinearCode(F, [[1, 1, 0], [1, 1, 0]], allow_rank_deficient=True).k == 1


def test_min_distance_needs_cap_when_large():
    rng = np.random.default_rng(6)
    C = random_code(60, 30, 2, rng)
    with pytest.raises(CodeError):
        min_distance(C)
