"""Randomized property checks.  The whole file is meant to run in under two minutes."""

import itertools
from math import comb

import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from syzkit.bounds import alternant_en_params, build_phi, en_strand_bound, goppa_en_params, verify_en_syzygies, verify_minors_vanish
from syzkit.codes import FamilySpec, LinearCode, SupportMultiplier, power_dims, puncture, random_code, sample_family_member, sample_support, shorten
from syzkit.gf import field_of_order, make_field
from syzkit.linalg import matmul_array, rank_array
from syzkit.syzygy import betti_diagram_reg2, diagram_betti_sums, hilbert_betti_sums, is_regularity2, linear_strand

def fast(n):
    return settings(max_examples=n, deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True)


seeds = st.integers(min_value=0, max_value=2**32 - 1)


def _rng(seed):
    return np.random.default_rng(seed)


def _reg2_code(seed, k_lo=3, k_hi=10):
    """A random regularity-2 code with k_lo <= k <= k_hi."""
    rng = _rng(seed)
    while True:
        q = int(rng.choice([2, 3, 4, 5]))
        k = int(rng.integers(k_lo, k_hi + 1))
        n = int(rng.integers(k + 1, k * (k + 1) // 2 + 1))
        C = random_code(n, k, q, rng)
        if is_regularity2(C):
            return C


# ---------------------------------------------------------------------------
# Hilbert series and an independent Koszul-homology oracle


def _koszul_betti(C: LinearCode, top: int) -> dict:
    """beta_{i,j} of S/I(C) from Koszul homology, valid when C has regularity 2.

    (S/I)_0 = F, (S/I)_1 = F^k (the variables), and (S/I)_d = F^n for d >= 2
    with x_a acting by the entrywise product with generator row a."""
    F, G, k, n = C.field, C.G, C.k, C.n
    neg = lambda v: F.sub(np.zeros_like(v), v)

    def dim(d):
        return 0 if d < 0 else (1 if d == 0 else (k if d == 1 else n))

    def mult(a, d):
        """Matrix of x_a : A_d -> A_{d+1} (rows = basis of A_d)."""
        if d == 0:
            M = np.zeros((1, k), dtype=np.int64)
            M[0, a] = 1
            return M
        if d == 1:
            return np.array([F.mul(G[a], G[b]) for b in range(k)], dtype=np.int64)
        return np.diag(G[a]).astype(np.int64)

    def diff(i, d):
        """Koszul map wedge^i V (x) A_d -> wedge^(i-1) V (x) A_(d+1)."""
        src = list(itertools.combinations(range(k), i))
        dst = {I: t for t, I in enumerate(itertools.combinations(range(k), i - 1))}
        a_dim, b_dim = dim(d), dim(d + 1)
        M = np.zeros((len(src) * a_dim, len(dst) * b_dim), dtype=np.int64)
        for s, I in enumerate(src):
            for t, a in enumerate(I):
                block = mult(a, d)
                if t % 2:
                    block = neg(block)
                J = dst[I[:t] + I[t + 1 :]]
                rows = slice(s * a_dim, (s + 1) * a_dim)
                cols = slice(J * b_dim, (J + 1) * b_dim)
                M[rows, cols] = F.add(M[rows, cols], block)
        return M

    def rank_of(i, d):
        if i < 1 or i > k or d < 0 or dim(d) == 0:
            return 0
        M = diff(i, d)
        return rank_array(F, M) if M.size else 0

    out = {}
    for j in range(top + 1):
        for i in range(0, min(j, k) + 1):
            d = j - i
            size = comb(k, i) * dim(d)
            ker = size - rank_of(i, d)
            out[(i, j)] = ker - rank_of(i + 1, d - 1)
    return out


@fast(30)
@given(seeds)
def test_hilbert_series_oracle(seed):
    C = _reg2_code(seed)
    diag = betti_diagram_reg2(C)
    dims, reg = power_dims(C, 3)
    assert reg == 2 and dims[1] == C.n
    assert diagram_betti_sums(diag) == hilbert_betti_sums(C.n, C.k, dims)
    # the same coefficients from the closed form (1-z)^k (1 + kz + n z^2/(1-z))
    k, n = C.k, C.n
    H = [1, k] + [n] * (k + 1)
    closed = [sum((-1) ** i * comb(k, i) * H[j - i] for i in range(0, min(j, k) + 1)) for j in range(k + 3)]
    assert diagram_betti_sums(diag) == closed


@fast(30)
@given(seeds)
def test_koszul_oracle_full_diagram(seed):
    C = _reg2_code(seed, 3, 6)
    diag = betti_diagram_reg2(C)
    kos = _koszul_betti(C, C.k + 1)
    for (i, j), v in kos.items():
        assert diag.beta(i, j) == v, (i, j)


# ---------------------------------------------------------------------------
# strand bounds and invariances


@fast(25)
@given(seeds)
def test_grossier_bounds(seed):
    rng = _rng(seed)
    q = int(rng.choice([2, 3, 4]))
    k = int(rng.integers(3, 9))
    n = int(rng.integers(k + 1, 3 * k))
    C = random_code(n, k, q, rng)
    betas = linear_strand(C, k).betas
    assert betas[0] <= k * (k - 1) // 2
    for a, b in zip(betas, betas[1:]):
        assert b <= (k - 1) * a


@fast(50)
@given(seeds)
def test_puncture_monotonicity(seed):
    rng = _rng(seed)
    q = int(rng.choice([2, 3, 4]))
    k = int(rng.integers(3, 8))
    n = int(rng.integers(k + 2, 3 * k + 2))
    C = random_code(n, k, q, rng)
    S = rng.choice(n, size=int(rng.integers(1, n - k + 1)), replace=False)
    P = puncture(C, S)
    if P.k != k:
        return  # dimension dropped; the property does not apply
    a = linear_strand(C, k).betas
    b = linear_strand(P, k).betas
    assert all(y >= x for x, y in zip(a, b))


def _monomial_transform(C, rng):
    F = C.field
    while True:
        S = F.random(rng, size=(C.k, C.k))
        if rank_array(F, S) == C.k:
            break
    G = matmul_array(F, S, C.G)
    G = G[:, rng.permutation(C.n)]
    D = F.random(rng, size=C.n, nonzero=True)
    return LinearCode(F, F.mul(G, D[None, :]))


@fast(50)
@given(seeds)
def test_monomial_invariance(seed):
    rng = _rng(seed)
    q = int(rng.choice([2, 3, 4, 5, 7]))
    k = int(rng.integers(3, 8))
    n = int(rng.integers(k + 1, 3 * k))
    C = random_code(n, k, q, rng)
    assert linear_strand(C, k).betas == linear_strand(_monomial_transform(C, rng), k).betas


@fast(20)
@given(seeds)
def test_strand_depends_only_on_I2(seed):
    # appending a column that is already present leaves I_2 unchanged
    rng = _rng(seed)
    q = int(rng.choice([2, 3, 4]))
    k = int(rng.integers(3, 8))
    n = int(rng.integers(k + 1, 3 * k))
    C = random_code(n, k, q, rng)
    j = int(rng.integers(0, n))
    D = LinearCode(C.field, np.hstack([C.G, C.G[:, [j]]]))
    assert linear_strand(C, k).betas == linear_strand(D, k).betas


# ---------------------------------------------------------------------------
# Eagon-Northcott checks


@fast(25)
@given(seeds)
def test_en_minors_vanish(seed):
    rng = _rng(seed)
    q, m = [(2, 4), (2, 5), (2, 6), (2, 8), (3, 3), (4, 3)][int(rng.integers(0, 6))]
    t = int(rng.integers(2, 9))
    small = field_of_order(q)
    big = make_field(small.p, small.a * m)
    n = min(big.q, 60)
    sm = SupportMultiplier(big, sample_support(big, n, rng), big.random(rng, size=n, nonzero=True))
    phi, ev = build_phi(sm, q, t, m)
    assert phi.f == alternant_en_params(q, t).f
    assert verify_minors_vanish(phi, ev, big)


@fast(20)
@given(st.integers(min_value=3, max_value=9), st.integers(min_value=3, max_value=6), seeds)
def test_en_syzygies(f, r, seed):
    r = min(r, f)
    assert verify_en_syzygies(f, r, trials=20, rng=_rng(seed))


# EN soundness: small alternant and Goppa samples, strands checked up to degree 4
EN_DEGREE_CAP = 4


def _check_en_soundness(C, f, rng):
    s = int(rng.integers(0, 3))
    Cs = shorten(C, rng.choice(C.n, size=s, replace=False)) if s else C
    D = min(f - s, Cs.k, EN_DEGREE_CAP)
    if D < 2:
        return
    betas = linear_strand(Cs, D).betas
    for r in range(2, D + 1):
        assert betas[r - 2] >= en_strand_bound(f, s, r)


@fast(8)
@given(seeds)
def test_en_lower_bound_alternant(seed):
    rng = _rng(seed)
    q, m, t, n = [(2, 4, 3, 16), (2, 5, 3, 32), (4, 2, 5, 16), (3, 2, 4, 9), (2, 5, 2, 32)][int(rng.integers(0, 5))]
    C, _ = sample_family_member(FamilySpec("alt_dual", q, m, t, n=n), rng)
    _check_en_soundness(C, alternant_en_params(q, t).f, rng)


@fast(8)
@given(seeds)
def test_en_lower_bound_goppa(seed):
    rng = _rng(seed)
    m, t, n = [(4, 2, 16), (5, 2, 32), (5, 3, 32), (4, 3, 16)][int(rng.integers(0, 4))]
    C, _ = sample_family_member(FamilySpec("goppa_dual", 2, m, t, n=n, goppa_mode="sqfr"), rng)
    _check_en_soundness(C, goppa_en_params(t).f_hat, rng)
