"""Linear codes over GF(q): constructions, duality, shortening, distances, powers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Optional

import numpy as np

from . import _kernels as K
from .gf import (
    Field,
    SubfieldEmbedding,
    field_of_order,
    find_irreducible,
    make_field,
    poly_eval,
)
from .linalg import (
    MatrixFq,
    _pack_bits,
    canonical_rows,
    format_matrix,
    left_kernel_array,
    parse_matrix,
    rank_array,
    right_nullspace_array,
)

ENUM_LIMIT = 1 << 24


class CodeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# LinearCode


class LinearCode:
    """An [n, k]_q code; G is stored as the RREF of whatever generator was supplied."""

    def __init__(self, field: Field, G, allow_rank_deficient: bool = False, name: str = ""):
        G = np.asarray(G, dtype=np.int64)
        if G.ndim != 2:
            raise CodeError("generator must be a matrix")
        n = G.shape[1]
        R = canonical_rows(field, G) if G.shape[0] else G.reshape(0, n)
        if R.shape[0] < G.shape[0] and not allow_rank_deficient:
            raise CodeError(f"generator has rank {R.shape[0]} < {G.shape[0]} rows")
        self.field = field
        self.G = R
        self.n = n
        self.k = R.shape[0]
        self.name = name

    @property
    def q(self) -> int:
        return self.field.q

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<[{self.n},{self.k}]_{self.q} code{tag}>"

    def __eq__(self, other):
        return isinstance(other, LinearCode) and self.field == other.field and np.array_equal(self.G, other.G)

    def dual(self) -> "LinearCode":
        if self.k == 0:
            return LinearCode(self.field, np.eye(self.n, dtype=np.int64))
        H = right_nullspace_array(self.field, self.G)
        return LinearCode(self.field, H.reshape(-1, self.n))

    def parity_check(self) -> np.ndarray:
        return self.dual().G

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(1, -1)
        return rank_array(self.field, np.vstack([self.G, v])) == self.k

    def generator_matrix(self) -> MatrixFq:
        return MatrixFq(self.field, self.G)

    def to_text(self) -> str:
        return format_matrix(self.q, self.G).replace(f"{self.q} {self.k} {self.n}", f"{self.q} {self.n} {self.k}", 1)


def code_from_text(text: str, field: Optional[Field] = None) -> LinearCode:
    """Parse the code file format: header 'q n k', then k generator rows."""
    toks = text.split()
    if len(toks) < 3:
        raise CodeError("missing header 'q n k'")
    q, n, k = (int(t) for t in toks[:3])
    q2, A = parse_matrix(f"{q} {k} {n} " + " ".join(toks[3:]))
    F = field if field is not None else field_of_order(q)
    return LinearCode(F, A)


def read_code(path, field: Optional[Field] = None) -> LinearCode:
    with open(path) as fh:
        return code_from_text(fh.read(), field)


def write_code(path, C: LinearCode):
    with open(path, "w") as fh:
        fh.write(C.to_text())


# ---------------------------------------------------------------------------
# classical examples


def cyclic_code(F: Field, n: int, g) -> LinearCode:
    g = np.asarray(g, dtype=np.int64)
    k = n - (len(g) - 1)
    G = np.zeros((k, n), dtype=np.int64)
    for i in range(k):
        G[i, i : i + len(g)] = g
    return LinearCode(F, G)


def hamming_code() -> LinearCode:
    """The cyclic [7,4]_2 Hamming code, generator x^3 + x + 1."""
    C = cyclic_code(make_field(2), 7, [1, 1, 0, 1])
    C.name = "Hamming [7,4]"
    return C


def golay_binary() -> LinearCode:
    C = cyclic_code(make_field(2), 23, [1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1])
    C.name = "Golay [23,12]"
    return C


def golay_ternary() -> LinearCode:
    C = cyclic_code(make_field(3), 11, [2, 0, 1, 2, 1, 1])
    C.name = "Golay [11,6]"
    return C


def parity_code(k: int, F: Optional[Field] = None) -> LinearCode:
    """The [k+1, k] code of vectors whose coordinates sum to zero."""
    F = F or make_field(2)
    G = np.zeros((k, k + 1), dtype=np.int64)
    G[:, :k] = np.eye(k, dtype=np.int64)
    G[:, k] = F.neg(1)
    C = LinearCode(F, G)
    C.name = f"parity [{k + 1},{k}]"
    return C


def repetition_code(n: int, F: Optional[Field] = None) -> LinearCode:
    F = F or make_field(2)
    return LinearCode(F, np.ones((1, n), dtype=np.int64))


def pi_bits(nbits: int = 276) -> str:
    """Leading binary digits of pi, integer part '11' included."""
    import mpmath

    with mpmath.workdps(nbits // 3 + 30):
        v = int(mpmath.floor(mpmath.pi * mpmath.mpf(2) ** (nbits - 2)))
    s = bin(v)[2:]
    if len(s) != nbits:
        raise RuntimeError("unexpected length of the binary expansion of pi")
    return s


def pi_matrix() -> np.ndarray:
    bits = pi_bits(276)
    return np.array([int(b) for b in bits], dtype=np.int64).reshape(12, 23)


def pi_code() -> LinearCode:
    C = LinearCode(make_field(2), pi_matrix())
    C.name = "pi [23,12]"
    return C


# ---------------------------------------------------------------------------
# GRS, alternant, Goppa


@dataclass
class SupportMultiplier:
    field: Field
    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=np.int64)
        self.y = np.asarray(self.y, dtype=np.int64)
        if self.x.shape != self.y.shape or self.x.ndim != 1:
            raise CodeError("support and multiplier must be vectors of equal length")
        if len(np.unique(self.x)) != len(self.x):
            raise CodeError("repeated support entries")
        if np.any(self.y == 0):
            raise CodeError("zero multiplier entry")

    @property
    def n(self) -> int:
        return len(self.x)


def grs_rows(sm: SupportMultiplier, k: int) -> np.ndarray:
    F = sm.field
    rows = np.zeros((k, sm.n), dtype=np.int64)
    cur = sm.y.copy()
    for i in range(k):
        rows[i] = cur
        cur = F.mul(cur, sm.x)
    return rows


def grs_code(sm: SupportMultiplier, k: int) -> LinearCode:
    if k > sm.n:
        raise CodeError("k exceeds the length")
    C = LinearCode(sm.field, grs_rows(sm, k))
    C.name = f"GRS [{sm.n},{k}]"
    return C


def dual_alternant_code(sm: SupportMultiplier, t: int, emb: SubfieldEmbedding):
    """Row space over GF(q) of the subfield expansions of the rows y x^j, j < t."""
    if sm.field != emb.big:
        raise CodeError("support lives outside the big field of the embedding")
    if emb.m * t > sm.n:
        raise CodeError("mt exceeds n")
    rows = grs_rows(sm, t)
    ex = emb.expand(rows)  # t x n x m
    H = np.transpose(ex, (0, 2, 1)).reshape(t * emb.m, sm.n)
    C = LinearCode(emb.small, H, allow_rank_deficient=True)
    C.name = f"Alt-dual [{sm.n},{C.k}]"
    return C, C.k == emb.m * t


def dual_goppa_code(x, g, emb: SubfieldEmbedding):
    F = emb.big
    gx = poly_eval(F, g, np.asarray(x, dtype=np.int64))
    if np.any(gx == 0):
        raise CodeError("root in support")
    sm = SupportMultiplier(F, x, F.inv(gx))
    C, proper = dual_alternant_code(sm, len(g) - 1, emb)
    C.name = f"Goppa-dual [{C.n},{C.k}]"
    return C, proper


@dataclass
class FamilySpec:
    family: str  # "alt_dual" or "goppa_dual"
    q: int
    m: int
    t: int
    n: Optional[int] = None
    goppa_mode: str = "irr"

    def __post_init__(self):
        self.family = self.family.replace("-", "_")
        if self.family not in ("alt_dual", "goppa_dual"):
            raise CodeError(f"unknown family {self.family}")
        if self.n is None:
            self.n = self.q**self.m
        if self.n > self.q**self.m or self.t < 1 or self.m * self.t > self.n:
            raise CodeError("need n <= q^m, t >= 1 and mt <= n")
        if self.goppa_mode not in ("irr", "sqfr", "any"):
            raise CodeError(f"unknown Goppa mode {self.goppa_mode}")

    @property
    def k(self) -> int:
        return self.m * self.t

    def fields(self):
        small = field_of_order(self.q)
        big = make_field(small.p, small.a * self.m)
        return small, big, SubfieldEmbedding(small, big)


def sample_support(big: Field, n: int, rng) -> np.ndarray:
    return rng.permutation(big.q)[:n].astype(np.int64)


def sample_family_member(spec: FamilySpec, rng, max_tries: int = 1000):
    """Draw a proper member; returns (code, info) where info records the draw."""
    small, big, emb = spec.fields()
    for attempt in range(max_tries):
        x = sample_support(big, spec.n, rng)
        if spec.family == "alt_dual":
            y = big.random(rng, size=spec.n, nonzero=True)
            C, proper = dual_alternant_code(SupportMultiplier(big, x, y), spec.t, emb)
            info = {"x": x, "y": y}
        else:
            g = find_irreducible(big, spec.t, rng, mode=spec.goppa_mode)
            if np.any(poly_eval(big, g, x) == 0):
                continue
            C, proper = dual_goppa_code(x, g, emb)
            info = {"x": x, "g": g}
        if proper:
            info["retries"] = attempt
            return C, info
    raise CodeError("no proper family member found")


# ---------------------------------------------------------------------------
# shortening and puncturing


def shorten(C: LinearCode, S) -> LinearCode:
    """Codewords vanishing on S, with S deleted.  Dimension is k - rank(G_S)."""
    S = sorted(set(int(s) for s in S))
    keep = [j for j in range(C.n) if j not in set(S)]
    if not S:
        return LinearCode(C.field, C.G.copy())
    L = left_kernel_array(C.field, C.G[:, S])
    if L.shape[0] == 0:
        return LinearCode(C.field, np.zeros((0, len(keep)), dtype=np.int64))
    from .linalg import matmul_array

    sub = matmul_array(C.field, L, C.G)[:, keep]
    out = LinearCode(C.field, sub, allow_rank_deficient=True)
    out.flags = {"expected_k": C.k - len(S), "excess_dimension": out.k > C.k - len(S)}
    return out


def puncture(C: LinearCode, S) -> LinearCode:
    S = set(int(s) for s in S)
    keep = [j for j in range(C.n) if j not in S]
    return LinearCode(C.field, C.G[:, keep], allow_rank_deficient=True)


def projectivize(C: LinearCode) -> LinearCode:
    """Drop zero columns and all but the first of each class of proportional columns."""
    F = C.field
    seen = set()
    keep = []
    for j in range(C.n):
        col = C.G[:, j]
        nz = np.nonzero(col)[0]
        if not len(nz):
            continue
        norm = tuple(int(v) for v in F.mul(F.inv(int(col[nz[0]])), col))
        if norm in seen:
            continue
        seen.add(norm)
        keep.append(j)
    return LinearCode(F, C.G[:, keep], allow_rank_deficient=True)


# ---------------------------------------------------------------------------
# distances


@dataclass
class DistanceProfile:
    d: int
    d_dual: int
    weights: Optional[dict] = None


def _binary_packed_rows(C: LinearCode) -> np.ndarray:
    return _pack_bits(C.G.astype(np.uint8))


def weight_distribution(C: LinearCode) -> list:
    """Full weight distribution by enumerating all q^k codewords."""
    if C.q**C.k > ENUM_LIMIT:
        raise CodeError(f"{C.q}^{C.k} codewords exceed the enumeration budget")
    if C.q == 2:
        if C.k == 0:
            return [1] + [0] * C.n
        return [int(v) for v in K.gf2_weight_distribution(_binary_packed_rows(C), C.n)]
    F = C.field
    dist = [0] * (C.n + 1)
    msgs = np.array(list(itertools.product(range(F.q), repeat=C.k)), dtype=np.int64).reshape(-1, C.k)
    for start in range(0, len(msgs), 1 << 14):
        m = msgs[start : start + (1 << 14)]
        cw = np.zeros((len(m), C.n), dtype=np.int64)
        for i in range(C.k):
            cw = F.add(cw, F.mul(m[:, i : i + 1], C.G[i][None, :]))
        for w, c in zip(*np.unique((cw != 0).sum(axis=1), return_counts=True)):
            dist[int(w)] += int(c)
    return dist


def macwilliams(dist: list, n: int, q: int, k: int) -> list:
    """Dual weight distribution via Krawtchouk polynomials (exact integers)."""
    out = []
    size = q**k
    for w in range(n + 1):
        s = 0
        for i, a in enumerate(dist):
            if a:
                kw = sum((-1) ** j * (q - 1) ** (w - j) * comb(i, j) * comb(n - i, w - j) for j in range(w + 1))
                s += a * kw
        if s % size:
            raise ArithmeticError("MacWilliams transform is not integral")
        out.append(s // size)
    return out


def _dependent_columns_binary(cols: np.ndarray, w: int) -> bool:
    """True if some nonempty set of at most w columns (given as ints) XORs to zero."""
    n = len(cols)
    h1 = w // 2
    h2 = w - h1
    vals1 = {}
    for size in range(0, h1 + 1):
        for S in itertools.combinations(range(n), size):
            v = 0
            for j in S:
                v ^= int(cols[j])
            vals1[v] = vals1.get(v, 0) + 1
    for size in range(0, h2 + 1):
        for S in itertools.combinations(range(n), size):
            v = 0
            for j in S:
                v ^= int(cols[j])
            cnt = vals1.get(v, 0) - (1 if size <= h1 else 0)
            if cnt > 0:
                return True
    return False


def dual_distance_leq(C: LinearCode, w: int, count: bool = False, budget: int = 5 * 10**7):
    """Whether some <= w columns of G are dependent, i.e. d(C^perp) <= w.

    With count=True also returns the number of dual codewords of weight exactly w
    counted up to scalars (dependencies with full support on w columns).
    """
    n, F = C.n, C.field
    if comb(n, min(w, n)) > budget:
        raise CodeError("combinatorial budget exceeded")
    G = C.G
    if C.q == 2 and C.k <= 62 and not count:
        cols = np.zeros(n, dtype=np.int64)
        for i in range(C.k):
            cols |= G[i] << i
        return _dependent_columns_binary(cols, w)
    found = False
    A_w = 0
    for size in range(1, w + 1):
        for S in itertools.combinations(range(n), size):
            sub = G[:, list(S)]
            ker = right_nullspace_array(F, sub) if C.k else np.eye(size, dtype=np.int64)
            if ker.shape[0] == 0:
                continue
            if size == w and count:
                A_w += _full_support_projective(F, ker)
            if _has_full_support(F, ker):
                found = True
                if not count:
                    return True
    return (found, A_w) if count else found


def _kernel_vectors(F: Field, ker: np.ndarray):
    dim = ker.shape[0]
    for coeffs in itertools.product(range(F.q), repeat=dim):
        if any(coeffs):
            v = np.zeros(ker.shape[1], dtype=np.int64)
            for c, row in zip(coeffs, ker):
                if c:
                    v = F.add(v, F.mul(c, row))
            yield v


def _has_full_support(F, ker) -> bool:
    if ker.shape[0] == 1:
        return bool(np.all(ker[0] != 0))
    return any(np.all(v != 0) for v in _kernel_vectors(F, ker))


def _full_support_projective(F, ker) -> int:
    if ker.shape[0] == 1:
        return int(np.all(ker[0] != 0))
    return sum(1 for v in _kernel_vectors(F, ker) if np.all(v != 0)) // (F.q - 1)


def min_distance(C: LinearCode, cap: Optional[int] = None):
    """Exact minimum distance, or the string '>=cap' when cap is given and no
    codeword of weight < cap exists."""
    if C.k == 0:
        raise CodeError("zero code has no minimum distance")
    if cap is None:
        if C.q**C.k > ENUM_LIMIT:
            raise CodeError("instance too large for enumeration; supply a cap")
        if C.q == 2:
            return int(K.gf2_min_weight(_binary_packed_rows(C), C.n))
        dist = weight_distribution(C)
        return next(i for i in range(1, C.n + 1) if dist[i])
    D = C.dual()
    for w in range(1, cap):
        if dual_distance_leq(D, w):
            return w
    return f">={cap}"


def dual_distance(C: LinearCode, cap: Optional[int] = None):
    if C.k == C.n:
        raise CodeError("full space has no dual distance")
    if cap is None and C.q**C.k <= ENUM_LIMIT:
        dist = weight_distribution(C)
        dd = macwilliams(dist, C.n, C.q, C.k)
        return next(i for i in range(1, C.n + 1) if dd[i])
    for w in range(1, (cap or C.n + 1)):
        if dual_distance_leq(C, w):
            return w
    return f">={cap}"


def distance_profile(C: LinearCode, weights=()) -> DistanceProfile:
    dist = weight_distribution(C)
    dd = macwilliams(dist, C.n, C.q, C.k)
    d = next(i for i in range(1, C.n + 1) if dist[i])
    d_dual = next((i for i in range(1, C.n + 1) if dd[i]), C.n + 1)
    wmap = {int(i): dist[int(i)] for i in weights} if weights else None
    return DistanceProfile(d, d_dual, wmap)


# ---------------------------------------------------------------------------
# powers of codes


def monomials(k: int, r: int):
    """Degree-r monomials in k variables as sorted index tuples, grlex with X_0 > X_1 > ..."""
    return list(itertools.combinations_with_replacement(range(k), r))


def power_matrix(C: LinearCode, r: int) -> np.ndarray:
    F = C.field
    mons = monomials(C.k, r)
    out = np.zeros((len(mons), C.n), dtype=np.int64)
    for idx, m in enumerate(mons):
        v = C.G[m[0]].copy()
        for i in m[1:]:
            v = F.mul(v, C.G[i])
        out[idx] = v
    return out


def power_dims(C: LinearCode, r_max: int, budget: int = 2 * 10**7):
    """[dim C^<1>, ..., dim C^<r_max>] and the regularity (first r with full dimension, or None)."""
    dims = []
    reg = None
    for r in range(1, r_max + 1):
        if comb(C.k + r - 1, r) * C.n > budget:
            raise CodeError(f"degree {r} evaluation matrix exceeds the budget")
        d = rank_array(C.field, power_matrix(C, r)) if C.k else 0
        dims.append(d)
        if reg is None and d == C.n:
            reg = r
    return dims, reg


def square_dimension(C: LinearCode) -> int:
    return rank_array(C.field, power_matrix(C, 2))


# ---------------------------------------------------------------------------
# random codes


def random_code(n: int, k: int, q: int, rng, field: Optional[Field] = None) -> LinearCode:
    F = field or field_of_order(q)
    for _ in range(10**6):
        G = F.random(rng, size=(k, n))
        if rank_array(F, G) == k:
            return LinearCode(F, G)
    raise CodeError("rejection cap exceeded")


def random_code_conditioned(n, k, q, d, d_dual, rng, max_draws: int = 10**6, field=None):
    """Uniform [n,k]_q code conditioned on the exact pair (d, d_dual); returns (code, draws)."""
    F = field or field_of_order(q)
    for draw in range(1, max_draws + 1):
        G = F.random(rng, size=(k, n))
        if q == 2:
            packed = _pack_bits(G.astype(np.uint8))
            if rank_array(F, G) != k:
                continue
            dist = [int(v) for v in K.gf2_weight_distribution(packed, n)]
        else:
            if rank_array(F, G) != k:
                continue
            dist = weight_distribution(LinearCode(F, G))
        dmin = next(i for i in range(1, n + 1) if dist[i])
        if dmin != d:
            continue
        dd = macwilliams(dist, n, q, k)
        ddual = next((i for i in range(1, n + 1) if dd[i]), n + 1)
        if ddual == d_dual:
            return LinearCode(F, G), draw
    raise CodeError("rejection cap exceeded")
