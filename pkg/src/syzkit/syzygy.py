"""Linear strand of the minimal resolution of a code's ideal of quadrics.

B_2 is the canonical left kernel of the squared matrix, B_3 the canonical left
kernel of the degree 3 Macaulay matrix, and B_r (r >= 4) the canonical left
kernel of the blockwise Macaulay matrix built from B_{r-1} and B_{r-2}.

Coordinates of B_r for r >= 3 are pairs (a, s): a variable index and a row of
B_{r-1}, flattened as a * rows(B_{r-1}) + s.  Coordinates of B_2 are the
degree 2 monomials X_a X_b (a <= b) in grlex order with X_0 > X_1 > ...

The explicit matrices are available for inspection and testing.  The default
pipeline never materializes M_r: it exploits the block structure of the
kernel equations and a random sparse compression whose output is checked (and
repaired) against the exact equations, so the result is always exact.
"""

from __future__ import annotations

import logging
import os
import time
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Optional

import numpy as np

from .codes import LinearCode, power_matrix, monomials
from .gf import Field
from .linalg import (
    MatrixFq,
    backend_for,
    canonical_rows,
    left_kernel_array,
    matmul_array,
    rank_array,
    right_nullspace_array,
)

log = logging.getLogger(__name__)

DEFAULT_CAP_GB = 4.0
MARGIN = 16
SPREAD = 3


class SyzygyError(RuntimeError):
    pass


class BudgetExceeded(SyzygyError):
    def __init__(self, degree, predicted, cap):
        super().__init__(f"degree {degree} step needs about {predicted / 2**30:.2f} GB, cap is {cap / 2**30:.2f} GB")
        self.degree = degree
        self.predicted = predicted
        self.cap = cap


def memory_cap_bytes(cap_gb: Optional[float] = None) -> int:
    if cap_gb is None:
        cap_gb = float(os.environ.get("SYZKIT_MEM_CAP_GB", DEFAULT_CAP_GB))
    return int(cap_gb * 2**30)


# ---------------------------------------------------------------------------
# data types


@dataclass
class SyzygyBasis:
    """Canonical (RREF) basis B_r; rows are syzygies, columns are coordinates."""

    field: Field
    degree: int
    k: int
    matrix: np.ndarray
    prev_rows: int  # rows of B_{r-1}; for degree 2 this is unused and set to 0

    @property
    def rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def cols(self) -> int:
        return self.matrix.shape[1]

    def coordinate_labels(self) -> list:
        if self.degree == 2:
            return [f"X{a}X{b}" for a, b in monomials(self.k, 2)]
        return [f"X{a}*s{s}" for a in range(self.k) for s in range(self.prev_rows)]

    def as_matrix(self) -> MatrixFq:
        return MatrixFq(self.field, self.matrix.astype(np.int64), col_labels=self.coordinate_labels())


@dataclass
class StepInfo:
    degree: int
    shape: tuple  # shape of M_r
    reduced_shape: tuple  # shape of the matrix actually eliminated
    seconds: float
    residual_rank: int = 0


@dataclass
class BettiStrand:
    n: int
    k: int
    q: int
    betas: list  # betas[i] = beta_{i+1, i+2}
    computed_up_to: int  # D such that beta_{D-1,D} is known
    target: int
    r_max: Optional[int] = None
    steps: list = dc_field(default_factory=list)
    bases: dict = dc_field(default_factory=dict)
    refused: Optional[str] = None

    @property
    def complete(self) -> bool:
        return self.computed_up_to >= self.target

    def beta(self, r: int) -> int:
        """beta_{r-1,r}; zero beyond the point where the strand vanished."""
        if r < 2:
            raise ValueError("strand starts at r = 2")
        if r - 2 < len(self.betas):
            return self.betas[r - 2]
        if self.betas and 0 in self.betas:
            return 0
        if r > self.k:
            return 0
        raise SyzygyError(f"beta_{{{r - 1},{r}}} not computed")


@dataclass
class BettiDiagram:
    n: int
    k: int
    row1: list  # beta_{i,i+1}, i = 1..k-1
    row2: list  # beta_{i,i+2}, i = 1..k-1
    regularity2: bool = True

    def beta(self, i: int, j: int) -> int:
        if i == 0:
            return 1 if j == 0 else 0
        if 1 <= i <= self.k - 1:
            if j == i + 1:
                return self.row1[i - 1]
            if j == i + 2:
                return self.row2[i - 1]
        return 0

    def format(self) -> str:
        cols = ["    " + " ".join(f"{i:>6}" for i in range(self.k))]
        fmt = lambda v: f"{v:>6}" if v else f"{'-':>6}"
        cols.append("0:  " + " ".join([f"{1:>6}"] + [fmt(0)] * (self.k - 1)))
        cols.append("1:  " + " ".join([fmt(0)] + [fmt(v) for v in self.row1]))
        cols.append("2:  " + " ".join([fmt(0)] + [fmt(v) for v in self.row2]))
        return "\n".join(cols)


# ---------------------------------------------------------------------------
# formulas


def phi_index(n: int, k: int, r: int) -> int:
    """ind(phi_r) = (k(k+1)/r - n) * C(k-1, r-2), computed in integers."""
    if r < 2:
        raise ValueError("r must be >= 2")
    num = (k * (k + 1) - n * r) * comb(k - 1, r - 2)
    if num % r:
        raise ArithmeticError("non-integral index")
    val = (r - 1) * comb(k + 1, r) - n * comb(k - 1, r - 2)
    assert val == num // r
    return val


def grossier_bound(k: int, prev: int) -> int:
    return (k - 1) * prev


def defect(n: int, k: int, r: int, beta: int) -> int:
    d = beta - max(phi_index(n, k, r), 0)
    if d < 0:
        raise SyzygyError(f"negative defect at r={r}: beta={beta} below the index")
    return d


# ---------------------------------------------------------------------------
# explicit matrices


def mono2_index(k: int, a, b):
    """Position of X_a X_b (a <= b) in the grlex list of degree 2 monomials."""
    return a * k - a * (a - 1) // 2 + (b - a)


def _mono3_table(k: int) -> np.ndarray:
    T = np.zeros((k, k, k), dtype=np.int64)
    for idx, (a, b, c) in enumerate(monomials(k, 3)):
        for x, y, z in ((a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)):
            T[x, y, z] = idx
    return T


def squared_matrix(C: LinearCode) -> MatrixFq:
    lab = [f"X{a}X{b}" for a, b in monomials(C.k, 2)]
    return MatrixFq(C.field, power_matrix(C, 2), row_labels=lab)


def compute_B2(C: LinearCode) -> SyzygyBasis:
    M2 = power_matrix(C, 2)
    K = left_kernel_array(C.field, M2) if M2.shape[0] else np.zeros((0, 0), dtype=np.int64)
    K = K.reshape(-1, M2.shape[0])
    return SyzygyBasis(C.field, 2, C.k, K.astype(C.field.dtype), 0)


def _m3_entries(B2: SyzygyBasis):
    """(rows, cols, vals) of the nonzero entries of M_3."""
    k, beta = B2.k, B2.rows
    T3 = _mono3_table(k)
    mons = np.array(monomials(k, 2), dtype=np.int64).reshape(-1, 2)
    i_arr, m_arr = np.nonzero(B2.matrix)
    vals = B2.matrix[i_arr, m_arr].astype(np.int64)
    rows, cols = [], []
    for a in range(k):
        rows.append(a * beta + i_arr)
        cols.append(T3[a, mons[m_arr, 0], mons[m_arr, 1]])
    if not rows:
        e = np.zeros(0, dtype=np.int64)
        return e, e, e
    return np.concatenate(rows), np.concatenate(cols), np.tile(vals, k)


def macaulay_deg3(B2: SyzygyBasis) -> MatrixFq:
    """k*beta_{1,2} x C(k+2,3); row (X_a, q) has q_M at column X_a * M."""
    if B2.degree != 2:
        raise SyzygyError("degree 3 Macaulay matrix needs B_2")
    F, k = B2.field, B2.k
    R, C = k * B2.rows, comb(k + 2, 3)
    M = np.zeros((R, C), dtype=np.int64)
    rows, cols, vals = _m3_entries(B2)
    for r, c, v in zip(rows, cols, vals):
        M[r, c] = F.add(int(M[r, c]), int(v))
    rl = [f"X{a}*q{i}" for a in range(k) for i in range(B2.rows)]
    cl = ["".join(f"X{v}" for v in m) for m in monomials(k, 3)]
    return MatrixFq(F, M, row_labels=rl, col_labels=cl)


def blockwise_macaulay(Bp: SyzygyBasis, Bpp: SyzygyBasis) -> MatrixFq:
    """Row (X_a, s) carries s_{X_b,t} at column (X_a X_b, t)."""
    k = Bp.k
    if Bp.degree < 3 or Bpp.degree != Bp.degree - 1:
        raise SyzygyError("blockwise Macaulay matrix needs B_{r-1}, B_{r-2} with r >= 4")
    b0, b1 = Bpp.rows, Bp.rows
    if Bp.cols != k * b0 or Bp.prev_rows != b0:
        raise SyzygyError("label mismatch between B_{r-1} and B_{r-2}")
    F = Bp.field
    ncols = comb(k + 1, 2) * b0
    M = np.zeros((k * b1, ncols), dtype=np.int64)
    S = Bp.matrix.astype(np.int64)
    t = np.arange(b0)
    for a in range(k):
        for b in range(k):
            lo, hi = min(a, b), max(a, b)
            c0 = mono2_index(k, lo, hi) * b0
            blk = S[:, b * b0 : (b + 1) * b0]
            M[a * b1 : (a + 1) * b1, c0 + t] = F.add(M[a * b1 : (a + 1) * b1, c0 + t], blk)
    rl = [f"X{a}*s{s}" for a in range(k) for s in range(b1)]
    cl = [f"X{a}X{b}*t{j}" for a, b in monomials(k, 2) for j in range(b0)]
    return MatrixFq(F, M, row_labels=rl, col_labels=cl)


# ---------------------------------------------------------------------------
# structured kernel steps


def _add_packed(be, A, B):
    if hasattr(be, "addt"):
        return be.addt[A, B]
    return A ^ B


def _sparse_targets(F: Field, rng, ncols: int, nrows: int, w: int):
    """Random sparse map: each of ncols columns goes to w distinct rows with nonzero weights."""
    w = min(w, nrows)
    tgt = rng.integers(0, nrows, size=(ncols, w))
    for j in range(1, w):
        while True:
            clash = np.zeros(ncols, dtype=bool)
            for i in range(j):
                clash |= tgt[:, j] == tgt[:, i]
            if not clash.any():
                break
            tgt[clash, j] = rng.integers(0, nrows, size=int(clash.sum()))
    coef = F.random(rng, size=(ncols, w), nonzero=True).astype(np.int64) if F.q > 2 else np.ones((ncols, w), np.int64)
    return tgt.astype(np.int64), coef


def _step3(B2: SyzygyBasis, rng) -> tuple[np.ndarray, StepInfo]:
    F, k, beta = B2.field, B2.k, B2.rows
    R, C = k * beta, comb(k + 2, 3)
    t0 = time.perf_counter()
    if R == 0:
        return np.zeros((0, 0), np.int64), StepInfo(3, (0, C), (0, 0), 0.0)
    be = backend_for(F)
    rows, cols, vals = _m3_entries(B2)
    exact = C <= R + MARGIN
    if exact:
        Np = be.zeros(C, R)
        be.add_entries(Np, cols, rows, vals)
        nr = C
    else:
        nr = R + MARGIN
        tgt, coef = _sparse_targets(F, rng, C, nr, SPREAD)
        Np = be.zeros(nr, R)
        w = tgt.shape[1]
        be.add_entries(
            Np,
            tgt[cols].reshape(-1),
            np.repeat(rows, w),
            F.mul(coef[cols], vals[:, None]).reshape(-1),
        )
    piv = be.rref(Np, R)
    Z = be.nullspace(Np, piv, R)
    del Np
    res_rank = 0
    if not exact and Z.shape[0]:
        # exact check: E^T = M_3^T Z^T
        ZT = be.pack(Z.T.copy())
        ET = be.zeros(C, Z.shape[0])
        be.scatter_rows(ET, cols, ZT, rows, vals)
        if not be.is_zero(ET):
            E = be.unpack(ET, Z.shape[0])
            E = E[np.any(E != 0, axis=1)]
            U = right_nullspace_array(F, E)
            res_rank = Z.shape[0] - U.shape[0]
            Z = matmul_array(F, U, Z) if U.shape[0] else np.zeros((0, R), np.int64)
    K = canonical_rows(F, Z) if Z.shape[0] else Z.reshape(0, R)
    info = StepInfo(3, (R, C), (nr, R), time.perf_counter() - t0, res_rank)
    return K, info


def _step_block(Bp: SyzygyBasis, b0: int, r: int, rng, cap: Optional[int] = None) -> tuple[np.ndarray, StepInfo]:
    """Canonical left kernel of the degree r blockwise Macaulay matrix.

    Unknowns are lambda = (lambda_0, ..., lambda_{k-1}), one block of length
    b1 = rows(B_{r-1}) per variable.  With S_a the a-th column block of B_{r-1},
    the equations are lambda_a S_a = 0 and lambda_a S_b + lambda_b S_a = 0 (a < b).
    The first family is solved block by block, the second on the reduced
    unknowns after a random sparse compression of its columns.
    """
    F, k = Bp.field, Bp.k
    b1 = Bp.rows
    R = k * b1
    ncols_full = comb(k + 1, 2) * b0
    t0 = time.perf_counter()
    if b1 == 0 or b0 == 0:
        return np.zeros((0, R), np.int64), StepInfo(r, (R, ncols_full), (0, 0), 0.0)
    be = backend_for(F)
    B = Bp.matrix

    Y, offs = [], [0]
    for a in range(k):
        Ya = left_kernel_array(F, B[:, a * b0 : (a + 1) * b0]).reshape(-1, b1)
        Y.append(Ya.astype(F.dtype))
        offs.append(offs[-1] + Ya.shape[0])
    L = offs[-1]
    if L == 0:
        return np.zeros((0, R), np.int64), StepInfo(r, (R, ncols_full), (0, 0), time.perf_counter() - t0)

    npair = comb(k, 2)
    npc = npair * b0
    exact = npc <= L + MARGIN
    if cap is not None:
        nr_ = npc if exact else L + MARGIN
        need = be.nbytes(nr_, L) + be.nbytes(k * b0, b1) + be.nbytes(nr_, b1)
        if need > cap:
            raise BudgetExceeded(r, need, cap)
    pair_of = np.zeros((k, k), dtype=np.int64)
    for p, (a, b) in enumerate((a, b) for a in range(k) for b in range(a + 1, k)):
        pair_of[a, b] = pair_of[b, a] = p
    if exact:
        nr = npc
        tgt = np.arange(npc, dtype=np.int64)[:, None]
        coef = np.ones((npc, 1), np.int64)
    else:
        nr = L + MARGIN
        tgt, coef = _sparse_targets(F, rng, npc, nr, SPREAD)
    w = tgt.shape[1]

    BT = np.concatenate([be.pack(B[:, a * b0 : (a + 1) * b0].T.copy()) for a in range(k)])  # (k*b0) x b1
    Np = be.zeros(nr, L)
    tt = np.arange(b0, dtype=np.int64)
    for a in range(k):
        la = Y[a].shape[0]
        if la == 0:
            continue
        dst, src, cf = [], [], []
        for b in range(k):
            if b == a:
                continue
            pc = pair_of[a, b] * b0 + tt
            dst.append(tgt[pc].reshape(-1))
            src.append(np.repeat(b * b0 + tt, w))
            cf.append(coef[pc].reshape(-1))
        Ta = be.zeros(nr, b1)
        be.scatter_rows(Ta, np.concatenate(dst), BT, np.concatenate(src), np.concatenate(cf))
        blk = be.matmul(Ta, be.pack(Y[a].T.copy()), b1)
        be.place(Np, blk, la, offs[a])
        del Ta, blk
    piv = be.rref(Np, L)
    z = L - len(piv)
    if cap is not None:
        need = be.nbytes(Np.shape[0], L) + (1 if F.q == 2 else 8) * z * L + 3 * be.nbytes(z, R) + z * R
        if not exact:
            need += k * be.nbytes(k * b0, z)
        if need > cap:
            raise BudgetExceeded(r, need, cap)
    Z = be.nullspace(Np, piv, L)
    del Np

    z = Z.shape[0]
    Zb = [Z[:, offs[a] : offs[a + 1]] for a in range(k)]
    del Z
    lam = be.zeros(z, R)
    for a in range(k):
        if offs[a + 1] > offs[a] and z:
            blk = be.matmul(be.pack(Zb[a]), be.pack(Y[a]), Zb[a].shape[1])
            be.place(lam, blk, b1, a * b1)

    res_rank = 0
    if not exact and z:
        # exact check of the pair equations on lambda_a^T = Y_a^T Z_a^T
        Wt = []
        for a in range(k):
            if offs[a + 1] > offs[a]:
                lt = be.matmul(be.pack(Y[a].T.copy()), be.pack(Zb[a].T.copy()), Zb[a].shape[1])
                Wt.append(be.matmul(BT, lt, b1))
            else:
                Wt.append(be.zeros(k * b0, z))
        bad = []
        for a in range(k):
            for b in range(a + 1, k):
                D = _add_packed(be, Wt[a][b * b0 : (b + 1) * b0], Wt[b][a * b0 : (a + 1) * b0])
                if not be.is_zero(D):
                    E = be.unpack(D, z)
                    bad.append(E[np.any(E != 0, axis=1)])
        del Wt
        if bad:
            E = np.vstack(bad)
            U = right_nullspace_array(F, E)
            res_rank = z - U.shape[0]
            lam = be.matmul(be.pack(U), lam, z) if U.shape[0] else be.zeros(0, R)
            z = U.shape[0]
    piv = be.rref(lam, R) if z else np.zeros(0, np.int64)
    K = _unpack_rows(be, lam, len(piv), R, F.dtype)
    info = StepInfo(r, (R, ncols_full), (nr, L), time.perf_counter() - t0, res_rank)
    return K, info


def _unpack_rows(be, S, nrows: int, cols: int, dtype, chunk: int = 512) -> np.ndarray:
    out = np.zeros((nrows, cols), dtype=dtype)
    for i in range(0, nrows, chunk):
        out[i : i + chunk] = be.unpack(S[i : min(nrows, i + chunk)], cols)
    return out


def _explicit_step(Bp: SyzygyBasis, Bpp: Optional[SyzygyBasis], r: int):
    t0 = time.perf_counter()
    M = macaulay_deg3(Bp) if r == 3 else blockwise_macaulay(Bp, Bpp)
    if M.rows == 0:
        K = np.zeros((0, 0), np.int64)
    else:
        K = left_kernel_array(Bp.field, M.data).reshape(-1, M.rows)
    return K, StepInfo(r, M.shape, M.shape, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# budget prediction


def predict_step_bytes(F: Field, n: int, k: int, r: int, prev: int, prev2: int, regular2: bool) -> int:
    be = backend_for(F)
    if r == 2:
        m = comb(k + 1, 2)
        return 4 * 8 * m * n + be.nbytes(m, n)
    R = k * prev
    if r == 3:
        C = comb(k + 2, 3)
        elim = be.nbytes(min(C, R + MARGIN), R)
    else:
        # inputs and the per-variable kernels; the elimination itself is checked
        # once the number of reduced unknowns is known
        item = np.dtype(F.dtype).itemsize
        return be.nbytes(k * prev2, prev) + item * k * prev * prev + 8 * prev * prev2
    if regular2 and phi_index(n, k, r) > 0:
        pred = phi_index(n, k, r)
    else:
        pred = min(grossier_bound(k, prev), R)
    return elim + 8 * min(R + MARGIN, R) * R + 2 * be.nbytes(pred, R) + pred * R + be.nbytes(comb(k + 2, 3), pred)


# ---------------------------------------------------------------------------
# the strand


def linear_strand(
    C: LinearCode,
    D: int,
    cap_gb: Optional[float] = None,
    method: str = "structured",
    keep_bases: bool = False,
    seed: int = 0,
    on_basis=None,
) -> BettiStrand:
    """beta_{1,2}, ..., beta_{D-1,D}, stopping early once a term vanishes.

    Degrees above k are filled with zeros without computation (the resolution
    has length at most k).  If the predicted memory of a step exceeds the cap,
    the returned strand is partial and carries a refusal message.
    """
    if D < 2:
        raise ValueError("target degree must be at least 2")
    if method not in ("structured", "explicit"):
        raise ValueError(f"unknown method {method}")
    F, n, k = C.field, C.n, C.k
    cap = memory_cap_bytes(cap_gb)
    rng = np.random.default_rng(seed)
    strand = BettiStrand(n=n, k=k, q=F.q, betas=[], computed_up_to=1, target=D)

    def finish():
        if strand.betas and strand.betas[-1] == 0:
            strand.betas += [0] * (D - 1 - len(strand.betas))
            strand.computed_up_to = D
        elif strand.computed_up_to >= k and D > k:
            strand.betas += [0] * (D - 1 - len(strand.betas))
            strand.computed_up_to = D
        strand.r_max = r_max_from_betas(strand.betas, strand.computed_up_to)
        return strand

    def accept(basis, info):
        strand.betas.append(basis.rows)
        strand.computed_up_to = basis.degree
        strand.steps.append(info)
        if keep_bases:
            strand.bases[basis.degree] = basis
        if on_basis is not None:
            on_basis(basis)

    pred = predict_step_bytes(F, n, k, 2, 0, 0, False)
    if pred > cap:
        strand.refused = str(BudgetExceeded(2, pred, cap))
        return finish()
    t0 = time.perf_counter()
    B2 = compute_B2(C)
    accept(B2, StepInfo(2, (comb(k + 1, 2), n), (comb(k + 1, 2), n), time.perf_counter() - t0))
    regular2 = comb(k + 1, 2) - B2.rows == n
    prev2, prev = None, B2
    for r in range(3, min(D, k) + 1):
        if prev.rows == 0:
            break
        b0 = prev2.rows if prev2 is not None else 0
        pred = predict_step_bytes(F, n, k, r, prev.rows, b0, regular2)
        if pred > cap:
            strand.refused = str(BudgetExceeded(r, pred, cap))
            log.warning("strand stopped: %s", strand.refused)
            break
        try:
            K, info = _run_step(method, prev, prev2, b0, r, rng, cap)
        except BudgetExceeded as exc:
            strand.refused = str(exc)
            log.warning("strand stopped: %s", strand.refused)
            break
        K = K.reshape(-1, k * prev.rows)
        basis = SyzygyBasis(F, r, k, K.astype(F.dtype), prev.rows)
        log.info("beta_{%d,%d} = %d  (%.2fs)", r - 1, r, basis.rows, info.seconds)
        accept(basis, info)
        prev2, prev = prev, basis
    return finish()


def _run_step(method, prev, prev2, b0, r, rng, cap):
    if method == "explicit":
        return _explicit_step(prev, prev2, r)
    if r == 3:
        return _step3(prev, rng)
    return _step_block(prev, b0, r, rng, cap)


def r_max_from_betas(betas: list, computed_up_to: int):
    """max{r : beta_{r-1,r} > 0}; 1 if beta_{1,2} = 0; '>=D' if not resolved."""
    for i, b in enumerate(betas):
        if b == 0:
            return i + 1
    if not betas:
        return None
    return f">={computed_up_to}"


def r_max(C: LinearCode, cap: int, cap_gb: Optional[float] = None):
    s = linear_strand(C, cap + 1, cap_gb=cap_gb)
    if s.refused and not (s.betas and s.betas[-1] == 0):
        return f">={s.computed_up_to}" if s.betas and s.betas[-1] > 0 else None
    if isinstance(s.r_max, int):
        return s.r_max
    return f">={cap}"


# ---------------------------------------------------------------------------
# regularity 2 diagram


def is_regularity2(C: LinearCode) -> bool:
    return rank_array(C.field, power_matrix(C, 2)) == C.n


def betti_diagram_reg2(C: LinearCode, strand: Optional[BettiStrand] = None, **kw) -> BettiDiagram:
    n, k = C.n, C.k
    if not is_regularity2(C):
        raise SyzygyError("row 2 unavailable: regularity > 2")
    if strand is None:
        strand = linear_strand(C, k, **kw)
    if not strand.complete and not (strand.betas and strand.betas[-1] == 0):
        raise SyzygyError(f"strand only computed up to degree {strand.computed_up_to}")

    def b(r):
        return strand.beta(r) if r <= k else 0

    row1 = [b(i + 1) for i in range(1, k)]
    row2 = [b(r) - phi_index(n, k, r) for r in range(3, k + 2)]
    if any(v < 0 for v in row1 + row2):
        raise SyzygyError("negative Betti number: internal inconsistency")
    if row2[-1] != n - k:
        raise SyzygyError(f"beta_{{k-1,k+1}} = {row2[-1]} but n - k = {n - k}")
    return BettiDiagram(n, k, row1, row2)


def hilbert_betti_sums(n: int, k: int, dims: list) -> list:
    """Coefficients B_j of (1-z)^k H(z) with H(z) = 1 + sum_r dims[r-1] z^r,
    dims extended by its last value (valid once the powers have stabilized)."""
    top = k + 3
    H = [1] + [dims[min(r - 1, len(dims) - 1)] for r in range(1, top)]
    return [sum((-1) ** i * comb(k, i) * H[j - i] for i in range(0, min(j, k) + 1)) for j in range(top)]


def diagram_betti_sums(diag: BettiDiagram) -> list:
    top = diag.k + 3
    out = []
    for j in range(top):
        s = 0
        for i in range(0, j + 1):
            s += (-1) ** i * diag.beta(i, j)
        out.append(s)
    return out
