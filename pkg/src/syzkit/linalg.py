"""Dense exact linear algebra over a Field.

Matrices are exchanged as numpy int64 arrays of encoded field elements.  The
heavy lifting happens in packed layouts chosen per field (see _kernels); the
Backend classes convert between the two.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels as K
from .gf import Field, FieldError, field_of_order

ODD_TABLE_LIMIT = 1024


# ---------------------------------------------------------------------------
# backends


class Backend:
    """Packed storage plus the handful of primitives the syzygy code needs."""

    field: Field

    def zeros(self, rows: int, cols: int):
        raise NotImplementedError

    def pack(self, D: np.ndarray):
        raise NotImplementedError

    def unpack(self, S, cols: int) -> np.ndarray:
        raise NotImplementedError

    def rref(self, S, cols: int) -> np.ndarray:
        raise NotImplementedError

    def nullspace(self, S, pivots, cols: int) -> np.ndarray:
        raise NotImplementedError

    def matmul(self, A, B, inner: int):
        raise NotImplementedError

    def scatter_rows(self, T, dst, S, src, coef):
        raise NotImplementedError

    def add_entries(self, N, rows, cols, vals):
        raise NotImplementedError

    def place(self, dst, src, nsrc: int, offset: int):
        raise NotImplementedError

    def is_zero(self, S) -> bool:
        raise NotImplementedError

    def nbytes(self, rows: int, cols: int) -> int:
        raise NotImplementedError


def _pack_bits(D: np.ndarray) -> np.ndarray:
    rows, cols = D.shape
    W = max(1, (cols + 63) // 64)
    buf = np.zeros((rows, W * 64), dtype=np.uint8)
    buf[:, :cols] = D
    return np.packbits(buf, axis=1, bitorder="little").view(np.uint64).reshape(rows, W).copy()


def _unpack_bits(S: np.ndarray, cols: int) -> np.ndarray:
    rows = S.shape[0]
    if rows == 0:
        return np.zeros((0, cols), dtype=np.int64)
    b = np.unpackbits(np.ascontiguousarray(S).view(np.uint8).reshape(rows, -1), axis=1, bitorder="little")
    return b[:, :cols].astype(np.int64)


class GF2Backend(Backend):
    def __init__(self, field: Field):
        self.field = field

    def zeros(self, rows, cols):
        return np.zeros((rows, max(1, (cols + 63) // 64)), dtype=np.uint64)

    def pack(self, D):
        return _pack_bits(np.asarray(D).astype(np.uint8) & 1)

    def unpack(self, S, cols):
        return _unpack_bits(S, cols)

    def rref(self, S, cols):
        if S.shape[0] == 0 or cols == 0:
            return np.zeros(0, dtype=np.int64)
        return K.gf2_rref(S, cols)

    def nullspace(self, S, pivots, cols):
        return K.gf2_nullspace(S, pivots, cols)

    def matmul(self, A, B, inner):
        if inner == 0:
            return np.zeros((A.shape[0], B.shape[1]), dtype=np.uint64)
        return K.gf2_matmul(A, B, inner)

    def scatter_rows(self, T, dst, S, src, coef):
        K.gf2_scatter_rows(T, np.asarray(dst, np.int64), S, np.asarray(src, np.int64))

    def add_entries(self, N, rows, cols, vals):
        rows = np.asarray(rows, np.int64)
        cols = np.asarray(cols, np.int64)
        keep = np.asarray(vals) != 0
        K.gf2_flip_bits(N, rows[keep], cols[keep])

    def place(self, dst, src, nsrc, offset):
        if nsrc:
            K.gf2_place(dst, src, nsrc, offset)

    def is_zero(self, S):
        return bool(K.gf2_is_zero(S))

    def nbytes(self, rows, cols):
        return rows * 8 * max(1, (cols + 63) // 64)


class Char2Backend(Backend):
    """GF(2^a) in bit-sliced form; requires discrete-log tables (q <= 2^16)."""

    def __init__(self, field: Field):
        if not field.has_tables:
            raise FieldError("matrix arithmetic needs q <= 2^16")
        self.field = field
        self.a = field.a
        q = field.q
        E = np.zeros((q, self.a), dtype=np.int64)
        v = np.arange(q, dtype=np.int64)
        for j in range(self.a):
            E[:, j] = field.mul(v, 1 << j)
        self.E = E
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = field.inv(v[1:])
        self.inv = inv

    def zeros(self, rows, cols):
        return np.zeros((rows, self.a, max(1, (cols + 63) // 64)), dtype=np.uint64)

    def pack(self, D):
        D = np.asarray(D, dtype=np.int64)
        rows, cols = D.shape
        out = self.zeros(rows, cols)
        for l in range(self.a):
            out[:, l, :] = _pack_bits(((D >> l) & 1).astype(np.uint8))
        return out

    def unpack(self, S, cols):
        rows = S.shape[0]
        out = np.zeros((rows, cols), dtype=np.int64)
        for l in range(self.a):
            out |= _unpack_bits(np.ascontiguousarray(S[:, l, :]), cols) << l
        return out

    def rref(self, S, cols):
        if S.shape[0] == 0 or cols == 0:
            return np.zeros(0, dtype=np.int64)
        return K.c2_rref(S, cols, self.E, self.inv)

    def nullspace(self, S, pivots, cols):
        return K.c2_nullspace(S, pivots, cols)

    def matmul(self, A, B, inner):
        return K.c2_matmul(A, B, inner, self.E)

    def scatter_rows(self, T, dst, S, src, coef):
        K.c2_scatter_rows(T, np.asarray(dst, np.int64), S, np.asarray(src, np.int64), np.asarray(coef, np.int64), self.E)

    def add_entries(self, N, rows, cols, vals):
        K.c2_add_elems(N, np.asarray(rows, np.int64), np.asarray(cols, np.int64), np.asarray(vals, np.int64))

    def place(self, dst, src, nsrc, offset):
        if not nsrc:
            return
        r, a, W = dst.shape
        d2 = dst.reshape(r * a, W)
        s2 = np.ascontiguousarray(src).reshape(src.shape[0] * a, src.shape[2])
        K.gf2_place(d2, s2, nsrc, offset)

    def is_zero(self, S):
        return not S.any()

    def nbytes(self, rows, cols):
        return rows * self.a * 8 * max(1, (cols + 63) // 64)


class OddBackend(Backend):
    def __init__(self, field: Field):
        if field.q > ODD_TABLE_LIMIT:
            raise FieldError(f"matrix arithmetic over odd fields needs q <= {ODD_TABLE_LIMIT}")
        self.field = field
        v = np.arange(field.q, dtype=np.int64)
        self.addt = field.add(v[:, None], v[None, :]).astype(np.int64)
        self.mult = field.mul(v[:, None], v[None, :]).astype(np.int64)
        self.negt = np.asarray(field.neg(v), dtype=np.int64)
        inv = np.zeros(field.q, dtype=np.int64)
        inv[1:] = field.inv(v[1:])
        self.invt = inv

    def zeros(self, rows, cols):
        return np.zeros((rows, cols), dtype=np.int64)

    def pack(self, D):
        return np.array(D, dtype=np.int64, copy=True, order="C")

    def unpack(self, S, cols):
        return np.array(S[:, :cols], dtype=np.int64)

    def rref(self, S, cols):
        if S.shape[0] == 0 or cols == 0:
            return np.zeros(0, dtype=np.int64)
        if self.field.a == 1:
            return K.prime_rref(S, cols, self.field.p, self.invt)
        return K.odd_rref(S, cols, self.addt, self.mult, self.negt, self.invt)

    def nullspace(self, S, pivots, cols):
        return K.odd_nullspace(S, pivots, cols, self.negt)

    def matmul(self, A, B, inner):
        return K.odd_matmul(A[:, :inner], B[:inner], self.addt, self.mult)

    def scatter_rows(self, T, dst, S, src, coef):
        K.odd_scatter_rows(T, np.asarray(dst, np.int64), S, np.asarray(src, np.int64), np.asarray(coef, np.int64), self.addt, self.mult)

    def add_entries(self, N, rows, cols, vals):
        K.odd_add_elems(N, np.asarray(rows, np.int64), np.asarray(cols, np.int64), np.asarray(vals, np.int64), self.addt)

    def place(self, dst, src, nsrc, offset):
        dst[:, offset : offset + nsrc] = self.addt[dst[:, offset : offset + nsrc], src[:, :nsrc]]

    def is_zero(self, S):
        return not S.any()

    def nbytes(self, rows, cols):
        return rows * cols * 8


_BACKENDS: dict = {}


def backend_for(field: Field) -> Backend:
    b = _BACKENDS.get(field)
    if b is None:
        if field.q == 2:
            b = GF2Backend(field)
        elif field.char2:
            b = Char2Backend(field)
        else:
            b = OddBackend(field)
        _BACKENDS[field] = b
    return b


# ---------------------------------------------------------------------------
# dense helpers on int64 element arrays


def rref_array(F: Field, A: np.ndarray):
    """(R, pivots) for a dense element array."""
    A = np.asarray(A, dtype=np.int64)
    rows, cols = A.shape
    be = backend_for(F)
    S = be.pack(A)
    piv = be.rref(S, cols)
    return be.unpack(S, cols), piv


def right_nullspace_array(F: Field, A: np.ndarray) -> np.ndarray:
    """Some basis of {v : A v = 0}, one row per vector."""
    A = np.asarray(A, dtype=np.int64)
    rows, cols = A.shape
    be = backend_for(F)
    S = be.pack(A)
    piv = be.rref(S, cols)
    return be.nullspace(S, piv, cols).astype(np.int64)


def canonical_rows(F: Field, A: np.ndarray) -> np.ndarray:
    """Nonzero rows of the RREF of A (the canonical basis of its row space)."""
    A = np.asarray(A, dtype=np.int64)
    if A.shape[0] == 0:
        return A.reshape(0, A.shape[1])
    R, piv = rref_array(F, A)
    return R[: len(piv)]


def left_kernel_array(F: Field, A: np.ndarray) -> np.ndarray:
    """Canonical (RREF) basis of {v : v A = 0}."""
    A = np.asarray(A, dtype=np.int64)
    rows, cols = A.shape
    if rows == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if cols == 0:
        return np.eye(rows, dtype=np.int64)
    # reversing the unknowns turns the free-column null vectors into an RREF basis
    N = right_nullspace_array(F, A.T[:, ::-1])
    return N[::-1, ::-1].copy()


def matmul_array(F: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"dimension mismatch {A.shape} x {B.shape}")
    if A.shape[0] == 0 or B.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    be = backend_for(F)
    C = be.matmul(be.pack(A), be.pack(B), A.shape[1])
    return be.unpack(C, B.shape[1])


def rank_array(F: Field, A: np.ndarray) -> int:
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return 0
    return len(rref_array(F, A)[1])


# ---------------------------------------------------------------------------
# MatrixFq


@dataclass
class MatrixFq:
    field: Field
    data: np.ndarray
    row_labels: Optional[list] = None
    col_labels: Optional[list] = None

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=np.int64)
        if self.data.ndim != 2:
            self.data = self.data.reshape(-1, 0) if self.data.size == 0 else np.atleast_2d(self.data)
        if self.data.size and (self.data.min() < 0 or self.data.max() >= self.field.q):
            raise FieldError("entries outside the field")
        if self.row_labels is not None and len(self.row_labels) != self.rows:
            raise ValueError("row label count mismatch")
        if self.col_labels is not None and len(self.col_labels) != self.cols:
            raise ValueError("column label count mismatch")

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    def __eq__(self, other):
        return isinstance(other, MatrixFq) and self.field == other.field and np.array_equal(self.data, other.data)

    @classmethod
    def identity(cls, field: Field, n: int):
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, field: Field, r: int, c: int):
        return cls(field, np.zeros((r, c), dtype=np.int64))

    def transpose(self):
        return MatrixFq(self.field, self.data.T.copy(), self.col_labels, self.row_labels)

    def is_zero(self) -> bool:
        return not self.data.any()


def rref(M: MatrixFq):
    """Reduced row echelon form, rank and pivot columns."""
    if M.rows == 0 or M.cols == 0:
        return MatrixFq(M.field, M.data.copy()), 0, []
    R, piv = rref_array(M.field, M.data)
    return MatrixFq(M.field, R), len(piv), [int(p) for p in piv]


def rank(M: MatrixFq) -> int:
    return rref(M)[1]


def left_kernel_basis(M: MatrixFq) -> MatrixFq:
    """K in RREF with K M = 0 and rows(K) = rows(M) - rank(M)."""
    if M.rows == 0:
        return MatrixFq(M.field, np.zeros((0, 0), dtype=np.int64))
    return MatrixFq(M.field, left_kernel_array(M.field, M.data))


def mat_mul(A: MatrixFq, B: MatrixFq) -> MatrixFq:
    if A.field != B.field:
        raise FieldError("field mismatch")
    if A.cols != B.rows:
        raise ValueError(f"dimension mismatch {A.shape} x {B.shape}")
    return MatrixFq(A.field, matmul_array(A.field, A.data, B.data))


# ---------------------------------------------------------------------------
# text format:  "q r c" then r rows of c integers


def format_matrix(q: int, A: np.ndarray) -> str:
    A = np.asarray(A, dtype=np.int64)
    lines = [f"{q} {A.shape[0]} {A.shape[1]}"]
    lines += [" ".join(str(int(v)) for v in row) for row in A]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str):
    """Return (q, array).  Raises ValueError on malformed input."""
    toks = text.split()
    if len(toks) < 3:
        raise ValueError("missing header 'q rows cols'")
    q, r, c = (int(t) for t in toks[:3])
    body = toks[3:]
    if len(body) != r * c:
        raise ValueError(f"expected {r * c} entries, found {len(body)}")
    A = np.array([int(t) for t in body], dtype=np.int64).reshape(r, c)
    if A.size and (A.min() < 0 or A.max() >= q):
        raise ValueError("entry outside the field")
    return q, A


def write_matrix(path, M: MatrixFq):
    with open(path, "w") as fh:
        fh.write(format_matrix(M.field.q, M.data))


def read_matrix(path, field: Optional[Field] = None) -> MatrixFq:
    with open(path) as fh:
        q, A = parse_matrix(fh.read())
    F = field if field is not None else field_of_order(q)
    if F.q != q:
        raise ValueError("field order does not match file header")
    return MatrixFq(F, A)
