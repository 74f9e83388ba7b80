"""Numba kernels for dense elimination over finite fields.

Three storage layouts are used:

* GF(2): uint64 array of shape (rows, W); bit j of word w is column 64*w + j.
* GF(2^a), a >= 2: uint64 array of shape (rows, a, W); plane l holds bit l of
  every entry (bit-sliced).  Multiplication by a constant v is the GF(2)-linear
  map given by E[v, j] = v * x^j.
* odd q: int64 array of shape (rows, cols) with full add/mul tables.

Reduced row echelon forms are unique, so the elimination order used here has
no influence on any returned result.
"""

import numpy as np
from numba import njit

ONE = np.uint64(1)

# ---------------------------------------------------------------------------
# GF(2)


@njit(cache=True)
def _bit(A, i, c):
    return (A[i, c >> 6] >> np.uint64(c & 63)) & ONE


@njit(cache=True)
def gf2_rref(A, ncols):
    """In-place RREF with up to 32 pivots per sweep (four 8-bit lookup tables)."""
    nrows, W = A.shape
    KMAX = 32
    pivots = np.empty(min(nrows, ncols), np.int64)
    npiv = 0
    table = np.zeros((4 * 256, W), np.uint64)
    pc = np.empty(KMAX, np.int64)
    pats = np.zeros(4, np.int64)
    r = 0
    c = 0
    while r < nrows and c < ncols:
        kp = 0
        while kp < KMAX and c < ncols and r + kp < nrows:
            wc = c >> 6
            bc = ONE << np.uint64(c & 63)
            found = -1
            for i in range(r + kp, nrows):
                bit = (A[i, wc] & bc) != 0
                for j in range(kp):
                    if _bit(A, i, pc[j]):
                        if A[r + j, wc] & bc:
                            bit = not bit
                if bit:
                    found = i
                    break
            if found >= 0:
                dst = r + kp
                if found != dst:
                    for w in range(W):
                        t = A[dst, w]
                        A[dst, w] = A[found, w]
                        A[found, w] = t
                for j in range(kp):
                    p = pc[j]
                    if _bit(A, dst, p):
                        for w in range(p >> 6, W):
                            A[dst, w] ^= A[r + j, w]
                for j in range(kp):
                    if A[r + j, wc] & bc:
                        for w in range(wc, W):
                            A[r + j, w] ^= A[dst, w]
                pc[kp] = c
                kp += 1
            c += 1
        if kp == 0:
            break
        w0 = pc[0] >> 6
        nt = (kp + 7) >> 3
        for tb in range(nt):
            lo = tb * 8
            hi = min(kp, lo + 8)
            base = tb * 256
            for g in range(1, 1 << (hi - lo)):
                low = 0
                while not (g >> low) & 1:
                    low += 1
                h = g & (g - 1)
                src = A[r + lo + low]
                trow = table[base + g]
                hrow = table[base + h]
                for w in range(w0, W):
                    trow[w] = hrow[w] ^ src[w]
        for i in range(nrows):
            if i >= r and i < r + kp:
                continue
            anyp = 0
            for tb in range(nt):
                pat = 0
                for j in range(tb * 8, min(kp, tb * 8 + 8)):
                    if _bit(A, i, pc[j]):
                        pat |= 1 << (j - tb * 8)
                pats[tb] = tb * 256 + pat
                anyp |= pat
            if anyp:
                row = A[i]
                if nt == 1:
                    t0 = table[pats[0]]
                    for w in range(w0, W):
                        row[w] ^= t0[w]
                elif nt == 2:
                    t0 = table[pats[0]]
                    t1 = table[pats[1]]
                    for w in range(w0, W):
                        row[w] ^= t0[w] ^ t1[w]
                elif nt == 3:
                    t0 = table[pats[0]]
                    t1 = table[pats[1]]
                    t2 = table[pats[2]]
                    for w in range(w0, W):
                        row[w] ^= t0[w] ^ t1[w] ^ t2[w]
                else:
                    t0 = table[pats[0]]
                    t1 = table[pats[1]]
                    t2 = table[pats[2]]
                    t3 = table[pats[3]]
                    for w in range(w0, W):
                        row[w] ^= t0[w] ^ t1[w] ^ t2[w] ^ t3[w]
        for j in range(kp):
            pivots[npiv] = pc[j]
            npiv += 1
        r += kp
    return pivots[:npiv].copy()


@njit(cache=True)
def gf2_nullspace(A, pivots, ncols):
    """Right null space basis of an RREF matrix, one dense vector per free column."""
    rank = pivots.shape[0]
    is_piv = np.zeros(ncols, np.bool_)
    for i in range(rank):
        is_piv[pivots[i]] = True
    z = ncols - rank
    out = np.zeros((z, ncols), np.uint8)
    k = 0
    for f in range(ncols):
        if is_piv[f]:
            continue
        out[k, f] = 1
        for i in range(rank):
            if pivots[i] > f:
                break
            if _bit(A, i, f):
                out[k, pivots[i]] = 1
        k += 1
    return out


@njit(cache=True)
def gf2_matmul(A, B, n):
    """C = A * B where A is m x n and B is n x p, both packed."""
    m = A.shape[0]
    WB = B.shape[1]
    C = np.zeros((m, WB), np.uint64)
    table = np.zeros((256, WB), np.uint64)
    for c0 in range(0, n, 8):
        kk = min(8, n - c0)
        for g in range(1, 1 << kk):
            low = 0
            while not (g >> low) & 1:
                low += 1
            h = g & (g - 1)
            src = B[c0 + low]
            for w in range(WB):
                table[g, w] = table[h, w] ^ src[w]
        mask = np.uint64((1 << kk) - 1)
        wa = c0 >> 6
        sh = np.uint64(c0 & 63)
        for i in range(m):
            byte = (A[i, wa] >> sh) & mask
            if byte:
                row = C[i]
                t = table[byte]
                for w in range(WB):
                    row[w] ^= t[w]
    return C


@njit(cache=True)
def gf2_scatter_rows(T, dst, S, src):
    for e in range(dst.shape[0]):
        a = T[dst[e]]
        b = S[src[e]]
        for w in range(T.shape[1]):
            a[w] ^= b[w]


@njit(cache=True)
def gf2_flip_bits(N, rows, cols):
    for e in range(rows.shape[0]):
        c = cols[e]
        N[rows[e], c >> 6] ^= ONE << np.uint64(c & 63)


@njit(cache=True)
def gf2_place(dst, src, nsrc, offset):
    """XOR the first nsrc columns of src into dst starting at column offset."""
    rows = src.shape[0]
    Ws = (nsrc + 63) >> 6
    Wd = dst.shape[1]
    for i in range(rows):
        for w in range(Ws):
            v = src[i, w]
            if w == Ws - 1 and (nsrc & 63):
                v &= (ONE << np.uint64(nsrc & 63)) - ONE
            if v == 0:
                continue
            o = offset + 64 * w
            ow = o >> 6
            ob = o & 63
            dst[i, ow] ^= v << np.uint64(ob)
            if ob and ow + 1 < Wd:
                dst[i, ow + 1] ^= v >> np.uint64(64 - ob)


@njit(cache=True)
def gf2_is_zero(A):
    for i in range(A.shape[0]):
        for w in range(A.shape[1]):
            if A[i, w]:
                return False
    return True


# ---------------------------------------------------------------------------
# GF(2^a), bit-sliced


@njit(cache=True)
def _c2_get(A, i, c):
    a = A.shape[1]
    w = c >> 6
    s = np.uint64(c & 63)
    v = 0
    for l in range(a):
        v |= int((A[i, l, w] >> s) & ONE) << l
    return v


@njit(cache=True)
def _c2_addmul_row(dst, src, v, E, w0):
    """dst += v * src on words w0.. (dst, src are (a, W) slices)."""
    a = src.shape[0]
    W = src.shape[1]
    for j in range(a):
        e = E[v, j]
        if e == 0:
            continue
        for l in range(a):
            if (e >> l) & 1:
                d = dst[l]
                s = src[j]
                for w in range(w0, W):
                    d[w] ^= s[w]


@njit(cache=True)
def c2_rref(A, ncols, E, inv):
    nrows, a, W = A.shape
    q = E.shape[0]
    pivots = np.empty(min(nrows, ncols), np.int64)
    tmp = np.zeros((a, W), np.uint64)
    use_mult = q <= 16
    mult = np.zeros((q, a, W), np.uint64)
    r = 0
    npiv = 0
    for c in range(ncols):
        if r >= nrows:
            break
        found = -1
        for i in range(r, nrows):
            if _c2_get(A, i, c):
                found = i
                break
        if found < 0:
            continue
        if found != r:
            for l in range(a):
                for w in range(W):
                    t = A[r, l, w]
                    A[r, l, w] = A[found, l, w]
                    A[found, l, w] = t
        w0 = c >> 6
        v = _c2_get(A, r, c)
        if v != 1:
            for l in range(a):
                for w in range(W):
                    tmp[l, w] = 0
            _c2_addmul_row(tmp, A[r], inv[v], E, w0)
            for l in range(a):
                for w in range(w0, W):
                    A[r, l, w] = tmp[l, w]
        if use_mult:
            for u in range(1, q):
                for l in range(a):
                    for w in range(w0, W):
                        mult[u, l, w] = 0
                _c2_addmul_row(mult[u], A[r], u, E, w0)
        for i in range(nrows):
            if i == r:
                continue
            u = _c2_get(A, i, c)
            if u == 0:
                continue
            if use_mult:
                for l in range(a):
                    d = A[i, l]
                    s = mult[u, l]
                    for w in range(w0, W):
                        d[w] ^= s[w]
            else:
                _c2_addmul_row(A[i], A[r], u, E, w0)
        pivots[npiv] = c
        npiv += 1
        r += 1
    return pivots[:npiv].copy()


@njit(cache=True)
def c2_nullspace(A, pivots, ncols):
    rank = pivots.shape[0]
    is_piv = np.zeros(ncols, np.bool_)
    for i in range(rank):
        is_piv[pivots[i]] = True
    z = ncols - rank
    out = np.zeros((z, ncols), np.int64)
    k = 0
    for f in range(ncols):
        if is_piv[f]:
            continue
        out[k, f] = 1
        for i in range(rank):
            if pivots[i] > f:
                break
            out[k, pivots[i]] = _c2_get(A, i, f)
        k += 1
    return out


@njit(cache=True)
def c2_matmul(A, B, n, E):
    m = A.shape[0]
    a = B.shape[1]
    WB = B.shape[2]
    C = np.zeros((m, a, WB), np.uint64)
    for i in range(m):
        for c in range(n):
            v = _c2_get(A, i, c)
            if v:
                _c2_addmul_row(C[i], B[c], v, E, 0)
    return C


@njit(cache=True)
def c2_scatter_rows(T, dst, S, src, coef, E):
    for e in range(dst.shape[0]):
        _c2_addmul_row(T[dst[e]], S[src[e]], coef[e], E, 0)


@njit(cache=True)
def c2_add_elems(N, rows, cols, vals):
    a = N.shape[1]
    for e in range(rows.shape[0]):
        c = cols[e]
        v = vals[e]
        for l in range(a):
            if (v >> l) & 1:
                N[rows[e], l, c >> 6] ^= ONE << np.uint64(c & 63)


# ---------------------------------------------------------------------------
# odd q, dense tables


@njit(cache=True)
def odd_rref(A, ncols, add, mul, neg, inv):
    nrows = A.shape[0]
    pivots = np.empty(min(nrows, ncols), np.int64)
    r = 0
    npiv = 0
    for c in range(ncols):
        if r >= nrows:
            break
        found = -1
        for i in range(r, nrows):
            if A[i, c]:
                found = i
                break
        if found < 0:
            continue
        if found != r:
            for j in range(ncols):
                t = A[r, j]
                A[r, j] = A[found, j]
                A[found, j] = t
        v = A[r, c]
        if v != 1:
            iv = inv[v]
            for j in range(c, ncols):
                A[r, j] = mul[iv, A[r, j]]
        for i in range(nrows):
            if i == r:
                continue
            u = A[i, c]
            if u == 0:
                continue
            nu = neg[u]
            for j in range(c, ncols):
                x = A[r, j]
                if x:
                    A[i, j] = add[A[i, j], mul[nu, x]]
        pivots[npiv] = c
        npiv += 1
        r += 1
    return pivots[:npiv].copy()


@njit(cache=True)
def prime_rref(A, ncols, p, inv):
    """Gauss-Jordan over GF(p) with lazy reduction.

    Rows other than the pivot row accumulate nonnegative multiples without
    reduction.  Each pivot adds at most (p-1)^2 < 2^20 to an entry, so int64
    cannot overflow for any realistic rank.  Only the pivot row and the
    searched column are reduced on the way, everything else once at the end."""
    nrows = A.shape[0]
    stride = A.shape[1]
    flat = A.reshape(-1)
    pivots = np.empty(min(nrows, ncols), np.int64)
    r = 0
    npiv = 0
    for c in range(ncols):
        if r >= nrows:
            break
        found = -1
        for i in range(r, nrows):
            A[i, c] %= p
            if A[i, c]:
                found = i
                break
        if found < 0:
            continue
        if found != r:
            for j in range(c, ncols):
                t = A[r, j]
                A[r, j] = A[found, j]
                A[found, j] = t
        iv = inv[A[r, c]]
        w = ncols - c
        prow = np.empty(w, A.dtype)
        for j in range(w):
            prow[j] = (A[r, c + j] % p) * iv % p
            A[r, c + j] = prow[j]
        for i in range(nrows):
            if i == r:
                continue
            u = A[i, c] % p
            if u == 0:
                A[i, c] = 0
                continue
            nu = p - u
            base = i * stride + c
            for j in range(w):
                flat[base + j] += nu * prow[j]
        pivots[npiv] = c
        npiv += 1
        r += 1
    for i in range(nrows):
        for j in range(ncols):
            A[i, j] %= p
    return pivots[:npiv].copy()


@njit(cache=True)
def odd_nullspace(A, pivots, ncols, neg):
    rank = pivots.shape[0]
    is_piv = np.zeros(ncols, np.bool_)
    for i in range(rank):
        is_piv[pivots[i]] = True
    z = ncols - rank
    out = np.zeros((z, ncols), np.int64)
    k = 0
    for f in range(ncols):
        if is_piv[f]:
            continue
        out[k, f] = 1
        for i in range(rank):
            if pivots[i] > f:
                break
            out[k, pivots[i]] = neg[A[i, f]]
        k += 1
    return out


@njit(cache=True)
def odd_matmul(A, B, add, mul):
    m, n = A.shape
    p = B.shape[1]
    C = np.zeros((m, p), np.int64)
    for i in range(m):
        for c in range(n):
            v = A[i, c]
            if v:
                for j in range(p):
                    x = B[c, j]
                    if x:
                        C[i, j] = add[C[i, j], mul[v, x]]
    return C


@njit(cache=True)
def odd_scatter_rows(T, dst, S, src, coef, add, mul):
    for e in range(dst.shape[0]):
        v = coef[e]
        d = dst[e]
        s = src[e]
        for j in range(T.shape[1]):
            x = S[s, j]
            if x:
                T[d, j] = add[T[d, j], mul[v, x]]


@njit(cache=True)
def odd_add_elems(N, rows, cols, vals, add):
    for e in range(rows.shape[0]):
        N[rows[e], cols[e]] = add[N[rows[e], cols[e]], vals[e]]


# ---------------------------------------------------------------------------
# binary codes: Gray-code enumeration of all codewords


@njit(cache=True)
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return int((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@njit(cache=True)
def gf2_weight_distribution(G, n):
    """Weight distribution of the binary code spanned by the packed rows of G."""
    k, W = G.shape
    dist = np.zeros(n + 1, np.int64)
    cw = np.zeros(W, np.uint64)
    dist[0] = 1
    for g in range(1, 1 << k):
        low = 0
        while not (g >> low) & 1:
            low += 1
        c = 0
        for w in range(W):
            cw[w] ^= G[low, w]
            c += _popcount(cw[w])
        dist[c] += 1
    return dist


@njit(cache=True)
def gf2_min_weight(G, n):
    k, W = G.shape
    cw = np.zeros(W, np.uint64)
    best = n + 1
    for g in range(1, 1 << k):
        low = 0
        while not (g >> low) & 1:
            low += 1
        c = 0
        for w in range(W):
            cw[w] ^= G[low, w]
            c += _popcount(cw[w])
        if c < best:
            best = c
    return best
