"""Closed-form bounds: Eagon-Northcott parameters, the Phi matrix of a dual
alternant code, explicit EN syzygies, Gilbert-Varshamov distances, entropy
thresholds and the predicted diagrams of parity and critical GRS codes."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from math import comb

import numpy as np

from .codes import SupportMultiplier
from .gf import Field, make_field
from .linalg import rank_array
from .syzygy import BettiDiagram

GV_CONVENTION = "smallest d with sum_{i<=d} C(n,i)(q-1)^i >= q^(n-k+1); dual value uses k -> n-k"


# ---------------------------------------------------------------------------
# EN parameters


def _ilog(base: int, x: int) -> int:
    """floor(log_base(x)) for integers x >= 1."""
    e, p = 0, base
    while p <= x:
        e += 1
        p *= base
    return e


@dataclass(frozen=True)
class ENParams:
    q: int
    t: int
    e: int
    f: int


@dataclass(frozen=True)
class GoppaENParams:
    t: int
    e_hat: int
    f_hat: int


def alternant_en_params(q: int, t: int) -> ENParams:
    if t < 2:
        raise ValueError("t must be at least 2")
    e = _ilog(q, t - 1)
    f = (e + 1) * t - (q ** (e + 1) - 1) // (q - 1)
    return ENParams(q, t, e, f)


def goppa_en_params(t: int) -> GoppaENParams:
    if t < 1:
        raise ValueError("t must be at least 1")
    e = _ilog(4, 2 * t - 1)
    return GoppaENParams(t, e, (2 * e + 2) * t - (4 ** (e + 1) - 1) // 3)


def en_strand_bound(f: int, s: int, r: int, m: int = 1) -> int:
    """m (r-1) C(f-s, r); zero when r > f - s."""
    if f - s < r or r < 1:
        return 0
    return m * (r - 1) * comb(f - s, r)


def improved_alternant_bound(m: int, q: int, t: int, r: int) -> int:
    f = alternant_en_params(q, t).f
    lo = f - (t - 1)
    return m * (r - 1) * (comb(f, r) - (comb(lo, r) if lo >= r else 0))


# ---------------------------------------------------------------------------
# the Phi matrix


@dataclass
class PhiMatrix:
    """2 x f matrix of variables X^(u)_a, stored as (u, a) pairs per column."""

    q: int
    t: int
    m: int
    e: int
    top: list
    bottom: list
    widths: list

    @property
    def f(self) -> int:
        return len(self.top)

    def variables(self):
        return [(u, a) for u in range(self.m) for a in range(self.t)]


def phi_symbolic(q: int, t: int, m: int) -> PhiMatrix:
    p = alternant_en_params(q, t)
    top, bot, widths = [], [], []
    for u in range(p.e + 1):
        shift = q**u
        w = t - shift
        widths.append(w)
        frob = (p.e - u) % m
        for c in range(w):
            top.append((frob, c))
            bot.append((frob, c + shift))
    return PhiMatrix(q, t, m, p.e, top, bot, widths)


def phi_evaluations(sm: SupportMultiplier, q: int, t: int, m: int) -> dict:
    """X^(u)_a -> (y x^a)^(q^u) as vectors over the big field."""
    F = sm.field
    out = {}
    cur = sm.y.copy()
    for a in range(t):
        for u in range(m):
            out[(u, a)] = F.pow(cur, q**u)
        cur = F.mul(cur, sm.x)
    return out


def build_phi(sm: SupportMultiplier, q: int, t: int, m: int):
    phi = phi_symbolic(q, t, m)
    ev = phi_evaluations(sm, q, t, m)
    # columns as linear forms: a 1 at the top variable, a 1 at the bottom one
    idx = {v: i for i, v in enumerate(phi.variables())}
    nv = len(idx)
    A = np.zeros((phi.f, 2 * nv), dtype=np.int64)
    for c, (tv, bv) in enumerate(zip(phi.top, phi.bottom)):
        A[c, idx[tv]] = 1
        A[c, nv + idx[bv]] = 1
    p = sm.field.p
    if phi.f and rank_array(make_field(p), A) != phi.f:
        raise ArithmeticError("columns of Phi are linearly dependent")
    return phi, ev


def nonvanishing_minors(phi: PhiMatrix, ev: dict, field: Field) -> list:
    """[(i, j, positions)] for each evaluated 2x2 minor that is not the zero vector."""
    bad = []
    for i, j in itertools.combinations(range(phi.f), 2):
        lhs = field.mul(ev[phi.top[i]], ev[phi.bottom[j]])
        rhs = field.mul(ev[phi.top[j]], ev[phi.bottom[i]])
        pos = np.nonzero(lhs != rhs)[0]
        if len(pos):
            bad.append((i, j, pos.tolist()))
    return bad


def verify_minors_vanish(phi: PhiMatrix, ev: dict, field: Field) -> bool:
    return not nonvanishing_minors(phi, ev, field)


# ---------------------------------------------------------------------------
# explicit Eagon-Northcott syzygies


EN_PRIME = 65537


def en_syzygy_terms(f: int, r: int) -> list:
    """Formal s^(j)_{r;I} as lists of (sign, primed, i_u, j', I') terms; r >= 3.

    Each term stands for sign * x_{i_u} Z^{(j')}_{r-1;I'} (or x' when primed)."""
    if r < 3 or r > f:
        raise ValueError("need 3 <= r <= f")
    fam = []
    for j in range(1, r):
        for I in itertools.combinations(range(f), r):
            terms = []
            for u, iu in enumerate(I):
                rest = I[:u] + I[u + 1 :]
                sign = 1 if u % 2 == 0 else -1
                if 1 <= j <= r - 2:
                    terms.append((sign, False, iu, j, rest))
                if 1 <= j - 1 <= r - 2:
                    terms.append((sign, True, iu, j - 1, rest))
            fam.append((j, I, terms))
    return fam


def en_family_size(f: int, r: int) -> int:
    return (r - 1) * comb(f, r)


def _en_matrix(f: int, r: int, x, xp, p: int) -> np.ndarray:
    """Rows s^(j)_{r;I}, columns Z^(j')_{r-1;I'}, coefficients at the point (x, x')."""
    lower = {I: n for n, I in enumerate(itertools.combinations(range(f), r - 1))}
    nl = len(lower)
    S = np.zeros((en_family_size(f, r), (r - 2) * nl), dtype=np.int64)
    for row, (j, I, terms) in enumerate(en_syzygy_terms(f, r)):
        for sign, primed, iu, jj, rest in terms:
            v = xp[iu] if primed else x[iu]
            S[row, (jj - 1) * nl + lower[rest]] += sign * v
    return S % p


def verify_en_syzygies(f: int, r: int, trials: int = 20, rng=None, p: int = EN_PRIME) -> bool:
    """Check s_r(s_{r-1}) = 0 at random points of GF(p)^(2f), p >= 2^16."""
    rng = rng or np.random.default_rng()
    for _ in range(trials):
        x = rng.integers(0, p, size=f)
        xp = rng.integers(0, p, size=f)
        if r == 3:
            prev = np.array([[x[i] * xp[j] - xp[i] * x[j]] for i, j in itertools.combinations(range(f), 2)], dtype=np.int64) % p
        else:
            prev = _en_matrix(f, r - 1, x, xp, p)
        cur = _en_matrix(f, r, x, xp, p)
        # entries < 2^17 and inner dimension small: exact in int64 after reducing per product
        prod = np.zeros((cur.shape[0], prev.shape[1]), dtype=np.int64)
        for c in range(cur.shape[1]):
            nz = cur[:, c] != 0
            if nz.any():
                prod[nz] = (prod[nz] + np.outer(cur[nz, c], prev[c])) % p
        if prod.any():
            return False
    return True


# ---------------------------------------------------------------------------
# Gilbert-Varshamov


def gv_distance(q: int, n: int, k: int) -> int:
    """Smallest d with sum_{i<=d} C(n,i) (q-1)^i >= q^(n-k+1)."""
    target = q ** (n - k + 1)
    term = 1
    total = 1
    if total >= target:
        return 0
    for i in range(1, n + 1):
        term = term * (n - i + 1) * (q - 1) // i
        total += term
        if total >= target:
            return i
    return n + 1


def gv_dual_distance(q: int, n: int, k: int) -> int:
    return gv_distance(q, n, n - k)


def entropy_q(x: float, q: int) -> float:
    if x <= 0:
        return 0.0
    if x >= 1:
        return math.log(q - 1, q) if q > 2 else 0.0
    return x * math.log(q - 1, q) - x * math.log(x, q) - (1 - x) * math.log(1 - x, q)


def entropy_inverse(y: float, q: int, tol: float = 1e-12) -> float:
    """x in [0, 1 - 1/q] with H_q(x) = y."""
    lo, hi = 0.0, 1.0 - 1.0 / q
    if y >= 1:
        return hi
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if entropy_q(mid, q) < y:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def _bisect(g, lo, hi, tol):
    glo = g(lo)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if (g(mid) > 0) == (glo > 0):
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def entropy_threshold_rates(q: int, tol: float = 1e-6):
    """(R1, R2): roots of H_q^-1(1-R) = R(1-R) and H_q^-1(R) = R^2 in (0, 1/2]."""
    r1 = _bisect(lambda R: entropy_inverse(1 - R, q) - R * (1 - R), 1e-9, 0.5, tol)
    r2 = _bisect(lambda R: entropy_inverse(R, q) - R * R, 1e-9, 0.5, tol)
    return r1, r2


# ---------------------------------------------------------------------------
# closed-form diagrams


def closed_form_diagram(kind: str, k: int) -> BettiDiagram:
    if k < 3:
        raise ValueError("k must be at least 3")
    if kind == "parity":
        n = k + 1
        row1 = []
        for r in range(2, k + 1):
            num = (r - 1) * (k - r) * comb(k + 1, r)
            assert num % k == 0
            row1.append(num // k)
        row2 = [0] * (k - 2) + [1]
    elif kind == "grs_critical":
        n = 2 * k - 1
        row1 = [(r - 1) * comb(k - 1, r) for r in range(2, k + 1)]
        row2 = [(r - 2) * comb(k - 1, r - 2) for r in range(3, k + 2)]
    else:
        raise ValueError(f"unknown kind {kind}")
    return BettiDiagram(n, k, row1, row2)
