"""Betti-number distinguishers for dual alternant and Goppa codes, their
calibration, the complexity estimate and the Classic McEliece audit."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb
from typing import Optional

import numpy as np

from .bounds import alternant_en_params, goppa_en_params, gv_distance, gv_dual_distance
from .codes import FamilySpec, LinearCode, min_distance, sample_family_member, shorten
from .syzygy import linear_strand, phi_index

OMEGA = 2.372

MCELIECE_SETS = [(3488, 12, 64), (4608, 13, 96), (6688, 13, 128), (6960, 13, 119), (8192, 13, 128)]


# ---------------------------------------------------------------------------
# thresholds and heuristic gates


def basic_threshold(k: int, r: int, beta_star: int) -> int:
    """Smallest n with ceil(k(k+1)/r - (beta* - 1)/C(k-1, r-2)) <= n."""
    if r < 2 or beta_star < 1:
        raise ValueError("need r >= 2 and beta* >= 1")
    v = Fraction(k * (k + 1), r) - Fraction(beta_star - 1, comb(k - 1, r - 2))
    return math.ceil(v)


def max_admissible_shortening(n: int, k: int, r_star: int) -> Optional[int]:
    """Largest s with (k-s)(k-s+1)/(n-s) < r* - s, or None if no s qualifies."""
    if r_star < 2:
        raise ValueError("r* must be at least 2")
    best = None
    for s in range(0, min(k, r_star - 1)):
        if (k - s) * (k - s + 1) < (r_star - s) * (n - s):
            best = s
    return best


@dataclass
class HeuristicFlags:
    cond1: bool
    cond2: bool
    ratio: float
    d_gv: int
    d_gv_dual: int
    margin1: float
    margin2: float


def heuristic_conditions(q: int, n_s: int, k_s: int) -> HeuristicFlags:
    ratio = k_s * (k_s + 1) / n_s
    d = gv_distance(q, n_s, k_s)
    dd = gv_dual_distance(q, n_s, k_s)
    m1 = d - (k_s + 1 - ratio)
    m2 = dd - ratio
    return HeuristicFlags(m1 > 0, m2 > 0, ratio, d, dd, m1, m2)


# ---------------------------------------------------------------------------
# complexity


@dataclass
class ComplexityEstimate:
    terms: dict  # i -> log2 of the i-th term
    dominant: int
    log2_kappa: float
    omega: float

    @property
    def rounded(self) -> float:
        return float(f"{self.log2_kappa:.4g}")


def _log2_int(v: int) -> float:
    return math.log2(v)


def kappa_estimate(n_s: int, k_s: int, omega: float = OMEGA) -> ComplexityEstimate:
    """log2 of sum_{4 <= i <= floor(k(k+1)/n)+1} max(k ind_{i-1}, C(k+1,2) ind_{i-2})^omega.

    Indices below 0 count as 0; terms with i < 4 are dominated and left out."""
    top = (k_s * (k_s + 1)) // n_s + 1
    terms = {}
    for i in range(4, top + 1):
        a = k_s * max(phi_index(n_s, k_s, i - 1), 0)
        b = comb(k_s + 1, 2) * max(phi_index(n_s, k_s, i - 2), 0)
        v = max(a, b)
        if v > 0:
            terms[i] = omega * _log2_int(v)
    if not terms:
        return ComplexityEstimate({}, 0, 0.0, omega)
    dom = max(terms, key=terms.get)
    M = terms[dom]
    total = M + math.log2(sum(2.0 ** (t - M) for t in terms.values()))
    return ComplexityEstimate(terms, dom, total, omega)


def asymptotic_exponent(q: int, R: float, n: float, omega: float = OMEGA) -> float:
    """omega R^2/(1-R) * (log_q log_q n)^3 / (log_q n)^2 * n, in powers of q."""
    if not 0 < R < 1:
        raise ValueError("R must lie in (0, 1)")
    L = math.log(n, q)
    return omega * R * R / (1 - R) * math.log(L, q) ** 3 / L**2 * n


# ---------------------------------------------------------------------------
# McEliece audit


@dataclass
class McElieceParamSet:
    n: int
    m: int
    t: int
    k: int
    r_star: int
    s: int
    n_s: int
    k_s: int
    ratio: float
    d_gv: int
    d_gv_dual: int
    cond1: bool
    cond2: bool
    log2_kappa: float

    @property
    def kappa_text(self) -> str:
        v = f"2^{math.floor(self.log2_kappa + 0.5)}"
        return v if self.cond2 else f"({v})"

    def as_dict(self) -> dict:
        d = dict(self.__dict__)
        d["ratio"] = round(self.ratio, 2)
        d["log2_kappa"] = float(f"{self.log2_kappa:.4g}")
        d["kappa"] = self.kappa_text
        return d


def mceliece_audit(params=None, omega: float = OMEGA) -> list:
    out = []
    for n, m, t in params or MCELIECE_SETS:
        k = m * t
        r_star = goppa_en_params(t).f_hat
        s = max_admissible_shortening(n, k, r_star)
        n_s, k_s = n - s, k - s
        h = heuristic_conditions(2, n_s, k_s)
        kap = kappa_estimate(n_s, k_s, omega)
        out.append(McElieceParamSet(n, m, t, k, r_star, s, n_s, k_s, h.ratio, h.d_gv, h.d_gv_dual, h.cond1, h.cond2, kap.log2_kappa))
    return out


# ---------------------------------------------------------------------------
# distinguishers


@dataclass
class DistinguisherConfig:
    spec: Optional[FamilySpec] = None
    r_star: Optional[int] = None
    r_star_source: str = "bound"
    s: int = 0
    r: Optional[int] = None
    beta_star: Optional[dict] = None  # degree r -> beta*_{r-1,r}
    seed: int = 0
    mode: str = "shortened"  # or "basic"

    def __post_init__(self):
        if self.s < 0:
            raise ValueError("s must be nonnegative")
        if self.r is None and self.r_star is not None:
            self.r = self.r_star - self.s
        if self.r is not None and self.r < 2:
            raise ValueError("target degree below 2")


@dataclass
class Verdict:
    decision: str
    beta: Optional[int]
    threshold: Optional[int]
    degree: int
    n_s: int
    k_s: int
    cond1: Optional[bool] = None
    cond2: Optional[bool] = None
    warnings: list = dc_field(default_factory=list)
    beta_star_decision: Optional[str] = None
    strand: Optional[list] = None

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def r_star_from_bound(spec: FamilySpec) -> int:
    if spec.family == "goppa_dual" and spec.q == 2 and spec.goppa_mode != "any":
        return goppa_en_params(spec.t).f_hat
    return alternant_en_params(spec.q, spec.t).f


def random_shortening(C: LinearCode, s: int, rng) -> LinearCode:
    if s == 0:
        return C
    S = rng.choice(C.n, size=s, replace=False)
    return shorten(C, S)


def classify(C: LinearCode, cfg: DistinguisherConfig, cap_gb: Optional[float] = None) -> Verdict:
    rng = np.random.default_rng(cfg.seed)
    if cfg.mode == "basic":
        if cfg.r is None or not cfg.beta_star or cfg.r not in cfg.beta_star:
            raise ValueError("basic mode needs a degree r and beta*_{r-1,r}")
        Cs = C
    else:
        Cs = random_shortening(C, cfg.s, rng)
    r = cfg.r
    if r is None:
        raise ValueError("no target degree: supply r* or r")
    if r > Cs.k:
        raise ValueError(f"degree {r} exceeds the dimension {Cs.k}")
    h = heuristic_conditions(C.q, Cs.n, Cs.k)
    strand = linear_strand(Cs, r, cap_gb=cap_gb)
    warnings = []
    if strand.refused:
        return Verdict("refused", None, None, r, Cs.n, Cs.k, h.cond1, h.cond2, [strand.refused], strand=strand.betas)
    beta = strand.beta(r)
    ind = max(phi_index(Cs.n, Cs.k, r), 0)
    if cfg.mode == "basic":
        bstar = cfg.beta_star[r]
        decision = "special" if beta >= bstar else "random"
        if ind >= bstar:
            warnings.append("indistinguishable at this degree: random codes are expected to reach beta*")
        return Verdict(decision, beta, bstar, r, Cs.n, Cs.k, h.cond1, h.cond2, warnings, strand=strand.betas)
    decision = "special" if beta > 0 else "random"
    if ind > 0:
        warnings.append("degree below k_s(k_s+1)/n_s: random codes also have beta > 0")
    if not h.cond1:
        warnings.append("heuristic condition on d_GV fails")
    bsd = None
    if cfg.beta_star and r in cfg.beta_star:
        bsd = "special" if beta >= cfg.beta_star[r] else "random"
    return Verdict(decision, beta, 1, r, Cs.n, Cs.k, h.cond1, h.cond2, warnings, bsd, strand=strand.betas)


def calibrate(spec: FamilySpec, samples: int, D: int, s: int = 0, seed: int = 0, cap_gb: Optional[float] = None) -> dict:
    """Strands of `samples` family members (s-shortened), with consensus values."""
    strands, retries = [], []
    for i in range(samples):
        rng = np.random.default_rng([seed, i])
        C, info = sample_family_member(spec, rng)
        retries.append(info["retries"])
        Cs = random_shortening(C, s, rng)
        st = linear_strand(Cs, min(D, Cs.k), cap_gb=cap_gb)
        if st.refused:
            return {"refused": st.refused, "completed_samples": i, "strands": strands}
        strands.append(st.betas)
    width = max(len(b) for b in strands)
    rows = [b + [0] * (width - len(b)) for b in strands]
    consensus, lo, hi = [], [], []
    for j in range(width):
        col = [r[j] for r in rows]
        consensus.append(Counter(col).most_common(1)[0][0])
        lo.append(min(col))
        hi.append(max(col))
    agree = all(a == b for a, b in zip(lo, hi))
    rmax = next((j + 1 for j, v in enumerate(consensus) if v == 0), None)
    return {
        "beta_star": consensus,
        "degrees": list(range(2, 2 + width)),
        "min": lo,
        "max": hi,
        "consensus": agree,
        "r_max": rmax,
        "samples": samples,
        "retries": retries,
        "strands": strands,
    }


def distance_distinguisher(C: LinearCode, t: int) -> Verdict:
    """Declare Goppa iff d(C) >= 2t + 1 (binary primal view)."""
    if C.q != 2:
        raise ValueError("distance distinguisher is defined for binary codes")
    target = 2 * t + 1
    d = min_distance(C, cap=target)
    special = isinstance(d, str)
    return Verdict(
        "special" if special else "random",
        target if special else d,
        target,
        0,
        C.n,
        C.k,
        warnings=[] if special else [f"codeword of weight {d} found"],
    )
