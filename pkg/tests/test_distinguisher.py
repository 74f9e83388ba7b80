import math

import numpy as np
import pytest

from syzkit.bounds import goppa_en_params
from syzkit.codes import FamilySpec, golay_ternary, random_code, sample_family_member
from syzkit.distinguisher import (
    DistinguisherConfig,
    asymptotic_exponent,
    basic_threshold,
    calibrate,
    classify,
    distance_distinguisher,
    heuristic_conditions,
    kappa_estimate,
    max_admissible_shortening,
    mceliece_audit,
    r_star_from_bound,
)
from syzkit.reference import GOPPA_4_4_4_BETA_STAR, MCELIECE_TABLE, THRESHOLD_4_4_4
from syzkit.syzygy import linear_strand, phi_index


def test_basic_threshold():
    assert basic_threshold(16, 3, 80) == 86
    assert basic_threshold(16, 4, 12) == 68
    # r = 2 with beta* = 1 gives the square-code threshold ceil(k(k+1)/2)
    for k in (5, 10, 16, 30):
        assert basic_threshold(k, 2, 1) == math.ceil(k * (k + 1) / 2)
    with pytest.raises(ValueError):
        basic_threshold(16, 1, 5)


def test_max_admissible_shortening():
    assert max_admissible_shortening(3488, 768, 427) == 377
    assert max_admissible_shortening(8192, 1664, 939) == 848
    assert max_admissible_shortening(6960, 1547, 867) == 769
    # maximality: s + 1 is not admissible
    s = max_admissible_shortening(3488, 768, 427)
    assert not (768 - s - 1) * (768 - s) < (427 - s - 1) * (3488 - s - 1)
    assert max_admissible_shortening(10, 9, 2) is None


def test_heuristic_conditions():
    h = heuristic_conditions(2, 3111, 391)
    assert h.cond1 and h.cond2 and h.d_gv == 921 and h.d_gv_dual == 55
    assert round(h.ratio, 2) == 49.27
    h = heuristic_conditions(2, 4040, 680)
    assert not h.cond2
    h = heuristic_conditions(2, 200, 20)
    assert h.ratio < 3 and h.cond2


def test_kappa_examples():
    assert abs(math.floor(kappa_estimate(3111, 391).log2_kappa) - 528) <= 1
    assert abs(math.floor(kappa_estimate(7344, 816).log2_kappa) - 997) <= 1
    assert abs(math.floor(kappa_estimate(6191, 778).log2_kappa) - 1030) <= 1
    assert abs(math.floor(kappa_estimate(4040, 680).log2_kappa) - 1080) <= 1
    k = kappa_estimate(3111, 391)
    assert k.log2_kappa >= max(k.terms.values())
    assert min(k.terms) == 4 and max(k.terms) == 391 * 392 // 3111 + 1


def test_kappa_monotone_in_k():
    for n_s in (500, 2000):
        vals = [kappa_estimate(n_s, k).log2_kappa for k in range(40, n_s // 3, 7)]
        assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_asymptotic_exponent():
    assert asymptotic_exponent(2, 1e-6, 3488) < 1e-6
    v = asymptotic_exponent(2, 0.25, 3488)
    assert 0 < v < math.inf
    # exponent / n falls over the whole range 2^10 .. 2^30
    per_n = [asymptotic_exponent(2, 0.25, 2.0**e) / 2.0**e for e in range(10, 31)]
    assert all(a > b for a, b in zip(per_n, per_n[1:]))
    # exponent / (n / log n) behaves like (log log n)^3 / log n, which falls once log2 n > e^3
    per_sub = [asymptotic_exponent(2, 0.25, 2.0**e) / (2.0**e / e) for e in range(21, 400, 10)]
    assert all(a > b for a, b in zip(per_sub, per_sub[1:]))
    with pytest.raises(ValueError):
        asymptotic_exponent(2, 1.0, 100)


def test_mceliece_audit_against_table():
    rows = mceliece_audit()
    mismatches = []
    for got, want in zip(rows, MCELIECE_TABLE):
        d = got.as_dict()
        for key in ("n", "m", "t", "r_star", "s", "n_s", "k_s", "ratio", "d_gv", "d_gv_dual", "cond2"):
            if d[key] != want[key]:
                mismatches.append((want["n"], key, d[key], want[key]))
        assert abs(math.floor(got.log2_kappa + 0.5) - want["kappa"]) <= 1
        assert d["kappa"].startswith("(") == (not want["cond2"])
    # the one cell the pinned GV rule cannot reproduce
    assert mismatches == [(4608, "d_gv_dual", 102, 62)]


def test_r_star_from_bound():
    assert r_star_from_bound(FamilySpec("goppa_dual", 2, 12, 64, n=3488)) == goppa_en_params(64).f_hat
    assert r_star_from_bound(FamilySpec("alt_dual", 2, 10, 5)) == 8
    assert r_star_from_bound(FamilySpec("goppa_dual", 4, 4, 4)) == 3  # alternant bound when q != 2


def test_config_validation():
    with pytest.raises(ValueError):
        DistinguisherConfig(s=-1)
    with pytest.raises(ValueError):
        DistinguisherConfig(r_star=5, s=4)
    assert DistinguisherConfig(r_star=8, s=3).r == 5


def _goppa444(n, rng):
    return sample_family_member(FamilySpec("goppa_dual", 4, 4, 4, n=n, goppa_mode="irr"), rng)[0]


def test_classify_at_n68():
    rng = np.random.default_rng(68)
    cfg = DistinguisherConfig(r=4, beta_star={4: 12}, mode="basic")
    v = classify(_goppa444(68, rng), cfg)
    assert v.decision == "special" and v.beta == 12 and not v.warnings
    v = classify(random_code(68, 16, 4, rng), cfg)
    assert v.decision == "random" and v.beta < 12


def test_classify_at_n86():
    rng = np.random.default_rng(86)
    cfg = DistinguisherConfig(r=3, beta_star={3: 80}, mode="basic")
    vg = classify(_goppa444(86, rng), cfg)
    vr = classify(random_code(86, 16, 4, rng), cfg)
    assert (vg.beta, vr.beta) == THRESHOLD_4_4_4[86][:2]
    assert (vg.decision, vr.decision) == ("special", "random")


def test_classify_below_threshold_warns():
    rng = np.random.default_rng(67)
    cfg = DistinguisherConfig(r=4, beta_star={4: 12}, mode="basic")
    vg = classify(_goppa444(67, rng), cfg)
    vr = classify(random_code(67, 16, 4, rng), cfg)
    assert vg.beta == vr.beta == 105
    assert any("indistinguishable" in w for w in vr.warnings)


def test_threshold_consistency_40_trials():
    """At n = 68 the r = 4 test separates the classes in at least 95% of 40 trials."""
    cfg = DistinguisherConfig(r=4, beta_star={4: GOPPA_4_4_4_BETA_STAR[2]}, mode="basic")
    ok = 0
    for i in range(40):
        rng = np.random.default_rng([40, i])
        g = classify(_goppa444(68, rng), cfg).decision == "special"
        r = classify(random_code(68, 16, 4, rng), cfg).decision == "random"
        ok += g and r
    assert ok >= 38


def test_shortened_mode():
    # Alt dual (2,6,3): f = 3, so r* = 3 and the strand at r = 3 is positive for the family
    spec = FamilySpec("alt_dual", 2, 6, 3)
    rng = np.random.default_rng(1)
    C, _ = sample_family_member(spec, rng)
    v = classify(C, DistinguisherConfig(spec=spec, r_star=r_star_from_bound(spec), s=0))
    assert v.degree == 3 and v.decision == "special" and v.beta > 0
    # a code with beta_{r-1,r} = 0 is declared random
    v = classify(golay_ternary(), DistinguisherConfig(r=4))
    assert v.decision == "random" and v.beta == 0


def test_shortening_position_independence():
    spec = FamilySpec("goppa_dual", 2, 6, 3, goppa_mode="irr")
    C, _ = sample_family_member(spec, np.random.default_rng(5))
    decisions = {classify(C, DistinguisherConfig(r=6, s=2, seed=s)).decision for s in range(5)}
    assert decisions == {"special"}


def test_classify_refuses_over_budget():
    spec = FamilySpec("goppa_dual", 2, 6, 3, goppa_mode="irr")
    C, _ = sample_family_member(spec, np.random.default_rng(0))
    v = classify(C, DistinguisherConfig(r=8), cap_gb=1e-5)
    assert v.decision == "refused" and v.warnings


def test_classify_degree_errors():
    with pytest.raises(ValueError):
        classify(golay_ternary(), DistinguisherConfig(r=7))
    with pytest.raises(ValueError):
        classify(golay_ternary(), DistinguisherConfig(r=3, mode="basic"))


def test_calibrate_goppa444():
    out = calibrate(FamilySpec("goppa_dual", 4, 4, 4, goppa_mode="irr"), samples=2, D=5, seed=0)
    assert out["beta_star"] == GOPPA_4_4_4_BETA_STAR + [0]
    assert out["consensus"] and out["r_max"] == 4
    again = calibrate(FamilySpec("goppa_dual", 4, 4, 4, goppa_mode="irr"), samples=2, D=5, seed=0)
    assert again["strands"] == out["strands"]


def test_contingent_lower_bound():
    rng = np.random.default_rng(3)
    for _ in range(10):
        C = random_code(20, 8, 2, rng)
        st = linear_strand(C, 8)
        for r in range(2, 9):
            assert st.beta(r) >= max(phi_index(20, 8, r), 0)


def test_distance_distinguisher():
    rng = np.random.default_rng(32)
    found = sum(distance_distinguisher(random_code(32, 14, 2, rng), 3).decision == "special" for _ in range(200))
    assert found / 200 < 0.02
    # at n = 24 fewer than half of random codes reach d >= 7, so the average success exceeds 75%
    rng = np.random.default_rng(24)
    rand_ok = sum(distance_distinguisher(random_code(24, 6, 2, rng), 3).decision == "random" for _ in range(300)) / 300
    goppa_ok = 0
    for i in range(10):
        C, _ = sample_family_member(FamilySpec("goppa_dual", 2, 6, 3, n=24), np.random.default_rng([24, i]))
        goppa_ok += distance_distinguisher(C.dual(), 3).decision == "special"
    assert goppa_ok == 10
    assert (goppa_ok / 10 + rand_ok) / 2 > 0.75
    with pytest.raises(ValueError):
        distance_distinguisher(golay_ternary(), 3)
