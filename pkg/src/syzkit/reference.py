"""Reference values used by `syzkit reproduce` and the acceptance tests.

Diagrams are stored as (strand, row2) with strand[i] = beta_{i+1,i+2} and
row2[i] = beta_{i+1,i+3}.  Tables use the same indexing as their headers.
"""

from __future__ import annotations

DIAGRAMS = {
    "fig-hamming": {"strand": [3, 0, 0], "row2": [1, 6, 3]},
    "fig-golay3": {"strand": [10, 16, 0, 0, 0], "row2": [1, 5, 26, 20, 5]},
    "fig-golay2": {
        "strand": [55, 320, 891, 1408, 1210, 320, 55, 0, 0, 0, 0],
        "row2": [1, 11, 55, 220, 650, 1672, 1870, 1221, 485, 110, 11],
    },
    "fig-parity9": {"strand": [27, 105, 189, 189, 105, 27, 0], "row2": [0, 0, 0, 0, 0, 0, 1]},
    "fig-grs15": {"strand": [21, 70, 105, 84, 35, 6, 0], "row2": [7, 42, 105, 140, 105, 42, 7]},
    "fig-pi": {
        "strand": [55, 319, 884, 1397, 1224, 490, 121, 18, 1, 0, 0],
        "row2": [0, 4, 44, 234, 820, 1738, 1888, 1222, 485, 110, 11],
    },
}

# s -> strand beta_{1,2} .. beta_{7,8} of s-shortened Alt^perp_{2,10,5}
ALT_2_10_5 = {
    0: [251, 1400, 3230, 2480, 1400, 480, 70],
    1: [202, 880, 1170, 840, 350, 60, 0],
    2: [154, 440, 450, 240, 50, 0, 0],
    3: [107, 200, 150, 40, 0, 0, 0],
    4: [66, 80, 30, 0, 0, 0, 0],
    5: [31, 20, 0, 0, 0, 0, 0],
    6: [10, 0, 0, 0, 0, 0, 0],
    7: [0, 0, 0, 0, 0, 0, 0],
}

GOPPA_4_4_4_BETA_STAR = [40, 80, 12]

# n -> (beta_{2,3} Goppa, beta_{2,3} random, beta_{3,4} Goppa, beta_{3,4} random)
THRESHOLD_4_4_4 = {
    88: (80, 40, 12, 0),
    87: (80, 55, 12, 0),
    86: (80, 70, 12, 0),
    85: (85, 85, 12, 0),
    84: (100, 100, 12, 0),
    70: (310, 310, 12, 0),
    69: (325, 325, 12, 0),
    68: (340, 340, 12, 0),
    67: (355, 355, 105, 105),
    66: (370, 370, 210, 210),
}

GOPPA_2_6_3_TOP = {6: 1020, 7: 288, 8: 42}

MCELIECE_TABLE = [
    {"n": 3488, "m": 12, "t": 64, "r_star": 427, "s": 377, "n_s": 3111, "k_s": 391, "ratio": 49.27, "d_gv": 921, "d_gv_dual": 55, "kappa": 528, "cond2": True},
    {"n": 4608, "m": 13, "t": 96, "r_star": 683, "s": 568, "n_s": 4040, "k_s": 680, "ratio": 114.62, "d_gv": 1069, "d_gv_dual": 62, "kappa": 1080, "cond2": False},
    {"n": 6688, "m": 13, "t": 128, "r_star": 939, "s": 816, "n_s": 5872, "k_s": 848, "ratio": 122.61, "d_gv": 1650, "d_gv_dual": 122, "kappa": 1224, "cond2": False},
    {"n": 6960, "m": 13, "t": 119, "r_star": 867, "s": 769, "n_s": 6191, "k_s": 778, "ratio": 97.89, "d_gv": 1828, "d_gv_dual": 108, "kappa": 1030, "cond2": True},
    {"n": 8192, "m": 13, "t": 128, "r_star": 939, "s": 848, "n_s": 7344, "k_s": 816, "ratio": 90.78, "d_gv": 2256, "d_gv_dual": 110, "kappa": 997, "cond2": True},
]

ENTROPY_RATES_Q2 = (0.277, 0.141)

# (d, d_dual) -> {r: (mean, lo, hi)} for random [56,16]_2 codes, r = 2..8
STATDEF = {
    (11, 3): {2: (0.0, 0, 0), 3: (1.269, 1, 3), 4: (23.821, 15, 55), 5: (6.927, 5, 21), 6: (1.341, 1, 7), 7: (0.042, 0, 1), 8: (0.0, 0, 0)},
    (12, 3): {2: (0.0, 0, 0), 3: (1.245, 1, 3), 4: (23.171, 15, 52), 5: (1.948, 1, 8), 6: (0.086, 0, 1), 7: (0.001, 0, 0), 8: (0.0, 0, 0)},
    (13, 3): {2: (0.0, 0, 0), 3: (1.201, 1, 3), 4: (21.975, 15, 48), 5: (0.345, 0, 5), 6: (0.006, 0, 1), 7: (0.0, 0, 0), 8: (0.0, 0, 0)},
    (14, 3): {2: (0.0, 0, 0), 3: (1.164, 1, 3), 4: (20.902, 14, 47), 5: (0.067, 0, 1), 6: (0.0, 0, 0), 7: (0.0, 0, 0), 8: (0.0, 0, 0)},
    (11, 4): {2: (0.0, 0, 0), 3: (0.0, 0, 0), 4: (6.178, 1, 14), 5: (6.514, 5, 20), 6: (1.263, 1, 7), 7: (0.035, 0, 1), 8: (0.0, 0, 0)},
    (12, 4): {2: (0.0, 0, 0), 3: (0.0, 0, 0), 4: (5.963, 1, 14), 5: (1.882, 1, 8), 6: (0.090, 0, 1), 7: (0.0, 0, 0), 8: (0.0, 0, 0)},
    (13, 4): {2: (0.0, 0, 0), 3: (0.0, 0, 0), 4: (5.525, 1, 12), 5: (0.357, 0, 5), 6: (0.010, 0, 1), 7: (0.001, 0, 0), 8: (0.0, 0, 0)},
    (14, 4): {2: (0.0, 0, 0), 3: (0.0, 0, 0), 4: (4.885, 1, 11), 5: (0.053, 0, 1), 6: (0.0, 0, 0), 7: (0.0, 0, 0), 8: (0.0, 0, 0)},
    (11, 5): {2: (0.0, 0, 0), 3: (0.0, 0, 0), 4: (0.0, 0, 0), 5: (5.847, 5, 15), 6: (1.153, 1, 6), 7: (0.020, 0, 1), 8: (0.0, 0, 0)},
    (12, 5): {2: (0.0, 0, 0), 3: (0.0, 0, 0), 4: (0.0, 0, 0), 5: (1.485, 1, 6), 6: (0.055, 0, 1), 7: (0.001, 0, 0), 8: (0.0, 0, 0)},
    (13, 5): {2: (0.0, 0, 0), 3: (0.0, 0, 0), 4: (0.0, 0, 0), 5: (0.197, 0, 2), 6: (0.002, 0, 0), 7: (0.0, 0, 0), 8: (0.0, 0, 0)},
    (14, 5): {2: (0.0, 0, 0), 3: (0.0, 0, 0), 4: (0.0, 0, 0), 5: (0.033, 0, 1), 6: (0.0, 0, 0), 7: (0.0, 0, 0), 8: (0.0, 0, 0)},
}


def statdef_mean_ok(measured: float, expected: float) -> bool:
    """Agreement rule for defect means: 20% relative at or above 1, 0.05 absolute below."""
    if expected >= 1.0:
        return abs(measured - expected) <= 0.2 * expected
    return abs(measured - expected) <= 0.05
