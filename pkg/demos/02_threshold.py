"""Where the strand separates dual Goppa codes from random codes.

Dual Goppa codes over GF(4) with m = t = 4 have dimension 16.  Shortening to
length n keeps a fixed beta_{3,4} = 12 for the Goppa codes, while a random
[n,16]_4 code has beta_{3,4} = 0 once n is large enough.  At n = 68 the map
phi_4 of a random code is square, so about a third of random codes show
beta_{3,4} = 1, still far from 12.  Below n = 68 the two classes coincide and
the test says so.
"""

import numpy as np

from syzkit.codes import FamilySpec, random_code, sample_family_member
from syzkit.distinguisher import DistinguisherConfig, classify

cfg = DistinguisherConfig(r=4, beta_star={4: 12}, mode="basic")
for n in (70, 68, 67):
    rng = np.random.default_rng(n)
    G, _ = sample_family_member(FamilySpec("goppa_dual", 4, 4, 4, n=n, goppa_mode="irr"), rng)
    R = random_code(n, 16, 4, rng)
    for name, C in (("Goppa", G), ("random", R)):
        v = classify(C, cfg)
        warn = f"  ({v.warnings[0]})" if v.warnings else ""
        print(f"n={n:>3} {name:>6}: beta_3,4 = {v.beta:>4}  -> {v.decision}{warn}")
