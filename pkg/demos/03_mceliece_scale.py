"""Classic McEliece sizes: formulas yes, strands no.

The audit evaluates the shortening, the GV distances and the kappa estimate
for the five parameter sets.  Computing an actual strand at that size is far
beyond a desktop, so the strand routine predicts the memory of the next step
and stops before allocating it.
"""

import numpy as np

from syzkit.codes import FamilySpec, sample_family_member
from syzkit.distinguisher import mceliece_audit
from syzkit.syzygy import linear_strand

print(f"{'n':>5} {'t':>4} {'r*':>4} {'s':>4} {'[n_s,k_s]':>12} {'ratio':>7} {'d_GV':>5} {'d_GV^':>5}  log2 kappa")
for p in mceliece_audit():
    d = p.as_dict()
    print(f"{d['n']:>5} {d['t']:>4} {d['r_star']:>4} {d['s']:>4} {'[%d,%d]' % (d['n_s'], d['k_s']):>12} "
          f"{d['ratio']:>7} {d['d_gv']:>5} {d['d_gv_dual']:>5}  {d['kappa']}")

print("\nbuilding the dual of a length-3488 binary Goppa code (m=12, t=64) ...")
C, _ = sample_family_member(FamilySpec("goppa_dual", 2, 12, 64, n=3488, goppa_mode="irr"), np.random.default_rng(0))
st = linear_strand(C, 3, cap_gb=4.0)
print(f"[{C.n},{C.k}] strand: {st.refused}")
