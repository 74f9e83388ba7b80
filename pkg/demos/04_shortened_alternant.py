"""Shortening a dual alternant code walks its strand down.

Alt dual (2,10,5) has r* = 8.  Each shortening by one position lowers the
strand; after s positions the values at degrees above 8 - s vanish, as the
Eagon-Northcott bound predicts.  Three samples per row keep the run short.
"""

from syzkit.bounds import en_strand_bound, alternant_en_params
from syzkit.codes import FamilySpec
from syzkit.distinguisher import calibrate

spec = FamilySpec("alt_dual", 2, 10, 5)
f = alternant_en_params(2, 5).f
print("s  strand beta_{1,2} ..            EN lower bound at r = 2 .. 8 - s")
for s in (3, 4, 5, 6):
    out = calibrate(spec, 3, min(8, spec.k - s), s=s, seed=0)
    bound = [en_strand_bound(f, s, r, 10) for r in range(2, 9 - s)]
    print(f"{s}  {str(out['beta_star']):<28} {bound}")
