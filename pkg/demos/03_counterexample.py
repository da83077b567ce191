"""
The ten-item counterexample
===========================

Three identical agents, three items worth ``b`` and seven worth ``a``
(``b > a``, ``4a > 3b``). A size-3 set taken from a maximin partition can be
worth more than the size-3 bundle an earlier picker received, so that
comparison cannot be used to bound the maximin share. The ``k/(k+1)``
guarantee still holds.
"""

from levelfair import reproduce_flaw
from levelfair.counterexample import narrative

print(narrative(reproduce_flaw(7, 9)))
print()

# the gap is exactly b - a for every admissible pair
for a, b in [(4, 5), (7, 9), (31, 40), (100, 130)]:
    rep = reproduce_flaw(a, b)
    print(f"a={a:3d} b={b:3d}  lhs-rhs={rep.claimed_lhs - rep.claimed_rhs:3d}  "
          f"mu={rep.mu_agent}  alpha={rep.alpha} (>= {rep.bound}: {rep.corrected_bound_holds})")
