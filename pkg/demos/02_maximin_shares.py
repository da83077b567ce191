"""
Exact maximin shares
====================

The oracle enumerates partitions exhaustively (with pruning that never
changes the answer) and returns the share together with a witness.
"""

from levelfair import OracleBudget, OracleInfeasible, audit, mms_value, run_sdq
from levelfair.generator import GenConfig, gen_leveled

inst = gen_leveled(GenConfig(n=3, m=8, base_max=10, seed=2024))
print("values:", inst.values)

for agent in range(inst.n):
    res = mms_value(inst, agent)
    print(f"agent {agent}: mu = {res.mu}, witness {res.witness.bundles}")

# on leveled instances the best partition can always be taken balanced
print("balanced shares:", [mms_value(inst, i, "balanced").mu for i in range(inst.n)])

report = audit(inst, run_sdq(inst))
print("ratios:", [str(x) for x in report.ratios])
print(f"alpha = {report.alpha} >= k/(k+1) = {report.bound}: {report.bound_satisfied}")

# the oracle refuses instead of approximating
big = gen_leveled(GenConfig(n=5, m=16, seed=1))
try:
    mms_value(big, 0)
except OracleInfeasible as exc:
    print("refused:", exc)
print("with a larger budget the caller accepts the cost:",
      mms_value(gen_leveled(GenConfig(2, 16, seed=1)), 0, budget=OracleBudget(max_items=16)).mu)
