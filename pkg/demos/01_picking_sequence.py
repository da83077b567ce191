"""
Picking sequence with quotas
============================

Agents choose in turn. With ``m = k*n + r`` items the first ``n - r``
pickers take ``k`` items each and the last ``r`` take ``k + 1``.
"""

from levelfair import Instance, bundle_value, check_efx, is_leveled, quota_plan, run_sdq

# three agents, seven items; every row is leveled (any 3 items beat any 2, ...)
inst = Instance.from_rows([
    [12, 11, 10, 10, 9, 9, 8],
    [9, 12, 12, 8, 10, 9, 11],
    [10, 10, 10, 10, 10, 10, 13],
])
print("leveled rows:", [is_leveled(row) for row in inst.values])
print("quota plan:", quota_plan(inst.n, inst.m))

# identity order: agent 2 picks last and gets k + 1 = 3 items
alloc = run_sdq(inst)
for agent, bundle in enumerate(alloc.bundles):
    print(f"agent {agent}: items {bundle} worth {bundle_value(inst, agent, bundle)} to them")

# any order gives an EFX allocation on leveled instances
for order in ([0, 1, 2], [2, 1, 0], [1, 2, 0]):
    alloc = run_sdq(inst, order)
    print(order, alloc.bundles, "EFX" if check_efx(inst, alloc)[0] else "not EFX")
