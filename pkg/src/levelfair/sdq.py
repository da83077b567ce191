"""Serial dictatorship with quotas.

Agents pick one after another in a fixed order. The first ``n - r`` pickers
take ``k = m // n`` items each, the remaining ``r`` pickers take ``k + 1``.
Each picker takes its favourite bundle of the prescribed size among the items
still available. With additive values that bundle is the top-``q`` items by
value; ties go to the lower item index, which also makes the chosen bundle the
lexicographically smallest among equal-value optima.
"""

from __future__ import annotations

from typing import Sequence

from levelfair.instance import Allocation, Instance, InputError, quota_plan, require_valid


def default_order(n: int) -> list[int]:
    if n < 1:
        raise InputError(f"picking order needs n >= 1, got {n}")
    return list(range(n))


def check_order(order: Sequence[int], n: int) -> list[int]:
    order = list(order)
    if sorted(order) != list(range(n)):
        raise InputError(f"picking order {order} is not a permutation of 0..{n - 1}")
    return order


def favourite_bundle(values_row: Sequence[int], available: Sequence[int], size: int) -> list[int]:
    """Best ``size`` items from ``available`` under one agent's values, lowest index on ties."""
    ranked = sorted(available, key=lambda g: (-values_row[g], g))
    return sorted(ranked[:size])


def run_sdq(instance: Instance, order: Sequence[int] | None = None) -> Allocation:
    """Run the quota picking sequence and return each agent's bundle.

    Args:
        instance: a valid instance; leveledness is not required to run.
        order: permutation of agent indices, identity when omitted.

    Returns:
        Allocation indexed by agent (not by picking position).

    >>> inst = Instance.from_rows([[5, 4, 3, 3], [5, 4, 3, 3]])
    >>> run_sdq(inst).bundles
    ((0, 1), (2, 3))
    """
    require_valid(instance)
    n = instance.num_agents
    order = default_order(n) if order is None else check_order(order, n)
    plan = quota_plan(n, instance.num_items)

    available = list(range(instance.num_items))
    bundles: list[list[int]] = [[] for _ in range(n)]
    for position, agent in enumerate(order):
        pick = favourite_bundle(instance.values[agent], available, plan.sizes[position])
        bundles[agent] = pick
        taken = set(pick)
        available = [g for g in available if g not in taken]
    return Allocation(bundles)
