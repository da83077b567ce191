"""Replay of the ten-item counterexample with three identical agents.

Items 0-2 are worth ``b`` and items 3-9 are worth ``a``, with ``b > a`` and
``4a > 3b`` so the valuation is leveled. The picking sequence gives agent 1
the bundle {3, 4, 5}. Agent 1 has a maximin partition B' in which item 5 sits
in a four-item bundle; dropping it leaves {2, 8, 9}, worth ``b + 2a``, which is
strictly more than agent 1's own ``3a``. So a size-3 set outside the picked
allocation can beat a picked size-3 bundle, even for an agent that picked
earlier. The ``k/(k+1)`` bound is audited on the same instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from levelfair.audit import OracleBudget, audit, fraction_json, mms_value
from levelfair.generator import counterexample_instance
from levelfair.instance import Allocation, Instance, bundle_value, check_allocation
from levelfair.sdq import default_order, run_sdq

# zero-based: agent 1 is the second agent, item 5 the sixth item
AGENT = 1
REMOVED_ITEM = 5
EXPECTED_B = Allocation([[0, 1, 2], [3, 4, 5], [6, 7, 8, 9]])
B_PRIME = Allocation([[0, 3, 4], [1, 6, 7], [2, 5, 8, 9]])
B_PRIME_BUNDLE = 2  # the bundle of B_PRIME holding REMOVED_ITEM


@dataclass(frozen=True)
class FlawReport:
    a: int
    b: int
    instance: Instance
    allocation_b: Allocation
    partition_b_prime: Allocation
    mu_agent: int
    b_prime_min: int
    claimed_lhs: int
    claimed_rhs: int
    flaw_confirmed: bool
    alpha: Fraction
    bound: Fraction
    corrected_bound_holds: bool

    def to_json_obj(self) -> dict[str, Any]:
        return {
            "a": self.a,
            "b": self.b,
            "instance": self.instance.to_json_obj(),
            "allocation_b": self.allocation_b.to_json_obj(),
            "partition_b_prime": self.partition_b_prime.to_json_obj(),
            "mu_agent": self.mu_agent,
            "b_prime_min": self.b_prime_min,
            "claimed_lhs": self.claimed_lhs,
            "claimed_rhs": self.claimed_rhs,
            "flaw_confirmed": self.flaw_confirmed,
            "alpha": fraction_json(self.alpha),
            "bound": fraction_json(self.bound),
            "corrected_bound_holds": self.corrected_bound_holds,
        }


def verify_bprime_is_mms(a: int, b: int, partition: Allocation | None = None, budget: OracleBudget | None = None) -> bool:
    """Whether ``partition`` (default: the published B') attains agent 1's maximin share."""
    instance = counterexample_instance(a, b)
    partition = B_PRIME if partition is None else partition
    check_allocation(instance, partition)
    worst = min(bundle_value(instance, AGENT, bundle) for bundle in partition.bundles)
    return worst == mms_value(instance, AGENT, "unrestricted", budget).mu


def reproduce_flaw(a: int = 7, b: int = 9, budget: OracleBudget | None = None) -> FlawReport:
    instance = counterexample_instance(a, b)
    allocation = run_sdq(instance, default_order(instance.num_agents))
    if allocation != EXPECTED_B:
        raise RuntimeError(f"picking sequence produced {allocation.bundles}, expected {EXPECTED_B.bundles}")

    mu = mms_value(instance, AGENT, "unrestricted", budget).mu
    b_prime_min = min(bundle_value(instance, AGENT, bundle) for bundle in B_PRIME.bundles)
    if b_prime_min != mu:
        raise RuntimeError(f"B' attains {b_prime_min} but the maximin share is {mu}")

    remainder = [g for g in B_PRIME[B_PRIME_BUNDLE] if g != REMOVED_ITEM]
    lhs = bundle_value(instance, AGENT, remainder)
    rhs = bundle_value(instance, AGENT, allocation[AGENT])
    report = audit(instance, allocation, "unrestricted", budget)
    return FlawReport(
        a=a,
        b=b,
        instance=instance,
        allocation_b=allocation,
        partition_b_prime=B_PRIME,
        mu_agent=mu,
        b_prime_min=b_prime_min,
        claimed_lhs=lhs,
        claimed_rhs=rhs,
        flaw_confirmed=lhs > rhs,
        alpha=report.alpha,
        bound=report.bound,
        corrected_bound_holds=bool(report.bound_satisfied),
    )


def narrative(report: FlawReport) -> str:
    """Plain-text, step-by-step walk through the report (items and agents are 1-based here)."""
    a, b = report.a, report.b

    def items(bundle) -> str:
        return "{" + ", ".join(f"g{g + 1}" for g in bundle) + "}"

    lines = [
        f"Instance: 3 identical agents, items g1..g3 worth b={b}, g4..g10 worth a={a}.",
        f"  leveled because b > a ({b} > {a}) and 4a > 3b ({4 * a} > {3 * b}).",
        "Picking sequence (identity order, quotas 3, 3, 4):",
    ]
    for i, bundle in enumerate(report.allocation_b.bundles):
        lines.append(f"  B{i + 1} = {items(bundle)}  value {bundle_value(report.instance, i, bundle)}")
    lines.append("Maximin partition B' for agent a2:")
    for j, bundle in enumerate(report.partition_b_prime.bundles):
        lines.append(f"  B'{j + 1} = {items(bundle)}  value {bundle_value(report.instance, AGENT, bundle)}")
    lines += [
        f"  min over B' = {report.b_prime_min} = mu_2 (exhaustive oracle)",
        f"Take g = g{REMOVED_ITEM + 1} in B2 (value {a} <= {report.claimed_rhs}/2); it lies in B'3.",
        f"Claimed: V2(B'3 \\ g) <= V2(B2), i.e. {report.claimed_lhs} <= {report.claimed_rhs}.",
        f"Actual:  {report.claimed_lhs} {'>' if report.flaw_confirmed else '<='} {report.claimed_rhs}; "
        + ("the claimed inequality fails." if report.flaw_confirmed else "the claimed inequality holds."),
        f"Corrected bound: alpha = {report.alpha} vs k/(k+1) = {report.bound}: "
        + ("satisfied." if report.corrected_bound_holds else "VIOLATED."),
    ]
    return "\n".join(lines)
