"""Exact fairness checks: EF, EFX, maximin shares and alpha-MMS ratios.

The maximin-share oracle is an exhaustive search over item-to-bundle
assignments. Two modes are supported:

``unrestricted``
    every n-partition of the items.
``balanced``
    only partitions with ``n - r`` bundles of ``k`` items and ``r`` bundles of
    ``k + 1`` items, where ``m = k*n + r``.

Search order is canonical: items are placed in index order, item 0 always
goes to bundle 0, and bundle ``b + 1`` is never opened before bundle ``b``.
Branch-and-bound pruning only ever discards subtrees that cannot contain a
strictly better partition, so the witness is the first maximiser in that
order whether or not pruning is on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Literal, Sequence

from levelfair.instance import (
    Allocation,
    Instance,
    InputError,
    bundle_value,
    check_allocation,
    quota_plan,
    require_valid,
)

Mode = Literal["unrestricted", "balanced"]
MODES = ("unrestricted", "balanced")


class OracleInfeasible(RuntimeError):
    """The requested maximin-share search exceeds the configured budget."""


@dataclass(frozen=True)
class OracleBudget:
    """Size limits for the exhaustive oracle.

    ``max_nodes`` caps the number of search nodes; ``None`` means no cap.
    Single-agent instances are always feasible (the share is the total).
    """

    max_agents: int = 4
    max_items: int = 14
    max_nodes: int | None = None

    def feasible(self, n: int, m: int) -> bool:
        return n == 1 or (n <= self.max_agents and m <= self.max_items)


DEFAULT_BUDGET = OracleBudget()


@dataclass(frozen=True)
class MmsResult:
    agent: int
    mu: int
    witness: Allocation
    mode: str

    def to_json_obj(self) -> dict[str, Any]:
        return {"agent": self.agent, "mu": self.mu, "mode": self.mode, "witness": self.witness.to_json_obj()}


def fraction_json(value: Fraction | None) -> dict[str, Any] | None:
    """``{"num", "den", "decimal"}`` with the decimal rounded half-even to 6 places."""
    if value is None:
        return None
    scaled = round(value * 10**6)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**6)
    return {"num": value.numerator, "den": value.denominator, "decimal": f"{sign}{whole}.{frac:06d}"}


# --- envy checks --------------------------------------------------------


def check_ef(instance: Instance, allocation: Allocation) -> tuple[bool, tuple[int, int] | None]:
    """Envy-freeness; on failure returns the lexicographically first envious pair ``(i, j)``."""
    check_allocation(instance, allocation)
    n = instance.num_agents
    for i in range(n):
        own = bundle_value(instance, i, allocation[i])
        for j in range(n):
            if i != j and bundle_value(instance, i, allocation[j]) > own:
                return False, (i, j)
    return True, None


def check_efx(instance: Instance, allocation: Allocation) -> tuple[bool, tuple[int, int, int] | None]:
    """Envy-freeness up to any good.

    With additive values it is enough to drop the item ``i`` likes least from
    ``B_j``. On failure the witness is ``(i, j, g)`` for the first violating
    pair, with ``g`` that least-liked item (lowest index on ties).
    """
    check_allocation(instance, allocation)
    n = instance.num_agents
    for i in range(n):
        row = instance.values[i]
        own = bundle_value(instance, i, allocation[i])
        for j in range(n):
            other = allocation[j]
            if i == j or not other:
                continue
            g = min(other, key=lambda item: (row[item], item))
            if bundle_value(instance, i, other) - row[g] > own:
                return False, (i, j, g)
    return True, None


# --- maximin share oracle -----------------------------------------------


def _water_level(sums: list[int], extra: int) -> int:
    """Best possible minimum if ``extra`` could be poured divisibly into the bundles."""
    s = sorted(sums)
    n = len(s)
    total = extra
    for j in range(1, n + 1):
        total += s[j - 1]
        level = total // j
        if j == n or level <= s[j]:
            return level
    raise AssertionError("unreachable")


def _greedy_lower_bound(vals: Sequence[int], n: int, capacities: Sequence[int] | None) -> int:
    """Min bundle value of a largest-first greedy partition (a feasible solution)."""
    sums = [0] * n
    sizes = [0] * n
    for v in sorted(vals, reverse=True):
        open_bundles = [b for b in range(n) if capacities is None or sizes[b] < capacities[b]]
        b = min(open_bundles, key=lambda x: (sums[x], x))
        sums[b] += v
        sizes[b] += 1
    return min(sums)


def max_min_partition(
    vals: Sequence[int],
    n: int,
    balanced: bool = False,
    prune: bool = True,
    max_nodes: int | None = None,
) -> tuple[int, list[int]]:
    """Maximise the minimum bundle sum over n-partitions of ``vals``.

    Returns ``(mu, assignment)`` where ``assignment[g]`` is the bundle of item
    ``g``. Raises :class:`OracleInfeasible` if more than ``max_nodes`` search
    nodes are needed.
    """
    m = len(vals)
    suffix = [0] * (m + 1)
    for g in range(m - 1, -1, -1):
        suffix[g] = suffix[g + 1] + vals[g]
    k, r = divmod(m, n)
    # top[g][j]: sum of the j largest values among items g..m-1
    top = []
    for g in range(m + 1):
        acc = [0]
        for v in sorted(vals[g:], reverse=True):
            acc.append(acc[-1] + v)
        top.append(acc)

    sums = [0] * n
    sizes = [0] * n
    assign = [0] * m
    best = -1
    best_assign: list[int] | None = None
    lower = 0
    if prune:
        caps = [k] * (n - r) + [k + 1] * r if balanced else None
        lower = _greedy_lower_bound(vals, n, caps)
    nodes = 0
    big = 0  # balanced: bundles already holding k + 1 items
    deficit = n * k  # balanced: items still needed to bring every bundle up to k

    def rec(g: int, opened: int) -> None:
        nonlocal best, best_assign, nodes, big, deficit
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise OracleInfeasible(f"oracle exceeded node budget of {max_nodes}")
        if g == m:
            value = min(sums)
            if value > best:
                best = value
                best_assign = assign[:]
            return
        if prune:
            bound = _water_level(sums, suffix[g])
            # some bundle ends with at most k items; it caps the minimum
            tg = top[g]
            cap = max(
                (sums[b] + tg[min(k - sizes[b], m - g)] for b in range(n) if sizes[b] <= k),
                default=-1,
            )
            bound = min(bound, cap)
            if bound <= best or bound < lower:
                return
        v = vals[g]
        left_after = m - g - 1
        for b in range(min(opened + 1, n)):
            if balanced:
                size = sizes[b]
                if size == k + 1 or (size == k and big == r):
                    continue
                new_deficit = deficit - 1 if size < k else deficit
                if new_deficit > left_after:
                    continue
                old_deficit = deficit
                deficit = new_deficit
                if size == k:
                    big += 1
            sums[b] += v
            sizes[b] += 1
            assign[g] = b
            rec(g + 1, max(opened, b + 1))
            sums[b] -= v
            sizes[b] -= 1
            if balanced:
                deficit = old_deficit
                if size == k:
                    big -= 1

    rec(0, 0)
    assert best_assign is not None
    return best, best_assign


def mms_value(
    instance: Instance,
    agent: int,
    mode: Mode = "unrestricted",
    budget: OracleBudget | None = None,
    prune: bool = True,
) -> MmsResult:
    """Exact maximin share of ``agent`` with a witness partition.

    >>> inst = Instance.from_rows([[5, 4, 3, 3], [5, 4, 3, 3]])
    >>> res = mms_value(inst, 0)
    >>> res.mu, res.witness.bundles
    (7, ((0, 2), (1, 3)))
    """
    require_valid(instance)
    if mode not in MODES:
        raise InputError(f"unknown oracle mode {mode!r}, expected one of {MODES}")
    n, m = instance.num_agents, instance.num_items
    if not 0 <= agent < n:
        raise InputError(f"agent index {agent} out of range [0, {n})")
    vals = instance.values[agent]
    if n == 1:
        return MmsResult(agent, sum(vals), Allocation([range(m)]), mode)
    budget = budget or DEFAULT_BUDGET
    if not budget.feasible(n, m):
        raise OracleInfeasible(
            f"oracle infeasible for n={n}, m={m} (limits n <= {budget.max_agents}, m <= {budget.max_items})"
        )
    mu, assign = max_min_partition(vals, n, balanced=mode == "balanced", prune=prune, max_nodes=budget.max_nodes)
    bundles: list[list[int]] = [[] for _ in range(n)]
    for g, b in enumerate(assign):
        bundles[b].append(g)
    return MmsResult(agent, mu, Allocation(bundles), mode)


def all_mms(
    instance: Instance, mode: Mode = "unrestricted", budget: OracleBudget | None = None
) -> list[int]:
    """Maximin shares of every agent; agents with identical rows share one search."""
    cache: dict[tuple[int, ...], int] = {}
    mus = []
    for i, row in enumerate(instance.values):
        key = tuple(row)
        if key not in cache:
            cache[key] = mms_value(instance, i, mode, budget).mu
        mus.append(cache[key])
    return mus


def alpha_mms(
    instance: Instance,
    allocation: Allocation,
    mode: Mode = "unrestricted",
    budget: OracleBudget | None = None,
) -> tuple[list[Fraction | None], Fraction | None]:
    """Per-agent ratios ``V_i(B_i) / mu_i`` and their minimum.

    A zero share (only possible when n > m) leaves the agent unconstrained;
    its ratio is reported as ``None`` and ignored in the minimum.
    """
    check_allocation(instance, allocation)
    mus = all_mms(instance, mode, budget)
    ratios: list[Fraction | None] = []
    for i, mu in enumerate(mus):
        own = bundle_value(instance, i, allocation[i])
        ratios.append(Fraction(own, mu) if mu > 0 else None)
    finite = [x for x in ratios if x is not None]
    return ratios, (min(finite) if finite else None)


# --- combined report ----------------------------------------------------


@dataclass(frozen=True)
class AuditReport:
    ef: bool
    ef_witness: tuple[int, int] | None
    efx: bool
    efx_witness: tuple[int, int, int] | None
    quota_respected: bool
    bound: Fraction
    mode: str
    mus: tuple[int, ...] | None = None
    ratios: tuple[Fraction | None, ...] | None = None
    alpha: Fraction | None = None
    bound_satisfied: bool | None = None
    ratios_unavailable: str | None = None

    @property
    def ratios_computed(self) -> bool:
        return self.ratios is not None

    @property
    def passed(self) -> bool:
        """EFX holds and, when ratios were computed, the k/(k+1) bound holds."""
        return self.efx and (self.bound_satisfied is not False)

    def to_json_obj(self) -> dict[str, Any]:
        return {
            "ef": self.ef,
            "ef_witness": list(self.ef_witness) if self.ef_witness else None,
            "efx": self.efx,
            "efx_witness": list(self.efx_witness) if self.efx_witness else None,
            "quota_respected": self.quota_respected,
            "mode": self.mode,
            "mus": list(self.mus) if self.mus is not None else None,
            "ratios": [fraction_json(x) for x in self.ratios] if self.ratios is not None else None,
            "alpha": fraction_json(self.alpha),
            "bound": fraction_json(self.bound),
            "bound_satisfied": self.bound_satisfied,
            "ratios_unavailable": self.ratios_unavailable,
        }


def mms_bound(n: int, m: int) -> Fraction:
    k = quota_plan(n, m).k
    return Fraction(k, k + 1)


def audit(
    instance: Instance,
    allocation: Allocation,
    mode: Mode = "unrestricted",
    budget: OracleBudget | None = None,
    efx_only: bool = False,
) -> AuditReport:
    """EF, EFX, alpha-MMS ratios and the ``k/(k+1)`` bound check in one report.

    If the oracle is over budget (or ``efx_only`` is set) the envy checks are
    still reported and the ratio fields stay empty with a reason attached.
    """
    require_valid(instance)
    check_allocation(instance, allocation)
    n, m = instance.num_agents, instance.num_items
    ef, ef_w = check_ef(instance, allocation)
    efx, efx_w = check_efx(instance, allocation)
    quota_ok = sorted(allocation.sizes()) == sorted(quota_plan(n, m).sizes)
    bound = mms_bound(n, m)
    base = dict(ef=ef, ef_witness=ef_w, efx=efx, efx_witness=efx_w, quota_respected=quota_ok, bound=bound, mode=mode)
    if efx_only:
        return AuditReport(**base, ratios_unavailable="efx-only")
    try:
        mus = all_mms(instance, mode, budget)
    except OracleInfeasible as exc:
        return AuditReport(**base, ratios_unavailable=str(exc))
    ratios = tuple(
        Fraction(bundle_value(instance, i, allocation[i]), mu) if mu > 0 else None for i, mu in enumerate(mus)
    )
    finite = [x for x in ratios if x is not None]
    alpha = min(finite) if finite else None
    return AuditReport(
        **base,
        mus=tuple(mus),
        ratios=ratios,
        alpha=alpha,
        bound_satisfied=alpha is None or alpha >= bound,
    )
