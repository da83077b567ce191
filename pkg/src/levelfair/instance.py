"""Instances, allocations and quota plans for additive valuations.

Agents and items are zero-based. Valuations are stored as an ``n x m``
matrix of positive integers; a bundle's value is the sum of its items, so
every comparison in the package is exact integer arithmetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Iterable, Sequence


class InputError(ValueError):
    """Malformed instance, allocation, order or parameter."""


@dataclass(frozen=True)
class Instance:
    """``n`` agents, ``m`` items and the valuation matrix ``values[i][g]``.

    Construction only normalises the matrix into nested tuples of ints.
    Use :func:`validate` (report) or :func:`require_valid` (raise) to check
    dimensions and positivity.
    """

    num_agents: int
    num_items: int
    values: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(tuple(row) for row in self.values))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Instance":
        rows = [list(r) for r in rows]
        if not rows:
            raise InputError("instance needs at least one agent")
        return cls(len(rows), len(rows[0]), rows)

    @property
    def n(self) -> int:
        return self.num_agents

    @property
    def m(self) -> int:
        return self.num_items

    def to_json_obj(self) -> dict[str, Any]:
        return {"n": self.num_agents, "m": self.num_items, "values": [list(r) for r in self.values]}


@dataclass(frozen=True)
class Allocation:
    """Ordered sequence of bundles; ``bundles[i]`` belongs to agent ``i``.

    Bundles are stored as sorted tuples. Disjointness and completeness are
    properties relative to an instance, see :func:`check_allocation`.
    """

    bundles: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bundles", tuple(tuple(sorted(b)) for b in self.bundles))

    def __len__(self) -> int:
        return len(self.bundles)

    def __getitem__(self, agent: int) -> tuple[int, ...]:
        return self.bundles[agent]

    def sizes(self) -> list[int]:
        return [len(b) for b in self.bundles]

    def to_json_obj(self) -> dict[str, Any]:
        return {"bundles": [list(b) for b in self.bundles]}


@dataclass(frozen=True)
class QuotaPlan:
    """``m = k*n + r`` with ``0 <= r < n``; picker ``p`` receives ``sizes[p]`` items."""

    k: int
    r: int
    sizes: tuple[int, ...]


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]
    leveled: tuple[bool, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def all_leveled(self) -> bool:
        return self.ok and all(self.leveled)


def is_leveled(values_row: Sequence[int]) -> bool:
    """Whether an additive valuation with these item values is leveled.

    The cheapest bundle of size ``s + 1`` (the ``s + 1`` smallest items) must
    beat the dearest bundle of size ``s`` (the ``s`` largest items) for every
    ``s``; that is equivalent to every larger bundle beating every smaller one.

    >>> is_leveled([9, 9, 9, 7, 7, 7, 7, 7, 7, 7])
    True
    >>> is_leveled([9, 9, 9, 1, 1, 1, 1, 1, 1, 1])
    False
    """
    if len(values_row) == 0:
        raise InputError("no items")
    asc = sorted(values_row)
    m = len(asc)
    small = 0  # sum of the s+1 smallest
    large = 0  # sum of the s largest
    for s in range(m):
        small += asc[s]
        if s > 0:
            large += asc[m - s]
        if small <= large:
            return False
    return True


def validate(instance: Instance) -> ValidationReport:
    """Report dimension errors, nonpositive entries and per-agent leveledness."""
    violations: list[str] = []
    n, m = instance.num_agents, instance.num_items
    if not isinstance(n, int) or n < 1:
        violations.append(f"num_agents must be a positive integer, got {n!r}")
    if not isinstance(m, int) or m < 1:
        violations.append(f"num_items must be a positive integer, got {m!r}")
    if len(instance.values) != n:
        violations.append(f"values has {len(instance.values)} rows, expected {n}")
    leveled: list[bool] = []
    for i, row in enumerate(instance.values):
        row_ok = True
        if len(row) != m:
            violations.append(f"row {i} has {len(row)} entries, expected {m}")
            row_ok = False
        for g, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, int):
                violations.append(f"values[{i}][{g}] is not an integer: {v!r}")
                row_ok = False
            elif v <= 0:
                violations.append(f"nonpositive value at values[{i}][{g}] = {v}")
                row_ok = False
        leveled.append(row_ok and len(row) > 0 and is_leveled(row))
    return ValidationReport(tuple(violations), tuple(leveled))


def require_valid(instance: Instance) -> None:
    report = validate(instance)
    if not report.ok:
        raise InputError("; ".join(report.violations))


def bundle_value(instance: Instance, agent: int, bundle: Iterable[int]) -> int:
    if not 0 <= agent < instance.num_agents:
        raise InputError(f"agent index {agent} out of range [0, {instance.num_agents})")
    row = instance.values[agent]
    total = 0
    for g in bundle:
        if not 0 <= g < instance.num_items:
            raise InputError(f"item index {g} out of range [0, {instance.num_items})")
        total += row[g]
    return total


def quota_plan(n: int, m: int) -> QuotaPlan:
    """Split ``m`` items over ``n`` pickers: ``n - r`` get ``k``, the last ``r`` get ``k + 1``.

    >>> quota_plan(3, 10)
    QuotaPlan(k=3, r=1, sizes=(3, 3, 4))
    """
    if n < 1 or m < 1:
        raise InputError(f"quota plan needs n >= 1 and m >= 1, got n={n}, m={m}")
    k, r = divmod(m, n)
    return QuotaPlan(k, r, (k,) * (n - r) + (k + 1,) * r)


def check_allocation(instance: Instance, allocation: Allocation) -> None:
    """Raise :class:`InputError` unless ``allocation`` is a complete n-partition of the items."""
    n, m = instance.num_agents, instance.num_items
    if len(allocation.bundles) != n:
        raise InputError(f"allocation has {len(allocation.bundles)} bundles, expected {n}")
    seen: dict[int, int] = {}
    for i, bundle in enumerate(allocation.bundles):
        for g in bundle:
            if isinstance(g, bool) or not isinstance(g, int) or not 0 <= g < m:
                raise InputError(f"bundle {i} holds invalid item {g!r} (m={m})")
            if g in seen:
                raise InputError(f"item {g} appears in bundles {seen[g]} and {i}")
            seen[g] = i
    if len(seen) != m:
        missing = sorted(set(range(m)) - set(seen))
        raise InputError(f"allocation is incomplete, unassigned items {missing}")


# --- JSON ---------------------------------------------------------------


def dumps(obj: Any, canonical: bool = True) -> str:
    """Serialise with sorted keys; canonical mode has no optional whitespace."""
    if canonical:
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return json.dumps(obj, sort_keys=True, indent=2)


def _parse(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _int_field(obj: dict, key: str, what: str) -> int:
    if key not in obj:
        raise InputError(f"{what}: missing field '{key}'")
    val = obj[key]
    if isinstance(val, bool) or not isinstance(val, int):
        raise InputError(f"{what}: field '{key}' must be an integer, got {val!r}")
    return val


def instance_from_json(text: str) -> Instance:
    obj = _parse(text, "instance")
    if not isinstance(obj, dict):
        raise InputError("instance: top-level value must be an object")
    n = _int_field(obj, "n", "instance")
    m = _int_field(obj, "m", "instance")
    values = obj.get("values")
    if not isinstance(values, list) or not all(isinstance(r, list) for r in values):
        raise InputError("instance: field 'values' must be a list of lists")
    inst = Instance(n, m, values)
    require_valid(inst)
    return inst


def allocation_from_json(text: str) -> Allocation:
    obj = _parse(text, "allocation")
    if not isinstance(obj, dict) or not isinstance(obj.get("bundles"), list):
        raise InputError("allocation: missing field 'bundles' (list of lists)")
    bundles = obj["bundles"]
    for i, b in enumerate(bundles):
        if not isinstance(b, list):
            raise InputError(f"allocation: bundles[{i}] must be a list")
        for g in b:
            if isinstance(g, bool) or not isinstance(g, int):
                raise InputError(f"allocation: bundles[{i}] holds non-integer {g!r}")
    return Allocation(bundles)


def instance_to_json(instance: Instance, canonical: bool = True) -> str:
    return dumps(instance.to_json_obj(), canonical)


def allocation_to_json(allocation: Allocation, canonical: bool = True) -> str:
    return dumps(allocation.to_json_obj(), canonical)
