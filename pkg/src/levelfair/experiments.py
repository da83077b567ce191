"""Seeded sweeps of the picking sequence over grids of (n, m) cells.

Every trial draws a leveled instance, runs the picking sequence, audits the
result and yields one :class:`TrialRecord`. Trial seeds depend only on
``(base_seed, cell index, trial index)``::

    seed = base_seed XOR mix64((cell_index << 32) | trial_index)

so any cell or trial can be replayed on its own. Random picking orders are a
Fisher-Yates shuffle driven by ``SplitMix64(mix64(seed XOR ORDER_SALT))``.
Results are emitted in (cell, trial) order whatever the worker count.
"""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from levelfair.audit import MODES, OracleBudget, audit, fraction_json
from levelfair.generator import MASK64, GenConfig, SplitMix64, gen_leveled, mix64
from levelfair.instance import InputError, quota_plan
from levelfair.sdq import default_order, run_sdq

ORDER_SALT = 0x5DEECE66D
CSV_COLUMNS = [
    "n", "m", "k", "r", "seed", "efx_ok",
    "alpha_num", "alpha_den", "alpha_decimal",
    "bound_num", "bound_den", "bound_ok", "runtime_micros",
]


class ConfigError(InputError):
    """Invalid sweep configuration."""


@dataclass(frozen=True)
class Cell:
    n: int
    m: int
    efx_only: bool = False


@dataclass(frozen=True)
class SweepConfig:
    cells: tuple[Cell, ...]
    trials: int = 100
    base_seed: int = 0
    order: str = "identity"
    oracle_mode: str = "unrestricted"
    budget: OracleBudget = field(default_factory=OracleBudget)
    base_max: int = 10
    identical_agents: bool = False
    record_runtime: bool = False
    workers: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", tuple(self.cells))
        if self.trials < 0:
            raise ConfigError(f"trials must be >= 0, got {self.trials}")
        if self.order not in ("identity", "random"):
            raise ConfigError(f"order must be 'identity' or 'random', got {self.order!r}")
        if self.oracle_mode not in MODES:
            raise ConfigError(f"oracle mode must be one of {MODES}, got {self.oracle_mode!r}")
        if not 0 <= self.base_seed <= MASK64:
            raise ConfigError(f"base_seed must be an unsigned 64-bit integer, got {self.base_seed}")
        if self.base_max < 1 or self.workers < 1:
            raise ConfigError("base_max and workers must be >= 1")
        for c in self.cells:
            if not 1 <= c.n <= c.m:
                raise ConfigError(f"cell (n={c.n}, m={c.m}) needs 1 <= n <= m")
            if not c.efx_only and not self.budget.feasible(c.n, c.m):
                raise ConfigError(
                    f"cell (n={c.n}, m={c.m}) exceeds the oracle budget; mark it efx_only or raise the limits"
                )

    @classmethod
    def from_json_obj(cls, obj: dict[str, Any]) -> "SweepConfig":
        """Build from a config mapping.

        ``grid`` entries are ``[n, m]`` pairs or ``{"n", "m", "efx_only"}``
        objects; ``budget`` is ``{"max_agents", "max_items", "max_nodes"}``.
        """
        if not isinstance(obj, dict):
            raise ConfigError("sweep config must be a JSON object")
        known = {"grid", "trials", "base_seed", "order", "oracle_mode", "budget",
                 "base_max", "identical_agents", "record_runtime", "workers"}
        unknown = set(obj) - known
        if unknown:
            raise ConfigError(f"unknown sweep config fields {sorted(unknown)}")
        cells = []
        for entry in obj.get("grid", []):
            if isinstance(entry, list) and len(entry) == 2:
                cells.append(Cell(int(entry[0]), int(entry[1])))
            elif isinstance(entry, dict) and "n" in entry and "m" in entry:
                cells.append(Cell(int(entry["n"]), int(entry["m"]), bool(entry.get("efx_only", False))))
            else:
                raise ConfigError(f"bad grid entry {entry!r}")
        kwargs = {key: obj[key] for key in known - {"grid", "budget"} if key in obj}
        for key, val in kwargs.items():
            expected = bool if key in ("identical_agents", "record_runtime") else str if key in ("order", "oracle_mode") else int
            if not isinstance(val, expected) or (expected is int and isinstance(val, bool)):
                raise ConfigError(f"field '{key}' must be of type {expected.__name__}, got {val!r}")
        try:
            budget = OracleBudget(**obj.get("budget", {}))
        except TypeError as exc:
            raise ConfigError(f"bad budget: {exc}") from None
        return cls(cells=tuple(cells), budget=budget, **kwargs)


@dataclass(frozen=True)
class TrialRecord:
    n: int
    m: int
    k: int
    r: int
    seed: int
    efx_ok: bool
    alpha: Fraction | None
    bound: Fraction
    bound_ok: bool | None
    runtime_micros: int | None = None

    def csv_row(self) -> list[str]:
        alpha = fraction_json(self.alpha)
        return [
            str(self.n), str(self.m), str(self.k), str(self.r), str(self.seed),
            _flag(self.efx_ok),
            str(alpha["num"]) if alpha else "",
            str(alpha["den"]) if alpha else "",
            alpha["decimal"] if alpha else "",
            str(self.bound.numerator), str(self.bound.denominator),
            _flag(self.bound_ok),
            "" if self.runtime_micros is None else str(self.runtime_micros),
        ]


def _flag(value: bool | None) -> str:
    return "" if value is None else ("true" if value else "false")


def trial_seed(base_seed: int, cell_index: int, trial_index: int) -> int:
    return base_seed ^ mix64((cell_index << 32) | trial_index)


def trial_order(seed: int, n: int, policy: str) -> list[int]:
    if policy == "identity":
        return default_order(n)
    return SplitMix64(mix64(seed ^ ORDER_SALT)).permutation(n)


@dataclass(frozen=True)
class _Task:
    cell: Cell
    seed: int
    order: str
    mode: str
    budget: OracleBudget
    base_max: int
    identical: bool
    timed: bool


def _run_trial(task: _Task) -> TrialRecord:
    start = time.perf_counter_ns()
    n, m = task.cell.n, task.cell.m
    instance = gen_leveled(GenConfig(n, m, task.base_max, task.seed, task.identical))
    allocation = run_sdq(instance, trial_order(task.seed, n, task.order))
    report = audit(instance, allocation, task.mode, task.budget, efx_only=task.cell.efx_only)
    if not task.cell.efx_only and not report.ratios_computed:
        raise RuntimeError(f"oracle failed mid-sweep: {report.ratios_unavailable}")
    plan = quota_plan(n, m)
    elapsed = (time.perf_counter_ns() - start) // 1000
    return TrialRecord(
        n=n, m=m, k=plan.k, r=plan.r, seed=task.seed,
        efx_ok=report.efx,
        alpha=report.alpha,
        bound=report.bound,
        bound_ok=report.bound_satisfied,
        runtime_micros=elapsed if task.timed else None,
    )


def _tasks(config: SweepConfig) -> list[_Task]:
    return [
        _Task(cell, trial_seed(config.base_seed, ci, t), config.order, config.oracle_mode,
              config.budget, config.base_max, config.identical_agents, config.record_runtime)
        for ci, cell in enumerate(config.cells)
        for t in range(config.trials)
    ]


def run_sweep(config: SweepConfig, workers: int | None = None) -> tuple[list[TrialRecord], list[dict[str, Any]]]:
    """Run every trial and return ``(records, per-cell summaries)``.

    ``workers`` overrides ``config.workers``; values above 1 use a process pool.
    """
    workers = config.workers if workers is None else workers
    tasks = _tasks(config)
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_trial, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        records = [_run_trial(t) for t in tasks]
    return records, summarize(config, records)


def summarize(config: SweepConfig, records: Sequence[TrialRecord]) -> list[dict[str, Any]]:
    out = []
    for ci, cell in enumerate(config.cells):
        chunk = records[ci * config.trials:(ci + 1) * config.trials]
        alphas = [r.alpha for r in chunk if r.alpha is not None]
        efx_pass = sum(r.efx_ok for r in chunk)
        plan = quota_plan(cell.n, cell.m)
        out.append({
            "n": cell.n,
            "m": cell.m,
            "k": plan.k,
            "r": plan.r,
            "trials": len(chunk),
            "efx_only": cell.efx_only,
            "efx_pass": efx_pass,
            "efx_pass_rate": fraction_json(Fraction(efx_pass, len(chunk))) if chunk else None,
            "min_alpha": fraction_json(min(alphas)) if alphas else None,
            "bound": fraction_json(Fraction(plan.k, plan.k + 1)),
            "bound_violations": sum(r.bound_ok is False for r in chunk),
        })
    return out


def sweep_ok(records: Iterable[TrialRecord]) -> bool:
    return all(r.efx_ok and r.bound_ok is not False for r in records)


def records_to_csv(records: Iterable[TrialRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(rec.csv_row())
    return buf.getvalue()
