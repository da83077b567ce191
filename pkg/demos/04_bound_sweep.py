"""
Sweeping the k/(k+1) bound
==========================

A seeded sweep over small cells. Each row of the CSV is one trial; the
summary reports the worst alpha per cell next to ``k/(k+1)``.
"""

from levelfair.experiments import Cell, SweepConfig, records_to_csv, run_sweep

config = SweepConfig(
    cells=(Cell(2, 4), Cell(2, 6), Cell(3, 6), Cell(3, 9), Cell(3, 12), Cell(6, 20, efx_only=True)),
    trials=40,
    base_seed=7,
    order="random",
    identical_agents=True,
)
records, summary = run_sweep(config)

for cell in summary:
    worst = cell["min_alpha"]["decimal"] if cell["min_alpha"] else "n/a"
    print(f"n={cell['n']} m={cell['m']:2d}  efx {cell['efx_pass']}/{cell['trials']}  "
          f"min alpha {worst}  bound {cell['bound']['decimal']}  violations {cell['bound_violations']}")

print()
print("\n".join(records_to_csv(records).splitlines()[:4]))
