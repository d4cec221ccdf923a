"""Benchmark sweeps end to end: run, write CSV, render figures.

Reproduces the two experiment families in miniature — the block-diagonal
games with known analytic values 10H/r, and random games scored against
their computed baselines — then renders each CSV with the plots package.

Run with:  python3 demos/experiments_walkthrough.py
(Figures land in demos/out/.)
"""

import pathlib

from viser.bench import run_block_experiment, run_random_experiment, write_csv

out_dir = pathlib.Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

# Block family: analytic values known, payoff == analytic == baseline.
block_rows = run_block_experiment(range(1, 7), S=4, H=10)
print("block sweep (expect p_v = 100/r):")
for row in block_rows:
    print(f"  r={row.size_param}: p_v={row.p_v:.4f} payoff_v={row.payoff_v:.4f} "
          f"analytic={row.analytic_v:.4f}  "
          f"[{row.time_victim_s:.3f}s / {row.time_exploiter_s:.3f}s]")
block_csv = out_dir / "block.csv"
write_csv(block_rows, block_csv)

# Random family: no analytic values, only the baseline-dominance relation.
random_rows = run_random_experiment([2, 4], seeds=[0, 1, 2], S=3, H=3)
print("\nrandom sweep (payoffs must dominate baselines):")
for row in random_rows:
    print(f"  n={row.size_param}: payoff_v-p_v={row.payoff_v - row.p_v:+.4f} "
          f"payoff_e-p_e={row.payoff_e - row.p_e:+.4f}")
random_csv = out_dir / "random.csv"
write_csv(random_rows, random_csv)

# The plots package reads only the CSVs — it never calls the solver.
try:
    from viserplots import render
except ImportError:
    print("\nviser-plots not installed; skipping figure rendering")
else:
    for csv_path, kind in ((block_csv, "block"), (random_csv, "random")):
        image = csv_path.with_suffix(".png")
        render(csv_path, image, kind)
        print(f"\nwrote {image}")
