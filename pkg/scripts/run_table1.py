"""A priori choice alpha = delta^2 on the N = 6000 model; writes results/table1.{csv,md}."""
import argparse
import time
from pathlib import Path

from oversmooth.experiments import ExperimentConfig, run_table1

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--n", type=int, default=6000)
parser.add_argument("--seeds", type=int, default=5)
parser.add_argument("--noise", choices=["uniform", "signs"], default="signs")
parser.add_argument("--outdir", default="results")
args = parser.parse_args()

cfg = ExperimentConfig(N=args.n, seeds=tuple(range(args.seeds)), noise=args.noise)
t0 = time.perf_counter()
table = run_table1(cfg)
elapsed = time.perf_counter() - t0

out = Path(args.outdir)
out.mkdir(exist_ok=True)
(out / "table1.csv").write_text(table.to_csv())
(out / "table1.md").write_text(table.to_markdown())
print(table.to_markdown())
print(f"{elapsed:.1f}s")
