"""Run the invariant suite and write results/checks.json."""
import argparse
import sys
from pathlib import Path

from oversmooth.checks import run_invariant_suite
from oversmooth.experiments import ExperimentConfig

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--n", type=int, default=6000)
parser.add_argument("--seed", type=int, default=0)
parser.add_argument("--outdir", default="results")
args = parser.parse_args()

report = run_invariant_suite(ExperimentConfig(N=args.n), seed=args.seed)
for r in report.results:
    print(f"{'PASS' if r.passed else 'FAIL'} {r.module}.{r.name}: {r.detail}")
out = Path(args.outdir)
out.mkdir(exist_ok=True)
(out / "checks.json").write_text(report.to_json() + "\n")
sys.exit(0 if report.ok else 1)
