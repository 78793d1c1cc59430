"""How close the discrepancy test sits to b = 4 on each row of the ladder.

For every row, the ratio misfit(alpha)/delta at the grid point the
discrepancy principle should stop at is printed for both noise models
over many seeds. A ratio just under b moves the selection one grid
step down.
"""
import argparse

import numpy as np

from oversmooth.experiments import TABLE2_LADDER, row_seed
from oversmooth.model import build_model_problem, generate_noise
from oversmooth.solver import minimize_tikhonov

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--seeds", type=int, default=20)
parser.add_argument("--row", type=int, default=6, help="1-based ladder row")
parser.add_argument("--alpha", type=float, default=1e-9)
args = parser.parse_args()

p = build_model_problem()
delta = TABLE2_LADDER[args.row - 1]
for dist in ("uniform", "signs"):
    ratios = []
    for s in range(args.seeds):
        sample = generate_noise(p, delta, row_seed(s, args.row - 1), dist)
        ratios.append(minimize_tikhonov(p, sample.data, args.alpha).misfit / delta)
    ratios = np.array(ratios)
    print(f"{dist:8s} delta={delta:.4e} alpha={args.alpha:.0e}: misfit/delta in "
          f"[{ratios.min():.4f}, {ratios.max():.4f}], {np.sum(ratios > 4)} of {len(ratios)} above b = 4")
