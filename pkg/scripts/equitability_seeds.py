"""Equitability simulation across many seeds.

Runs the independent Bernoulli forecaster (n = 400, fair coins) for a range
of seeds and tabulates each skill score's z = mean / SE. Under exact
equitability z is roughly standard normal; a measure with a small true
bias shows a shifted z distribution.

Usage: python scripts/equitability_seeds.py [SEEDS] [TRIALS]
"""

import sys

import numpy as np

from psikit.scores import SKILL_MEASURES
from psikit.simulate import TrialConfig, run_trials


def main(seeds=20, trials=10_000):
    z = {m: [] for m in SKILL_MEASURES}
    for seed in range(seeds):
        batch = run_trials(TrialConfig(trials=trials, n=400, seed=seed))
        for m in SKILL_MEASURES:
            z[m].append(batch.averages[m] / batch.std_errors[m])
    print(f"{seeds} seeds x {trials} trials")
    print(f"{'measure':<8}{'mean z':>8}{'sd z':>8}{'|z|>3':>8}")
    for m, vals in z.items():
        vals = np.array(vals)
        print(f"{m.upper():<8}{vals.mean():>+8.2f}{vals.std(ddof=1):>8.2f}{int((abs(vals) > 3).sum()):>8}")


if __name__ == "__main__":
    main(*(int(x) for x in sys.argv[1:]))
