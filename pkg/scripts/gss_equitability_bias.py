"""Exact expected skill scores of an independent fair-coin forecaster.

Sums each score over every table with total n, weighted by its multinomial
probability, and compares the exact mean with the standard error a
10,000-trial simulation would have. GSS comes out slightly positive at any
finite n, so a 3-SE equitability check on it passes or fails depending on
the seed.

Usage: python scripts/gss_equitability_bias.py [N] [TRIALS]
"""

import math
import sys

import numpy as np


def enumerate_tables(n):
    """Cells and log-probabilities of all tables with total n; each cell has probability 1/4."""
    logfact = np.array([math.lgamma(k + 1) for k in range(n + 1)])
    for a in range(n + 1):
        b, c = np.meshgrid(np.arange(n + 1 - a), np.arange(n + 1 - a), indexing="ij")
        keep = b + c <= n - a
        b, c = b[keep], c[keep]
        d = n - a - b - c
        logw = logfact[n] - logfact[a] - logfact[b] - logfact[c] - logfact[d] - n * math.log(4)
        yield np.full_like(b, a), b, c, d, np.exp(logw)


def scores(a, b, c, d):
    a, b, c, d = (x.astype(float) for x in (a, b, c, d))
    n = a + b + c + d

    def ratio(num, den):
        out = np.zeros_like(num)
        np.divide(num, den, out=out, where=den != 0)
        return out

    ad_bc = a * d - b * c
    chance = (a + b) * (a + c) + (b + d) * (c + d)
    return {
        "gss": ratio(a * n - (a + b) * (a + c), (a + b + c) * n - (a + b) * (a + c)),
        "hss": ratio((a + d) * n - chance, n * n - chance),
        "pss": ratio(ad_bc, (b + d) * (a + c)),
        "orss": ratio(ad_bc, a * d + b * c),
    }


def main(n=400, trials=10_000):
    first = {m: 0.0 for m in ("gss", "hss", "pss", "orss")}
    second = dict(first)
    total = 0.0
    for a, b, c, d, w in enumerate_tables(n):
        total += w.sum()
        for m, s in scores(a, b, c, d).items():
            first[m] += (w * s).sum()
            second[m] += (w * s * s).sum()
    print(f"n = {n}, total probability {total:.12f}")
    print(f"{'measure':<8}{'exact mean':>14}{'sd':>10}{'SE@' + str(trials):>12}{'expected z':>12}")
    for m in first:
        sd = math.sqrt(second[m] - first[m] ** 2)
        se = sd / math.sqrt(trials)
        print(f"{m.upper():<8}{first[m]:>+14.3e}{sd:>10.5f}{se:>12.3e}{first[m] / se:>+12.2f}")


if __name__ == "__main__":
    args = [int(x) for x in sys.argv[1:]]
    main(*args)
