"""Empirical audit of verification-measure properties.

Each probe is deterministic in (measure, trials, seed). Probes that sample
tables draw from a stream derived from (seed, probe id), so running probes in
a different order or concurrently gives the same verdicts.

Properties without an executable definition (base-rate independence,
linearity) are reported as ``not-probed``.
"""

from __future__ import annotations

import json
import math
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from psikit import datasets, scores
from psikit.contingency import ContingencyTable
from psikit.scores import ScoreValue
from psikit.simulate import TrialConfig, draw_table

HOLDS = "holds"
FAILS = "fails"
NOT_PROBED = "not-probed"

PROPERTIES = (
    "equitability",
    "difficulty_to_hedge",
    "non_degeneracy",
    "base_rate_independence",
    "boundedness",
    "linearity",
    "regularity",
    "biased_perfect",
    "transpose_symmetry",
    "complement_symmetry",
)

PROPERTY_LABELS = {
    "equitability": "Equit",
    "difficulty_to_hedge": "Hedge",
    "non_degeneracy": "NonDeg",
    "base_rate_independence": "BaseRt",
    "boundedness": "Bound",
    "linearity": "Linear",
    "regularity": "Regular",
    "biased_perfect": "BiasPerf",
    "transpose_symmetry": "Transp",
    "complement_symmetry": "Compl",
}

SYMBOLS = {HOLDS: "✓", FAILS: "✗", NOT_PROBED: "–"}

IRRATIONAL_TOL = 1e-12
NON_DEGENERACY_THRESHOLD = 0.05
RARE_EVENT_EXAMPLES = (20, 21, 22, 23)


@dataclass(frozen=True)
class ScoreFunction:
    """A named measure with its declared range.

    ``exact`` (optional) returns the measure's exact rational value; symmetry
    and range checks use it in preference to floats.
    """

    name: str
    evaluate: Callable[[ContingencyTable], ScoreValue]
    range: tuple[float, float]
    exact: Callable[[ContingencyTable], Fraction | None] | None = None

    def __call__(self, table: ContingencyTable) -> float | None:
        return self.evaluate(table).value


def _exact_for(name: str):
    return lambda table: scores.exact(name, table)


MEASURE_FUNCTIONS: dict[str, ScoreFunction] = {
    name: ScoreFunction(
        name=name,
        evaluate=scores.MEASURES[name],
        range=scores.RANGES[name],
        exact=None if name == "psi" else _exact_for(name),
    )
    for name in scores.MEASURE_NAMES
}


def resolve_measures(names: Sequence[str]) -> list[ScoreFunction]:
    """Look up measures by name; ``"all"`` expands to every measure."""
    out = []
    for name in names:
        key = name.strip().lower()
        if key == "all":
            out.extend(MEASURE_FUNCTIONS.values())
        elif key in MEASURE_FUNCTIONS:
            out.append(MEASURE_FUNCTIONS[key])
        else:
            raise KeyError(f"unknown measure {name!r}; choose from {', '.join(MEASURE_FUNCTIONS)} or all")
    seen = set()
    return [f for f in out if not (f.name in seen or seen.add(f.name))]


@dataclass(frozen=True)
class Verdict:
    status: str
    counterexample: tuple[ContingencyTable, ...] = ()
    detail: str = ""
    observed: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status == FAILS and not self.counterexample:
            raise ValueError("a failing verdict needs a counterexample")

    @property
    def symbol(self) -> str:
        return SYMBOLS[self.status]

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "counterexample": [t.to_dict() for t in self.counterexample],
            "detail": self.detail,
            "observed": self.observed,
        }


@dataclass(frozen=True)
class PropertyReport:
    measure: str
    verdicts: dict[str, Verdict]
    claims: dict[str, bool] | None
    trials: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "measure": self.measure,
            "trials": self.trials,
            "seed": self.seed,
            "properties": {
                p: {"claimed": None if self.claims is None else self.claims.get(p, False),
                    **self.verdicts[p].to_dict()}
                for p in PROPERTIES
            },
        }


def probe_rng(seed: int, probe: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(probe.encode())])


def sample_tables(trials: int, seed: int, probe: str, max_count: int = 1000) -> list[ContingencyTable]:
    """``trials`` tables with cells uniform on 0..max_count (all-zero draws skipped)."""
    rng = probe_rng(seed, probe)
    out: list[ContingencyTable] = []
    while len(out) < trials:
        cells = rng.integers(0, max_count, size=(trials - len(out), 4), endpoint=True)
        out.extend(ContingencyTable(*map(int, row)) for row in cells if row.sum() > 0)
    return out


def no_skill_patterns(counts: Sequence[int] = (1, 7, 100, 1000)) -> list[ContingencyTable]:
    """Example 1-6 shapes at several scales: a constant cell, uniform cells, constant 'yes'."""
    out = []
    for k in counts:
        out += [
            ContingencyTable(4 * k, 0, 0, 0),
            ContingencyTable(0, 0, 0, 4 * k),
            ContingencyTable(0, 0, 4 * k, 0),
            ContingencyTable(0, 4 * k, 0, 0),
            ContingencyTable(k, k, k, k),
            ContingencyTable(2 * k, 2 * k, 0, 0),
        ]
    return out


def constant_forecast_tables(seed: int, trials: int = 50) -> list[ContingencyTable]:
    """Always-yes (c = d = 0) and always-no (a = b = 0) forecasts, common and rare events."""
    rng = probe_rng(seed, "hedging")
    out = [ContingencyTable(0, 0, 1, 399), ContingencyTable(1, 399, 0, 0),
           ContingencyTable(0, 0, 399, 1), ContingencyTable(399, 1, 0, 0)]
    for x, y in rng.integers(0, 1000, size=(trials, 2), endpoint=True):
        if x + y == 0:
            continue
        out += [ContingencyTable(int(x), int(y), 0, 0), ContingencyTable(0, 0, int(x), int(y))]
    return out


def _same(f: ScoreFunction, t1: ContingencyTable, t2: ContingencyTable) -> bool:
    if f.exact is not None:
        return f.exact(t1) == f.exact(t2)
    v1, v2 = f(t1), f(t2)
    if v1 is None or v2 is None:
        return v1 is v2
    return abs(v1 - v2) <= IRRATIONAL_TOL


def _is_zero(f: ScoreFunction, t: ContingencyTable) -> bool:
    if f.exact is not None:
        return f.exact(t) == 0
    return f(t) == 0.0


def _symmetry(f: ScoreFunction, trials: int, seed: int, probe: str,
              transform: Callable[[ContingencyTable], ContingencyTable]) -> Verdict:
    tables = list(datasets.example_tables().values()) + sample_tables(trials, seed, probe)
    for t in tables:
        u = transform(t)
        if not _same(f, t, u):
            return Verdict(FAILS, (t, u), f"{f.name}{t.counts} = {_fmt(f(t))} but "
                           f"{f.name}{u.counts} = {_fmt(f(u))}",
                           {"values": [f(t), f(u)]})
    return Verdict(HOLDS, detail=f"{len(tables)} tables checked", observed={"tables": len(tables)})


def _fmt(v: float | None) -> str:
    return "N/A" if v is None else f"{v:.3f}"


def check_transpose_symmetry(f: ScoreFunction, trials: int = 1000, seed: int = 0) -> Verdict:
    """Does swapping false alarms and misses leave the score unchanged?"""
    return _symmetry(f, trials, seed, "transpose", ContingencyTable.transpose)


def check_complement_symmetry(f: ScoreFunction, trials: int = 1000, seed: int = 0) -> Verdict:
    """Does relabelling events as non-events (a<->d, b<->c) leave the score unchanged?"""
    return _symmetry(f, trials, seed, "complement", ContingencyTable.complement)


def equitability_seed(seed: int) -> int:
    """Generator seed for the random-forecaster part of the equitability probe."""
    return int(np.random.SeedSequence([seed, zlib.crc32(b"equitability")]).generate_state(1)[0])


def check_equitability(f: ScoreFunction, trials: int = 1000, seed: int = 0, n: int = 400,
                       p_forecast: float = 0.5, p_observed: float = 0.5) -> Verdict:
    """Constant and uniform forecasts score exactly 0, and random forecasts average 0.

    The random part runs ``trials`` independent-Bernoulli forecasters and
    requires the mean score within 3 standard errors of 0.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    for t in no_skill_patterns():
        if not _is_zero(f, t):
            return Verdict(FAILS, (t,), f"no-skill pattern {t.counts} scores {_fmt(f(t))}")
    config = TrialConfig(trials=trials, generator="bernoulli", seed=equitability_seed(seed), n=n,
                         p_forecast=p_forecast, p_observed=p_observed)
    tables = [draw_table(config, i) for i in range(trials)]
    vals = np.array([v for v in map(f, tables) if v is not None])
    mean = float(np.mean(vals))
    se = float(np.std(vals, ddof=1) / math.sqrt(len(vals))) if len(vals) > 1 else 0.0
    observed = {"mean": mean, "std_error": se, "z": mean / se if se > 0 else (0.0 if mean == 0 else math.inf)}
    if abs(mean) <= 3 * se or mean == 0.0:
        return Verdict(HOLDS, detail=f"random mean {mean:+.5f} (SE {se:.5f})", observed=observed)
    worst = max(tables, key=lambda t: abs(f(t) or 0.0))
    return Verdict(FAILS, (worst,), f"random mean {mean:+.5f} is {abs(observed['z']):.2f} SE from 0",
                   observed)


def check_hedging(f: ScoreFunction, seed: int = 0) -> Verdict:
    """Always forecasting the same category (common or rare event) must score 0."""
    for t in constant_forecast_tables(seed):
        if not _is_zero(f, t):
            return Verdict(FAILS, (t,), f"constant forecast {t.counts} scores {_fmt(f(t))}")
    return Verdict(HOLDS, detail="all constant forecasts score 0")


def check_boundedness(f: ScoreFunction, trials: int = 1000, seed: int = 0) -> Verdict:
    """Observed extrema over sampled tables plus the best/worst example tables."""
    ex = datasets.example_tables()
    tables = [ex[7], ex[14], *ex.values(), *sample_tables(trials, seed, "boundedness")]
    lo, hi = f.range
    obs_min, obs_max = math.inf, -math.inf
    argmin = argmax = None
    for t in tables:
        v = f(t)
        if v is None:
            continue
        if v < obs_min:
            obs_min, argmin = v, t
        if v > obs_max:
            obs_max, argmax = v, t
        if f.exact is not None and f.name in scores.EXACT_RANGES:
            exact_lo, exact_hi = scores.EXACT_RANGES[f.name]
            inside = exact_lo <= f.exact(t) <= exact_hi
        else:
            inside = lo - IRRATIONAL_TOL <= v <= hi + IRRATIONAL_TOL
        if not inside:
            return Verdict(FAILS, (t,), f"{f.name}{t.counts} = {v!r} outside [{lo}, {hi}]")
    observed = {"min": obs_min, "max": obs_max,
                "argmin": argmin.to_dict() if argmin else None,
                "argmax": argmax.to_dict() if argmax else None}
    return Verdict(HOLDS, detail=f"observed [{obs_min:.3f}, {obs_max:.3f}] within [{lo:.3f}, {hi:.3f}]",
                   observed=observed)


def _regularity_values(f: ScoreFunction) -> tuple[float, float]:
    return f(datasets.EXAMPLE_21_STAR), f(datasets.example_table(22))


def regularity_probe(f: ScoreFunction) -> Verdict:
    """A regular measure scores the under-forecasting but all-correct table 21*
    the same as the perfect unbiased table 22."""
    biased, perfect = _regularity_values(f)
    observed = {"example_21_star": biased, "example_22": perfect}
    if _same(f, datasets.EXAMPLE_21_STAR, datasets.example_table(22)):
        return Verdict(HOLDS, detail=f"21* and 22 both {_fmt(perfect)} (regular)", observed=observed)
    return Verdict(FAILS, (datasets.EXAMPLE_21_STAR, datasets.example_table(22)),
                   f"21* {_fmt(biased)} vs 22 {_fmt(perfect)} (non-regular)", observed)


def biased_perfect_probe(f: ScoreFunction) -> Verdict:
    """Does the biased all-correct table 21* reach the top of the measure's range?"""
    biased, _ = _regularity_values(f)
    top = f.range[1]
    observed = {"example_21_star": biased}
    if biased is not None and abs(biased - top) <= IRRATIONAL_TOL:
        return Verdict(HOLDS, detail=f"21* scores the maximum {top:g}", observed=observed)
    return Verdict(FAILS, (datasets.EXAMPLE_21_STAR,), f"21* scores {_fmt(biased)} < {top:g}", observed)


def non_degeneracy_probe(f: ScoreFunction) -> Verdict:
    """Correct forecasts of rare events (examples 20-23) earn scores away from 0."""
    ex = datasets.example_tables()
    observed = {}
    for no in RARE_EVENT_EXAMPLES:
        v = f(ex[no])
        observed[str(no)] = v
        if v is None or abs(v) < NON_DEGENERACY_THRESHOLD:
            return Verdict(FAILS, (ex[no],), f"example {no} scores {_fmt(v)}", observed)
    return Verdict(HOLDS, detail=", ".join(f"{k}: {_fmt(v)}" for k, v in observed.items()),
                   observed=observed)


def audit(f: ScoreFunction, trials: int = 1000, seed: int = 0) -> PropertyReport:
    verdicts = {
        "equitability": check_equitability(f, trials, seed),
        "difficulty_to_hedge": check_hedging(f, seed),
        "non_degeneracy": non_degeneracy_probe(f),
        "base_rate_independence": Verdict(NOT_PROBED, detail="no executable definition"),
        "boundedness": check_boundedness(f, trials, seed),
        "linearity": Verdict(NOT_PROBED, detail="no executable definition"),
        "regularity": regularity_probe(f),
        "biased_perfect": biased_perfect_probe(f),
        "transpose_symmetry": check_transpose_symmetry(f, trials, seed),
        "complement_symmetry": check_complement_symmetry(f, trials, seed),
    }
    claims = datasets.paper_values()["tableA1"].get(f.name)
    return PropertyReport(f.name, verdicts, claims, trials, seed)


def audit_matrix(measures: Sequence[ScoreFunction], trials: int = 1000, seed: int = 0) -> list[PropertyReport]:
    return [audit(f, trials, seed) for f in measures]


def reports_to_json(reports: Sequence[PropertyReport], indent: int | None = 2) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=indent, ensure_ascii=False)


def render_matrix(reports: Sequence[PropertyReport], counterexamples: bool = True) -> str:
    """Plain-text property matrix: a 'published' and an 'observed' line per measure."""
    width = max(len(PROPERTY_LABELS[p]) for p in PROPERTIES) + 1
    head = f"{'measure':<8}{'source':<10}" + "".join(f"{PROPERTY_LABELS[p]:>{width}}" for p in PROPERTIES)
    lines = [head, "-" * len(head)]
    for r in reports:
        if r.claims is None:
            claimed = "".join(f"{'·':>{width}}" for _ in PROPERTIES)
        else:
            claimed = "".join(f"{'✓' if r.claims.get(p) else ' ':>{width}}" for p in PROPERTIES)
        observed = "".join(f"{r.verdicts[p].symbol:>{width}}" for p in PROPERTIES)
        lines.append(f"{r.measure.upper():<8}{'published':<10}{claimed}")
        lines.append(f"{'':<8}{'observed':<10}{observed}")
    lines.append("")
    lines.append("✓ holds   ✗ fails   – not probed   · measure absent from published table")
    if counterexamples:
        fails = [(r.measure, p, r.verdicts[p]) for r in reports for p in PROPERTIES
                 if r.verdicts[p].status == FAILS]
        if fails:
            lines.append("")
            lines.append("Counterexamples:")
            for m, p, v in fails:
                lines.append(f"  {m.upper()} {p}: {v.detail}")
    return "\n".join(lines)
