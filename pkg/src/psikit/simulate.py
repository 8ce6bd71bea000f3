"""Random-forecaster studies.

Trial ``i`` of a batch draws from ``numpy.random.default_rng([seed, i])``, so a
batch depends only on its config and trials can be generated in any order.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Literal, Sequence

import numpy as np

from psikit.contingency import FIELD_NAMES, ContingencyTable
from psikit.errors import EmptyInputError
from psikit.scores import MEASURE_NAMES, ScoreSet, score_all

Generator = Literal["bernoulli", "cell_uniform"]
GENERATORS = ("bernoulli", "cell_uniform")


@dataclass(frozen=True)
class TrialConfig:
    """Batch configuration.

    ``bernoulli``: n periods, forecast "yes" with probability ``p_forecast``
    and event with probability ``p_observed``, independently.
    ``cell_uniform``: each cell count uniform on ``0..max_count`` (an all-zero
    draw is redrawn from the same stream).
    """

    trials: int = 30
    generator: Generator = "bernoulli"
    seed: int = 0
    n: int = 400
    p_forecast: float = 0.5
    p_observed: float = 0.5
    max_count: int = 1000

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.generator not in GENERATORS:
            raise ValueError(f"unknown generator {self.generator!r}; expected one of {GENERATORS}")
        if self.generator == "bernoulli":
            if self.n < 1:
                raise ValueError(f"n must be >= 1, got {self.n}")
            for name in ("p_forecast", "p_observed"):
                p = getattr(self, name)
                if not 0.0 <= p <= 1.0:
                    raise ValueError(f"{name} must lie in [0, 1], got {p}")
        elif self.max_count < 1:
            raise ValueError(f"max_count must be >= 1, got {self.max_count}")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


@dataclass(frozen=True)
class TrialRow:
    index: int
    table: ContingencyTable
    scores: ScoreSet


@dataclass(frozen=True)
class TrialBatch:
    config: TrialConfig | None
    rows: tuple[TrialRow, ...]
    averages: dict[str, float] = field(default_factory=dict)
    std_errors: dict[str, float] = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        """Per-trial values of one measure (inapplicable CSI rows dropped)."""
        return np.array([r.scores[name].value for r in self.rows if r.scores[name].value is not None])

    def to_csv(self, decimals: int = 3, delimiter: str = ",") -> str:
        buf = io.StringIO()
        w = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
        w.writerow(["no", *FIELD_NAMES, "total", *MEASURE_NAMES])
        for r in self.rows:
            w.writerow([r.index + 1, *r.table.counts, r.table.n,
                        *(sv.format(decimals) for _, sv in r.scores.items())])
        w.writerow(["average", "", "", "", "", "",
                    *(_fmt(self.averages.get(m), decimals) for m in MEASURE_NAMES)])
        return buf.getvalue()

    def to_dict(self, decimals: int | None = 3) -> dict:
        return {
            "config": None if self.config is None else asdict(self.config),
            "rows": [{"no": r.index + 1, **r.table.to_dict(), "scores": r.scores.to_dict(decimals)}
                     for r in self.rows],
            "averages": {m: _round(v, decimals) for m, v in self.averages.items()},
            "std_errors": {m: _round(v, decimals) for m, v in self.std_errors.items()},
        }

    def to_json(self, decimals: int | None = 3, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(decimals), indent=indent)


def _round(v: float | None, decimals: int | None):
    if v is None or decimals is None:
        return v
    r = round(v, decimals)
    return 0.0 if r == 0 else r


def _fmt(v: float | None, decimals: int) -> str:
    return "N/A" if v is None else f"{_round(v, decimals):.{decimals}f}"


def trial_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def draw_table(config: TrialConfig, index: int) -> ContingencyTable:
    rng = trial_rng(config.seed, index)
    if config.generator == "bernoulli":
        pf, po = config.p_forecast, config.p_observed
        probs = [pf * po, pf * (1 - po), (1 - pf) * po, (1 - pf) * (1 - po)]
        return ContingencyTable(*(int(x) for x in rng.multinomial(config.n, probs)))
    while True:
        cells = rng.integers(0, config.max_count, size=4, endpoint=True)
        if cells.sum() > 0:
            return ContingencyTable(*(int(x) for x in cells))


def summarize(rows: Sequence[TrialRow]) -> tuple[dict[str, float], dict[str, float]]:
    """Per-measure mean and standard error of the mean over full-precision scores."""
    averages: dict[str, float] = {}
    std_errors: dict[str, float] = {}
    for name in MEASURE_NAMES:
        vals = [r.scores[name].value for r in rows if r.scores[name].value is not None]
        if not vals:
            continue
        averages[name] = math.fsum(vals) / len(vals)
        std_errors[name] = float(np.std(vals, ddof=1) / math.sqrt(len(vals))) if len(vals) > 1 else math.nan
    return averages, std_errors


def run_trials(config: TrialConfig) -> TrialBatch:
    rows = []
    for i in range(config.trials):
        table = draw_table(config, i)
        rows.append(TrialRow(i, table, score_all(table)))
    averages, std_errors = summarize(rows)
    return TrialBatch(config, tuple(rows), averages, std_errors)


def score_given_tables(tables: Sequence[ContingencyTable]) -> TrialBatch:
    if not tables:
        raise EmptyInputError("no tables to score")
    rows = [TrialRow(i, t, score_all(t)) for i, t in enumerate(tables)]
    averages, std_errors = summarize(rows)
    return TrialBatch(None, tuple(rows), averages, std_errors)
