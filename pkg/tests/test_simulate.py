import json
import math

import pytest

from psikit.contingency import ContingencyTable
from psikit.datasets import random_prediction_tables
from psikit.errors import EmptyInputError
from psikit.scores import MEASURES, SKILL_MEASURES
from psikit.simulate import TrialConfig, draw_table, run_trials, score_given_tables


def exact_mean_under_independence(measure, n, pf, po):
    """Expected score by summing over every table with total n (multinomial weights)."""
    probs = (pf * po, pf * (1 - po), (1 - pf) * po, (1 - pf) * (1 - po))
    total = 0.0
    for a in range(n + 1):
        for b in range(n + 1 - a):
            for c in range(n + 1 - a - b):
                d = n - a - b - c
                w = (math.comb(n, a) * math.comb(n - a, b) * math.comb(n - a - b, c)
                     * probs[0] ** a * probs[1] ** b * probs[2] ** c * probs[3] ** d)
                total += w * MEASURES[measure](ContingencyTable(a, b, c, d)).value
    return total


class TestConfig:
    @pytest.mark.parametrize("kwargs", [
        dict(trials=0), dict(generator="excel"), dict(n=0), dict(p_forecast=1.5),
        dict(generator="cell_uniform", max_count=0), dict(seed=-1),
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            TrialConfig(**kwargs)


class TestRunTrials:
    def test_cell_uniform_shape(self):
        batch = run_trials(TrialConfig(trials=30, generator="cell_uniform", max_count=1000, seed=7))
        assert len(batch.rows) == 30
        for row in batch.rows:
            assert all(0 <= x <= 1000 for x in row.table.counts)
            assert all(row.scores[m].value is not None for m in SKILL_MEASURES)

    def test_bernoulli_sizes(self):
        batch = run_trials(TrialConfig(trials=20, n=57, seed=3))
        assert all(r.table.n == 57 for r in batch.rows)

    def test_deterministic(self):
        cfg = TrialConfig(trials=50, generator="cell_uniform", seed=11)
        assert run_trials(cfg) == run_trials(cfg)
        assert run_trials(cfg).to_csv() == run_trials(cfg).to_csv()

    def test_seed_matters(self):
        assert run_trials(TrialConfig(trials=5, seed=1)).rows != run_trials(TrialConfig(trials=5, seed=2)).rows

    def test_order_invariant(self):
        cfg = TrialConfig(trials=40, seed=5)
        forward = [draw_table(cfg, i) for i in range(40)]
        backward = [draw_table(cfg, i) for i in reversed(range(40))][::-1]
        assert forward == backward == [r.table for r in run_trials(cfg).rows]

    def test_prefix_stable(self):
        # trial i depends only on (seed, i), not on the batch size
        short = run_trials(TrialConfig(trials=10, seed=9))
        long = run_trials(TrialConfig(trials=25, seed=9))
        assert long.rows[:10] == short.rows

    def test_averages_recompute(self):
        batch = run_trials(TrialConfig(trials=30, seed=4))
        for m in SKILL_MEASURES:
            assert batch.averages[m] == pytest.approx(sum(r.scores[m].value for r in batch.rows) / 30, abs=1e-15)

    def test_independent_bernoulli_mean_psi(self):
        batch = run_trials(TrialConfig(trials=10000, n=400, seed=7))
        assert abs(batch.averages["psi"]) <= 3 * batch.std_errors["psi"]


class TestExactExpectation:
    """Oracle for the equitability simulation: exact means by enumeration at small n."""

    @pytest.mark.parametrize("measure", ["psi", "hss", "pss", "css", "orss"])
    def test_zero_mean_when_forecast_coin_is_fair(self, measure):
        # relabelling the forecast (a<->c, b<->d) negates these scores and
        # leaves the fair-coin distribution unchanged
        assert exact_mean_under_independence(measure, 24, 0.5, 0.5) == pytest.approx(0.0, abs=1e-12)

    def test_gss_biased_upward(self):
        assert exact_mean_under_independence("gss", 24, 0.5, 0.5) > 1e-3


class TestGivenTables:
    def test_row_1(self):
        batch = score_given_tables([ContingencyTable(517, 912, 178, 174)])
        want = dict(psi=-0.111, gss=-0.039, hss=-0.081, pss=-0.096, css=-0.144, orss=-0.287)
        for m, v in want.items():
            assert batch.rows[0].scores[m].value == pytest.approx(v, abs=5e-4), m

    def test_row_25(self):
        s = score_given_tables([ContingencyTable(598, 72, 32, 158)]).rows[0].scores
        assert s.psi.value == pytest.approx(0.630, abs=5e-4)
        assert s.orss.value == pytest.approx(0.952, abs=5e-4)

    def test_all_rows_averages(self):
        batch = score_given_tables(random_prediction_tables())
        want = dict(psi=-0.043, gss=0.021, hss=-0.025, pss=-0.055, css=-0.038, orss=-0.064)
        for m, v in want.items():
            assert batch.averages[m] == pytest.approx(v, abs=5e-3), m

    def test_empty(self):
        with pytest.raises(EmptyInputError):
            score_given_tables([])


class TestSerialization:
    def test_csv_columns_and_average_row(self):
        lines = score_given_tables(random_prediction_tables()).to_csv().splitlines()
        assert lines[0] == "no,hits,false_alarms,misses,correct_rejections,total,psi,gss,hss,pss,css,orss,csi"
        assert lines[1].startswith("1,517,912,178,174,1781,-0.111,-0.039,-0.081,-0.096,-0.144,-0.287,")
        assert lines[-1].startswith("average,") and len(lines) == 32

    def test_json(self):
        batch = run_trials(TrialConfig(trials=3, seed=1))
        data = json.loads(batch.to_json())
        assert data["config"]["seed"] == 1 and len(data["rows"]) == 3
        assert set(data["rows"][0]["scores"]) == set(MEASURES)
