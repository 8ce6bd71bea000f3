import json

import pytest

from psikit import properties as P
from psikit.contingency import ContingencyTable
from psikit.scores import ScoreValue

PSI, GSS, HSS, PSS, CSS, ORSS, CSI = (P.MEASURE_FUNCTIONS[m] for m in
                                      ("psi", "gss", "hss", "pss", "css", "orss", "csi"))


class TestSymmetry:
    def test_psi_transpose_holds(self):
        assert P.check_transpose_symmetry(PSI, 500, 0).status == P.HOLDS

    def test_orss_transpose_holds(self):
        assert P.check_transpose_symmetry(ORSS, 500, 0).status == P.HOLDS

    @pytest.mark.parametrize("f", [PSS, CSS])
    def test_transpose_fails_with_published_counterexample(self, f):
        v = P.check_transpose_symmetry(f, 1000, 1)
        assert v.status == P.FAILS
        assert v.counterexample == (ContingencyTable(175, 25, 100, 100), ContingencyTable(175, 100, 25, 100))
        assert sorted(round(x, 3) for x in v.observed["values"]) == [0.375, 0.436]

    def test_psi_complement_on_examples_15_16(self):
        t15, t16 = ContingencyTable(275, 50, 50, 25), ContingencyTable(25, 50, 50, 275)
        assert t15.complement() == t16
        assert round(PSI(t15), 3) == round(PSI(t16), 3) == 0.160

    @pytest.mark.parametrize("f", [PSI, GSS, HSS, PSS, CSS, ORSS])
    def test_complement_holds(self, f):
        assert P.check_complement_symmetry(f, 500, 0).status == P.HOLDS

    def test_csi_complement_fails(self):
        assert P.check_complement_symmetry(CSI, 50, 0).status == P.FAILS


class TestEquitability:
    @pytest.mark.parametrize("f", [PSI, GSS, HSS, PSS, CSS, ORSS])
    def test_skill_scores(self, f):
        v = P.check_equitability(f, trials=1000, seed=0)
        assert v.status == P.HOLDS, v.detail

    def test_csi_fails_on_all_hits(self):
        v = P.check_equitability(CSI, trials=10, seed=0)
        assert v.status == P.FAILS and v.counterexample[0].counts == (4, 0, 0, 0)

    def test_rejects_zero_trials(self):
        with pytest.raises(ValueError):
            P.check_equitability(PSI, trials=0)

    def test_small_sample_gss_bias_detected(self):
        # GSS is only asymptotically unbiased under independence; at n = 24 the bias is visible
        v = P.check_equitability(GSS, trials=20000, seed=0, n=24)
        assert v.status == P.FAILS and v.observed["mean"] > 0
        assert P.check_equitability(PSI, trials=20000, seed=0, n=24).status == P.HOLDS


class TestBoundedness:
    def test_psi_extrema_from_examples(self):
        v = P.check_boundedness(PSI, 1000, 0)
        assert v.status == P.HOLDS
        assert round(v.observed["min"], 3) == -1.0
        assert round(v.observed["max"], 3) == 1.0

    def test_gss_lower_bound(self):
        v = P.check_boundedness(GSS, 1000, 0)
        assert v.status == P.HOLDS and v.observed["min"] >= -1 / 3

    def test_csi_in_unit_interval(self):
        v = P.check_boundedness(CSI, 1000, 0)
        assert v.status == P.HOLDS and 0 <= v.observed["min"] <= v.observed["max"] <= 1

    def test_out_of_range_caught(self):
        doubled = P.ScoreFunction("doubled", lambda t: ScoreValue(2 * PSI(t)), (-1, 1))
        assert P.check_boundedness(doubled, 10, 0).status == P.FAILS


class TestRegularity:
    def test_psi_non_regular(self):
        v = P.regularity_probe(PSI)
        assert v.status == P.FAILS
        assert v.observed["example_21_star"] < v.observed["example_22"]
        assert round(v.observed["example_22"], 3) == 0.550

    def test_psi_on_21_star(self):
        # hand evaluation at n = 402 (cell values computed before the build)
        assert round(P.regularity_probe(PSI).observed["example_21_star"], 3) == 0.327

    def test_orss_regular_and_biased_perfect(self):
        assert P.regularity_probe(ORSS).status == P.HOLDS
        assert P.biased_perfect_probe(ORSS).status == P.HOLDS

    def test_psi_biased_forecast_not_perfect(self):
        assert P.biased_perfect_probe(PSI).status == P.FAILS


class TestNonDegeneracy:
    def test_psi(self):
        v = P.non_degeneracy_probe(PSI)
        assert v.status == P.HOLDS
        assert [round(v.observed[k], 3) for k in ("20", "21", "22", "23")] == [0.327, 0.327, 0.550, 0.550]

    def test_pss(self):
        v = P.non_degeneracy_probe(PSS)
        assert [round(v.observed[k], 3) for k in ("20", "21", "22", "23")] == [0.995, 0.995, 1.0, 1.0]

    @pytest.mark.parametrize("f", [PSI, GSS, HSS, PSS, CSS, ORSS])
    def test_always_no_on_rare_events_scores_zero(self, f):
        assert f(ContingencyTable(0, 0, 1, 399)) == 0.0
        assert P.check_hedging(f, 0).status == P.HOLDS


class TestAudit:
    def test_deterministic(self):
        a = P.reports_to_json(P.audit_matrix([PSI, PSS], trials=200, seed=3))
        b = P.reports_to_json(P.audit_matrix([PSI, PSS], trials=200, seed=3))
        assert a == b

    def test_probe_order_irrelevant(self):
        one = P.audit(PSS, trials=200, seed=4)
        P.check_complement_symmetry(PSS, 200, 4)
        two = P.audit(PSS, trials=200, seed=4)
        assert one.to_dict() == two.to_dict()

    def test_all_measures_shape(self):
        reports = P.audit_matrix(P.resolve_measures(["all"]), trials=100, seed=0)
        assert [r.measure for r in reports] == ["psi", "gss", "hss", "pss", "css", "orss", "csi"]
        assert reports[-1].claims is None

    def test_not_probed_columns(self):
        r = P.audit(HSS, trials=100, seed=0)
        assert r.claims["linearity"] is True
        assert r.verdicts["linearity"].status == P.NOT_PROBED
        assert r.verdicts["base_rate_independence"].status == P.NOT_PROBED

    def test_psi_published_claim_surfaces_without_agreement(self):
        r = P.audit(PSI, trials=100, seed=0)
        assert r.claims["biased_perfect"] is True
        assert r.verdicts["biased_perfect"].status == P.FAILS

    def test_failing_verdicts_carry_counterexamples(self):
        for r in P.audit_matrix(P.resolve_measures(["all"]), trials=100, seed=0):
            for v in r.verdicts.values():
                if v.status == P.FAILS:
                    assert v.counterexample

    def test_verdict_requires_counterexample(self):
        with pytest.raises(ValueError):
            P.Verdict(P.FAILS)

    def test_render_and_json(self):
        reports = P.audit_matrix([PSI, ORSS], trials=100, seed=0)
        text = P.render_matrix(reports)
        assert "PSI" in text and "ORSS" in text and "✓" in text and "–" in text
        data = json.loads(P.reports_to_json(reports))
        assert data[0]["properties"]["transpose_symmetry"]["status"] == "holds"

    def test_unknown_measure(self):
        with pytest.raises(KeyError):
            P.resolve_measures(["brier"])
