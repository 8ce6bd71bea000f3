from decimal import Decimal

import pytest
from hypothesis import given
from hypothesis import strategies as st

from psikit.contingency import OutcomePair
from psikit.datasets import gdp_series_path
from psikit.errors import ConsistencyError, EmptyInputError, ParseError, TieError
from psikit.ingestion import DirectionalRule, directionalize, load_series, parse_series
from psikit.scores import score_all


@pytest.fixture(scope="module")
def gdp():
    return load_series(gdp_series_path())


def _by_label(records, label):
    return next(r for r in records if r.label == label)


class TestLoadSeries:
    def test_bundled_shape(self, gdp):
        forecasts = [r for r in gdp if r.forecast is not None]
        assert len(forecasts) == 78
        assert forecasts[0].label == "2000Q3" and forecasts[-1].label == "2019Q4"
        assert {r.year for r in gdp if r.actual is not None} == set(range(1999, 2020))

    def test_actuals_propagate_to_every_quarter(self, gdp):
        assert _by_label(gdp, "2008Q4").actual == Decimal("2.5")
        assert _by_label(gdp, "2009Q3").forecast == Decimal("-3.8")

    def test_sorted(self, gdp):
        keys = [(r.year, r.quarter or 0) for r in gdp]
        assert keys == sorted(keys)

    def test_empty(self):
        with pytest.raises(ParseError):
            parse_series("")

    def test_header_only(self):
        with pytest.raises(ParseError):
            parse_series("year,quarter,forecast,actual\n")

    def test_bad_header(self):
        with pytest.raises(ParseError, match="header"):
            parse_series("yr,q,f,a\n2000,1,1.0,2.0\n")

    def test_missing_reference(self):
        text = "year,quarter,forecast,actual\n2000,3,5.0,4.8\n"
        with pytest.raises(ConsistencyError, match="1999"):
            parse_series(text)

    def test_missing_current_actual(self):
        text = "year,quarter,forecast,actual\n1999,,,4.4\n2000,3,5.0,\n"
        with pytest.raises(ConsistencyError):
            parse_series(text)

    def test_malformed_row_names_line(self):
        text = "year,quarter,forecast,actual\n1999,,,4.4\n2000,3,five,4.8\n"
        with pytest.raises(ParseError, match="line 3"):
            parse_series(text)

    def test_wrong_field_count(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_series("year,quarter,forecast,actual\n1999,,4.4\n")

    def test_conflicting_actuals(self):
        text = "year,quarter,forecast,actual\n1999,,,4.4\n2000,1,,4.8\n2000,2,,5.0\n"
        with pytest.raises(ParseError, match="conflicting"):
            parse_series(text)

    def test_continuation_rows_and_tabs(self):
        text = "year\tquarter\tforecast\tactual\n1999\t\t\t4.4\n2000\tQ1\t5.0\t4.8\n\tQ2\t4.0\t\n"
        recs = parse_series(text)
        assert [r.label for r in recs] == ["1999", "2000Q1", "2000Q2"]
        assert recs[2].actual == Decimal("4.8")


class TestDirectionalize:
    def test_table8_counts(self, gdp):
        result = directionalize(gdp)
        assert result.table.counts == (34, 4, 4, 36)
        assert len(result.outcomes) == 78
        assert result.ties == 0
        assert score_all(result.table).psi.format() == "0.795"

    def test_2009q1_correct_rejection(self, gdp):
        result = directionalize(gdp)
        i = [r.label for r in result.records].index("2009Q1")
        assert result.outcomes[i] == OutcomePair(False, False)

    def test_2008q1_false_alarm(self, gdp):
        result = directionalize(gdp)
        i = [r.label for r in result.records].index("2008Q1")
        assert result.outcomes[i] == OutcomePair(True, False)

    def test_error_policy_same_on_tie_free_data(self, gdp):
        assert directionalize(gdp, DirectionalRule(tie_policy="error")).table == directionalize(gdp).table

    def test_tie_default_down(self):
        recs = parse_series("year,quarter,forecast,actual\n1999,,,4.4\n2000,1,4.4,4.4\n")
        result = directionalize(recs)
        assert result.outcomes == (OutcomePair(False, False),)
        assert (result.forecast_ties, result.actual_ties) == (1, 1)
        assert result.metadata()["tie_policy"] == "down"

    def test_tie_error_names_record(self):
        recs = parse_series("year,quarter,forecast,actual\n1999,,,4.4\n2000,2,4.4,5.0\n")
        with pytest.raises(TieError, match="2000Q2"):
            directionalize(recs, DirectionalRule(tie_policy="error"))

    def test_reference_only(self):
        with pytest.raises(EmptyInputError, match="no forecasts"):
            directionalize(parse_series("year,quarter,forecast,actual\n1999,,,4.4\n"))

    def test_bad_policy(self):
        with pytest.raises(ValueError):
            DirectionalRule(tie_policy="up")

    @given(st.decimals(min_value=-50, max_value=50, places=1, allow_nan=False))
    def test_common_shift_invariance(self, shift):
        recs = load_series(gdp_series_path())
        lines = ["year,quarter,forecast,actual"]
        for r in recs:
            f = "" if r.forecast is None else str(r.forecast + shift)
            a = "" if r.actual is None else str(r.actual + shift)
            lines.append(f"{r.year},{r.quarter or ''},{f},{a}")
        shifted = parse_series("\n".join(lines))
        assert directionalize(shifted).outcomes == directionalize(recs).outcomes
