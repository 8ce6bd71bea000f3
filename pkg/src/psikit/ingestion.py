"""Forecast/actual series and their conversion into Up/Down outcomes.

Input is delimiter-separated text with header ``year,quarter,forecast,actual``.
A year's actual may be written on any one of its rows (the bundled data puts
it on Q1); ``quarter`` is empty for reference-only rows and ``forecast`` is
empty where no forecast was issued.

The reference for both directions is the previous year's actual: a forecast
is "Up" when it exceeds last year's outcome, and the year is "Up" when its
actual does.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Literal, Sequence

from psikit.contingency import ContingencyTable, OutcomePair, from_outcomes
from psikit.errors import ConsistencyError, EmptyInputError, ParseError, TieError

HEADER = ("year", "quarter", "forecast", "actual")
_MISSING = {"", "-", "na", "n/a"}

TiePolicy = Literal["down", "error"]
TIE_POLICIES = ("down", "error")


@dataclass(frozen=True)
class ForecastRecord:
    year: int
    quarter: int | None
    forecast: Decimal | None
    actual: Decimal | None  # the year's actual, copied onto every row of the year

    @property
    def label(self) -> str:
        return f"{self.year}" if self.quarter is None else f"{self.year}Q{self.quarter}"


@dataclass(frozen=True)
class DirectionalRule:
    reference: Literal["previous_year_actual"] = "previous_year_actual"
    tie_policy: TiePolicy = "down"

    def __post_init__(self):
        if self.tie_policy not in TIE_POLICIES:
            raise ValueError(f"tie_policy must be one of {TIE_POLICIES}, got {self.tie_policy!r}")
        if self.reference != "previous_year_actual":
            raise ValueError(f"unsupported reference {self.reference!r}")


@dataclass(frozen=True)
class DirectionalResult:
    records: tuple[ForecastRecord, ...]
    outcomes: tuple[OutcomePair, ...]
    table: ContingencyTable
    rule: DirectionalRule
    forecast_ties: int
    actual_ties: int

    @property
    def ties(self) -> int:
        return self.forecast_ties + self.actual_ties

    def metadata(self) -> dict:
        return {
            "reference": self.rule.reference,
            "tie_policy": self.rule.tie_policy,
            "forecast_ties": self.forecast_ties,
            "actual_ties": self.actual_ties,
            "records": len(self.records),
        }


def _decimal(token: str, field: str, lineno: int) -> Decimal | None:
    token = token.strip()
    if token.lower() in _MISSING:
        return None
    try:
        value = Decimal(token.replace("−", "-"))
    except InvalidOperation:
        raise ParseError(f"{field} is not a number: {token!r}", line=lineno) from None
    if not value.is_finite():
        raise ParseError(f"{field} is not finite: {token!r}", line=lineno)
    return value


def _quarter(token: str, lineno: int) -> int | None:
    token = token.strip().upper().lstrip("Q")
    if token in {"", "-"}:
        return None
    try:
        q = int(token)
    except ValueError:
        raise ParseError(f"bad quarter {token!r}", line=lineno) from None
    if not 1 <= q <= 4:
        raise ParseError(f"quarter must be 1-4, got {q}", line=lineno)
    return q


def parse_series(text: str) -> list[ForecastRecord]:
    """Parse series text; see the module docstring for the format."""
    lines = text.splitlines()
    if not any(ln.strip() for ln in lines):
        raise ParseError("series file is empty", line=1)
    sample = next(ln for ln in lines if ln.strip())
    delimiter = "\t" if "\t" in sample and "," not in sample else ","
    reader = csv.reader(io.StringIO(text), delimiter=delimiter)

    header = None
    raw: list[tuple[int, list[str]]] = []
    for lineno, row in enumerate(reader, start=1):
        if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
            continue
        if header is None:
            header = tuple(h.strip().lower() for h in row)
            if header != HEADER:
                raise ParseError(f"header must be {','.join(HEADER)}, got {','.join(header)}", line=lineno)
            continue
        if len(row) != len(HEADER):
            raise ParseError(f"expected {len(HEADER)} fields, got {len(row)}", line=lineno)
        raw.append((lineno, row))
    if not raw:
        raise ParseError("series file has no data rows", line=1)

    actuals: dict[int, Decimal] = {}
    parsed = []
    prev_year: int | None = None
    for lineno, (y, q, f, a) in raw:
        y = y.strip()
        if y:
            try:
                year = int(y)
            except ValueError:
                raise ParseError(f"bad year {y!r}", line=lineno) from None
        elif prev_year is not None:
            year = prev_year  # continuation row, as in a printed table
        else:
            raise ParseError("first data row has no year", line=lineno)
        prev_year = year
        quarter = _quarter(q, lineno)
        forecast = _decimal(f, "forecast", lineno)
        actual = _decimal(a, "actual", lineno)
        if actual is not None:
            if year in actuals and actuals[year] != actual:
                raise ParseError(f"conflicting actuals for {year}: {actuals[year]} vs {actual}", line=lineno)
            actuals[year] = actual
        parsed.append((lineno, year, quarter, forecast))

    records = []
    for lineno, year, quarter, forecast in parsed:
        if forecast is not None:
            if year not in actuals:
                raise ConsistencyError(f"line {lineno}: forecast for {year} but no actual for {year}")
            if year - 1 not in actuals:
                raise ConsistencyError(
                    f"line {lineno}: forecast for {year} needs the {year - 1} actual as reference")
        records.append(ForecastRecord(year, quarter, forecast, actuals.get(year)))
    records.sort(key=lambda r: (r.year, 0 if r.quarter is None else r.quarter))
    return records


def load_series(path: str | Path) -> list[ForecastRecord]:
    return parse_series(Path(path).read_text(encoding="utf-8"))


def directionalize(records: Sequence[ForecastRecord],
                   rule: DirectionalRule = DirectionalRule()) -> DirectionalResult:
    """Turn each forecast record into an (Up/Down, Up/Down) outcome and tabulate.

    Up maps to "yes": Up/Up is a hit, Up/Down a false alarm, Down/Up a miss.
    Equality with the reference counts as Down under the default tie policy.
    """
    actuals = {r.year: r.actual for r in records if r.actual is not None}
    used: list[ForecastRecord] = []
    outcomes: list[OutcomePair] = []
    forecast_ties = actual_ties = 0
    for r in records:
        if r.forecast is None:
            continue
        reference = actuals.get(r.year - 1)
        if reference is None or r.actual is None:
            raise ConsistencyError(f"{r.label}: reference or current actual missing")
        if r.forecast == reference:
            forecast_ties += 1
            if rule.tie_policy == "error":
                raise TieError(f"{r.label}: forecast {r.forecast} equals {r.year - 1} actual {reference}")
        if r.actual == reference:
            actual_ties += 1
            if rule.tie_policy == "error":
                raise TieError(f"{r.label}: actual {r.actual} equals {r.year - 1} actual {reference}")
        used.append(r)
        outcomes.append(OutcomePair(r.forecast > reference, r.actual > reference))
    if not outcomes:
        raise EmptyInputError("series contains no forecasts")
    return DirectionalResult(tuple(used), tuple(outcomes), from_outcomes(outcomes), rule,
                             forecast_ties, actual_ties)
