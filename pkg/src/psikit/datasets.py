"""Bundled datasets: published example tables, random-prediction tables, GDP series.

``paper_values.json`` holds the values exactly as printed. A printed dash is
kept as the string ``"-"`` and a printed "N/A" as ``"N/A"``.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

from psikit.contingency import ContingencyTable

DASH = "-"
NOT_APPLICABLE = "N/A"

# Example "21*": example 21 with a raised from 397 to 399, other cells unchanged.
EXAMPLE_21_STAR = ContingencyTable(399, 0, 2, 1)


def _data_path(name: str) -> Path:
    return Path(str(resources.files("psikit") / "data" / name))


def gdp_series_path() -> Path:
    """Bank of Thailand annual real GDP growth forecasts by quarter, 2000-2019, with actuals from 1999."""
    return _data_path("bot_gdp_2000_2019.csv")


@lru_cache(maxsize=None)
def paper_values() -> dict:
    with open(_data_path("paper_values.json"), encoding="utf-8") as fh:
        return json.load(fh)


def example_tables() -> dict[int, ContingencyTable]:
    """The 24 numbered example tables, keyed by example number."""
    return {row["no"]: ContingencyTable(*row["counts"]) for row in paper_values()["table7"]}


def example_table(no: int) -> ContingencyTable:
    return example_tables()[no]


def random_prediction_tables() -> list[ContingencyTable]:
    """The thirty printed random-prediction tables, in printed order."""
    return [ContingencyTable(*row["counts"]) for row in paper_values()["tableA2"]["rows"]]
