"""PSI and the six comparison measures.

Every skill score follows one degenerate-term policy: an expression that is
undefined (zero denominator, or 0/0) takes the no-skill value 0 and the
returned :class:`ScoreValue` is flagged ``degenerate``. The critical success
index is the exception; when a + b + c = 0 it is *not applicable* rather
than 0.

The rational measures (GSS, HSS, PSS, CSS, ORSS, CSI) are evaluated as a
single integer ratio, so the float result is the correctly rounded value of
the exact rational and :func:`exact` can hand back the rational itself.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Callable, Iterator

from psikit.contingency import ContingencyTable, decompose

MEASURE_NAMES = ("psi", "gss", "hss", "pss", "css", "orss", "csi")
SKILL_MEASURES = MEASURE_NAMES[:-1]

EXACT_RANGES: dict[str, tuple[Fraction, Fraction]] = {
    "psi": (Fraction(-1), Fraction(1)),
    "gss": (Fraction(-1, 3), Fraction(1)),
    "hss": (Fraction(-1), Fraction(1)),
    "pss": (Fraction(-1), Fraction(1)),
    "css": (Fraction(-1), Fraction(1)),
    "orss": (Fraction(-1), Fraction(1)),
    "csi": (Fraction(0), Fraction(1)),
}
RANGES: dict[str, tuple[float, float]] = {k: (float(lo), float(hi)) for k, (lo, hi) in EXACT_RANGES.items()}

LONG_NAMES = {
    "psi": "Prediction skill index",
    "gss": "Gilbert skill score",
    "hss": "Heidke skill score",
    "pss": "Peirce skill score",
    "css": "Clayton skill score",
    "orss": "Odds ratio skill score",
    "csi": "Critical success index",
}


@dataclass(frozen=True)
class ScoreValue:
    value: float | None
    degenerate: bool = False
    not_applicable: bool = False

    def rounded(self, decimals: int = 3) -> float | None:
        if self.value is None:
            return None
        r = round(self.value, decimals)
        return 0.0 if r == 0 else r  # no "-0.000"

    def format(self, decimals: int = 3) -> str:
        if self.not_applicable:
            return "N/A"
        return f"{self.rounded(decimals):.{decimals}f}"

    def to_dict(self, decimals: int | None = 3) -> dict:
        value = self.value if decimals is None else self.rounded(decimals)
        return {"value": value, "degenerate": self.degenerate, "not_applicable": self.not_applicable}

    @classmethod
    def from_dict(cls, data: dict) -> "ScoreValue":
        return cls(data["value"], bool(data["degenerate"]), bool(data["not_applicable"]))


@dataclass(frozen=True)
class ScoreSet:
    psi: ScoreValue
    gss: ScoreValue
    hss: ScoreValue
    pss: ScoreValue
    css: ScoreValue
    orss: ScoreValue
    csi: ScoreValue

    def __getitem__(self, name: str) -> ScoreValue:
        if name not in MEASURE_NAMES:
            raise KeyError(name)
        return getattr(self, name)

    def items(self) -> Iterator[tuple[str, ScoreValue]]:
        for f in fields(self):
            yield f.name, getattr(self, f.name)

    def values(self) -> dict[str, float | None]:
        return {name: sv.value for name, sv in self.items()}

    def to_dict(self, decimals: int | None = 3) -> dict:
        return {name: sv.to_dict(decimals) for name, sv in self.items()}

    def to_json(self, decimals: int | None = 3, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(decimals), indent=indent)

    @classmethod
    def from_dict(cls, data: dict) -> "ScoreSet":
        return cls(**{name: ScoreValue.from_dict(data[name]) for name in MEASURE_NAMES})

    @classmethod
    def from_json(cls, text: str) -> "ScoreSet":
        return cls.from_dict(json.loads(text))


def _ratio(num: int, den: int) -> ScoreValue:
    if den == 0:
        return ScoreValue(0.0, degenerate=True)
    return ScoreValue(num / den)


# Integer (numerator, denominator) forms. Denominator 0 marks an undefined score.

def _gss_parts(a: int, b: int, c: int, d: int) -> tuple[int, int]:
    # (a - e) / (a + b + c - e), e = (a+b)(a+c)/n, both sides scaled by n
    n = a + b + c + d
    chance = (a + b) * (a + c)
    return a * n - chance, (a + b + c) * n - chance


def _hss_parts(a: int, b: int, c: int, d: int) -> tuple[int, int]:
    n = a + b + c + d
    chance = (a + b) * (a + c) + (b + d) * (c + d)
    return (a + d) * n - chance, n * n - chance


def _pss_parts(a: int, b: int, c: int, d: int) -> tuple[int, int]:
    return a * d - b * c, (b + d) * (a + c)


def _css_parts(a: int, b: int, c: int, d: int) -> tuple[int, int]:
    # a/(a+b) - c/(c+d); if either fraction is undefined the whole score is.
    return a * d - b * c, (a + b) * (c + d)


def _orss_parts(a: int, b: int, c: int, d: int) -> tuple[int, int]:
    return a * d - b * c, a * d + b * c


def _csi_parts(a: int, b: int, c: int, d: int) -> tuple[int, int]:
    return a, a + b + c


_PARTS: dict[str, Callable[[int, int, int, int], tuple[int, int]]] = {
    "gss": _gss_parts,
    "hss": _hss_parts,
    "pss": _pss_parts,
    "css": _css_parts,
    "orss": _orss_parts,
    "csi": _csi_parts,
}


def psi(table: ContingencyTable) -> ScoreValue:
    """Prediction skill index.

    Half of (r_a + r_d) - (r_b + r_c), where r_x is the normalized error of
    cell x on the probability scale: (x/n - E_x) / sqrt(E_x), E_x being the
    product of the cell's predicted and observed marginal probabilities.

    Examples
    --------
    >>> psi(ContingencyTable(150, 50, 50, 150)).value
    0.5
    """
    dec = decompose(table)
    r_a, r_b, r_c, r_d = dec.normalized_error
    return ScoreValue(0.5 * ((r_a + r_d) - (r_b + r_c)), degenerate=dec.any_degenerate)


def psi_pearson(table: ContingencyTable) -> float:
    """PSI from count-scale Pearson residuals, divided by 2*sqrt(n).

    Independent of :func:`decompose`; used to cross-check :func:`psi`.
    """
    a, b, c, d = table.counts
    return _count_form_sum(a, b, c, d) / (2.0 * math.sqrt(table.n))


def psi_count_form(table: ContingencyTable) -> float:
    """The count-scale residual sum halved, without the 1/sqrt(n) factor.

    This expression is *not* bounded by 1 (it grows like sqrt(n)); it is kept
    only so the regression suite can pin down why it is not the index.
    """
    a, b, c, d = table.counts
    return _count_form_sum(a, b, c, d) / 2.0


def _count_form_sum(a: int, b: int, c: int, d: int) -> float:
    n = a + b + c + d
    total = 0.0
    for count, row, col, sign in (
        (a, a + b, a + c, 1.0),
        (b, a + b, b + d, -1.0),
        (c, c + d, a + c, -1.0),
        (d, c + d, b + d, 1.0),
    ):
        e = row * col / n
        if e > 0:
            total += sign * (count - e) / math.sqrt(e)
    return total


def gss(table: ContingencyTable) -> ScoreValue:
    """Gilbert skill score (equitable threat score)."""
    return _ratio(*_gss_parts(*table.counts))


def hss(table: ContingencyTable) -> ScoreValue:
    """Heidke skill score."""
    return _ratio(*_hss_parts(*table.counts))


def pss(table: ContingencyTable) -> ScoreValue:
    """Peirce skill score, (ad - bc) / ((b + d)(a + c))."""
    return _ratio(*_pss_parts(*table.counts))


def css(table: ContingencyTable) -> ScoreValue:
    """Clayton skill score, a/(a + b) - c/(c + d).

    A forecast that never says "yes" (or never says "no") leaves one of the
    two conditional frequencies undefined; the score is then 0 as a whole.
    """
    return _ratio(*_css_parts(*table.counts))


def orss(table: ContingencyTable) -> ScoreValue:
    """Odds ratio skill score (Yule's Q)."""
    return _ratio(*_orss_parts(*table.counts))


def csi(table: ContingencyTable) -> ScoreValue:
    """Critical success index, a / (a + b + c); N/A when there are only correct rejections."""
    num, den = _csi_parts(*table.counts)
    if den == 0:
        return ScoreValue(None, not_applicable=True)
    return ScoreValue(num / den)


MEASURES: dict[str, Callable[[ContingencyTable], ScoreValue]] = {
    "psi": psi,
    "gss": gss,
    "hss": hss,
    "pss": pss,
    "css": css,
    "orss": orss,
    "csi": csi,
}


def exact(name: str, table: ContingencyTable) -> Fraction | None:
    """Exact rational value of a rational measure.

    Returns 0 for degenerate skill scores and None for an inapplicable CSI.
    Raises KeyError for PSI, which is irrational in general.
    """
    num, den = _PARTS[name](*table.counts)
    if den == 0:
        return None if name == "csi" else Fraction(0)
    return Fraction(num, den)


def score_all(table: ContingencyTable) -> ScoreSet:
    return ScoreSet(**{name: fn(table) for name, fn in MEASURES.items()})
