"""2x2 contingency tables and their no-skill decomposition.

Cells are always ordered ``(a, b, c, d)``::

                    observed yes    observed no
    predicted yes   a  hits         b  false alarms
    predicted no    c  misses       d  correct rejections
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from psikit.errors import EmptyInputError, ParseError, UndefinedBiasError

CELLS = ("a", "b", "c", "d")
FIELD_NAMES = ("hits", "false_alarms", "misses", "correct_rejections")

_YES_TOKENS = {"1", "yes", "y", "up", "true"}
_NO_TOKENS = {"0", "no", "n", "down", "false"}


@dataclass(frozen=True)
class OutcomePair:
    """One forecast period: was the event predicted, and did it occur."""

    predicted: bool
    observed: bool


@dataclass(frozen=True)
class ContingencyTable:
    hits: int
    false_alarms: int
    misses: int
    correct_rejections: int

    def __post_init__(self):
        for name in FIELD_NAMES:
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                # accept integral numpy scalars and the like, reject 1.5
                try:
                    as_int = int(value)
                except (TypeError, ValueError):
                    raise TypeError(f"{name} must be an integer, got {value!r}") from None
                if as_int != value:
                    raise TypeError(f"{name} must be an integer, got {value!r}")
                object.__setattr__(self, name, as_int)
                value = as_int
            if value < 0:
                raise ValueError(f"{name} must be non-negative, got {value}")
        if self.n < 1:
            raise EmptyInputError("contingency table is empty (n = 0)")

    @classmethod
    def of(cls, a: int, b: int, c: int, d: int) -> "ContingencyTable":
        return cls(a, b, c, d)

    @property
    def a(self) -> int:
        return self.hits

    @property
    def b(self) -> int:
        return self.false_alarms

    @property
    def c(self) -> int:
        return self.misses

    @property
    def d(self) -> int:
        return self.correct_rejections

    @property
    def n(self) -> int:
        return self.hits + self.false_alarms + self.misses + self.correct_rejections

    @property
    def counts(self) -> tuple[int, int, int, int]:
        return (self.hits, self.false_alarms, self.misses, self.correct_rejections)

    def transpose(self) -> "ContingencyTable":
        """Swap false alarms and misses."""
        return ContingencyTable(self.a, self.c, self.b, self.d)

    def complement(self) -> "ContingencyTable":
        """Relabel events as non-events (a<->d, b<->c)."""
        return ContingencyTable(self.d, self.c, self.b, self.a)

    def to_dict(self) -> dict[str, int]:
        return dict(zip(FIELD_NAMES, self.counts))

    @classmethod
    def from_dict(cls, data: dict) -> "ContingencyTable":
        missing = [k for k in FIELD_NAMES if k not in data]
        if missing:
            raise ParseError(f"missing table fields: {', '.join(missing)}")
        return cls(*(data[k] for k in FIELD_NAMES))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "ContingencyTable":
        return cls.from_dict(json.loads(text))

    def to_csv(self, delimiter: str = ",") -> str:
        """Header line plus one record, newline terminated."""
        buf = io.StringIO()
        writer = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
        writer.writerow(FIELD_NAMES)
        writer.writerow(self.counts)
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, delimiter: str = ",") -> "ContingencyTable":
        rows = [r for r in csv.reader(io.StringIO(text), delimiter=delimiter) if r]
        if len(rows) != 2:
            raise ParseError("expected a header line and exactly one record")
        header = [h.strip() for h in rows[0]]
        try:
            values = {h: int(v) for h, v in zip(header, rows[1])}
        except ValueError as exc:
            raise ParseError(f"non-integer count: {exc}", line=2) from None
        return cls.from_dict(values)


@dataclass(frozen=True)
class NoSkillDecomposition:
    """Joint/marginal probabilities, no-skill expectations and residuals.

    Every 4-tuple is in cell order ``(a, b, c, d)``.
    """

    joint: tuple[float, float, float, float]
    marginal_pred_yes: float
    marginal_pred_no: float
    marginal_obs_yes: float
    marginal_obs_no: float
    expected: tuple[float, float, float, float]
    error: tuple[float, float, float, float]
    normalized_error: tuple[float, float, float, float]
    degenerate: tuple[bool, bool, bool, bool]

    @property
    def any_degenerate(self) -> bool:
        return any(self.degenerate)


def from_outcomes(stream: Iterable[OutcomePair | tuple[bool, bool]]) -> ContingencyTable:
    """Tabulate a stream of (predicted, observed) pairs."""
    cells = [0, 0, 0, 0]
    for pair in stream:
        if isinstance(pair, OutcomePair):
            predicted, observed = pair.predicted, pair.observed
        else:
            predicted, observed = pair
        cells[(0 if predicted else 2) + (0 if observed else 1)] += 1
    if sum(cells) == 0:
        raise EmptyInputError("outcome stream is empty")
    return ContingencyTable(*cells)


def decompose(table: ContingencyTable) -> NoSkillDecomposition:
    """Derive the no-skill decomposition of a table.

    A normalized-error cell whose expected probability is zero (a predicted or
    observed marginal of zero) takes the no-skill value 0 and is flagged.
    """
    n = table.n
    a, b, c, d = table.counts
    pred_yes, pred_no = (a + b) / n, (c + d) / n
    obs_yes, obs_no = (a + c) / n, (b + d) / n
    joint = (a / n, b / n, c / n, d / n)
    expected = (pred_yes * obs_yes, pred_yes * obs_no, pred_no * obs_yes, pred_no * obs_no)
    error = tuple(p - e for p, e in zip(joint, expected))
    normalized = []
    degenerate = []
    for err, exp in zip(error, expected):
        if exp == 0.0:
            normalized.append(0.0)
            degenerate.append(True)
        else:
            normalized.append(err / math.sqrt(exp))
            degenerate.append(False)
    return NoSkillDecomposition(
        joint=joint,
        marginal_pred_yes=pred_yes,
        marginal_pred_no=pred_no,
        marginal_obs_yes=obs_yes,
        marginal_obs_no=obs_no,
        expected=expected,
        error=error,
        normalized_error=tuple(normalized),
        degenerate=tuple(degenerate),
    )


def base_rate(table: ContingencyTable) -> float:
    """Observed event frequency (a + c) / n."""
    return (table.a + table.c) / table.n


def bias_score(table: ContingencyTable) -> float:
    """Frequency bias (a + b) / (a + c); 1 means forecast 'yes' as often as observed."""
    observed = table.a + table.c
    if observed == 0:
        raise UndefinedBiasError("bias score undefined: no observed events (a + c = 0)")
    return (table.a + table.b) / observed


def parse_flag(token: str) -> bool:
    """Map ``1/0``, ``yes/no`` or ``up/down`` (any case) to a boolean."""
    t = token.strip().lower()
    if t in _YES_TOKENS:
        return True
    if t in _NO_TOKENS:
        return False
    raise ValueError(f"unrecognised outcome token {token!r}")


def parse_outcomes(text: str) -> list[OutcomePair]:
    """Parse a two-column outcome stream (predicted, observed per line).

    Columns may be separated by commas, tabs or whitespace. Blank lines and
    ``#`` comments are skipped, as is a leading ``predicted,observed`` header.
    """
    pairs: list[OutcomePair] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.replace(",", " ").replace(";", " ").split()
        if not pairs and [f.lower() for f in fields] == ["predicted", "observed"]:
            continue
        if len(fields) != 2:
            raise ParseError(f"expected 2 fields, got {len(fields)}", line=lineno)
        try:
            pairs.append(OutcomePair(parse_flag(fields[0]), parse_flag(fields[1])))
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from None
    if not pairs:
        raise EmptyInputError("outcome file contains no records")
    return pairs


def load_outcomes(path: str | Path) -> list[OutcomePair]:
    return parse_outcomes(Path(path).read_text())


def format_outcomes(pairs: Iterable[OutcomePair], yes: str = "up", no: str = "down") -> str:
    lines = ["predicted,observed"]
    for p in pairs:
        lines.append(f"{yes if p.predicted else no},{yes if p.observed else no}")
    return "\n".join(lines) + "\n"
