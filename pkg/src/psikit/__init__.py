"""Skill verification for deterministic binary forecasts.

Computes the prediction skill index (PSI) next to the Gilbert, Heidke,
Peirce, Clayton and odds-ratio skill scores and the critical success index,
all from a 2x2 contingency table.
"""

from psikit.contingency import (
    ContingencyTable,
    NoSkillDecomposition,
    OutcomePair,
    base_rate,
    bias_score,
    decompose,
    from_outcomes,
)
from psikit.errors import (
    ConsistencyError,
    EmptyInputError,
    ParseError,
    PsikitError,
    TieError,
    UndefinedBiasError,
)
from psikit.scores import (
    MEASURE_NAMES,
    ScoreSet,
    ScoreValue,
    css,
    csi,
    gss,
    hss,
    orss,
    pss,
    psi,
    score_all,
)

__all__ = [
    "ConsistencyError",
    "ContingencyTable",
    "EmptyInputError",
    "MEASURE_NAMES",
    "NoSkillDecomposition",
    "OutcomePair",
    "ParseError",
    "PsikitError",
    "ScoreSet",
    "ScoreValue",
    "TieError",
    "UndefinedBiasError",
    "base_rate",
    "bias_score",
    "css",
    "csi",
    "decompose",
    "from_outcomes",
    "gss",
    "hss",
    "orss",
    "pss",
    "psi",
    "score_all",
]

__version__ = "0.1.0"
