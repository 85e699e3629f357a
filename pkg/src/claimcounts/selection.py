"""AIC/BIC scoring and model comparison.

AIC = -2 ln L + 2 d and BIC = -2 ln L + d ln(n); the candidate with the
minimum value wins.  Ties break toward fewer parameters, then toward the
lexicographically smaller model name, and are flagged in the report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import IncomparableModelsError, ParameterError


@dataclass(frozen=True)
class ModelScore:
    model_name: str
    loglik: float
    d: int
    n: int
    aic: float
    bic: float


@dataclass(frozen=True)
class ComparisonReport:
    scores: tuple[ModelScore, ...]
    winner_aic: str
    winner_bic: str
    # (delta_aic, delta_bic) aligned with scores; the winners sit at 0.
    deltas: tuple[tuple[float, float], ...]
    aic_tie: bool = False
    bic_tie: bool = False


def score_model(loglik: float, d: int, n: int, model_name: str = "model") -> ModelScore:
    """Exact AIC/BIC for a fitted model with d parameters on n observations."""
    if d < 1:
        raise ParameterError("parameter count d must be >= 1")
    if n < 1:
        raise ParameterError("sample size n must be >= 1")
    return ModelScore(
        model_name=model_name,
        loglik=float(loglik),
        d=int(d),
        n=int(n),
        aic=-2.0 * loglik + 2.0 * d,
        bic=-2.0 * loglik + d * math.log(n),
    )


def compare(scores: list[ModelScore] | tuple[ModelScore, ...]) -> ComparisonReport:
    """Rank candidate models fitted to the same sample."""
    scores = tuple(scores)
    if len(scores) < 2:
        raise ParameterError("comparison needs at least two model scores")
    sizes = {s.n for s in scores}
    if len(sizes) != 1:
        raise IncomparableModelsError(
            f"scores computed on different sample sizes {sorted(sizes)} are not comparable"
        )

    def pick(attr: str) -> tuple[str, bool]:
        best = min(scores, key=lambda s: (getattr(s, attr), s.d, s.model_name))
        tie = sum(1 for s in scores if getattr(s, attr) == getattr(best, attr)) > 1
        return best.model_name, tie

    winner_aic, aic_tie = pick("aic")
    winner_bic, bic_tie = pick("bic")
    min_aic = min(s.aic for s in scores)
    min_bic = min(s.bic for s in scores)
    deltas = tuple((s.aic - min_aic, s.bic - min_bic) for s in scores)
    return ComparisonReport(
        scores=scores,
        winner_aic=winner_aic,
        winner_bic=winner_bic,
        deltas=deltas,
        aic_tie=aic_tie,
        bic_tie=bic_tie,
    )
