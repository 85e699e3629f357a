"""Initial DGP estimates from the leading relative frequencies of a sample.

Matching the model pmf to the empirical relative frequencies at the sample
minimum mu and at the smallest strictly larger observed value mu + eps gives

    f_mu      = 1 - (1 + lam)**(-alpha)
    f_mu_eps  = (1 + lam)**(-alpha) - (1 + 2*lam)**(-alpha)

Eliminating alpha leaves a single equation in lam,

    ln(1 + 2*lam) / ln(1 + lam) = ln(1 - f_mu - f_mu_eps) / ln(1 - f_mu)

whose left side decreases monotonically from 2 (lam -> 0) to 1 (lam -> inf),
so a root exists exactly when the right side lies in (1, 2).  Note the model
side is pinned at x = mu + 1 regardless of eps; the eps generalisation only
changes which empirical frequency is used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .distributions import CountSample, DgpParams
from .errors import DegenerateSampleError, NoRootError, NumericError, ParameterError

_BRACKET_START = 1e-8
_MAX_DOUBLINGS = 200


@dataclass(frozen=True)
class LeadingFrequencies:
    """Relative frequencies at the two smallest distinct sample values."""

    f_mu: float
    f_mu_eps: float
    mu: int
    eps: int

    def __post_init__(self):
        if not (0.0 < self.f_mu < 1.0):
            raise ParameterError(f"f_mu must lie in (0, 1), got {self.f_mu!r}")
        if not (0.0 < self.f_mu_eps):
            raise ParameterError(f"f_mu_eps must be positive, got {self.f_mu_eps!r}")
        # The two frequencies may sum to 1 only in the degenerate two-value
        # case; solve_init then reports the boundary as a no-root condition.
        if self.f_mu + self.f_mu_eps > 1.0:
            raise ParameterError("f_mu + f_mu_eps cannot exceed 1")
        if self.mu < 0 or self.eps < 1:
            raise ParameterError("mu must be >= 0 and eps >= 1")


def leading_frequencies(sample: CountSample) -> LeadingFrequencies:
    """Empirical f_mu, f_mu_eps, mu and eps from a sample.

    Raises DegenerateSampleError when every observation is identical.
    """
    values, counts = sample.tabulated()
    if values.size < 2:
        raise DegenerateSampleError(
            "frequency initialisation needs at least two distinct values"
        )
    n = sample.n
    mu = values[0]
    eps = values[1] - values[0]
    return LeadingFrequencies(
        f_mu=counts[0] / n,
        f_mu_eps=counts[1] / n,
        mu=int(mu),
        eps=int(eps),
    )


def _lhs(lam: float) -> float:
    return math.log1p(2.0 * lam) / math.log1p(lam)


def solve_init(freqs: LeadingFrequencies) -> DgpParams:
    """Initial (alpha, lam, mu) solving the leading-frequency equations.

    The scale solve brackets the monotone left side by doubling lam until it
    crosses the target ratio, then refines with Brent's method to relative
    tolerance 1e-12.  Raises NoRootError when the target ratio falls outside
    the attainable range (1, 2).
    """
    tail = 1.0 - freqs.f_mu - freqs.f_mu_eps
    if tail <= 0.0:
        raise NoRootError("leading frequencies exhaust the distribution; no root in lam")
    target = math.log(tail) / math.log1p(-freqs.f_mu)
    if not (1.0 < target < 2.0):
        raise NoRootError(
            f"frequency ratio {target:.6g} outside the attainable range (1, 2)"
        )

    lo = _BRACKET_START
    if _lhs(lo) <= target:
        # The left side is already below the target at the smallest bracket
        # point; the root sits in (0, lo) where float evaluation is flat.
        raise NoRootError("target ratio too close to 2; root below the bracket floor")
    hi = lo
    for _ in range(_MAX_DOUBLINGS):
        hi *= 2.0
        if _lhs(hi) - target < 0.0:
            break
    else:
        raise NoRootError("target ratio too close to 1; no sign change below the cap")

    try:
        lam = brentq(lambda l: _lhs(l) - target, hi / 2.0, hi, xtol=1e-300, rtol=1e-14, maxiter=200)
    except RuntimeError as exc:  # pragma: no cover - brentq converges on monotone input
        raise NumericError(f"scale root solve did not converge: {exc}") from exc

    alpha = -math.log1p(-freqs.f_mu) / math.log1p(lam)
    return DgpParams(alpha=alpha, lam=lam, mu=freqs.mu)
