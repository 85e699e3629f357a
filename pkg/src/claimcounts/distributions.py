"""Discrete generalised Pareto (DGP) and negative binomial count distributions.

The DGP on support {mu, mu+1, ...} is defined through its survival function
S(x) = [1 + lam*(x - mu)]**(-alpha), giving

    pmf(x) = S(x) - S(x+1)
    cdf(x) = 1 - [1 + lam*(x - mu + 1)]**(-alpha)

All probability work happens in log space: the pmf is evaluated as
S(x) * (1 - exp(-alpha * log(b/a))) with a = 1 + lam*(x-mu) and b = a + lam,
which survives counts far beyond the point where the naive difference of
powers cancels catastrophically.

The negative binomial uses the zero-based mean/dispersion parametrisation
P(X=k) = Gamma(k+r) / (Gamma(r) k!) * p**k * (1-p)**r with p = m/(m+r),
so zeros are in the support and m is the mean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .errors import NumericError, ParameterError, SupportError

_LN2 = math.log(2.0)

# Integer counts above 2**53 are not exactly representable in float64; samples
# keep int64 storage whenever the draws allow it and fall back to float64 for
# the astronomically heavy-tailed regimes (alpha << 1).
_INT64_SAFE_MAX = 2.0**53


def _log1mexp(z):
    """log(1 - exp(-z)) for z > 0, stable at both ends."""
    z = np.asarray(z, dtype=float)
    with np.errstate(divide="ignore"):
        return np.where(z < _LN2, np.log(-np.expm1(-z)), np.log1p(-np.exp(-z)))


@dataclass(frozen=True, eq=False)
class DgpParams:
    """DGP parameter triple: shape alpha > 0, scale lam > 0, location mu >= 0.

    mu is an integer unless continuous_mu is set; the continuous relaxation
    exists only so the optimizer can treat mu as a free real in [0, x_min].
    """

    alpha: float
    lam: float
    mu: float = 0
    continuous_mu: bool = False

    def __post_init__(self):
        alpha = float(self.alpha)
        lam = float(self.lam)
        mu = float(self.mu)
        if not (math.isfinite(alpha) and alpha > 0.0):
            raise ParameterError(f"alpha must be positive and finite, got {self.alpha!r}")
        if not (math.isfinite(lam) and lam > 0.0):
            raise ParameterError(f"lam must be positive and finite, got {self.lam!r}")
        if not (math.isfinite(mu) and mu >= 0.0):
            raise ParameterError(f"mu must be nonnegative and finite, got {self.mu!r}")
        if not self.continuous_mu:
            if mu != math.floor(mu):
                raise ParameterError(
                    f"mu must be an integer unless continuous_mu is set, got {self.mu!r}"
                )
            object.__setattr__(self, "mu", int(mu))
        else:
            object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "lam", lam)

    def as_dict(self) -> dict[str, float]:
        return {"alpha": self.alpha, "lambda": self.lam, "mu": self.mu}


@dataclass(frozen=True, eq=False)
class NbParams:
    """Negative binomial in (r, m) form: dispersion r > 0, mean m > 0."""

    r: float
    m: float

    def __post_init__(self):
        r = float(self.r)
        m = float(self.m)
        if not (math.isfinite(r) and r > 0.0):
            raise ParameterError(f"r must be positive and finite, got {self.r!r}")
        if not (math.isfinite(m) and m > 0.0):
            raise ParameterError(f"m must be positive and finite, got {self.m!r}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "m", m)

    @property
    def p(self) -> float:
        """Success probability m / (m + r); may round to 1.0 for m >> r."""
        return self.m / (self.m + self.r)

    def as_dict(self) -> dict[str, float]:
        return {"r": self.r, "m": self.m}


@dataclass(frozen=True, eq=False)
class CountSample:
    """Immutable vector of nonnegative integer counts, one per unit."""

    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.values)
        if arr.ndim != 1 or arr.size < 1:
            raise ParameterError("a sample must be a nonempty 1-d vector of counts")
        if arr.dtype.kind in "iu":
            arr = arr.astype(np.int64)
        else:
            farr = np.asarray(arr, dtype=float)
            if not np.all(np.isfinite(farr)):
                raise ParameterError("counts must be finite")
            if np.any(farr != np.floor(farr)):
                raise ParameterError("counts must be integers")
            arr = farr.astype(np.int64) if farr.max() <= _INT64_SAFE_MAX else farr
        if arr.min() < 0:
            raise ParameterError("counts must be nonnegative")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return int(self.values.size)

    def tabulated(self) -> tuple[np.ndarray, np.ndarray]:
        """Distinct values and their multiplicities, ascending."""
        return np.unique(self.values, return_counts=True)

    def __len__(self) -> int:
        return self.n


def _dgp_logpmf(alpha: float, lam: float, u):
    """log pmf at offsets u = x - mu >= 0 (validated by the caller)."""
    lam_u = lam * np.asarray(u, dtype=float)
    with np.errstate(over="ignore", invalid="ignore"):
        log_a = np.log1p(lam_u)
        rho = np.log1p(lam / (1.0 + lam_u))
        return -alpha * log_a + _log1mexp(alpha * rho)


def dgp_pmf(params: DgpParams, x):
    """P(X = x); zero below the support start mu."""
    xa = np.asarray(x, dtype=float)
    u = xa - params.mu
    out = np.zeros_like(u, dtype=float)
    ok = u >= 0.0
    if np.any(ok):
        out[ok] = np.exp(_dgp_logpmf(params.alpha, params.lam, u[ok]))
    return float(out) if np.ndim(x) == 0 else out


def dgp_cdf(params: DgpParams, x):
    """P(X <= x); zero below mu, increasing to 1."""
    xa = np.asarray(x, dtype=float)
    u = xa - params.mu
    out = np.zeros_like(u, dtype=float)
    ok = u >= 0.0
    if np.any(ok):
        with np.errstate(over="ignore"):
            out[ok] = -np.expm1(-params.alpha * np.log1p(params.lam * (u[ok] + 1.0)))
    return float(out) if np.ndim(x) == 0 else out


def dgp_survival(params: DgpParams, x):
    """P(X >= x) = [1 + lam*(x - mu)]**(-alpha), defined for x >= mu only."""
    xa = np.asarray(x, dtype=float)
    u = xa - params.mu
    if np.any(u < 0.0):
        raise SupportError(f"survival is defined on x >= mu = {params.mu}")
    with np.errstate(over="ignore"):
        out = np.exp(-params.alpha * np.log1p(params.lam * u))
    return float(out) if np.ndim(x) == 0 else out


def dgp_quantile(params: DgpParams, u: float):
    """Smallest support point x with cdf(x) >= u, for u in [0, 1)."""
    if not (0.0 <= u < 1.0):
        raise ParameterError(f"quantile level must lie in [0, 1), got {u!r}")
    # Invert 1 - [1 + lam*(x - mu + 1)]**(-alpha) >= u analytically, then
    # nudge to absorb floating-point slop at the cell boundaries.
    t = math.expm1(-math.log1p(-u) / params.alpha) / params.lam
    if math.isinf(t):
        raise NumericError("quantile exceeds the float64 range")
    x = max(math.ceil(t) - 1 + params.mu, params.mu)
    while dgp_cdf(params, x) < u:
        x += 1
    while x > params.mu and dgp_cdf(params, x - 1) >= u:
        x -= 1
    return x


def dgp_sample(params: DgpParams, rng_seed: int, n: int) -> CountSample:
    """n i.i.d. draws by inverse transform; deterministic for a fixed seed.

    Raises NumericError when a draw falls beyond the float64 range, which
    happens with non-negligible probability once alpha drops below ~0.01.
    """
    if n < 1:
        raise ParameterError("sample size must be positive")
    rng = np.random.default_rng(rng_seed)
    uu = rng.random(n)
    with np.errstate(over="ignore"):
        t = np.expm1(-np.log1p(-uu) / params.alpha) / params.lam
    if not np.all(np.isfinite(t)):
        raise NumericError(
            "a draw exceeded the float64 range; this alpha regime has "
            "quantiles beyond 1e308"
        )
    x = np.maximum(np.ceil(t) - 1.0 + params.mu, float(params.mu))
    # Boundary fix-up, at most one step each way.
    bump = dgp_cdf(params, x) < uu
    while np.any(bump):
        x[bump] += 1.0
        bump = dgp_cdf(params, x) < uu
    drop = (x > params.mu) & (dgp_cdf(params, x - 1.0) >= uu)
    while np.any(drop):
        x[drop] -= 1.0
        drop = (x > params.mu) & (dgp_cdf(params, x - 1.0) >= uu)
    return CountSample(x)


def dgp_loglik(params: DgpParams, sample: CountSample) -> float:
    """Sum of log pmf over the sample; -inf when any term underflows to 0."""
    values, weights = sample.tabulated()
    u = values - params.mu
    if u.min() < 0:
        raise SupportError(
            f"sample minimum {values.min()} lies below the support start mu = {params.mu}"
        )
    terms = _dgp_logpmf(params.alpha, params.lam, u)
    if not np.all(np.isfinite(terms)):
        return -math.inf
    return float(weights @ terms)


def dgp_score(params: DgpParams, sample: CountSample) -> tuple[float, float]:
    """Partial derivatives of the log-likelihood in (alpha, lam), mu fixed.

    With a = 1 + lam*u, b = a + lam, u = x - mu and q = (b/a)**(-alpha):

        d/dalpha ln pmf = ln(b/a) / (1 - q) - ln b
        d/dlam   ln pmf = alpha * (1 / (a*b*(1-q)) - (u+1)/b)

    both evaluated through logs so that large counts neither overflow nor
    cancel.
    """
    values, weights = sample.tabulated()
    u = (values - params.mu).astype(float)
    if u.min() < 0:
        raise SupportError(
            f"sample minimum {values.min()} lies below the support start mu = {params.mu}"
        )
    alpha, lam = params.alpha, params.lam
    with np.errstate(over="ignore", invalid="ignore"):
        lam_u = lam * u
        log_a = np.log1p(lam_u)
        rho = np.log1p(lam / (1.0 + lam_u))
        log_b = log_a + rho
        z = alpha * rho
        one_m_q = -np.expm1(-z)
        log_one_m_q = _log1mexp(z)
        d_alpha = rho / one_m_q - log_b
        d_lam = alpha * (np.exp(-log_a - log_b - log_one_m_q) - (u + 1.0) * np.exp(-log_b))
    return float(weights @ d_alpha), float(weights @ d_lam)


def _nb_logpmf(params: NbParams, k):
    r, m = params.r, params.m
    k = np.asarray(k, dtype=float)
    # log p and log(1-p) via log1p keeps precision when m/r is extreme.
    log_p = -np.log1p(r / m)
    log_1mp = -np.log1p(m / r)
    return gammaln(k + r) - gammaln(r) - gammaln(k + 1.0) + k * log_p + r * log_1mp


def nb_pmf(params: NbParams, k):
    """P(X = k) for k = 0, 1, 2, ...; zero for negative k."""
    ka = np.asarray(k, dtype=float)
    out = np.zeros_like(ka, dtype=float)
    ok = ka >= 0.0
    if np.any(ok):
        out[ok] = np.exp(_nb_logpmf(params, ka[ok]))
    return float(out) if np.ndim(k) == 0 else out


def nb_loglik(params: NbParams, sample: CountSample) -> float:
    """Negative binomial log-likelihood evaluated through log-gamma."""
    values, weights = sample.tabulated()
    return float(weights @ _nb_logpmf(params, values))


def nb_sample(params: NbParams, rng_seed: int, n: int) -> CountSample:
    """n i.i.d. negative binomial draws; deterministic for a fixed seed."""
    if n < 1:
        raise ParameterError("sample size must be positive")
    rng = np.random.default_rng(rng_seed)
    # numpy's p is the complement of ours: P(X=k) ~ p**r (1-p)**k.
    return CountSample(rng.negative_binomial(params.r, params.r / (params.m + params.r), size=n))
