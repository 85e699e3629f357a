"""Nonparametric bootstrap standard errors for any fitting procedure.

Each replicate resamples the observations with replacement and refits.  The
random stream of replicate i is derived from (seed, i) alone, so skipping a
failed replicate never perturbs the draws of later ones, and replicates may
run in parallel while reproducing the sequential result bit for bit.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .distributions import CountSample
from .errors import ClaimCountsError, InsufficientReplicatesError, ParameterError
from .fitting import FitResult

SKIP_AND_COUNT = "skip_and_count"
ABORT = "abort"

Fitter = Callable[[CountSample], FitResult]


@dataclass(frozen=True)
class BootstrapConfig:
    replicates: int = 1000
    rng_seed: int = 0
    failure_policy: str = SKIP_AND_COUNT

    def __post_init__(self):
        if self.replicates < 2:
            raise ParameterError("a standard deviation needs at least 2 replicates")
        if self.failure_policy not in (SKIP_AND_COUNT, ABORT):
            raise ParameterError(f"unknown failure policy {self.failure_policy!r}")


@dataclass(frozen=True, eq=False)
class BootstrapResult:
    parameter_names: tuple[str, ...]
    point_estimates: np.ndarray
    standard_errors: np.ndarray
    successful_replicates: int
    failed_replicates: int
    replicate_estimates: np.ndarray | None = None

    def as_dict(self) -> dict:
        return {
            "standard_errors": dict(zip(self.parameter_names, (float(s) for s in self.standard_errors))),
            "successful_replicates": self.successful_replicates,
            "failed_replicates": self.failed_replicates,
        }


def _param_vector(result: FitResult) -> tuple[tuple[str, ...], np.ndarray]:
    mapping = result.params.as_dict()
    return tuple(mapping), np.array([float(v) for v in mapping.values()])


def bootstrap_se(
    sample: CountSample,
    fitter: Fitter,
    config: BootstrapConfig = BootstrapConfig(),
    point_result: FitResult | None = None,
    keep_replicates: bool = False,
    jobs: int = 1,
) -> BootstrapResult:
    """Resample-with-replacement standard errors of a fitter's estimates.

    point_result, when supplied, must be the fitter's output on the full
    sample; otherwise the fitter is invoked on it once here.  Standard
    errors are the per-parameter sample standard deviations (divisor
    B_successful - 1) across successful replicates.
    """
    if point_result is None:
        point_result = fitter(sample)
    names, point = _param_vector(point_result)

    n = sample.n
    values = sample.values
    children = np.random.SeedSequence(config.rng_seed).spawn(config.replicates)

    def one_replicate(i: int) -> np.ndarray | None:
        rng = np.random.default_rng(children[i])
        resample = CountSample(values[rng.integers(0, n, size=n)])
        try:
            refit = fitter(resample)
        except ClaimCountsError:
            if config.failure_policy == ABORT:
                raise
            return None
        _, vec = _param_vector(refit)
        return vec

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(one_replicate, range(config.replicates)))
    else:
        outcomes = [one_replicate(i) for i in range(config.replicates)]

    kept = [v for v in outcomes if v is not None]
    failed = config.replicates - len(kept)
    if len(kept) < 2:
        raise InsufficientReplicatesError(
            f"only {len(kept)} of {config.replicates} replicates produced estimates"
        )
    matrix = np.vstack(kept)
    return BootstrapResult(
        parameter_names=names,
        point_estimates=point,
        standard_errors=np.std(matrix, axis=0, ddof=1),
        successful_replicates=len(kept),
        failed_replicates=failed,
        replicate_estimates=matrix if keep_replicates else None,
    )
