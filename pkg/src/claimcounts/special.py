"""Digamma function used by the negative binomial profile score.

Implemented with the upward recurrence psi(x+1) = psi(x) + 1/x to push the
argument past 6, then the de Moivre asymptotic expansion.  Relative accuracy
is around 1e-13 over (0, 1e6), well inside what the profile root solve needs.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError

_ASYMPTOTIC_CUTOFF = 6.0

# Coefficients of the expansion psi(x) ~ ln x - 1/(2x) - sum c_k / x^(2k),
# c_k = B_(2k) / (2k) for Bernoulli numbers B.
_SERIES = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
)


def digamma(x):
    """Digamma psi(x) for x > 0, scalar or array.

    Raises ParameterError if any argument is not strictly positive.
    """
    arr = np.asarray(x, dtype=float)
    if arr.size and (not np.all(np.isfinite(arr)) or np.any(arr <= 0.0)):
        raise ParameterError("digamma requires strictly positive arguments")

    work = np.atleast_1d(arr).copy()
    acc = np.zeros_like(work)

    # Recurrence: at most ceil(cutoff) passes since each adds 1 to every
    # remaining small argument.
    small = work < _ASYMPTOTIC_CUTOFF
    while np.any(small):
        acc[small] -= 1.0 / work[small]
        work[small] += 1.0
        small = work < _ASYMPTOTIC_CUTOFF

    inv2 = 1.0 / (work * work)
    tail = np.zeros_like(work)
    for c in reversed(_SERIES):
        tail = (tail + c) * inv2
    acc += np.log(work) - 0.5 / work - tail

    if arr.ndim == 0:
        return float(acc[0])
    return acc.reshape(arr.shape)
