"""Independent verification machinery.

Monte Carlo construction of the distribution from Rayleigh-sample medians,
adaptive quadrature on the unit interval, and a centered finite difference.
The test suite (and the CLI `verify` command) uses these to cross-check the
analytic formulas in `distributions` through routes that share none of their
code.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .specfun import DomainError

__all__ = [
    "MedianSimConfig",
    "ToleranceNotMetError",
    "rayleigh_median_sample",
    "quadrature_unit",
    "finite_diff",
]


class ToleranceNotMetError(RuntimeError):
    """Quadrature finished without reaching the requested tolerance."""

    def __init__(self, message, estimate, error_bound):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


@dataclass(frozen=True)
class MedianSimConfig:
    """Configuration for the median-of-odd-Rayleigh-sample construction.

    `n` is the integer shape, giving sample size 2n + 1; the construction is
    only meaningful at integer n.
    """

    n: int
    alpha: float
    replications: int
    seed: int

    def __post_init__(self):
        if not (isinstance(self.n, (int, np.integer)) and self.n >= 0):
            raise DomainError(f"n must be a nonnegative integer, got {self.n}")
        if not (np.isfinite(self.alpha) and self.alpha > 0):
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        if not (isinstance(self.replications, (int, np.integer))
                and self.replications >= 1):
            raise DomainError(
                f"replications must be >= 1, got {self.replications}"
            )


def rayleigh_median_sample(config: MedianSimConfig):
    """Draw transformed medians of odd-sized Rayleigh samples.

    Each replication draws 2n + 1 Rayleigh(alpha) variates via
    x = alpha * sqrt(-ln U), takes the sample median x_med, and emits
    y = exp(-x_med^2).  Deterministic given the seed.
    """
    rng = np.random.default_rng(config.seed)
    m = 2 * int(config.n) + 1
    u = rng.random((int(config.replications), m))
    x = config.alpha * np.sqrt(-np.log1p(-u))
    x_med = np.median(x, axis=1)
    return np.exp(-x_med ** 2)


def quadrature_unit(f, tol=1e-10):
    """Integrate f over (0, 1) with adaptive Gauss-Kronrod panels.

    Nodes never touch the endpoints, so integrable endpoint singularities
    are fine.  Raises ToleranceNotMetError (carrying the estimate and the
    achieved error bound) when the requested tolerance cannot be certified.
    """
    if not (np.isfinite(tol) and tol > 0):
        raise DomainError(f"tol must be positive, got {tol}")
    result = integrate.quad(f, 0.0, 1.0, epsabs=tol, epsrel=tol,
                            limit=200, full_output=True)
    value, abserr = result[0], result[1]
    ier_message = result[3] if len(result) > 3 else None
    if ier_message is not None or abserr > max(tol, tol * abs(value)):
        raise ToleranceNotMetError(
            f"quadrature achieved error bound {abserr:.3e} "
            f"(requested {tol:.3e})"
            + (f": {ier_message}" if ier_message else ""),
            estimate=value,
            error_bound=abserr,
        )
    return value


def finite_diff(f, x, h_rel=1e-6):
    """Centered difference (f(x+h) - f(x-h)) / 2h with h = h_rel*max(|x|, 1)."""
    h = h_rel * max(abs(x), 1.0)
    return (f(x + h) - f(x - h)) / (2.0 * h)
