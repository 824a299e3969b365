"""Goodness-of-fit statistics from probability integral transforms.

Kolmogorov-Smirnov (with a small-sample corrected asymptotic p-value),
Anderson-Darling and Cramer-von Mises, all computed from the sorted
z_i = F(y_(i)) of a candidate model on a dataset.

Caveat carried in every report: the KS p-value treats the model as fully
specified.  No Lilliefors-style adjustment for fitted parameters is applied,
because the published tables these statistics are checked against use the
plain Kolmogorov computation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .distributions import DistributionModel, cdf
from .specfun import DomainError, kolmogorov_sf

__all__ = [
    "GofReport",
    "ecdf",
    "ks_statistic",
    "ks_pvalue",
    "anderson_darling",
    "cramer_von_mises",
    "gof_report",
]

_Z_CLAMP = 1e-15
_ALPHA = 0.05


@dataclass(frozen=True)
class GofReport:
    ks: float
    ks_p: float
    ad: float
    cvm: float
    decision: str  # "reject" | "fail_to_reject" at the 5% level
    clamped: bool = False

    def as_dict(self):
        return {
            "ks": self.ks, "ks_p": self.ks_p, "ad": self.ad,
            "cvm": self.cvm, "decision": self.decision,
            "clamped": self.clamped,
        }


class _StepFunction:
    """Right-continuous empirical CDF: query y -> fraction of sample <= y."""

    def __init__(self, sorted_values):
        self._values = sorted_values
        self._m = sorted_values.size

    def __call__(self, y):
        arr = np.asarray(y, dtype=float)
        out = np.searchsorted(self._values, arr, side="right") / self._m
        return float(out) if np.ndim(y) == 0 else out


def ecdf(data: Dataset) -> _StepFunction:
    """Empirical CDF of the sample; ties accumulate."""
    return _StepFunction(data.values)


def _pit(data: Dataset, model: DistributionModel):
    """Sorted probability integral transforms z_i = F(y_(i))."""
    return cdf(model, data.values)


def ks_statistic(data: Dataset, model: DistributionModel) -> float:
    """D = max_i max(i/m - z_i, z_i - (i-1)/m) on the sorted sample."""
    z = _pit(data, model)
    m = data.m
    i = np.arange(1, m + 1)
    return float(max(np.max(i / m - z), np.max(z - (i - 1) / m)))


def ks_pvalue(d, m) -> float:
    """Asymptotic two-sided KS p-value with the small-sample argument
    correction lambda = (sqrt(m) + 0.12 + 0.11/sqrt(m)) * d."""
    if not (0.0 <= d <= 1.0):
        raise DomainError(f"ks_pvalue requires 0 <= d <= 1, got {d}")
    if m < 1:
        raise DomainError(f"ks_pvalue requires m >= 1, got {m}")
    root = np.sqrt(m)
    return kolmogorov_sf((root + 0.12 + 0.11 / root) * d)


def _clamped_pit(data, model):
    z = _pit(data, model)
    clamped = bool(np.any(z < _Z_CLAMP) or np.any(z > 1.0 - _Z_CLAMP))
    return np.clip(z, _Z_CLAMP, 1.0 - _Z_CLAMP), clamped


def anderson_darling(data: Dataset, model: DistributionModel) -> float:
    """A^2 = -m - (1/m) sum (2i-1)[ln z_i + ln(1 - z_{m+1-i})]."""
    z, _ = _clamped_pit(data, model)
    m = data.m
    i = np.arange(1, m + 1)
    return float(-m - np.mean((2 * i - 1)
                              * (np.log(z) + np.log1p(-z[::-1]))))


def cramer_von_mises(data: Dataset, model: DistributionModel) -> float:
    """W^2 = 1/(12m) + sum (z_i - (2i-1)/(2m))^2."""
    z, _ = _clamped_pit(data, model)
    m = data.m
    i = np.arange(1, m + 1)
    return float(1.0 / (12.0 * m) + np.sum((z - (2 * i - 1) / (2.0 * m)) ** 2))


def gof_report(data: Dataset, model: DistributionModel) -> GofReport:
    """All three statistics plus the 5%-level KS decision."""
    d = ks_statistic(data, model)
    p = ks_pvalue(d, data.m)
    _, clamped = _clamped_pit(data, model)
    return GofReport(
        ks=d,
        ks_p=p,
        ad=anderson_darling(data, model),
        cvm=cramer_von_mises(data, model),
        decision="reject" if p < _ALPHA else "fail_to_reject",
        clamped=clamped,
    )
