"""Datasets on the open unit interval: validation, parsing, descriptives.

Ships the classic 20-point Susquehanna River maximum flood level sample
(Dumonceaux & Antle, 1973) as the builtin ``flood`` dataset.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "DataError",
    "Dataset",
    "DescriptiveStats",
    "FLOOD_DATA",
    "BUILTIN_DATASETS",
    "load_dataset",
    "describe",
]

# Maximum flood level of the Susquehanna River at Harrisburg, PA
# (20 observations, proportions of some reference level; ties are real).
FLOOD_DATA = (
    0.26, 0.27, 0.30, 0.32, 0.32, 0.34, 0.38, 0.38, 0.39, 0.40,
    0.41, 0.42, 0.42, 0.42, 0.45, 0.48, 0.49, 0.61, 0.65, 0.74,
)


class DataError(ValueError):
    """Input data could not be parsed or lies outside the open unit interval."""


@dataclass(frozen=True)
class Dataset:
    """A validated, ascending-sorted sample strictly inside (0, 1)."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise DataError("dataset must contain at least one value")
        bad = arr[(~np.isfinite(arr)) | (arr <= 0.0) | (arr >= 1.0)]
        if bad.size:
            raise DataError(
                "values must lie strictly inside (0, 1); offending: "
                + ", ".join(repr(float(v)) for v in bad[:10])
            )
        arr = np.sort(arr)
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def m(self) -> int:
        return int(self.values.size)

    def __len__(self):
        return self.m


BUILTIN_DATASETS = {"flood": FLOOD_DATA}


def _parse_text(text):
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0]
        for col, token in enumerate(stripped.replace(",", " ").split(),
                                    start=1):
            try:
                values.append(float(token))
            except ValueError:
                raise DataError(
                    f"line {lineno}, field {col}: cannot parse {token!r} "
                    "as a number"
                ) from None
    if not values:
        raise DataError("no numeric values found in input")
    return values


def load_dataset(source) -> Dataset:
    """Load a dataset from a builtin name or a delimited text file.

    Files may separate values by newlines, commas or whitespace; ``#``
    starts a comment.  Every value must lie strictly inside (0, 1).
    """
    if isinstance(source, str) and source in BUILTIN_DATASETS:
        return Dataset(np.asarray(BUILTIN_DATASETS[source]))
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DataError(f"cannot read {source!r}: {exc}") from exc
    return Dataset(np.asarray(_parse_text(text)))


@dataclass(frozen=True)
class DescriptiveStats:
    min: float
    mean: float
    std: float
    skewness: float
    kurtosis: float
    p25: float
    p50: float
    p75: float
    max: float

    def as_dict(self):
        return {
            "min": self.min, "mean": self.mean, "std": self.std,
            "skewness": self.skewness, "kurtosis": self.kurtosis,
            "p25": self.p25, "p50": self.p50, "p75": self.p75,
            "max": self.max,
        }


def _percentile(sorted_values, p):
    """Hazen plotting-position percentile: rank p*m + 0.5, linearly
    interpolated between order statistics (the convention spreadsheet-style
    packages use for quartiles of small samples)."""
    m = sorted_values.size
    h = p * m + 0.5
    h = min(max(h, 1.0), float(m))
    lo = int(math.floor(h))
    frac = h - lo
    if lo >= m:
        return float(sorted_values[-1])
    return float(sorted_values[lo - 1]
                 + frac * (sorted_values[lo] - sorted_values[lo - 1]))


def describe(data: Dataset, corrected=True) -> DescriptiveStats:
    """Descriptive statistics of a dataset (m >= 2).

    The standard deviation uses the m - 1 denominator.  With
    ``corrected=True`` (default) skewness and kurtosis are the
    bias-corrected sample estimators; with ``corrected=False`` they are the
    plain standardized moments m^-1 sum(((y - mean)/s_m)^k) with the
    population (m-denominator) s_m.  Kurtosis is non-excess in both cases.
    """
    m = data.m
    if m < 2:
        raise DataError(f"describe requires at least 2 values, got {m}")
    v = data.values
    mean = float(np.mean(v))
    std = float(np.std(v, ddof=1))
    s_pop = float(np.std(v, ddof=0))
    z = (v - mean) / s_pop
    g1 = float(np.mean(z ** 3))
    g2 = float(np.mean(z ** 4))
    if corrected:
        skew = math.sqrt(m * (m - 1.0)) / (m - 2.0) * g1 if m > 2 else g1
        if m > 3:
            kurt = ((m + 1.0) * g2 - 3.0 * (m - 1.0)) * (m - 1.0) \
                / ((m - 2.0) * (m - 3.0)) + 3.0
        else:
            kurt = g2
    else:
        skew = g1
        kurt = g2
    return DescriptiveStats(
        min=float(v[0]),
        mean=mean,
        std=std,
        skewness=skew,
        kurtosis=kurt,
        p25=_percentile(v, 0.25),
        p50=_percentile(v, 0.50),
        p75=_percentile(v, 0.75),
        max=float(v[-1]),
    )
