"""Maximum-likelihood fitting with standard errors and information criteria.

Fitting runs a Nelder-Mead simplex on an unconstrained log reparameterization,
started from the best point of a per-family multistart grid.  Uncertainty is
reported two ways, both labeled:

* ``covariance``/``se`` - from the inverse finite-difference Hessian of the
  negative log-likelihood (observed information), scaled so that
  ``paper_var = m * covariance`` equals that inverse Hessian.
* ``score_covariance``/``score_se`` - same convention but built from the
  inverse outer product of per-observation score vectors.

The two agree asymptotically but differ at small m; published variance
tables for these families mix the conventions, so both are kept.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .data import Dataset
from .distributions import (
    DistributionModel,
    ParameterError,
    family_param_names,
    log_pdf,
    make_model,
)
from .specfun import DomainError

__all__ = [
    "SingularHessianError",
    "OptimizerConfig",
    "FitResult",
    "negative_log_likelihood",
    "fit_mle",
    "observed_information",
    "score_outer_product",
    "information_criteria",
    "closed_form_unit_lindley_mle",
]

_V2_SHIFT = 1e-9


class SingularHessianError(RuntimeError):
    """The numerical observed information is not positive definite."""


@dataclass(frozen=True)
class OptimizerConfig:
    """Knobs for fit_mle; any field left at None uses the per-family default."""

    multistart: tuple | None = None
    fatol: float = 1e-10
    xatol: float = 1e-8
    maxfev: int = 20000
    hessian_rel_step: float = 1e-4

    def __post_init__(self):
        if not (self.fatol > 0 and self.xatol > 0 and self.maxfev >= 1
                and self.hessian_rel_step > 0):
            raise DomainError("OptimizerConfig fields must be positive")


@dataclass(frozen=True)
class FitResult:
    model: DistributionModel
    loglik: float
    k: int
    m: int
    aic: float
    caic: float
    bic: float
    covariance: np.ndarray | None
    se: np.ndarray | None
    paper_var: np.ndarray | None
    score_covariance: np.ndarray | None
    score_se: np.ndarray | None
    converged: bool
    evaluations: int
    start_used: tuple
    notes: tuple = ()


def negative_log_likelihood(family, params, data: Dataset) -> float:
    """-sum(log pdf), with +inf standing in for infeasible parameters or a
    zero-density observation (so derivative-free optimizers can just rank)."""
    try:
        model = make_model(family, params)
    except ParameterError:
        return math.inf
    values = log_pdf(model, data.values)
    if not np.all(np.isfinite(values)):
        return math.inf
    return float(-np.sum(values))


def information_criteria(loglik, k, m):
    """(AIC, CAIC, BIC) = (2k - 2LL, AIC + 2k(k+1)/(m-k-1), k ln m - 2LL)."""
    if m - k - 1 <= 0:
        raise DomainError(
            f"information criteria need m > k + 1, got m={m}, k={k}"
        )
    aic = 2.0 * k - 2.0 * loglik
    caic = aic + 2.0 * k * (k + 1.0) / (m - k - 1.0)
    bic = k * math.log(m) - 2.0 * loglik
    return aic, caic, bic


def closed_form_unit_lindley_mle(data: Dataset) -> float:
    """Exact unit-Lindley MLE for theta (used as a start and a test oracle)."""
    s = float(np.mean(data.values / (1.0 - data.values)))
    return (-(s - 1.0) + math.sqrt((s - 1.0) ** 2 + 8.0 * s)) / (2.0 * s)


# --- unconstrained reparameterization ------------------------------------

def _to_unconstrained(family, values):
    values = np.asarray(values, dtype=float)
    if family == "gombur_v2":
        return np.array([math.log(values[0] - 1.0 + _V2_SHIFT),
                         math.log(values[1])])
    return np.log(values)


def _from_unconstrained(family, theta):
    theta = np.asarray(theta, dtype=float)
    if family == "gombur_v2":
        n = max(1.0, 1.0 - _V2_SHIFT + math.exp(theta[0]))
        return np.array([n, math.exp(theta[1])])
    return np.exp(theta)


def _beta_moment_start(data: Dataset):
    mean = float(np.mean(data.values))
    var = float(np.var(data.values, ddof=1))
    scale = mean * (1.0 - mean) / var - 1.0
    if scale <= 0:
        return (1.0, 1.0)
    return (max(mean * scale, 1e-3), max((1.0 - mean) * scale, 1e-3))


_GOMBUR_N_GRID = (0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0)
_GOMBUR_ALPHA_GRID = (0.25, 0.5, 1.0, 2.0, 4.0)
_COARSE = (0.5, 2.0, 8.0)


def _default_starts(family, data: Dataset):
    if family == "gombur_v1":
        return tuple((n, a) for n in _GOMBUR_N_GRID
                     for a in _GOMBUR_ALPHA_GRID)
    if family == "gombur_v2":
        return tuple((2.0 * n + 1.0, a) for n in _GOMBUR_N_GRID
                     for a in _GOMBUR_ALPHA_GRID)
    if family == "mbur":
        return tuple((a,) for a in _GOMBUR_ALPHA_GRID)
    if family in ("beta", "kumaraswamy"):
        moment = _beta_moment_start(data)
        return (moment,) + tuple((a, b) for a in _COARSE for b in _COARSE)
    if family == "topp_leone":
        return ((1.0,),) + tuple((t,) for t in _COARSE)
    if family == "unit_lindley":
        return ((closed_form_unit_lindley_mle(data),),) \
            + tuple((t,) for t in _COARSE)
    raise ParameterError(f"unknown family {family!r}")


def _hessian(fn, x, rel_step):
    """Symmetrized central finite-difference Hessian."""
    x = np.asarray(x, dtype=float)
    k = x.size
    h = rel_step * np.maximum(np.abs(x), 1e-3)
    hess = np.zeros((k, k))
    f0 = fn(x)
    for i in range(k):
        ei = np.zeros(k)
        ei[i] = h[i]
        hess[i, i] = (fn(x + ei) - 2.0 * f0 + fn(x - ei)) / h[i] ** 2
        for j in range(i + 1, k):
            ej = np.zeros(k)
            ej[j] = h[j]
            cross = (fn(x + ei + ej) - fn(x + ei - ej)
                     - fn(x - ei + ej) + fn(x - ei - ej)) / (4.0 * h[i] * h[j])
            hess[i, j] = hess[j, i] = cross
    return 0.5 * (hess + hess.T)


def observed_information(family, params, data: Dataset, rel_step=1e-4):
    """Hessian of the negative log-likelihood at `params` (original
    coordinates), symmetrized.  Raises SingularHessianError when the result
    is not positive definite."""
    hess = _hessian(
        lambda p: negative_log_likelihood(family, p, data),
        params, rel_step,
    )
    if not np.all(np.isfinite(hess)):
        raise SingularHessianError(
            f"observed information for {family} is not finite at {params}"
        )
    eigvals = np.linalg.eigvalsh(hess)
    if np.any(eigvals <= 0):
        raise SingularHessianError(
            f"observed information for {family} is not positive definite "
            f"(eigenvalues {eigvals})"
        )
    return hess


def score_outer_product(family, params, data: Dataset, rel_step=1e-6):
    """Sum over observations of score (x) score, with per-observation scores
    from centered differences of the log density."""
    params = np.asarray(params, dtype=float)
    k = params.size
    scores = np.zeros((data.m, k))
    model_cache = {}

    def lp(p):
        key = tuple(p)
        if key not in model_cache:
            model_cache[key] = log_pdf(make_model(family, p), data.values)
        return model_cache[key]

    for j in range(k):
        h = rel_step * max(abs(params[j]), 1e-3)
        up = params.copy()
        up[j] += h
        dn = params.copy()
        dn[j] -= h
        scores[:, j] = (lp(up) - lp(dn)) / (2.0 * h)
    return scores.T @ scores


def _invert_spd(matrix, label):
    eigvals = np.linalg.eigvalsh(matrix)
    if not np.all(np.isfinite(matrix)) or np.any(eigvals <= 0):
        raise SingularHessianError(f"{label} is not positive definite")
    return np.linalg.inv(matrix)


def fit_mle(family, data: Dataset, config: OptimizerConfig | None = None) -> FitResult:
    """Fit one family by maximum likelihood.

    Never raises on non-convergence (reported via ``converged``); degenerate
    data with m < k + 2 is an error.  Deterministic: identical inputs give
    identical output.
    """
    cfg = config or OptimizerConfig()
    k = len(family_param_names(family))
    if data.m < k + 2:
        raise DomainError(
            f"fitting {family} needs at least {k + 2} observations, "
            f"got {data.m}"
        )

    starts = cfg.multistart or _default_starts(family, data)
    ranked = sorted(
        ((negative_log_likelihood(family, s, data), tuple(s)) for s in starts),
        key=lambda t: (t[0], t[1]),
    )
    evaluations = len(ranked)
    best_nll, best_start = ranked[0]
    if not math.isfinite(best_nll):
        raise DomainError(
            f"no feasible starting point for {family} on this dataset"
        )

    def objective(theta):
        return negative_log_likelihood(
            family, _from_unconstrained(family, theta), data
        )

    theta0 = _to_unconstrained(family, best_start)
    options = {"fatol": cfg.fatol, "xatol": cfg.xatol, "maxfev": cfg.maxfev}
    res = optimize.minimize(objective, theta0, method="Nelder-Mead",
                            options=options)
    evaluations += res.nfev
    # restart once from the incumbent; cheap insurance against a collapsed
    # simplex
    res2 = optimize.minimize(objective, res.x, method="Nelder-Mead",
                             options=options)
    evaluations += res2.nfev
    final = res2 if res2.fun <= res.fun else res

    params_hat = _from_unconstrained(family, final.x)
    model = make_model(family, params_hat)
    loglik = -float(final.fun)
    aic, caic, bic = information_criteria(loglik, k, data.m)

    notes = []
    covariance = se = paper_var = None
    try:
        info = observed_information(family, params_hat, data,
                                    rel_step=cfg.hessian_rel_step)
        paper_var = _invert_spd(info, "observed information")
        covariance = paper_var / data.m
        se = np.sqrt(np.diag(covariance))
    except SingularHessianError as exc:
        notes.append(f"hessian: {exc}")

    score_covariance = score_se = None
    try:
        opg = score_outer_product(family, params_hat, data)
        score_covariance = _invert_spd(opg, "score outer product") / data.m
        score_se = np.sqrt(np.diag(score_covariance))
    except SingularHessianError as exc:
        notes.append(f"score: {exc}")

    return FitResult(
        model=model,
        loglik=loglik,
        k=k,
        m=data.m,
        aic=aic,
        caic=caic,
        bic=bic,
        covariance=covariance,
        se=se,
        paper_var=paper_var,
        score_covariance=score_covariance,
        score_se=score_se,
        converged=bool(final.success),
        evaluations=int(evaluations),
        start_used=tuple(float(v) for v in best_start),
        notes=tuple(notes),
    )
