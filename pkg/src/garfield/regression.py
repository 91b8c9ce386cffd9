"""Trend-model fitting and best-fit selection for indicator time series.

Four model families are fitted by ordinary least squares against a 1-based
year index X:

* linear        Y = a*X + b
* logarithmic   Y = a*ln(X) + b
* polynomial    Y = a*X^d + ... (degree 2 and up)
* exponential   Y = a*exp(b*X), fitted by log-linearisation

Solves go through a column-equilibrated SVD least-squares (never the normal
equations). The exponential family reports its coefficient of determination
in log space, the space it is fitted in (spreadsheet-trendline behaviour);
the original-space value is kept alongside. Selection picks the family with
the highest reported R-squared, breaking near-ties toward fewer
coefficients, and declares the series irregular when nothing reaches the
acceptance threshold.

The estimator classes follow the scikit-learn protocol (``fit`` /
``predict`` / ``get_params``) so they compose with the wider ecosystem; the
module-level ``fit_*`` functions are the plain functional surface over the
same arithmetic.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_is_fitted

from .indicators import gr_yearly
from .model import AnalysisConfig, IndicatorSeries, JournalSeries
from .validation import as_vector, check_xy, require_positive

#: R-squared differences at or below this are ties (resolved by parsimony).
TIE_EPSILON = 1e-9

ORIGINAL_SPACE = "original"
LOG_SPACE = "log"


@dataclass(frozen=True)
class ModelFamily:
    """A candidate equation form: its kind and, for polynomials, degree."""

    kind: str
    degree: Optional[int] = None

    @property
    def label(self) -> str:
        return f"polynomial({self.degree})" if self.kind == "polynomial" else self.kind

    @property
    def n_coefficients(self) -> int:
        if self.kind == "polynomial":
            return self.degree + 1
        return 2

    @property
    def equation(self) -> str:
        """Equation template with coefficients named in storage order."""
        if self.kind == "linear":
            return "Y = a*X + b"
        if self.kind == "logarithmic":
            return "Y = a*ln(X) + b"
        if self.kind == "exponential":
            return "Y = a*exp(b*X)"
        letters = string.ascii_lowercase
        terms = []
        for i, power in enumerate(range(self.degree, -1, -1)):
            coef = letters[i]
            if power == 0:
                terms.append(coef)
            elif power == 1:
                terms.append(f"{coef}*X")
            else:
                terms.append(f"{coef}*X^{power}")
        return "Y = " + " + ".join(terms)


LINEAR = ModelFamily("linear")
LOGARITHMIC = ModelFamily("logarithmic")
EXPONENTIAL = ModelFamily("exponential")


def polynomial_family(degree: int) -> ModelFamily:
    if degree < 2:
        raise ValueError(f"polynomial family starts at degree 2, got {degree}")
    return ModelFamily("polynomial", degree)


@dataclass(frozen=True)
class FitResult:
    """A fitted family: coefficients, goodness of fit, and residuals.

    ``coefficients`` are ordered (slope, intercept) for the linear and
    logarithmic families, (a, b) for the exponential, and descending powers
    for polynomials. ``residuals`` live in the fitting space (log space for
    the exponential family), matching ``r_squared_space``;
    ``r_squared_original`` is always the original-space value.
    """

    family: ModelFamily
    coefficients: tuple[float, ...]
    r_squared: float
    r_squared_space: str
    residuals: tuple[float, ...]
    r_squared_original: float

    def predict(self, x) -> np.ndarray:
        """Evaluate the fitted model at *x* in the original space."""
        xv = np.asarray(x, dtype=float)
        c = self.coefficients
        if self.family.kind == "linear":
            return c[0] * xv + c[1]
        if self.family.kind == "logarithmic":
            return c[0] * np.log(xv) + c[1]
        if self.family.kind == "exponential":
            return c[0] * np.exp(c[1] * xv)
        return np.polyval(c, xv)


@dataclass(frozen=True)
class BestFitVerdict:
    """Either the selected fit or an irregular marker with the best R²."""

    journal_id: str
    threshold: float
    fit: Optional[FitResult]
    best_rejected_r_squared: Optional[float]
    candidates: tuple[FitResult, ...]

    @property
    def irregular(self) -> bool:
        return self.fit is None


def _ols(design: np.ndarray, target: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Least squares with column equilibration; returns (coef, residuals)."""
    n, p = design.shape
    if n < p + 1:
        raise ValueError(f"need at least {p + 1} points to fit {p} coefficients, got {n}")
    scale = np.linalg.norm(design, axis=0)
    scale[scale == 0] = 1.0
    coef, _, rank, _ = np.linalg.lstsq(design / scale, target, rcond=None)
    if rank < p:
        raise ValueError("rank-deficient design matrix")
    coef = coef / scale
    return coef, target - design @ coef


def _as_floats(values) -> tuple[float, ...]:
    return tuple(float(v) for v in values)


def _r_squared(target: np.ndarray, residuals: np.ndarray) -> float:
    ss_res = float(residuals @ residuals)
    ss_tot = float(np.sum((target - target.mean()) ** 2))
    if ss_tot == 0.0:
        # constant target: perfect if the intercept absorbed it
        return 1.0 if ss_res <= 1e-12 * max(1.0, float(target @ target)) else 0.0
    return 1.0 - ss_res / ss_tot


def fit_linear(x, y) -> FitResult:
    """OLS line Y = a*X + b; coefficients (slope, intercept)."""
    xv, yv = check_xy(x, y)
    design = np.column_stack([xv, np.ones_like(xv)])
    coef, residuals = _ols(design, yv)
    r2 = _r_squared(yv, residuals)
    return FitResult(LINEAR, _as_floats(coef), r2, ORIGINAL_SPACE, _as_floats(residuals), r2)


def fit_logarithmic(x, y) -> FitResult:
    """OLS of Y on ln(X) with intercept; requires every X > 0."""
    xv, yv = check_xy(x, y)
    require_positive(xv, "x")
    design = np.column_stack([np.log(xv), np.ones_like(xv)])
    coef, residuals = _ols(design, yv)
    r2 = _r_squared(yv, residuals)
    return FitResult(LOGARITHMIC, _as_floats(coef), r2, ORIGINAL_SPACE, _as_floats(residuals), r2)


def fit_polynomial(x, y, degree: int) -> FitResult:
    """OLS polynomial of the given degree; coefficients in descending powers."""
    family = polynomial_family(degree)
    xv, yv = check_xy(x, y)
    design = np.vander(xv, degree + 1)
    coef, residuals = _ols(design, yv)
    r2 = _r_squared(yv, residuals)
    return FitResult(family, _as_floats(coef), r2, ORIGINAL_SPACE, _as_floats(residuals), r2)


def fit_exponential(x, y) -> FitResult:
    """Log-linearised fit of Y = a*exp(b*X); requires every Y > 0.

    The reported R² is computed in log space, where the least-squares
    problem is actually solved; the original-space R² is retained in
    ``r_squared_original``.
    """
    xv, yv = check_xy(x, y)
    require_positive(yv, "y")
    log_y = np.log(yv)
    design = np.column_stack([xv, np.ones_like(xv)])
    coef, log_residuals = _ols(design, log_y)
    a, b = float(np.exp(coef[1])), float(coef[0])
    r2_log = _r_squared(log_y, log_residuals)
    r2_orig = _r_squared(yv, yv - a * np.exp(b * xv))
    return FitResult(EXPONENTIAL, (a, b), r2_log, LOG_SPACE, _as_floats(log_residuals), r2_orig)


def year_index(series: Union[JournalSeries, IndicatorSeries],
               config: AnalysisConfig) -> np.ndarray:
    """Ordered X values for fitting: origin + (year - first year).

    The default origin of 1 maps a 2009-2020 window to X = 1..12, the only
    encoding under which the bundled study's fit coefficients reproduce.
    """
    years = series.years
    if not years:
        raise ValueError("series has no defined years")
    first = years[0]
    return np.array([config.year_index_origin + (y - first) for y in years], dtype=float)


class _TrendEstimator(RegressorMixin, BaseEstimator):
    """Shared scikit-learn plumbing for the single-family estimators."""

    def _fit_result(self, x: np.ndarray, y: np.ndarray) -> FitResult:
        raise NotImplementedError

    def fit(self, X, y):
        self.result_ = self._fit_result(X, y)
        self.coefficients_ = np.asarray(self.result_.coefficients)
        self.r_squared_ = self.result_.r_squared
        return self

    def predict(self, X):
        check_is_fitted(self, "result_")
        return self.result_.predict(as_vector(X, "X"))


class LinearTrend(_TrendEstimator):
    """Straight-line trend Y = a*X + b."""

    def _fit_result(self, x, y):
        return fit_linear(x, y)


class LogarithmicTrend(_TrendEstimator):
    """Logarithmic trend Y = a*ln(X) + b."""

    def _fit_result(self, x, y):
        return fit_logarithmic(x, y)


class PolynomialTrend(_TrendEstimator):
    """Polynomial trend of a fixed degree (2 and up)."""

    def __init__(self, degree: int = 2):
        self.degree = degree

    def _fit_result(self, x, y):
        return fit_polynomial(x, y, self.degree)


class ExponentialTrend(_TrendEstimator):
    """Exponential trend Y = a*exp(b*X) fitted by log-linearisation.

    ``r_squared_`` is the log-space value; ``score`` (from the scikit-learn
    mixin) still evaluates original-space predictions.
    """

    def _fit_result(self, x, y):
        return fit_exponential(x, y)


def _prefer(current: FitResult, challenger: FitResult) -> FitResult:
    """Higher R² wins; near-ties go to the family with fewer coefficients."""
    if abs(challenger.r_squared - current.r_squared) <= TIE_EPSILON:
        if len(challenger.coefficients) < len(current.coefficients):
            return challenger
        return current
    return challenger if challenger.r_squared > current.r_squared else current


class TrendSelector(RegressorMixin, BaseEstimator):
    """Fit every eligible family and keep the best one.

    Parameters
    ----------
    fit_threshold : float
        Minimum acceptable R²; below it the series is declared irregular.
    max_poly_degree : int
        Highest polynomial degree tried (degree-2 upward; the linear family
        covers degree 1).

    Attributes
    ----------
    candidates_ : tuple of FitResult
        Every family that could be fitted, in canonical order.
    best_result_ : FitResult or None
        The winning fit, or None when the series is irregular.
    best_rejected_r_squared_ : float or None
        The best R² seen when nothing reached the threshold.
    """

    def __init__(self, fit_threshold: float = 0.85, max_poly_degree: int = 4):
        self.fit_threshold = fit_threshold
        self.max_poly_degree = max_poly_degree

    def fit(self, X, y):
        if not 0.0 <= self.fit_threshold <= 1.0:
            raise ValueError(f"fit_threshold must lie in [0, 1], got {self.fit_threshold}")
        builders = [fit_linear, fit_logarithmic]
        builders += [lambda x, yv, d=d: fit_polynomial(x, yv, d)
                     for d in range(2, self.max_poly_degree + 1)]
        builders.append(fit_exponential)

        candidates: list[FitResult] = []
        for build in builders:
            try:
                candidates.append(build(X, y))
            except ValueError:
                continue  # ineligible family (domain or size); selection goes on
        if not candidates:
            raise ValueError("no model family could be fitted to this series")

        best = candidates[0]
        for challenger in candidates[1:]:
            best = _prefer(best, challenger)

        self.candidates_ = tuple(candidates)
        if best.r_squared < self.fit_threshold:
            self.best_result_ = None
            self.best_rejected_r_squared_ = best.r_squared
        else:
            self.best_result_ = best
            self.best_rejected_r_squared_ = None
        return self

    def predict(self, X):
        check_is_fitted(self, "candidates_")
        if self.best_result_ is None:
            raise ValueError("series is irregular: no accepted best-fit model")
        return self.best_result_.predict(as_vector(X, "X"))


def select_best_fit(series: Union[JournalSeries, IndicatorSeries],
                    config: AnalysisConfig) -> BestFitVerdict:
    """Pick the best-fit family for a series, or declare it irregular.

    A :class:`~garfield.model.JournalSeries` is fitted on its yearly
    Garfield Ratio. Families that cannot be fitted (non-positive values for
    the exponential, too few points for a degree) simply drop out of the
    candidate set.
    """
    if isinstance(series, JournalSeries):
        series = gr_yearly(series)
    x = year_index(series, config)
    y = np.asarray(series.series_values, dtype=float)
    selector = TrendSelector(config.fit_threshold, config.max_poly_degree).fit(x, y)
    return BestFitVerdict(
        journal_id=series.journal_id,
        threshold=config.fit_threshold,
        fit=selector.best_result_,
        best_rejected_r_squared=selector.best_rejected_r_squared_,
        candidates=selector.candidates_,
    )
