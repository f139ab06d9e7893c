"""Linear stability, growth-rate fits, saturation detection and sigma scans."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from carlfwm.dynamics import RunConfig, TimeSeries, simulate

log = logging.getLogger(__name__)

GROWTH_WINDOW = (1e-8, 1e-2)
SATURATION_FACTOR = 100.0


@dataclass(frozen=True)
class GrowthFit:
    slope: float
    window: tuple[float, float]
    r2: float
    n_points: int


@dataclass(frozen=True)
class LinearGrowth:
    roots: np.ndarray
    field_rate: float  # max Re(lambda)

    @property
    def intensity_rate(self) -> float:
        return 2.0 * self.field_rate


@dataclass(frozen=True)
class SaturationReport:
    t_sat: float
    a2_max: float
    oscillation: float  # peak-to-trough of the first post-saturation swing; nan if no trough in range
    index: int


class NoSaturation(ValueError):
    pass


def fit_growth_rate(series: TimeSeries, lo: float = GROWTH_WINDOW[0], hi: float = GROWTH_WINDOW[1]) -> GrowthFit:
    """Least-squares slope of ln|a|^2 against t_bar over rows with lo < |a|^2 < hi.

    Only the first contiguous run of rows inside the window is used, so the
    post-saturation oscillation cannot leak back into the fit.
    """
    t = np.asarray(series.t_bar)
    a2 = np.asarray(series.a2)
    inside = (a2 > lo) & (a2 < hi)
    idx = np.flatnonzero(inside)
    if idx.size:
        # first contiguous run
        breaks = np.flatnonzero(np.diff(idx) > 1)
        idx = idx[: breaks[0] + 1] if breaks.size else idx
    if idx.size < 10:
        raise ValueError(f"growth window ({lo:g}, {hi:g}) holds {idx.size} rows; need at least 10")
    x = t[idx]
    y = np.log(a2[idx])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 if ss_tot == 0 else max(0.0, 1.0 - float((resid**2).sum()) / ss_tot)
    return GrowthFit(float(slope), (float(x[0]), float(x[-1])), r2, int(idx.size))


def cubic_coefficients(kappa_bar: float) -> list[complex]:
    """lambda^3 + kappa lambda^2 - i = 0, from linearising about the cold unbunched beam.

    With B = <e^{-i theta}> and P = <p e^{-i theta}>: B' = -i P,
    P' = -a (to first order), a' = B - kappa a; a ~ e^{lambda t} gives
    lambda^2 (lambda + kappa) = i.
    """
    return [1.0, kappa_bar, 0.0, -1j]


def linear_growth_rate(kappa_bar: float) -> LinearGrowth:
    if kappa_bar < 0:
        raise ValueError("kappa_bar must be >= 0")
    coeffs = cubic_coefficients(kappa_bar)
    roots = np.roots(coeffs).astype(complex)
    # a couple of Newton steps to tighten the eigenvalue-based roots
    for _ in range(3):
        f = roots**3 + kappa_bar * roots**2 - 1j
        df = 3 * roots**2 + 2 * kappa_bar * roots
        ok = df != 0
        roots[ok] = roots[ok] - f[ok] / df[ok]
    roots = roots[np.argsort(-roots.real)]
    return LinearGrowth(roots, float(roots.real.max()))


def detect_saturation(series: TimeSeries) -> SaturationReport:
    """First local maximum of |a|^2 after it exceeds 100 |a(0)|^2."""
    a2 = np.asarray(series.a2)
    t = np.asarray(series.t_bar)
    threshold = SATURATION_FACTOR * a2[0]
    above = np.flatnonzero(a2 > threshold)
    if above.size == 0:
        raise NoSaturation("no saturation: |a|^2 never exceeds 100 a0^2")
    i = int(above[0])
    while i + 1 < a2.size and a2[i + 1] >= a2[i]:
        i += 1
    if i + 1 >= a2.size:
        raise NoSaturation("no saturation within the simulated range")
    j = i + 1
    while j + 1 < a2.size and a2[j + 1] <= a2[j]:
        j += 1
    osc = float(a2[i] - a2[j]) if j + 1 < a2.size else math.nan
    return SaturationReport(float(t[i]), float(a2[i]), osc, i)


@dataclass(frozen=True)
class ScanRow:
    sigma_bar: float
    growth_rate: float  # nan when the linear window is never resolved
    t_sat: float  # inf when no peak within the run
    a2_max: float
    saturated: bool


@dataclass(frozen=True)
class ScanResult:
    rows: list[ScanRow]

    @property
    def monotone(self) -> bool:
        """Growth rate non-increasing with sigma (unresolved rates rank lowest)."""
        rates = [(-math.inf if math.isnan(r.growth_rate) else r.growth_rate) for r in self.rows]
        order = np.argsort([r.sigma_bar for r in self.rows], kind="stable")
        rates = [rates[k] for k in order]
        return all(x >= y for x, y in zip(rates, rates[1:]))

    def table(self):
        return [(r.sigma_bar, r.growth_rate, r.t_sat, r.a2_max) for r in self.rows]


def summarize(sigma: float, series: TimeSeries) -> ScanRow:
    try:
        rate = fit_growth_rate(series).slope
    except ValueError:
        rate = math.nan
    try:
        sat = detect_saturation(series)
        return ScanRow(sigma, rate, sat.t_sat, sat.a2_max, True)
    except NoSaturation:
        return ScanRow(sigma, rate, math.inf, float(series.a2.max()), False)


def run_sigmas(base: RunConfig, sigmas, workers: int = 1) -> list[TimeSeries]:
    configs = [base.with_(sigma_bar=float(s)) for s in sigmas]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(simulate, configs))
    return [simulate(c) for c in configs]


def scan_sigma(base: RunConfig, sigmas, workers: int = 1, series: list[TimeSeries] | None = None) -> ScanResult:
    """Growth rate, first-peak time and peak height for each sigma_bar (shared seed).

    Pass ``series`` to summarise runs already made with :func:`run_sigmas`.
    """
    sigmas = [float(s) for s in sigmas]
    if len(sigmas) < 2:
        raise ValueError("scan_sigma needs at least two sigma_bar values")
    if series is None:
        series = run_sigmas(base, sigmas, workers)
    result = ScanResult([summarize(s, ts) for s, ts in zip(sigmas, series)])
    if not result.monotone:
        log.warning("growth rate is not monotone in sigma_bar: %s", result.table())
    return result
