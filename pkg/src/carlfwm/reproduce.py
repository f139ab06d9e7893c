"""Named reproduction workflows: the Cs example numbers and the sigma-bar figure."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from carlfwm.analysis import (
    NoSaturation,
    ScanResult,
    detect_saturation,
    fit_growth_rate,
    linear_growth_rate,
    run_sigmas,
    scan_sigma,
)
from carlfwm.dynamics import RunConfig, TimeSeries, grating_profile, init_quiet_start, integrate, simulate
from carlfwm.params import Derivation, derive_parameters, unscale_intensity, unscale_time
from carlfwm.physical import PhysicalSystem

FIG3_SIGMAS = (0.0, 0.1, 0.5, 1.0)


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    lo: float
    hi: float
    unit: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.lo <= self.value <= self.hi)

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag}  {self.name} = {self.value:.4g} {self.unit}  (band [{self.lo:.4g}, {self.hi:.4g}])".rstrip()


def parameter_checks(d: Derivation) -> list[Check]:
    s = d.scaled
    i1, i2, i3 = (x / 1e4 for x in d.pump_intensities)
    pm = d.phase_matching
    return [
        Check("probe wavelength", d.probe_wavelength * 1e9, 454.0, 456.0, "nm"),
        Check("rho", s.rho, 40.0, 52.0),
        Check("omega_r", s.omega_r, 1.75e5, 1.85e5, "rad/s"),
        Check("kappa_bar", s.kappa_bar, 0.008, 0.015),
        Check("sigma_bar (7 uK)", s.sigma_bar, 0.08, 0.12),
        Check("recoil temperature", d.recoil_temperature * 1e6, 1.3, 1.5, "uK"),
        Check("I_p1", i1, 8.0e3, 9.8e3, "W/cm^2"),
        Check("I_p2", i2, 3.9e6, 4.7e6, "W/cm^2"),
        Check("I_p3", i3, 1.4e6, 1.8e6, "W/cm^2"),
        Check("grating period", pm.grating_period * 1e9, 226.5, 228.5, "nm"),
        Check("conventional FWM suppression", pm.suppression, 1.25e-6, 1.35e-6),
    ]


@dataclass
class CsExampleResult:
    derivation: Derivation
    config: RunConfig
    series: TimeSeries
    t_sat: float
    a2_max: float
    intracavity: float  # W/m^2 at first peak
    transmitted: float  # W/m^2
    t_sat_seconds: float
    dominant_grating_period: float  # m, from the final particle distribution
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def cs_saturation_checks(intracavity, transmitted, t_sat_seconds, dominant_period) -> list[Check]:
    return [
        Check("saturation intracavity intensity", intracavity / 1e4, 1.3e3 / 1.5, 1.3e3 * 1.5, "W/cm^2"),
        Check("saturation transmitted intensity", transmitted / 1e4 * 1e3, 39.0 / 1.5, 39.0 * 1.5, "mW/cm^2"),
        Check("saturation time", t_sat_seconds * 1e6, 1.4, 2.2, "us"),
        Check("simulated grating period", dominant_period * 1e9, 226.5, 228.5, "nm"),
    ]


def run_cs_example(system: PhysicalSystem, config: RunConfig) -> CsExampleResult:
    """Derive parameters, simulate, and unscale the first saturation peak."""
    d = derive_parameters(system)
    series = integrate(init_quiet_start(config), config)
    sat = detect_saturation(series)
    inside, transmitted = unscale_intensity(sat.a2_max, d.scaled)
    t_sec = unscale_time(sat.t_sat, d.scaled)
    grating = grating_profile(series.final_state, d.scaled.probe_wavenumber)
    checks = parameter_checks(d) + cs_saturation_checks(inside, transmitted, t_sec, grating.dominant_period)
    return CsExampleResult(d, config, series, sat.t_sat, sat.a2_max, inside, transmitted, t_sec, grating.dominant_period, checks)


def fig3(base: RunConfig, sigmas=FIG3_SIGMAS, workers: int = 1) -> tuple[list[TimeSeries], ScanResult]:
    """One trajectory per sigma_bar on the shared grid of ``base`` plus the summary scan."""
    series = run_sigmas(base, sigmas, workers)
    return series, scan_sigma(base, sigmas, series=series)


def growth_table(kappas, simulate_base: RunConfig | None = None):
    """Rows of (kappa_bar, roots..., field rate, intensity rate, fitted intensity rate)."""
    rows = []
    for kappa in kappas:
        lin = linear_growth_rate(kappa)
        fitted = math.nan
        if simulate_base is not None:
            ts = simulate(simulate_base.with_(kappa_bar=float(kappa), sigma_bar=0.0))
            fitted = fit_growth_rate(ts).slope
        r = lin.roots
        rows.append(
            (float(kappa), *np.ravel(np.column_stack([r.real, r.imag])), lin.field_rate, lin.intensity_rate, fitted)
        )
    return rows


__all__ = [
    "Check",
    "CsExampleResult",
    "FIG3_SIGMAS",
    "NoSaturation",
    "cs_saturation_checks",
    "fig3",
    "growth_table",
    "parameter_checks",
    "run_cs_example",
]
