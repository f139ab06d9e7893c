"""Maps the physical experiment onto the dimensionless collective-recoil model.

Scaled variables::

    p_bar = p / (hbar k rho)        t_bar = omega_r rho t
    a_bar = -i sqrt(2 eps0 / (n hbar omega rho)) A
    rho   = (mu30^2 omega n s30^2 / (2 eps0 hbar omega_r^2))^(1/3)
    kappa_bar = kappa / (omega_r rho)     omega_r = 2 hbar k^2 / m

with k, omega the probe wavenumber and frequency and n the atomic density
referred to the cavity volume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from carlfwm.constants import C, EPS0, HBAR, KB
from carlfwm.physical import PhysicalSystem


def _check_positive(**values: float) -> None:
    for name, v in values.items():
        if not v > 0:
            raise ValueError(f"{name} must be positive, got {v!r}")


def dipole_from_einstein_a(einstein_a: float, omega: float) -> float:
    """Transition dipole [C m] from spontaneous rate A [1/s] at angular frequency omega.

    Two-level relation A = omega^3 mu^2 / (3 pi eps0 hbar c^3).
    """
    if einstein_a < 0:
        raise ValueError(f"einstein_a must be >= 0, got {einstein_a!r}")
    _check_positive(omega=omega)
    return math.sqrt(3.0 * math.pi * EPS0 * HBAR * C**3 * einstein_a / omega**3)


def coherence_s30(
    rabi1: float, rabi2: float, rabi3: float, d10: float, d20: float, d30: float
) -> float:
    """Three-photon ground-state coherence in the far-detuned limit.

    The detunings are measured from the ground state:
    d20 = d10 + d21 and d30 = d20 + d32.
    """
    if d10 == 0 or d20 == 0 or d30 == 0:
        raise ValueError("detunings must be nonzero")
    return -(rabi1 * rabi2 * rabi3) / (d10 * d20 * d30)


def rabi_frequency(dipole: float, amplitude: float) -> float:
    """Omega = mu A / hbar for a field of complex-envelope amplitude A [V/m]."""
    return dipole * amplitude / HBAR


def field_amplitude(rabi: float, dipole: float) -> float:
    _check_positive(dipole=dipole)
    return HBAR * rabi / dipole


def adiabatic_coherences(amplitudes, dipoles, detunings) -> tuple[float, float, float]:
    """(s10, s21, s32) = mu_i A_pi / (hbar Delta_i) for the three pump transitions."""
    out = []
    for amp, mu, delta in zip(amplitudes, dipoles, detunings, strict=True):
        if delta == 0:
            raise ValueError("detunings must be nonzero")
        out.append(rabi_frequency(mu, amp) / delta)
    return tuple(out)


def recoil_frequency(k: float, mass: float) -> float:
    _check_positive(k=k, mass=mass)
    return 2.0 * HBAR * k**2 / mass


def recoil_temperature(omega_r: float) -> float:
    return HBAR * omega_r / KB


def rho_parameter(mu30: float, omega: float, n: float, s30: float, omega_r: float) -> float:
    _check_positive(mu30=mu30, omega=omega, n=n, omega_r=omega_r)
    return float(np.cbrt(mu30**2 * omega * n * s30**2 / (2.0 * EPS0 * HBAR * omega_r**2)))


def cavity_linewidth(
    length: float, reflectivity: float, omega_r: float | None = None, rho: float | None = None
) -> tuple[float, float | None]:
    """kappa = c (1 - R) / L and, when omega_r and rho are given, kappa / (omega_r rho)."""
    _check_positive(length=length)
    if not 0.0 < reflectivity < 1.0:
        raise ValueError(f"reflectivity must lie in (0, 1), got {reflectivity!r}")
    kappa = C * (1.0 - reflectivity) / length
    if omega_r is None or rho is None:
        return kappa, None
    return kappa, kappa / (omega_r * rho)


def sigma_bar(temperature: float, mass: float, k: float, rho: float) -> float:
    """Thermal momentum half-width sqrt(2 m kB T) in units of hbar k rho."""
    if temperature < 0:
        raise ValueError(f"temperature must be >= 0, got {temperature!r}")
    _check_positive(mass=mass, k=k, rho=rho)
    return math.sqrt(2.0 * mass * KB * temperature) / (HBAR * k * rho)


def rabi_to_intensity(rabi: float, dipole: float) -> float:
    """Intensity [W/m^2] of a field with Rabi frequency ``rabi`` on a dipole ``dipole``.

    The real field is A e^{i...} + c.c., so the peak field is 2|A| and
    I = 2 eps0 c |A|^2.
    """
    amp = field_amplitude(rabi, dipole)
    return 2.0 * EPS0 * C * amp**2


@dataclass(frozen=True)
class ScaledParameters:
    """Dimensionless model inputs plus the factors that undo the scaling."""

    rho: float
    kappa_bar: float
    sigma_bar: float
    omega_r: float
    s30: float
    cavity_density: float
    probe_wavenumber: float
    mirror_transmission: float
    intensity_unit: float  # W/m^2 per unit |a_bar|^2
    time_unit: float  # s per unit t_bar

    def __post_init__(self):
        if not (self.rho > 0 and self.omega_r > 0 and self.intensity_unit > 0):
            raise ValueError("rho, omega_r and intensity_unit must be positive")
        if self.kappa_bar < 0 or self.sigma_bar < 0:
            raise ValueError("kappa_bar and sigma_bar must be >= 0")

    @property
    def probe_omega(self) -> float:
        return C * self.probe_wavenumber

    @property
    def momentum_unit(self) -> float:
        return HBAR * self.probe_wavenumber * self.rho


def intensity_unit(n: float, omega: float, rho: float) -> float:
    """Intracavity intensity of |a_bar|^2 = 1: 2 eps0 c |A|^2 = c n hbar omega rho."""
    return C * n * HBAR * omega * rho


def unscale_intensity(a2: float, params: ScaledParameters) -> tuple[float, float]:
    """(intracavity, transmitted) intensity in W/m^2 for scaled intensity |a_bar|^2."""
    if a2 < 0:
        raise ValueError("|a_bar|^2 must be >= 0")
    inside = params.intensity_unit * a2
    return inside, params.mirror_transmission * inside


def unscale_time(t_bar, params: ScaledParameters):
    return t_bar * params.time_unit


def scale_time(t, params: ScaledParameters):
    return t / params.time_unit


@dataclass(frozen=True)
class PhaseMatching:
    delta_k: float
    coherence_length: float
    suppression: float
    grating_period: float


def coherence_length(pump_wavenumbers, probe_wavenumber: float, sample_length: float | None = None) -> PhaseMatching:
    """Phase mismatch of conventional four-wave mixing in a 1D geometry.

    Wavenumbers are signed along the pump axis, so a counter-propagating probe
    has ``probe_wavenumber < 0``. ``suppression`` is min(1, (L_c/L)^2) and is
    1 when no sample length is given.
    """
    delta_k = float(sum(pump_wavenumbers)) - probe_wavenumber
    lc = math.inf if delta_k == 0 else 2.0 * math.pi / abs(delta_k)
    if sample_length is None or math.isinf(lc):
        suppression = 1.0
    else:
        _check_positive(sample_length=sample_length)
        suppression = min(1.0, (lc / sample_length) ** 2)
    grating = 2.0 * math.pi / (2.0 * abs(probe_wavenumber))
    return PhaseMatching(delta_k, lc, suppression, grating)


@dataclass(frozen=True)
class Derivation:
    """Every intermediate of the physical -> scaled mapping, for reporting."""

    scaled: ScaledParameters
    dipoles: dict[str, float]
    rabi: tuple[float, float, float]
    detunings: tuple[float, float, float]  # Delta_10, Delta_20, Delta_30
    coherences: tuple[float, float, float]  # s10, s21, s32
    pump_intensities: tuple[float, float, float]  # W/m^2
    kappa: float
    recoil_temperature: float
    probe_wavelength: float
    phase_matching: PhaseMatching

    def as_dict(self) -> dict[str, float]:
        s = self.scaled
        d = {
            "probe_wavelength_m": self.probe_wavelength,
            "probe_wavenumber_per_m": s.probe_wavenumber,
            "probe_omega_rad_per_s": s.probe_omega,
        }
        for label, mu in self.dipoles.items():
            d[f"mu_{label.replace('-', '')}_C_m"] = mu
        for i, om in enumerate(self.rabi, 1):
            d[f"rabi_p{i}_rad_per_s"] = om
        for name, v in zip(("delta_10", "delta_20", "delta_30"), self.detunings):
            d[f"{name}_rad_per_s"] = v
        for name, v in zip(("s10", "s21", "s32"), self.coherences):
            d[name] = v
        d["s30"] = s.s30
        for i, v in enumerate(self.pump_intensities, 1):
            d[f"intensity_p{i}_W_per_cm2"] = v / 1e4
        d.update(
            {
                "cavity_density_per_m3": s.cavity_density,
                "omega_r_rad_per_s": s.omega_r,
                "recoil_temperature_K": self.recoil_temperature,
                "rho": s.rho,
                "kappa_per_s": self.kappa,
                "kappa_bar": s.kappa_bar,
                "sigma_bar": s.sigma_bar,
                "time_unit_s": s.time_unit,
                "intensity_unit_W_per_cm2": s.intensity_unit / 1e4,
                "mirror_transmission": s.mirror_transmission,
                "phase_mismatch_per_m": self.phase_matching.delta_k,
                "coherence_length_m": self.phase_matching.coherence_length,
                "conventional_fwm_suppression": self.phase_matching.suppression,
                "grating_period_m": self.phase_matching.grating_period,
            }
        )
        return d


def derive_parameters(system: PhysicalSystem) -> Derivation:
    species = system.species
    dipoles = {}
    for t in species.transitions:
        dipoles[t.label] = t.dipole_moment if t.dipole_moment is not None else dipole_from_einstein_a(t.einstein_a, t.omega)

    pump_labels = ("1-0", "2-1", "3-2")
    rabi = tuple(p.rabi_frequency for p in system.pumps)
    d10, d20, d30 = system.detunings
    s30 = coherence_s30(*rabi, d10, d20, d30)
    amplitudes = [field_amplitude(om, dipoles[lbl]) for om, lbl in zip(rabi, pump_labels)]
    coherences = adiabatic_coherences(amplitudes, [dipoles[lbl] for lbl in pump_labels], [p.detuning for p in system.pumps])
    intensities = tuple(rabi_to_intensity(om, dipoles[lbl]) for om, lbl in zip(rabi, pump_labels))

    k = system.probe_wavenumber
    omega = system.probe_omega
    n = system.sample.number_density * system.sample.length / system.cavity.length
    omega_r = recoil_frequency(k, species.mass)
    rho = rho_parameter(dipoles["3-0"], omega, n, s30, omega_r)
    kappa, kappa_bar = cavity_linewidth(system.cavity.length, system.cavity.reflectivity, omega_r, rho)
    sig = sigma_bar(system.sample.temperature, species.mass, k, rho)

    scaled = ScaledParameters(
        rho=rho,
        kappa_bar=kappa_bar,
        sigma_bar=sig,
        omega_r=omega_r,
        s30=s30,
        cavity_density=n,
        probe_wavenumber=k,
        mirror_transmission=system.cavity.mirror_transmission,
        intensity_unit=intensity_unit(n, omega, rho),
        time_unit=1.0 / (omega_r * rho),
    )
    # Fig. 1 geometry: probe counter-propagates against the (collinear) pumps.
    pm = coherence_length(
        [p.wavenumber for p in system.pumps], -k, system.sample.length
    )
    return Derivation(
        scaled=scaled,
        dipoles=dipoles,
        rabi=rabi,
        detunings=(d10, d20, d30),
        coherences=coherences,
        pump_intensities=intensities,
        kappa=kappa,
        recoil_temperature=recoil_temperature(omega_r),
        probe_wavelength=system.probe_wavelength,
        phase_matching=pm,
    )

