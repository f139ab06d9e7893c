"""Four-level atom, pump fields, cavity and sample description.

All quantities are SI. Objects are frozen dataclasses and validate their own
invariants on construction; regime checks that should not block exploration
live in :func:`validate` and come back as diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from carlfwm.constants import AMU, C, CS_MASS_AMU, LENGTH_UNITS, TEMPERATURE_UNITS

TRANSITION_LABELS = ("1-0", "2-1", "3-2", "3-0")

# probe must satisfy the sum-frequency condition to this relative accuracy
SUM_FREQUENCY_RTOL = 1e-6
# Chosen well below 1: the Cs example sits at 0.2.
ADIABATICITY_WARN = 0.5
GOOD_CAVITY_WARN = 0.1
DENSITY_RTOL = 0.01


def wavelength_to_omega(wavelength: float) -> float:
    """Angular frequency [rad/s] of light with vacuum wavelength ``wavelength`` [m]."""
    return 2.0 * math.pi * C / wavelength


def omega_to_wavelength(omega: float) -> float:
    return 2.0 * math.pi * C / omega


def wavelength_to_wavenumber(wavelength: float) -> float:
    return 2.0 * math.pi / wavelength


def _require_positive(name: str, value: float) -> None:
    if not (value > 0 and math.isfinite(value)):
        raise ValueError(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True)
class Transition:
    """Dipole-allowed transition between two of the levels |0>..|3>.

    ``dipole_moment`` may be omitted, in which case it is reconstructed from
    the Einstein A coefficient (see :func:`carlfwm.params.dipole_from_einstein_a`).
    """

    label: str
    wavelength: float
    einstein_a: float
    dipole_moment: float | None = None

    def __post_init__(self):
        if self.label not in TRANSITION_LABELS:
            raise ValueError(f"unknown transition label {self.label!r}; expected one of {TRANSITION_LABELS}")
        _require_positive(f"transition {self.label} wavelength", self.wavelength)
        if not (self.einstein_a >= 0 and math.isfinite(self.einstein_a)):
            raise ValueError(f"transition {self.label} einstein_a must be >= 0, got {self.einstein_a!r}")
        if self.dipole_moment is not None and not self.dipole_moment >= 0:
            raise ValueError(f"transition {self.label} dipole_moment must be >= 0")

    @property
    def omega(self) -> float:
        return wavelength_to_omega(self.wavelength)


@dataclass(frozen=True)
class PumpField:
    """One of the three undepleted pumps.

    ``detuning`` is Delta_10, Delta_21 or Delta_32 for pumps 1, 2, 3
    (pump frequency minus transition frequency).
    """

    index: int
    wavelength: float
    detuning: float
    rabi_frequency: float

    def __post_init__(self):
        if self.index not in (1, 2, 3):
            raise ValueError(f"pump index must be 1, 2 or 3, got {self.index!r}")
        _require_positive(f"pump {self.index} wavelength", self.wavelength)
        if not (self.rabi_frequency >= 0 and math.isfinite(self.rabi_frequency)):
            raise ValueError(f"pump {self.index} rabi_frequency must be >= 0")
        if self.detuning == 0 or not math.isfinite(self.detuning):
            raise ValueError(f"pump {self.index} detuning must be nonzero (non-resonant excitation)")

    @property
    def omega(self) -> float:
        return wavelength_to_omega(self.wavelength)

    @property
    def wavenumber(self) -> float:
        return wavelength_to_wavenumber(self.wavelength)


@dataclass(frozen=True)
class AtomicSpecies:
    name: str
    mass: float
    transitions: tuple[Transition, ...]

    def __post_init__(self):
        _require_positive("mass", self.mass)
        labels = sorted(t.label for t in self.transitions)
        if labels != sorted(TRANSITION_LABELS):
            raise ValueError(f"species needs exactly the transitions {TRANSITION_LABELS}, got {tuple(labels)}")

    def transition(self, label: str) -> Transition:
        for t in self.transitions:
            if t.label == label:
                return t
        raise KeyError(label)


@dataclass(frozen=True)
class Cavity:
    """Unidirectional ring cavity; ``mirror_transmission`` is T_c = 1 - R."""

    length: float
    mirror_transmission: float

    def __post_init__(self):
        _require_positive("cavity length", self.length)
        if not 0.0 < self.mirror_transmission < 1.0:
            raise ValueError(f"mirror_transmission must lie in (0, 1), got {self.mirror_transmission!r}")

    @property
    def reflectivity(self) -> float:
        return 1.0 - self.mirror_transmission


@dataclass(frozen=True)
class Sample:
    """Cylindrical cold-atom sample.

    If ``density`` is omitted it is computed from ``atom_count`` and the
    geometry; if both are given they must agree to 1%.
    """

    atom_count: float
    length: float
    radius: float
    temperature: float
    density: float | None = None

    def __post_init__(self):
        _require_positive("atom_count", self.atom_count)
        _require_positive("sample length", self.length)
        _require_positive("sample radius", self.radius)
        _require_positive("temperature", self.temperature)
        if self.density is not None:
            _require_positive("density", self.density)
            geometric = self.geometric_density
            if abs(self.density - geometric) > DENSITY_RTOL * geometric:
                raise ValueError(
                    f"density {self.density:.4g} m^-3 inconsistent with N/(pi r^2 L) = {geometric:.4g} m^-3"
                )

    @property
    def cross_section(self) -> float:
        return math.pi * self.radius**2

    @property
    def geometric_density(self) -> float:
        return self.atom_count / (self.cross_section * self.length)

    @property
    def number_density(self) -> float:
        return self.density if self.density is not None else self.geometric_density


@dataclass(frozen=True)
class PhysicalSystem:
    """Full experiment description.

    The probe (scattered) frequency is fixed by the sum-frequency condition
    omega = omega_p1 + omega_p2 + omega_p3. ``probe_wavelength`` may be passed
    to cross-check a stated value; it is rejected if it disagrees by more than
    1e-6 relative.
    """

    species: AtomicSpecies
    pumps: tuple[PumpField, PumpField, PumpField]
    cavity: Cavity
    sample: Sample
    probe_wavelength: float = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if tuple(p.index for p in self.pumps) != (1, 2, 3):
            raise ValueError("pumps must be given in order 1, 2, 3")
        omega = sum(p.omega for p in self.pumps)
        if self.probe_wavelength is None:
            object.__setattr__(self, "probe_wavelength", omega_to_wavelength(omega))
        else:
            _require_positive("probe wavelength", self.probe_wavelength)
            stated = wavelength_to_omega(self.probe_wavelength)
            if abs(stated - omega) / omega > SUM_FREQUENCY_RTOL:
                raise ValueError(
                    f"probe wavelength {self.probe_wavelength:.6g} m violates the sum-frequency condition "
                    f"(expected {omega_to_wavelength(omega):.9g} m)"
                )

    @property
    def probe_omega(self) -> float:
        return sum(p.omega for p in self.pumps)

    @property
    def probe_wavenumber(self) -> float:
        return self.probe_omega / C

    @property
    def detunings(self) -> tuple[float, float, float]:
        """(Delta_10, Delta_20, Delta_30) measured from the ground state."""
        d10 = self.pumps[0].detuning
        d20 = d10 + self.pumps[1].detuning
        d30 = d20 + self.pumps[2].detuning
        return d10, d20, d30


@dataclass(frozen=True)
class Diagnostic:
    level: str  # "warning" or "error"
    code: str
    message: str


def builtin_cs_example() -> PhysicalSystem:
    """Cs ladder 6S1/2 -> 6P3/2 -> 7S1/2 -> 7P3/2 pumped by three IR lasers."""
    nm, um, cm = LENGTH_UNITS["nm"], LENGTH_UNITS["um"], LENGTH_UNITS["cm"]
    a10, a21, a32, a30 = 3.3e7, 1.2e7, 4.0e6, 4.2e6
    lam1, lam2, lam3 = 852.0 * nm, 1470.0 * nm, 2930.0 * nm
    # level |3> sits at the sum of the ladder frequencies
    lam30 = omega_to_wavelength(wavelength_to_omega(lam1) + wavelength_to_omega(lam2) + wavelength_to_omega(lam3))
    species = AtomicSpecies(
        name="Cs",
        mass=CS_MASS_AMU * AMU,
        transitions=(
            Transition("1-0", lam1, a10),
            Transition("2-1", lam2, a21),
            Transition("3-2", lam3, a32),
            Transition("3-0", lam30, a30),
        ),
    )
    d10 = 5000.0 * a10
    d21 = 25.0 * d10
    d32 = -25.0 * d10
    pumps = (
        PumpField(1, lam1, d10, d10 / 5.0),
        PumpField(2, lam2, d21, d21 / 5.0),
        PumpField(3, lam3, d32, abs(d32) / 5.0),
    )
    return PhysicalSystem(
        species=species,
        pumps=pumps,
        cavity=Cavity(length=10.0 * cm, mirror_transmission=3e-5),
        sample=Sample(
            atom_count=1e6,
            length=200.0 * um,
            radius=40.0 * um,
            temperature=7.0 * TEMPERATURE_UNITS["uK"],
            density=1e18,
        ),
    )


def validate(system: PhysicalSystem) -> list[Diagnostic]:
    """Regime checks: adiabaticity, classical motion, good-cavity limit.

    Invariant violations already raise on construction, so everything here is
    a warning.
    """
    from carlfwm.params import derive_parameters

    out = []
    for pump in system.pumps:
        ratio = abs(pump.rabi_frequency / pump.detuning)
        if ratio >= ADIABATICITY_WARN:
            out.append(
                Diagnostic(
                    "warning",
                    "adiabaticity",
                    f"pump {pump.index}: |Omega/Delta| = {ratio:.3g} >= {ADIABATICITY_WARN}; "
                    "adiabatic elimination of the coherences is questionable",
                )
            )
    derived = derive_parameters(system)
    t_rec = derived.recoil_temperature
    if system.sample.temperature < t_rec:
        out.append(
            Diagnostic(
                "warning",
                "recoil",
                f"T = {system.sample.temperature * 1e6:.3g} uK is below recoil temperature "
                f"≈{t_rec * 1e6:.2g} uK; classical centre-of-mass motion is not valid",
            )
        )
    if derived.scaled.kappa_bar >= GOOD_CAVITY_WARN:
        out.append(
            Diagnostic(
                "warning",
                "good-cavity",
                f"kappa_bar = {derived.scaled.kappa_bar:.3g} >= {GOOD_CAVITY_WARN}; good-cavity limit strained",
            )
        )
    return out
