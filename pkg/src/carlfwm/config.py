"""Sectioned ``key = value unit`` configuration files.

Layout (every dimensional value carries an explicit unit)::

    [species]          name; mass (kg | amu)
    [transition 1-0]   wavelength (m|cm|mm|um|nm); einstein_a (1/s); dipole_moment (C*m, optional)
    [transition 2-1]   ... likewise; [transition 3-2]; [transition 3-0]
                       (3-0 wavelength optional: defaults to the ladder sum)
    [pump 1]           wavelength; detuning (rad/s); rabi_frequency (rad/s)
    [pump 2], [pump 3]
    [cavity]           length; mirror_transmission (dimensionless)
    [sample]           atom_count; length; radius; temperature (K|mK|uK|nK);
                       density (1/m3 | 1/cm3, optional)
    [run]              optional RunConfig overrides: n_particles, sigma_bar,
                       kappa_bar, a0, t_end, dt, sample_every, seed,
                       symmetrize_momenta, beamlets

Parsing is strict: unknown sections or keys, missing keys, malformed numbers
and wrong or missing units all raise :class:`ConfigError`.
"""

from __future__ import annotations

import configparser
import difflib
import math
from dataclasses import dataclass, field, fields
from importlib import resources
from pathlib import Path

from carlfwm.constants import (
    ANGULAR_UNITS,
    DENSITY_UNITS,
    DIPOLE_UNITS,
    LENGTH_UNITS,
    MASS_UNITS,
    RATE_UNITS,
    TEMPERATURE_UNITS,
)
from carlfwm.dynamics import RunConfig
from carlfwm.physical import (
    AtomicSpecies,
    Cavity,
    PhysicalSystem,
    PumpField,
    Sample,
    Transition,
    omega_to_wavelength,
    wavelength_to_omega,
)

DIMENSIONLESS: dict[str, float] = {}

# (unit table, required)
SCHEMA: dict[str, dict[str, tuple[dict | None, bool]]] = {
    "species": {"name": (None, True), "mass": (MASS_UNITS, True)},
    "transition": {
        "wavelength": (LENGTH_UNITS, True),
        "einstein_a": (RATE_UNITS, True),
        "dipole_moment": (DIPOLE_UNITS, False),
    },
    "pump": {
        "wavelength": (LENGTH_UNITS, True),
        "detuning": (ANGULAR_UNITS, True),
        "rabi_frequency": (ANGULAR_UNITS, True),
    },
    "cavity": {"length": (LENGTH_UNITS, True), "mirror_transmission": (DIMENSIONLESS, True)},
    "sample": {
        "atom_count": (DIMENSIONLESS, True),
        "length": (LENGTH_UNITS, True),
        "radius": (LENGTH_UNITS, True),
        "temperature": (TEMPERATURE_UNITS, True),
        "density": (DENSITY_UNITS, False),
    },
}

RUN_KEYS = {f.name: f.type for f in fields(RunConfig)}
SECTIONS = (
    ["species"]
    + [f"transition {lbl}" for lbl in ("1-0", "2-1", "3-2", "3-0")]
    + [f"pump {i}" for i in (1, 2, 3)]
    + ["cavity", "sample", "run"]
)


class ConfigError(ValueError):
    pass


def _suggest(word: str, options) -> str:
    close = difflib.get_close_matches(word, list(options), n=1)
    return f" (did you mean {close[0]!r}?)" if close else ""


def parse_quantity(text: str, units: dict | None, where: str) -> float | str:
    """'852 nm' -> 8.52e-07 using the allowed ``units`` table."""
    if units is None:
        return text.strip()
    parts = text.split()
    if not parts:
        raise ConfigError(f"{where}: empty value")
    try:
        value = float(parts[0])
    except ValueError:
        raise ConfigError(f"{where}: malformed number {parts[0]!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"{where}: value must be finite")
    if len(parts) > 2:
        raise ConfigError(f"{where}: expected '<number> <unit>', got {text!r}")
    unit = parts[1] if len(parts) == 2 else None
    if not units:
        if unit is not None:
            raise ConfigError(f"{where}: dimensionless quantity given unit {unit!r}")
        return value
    if unit is None:
        raise ConfigError(f"{where}: missing unit, expected one of {sorted(units)}")
    if unit not in units:
        raise ConfigError(f"{where}: unit {unit!r} not allowed here; expected one of {sorted(units)}")
    return value * units[unit]


def _parse_run_value(key: str, text: str, where: str):
    typ = RUN_KEYS[key]
    text = text.strip()
    if typ in ("bool", bool):
        low = text.lower()
        if low in ("true", "yes", "on", "1"):
            return True
        if low in ("false", "no", "off", "0"):
            return False
        raise ConfigError(f"{where}: expected a boolean, got {text!r}")
    if typ in ("int", int):
        try:
            return int(text)
        except ValueError:
            raise ConfigError(f"{where}: expected an integer, got {text!r}") from None
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"{where}: malformed number {text!r}") from None


@dataclass
class LoadedConfig:
    system: PhysicalSystem
    run: dict = field(default_factory=dict)  # RunConfig fields set in the file


def _schema_for(section: str):
    kind = section.split()[0]
    if section not in SECTIONS:
        raise ConfigError(f"unknown section [{section}]{_suggest(section, SECTIONS)}")
    return SCHEMA.get(kind)


def loads(text: str, source: str = "<string>") -> LoadedConfig:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    cp.optionxform = str
    try:
        cp.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(f"{source}: {exc}") from None

    values: dict[str, dict] = {}
    run: dict = {}
    for section in cp.sections():
        schema = _schema_for(section)
        if section == "run":
            for key, raw in cp.items(section):
                if key not in RUN_KEYS:
                    raise ConfigError(f"[run]: unknown key {key!r}{_suggest(key, RUN_KEYS)}")
                run[key] = _parse_run_value(key, raw, f"[run] {key}")
            continue
        got = {}
        for key, raw in cp.items(section):
            if key not in schema:
                raise ConfigError(f"[{section}]: unknown key {key!r}{_suggest(key, schema)}")
            got[key] = parse_quantity(raw, schema[key][0], f"[{section}] {key}")
        for key, (_, required) in schema.items():
            optional_here = section == "transition 3-0" and key == "wavelength"
            if required and key not in got and not optional_here:
                raise ConfigError(f"[{section}]: missing required key {key!r}")
        values[section] = got

    for section in SECTIONS[:-1]:
        if section not in values:
            raise ConfigError(f"{source}: missing section [{section}]")

    try:
        system = _build_system(values)
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{source}: {exc}") from None
    return LoadedConfig(system, run)


def _build_system(v: dict) -> PhysicalSystem:
    pumps = tuple(
        PumpField(i, v[f"pump {i}"]["wavelength"], v[f"pump {i}"]["detuning"], v[f"pump {i}"]["rabi_frequency"])
        for i in (1, 2, 3)
    )
    transitions = []
    for lbl in ("1-0", "2-1", "3-2", "3-0"):
        t = v[f"transition {lbl}"]
        wl = t.get("wavelength")
        if wl is None:
            wl = omega_to_wavelength(
                sum(wavelength_to_omega(v[f"transition {x}"]["wavelength"]) for x in ("1-0", "2-1", "3-2"))
            )
        transitions.append(Transition(lbl, wl, t["einstein_a"], t.get("dipole_moment")))
    sp = v["species"]
    species = AtomicSpecies(sp["name"], sp["mass"], tuple(transitions))
    cav = v["cavity"]
    s = v["sample"]
    return PhysicalSystem(
        species=species,
        pumps=pumps,
        cavity=Cavity(cav["length"], cav["mirror_transmission"]),
        sample=Sample(s["atom_count"], s["length"], s["radius"], s["temperature"], s.get("density")),
    )


def load(path) -> LoadedConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    return loads(path.read_text(), source=str(path))


def bundled_path(name: str = "cs_example") -> Path:
    return Path(str(resources.files("carlfwm") / "data" / f"{name}.ini"))


def load_bundled(name: str = "cs_example") -> LoadedConfig:
    return load(bundled_path(name))


def dumps(system: PhysicalSystem, run: dict | None = None) -> str:
    """Serialise to the config format in SI units; ``loads(dumps(x))`` reproduces x exactly."""
    r = repr
    lines = ["[species]", f"name = {system.species.name}", f"mass = {r(system.species.mass)} kg", ""]
    for t in system.species.transitions:
        lines += [f"[transition {t.label}]", f"wavelength = {r(t.wavelength)} m", f"einstein_a = {r(t.einstein_a)} 1/s"]
        if t.dipole_moment is not None:
            lines.append(f"dipole_moment = {r(t.dipole_moment)} C*m")
        lines.append("")
    for p in system.pumps:
        lines += [
            f"[pump {p.index}]",
            f"wavelength = {r(p.wavelength)} m",
            f"detuning = {r(p.detuning)} rad/s",
            f"rabi_frequency = {r(p.rabi_frequency)} rad/s",
            "",
        ]
    c, s = system.cavity, system.sample
    lines += ["[cavity]", f"length = {r(c.length)} m", f"mirror_transmission = {r(c.mirror_transmission)}", ""]
    lines += [
        "[sample]",
        f"atom_count = {r(s.atom_count)}",
        f"length = {r(s.length)} m",
        f"radius = {r(s.radius)} m",
        f"temperature = {r(s.temperature)} K",
    ]
    if s.density is not None:
        lines.append(f"density = {r(s.density)} 1/m3")
    lines.append("")
    if run:
        lines.append("[run]")
        for key, val in run.items():
            lines.append(f"{key} = {val!r}" if not isinstance(val, bool) else f"{key} = {str(val).lower()}")
        lines.append("")
    return "\n".join(lines)
