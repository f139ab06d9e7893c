import math
from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from carlfwm.constants import HBAR, KB
from carlfwm.physical import (
    Cavity,
    PhysicalSystem,
    PumpField,
    Sample,
    builtin_cs_example,
    omega_to_wavelength,
    validate,
    wavelength_to_omega,
)


@pytest.fixture
def cs():
    return builtin_cs_example()


def test_cs_probe_wavelength_is_455nm(cs):
    assert cs.probe_wavelength == pytest.approx(455e-9, abs=1e-9)


def test_cs_detuning_ladder(cs):
    d10, d20, d30 = cs.detunings
    assert d30 == d10
    assert d20 == pytest.approx(cs.pumps[1].detuning, rel=0.05)
    assert d20 == 26 * d10


def test_cs_cavity_density(cs):
    n = cs.sample.number_density * cs.sample.length / cs.cavity.length
    assert n == pytest.approx(2e15, rel=1e-12)


def test_cs_inputs_verbatim(cs):
    a = {t.label: t.einstein_a for t in cs.species.transitions}
    assert a == {"1-0": 3.3e7, "2-1": 1.2e7, "3-2": 4.0e6, "3-0": 4.2e6}
    p1, p2, p3 = cs.pumps
    assert p1.detuning == 5000 * 3.3e7
    assert p2.detuning == 25 * p1.detuning and p3.detuning == -25 * p1.detuning
    assert p1.rabi_frequency == p1.detuning / 5
    assert p3.rabi_frequency == abs(p3.detuning) / 5
    assert cs.cavity.mirror_transmission == 3e-5
    assert cs.sample.temperature == pytest.approx(7e-6)


def test_sample_density_consistent_with_geometry(cs):
    s = cs.sample
    assert s.atom_count / (math.pi * s.radius**2 * s.length) == pytest.approx(1e18, rel=0.01)


def test_cs_example_has_no_warnings(cs):
    assert validate(cs) == []


def test_cold_sample_warns_below_recoil(cs):
    cold = replace(cs, sample=replace(cs.sample, temperature=0.5e-6))
    diags = validate(cold)
    assert [d.code for d in diags] == ["recoil"]
    assert "below recoil temperature ≈1.4 uK" in diags[0].message


def test_strong_pump_warns_adiabaticity(cs):
    p1 = cs.pumps[0]
    strong = replace(cs, pumps=(replace(p1, rabi_frequency=p1.detuning),) + cs.pumps[1:])
    assert "adiabaticity" in [d.code for d in validate(strong)]


def test_lossy_cavity_warns_good_cavity(cs):
    lossy = replace(cs, cavity=Cavity(0.1, 0.2))
    assert "good-cavity" in [d.code for d in validate(lossy)]


def test_sum_frequency_mismatch_rejected(cs):
    lam = cs.probe_wavelength
    PhysicalSystem(cs.species, cs.pumps, cs.cavity, cs.sample, probe_wavelength=lam * (1 + 1e-8))
    with pytest.raises(ValueError, match="sum-frequency"):
        PhysicalSystem(cs.species, cs.pumps, cs.cavity, cs.sample, probe_wavelength=lam * (1 + 1e-5))


@pytest.mark.parametrize(
    "build",
    [
        lambda: Cavity(0.0, 1e-3),
        lambda: Cavity(0.1, 0.0),
        lambda: Cavity(0.1, 1.0),
        lambda: Sample(1e6, -1.0, 4e-5, 7e-6),
        lambda: Sample(1e6, 2e-4, 4e-5, 7e-6, density=2e18),
        lambda: PumpField(1, 852e-9, 0.0, 1.0),
        lambda: PumpField(4, 852e-9, 1.0, 1.0),
    ],
)
def test_invariant_violations_raise(build):
    with pytest.raises(ValueError):
        build()


def test_missing_transition_rejected(cs):
    from carlfwm.physical import AtomicSpecies

    with pytest.raises(ValueError):
        AtomicSpecies("Cs", cs.species.mass, cs.species.transitions[:3])


@given(st.floats(min_value=1e-8, max_value=1e-3))
def test_wavelength_omega_round_trip(lam):
    assert omega_to_wavelength(wavelength_to_omega(lam)) == pytest.approx(lam, rel=1e-12)


def test_recoil_temperature_scale(cs):
    from carlfwm.params import derive_parameters

    d = derive_parameters(cs)
    assert d.recoil_temperature == pytest.approx(HBAR * d.scaled.omega_r / KB)
