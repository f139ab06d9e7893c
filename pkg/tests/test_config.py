import pytest

from carlfwm.config import ConfigError, bundled_path, dumps, load, load_bundled, loads
from carlfwm.physical import builtin_cs_example

BASE = bundled_path().read_text()


def edit(old, new):
    assert old in BASE
    return BASE.replace(old, new, 1)


def test_bundled_matches_builtin():
    cfg = load_bundled()
    assert cfg.system == builtin_cs_example()
    assert cfg.run == {}


def test_round_trip_exact():
    sys_ = builtin_cs_example()
    run = {"n_particles": 512, "sigma_bar": 0.25, "symmetrize_momenta": False}
    back = loads(dumps(sys_, run))
    assert back.system == sys_
    assert back.run == run


def test_unit_conversion():
    cfg = loads(edit("length = 10 cm", "length = 100 mm"))
    assert cfg.system.cavity.length == pytest.approx(0.1, rel=1e-15)
    cfg = loads(edit("temperature = 7 uK", "temperature = 0.007 mK"))
    assert cfg.system.sample.temperature == pytest.approx(7e-6, rel=1e-12)


def test_misspelled_key_suggests_nearest():
    with pytest.raises(ConfigError, match="did you mean 'einstein_a'"):
        loads(edit("einstein_a = 3.3e7 1/s", "einstien_a = 3.3e7 1/s"))


def test_misspelled_section_suggests_nearest():
    with pytest.raises(ConfigError, match="did you mean 'cavity'"):
        loads(edit("[cavity]", "[cavty]"))


def test_wrong_unit_rejected():
    with pytest.raises(ConfigError, match="unit 'K' not allowed"):
        loads(edit("wavelength = 852 nm\neinstein_a", "wavelength = 852 K\neinstein_a"))


def test_missing_unit_rejected():
    with pytest.raises(ConfigError, match=r"\[pump 1\] detuning: missing unit"):
        loads(edit("detuning = 1.65e11 rad/s", "detuning = 1.65e11"))


def test_unit_on_dimensionless_rejected():
    with pytest.raises(ConfigError, match="dimensionless"):
        loads(edit("mirror_transmission = 3e-5", "mirror_transmission = 3e-5 m"))


def test_missing_key_rejected():
    with pytest.raises(ConfigError, match="missing required key 'rabi_frequency'"):
        loads(edit("rabi_frequency = 3.3e10 rad/s\n", ""))


def test_missing_section_rejected():
    text = BASE.split("[cavity]")[0] + "[sample]" + BASE.split("[sample]")[1]
    with pytest.raises(ConfigError, match=r"missing section \[cavity\]"):
        loads(text)


def test_malformed_number_rejected():
    with pytest.raises(ConfigError, match="malformed number"):
        loads(edit("length = 10 cm", "length = ten cm"))


def test_non_finite_rejected():
    with pytest.raises(ConfigError, match="finite"):
        loads(edit("length = 10 cm", "length = inf cm"))


def test_physical_invariant_becomes_config_error():
    with pytest.raises(ConfigError, match="mirror"):
        loads(edit("mirror_transmission = 3e-5", "mirror_transmission = 1.5"))


def test_explicit_30_wavelength_checked():
    ok = loads(edit("[transition 3-0]\n", "[transition 3-0]\nwavelength = 455.53 nm\n"))
    assert ok.system.species.transition("3-0").wavelength == pytest.approx(455.53e-9)


def test_run_section():
    cfg = loads(BASE + "\n[run]\nn_particles = 256\nsigma_bar = 0.3\nsymmetrize_momenta = no\n")
    assert cfg.run == {"n_particles": 256, "sigma_bar": 0.3, "symmetrize_momenta": False}
    with pytest.raises(ConfigError, match="did you mean 'n_particles'"):
        loads(BASE + "\n[run]\nn_particle = 256\n")
    with pytest.raises(ConfigError, match="integer"):
        loads(BASE + "\n[run]\nn_particles = 2.5\n")


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        load(tmp_path / "nope.ini")
