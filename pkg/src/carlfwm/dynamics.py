"""N-particle + single cavity-mode integration in scaled variables.

    d theta_j / dt = p_j
    d p_j / dt     = -(a e^{i theta_j} + c.c.)
    d a / dt       = <e^{-i theta}> - kappa a

theta_j = 2 k z_j is kept unwrapped; wrapping only happens when the bunching
or the density grating is evaluated.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from carlfwm import kernels

log = logging.getLogger(__name__)

COLUMNS = ("t_bar", "re_a", "im_a", "a2", "bunching_abs", "bunching_arg", "p_mean", "p_std", "budget")


class IntegrationError(RuntimeError):
    """Raised when the state stops being finite."""

    def __init__(self, t_bar: float):
        super().__init__(f"non-finite state at t_bar = {t_bar:.6g}")
        self.t_bar = t_bar


@dataclass
class SimState:
    t_bar: float
    theta: np.ndarray
    p_bar: np.ndarray
    a_bar: complex

    def __post_init__(self):
        self.theta = np.ascontiguousarray(self.theta, dtype=np.float64)
        self.p_bar = np.ascontiguousarray(self.p_bar, dtype=np.float64)
        self.a_bar = complex(self.a_bar)
        if self.theta.ndim != 1 or self.theta.shape != self.p_bar.shape:
            raise ValueError("theta and p_bar must be 1-D arrays of equal length")
        if self.theta.size < 2:
            raise ValueError("need at least 2 particles")
        if not self.is_finite():
            raise ValueError("state must be finite")

    @property
    def n(self) -> int:
        return self.theta.size

    def is_finite(self) -> bool:
        return bool(
            np.isfinite(self.theta).all()
            and np.isfinite(self.p_bar).all()
            and math.isfinite(self.a_bar.real)
            and math.isfinite(self.a_bar.imag)
        )

    def copy(self) -> SimState:
        return SimState(self.t_bar, self.theta.copy(), self.p_bar.copy(), self.a_bar)


@dataclass(frozen=True)
class RunConfig:
    """Integrator and ensemble controls.

    ``beamlets`` is the number of evenly spaced phases that share each sampled
    momentum; it keeps the thermal spread from seeding bunching noise, so the
    growth starts from the field alone. ``n_particles`` must be divisible by it.
    """

    n_particles: int = 2048
    sigma_bar: float = 0.0
    kappa_bar: float = 0.0
    a0: float = 1e-5
    t_end: float = 25.0
    dt: float = 1e-3
    sample_every: int = 100
    seed: int = 0
    symmetrize_momenta: bool = True
    beamlets: int = 4

    def __post_init__(self):
        if self.n_particles < 2:
            raise ValueError("n_particles must be >= 2")
        if not self.dt > 0:
            raise ValueError("dt must be > 0")
        if not self.t_end > 0:
            raise ValueError("t_end must be > 0")
        if self.a0 < 0:
            raise ValueError("a0 must be >= 0")
        if self.sigma_bar < 0 or self.kappa_bar < 0:
            raise ValueError("sigma_bar and kappa_bar must be >= 0")
        if self.sample_every < 1:
            raise ValueError("sample_every must be >= 1")
        if self.beamlets < 1 or self.n_particles % self.beamlets:
            raise ValueError(f"n_particles ({self.n_particles}) must be a multiple of beamlets ({self.beamlets})")

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.dt))

    def with_(self, **changes) -> RunConfig:
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return asdict(self)


def init_quiet_start(config: RunConfig) -> SimState:
    """Uniform phases theta_j = 2 pi j / N, Gaussian momenta, real field a0.

    Particle j gets momentum q[j mod K] with K = N / beamlets, so each
    momentum is carried by ``beamlets`` particles spaced 2 pi / beamlets apart.
    """
    n = config.n_particles
    if n < 2:
        raise ValueError("n_particles must be >= 2")
    theta = 2.0 * np.pi * np.arange(n) / n
    groups = n // config.beamlets
    rng = np.random.default_rng(config.seed)
    if config.symmetrize_momenta:
        half = rng.normal(0.0, config.sigma_bar, groups // 2)
        q = np.concatenate([half, -half, np.zeros(groups % 2)])
    else:
        q = rng.normal(0.0, config.sigma_bar, groups)
    p = q[np.arange(n) % groups]
    return SimState(0.0, theta, p, complex(config.a0))


def bunching(state_or_theta) -> complex:
    """b = <e^{-i theta}>."""
    theta = state_or_theta.theta if isinstance(state_or_theta, SimState) else np.asarray(state_or_theta)
    return complex(np.exp(-1j * theta).mean())


def momentum_budget(state: SimState) -> float:
    """<p> + |a|^2, conserved when kappa_bar = 0."""
    return float(state.p_bar.mean() + abs(state.a_bar) ** 2)


def rhs(state: SimState, kappa_bar: float):
    """Time derivatives (dtheta, dp, da) of ``state``."""
    return kernels.rhs(state.theta, state.p_bar, state.a_bar, float(kappa_bar))


@dataclass
class TimeSeries:
    """Sampled diagnostics, one row per output time, plus the final state."""

    t_bar: np.ndarray
    a_bar: np.ndarray
    bunching: np.ndarray
    p_mean: np.ndarray
    p_std: np.ndarray
    final_state: SimState | None = field(default=None, repr=False)

    @property
    def a2(self) -> np.ndarray:
        return np.abs(self.a_bar) ** 2

    @property
    def budget(self) -> np.ndarray:
        return self.p_mean + self.a2

    def __len__(self):
        return self.t_bar.size

    def table(self) -> np.ndarray:
        """Rows in :data:`COLUMNS` order."""
        return np.column_stack(
            [
                self.t_bar,
                self.a_bar.real,
                self.a_bar.imag,
                self.a2,
                np.abs(self.bunching),
                np.angle(self.bunching),
                self.p_mean,
                self.p_std,
                self.budget,
            ]
        )

    def to_csv(self, path) -> None:
        write_csv(path, COLUMNS, self.table())


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_csv(path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([v if isinstance(v, str) else fmt(v) for v in row])


def write_phase_space(path, state: SimState) -> None:
    write_csv(path, ("theta", "p_bar"), np.column_stack([state.theta, state.p_bar]))


def integrate(state: SimState, config: RunConfig) -> TimeSeries:
    """Advance ``state`` to ``config.t_end`` with fixed-step compensated RK4.

    A row is recorded at the start, every ``sample_every`` steps, and at the
    final step. The input state is not modified.
    """
    cur = state.copy()
    theta, p = cur.theta, cur.p_bar
    c_theta = np.zeros_like(theta)
    c_p = np.zeros_like(p)
    a = cur.a_bar
    c_a = 0j
    kappa = float(config.kappa_bar)
    dt = float(config.dt)
    t0 = cur.t_bar
    total = int(round((config.t_end - t0) / dt))
    if total < 1:
        raise ValueError(f"t_end ({config.t_end}) must exceed the start time ({t0}) by at least one step")

    ts, aa, bb, pm, ps = [], [], [], [], []

    def record(step):
        ts.append(t0 + step * dt)
        aa.append(a)
        bb.append(np.exp(-1j * theta).mean())
        pm.append(p.mean())
        ps.append(p.std())

    record(0)
    step = 0
    while step < total:
        chunk = min(config.sample_every, total - step)
        a, c_a = kernels.advance(theta, p, c_theta, c_p, a, c_a, kappa, dt, chunk)
        step += chunk
        if not (math.isfinite(a.real) and math.isfinite(a.imag) and np.isfinite(theta).all() and np.isfinite(p).all()):
            raise IntegrationError(t0 + step * dt)
        record(step)

    final = SimState(t0 + total * dt, theta, p, a)
    log.debug("integrated %d steps (%s backend)", total, kernels.BACKEND)
    return TimeSeries(
        t_bar=np.array(ts),
        a_bar=np.array(aa, dtype=complex),
        bunching=np.array(bb, dtype=complex),
        p_mean=np.array(pm),
        p_std=np.array(ps),
        final_state=final,
    )


def simulate(config: RunConfig) -> TimeSeries:
    return integrate(init_quiet_start(config), config)


@dataclass(frozen=True)
class GratingProfile:
    edges: np.ndarray  # bin edges in metres over one period
    counts: np.ndarray
    period: float  # lambda / 2
    depth: float  # |b|
    harmonics: np.ndarray  # |<e^{-i h theta}>| for h = 1..H
    dominant_period: float


def grating_profile(state: SimState, k: float, bins: int = 32, n_harmonics: int = 8) -> GratingProfile:
    """Histogram of atom positions z = theta / 2k folded onto one period pi / k.

    ``dominant_period`` is the period of the strongest Fourier harmonic of the
    density, (pi/k) / h*.
    """
    if not k > 0:
        raise ValueError("k must be positive")
    period = np.pi / k
    z = np.mod(state.theta, 2.0 * np.pi) / (2.0 * k)
    counts, edges = np.histogram(z, bins=bins, range=(0.0, period))
    h = np.arange(1, n_harmonics + 1)
    harm = np.abs(np.exp(-1j * np.outer(h, state.theta)).mean(axis=1))
    dominant = period / h[int(np.argmax(harm))]
    return GratingProfile(edges, counts, float(period), float(abs(bunching(state))), harm, float(dominant))
