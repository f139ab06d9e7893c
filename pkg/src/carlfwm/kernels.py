"""Inner loops of the N-particle integrator.

Two implementations of the same compensated RK4 scheme:

* ``advance_jit`` -- numba ``@njit``; serial loops, so the reduction order is
  fixed and results are reproducible run to run.
* ``advance_numpy`` -- vectorised numpy, the fallback when numba is absent
  or ``CARLFWM_DISABLE_JIT=1``.

The two agree to round-off but are not bit-identical (different summation
order for the bunching mean). ``advance`` is whichever the environment selects.

State updates use Kahan-compensated summation: over ~10^4-10^5 steps plain
accumulation leaves a round-off floor around 1e-14 in the momentum budget,
the same size as the RK4 truncation error at dt = 1e-3.
"""

from __future__ import annotations

import numpy as np

from carlfwm._jit import HAVE_NUMBA, USE_JIT, njit


# ---------------------------------------------------------------- numpy path


def rhs_numpy(theta, p, a, kappa):
    """(dtheta, dp, da) for the scaled equations, vectorised."""
    e = np.exp(-1j * theta)
    b = e.mean()
    # a e^{i theta} + c.c. = 2 Re(a conj(e))
    force = -2.0 * (a.real * e.real + a.imag * e.imag)
    return p.copy(), force, b - kappa * a


def _kahan(x, comp, inc):
    y = inc - comp
    t = x + y
    comp = (t - x) - y
    return t, comp


def advance_numpy(theta, p, c_theta, c_p, a, c_a, kappa, dt, nsteps):
    """Advance ``nsteps`` RK4 steps in place; returns the new (a, c_a).

    ``theta``, ``p`` and their compensation arrays ``c_theta``, ``c_p`` are
    overwritten. ``a`` and ``c_a`` are complex scalars.
    """
    h2 = 0.5 * dt
    h6 = dt / 6.0
    for _ in range(nsteps):
        k1t, k1p, k1a = rhs_numpy(theta, p, a, kappa)
        k2t, k2p, k2a = rhs_numpy(theta + h2 * k1t, p + h2 * k1p, a + h2 * k1a, kappa)
        k3t, k3p, k3a = rhs_numpy(theta + h2 * k2t, p + h2 * k2p, a + h2 * k2a, kappa)
        k4t, k4p, k4a = rhs_numpy(theta + dt * k3t, p + dt * k3p, a + dt * k3a, kappa)
        new_t, c_t = _kahan(theta, c_theta, h6 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t))
        new_p, c_pp = _kahan(p, c_p, h6 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p))
        theta[:] = new_t
        c_theta[:] = c_t
        p[:] = new_p
        c_p[:] = c_pp
        a, c_a = _kahan(a, c_a, h6 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a))
    return a, c_a


# ---------------------------------------------------------------- numba path


@njit(cache=True, nogil=True)
def _stage(theta, ar, ai, kappa, force):
    """Fill ``force`` and return d(a)/dt as (re, im)."""
    n = theta.shape[0]
    br = 0.0
    bi = 0.0
    for j in range(n):
        c = np.cos(theta[j])
        s = np.sin(theta[j])
        br += c
        bi -= s
        force[j] = -2.0 * (ar * c - ai * s)
    br /= n
    bi /= n
    return br - kappa * ar, bi - kappa * ai


@njit(cache=True, nogil=True)
def rhs_jit(theta, p, a, kappa):
    force = np.empty_like(p)
    dar, dai = _stage(theta, a.real, a.imag, kappa, force)
    return p.copy(), force, complex(dar, dai)


@njit(cache=True, nogil=True)
def advance_jit(theta, p, c_theta, c_p, a, c_a, kappa, dt, nsteps):
    n = theta.shape[0]
    h2 = 0.5 * dt
    h6 = dt / 6.0
    ar = a.real
    ai = a.imag
    car = c_a.real
    cai = c_a.imag
    f1 = np.empty(n)
    f2 = np.empty(n)
    f3 = np.empty(n)
    f4 = np.empty(n)
    tt = np.empty(n)
    # stage momenta double as the theta-slopes of stages 2..4
    p2 = np.empty(n)
    p3 = np.empty(n)
    p4 = np.empty(n)
    for _ in range(nsteps):
        d1r, d1i = _stage(theta, ar, ai, kappa, f1)
        for j in range(n):
            tt[j] = theta[j] + h2 * p[j]
            p2[j] = p[j] + h2 * f1[j]
        d2r, d2i = _stage(tt, ar + h2 * d1r, ai + h2 * d1i, kappa, f2)
        for j in range(n):
            tt[j] = theta[j] + h2 * p2[j]
            p3[j] = p[j] + h2 * f2[j]
        d3r, d3i = _stage(tt, ar + h2 * d2r, ai + h2 * d2i, kappa, f3)
        for j in range(n):
            tt[j] = theta[j] + dt * p3[j]
            p4[j] = p[j] + dt * f3[j]
        d4r, d4i = _stage(tt, ar + dt * d3r, ai + dt * d3i, kappa, f4)
        for j in range(n):
            inc_t = h6 * (p[j] + 2.0 * p2[j] + 2.0 * p3[j] + p4[j])
            inc_p = h6 * (f1[j] + 2.0 * f2[j] + 2.0 * f3[j] + f4[j])
            y = inc_t - c_theta[j]
            t = theta[j] + y
            c_theta[j] = (t - theta[j]) - y
            theta[j] = t
            y = inc_p - c_p[j]
            t = p[j] + y
            c_p[j] = (t - p[j]) - y
            p[j] = t
        y = h6 * (d1r + 2.0 * d2r + 2.0 * d3r + d4r) - car
        t = ar + y
        car = (t - ar) - y
        ar = t
        y = h6 * (d1i + 2.0 * d2i + 2.0 * d3i + d4i) - cai
        t = ai + y
        cai = (t - ai) - y
        ai = t
    return complex(ar, ai), complex(car, cai)


if USE_JIT:
    advance = advance_jit
    rhs = rhs_jit
    BACKEND = "numba"
else:
    advance = advance_numpy
    rhs = rhs_numpy
    BACKEND = "numpy"

__all__ = ["BACKEND", "HAVE_NUMBA", "advance", "advance_jit", "advance_numpy", "rhs", "rhs_jit", "rhs_numpy"]
