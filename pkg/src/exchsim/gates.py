"""Exchange-pulse unitaries and closed-form gate error for fractional-SWAP targets.

A pulsed Heisenberg interaction between two spins generates the one-parameter
family U(theta) = exp(-i theta s1.s2), where theta is the dimensionless pulse
area.  theta = pi*alpha realizes SWAP^alpha up to a global phase, so the whole
gate family is controlled by the single product of exchange strength and
duration.

Unit convention: pulse strength is the exchange angular frequency in rad/s
(energy divided by hbar); durations are seconds.  theta = (J/hbar) * T / 2 for
a constant pulse.  HBAR_JS is provided for callers whose inputs are energies.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import core

HBAR_JS = 1.054571817e-34  # J s; only needed to convert energies to rad/s


def exchange_rate_from_energy(j_joules):
    """Exchange angular frequency (rad/s) from an exchange energy in joules."""
    return float(j_joules) / HBAR_JS


# Singlet/triplet projectors: the spectral structure of the exchange coupling.
P_TRIPLET = (core.IDENT_4 + core.SWAP) / 2.0
P_SINGLET = (core.IDENT_4 - core.SWAP) / 2.0
P_TRIPLET.setflags(write=False)
P_SINGLET.setflags(write=False)


@dataclass(frozen=True)
class PulseSpec:
    """One exchange pulse: constant strength over a duration, or a sampled profile.

    Exactly one of `j_rad_per_s` (constant exchange angular frequency) and
    `profile` (strictly increasing (time_s, j_rad_per_s) samples spanning
    [0, duration_s]) must be given.
    """

    j_rad_per_s: float | None
    duration_s: float
    profile: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        t = float(self.duration_s)
        if not (math.isfinite(t) and t > 0.0):
            raise ValueError(f"pulse duration must be positive and finite, got {t!r}")
        object.__setattr__(self, "duration_s", t)
        if (self.j_rad_per_s is None) == (self.profile is None):
            raise ValueError("exactly one of j_rad_per_s and profile must be set")
        if self.j_rad_per_s is not None:
            j = float(self.j_rad_per_s)
            if not (math.isfinite(j) and j >= 0.0):
                raise ValueError(f"exchange strength must be >= 0 and finite, got {j!r}")
            object.__setattr__(self, "j_rad_per_s", j)
            return
        samples = tuple((float(ti), float(ji)) for ti, ji in self.profile)
        if len(samples) < 2:
            raise ValueError("profile needs at least two (time, strength) samples")
        times = [ti for ti, _ in samples]
        if any(t2 <= t1 for t1, t2 in zip(times, times[1:])):
            raise ValueError("profile sample times must be strictly increasing")
        if times[0] != 0.0 or abs(times[-1] - t) > 1e-12 * t:
            raise ValueError("profile must span [0, duration_s]")
        if any(not (math.isfinite(ji) and ji >= 0.0) for _, ji in samples):
            raise ValueError("profile strengths must be >= 0 and finite")
        object.__setattr__(self, "profile", samples)


def constant_pulse(j_rad_per_s, duration_s):
    return PulseSpec(j_rad_per_s=j_rad_per_s, duration_s=duration_s)


def profile_pulse(samples):
    """PulseSpec from (time_s, j_rad_per_s) samples; duration is the last time."""
    samples = tuple(samples)
    if not samples:
        raise ValueError("profile needs at least two (time, strength) samples")
    return PulseSpec(j_rad_per_s=None, duration_s=samples[-1][0], profile=samples)


def pulse_for_target(alpha, duration_s):
    """Constant pulse whose area realizes SWAP^alpha in the given duration."""
    return constant_pulse(2.0 * math.pi * float(alpha) / float(duration_s), duration_s)


def phase_from_pulse(pulse):
    """Dimensionless pulse area theta = integral of J(t) dt / 2 (J in rad/s).

    Constant pulses integrate exactly; profiles use the trapezoidal rule on
    the caller's samples (only the area matters, the generator commutes with
    itself at all times).
    """
    if pulse.j_rad_per_s is not None:
        return pulse.j_rad_per_s * pulse.duration_s / 2.0
    times = np.array([ti for ti, _ in pulse.profile])
    values = np.array([ji for _, ji in pulse.profile])
    return float(np.trapezoid(values, times)) / 2.0


def exchange_unitary(theta):
    """Two-qubit exchange unitary U(theta) = exp(-i theta s1.s2).

    Spectral form: e^{-i theta/4} P_triplet + e^{+3i theta/4} P_singlet.
    Equals SWAP^(theta/pi) times the global phase e^{-i theta/4}.
    """
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    return np.exp(-1j * theta / 4.0) * P_TRIPLET + np.exp(3j * theta / 4.0) * P_SINGLET


def swap_power_target(alpha):
    """Canonical fractional SWAP: P_triplet + e^{i pi alpha} P_singlet.

    Principal branch; alpha = 1 is SWAP exactly, alpha = 0 the identity.
    exchange_unitary(pi*alpha) differs from this by the global phase
    e^{-i pi alpha / 4}, which process fidelity ignores.
    """
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise ValueError("alpha must be finite")
    return P_TRIPLET + np.exp(1j * math.pi * alpha) * P_SINGLET


def gate_error_vs_phase(delta_theta):
    """Process infidelity between U(theta) and U(theta + delta_theta).

    Closed form (3/8)(1 - cos delta_theta), independent of theta; the
    leading order is (3/16) delta_theta^2.  Even and 2*pi-periodic.
    Evaluated as (3/4) sin^2(delta_theta/2), which is the same function
    without cancellation at small arguments.
    """
    delta_theta = float(delta_theta)
    if not math.isfinite(delta_theta):
        raise ValueError("delta_theta must be finite")
    return 0.75 * math.sin(0.5 * delta_theta) ** 2


def relative_error_to_phase_error(theta, dj_over_j, dt_over_t):
    """Exact pulse-area error from relative strength and duration errors.

    delta_theta = theta * ((1 + dJ/J)(1 + dT/T) - 1); agrees with the
    first-order form theta * (dJ/J + dT/T) to second order.
    """
    _check_relative(dj_over_j, "dj_over_j")
    _check_relative(dt_over_t, "dt_over_t")
    return float(theta) * ((1.0 + dj_over_j) * (1.0 + dt_over_t) - 1.0)


def relative_error_to_phase_error_first_order(theta, dj_over_j, dt_over_t):
    """First-order pulse-area error theta * (dJ/J + dT/T)."""
    _check_relative(dj_over_j, "dj_over_j")
    _check_relative(dt_over_t, "dt_over_t")
    return float(theta) * (dj_over_j + dt_over_t)


def _check_relative(x, name):
    if not (math.isfinite(x) and abs(x) < 1.0):
        raise ValueError(f"{name} must satisfy |x| < 1, got {x!r}")


def wrap_phase(theta):
    """Reduce an angle to (-pi, pi] for comparisons.  Never applied silently."""
    wrapped = math.fmod(float(theta), 2.0 * math.pi)
    if wrapped > math.pi:
        wrapped -= 2.0 * math.pi
    elif wrapped <= -math.pi:
        wrapped += 2.0 * math.pi
    return wrapped
