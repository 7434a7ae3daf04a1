"""Classical control-noise models for exchange pulses.

Covers per-pulse amplitude and timing noise, band-integrated SNR figures,
shot-noise limits, field-to-exchange sensitivity, and a phenomenological
map from optical intensity to exchange strength for photo-modulated
barriers.

The noise model is white-over-band and quasi-static per pulse: each gate
draws one relative-amplitude scalar and one timing scalar.  RNG state is
caller-owned and passed explicitly, so parallel callers can use
independent streams.
"""

import math
from dataclasses import dataclass

from .gates import constant_pulse, profile_pulse

DISTRIBUTIONS = ("gaussian", "uniform")

# Resample-then-fail policy for unphysical draws (duration <= 0).
MAX_RESAMPLES = 100


class RejectedSampleError(RuntimeError):
    """Raised when resampling cannot produce a pulse with positive duration."""


@dataclass(frozen=True)
class ControlNoiseSpec:
    """Per-pulse control noise figures of a technology.

    sigma_a is the RMS relative amplitude noise (dimensionless), sigma_t_s
    the RMS timing jitter in seconds, both integrated over the stated band.
    """

    sigma_a: float
    sigma_t_s: float
    distribution: str = "gaussian"
    bw_low_hz: float = 0.0
    bw_high_hz: float = math.inf

    def __post_init__(self):
        if not (math.isfinite(self.sigma_a) and self.sigma_a >= 0.0):
            raise ValueError(f"sigma_a must be >= 0 and finite, got {self.sigma_a!r}")
        if not (math.isfinite(self.sigma_t_s) and self.sigma_t_s >= 0.0):
            raise ValueError(f"sigma_t_s must be >= 0 and finite, got {self.sigma_t_s!r}")
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(f"distribution must be one of {DISTRIBUTIONS}, got {self.distribution!r}")
        if math.isnan(self.bw_low_hz) or math.isnan(self.bw_high_hz):
            raise ValueError("bandwidth limits must not be NaN")
        if not (0.0 <= self.bw_low_hz < self.bw_high_hz):
            raise ValueError(
                f"need bw_high_hz > bw_low_hz >= 0, got [{self.bw_low_hz!r}, {self.bw_high_hz!r}]"
            )


def _draw(rng, distribution, sigma):
    if distribution == "gaussian":
        return float(rng.normal(0.0, sigma))
    # Zero-mean uniform with standard deviation sigma has half-width sigma*sqrt(3).
    half_width = sigma * math.sqrt(3.0)
    return float(rng.uniform(-half_width, half_width))


def sample_pulse(rng, nominal, noise):
    """One noisy realization of a pulse: J' = J(1+a), T' = T + t.

    `a` and `t` are zero-mean draws with standard deviations sigma_a and
    sigma_t_s.  Unphysical draws (T' <= 0, or J' < 0 in extreme amplitude
    regimes) are resampled up to MAX_RESAMPLES times, then
    RejectedSampleError is raised.  Deterministic for a given rng state.
    """
    pulse, _ = sample_pulse_counted(rng, nominal, noise)
    return pulse


def sample_pulse_counted(rng, nominal, noise):
    """Like sample_pulse, but also returns the number of rejected draws."""
    rejected = 0
    while True:
        amp = _draw(rng, noise.distribution, noise.sigma_a)
        shift = _draw(rng, noise.distribution, noise.sigma_t_s)
        duration = nominal.duration_s + shift
        if duration > 0.0 and amp >= -1.0:
            return _scaled_pulse(nominal, 1.0 + amp, duration), rejected
        rejected += 1
        if rejected > MAX_RESAMPLES:
            raise RejectedSampleError(
                f"no physical pulse after {MAX_RESAMPLES} resamples "
                f"(nominal T {nominal.duration_s:.3e} s, sigma_t {noise.sigma_t_s:.3e} s, "
                f"sigma_a {noise.sigma_a:.3e})"
            )


def _scaled_pulse(nominal, amp_factor, duration):
    if nominal.j_rad_per_s is not None:
        return constant_pulse(nominal.j_rad_per_s * amp_factor, duration)
    # Profiles: scale strengths by the amplitude factor, stretch the time
    # axis so the noisy duration keeps the pulse shape.
    stretch = duration / nominal.duration_s
    return profile_pulse(tuple((ti * stretch, ji * amp_factor) for ti, ji in nominal.profile))


def integrated_snr(sigma_rel):
    """Band-integrated SNR of a control channel with relative RMS noise sigma_rel.

    sigma_rel = 0 returns the infinite-SNR sentinel (math.inf).
    """
    if not (sigma_rel >= 0.0) or math.isnan(sigma_rel):
        raise ValueError(f"sigma_rel must be >= 0, got {sigma_rel!r}")
    if sigma_rel == 0.0:
        return math.inf
    return 1.0 / sigma_rel


def db_to_amplitude_snr(db):
    """Amplitude-convention SNR from decibels: 10^(db/20); 80 dB -> 1e4.

    This is the default convention throughout; see db_to_power_snr for the
    power reading of the same figure.
    """
    return 10.0 ** (float(db) / 20.0)


def db_to_power_snr(db):
    """Power-convention SNR from decibels: 10^(db/10); 80 dB -> 1e8."""
    return 10.0 ** (float(db) / 10.0)


def shot_noise_relative_amplitude(n_photons):
    """Poisson shot-noise floor: relative amplitude noise 1/sqrt(N) for N photons."""
    if not (n_photons > 0.0):
        raise ValueError(f"n_photons must be > 0, got {n_photons!r}")
    return 1.0 / math.sqrt(n_photons)


def sensitivity_map(delta_field_rel, sensitivity):
    """Relative exchange error from a relative control-field error.

    `sensitivity` is the logarithmic sensitivity (dJ/dE)(E/J); zero models a
    sweet spot where first-order field noise cancels.
    """
    if not (math.isfinite(sensitivity) and sensitivity >= 0.0):
        raise ValueError(f"sensitivity must be >= 0 and finite, got {sensitivity!r}")
    if not math.isfinite(delta_field_rel):
        raise ValueError("delta_field_rel must be finite")
    return sensitivity * delta_field_rel


@dataclass(frozen=True)
class RectificationMap:
    """Phenomenological optical-intensity -> exchange-strength map.

    Illumination reduces the magnitude of the confining polarization, which
    lowers the inter-dot barrier and increases orbital overlap.  Modeled as
    the minimal monotone exponential

        J(I) = j0 * exp(-barrier * (1 - intensity_coeff * I)),

    with `barrier` the dark barrier height in units of the tunneling decay
    scale and `intensity_coeff` the fractional polarization reduction per
    unit intensity (caller-declared intensity units).  The dark value is
    j0 * exp(-barrier).  Isolated here so the functional form can be swapped
    without touching any budget logic.
    """

    j0_rad_per_s: float
    barrier: float
    intensity_coeff: float

    def __post_init__(self):
        if not (math.isfinite(self.j0_rad_per_s) and self.j0_rad_per_s > 0.0):
            raise ValueError(f"j0_rad_per_s must be > 0, got {self.j0_rad_per_s!r}")
        if not (math.isfinite(self.barrier) and self.barrier >= 0.0):
            raise ValueError(f"barrier must be >= 0, got {self.barrier!r}")
        if not (math.isfinite(self.intensity_coeff) and self.intensity_coeff >= 0.0):
            raise ValueError(f"intensity_coeff must be >= 0, got {self.intensity_coeff!r}")

    def exchange_at(self, intensity):
        """Exchange angular frequency at one admissible intensity sample."""
        if not math.isfinite(intensity) or intensity < 0.0:
            raise ValueError(f"intensity must be >= 0 and finite, got {intensity!r}")
        reduction = self.intensity_coeff * intensity
        if reduction > 1.0:
            raise ValueError(
                f"inadmissible intensity: polarization reduction {reduction:.3g} exceeds 1"
            )
        return self.j0_rad_per_s * math.exp(-self.barrier * (1.0 - reduction))


def rectification_exchange(rect_map, intensity_profile):
    """Exchange pulse profile J(t) driven by an optical intensity profile.

    intensity_profile is a sequence of (time_s, intensity) samples starting
    at t = 0 with strictly increasing times; output strength is monotone
    increasing in intensity, pointwise.
    """
    samples = tuple(intensity_profile)
    if len(samples) < 2:
        raise ValueError("intensity profile needs at least two (time, intensity) samples")
    return profile_pulse(tuple((float(ti), rect_map.exchange_at(float(ii))) for ti, ii in samples))
