"""Monte Carlo gate-infidelity estimation under control noise and dephasing.

Each sample draws one noisy pulse, builds the realized exchange unitary,
composes the dephasing channel over the realized duration, and scores
1 - entanglement fidelity against the fractional-SWAP target.  Samples use
counter-based RNG substreams keyed by (seed, sample index), so results are
bit-identical for any worker partitioning; aggregation always runs in
sample-index order.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .dephasing import DephasingSpec, dephasing_channel, flip_probability
from .gates import (
    PulseSpec,
    exchange_unitary,
    phase_from_pulse,
    pulse_for_target,
    swap_power_target,
)
from .noise import ControlNoiseSpec, sample_pulse_counted

HIST_N_BINS = 64
# Log-spaced bins over [1e-16, 1]; values below the range clamp into bin 0.
HIST_EDGES = np.logspace(-16.0, 0.0, HIST_N_BINS + 1)
HIST_EDGES.setflags(write=False)

SWEEP_AXES = ("sigma_a", "sigma_t", "t2", "target_alpha", "epsilon")
_AXIS_ALIASES = {"epsilon-reference-line": "epsilon", "epsilon_reference_line": "epsilon"}


@dataclass(frozen=True)
class McConfig:
    """Inputs of one Monte Carlo run."""

    n_samples: int
    seed: int
    target_alpha: float
    nominal: PulseSpec
    noise: ControlNoiseSpec
    dephasing: DephasingSpec | None = None
    sensitivity: float = 1.0

    def __post_init__(self):
        if int(self.n_samples) != self.n_samples or self.n_samples < 1:
            raise ValueError(f"n_samples must be an integer >= 1, got {self.n_samples!r}")
        object.__setattr__(self, "n_samples", int(self.n_samples))
        if int(self.seed) != self.seed or not (0 <= self.seed < 2**64):
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        object.__setattr__(self, "seed", int(self.seed))
        if not (math.isfinite(self.sensitivity) and self.sensitivity >= 0.0):
            raise ValueError(f"sensitivity must be >= 0 and finite, got {self.sensitivity!r}")


@dataclass(frozen=True)
class McResult:
    """Aggregated infidelity statistics; histogram counts follow HIST_EDGES."""

    mean_infidelity: float
    stderr: float
    min_infidelity: float
    max_infidelity: float
    histogram: tuple
    n_rejected: int


def substream(seed, index):
    """Independent per-sample generator from a counter-based key (seed, index)."""
    return np.random.Generator(np.random.Philox(key=np.array([seed, index], dtype=np.uint64)))


def _effective_noise(cfg):
    # Amplitude noise enters the exchange through the platform sensitivity.
    return replace(cfg.noise, sigma_a=cfg.sensitivity * cfg.noise.sigma_a)


def _sample_infidelity(index, cfg, eff_noise, target):
    rng = substream(cfg.seed, index)
    pulse, rejected = sample_pulse_counted(rng, cfg.nominal, eff_noise)
    u = exchange_unitary(phase_from_pulse(pulse))
    if cfg.dephasing is None:
        # |Tr(target^H U)|^2 / 16 without building the intermediate product.
        fid = abs(np.vdot(target, u)) ** 2 / 16.0
    else:
        channel = dephasing_channel(pulse.duration_s, cfg.dephasing)
        fid = sum(abs(np.vdot(target, k @ u)) ** 2 for k in channel.kraus) / 16.0
    return min(1.0, max(0.0, 1.0 - fid)), rejected


def estimate_infidelity(cfg, n_workers=1):
    """Run the Monte Carlo estimate; results are independent of n_workers.

    Sample values land in a preallocated array by sample index, and every
    reduction (mean, stderr, histogram, rejection count) runs over that
    ordered array, so any partitioning yields bit-identical McResults.
    """
    if n_workers < 1:
        raise ValueError(f"n_workers must be >= 1, got {n_workers!r}")
    n = cfg.n_samples
    eff_noise = _effective_noise(cfg)
    target = swap_power_target(cfg.target_alpha)
    values = np.empty(n)
    rejected = np.empty(n, dtype=np.int64)

    def run_block(start, stop):
        for i in range(start, stop):
            values[i], rejected[i] = _sample_infidelity(i, cfg, eff_noise, target)

    if n_workers == 1:
        run_block(0, n)
    else:
        bounds = np.linspace(0, n, n_workers + 1).astype(int)
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            futures = [
                pool.submit(run_block, bounds[k], bounds[k + 1]) for k in range(n_workers)
            ]
            for fut in futures:
                fut.result()

    mean = float(np.mean(values))
    stderr = float(np.std(values, ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    bins = np.clip(np.searchsorted(HIST_EDGES, values, side="right") - 1, 0, HIST_N_BINS - 1)
    histogram = tuple(int(c) for c in np.bincount(bins, minlength=HIST_N_BINS))
    return McResult(
        mean_infidelity=mean,
        stderr=stderr,
        min_infidelity=float(np.min(values)),
        max_infidelity=float(np.max(values)),
        histogram=histogram,
        n_rejected=int(np.sum(rejected)),
    )


def analytic_infidelity(cfg):
    """Small-noise prediction: (3/16) E[dtheta^2] plus the dephasing deficit.

    E[dtheta^2] combines any systematic pulse-area offset from the target
    with the quasi-static amplitude and timing variances; the dephasing term
    is 1 - (1-p1)(1-p2) at the nominal duration.
    """
    theta = phase_from_pulse(cfg.nominal)
    offset = theta - math.pi * cfg.target_alpha
    rel_var = (cfg.sensitivity * cfg.noise.sigma_a) ** 2 + (
        cfg.noise.sigma_t_s / cfg.nominal.duration_s
    ) ** 2
    coherent = (3.0 / 16.0) * (offset**2 + theta**2 * rel_var)
    if cfg.dephasing is None:
        return coherent
    p1 = flip_probability(cfg.nominal.duration_s, cfg.dephasing.t2_q1_s)
    p2 = flip_probability(cfg.nominal.duration_s, cfg.dephasing.t2_q2_s)
    return coherent + (1.0 - (1.0 - p1) * (1.0 - p2))


@dataclass(frozen=True)
class SweepPoint:
    """One sweep row: the axis value, its estimate, and the analytic reference."""

    axis: str
    value: float
    result: McResult
    analytic_prediction: float


def normalize_axis(axis):
    name = _AXIS_ALIASES.get(axis.strip().lower(), axis.strip().lower())
    if name not in SWEEP_AXES:
        raise ValueError(f"unknown sweep axis {axis!r}; expected one of {SWEEP_AXES}")
    return name


def _config_for(cfg, axis, value):
    if axis == "sigma_a":
        return replace(cfg, noise=replace(cfg.noise, sigma_a=value))
    if axis == "sigma_t":
        return replace(cfg, noise=replace(cfg.noise, sigma_t_s=value))
    if axis == "t2":
        return replace(cfg, dephasing=DephasingSpec(value))
    if axis == "target_alpha":
        # Retune the nominal pulse so each row studies a matched gate.
        return replace(
            cfg,
            target_alpha=value,
            nominal=pulse_for_target(value, cfg.nominal.duration_s),
        )
    return cfg  # epsilon: reference line only, the run is unchanged


def sweep(cfg, axis, values, n_workers=1):
    """One estimate per axis value, all with the template's seed.

    Rows are independent; the analytic reference column carries
    analytic_infidelity for physical axes and the threshold value itself
    for the epsilon reference axis.
    """
    axis = normalize_axis(axis)
    points = []
    for value in values:
        value = float(value)
        row_cfg = _config_for(cfg, axis, value)
        result = estimate_infidelity(row_cfg, n_workers=n_workers)
        reference = value if axis == "epsilon" else analytic_infidelity(row_cfg)
        points.append(
            SweepPoint(axis=axis, value=value, result=result, analytic_prediction=reference)
        )
    return tuple(points)
