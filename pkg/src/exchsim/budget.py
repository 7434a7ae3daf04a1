"""Analytic feasibility calculus for exchange-gate control technologies.

A technology is workable at threshold epsilon when some gate duration T
satisfies the joint budget

    sensitivity * sigma_a  +  sigma_t / T  <  epsilon      (control accuracy)
    T  <  epsilon * T2                                     (decoherence)

which yields a closed-form feasible window (t_min, t_max).  The amplitude
term is duration-independent, so the two constraints are enforced jointly
rather than via a fixed epsilon split (the most permissive reading of the
combined budget).  The control channel must also cover a bandwidth of at
least 1/T; that requirement is reported, and gates feasibility only in
strict mode, since band-integrated noise figures already reflect it.
"""

import configparser
import math
from dataclasses import dataclass

from .noise import ControlNoiseSpec

CONSTRAINTS = ("amplitude", "jitter", "decoherence", "bandwidth")


class SpecFileError(ValueError):
    """Malformed or invalid spec-file content, with a field-path message."""


@dataclass(frozen=True)
class PlatformSpec:
    """Qubit platform figures: T2 in seconds and the logarithmic control sensitivity."""

    t2_s: float
    sensitivity: float

    def __post_init__(self):
        if math.isnan(self.t2_s) or self.t2_s <= 0.0:
            raise ValueError(f"t2_s must be > 0, got {self.t2_s!r}")
        if not (math.isfinite(self.sensitivity) and self.sensitivity >= 0.0):
            raise ValueError(f"sensitivity must be >= 0 and finite, got {self.sensitivity!r}")


@dataclass(frozen=True)
class TechnologySpec:
    """Noise figures of one control technology."""

    name: str
    sigma_a: float
    sigma_t_s: float
    bw_low_hz: float
    bw_high_hz: float
    notes: str = ""

    def __post_init__(self):
        if not self.name:
            raise ValueError("technology name must be nonempty")
        # Reuse the ControlNoiseSpec invariants (sigma_a, sigma_t_s, band edges).
        ControlNoiseSpec(
            sigma_a=self.sigma_a,
            sigma_t_s=self.sigma_t_s,
            bw_low_hz=self.bw_low_hz,
            bw_high_hz=self.bw_high_hz,
        )

    def noise_spec(self, distribution="gaussian"):
        """The sampling-ready ControlNoiseSpec for this technology."""
        return ControlNoiseSpec(
            sigma_a=self.sigma_a,
            sigma_t_s=self.sigma_t_s,
            distribution=distribution,
            bw_low_hz=self.bw_low_hz,
            bw_high_hz=self.bw_high_hz,
        )


@dataclass(frozen=True)
class Threshold:
    """Fault-tolerance error threshold, a per-gate error rate in (0, 1)."""

    epsilon: float

    def __post_init__(self):
        if not (0.0 < self.epsilon < 1.0):
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon!r}")


@dataclass(frozen=True)
class FeasibilityReport:
    """Outcome of the budget analysis for one platform/technology/threshold triple.

    t_min_s is the smallest admissible duration under the combined accuracy
    budget (inf when amplitude noise alone exceeds it); t_max_s the
    decoherence ceiling.  jitter_floor_s = sigma_t / epsilon is the duration
    floor from jitter alone, reported so the threshold dependence of the
    timing verdict stays visible.  Improvement factors are exact ratios and
    equal 1.0 for non-limiting constraints.
    """

    feasible: bool
    t_window_s: tuple | None
    limiting_constraints: tuple
    improvement_factors: dict
    t_min_s: float
    t_max_s: float
    jitter_floor_s: float
    required_bandwidth_hz: float
    required_bandwidth_at_t_min_hz: float
    bandwidth_ok: bool


def _check_epsilon(epsilon):
    epsilon = float(epsilon)
    if not (0.0 < epsilon < 1.0):
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    return epsilon


def max_gate_time(epsilon, t2_s):
    """Decoherence ceiling on the gate duration: T < epsilon * T2."""
    epsilon = _check_epsilon(epsilon)
    if math.isnan(t2_s) or t2_s < 0.0:
        raise ValueError(f"t2_s must be >= 0, got {t2_s!r}")
    return epsilon * t2_s


def min_gate_time_from_jitter(sigma_t_s, eps_share):
    """Duration floor sigma_t / eps_share so that the jitter error stays below eps_share."""
    if not (eps_share > 0.0):
        raise ValueError(f"eps_share must be > 0, got {eps_share!r}")
    if math.isnan(sigma_t_s) or sigma_t_s < 0.0:
        raise ValueError(f"sigma_t_s must be >= 0, got {sigma_t_s!r}")
    return sigma_t_s / eps_share


def required_bandwidth(duration_s):
    """Control bandwidth needed for a gate of the given duration: 1/T."""
    if not (duration_s > 0.0):
        raise ValueError(f"duration_s must be > 0, got {duration_s!r}")
    return 1.0 / duration_s


def _inverse_duration(t_s):
    if t_s == 0.0:
        return math.inf
    if math.isinf(t_s):
        return 0.0
    return 1.0 / t_s


def feasibility(platform, tech, epsilon, strict_bandwidth=False):
    """Evaluate the full budget; infeasibility is a result, not an error.

    The per-gate relative exchange error is a = sensitivity * sigma_a.  If
    a >= epsilon no duration helps, and the jitter floor is assessed against
    the full budget (no share remains for it).  Otherwise the feasible
    window is (sigma_t / (epsilon - a), epsilon * T2).

    With strict_bandwidth the window additionally requires the technology
    band to cover 1/T.
    """
    epsilon = _check_epsilon(epsilon)
    amp_error = platform.sensitivity * tech.sigma_a
    t_max = epsilon * platform.t2_s
    jitter_floor = tech.sigma_t_s / epsilon
    factors = dict.fromkeys(CONSTRAINTS, 1.0)
    limiting = []

    if amp_error >= epsilon:
        factors["amplitude"] = amp_error / epsilon
        limiting.append("amplitude")
        t_min = math.inf
        jitter_bound = jitter_floor
    else:
        t_min = tech.sigma_t_s / (epsilon - amp_error)
        jitter_bound = t_min
    if tech.sigma_t_s > 0.0 and jitter_bound >= t_max:
        factors["jitter"] = jitter_bound / t_max
        limiting.append("jitter")

    bw_needed = _inverse_duration(t_max)
    bandwidth_ok = tech.bw_high_hz > bw_needed
    window_low = t_min
    if strict_bandwidth:
        window_low = max(window_low, _inverse_duration(tech.bw_high_hz))
        if not bandwidth_ok:
            factors["bandwidth"] = bw_needed / tech.bw_high_hz
            limiting.append("bandwidth")

    feasible = window_low < t_max
    ordered = tuple(name for name in CONSTRAINTS if name in limiting)
    return FeasibilityReport(
        feasible=feasible,
        t_window_s=(window_low, t_max) if feasible else None,
        limiting_constraints=ordered,
        improvement_factors=factors,
        t_min_s=t_min,
        t_max_s=t_max,
        jitter_floor_s=jitter_floor,
        required_bandwidth_hz=bw_needed,
        required_bandwidth_at_t_min_hz=_inverse_duration(t_min),
        bandwidth_ok=bandwidth_ok,
    )


# ---------------------------------------------------------------------------
# Built-in catalog

SI_SPIN = PlatformSpec(t2_s=0.5e-3, sensitivity=1.0)


def builtin_platforms():
    """Named qubit platforms available to the CLI."""
    return {"si-spin": SI_SPIN}


def builtin_catalog():
    """Reference control technologies with band-integrated noise figures."""
    return (
        TechnologySpec(
            name="electrical-pulse-generator",
            sigma_a=1e-2,
            sigma_t_s=100e-12,
            bw_low_hz=0.0,
            bw_high_hz=1e9,
            notes=(
                "Best available GHz-range electrical pulse generator: "
                "relative amplitude stability ~1e-2, pulse-length jitter ~100 ps."
            ),
        ),
        TechnologySpec(
            name="modelocked-laser-10GHz",
            sigma_a=5e-4,
            sigma_t_s=240e-15,
            bw_low_hz=10.0,
            bw_high_hz=5e9,
            notes=(
                "Externally mode-locked femtosecond laser at 10 GHz repetition "
                "rate: 0.05% intensity noise and 240 fs timing jitter, both "
                "integrated over 10 Hz - 5 GHz."
            ),
        ),
    )


# ---------------------------------------------------------------------------
# Spec-file ingestion (INI grammar; see README for the full schema)

_PLATFORM_KEYS = {"t2_seconds": True, "sensitivity": True}
_TECHNOLOGY_KEYS = {
    "name": True,
    "sigma_a": True,
    "sigma_t_seconds": True,
    "bw_low_hz": True,
    "bw_high_hz": True,
    "notes": False,
}
_THRESHOLD_KEYS = {"epsilon": True}


@dataclass(frozen=True)
class LoadedSpecs:
    """Validated records parsed from one spec file."""

    platform: PlatformSpec | None
    technologies: tuple
    threshold: Threshold | None


def _parse_number(section, key, raw):
    try:
        value = float(raw)
    except ValueError:
        raise SpecFileError(f"{section}.{key}: not a number: {raw!r}") from None
    if math.isnan(value):
        raise SpecFileError(f"{section}.{key}: NaN is not allowed")
    return value


def _check_keys(section, present, allowed):
    for key in present:
        if key not in allowed:
            raise SpecFileError(f"{section}: unknown key {key!r}")
    for key, required in allowed.items():
        if required and key not in present:
            raise SpecFileError(f"{section}: missing required key {key!r}")


def _build(section, factory, kwargs):
    try:
        return factory(**kwargs)
    except ValueError as exc:
        raise SpecFileError(f"{section}: {exc}") from None


def load_specs(text):
    """Parse spec-file content into platform/technology/threshold records.

    Sections: [platform] {t2_seconds, sensitivity}, [threshold] {epsilon},
    and one or more technology sections named [technology] or
    [technology.<label>] {name, sigma_a, sigma_t_seconds, bw_low_hz,
    bw_high_hz, notes?}.  Numbers accept scientific notation.  Unknown
    sections or keys are errors.
    """
    parser = configparser.ConfigParser(interpolation=None, strict=True)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise SpecFileError(f"unparseable spec file: {exc}") from None

    platform = None
    threshold = None
    technologies = []
    for section in parser.sections():
        items = dict(parser.items(section))
        if section == "platform":
            _check_keys(section, items, _PLATFORM_KEYS)
            platform = _build(
                section,
                PlatformSpec,
                {
                    "t2_s": _parse_number(section, "t2_seconds", items["t2_seconds"]),
                    "sensitivity": _parse_number(section, "sensitivity", items["sensitivity"]),
                },
            )
        elif section == "threshold":
            _check_keys(section, items, _THRESHOLD_KEYS)
            threshold = _build(
                section,
                Threshold,
                {"epsilon": _parse_number(section, "epsilon", items["epsilon"])},
            )
        elif section == "technology" or section.startswith("technology."):
            _check_keys(section, items, _TECHNOLOGY_KEYS)
            technologies.append(
                _build(
                    section,
                    TechnologySpec,
                    {
                        "name": items["name"],
                        "sigma_a": _parse_number(section, "sigma_a", items["sigma_a"]),
                        "sigma_t_s": _parse_number(
                            section, "sigma_t_seconds", items["sigma_t_seconds"]
                        ),
                        "bw_low_hz": _parse_number(section, "bw_low_hz", items["bw_low_hz"]),
                        "bw_high_hz": _parse_number(section, "bw_high_hz", items["bw_high_hz"]),
                        "notes": items.get("notes", ""),
                    },
                )
            )
        else:
            raise SpecFileError(f"unknown section {section!r}")
    return LoadedSpecs(
        platform=platform, technologies=tuple(technologies), threshold=threshold
    )


def merge_catalog(extra_technologies):
    """Builtin catalog plus user entries; duplicate names are rejected."""
    merged = list(builtin_catalog())
    seen = {tech.name for tech in merged}
    for tech in extra_technologies:
        if tech.name in seen:
            raise ValueError(f"technology name collision: {tech.name!r}")
        seen.add(tech.name)
        merged.append(tech)
    return tuple(merged)
