"""exchsim: pulsed-exchange two-qubit gates, control-noise budgets, and feasibility analysis."""

__version__ = "0.1.0"

from .core import (
    SWAP,
    density_from_pure,
    expm_hermitian,
    kron,
    process_fidelity,
    spin_dot_operator,
)
from .gates import (
    HBAR_JS,
    PulseSpec,
    constant_pulse,
    exchange_rate_from_energy,
    exchange_unitary,
    gate_error_vs_phase,
    phase_from_pulse,
    profile_pulse,
    pulse_for_target,
    relative_error_to_phase_error,
    relative_error_to_phase_error_first_order,
    swap_power_target,
)
from .noise import (
    ControlNoiseSpec,
    RectificationMap,
    RejectedSampleError,
    db_to_amplitude_snr,
    db_to_power_snr,
    integrated_snr,
    rectification_exchange,
    sample_pulse,
    sensitivity_map,
    shot_noise_relative_amplitude,
)
from .dephasing import (
    DephasingSpec,
    QuantumChannel4,
    apply_channel,
    average_fidelity_from_entanglement,
    compose_channel_after_unitary,
    dephasing_channel,
    entanglement_fidelity,
)
from .budget import (
    FeasibilityReport,
    PlatformSpec,
    TechnologySpec,
    Threshold,
    builtin_catalog,
    builtin_platforms,
    feasibility,
    load_specs,
    max_gate_time,
    min_gate_time_from_jitter,
    required_bandwidth,
)
from .montecarlo import McConfig, McResult, analytic_infidelity, estimate_infidelity, sweep
