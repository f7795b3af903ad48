"""Ancilla-assisted n-time Pauli correlation functions on a spin-1/2 system.

The package has three independent computation routes for the same physics --
the ancilla circuit (`protocol`), a brute-force Heisenberg-picture evaluation
(`oracle`) and a pulse-level two-spin simulation (`nmr`) -- plus Kubo linear
response built on top of the measured correlations (`response`) and a
config-driven sweep runner with CSV output (`experiments`, `cli`).
"""

from .qcore import (
    ConstHamiltonian,
    ExpDecay,
    PauliAxis,
    Sampled,
    TimeDepHamiltonian,
    TwoSpinHamiltonian,
    expect,
    pauli,
    propagator_const,
    propagator_timedep,
    rotation,
    tensor,
    thermal_state,
)
from .protocol import (
    CorrelationSpec,
    ProtocolResult,
    controlled_pauli,
    phase_correction,
    run_protocol,
    run_protocol_thermal,
)
from .oracle import correlation_direct, heisenberg_op
from .response import (
    PerturbationEnvelope,
    QuadratureError,
    ResponseParams,
    corrected_moment,
    response_function,
    second_order_correction,
    susceptibility,
)
from .nmr import (
    Delay,
    HardPulse,
    MoleculeParams,
    PulseSequence,
    SystemDrive,
    ZRotation,
    compile_controlled,
    internal_hamiltonian,
    refocused_delay,
    run_nmr_experiment,
    sequence_propagator,
    sequence_text,
    simulate_sequence,
)
from .experiments import (
    ConfigError,
    ExperimentConfig,
    SweepRow,
    load_config,
    order_scan_spec,
    parse_config,
    rows_to_csv,
    run_config,
)
from .verification import SUITES, SuiteReport, phase_aligned_distance, run_suite

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
