import math

import numpy as np
import pytest

from spincorr.nmr import (
    Delay,
    HardPulse,
    MoleculeParams,
    PulseSequence,
    ZRotation,
    compile_controlled,
    event_text,
    internal_hamiltonian,
    refocused_delay,
    run_nmr_experiment,
    sequence_propagator,
    sequence_text,
    simulate_sequence,
    system_zeeman,
)
from spincorr.oracle import correlation_direct
from spincorr.protocol import CorrelationSpec, controlled_pauli, run_protocol
from spincorr.qcore import (
    ConstHamiltonian,
    ExpDecay,
    KET_0,
    PauliAxis,
    TimeDepHamiltonian,
    normalized,
    pauli,
    propagator_const,
    pure_density,
    tensor,
)
from spincorr.verification import phase_aligned_distance

X, Y, Z = PauliAxis.X, PauliAxis.Y, PauliAxis.Z

ON_RESONANCE = MoleculeParams.with_system_offset(0.0)
FIG4 = MoleculeParams.with_system_offset(100.0)


class TestInternalHamiltonian:
    def test_system_offset_only(self):
        h = internal_hamiltonian(MoleculeParams(nu2=100.0, j12=0.0))
        expected = tensor(np.eye(2, dtype=complex), -100 * math.pi * pauli(Z))
        assert np.allclose(h.matrix(), expected, atol=1e-12)

    def test_all_on_resonance_uncoupled_is_zero(self):
        h = internal_hamiltonian(MoleculeParams(nu1=7.0, nu1_ref=7.0, nu2=3.0, nu2_ref=3.0,
                                                j12=0.0))
        assert np.max(np.abs(h.matrix())) == 0

    def test_all_zero_parameters(self):
        assert np.max(np.abs(internal_hamiltonian(MoleculeParams(j12=0.0)).matrix())) == 0

    def test_coupling_term(self):
        h = internal_hamiltonian(MoleculeParams(j12=200.0))
        z = np.diag([1.0, -1.0, -1.0, 1.0]).astype(complex)
        assert np.allclose(h.matrix(), 100 * math.pi * z, atol=1e-12)


class TestCompileControlled:
    def test_z_gate_exact_without_phase_freedom(self):
        for molecule in (ON_RESONANCE, FIG4, MoleculeParams(nu1=50.0, nu2=-80.0, j12=180.0)):
            net = sequence_propagator(compile_controlled(Z, molecule), molecule)
            assert np.max(np.abs(net - np.diag([1, 1, 1j, -1j]))) < 1e-12

    @pytest.mark.parametrize("axis", [X, Y])
    def test_xy_gates_up_to_global_phase(self, axis):
        for molecule in (ON_RESONANCE, FIG4, MoleculeParams(nu1=-120.0, nu2=260.0, j12=321.0)):
            net = sequence_propagator(compile_controlled(axis, molecule), molecule)
            assert phase_aligned_distance(net, controlled_pauli(axis)) < 1e-12

    def test_on_resonance_z_sequence_structure(self):
        seq = compile_controlled(Z, ON_RESONANCE)
        tau = 1.0 / (2.0 * ON_RESONANCE.j12)
        assert seq.events == (ZRotation(2, -math.pi / 2), Delay(tau, coupling_on=True))

    def test_on_resonance_event_counts(self):
        assert len(compile_controlled(Z, ON_RESONANCE)) == 2
        assert len(compile_controlled(Y, ON_RESONANCE)) == 4
        assert len(compile_controlled(X, ON_RESONANCE)) == 5

    @pytest.mark.parametrize("axis", [X, Y, Z])
    def test_xy_only_expansion_preserves_propagator(self, axis):
        for molecule in (ON_RESONANCE, FIG4):
            plain = sequence_propagator(compile_controlled(axis, molecule), molecule)
            expanded_seq = compile_controlled(axis, molecule, xy_only=True)
            assert not any(isinstance(ev, ZRotation) for ev in expanded_seq.events)
            expanded = sequence_propagator(expanded_seq, molecule)
            assert np.max(np.abs(expanded - plain)) < 1e-12

    def test_requires_positive_coupling(self):
        with pytest.raises(ValueError, match="positive J"):
            compile_controlled(Z, MoleculeParams(j12=0.0))


class TestRefocusedDelay:
    def test_plain_delay_propagator(self):
        d = 1.7e-3
        net = sequence_propagator(refocused_delay(d), FIG4)
        expected = tensor(np.eye(2, dtype=complex),
                          propagator_const(system_zeeman(FIG4), d))
        assert np.max(np.abs(net - expected)) < 1e-13

    def test_inverted_delay_acts_as_reversed_evolution(self):
        d = 2.3e-3
        net = sequence_propagator(refocused_delay(d, invert=True), FIG4)
        reversed_evo = tensor(np.eye(2, dtype=complex),
                              propagator_const(system_zeeman(FIG4), -d))
        # equality up to the -1 from the pi-pulse pair
        assert phase_aligned_distance(net, reversed_evo) < 1e-12
        # density-matrix action is identical
        rng = np.random.default_rng(1)
        psi = normalized(rng.normal(size=4) + 1j * rng.normal(size=4))
        rho = pure_density(psi)
        assert np.max(np.abs(net @ rho @ net.conj().T
                             - reversed_evo @ rho @ reversed_evo.conj().T)) < 1e-12

    def test_zero_duration_inverted_is_identity_up_to_phase(self):
        net = sequence_propagator(refocused_delay(0.0, invert=True), FIG4)
        assert phase_aligned_distance(net, np.eye(4, dtype=complex)) < 1e-12

    def test_rejects_negative_duration(self):
        with pytest.raises(ValueError):
            refocused_delay(-1e-3)


class TestSimulateSequence:
    def test_empty_sequence_is_identity(self):
        rng = np.random.default_rng(2)
        psi = normalized(rng.normal(size=4) + 1j * rng.normal(size=4))
        rho = pure_density(psi)
        assert np.array_equal(simulate_sequence(PulseSequence(()), FIG4, rho), rho)

    def test_compiled_z_gate_on_superposition(self):
        # (|00> + |10>)/sqrt(2) picks up i on the |10> branch
        psi_in = np.array([1, 0, 1, 0], dtype=complex) / math.sqrt(2)
        psi_out = np.array([1, 0, 1j, 0], dtype=complex) / math.sqrt(2)
        rho = simulate_sequence(compile_controlled(Z, ON_RESONANCE), ON_RESONANCE,
                                pure_density(psi_in))
        assert np.max(np.abs(rho - pure_density(psi_out))) < 1e-12

    def test_pi_pulse_flips_system(self):
        rho00 = pure_density(np.array([1, 0, 0, 0], dtype=complex))
        rho01 = pure_density(np.array([0, 1, 0, 0], dtype=complex))
        seq = PulseSequence((HardPulse(2, X, math.pi),))
        assert np.max(np.abs(simulate_sequence(seq, FIG4, rho00) - rho01)) < 1e-12

    def test_rejects_bad_density(self):
        with pytest.raises(ValueError):
            simulate_sequence(PulseSequence(()), FIG4, np.eye(4, dtype=complex))  # trace 4

    def test_delay_flag_validation(self):
        with pytest.raises(ValueError, match="exactly one"):
            Delay(1e-3, coupling_on=True, decouple_system_free=True)
        with pytest.raises(ValueError, match="exactly one"):
            Delay(1e-3)


class TestRunNmrExperiment:
    def test_two_time_quarter_period(self):
        spec = CorrelationSpec(((X, 0.0), (Y, 2.5e-3)))
        f = run_nmr_experiment(spec, FIG4, KET_0)
        ideal = run_protocol(spec, ConstHamiltonian(hz=-100 * math.pi), KET_0).f
        assert abs(f - (-1)) < 1e-8
        assert abs(f - ideal) < 1e-8

    def test_three_time_inverted_evolution(self):
        molecule = MoleculeParams.with_system_offset(200.0)
        h = ConstHamiltonian(hz=-200 * math.pi)
        for t1, t2 in ((4e-3, 1e-3), (3.5e-3, 0.5e-3)):
            spec = CorrelationSpec(((Z, 0.0), (Y, t1), (Y, t2)))
            f = run_nmr_experiment(spec, molecule, KET_0)
            expected = correlation_direct(spec, h, KET_0)
            assert abs(expected - np.exp(-1j * 400 * math.pi * (t2 - t1))) < 1e-12
            assert abs(f - expected) < 1e-8

    def test_repeated_z_gate(self):
        spec = CorrelationSpec(((Z, 0.0), (Z, 0.0)))
        assert abs(run_nmr_experiment(spec, FIG4, KET_0) - 1) < 1e-10

    def test_time_dependent_drive_window(self):
        drive = TimeDepHamiltonian(((Y, ExpDecay(500 * math.pi, 300.0)),))
        psi = normalized(np.array([1, -1j]))
        molecule = MoleculeParams.with_system_offset(0.0)
        for t in (0.48e-3, 2.88e-3):
            spec = CorrelationSpec(((X, 0.0), (X, t)))
            f = run_nmr_experiment(spec, molecule, psi, timedep=drive, steps=1024)
            ideal = run_protocol(spec, drive, psi, steps=1024).f
            assert abs(f - ideal) < 1e-10

    def test_timedep_rejects_non_monotonic(self):
        drive = TimeDepHamiltonian(((Y, ExpDecay(100.0, 10.0)),))
        spec = CorrelationSpec(((X, 0.0), (X, 3e-3), (X, 1e-3)))
        with pytest.raises(ValueError, match="non-decreasing"):
            run_nmr_experiment(spec, ON_RESONANCE, KET_0, timedep=drive)

    def test_xy_only_pipeline_agrees(self):
        spec = CorrelationSpec(((Y, 0.0), (X, 1.3e-3)))
        rng = np.random.default_rng(3)
        psi = normalized(rng.normal(size=2) + 1j * rng.normal(size=2))
        plain = run_nmr_experiment(spec, FIG4, psi)
        expanded = run_nmr_experiment(spec, FIG4, psi, xy_only=True)
        assert abs(plain - expanded) < 1e-10

    def test_randomized_pipeline_equivalence(self):
        rng = np.random.default_rng(5)
        worst = 0.0
        for _ in range(30):
            n = int(rng.integers(1, 6))
            axes = [list(PauliAxis)[i] for i in rng.integers(0, 3, size=n)]
            times = rng.uniform(0.0, 10e-3, size=n)
            times[0] = 0.0
            spec = CorrelationSpec(tuple(zip(axes, times)))
            delta_nu = float(rng.uniform(-400.0, 400.0))
            molecule = MoleculeParams.with_system_offset(delta_nu, j12=float(rng.uniform(100, 400)))
            psi = normalized(rng.normal(size=2) + 1j * rng.normal(size=2))
            f = run_nmr_experiment(spec, molecule, psi)
            ideal = run_protocol(spec, ConstHamiltonian(hz=-math.pi * delta_nu), psi).f
            worst = max(worst, abs(f - ideal))
        assert worst < 1e-8


class TestWireFormat:
    def test_golden_cz_sequence(self):
        text = sequence_text(compile_controlled(Z, ON_RESONANCE))
        assert text == ("ZROT nucleus=2 angle=-1.5707963267948966\n"
                        "DELAY dur=0.0023261223540358223 coupling=on\n")

    def test_golden_cy_sequence(self):
        text = sequence_text(compile_controlled(Y, ON_RESONANCE))
        assert text == ("PULSE nucleus=2 axis=y angle=1.5707963267948966\n"
                        "PULSE nucleus=2 axis=x angle=-1.5707963267948966\n"
                        "DELAY dur=0.0023261223540358223 coupling=on\n"
                        "PULSE nucleus=2 axis=x angle=1.5707963267948966\n")

    def test_golden_cx_sequence(self):
        text = sequence_text(compile_controlled(X, ON_RESONANCE))
        assert text == ("PULSE nucleus=2 axis=y angle=1.5707963267948966\n"
                        "DELAY dur=0.0023261223540358223 coupling=on\n"
                        "PULSE nucleus=2 axis=x angle=1.5707963267948966\n"
                        "ZROT nucleus=2 angle=-1.5707963267948966\n"
                        "ZROT nucleus=1 angle=1.5707963267948966\n")

    def test_decoupled_delay_line(self):
        assert event_text(Delay(1.5e-3, decouple_system_free=True)) == \
            "DELAY dur=0.0015 coupling=off"

    def test_drive_windows_have_no_text_form(self):
        from spincorr.nmr import SystemDrive
        drive = SystemDrive(1e-3, TimeDepHamiltonian(((Y, ExpDecay(1.0, 1.0)),)))
        with pytest.raises(TypeError, match="no text form"):
            event_text(drive)
