"""Pulse-level realization of the ancilla protocol on a weakly coupled spin pair.

The controlled gates are compiled into hard pulses, virtual z-rotations and a
J-coupling delay of length 1/(2*J12); free evolutions between gates become
decoupled delays (heteronuclear decoupling is idealized as exact removal of
the J term and of the ancilla Zeeman term), optionally wrapped in a pi-pulse
pair to invert the sign of a z-type system Hamiltonian.

The compiled sequences store events left-to-right in time; written as an
operator product they read right-to-left. Hard pulses are instantaneous ideal
rotations: finite pulse width, RF inhomogeneity and relaxation are not modeled.

During the 1/(2*J12) coupled delay the full internal Hamiltonian acts, so for
off-resonance spins the compiler appends compensating virtual z-rotations that
cancel the Zeeman phases accrued inside the gate. On resonance these vanish
and the emitted sequences are exactly the textbook decompositions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qcore import (
    ConstHamiltonian,
    ExpDecay,
    IDENTITY_2,
    KET_PLUS,
    PauliAxis,
    TimeDepHamiltonian,
    TwoSpinHamiltonian,
    check_density,
    check_state,
    expect,
    pauli,
    propagator_const,
    propagator_timedep,
    pure_density,
    rotation,
    tensor,
)
from .protocol import CorrelationSpec, controlled_pauli, phase_correction

ANCILLA = 1
SYSTEM = 2


@dataclass(frozen=True)
class MoleculeParams:
    """Spin-pair parameters in Hz; relaxation times are informational only.

    Nucleus 1 is the ancilla, nucleus 2 the system. The defaults are nominal
    values for a two-spin heteronuclear sample: J12 = 214.95 Hz and relaxation
    times of a few seconds, far above the millisecond sequences compiled here.
    """

    nu1: float = 0.0
    nu2: float = 0.0
    nu1_ref: float = 0.0
    nu2_ref: float = 0.0
    j12: float = 214.95
    t1_relax: float = 7.9
    t2_relax: float = 3.3

    def __post_init__(self):
        for name in ("nu1", "nu2", "nu1_ref", "nu2_ref", "j12"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"MoleculeParams.{name} must be finite")

    @classmethod
    def with_system_offset(cls, delta_nu_hz: float, j12: float = 214.95) -> "MoleculeParams":
        """Ancilla on resonance, system offset by delta_nu_hz."""
        return cls(nu1=0.0, nu1_ref=0.0, nu2=delta_nu_hz, nu2_ref=0.0, j12=j12)

    @property
    def offset1(self) -> float:
        return self.nu1 - self.nu1_ref

    @property
    def offset2(self) -> float:
        return self.nu2 - self.nu2_ref


@dataclass(frozen=True)
class HardPulse:
    """Instantaneous rotation exp(-i angle sigma_axis / 2) on one nucleus."""

    nucleus: int
    axis: PauliAxis
    angle: float

    def __post_init__(self):
        if self.nucleus not in (ANCILLA, SYSTEM):
            raise ValueError("nucleus must be 1 or 2")
        if self.axis not in (PauliAxis.X, PauliAxis.Y):
            raise ValueError("hard pulses are x or y rotations")
        if not math.isfinite(self.angle):
            raise ValueError("pulse angle must be finite")


@dataclass(frozen=True)
class ZRotation:
    """Virtual z-rotation (frame bookkeeping); expandable into x/y pulses."""

    nucleus: int
    angle: float

    def __post_init__(self):
        if self.nucleus not in (ANCILLA, SYSTEM):
            raise ValueError("nucleus must be 1 or 2")
        if not math.isfinite(self.angle):
            raise ValueError("rotation angle must be finite")


@dataclass(frozen=True)
class Delay:
    """Evolution window: either the full coupled Hamiltonian or a decoupled
    window where only the system Zeeman term survives."""

    duration: float
    coupling_on: bool = False
    decouple_system_free: bool = False

    def __post_init__(self):
        if not math.isfinite(self.duration) or self.duration < 0:
            raise ValueError("delay duration must be finite and >= 0")
        if self.coupling_on == self.decouple_system_free:
            raise ValueError("exactly one of coupling_on / decouple_system_free must be set")


@dataclass(frozen=True)
class SystemDrive:
    """Decoupled window with a shaped RF drive on the system nucleus.

    The drive Hamiltonian is evaluated on absolute time [t_start,
    t_start + duration] with the midpoint stepping rule.
    """

    duration: float
    hamiltonian: TimeDepHamiltonian
    t_start: float = 0.0
    steps: int = 1024

    def __post_init__(self):
        if not math.isfinite(self.duration) or self.duration < 0:
            raise ValueError("drive duration must be finite and >= 0")
        if self.steps < 1:
            raise ValueError("steps must be >= 1")


@dataclass(frozen=True)
class PulseSequence:
    """Ordered pulse-program events, applied left-to-right in time."""

    events: tuple

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))

    def __add__(self, other: "PulseSequence") -> "PulseSequence":
        return PulseSequence(self.events + other.events)

    def __len__(self) -> int:
        return len(self.events)


def internal_hamiltonian(p: MoleculeParams) -> TwoSpinHamiltonian:
    """Weak-coupling internal Hamiltonian of the pair, rad/s.

    H = -pi*(nu1 - nu1_ref) sz x I - pi*(nu2 - nu2_ref) I x sz
        + (pi*J12/2) sz x sz
    """
    return TwoSpinHamiltonian(
        hz1=-math.pi * p.offset1,
        hz2=-math.pi * p.offset2,
        jzz=0.5 * math.pi * p.j12,
    )


def system_zeeman(p: MoleculeParams) -> ConstHamiltonian:
    """System-only Zeeman term -pi*(nu2 - nu2_ref) sigma_z, rad/s."""
    return ConstHamiltonian(hz=-math.pi * p.offset2)


def _zeeman_compensation(p: MoleculeParams, duration: float) -> list:
    """Virtual z-rotations undoing Zeeman phases accrued during a coupled delay."""
    h = internal_hamiltonian(p)
    events = []
    if h.hz1 != 0.0:
        events.append(ZRotation(ANCILLA, -2.0 * h.hz1 * duration))
    if h.hz2 != 0.0:
        events.append(ZRotation(SYSTEM, -2.0 * h.hz2 * duration))
    return events


def _expand_z(event: ZRotation) -> list:
    # Rz(theta) = Ry(pi/2) Rx(-theta) Ry(-pi/2), applied right to left
    return [
        HardPulse(event.nucleus, PauliAxis.Y, -math.pi / 2),
        HardPulse(event.nucleus, PauliAxis.X, -event.angle),
        HardPulse(event.nucleus, PauliAxis.Y, math.pi / 2),
    ]


def compile_controlled(axis: PauliAxis, p: MoleculeParams, xy_only: bool = False) -> PulseSequence:
    """Pulse sequence realizing the controlled gate for `axis`.

    The x and y gates match controlled_pauli up to a global phase; the z gate
    matches it exactly. With xy_only every virtual z-rotation is expanded into
    x/y hard pulses.
    """
    if p.j12 <= 0.0:
        raise ValueError("compilation requires a positive J coupling")
    tau = 1.0 / (2.0 * p.j12)
    coupled = Delay(tau, coupling_on=True)
    comp = _zeeman_compensation(p, tau)

    if axis is PauliAxis.Z:
        events = [ZRotation(SYSTEM, -math.pi / 2), coupled, *comp]
    elif axis is PauliAxis.X:
        events = [
            HardPulse(SYSTEM, PauliAxis.Y, math.pi / 2),
            coupled,
            *comp,
            HardPulse(SYSTEM, PauliAxis.X, math.pi / 2),
            ZRotation(SYSTEM, -math.pi / 2),
            ZRotation(ANCILLA, math.pi / 2),
        ]
    elif axis is PauliAxis.Y:
        events = [
            HardPulse(SYSTEM, PauliAxis.Y, math.pi / 2),
            HardPulse(SYSTEM, PauliAxis.X, -math.pi / 2),
            coupled,
            *comp,
            HardPulse(SYSTEM, PauliAxis.X, math.pi / 2),
        ]
    else:
        raise ValueError(f"unknown axis {axis!r}")

    if xy_only:
        expanded = []
        for ev in events:
            expanded.extend(_expand_z(ev) if isinstance(ev, ZRotation) else [ev])
        events = expanded
    return PulseSequence(events)


def refocused_delay(duration: float, invert: bool = False) -> PulseSequence:
    """Decoupled free-evolution window; with invert, a pi-pulse pair on the
    system flips the sign of its z-type Hamiltonian (up to a global phase)."""
    if duration < 0 or not math.isfinite(duration):
        raise ValueError("duration must be finite and >= 0")
    free = Delay(duration, decouple_system_free=True)
    if not invert:
        return PulseSequence([free])
    flip = HardPulse(SYSTEM, PauliAxis.X, math.pi)
    return PulseSequence([flip, free, flip])


def _nucleus_op(nucleus: int, u: np.ndarray) -> np.ndarray:
    return tensor(u, IDENTITY_2) if nucleus == ANCILLA else tensor(IDENTITY_2, u)


def event_propagator(event, p: MoleculeParams) -> np.ndarray:
    """4x4 unitary implemented by a single event."""
    if isinstance(event, HardPulse):
        return _nucleus_op(event.nucleus, rotation(event.axis, event.angle))
    if isinstance(event, ZRotation):
        return _nucleus_op(event.nucleus, rotation(PauliAxis.Z, event.angle))
    if isinstance(event, Delay):
        if event.coupling_on:
            return internal_hamiltonian(p).propagator(event.duration)
        return _nucleus_op(SYSTEM, propagator_const(system_zeeman(p), event.duration))
    if isinstance(event, SystemDrive):
        h = event.hamiltonian
        zee = system_zeeman(p)
        if zee.hz != 0.0:
            h = h.with_term(PauliAxis.Z, ExpDecay(zee.hz, 0.0))
        u = propagator_timedep(h, event.t_start, event.t_start + event.duration, event.steps)
        return _nucleus_op(SYSTEM, u)
    raise TypeError(f"malformed pulse event {event!r}")


def sequence_propagator(seq: PulseSequence, p: MoleculeParams) -> np.ndarray:
    """Net 4x4 unitary of the whole sequence."""
    u = np.eye(4, dtype=complex)
    for ev in seq.events:
        u = event_propagator(ev, p) @ u
    return u


def simulate_sequence(seq: PulseSequence, p: MoleculeParams, rho_in: np.ndarray) -> np.ndarray:
    """Propagate a 4x4 density matrix through the sequence."""
    rho = check_density(np.asarray(rho_in, dtype=complex))
    if rho.shape[0] != 4:
        raise ValueError("simulate_sequence expects a two-spin density matrix")
    for ev in seq.events:
        u = event_propagator(ev, p)
        rho = u @ rho @ u.conj().T
    return rho


def run_nmr_experiment(spec: CorrelationSpec, p: MoleculeParams, psi_sys: np.ndarray,
                       timedep: TimeDepHamiltonian | None = None,
                       steps: int = 1024, xy_only: bool = False) -> complex:
    """Compile and simulate the full pulse program for one correlation value.

    The ancilla starts in |+> and the system in psi_sys (ideal state
    assignment). Between gates the system evolves for t_{k+1} - t_k under its
    Zeeman term (negative increments use the inverting pi-pulse pair), or
    under the shaped drive when `timedep` is given.
    """
    psi_sys = check_state(np.asarray(psi_sys, dtype=complex))
    if psi_sys.shape[0] != 2:
        raise ValueError("system state must be 2-dimensional")
    if timedep is not None and not spec.times_non_decreasing():
        raise ValueError("time-dependent drives require non-decreasing operator times")

    events = []
    for k, (axis, _) in enumerate(spec.ops):
        events.extend(compile_controlled(axis, p, xy_only=xy_only).events)
        if k < spec.order - 1:
            dt = spec.times[k + 1] - spec.times[k]
            if timedep is not None:
                events.append(SystemDrive(dt, timedep, t_start=spec.times[k], steps=steps))
            else:
                events.extend(refocused_delay(abs(dt), invert=dt < 0).events)

    rho0 = tensor(pure_density(KET_PLUS), pure_density(psi_sys))
    rho = simulate_sequence(PulseSequence(events), p, rho0)
    sx = expect(tensor(pauli(PauliAxis.X), IDENTITY_2), rho).real
    sy = expect(tensor(pauli(PauliAxis.Y), IDENTITY_2), rho).real
    r = spec.count_axis(PauliAxis.Y)
    l = spec.count_axis(PauliAxis.Z)
    return phase_correction(r, l) * complex(sx, sy)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def event_text(event) -> str:
    """One-line wire format for an event; drive windows are not serializable."""
    if isinstance(event, HardPulse):
        return f"PULSE nucleus={event.nucleus} axis={event.axis.value} angle={_fmt(event.angle)}"
    if isinstance(event, Delay):
        return f"DELAY dur={_fmt(event.duration)} coupling={'on' if event.coupling_on else 'off'}"
    if isinstance(event, ZRotation):
        return f"ZROT nucleus={event.nucleus} angle={_fmt(event.angle)}"
    raise TypeError(f"event {type(event).__name__} has no text form")


def sequence_text(seq: PulseSequence) -> str:
    return "".join(event_text(ev) + "\n" for ev in seq.events)
