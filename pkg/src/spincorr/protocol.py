"""Ancilla-assisted measurement of n-time Pauli correlation functions.

A correlation ``<sigma_gamma(t_{n-1}) ... sigma_beta(t_1) sigma_alpha(0)>`` is
obtained without measuring the system directly: an ancilla prepared in |+> is
entangled with the system through a chain of controlled gates, the system
evolves freely between the gates, and the correlation is read off the final
ancilla coherence <sx> + i <sy> after an axis-dependent phase correction.

Ordering convention: `CorrelationSpec.ops` lists the operators
**innermost-first**, i.e. chronologically; ``ops[0]`` is the operator applied
at time 0. The conventional mathematical form, with the latest operator
written leftmost, is therefore the *reverse* of the list order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qcore import (
    ConstHamiltonian,
    IDENTITY_2,
    KET_PLUS,
    PauliAxis,
    TimeDepHamiltonian,
    check_density,
    check_state,
    expect,
    gibbs_weights,
    pauli,
    propagator_const,
    propagator_timedep,
    pure_density,
    tensor,
)

# Gate-level Pauli variants: the Y and Z gates carry fixed phases -i and +i so
# that a product of gates telescopes to a plain Pauli string times i^r (-i)^l.
_BRANCH_OP = {
    PauliAxis.X: pauli(PauliAxis.X),
    PauliAxis.Y: -1j * pauli(PauliAxis.Y),
    PauliAxis.Z: 1j * pauli(PauliAxis.Z),
}

_P0 = np.diag([1.0, 0.0]).astype(complex)
_P1 = np.diag([0.0, 1.0]).astype(complex)


@dataclass(frozen=True)
class CorrelationSpec:
    """Ordered list of (axis, time) pairs defining an n-time correlation.

    Entry 0 acts at time 0 (enforced); entry k acts at ``ops[k][1]`` seconds.
    Times may run backwards for a constant Hamiltonian (inverted evolution);
    time-dependent Hamiltonians require non-decreasing times.
    """

    ops: tuple

    def __post_init__(self):
        ops = tuple((axis, float(t)) for axis, t in self.ops)
        if len(ops) < 1:
            raise ValueError("CorrelationSpec needs at least one operator")
        for axis, t in ops:
            if not isinstance(axis, PauliAxis):
                raise TypeError("operator axis must be a PauliAxis")
            if not math.isfinite(t):
                raise ValueError("operator times must be finite")
        if ops[0][1] != 0.0:
            raise ValueError("the first operator must act at time 0")
        object.__setattr__(self, "ops", ops)

    @property
    def order(self) -> int:
        return len(self.ops)

    @property
    def times(self) -> tuple:
        return tuple(t for _, t in self.ops)

    def times_non_decreasing(self) -> bool:
        ts = self.times
        return all(ts[i + 1] >= ts[i] for i in range(len(ts) - 1))

    def count_axis(self, axis: PauliAxis) -> int:
        return sum(1 for a, _ in self.ops if a is axis)


@dataclass(frozen=True)
class ProtocolResult:
    """Correlation value plus the raw ancilla readout and phase bookkeeping."""

    f: complex
    sx: float
    sy: float
    r: int  # number of Y operators in the spec
    l: int  # number of Z operators in the spec


def controlled_pauli(axis: PauliAxis) -> np.ndarray:
    """4x4 gate |0><0| x I + |1><1| x V, V = sx, -i sy or i sz by axis."""
    return tensor(_P0, IDENTITY_2) + tensor(_P1, _BRANCH_OP[axis])


def phase_correction(r: int, l: int) -> complex:
    """i^r (-i)^l, exact (one of 1, i, -1, -i)."""
    if r < 0 or l < 0:
        raise ValueError("occurrence counts must be >= 0")
    return (1 + 0j, 1j, -1 + 0j, -1j)[(r - l) % 4]


def _system_propagator(h, t_from: float, t_to: float, steps: int) -> np.ndarray:
    if isinstance(h, ConstHamiltonian):
        return propagator_const(h, t_to - t_from)
    if isinstance(h, TimeDepHamiltonian):
        return propagator_timedep(h, t_from, t_to, steps)
    raise TypeError(f"unsupported Hamiltonian type {type(h).__name__}")


def _validate_spec_for(h, spec: CorrelationSpec) -> None:
    if isinstance(h, TimeDepHamiltonian) and not spec.times_non_decreasing():
        raise ValueError("time-dependent Hamiltonians require non-decreasing operator times")


def run_protocol(spec: CorrelationSpec, h, state, steps: int = 1024) -> ProtocolResult:
    """Execute the ancilla circuit and extract the correlation value.

    Args:
        spec: operators and times, innermost-first.
        h: system Hamiltonian (ConstHamiltonian or TimeDepHamiltonian).
        state: system input, a normalized 2-vector or a 2x2 density matrix.
        steps: midpoint sub-intervals per evolution window (time-dependent h).
    """
    _validate_spec_for(h, spec)
    state = np.asarray(state, dtype=complex)
    r = spec.count_axis(PauliAxis.Y)
    l = spec.count_axis(PauliAxis.Z)

    if state.ndim == 1:
        phi = check_state(state)
        if phi.shape[0] != 2:
            raise ValueError("system state must be 2-dimensional")
        out = np.kron(KET_PLUS, phi)
        for k, (axis, _) in enumerate(spec.ops):
            out = controlled_pauli(axis) @ out
            if k < spec.order - 1:
                u = _system_propagator(h, spec.times[k], spec.times[k + 1], steps)
                out = tensor(IDENTITY_2, u) @ out
        sx = expect(tensor(pauli(PauliAxis.X), IDENTITY_2), out).real
        sy = expect(tensor(pauli(PauliAxis.Y), IDENTITY_2), out).real
    else:
        rho = check_density(state)
        if rho.shape[0] != 2:
            raise ValueError("system density matrix must be 2x2")
        out = tensor(pure_density(KET_PLUS), rho)
        for k, (axis, _) in enumerate(spec.ops):
            g = controlled_pauli(axis)
            out = g @ out @ g.conj().T
            if k < spec.order - 1:
                u = tensor(IDENTITY_2, _system_propagator(h, spec.times[k], spec.times[k + 1], steps))
                out = u @ out @ u.conj().T
        sx = expect(tensor(pauli(PauliAxis.X), IDENTITY_2), out).real
        sy = expect(tensor(pauli(PauliAxis.Y), IDENTITY_2), out).real

    f = phase_correction(r, l) * complex(sx, sy)
    return ProtocolResult(f=f, sx=sx, sy=sy, r=r, l=l)


def run_protocol_thermal(spec: CorrelationSpec, h: ConstHamiltonian, beta: float,
                         steps: int = 1024) -> complex:
    """Gibbs-weighted correlation over the eigenstates of a constant Hamiltonian.

    beta is the inverse temperature in (rad/s)^-1 units (hbar = 1); beta = inf
    selects the ground state, beta = 0 the maximally mixed average.
    """
    if math.isnan(beta):
        raise ValueError("beta must not be NaN")
    if not isinstance(h, ConstHamiltonian):
        raise TypeError("thermal runs are defined for constant Hamiltonians")
    energies, vecs = np.linalg.eigh(h.matrix())
    weights = gibbs_weights(energies, beta)
    total = 0j
    for k in range(energies.shape[0]):
        if weights[k] == 0.0:
            continue
        total += weights[k] * run_protocol(spec, h, vecs[:, k], steps=steps).f
    return total
