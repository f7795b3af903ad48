"""Brute-force correlation functions straight from the Heisenberg picture.

This module is the ground truth the ancilla circuit is validated against. It
shares nothing with the circuit assembly beyond the basic matrix primitives:
each operator is conjugated into the Heisenberg picture individually and the
product is taken by plain matrix multiplication.
"""

from __future__ import annotations

import numpy as np

from .qcore import (
    ConstHamiltonian,
    PauliAxis,
    TimeDepHamiltonian,
    dagger,
    expect,
    pauli,
    propagator_const,
    propagator_timedep,
)
from .protocol import CorrelationSpec


def _propagator_from_zero(h, t: float, steps: int) -> np.ndarray:
    if isinstance(h, ConstHamiltonian):
        return propagator_const(h, t)
    if isinstance(h, TimeDepHamiltonian):
        if t < 0:
            raise ValueError("time-dependent evolution is only defined for t >= 0")
        return propagator_timedep(h, 0.0, t, steps)
    raise TypeError(f"unsupported Hamiltonian type {type(h).__name__}")


def heisenberg_op(axis: PauliAxis, t: float, h, steps: int = 1024) -> np.ndarray:
    """sigma_axis(t) = U(t;0)^dag sigma_axis U(t;0)."""
    u = _propagator_from_zero(h, t, steps)
    return dagger(u) @ pauli(axis) @ u


def _as_op_list(spec_or_ops):
    if isinstance(spec_or_ops, CorrelationSpec):
        return spec_or_ops.ops
    return tuple((axis, float(t)) for axis, t in spec_or_ops)


def correlation_direct(spec_or_ops, h, state, steps: int = 1024) -> complex:
    """Expectation of the time-ordered Heisenberg product on the input state.

    Accepts a CorrelationSpec or a raw innermost-first list of (axis, time)
    pairs (the raw form skips the time-0 anchoring, which is useful for
    time-shift checks and reversed-order products). The product is built with
    the latest operator leftmost, matching the conventional written form.
    """
    ops = _as_op_list(spec_or_ops)
    state = np.asarray(state, dtype=complex)
    m = np.eye(2, dtype=complex)
    for axis, t in ops:  # innermost-first, so each factor multiplies on the left
        m = heisenberg_op(axis, t, h, steps) @ m
    return expect(m, state)
