#!/usr/bin/env python3
"""Correlation functions up to tenth order at fixed 0.3 ms intervals.

Two operator families on the initial state Rx(1.41 pi / 2)|0> under
H = -100 pi sigma_z: all-x probes, and the alternating x/y pattern with y on
the odd time slots. One ancilla suffices for any order; the circuit depth
grows linearly with n.
"""

import math

import numpy as np

from spincorr import (
    ConstHamiltonian,
    MoleculeParams,
    PauliAxis,
    correlation_direct,
    order_scan_spec,
    rotation,
    run_nmr_experiment,
    run_protocol,
)

H0 = ConstHamiltonian(hz=-100 * math.pi)
MOLECULE = MoleculeParams.with_system_offset(100.0)
PSI = rotation(PauliAxis.X, 1.41 * math.pi / 2) @ np.array([1, 0], dtype=complex)

for family in ("xx", "xy"):
    print(f"family {family}: {'n':>3} {'Re f':>12} {'Im f':>12} {'spread':>10}")
    for n in range(2, 11):
        spec = order_scan_spec(family, n, 0.3e-3)
        circuit = run_protocol(spec, H0, PSI).f
        direct = correlation_direct(spec, H0, PSI)
        pulse = run_nmr_experiment(spec, MOLECULE, PSI)
        spread = max(abs(circuit - direct), abs(circuit - pulse), abs(direct - pulse))
        print(f"{'':>11}{n:>3} {circuit.real:12.6f} {circuit.imag:12.6f} {spread:10.2e}")
    print()
