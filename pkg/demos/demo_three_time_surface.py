#!/usr/bin/env python3
"""Three-time correlation <sigma_y(t2) sigma_y(t1) sigma_z> over a (t1, t2) grid.

Under H = -200 pi sigma_z on |0> the value is exp(-i 400 pi (t2 - t1)): it
depends only on the difference of the two later times. Points with t2 < t1
need evolution backwards in time; the pulse-level route realizes that with a
pi-pulse pair that inverts the sign of the z Hamiltonian.
"""

import math

import numpy as np

from spincorr import (
    ConstHamiltonian,
    CorrelationSpec,
    MoleculeParams,
    PauliAxis,
    run_nmr_experiment,
    run_protocol,
)

H0 = ConstHamiltonian(hz=-200 * math.pi)
MOLECULE = MoleculeParams.with_system_offset(200.0)
KET0 = np.array([1, 0], dtype=complex)
Z, Y = PauliAxis.Z, PauliAxis.Y

grid = [0.5e-3 * k for k in range(1, 11)]
worst_circuit = worst_pulse = 0.0
print("Re f over the 10x10 grid (rows: t1, columns: t2, ms):")
for t1 in grid:
    cells = []
    for t2 in grid:
        spec = CorrelationSpec(((Z, 0.0), (Y, t1), (Y, t2)))
        f = run_protocol(spec, H0, KET0).f
        closed = np.exp(-1j * 400 * math.pi * (t2 - t1))
        worst_circuit = max(worst_circuit, abs(f - closed))
        worst_pulse = max(worst_pulse, abs(run_nmr_experiment(spec, MOLECULE, KET0) - closed))
        cells.append(f"{f.real:6.2f}")
    print(" ".join(cells))

print(f"\nmax |circuit - closed form| = {worst_circuit:.3e}")
print(f"max |pulse   - closed form| = {worst_pulse:.3e} (45 grid points run inverted)")
