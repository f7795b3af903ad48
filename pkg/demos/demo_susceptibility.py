#!/usr/bin/env python3
"""From measured correlations to the magnetic susceptibility.

The response of <sigma_x> to an oscillating x field on a spin in a static z
field is carried by the commutator kernel phi_xx(t), which the ancilla
circuit reconstructs from Gibbs-weighted two-time correlations. Integrating
phi against exp(-(eta + i omega) t) gives the susceptibility; for this system
chi_xx(omega) is an exact Lorentzian, which the quadrature reproduces.
"""

import math

import numpy as np

from spincorr import (
    ConstHamiltonian,
    CorrelationSpec,
    PauliAxis,
    ResponseParams,
    response_function,
    run_protocol,
    susceptibility,
)
from spincorr.qcore import gibbs_weights

X = PauliAxis.X
GAMMA, BP0, BETA = 100 * math.pi, 1.0, 0.01
PARAMS = ResponseParams(gamma=GAMMA, b=1.0, bp0=BP0, beta=BETA, eta=50.0)
H0 = ConstHamiltonian(hz=-GAMMA)

print("phi_xx(t): direct commutator vs reconstruction from circuit correlations")
print(f"{'t (ms)':>7} {'phi direct':>14} {'phi from circuit':>17} {'|diff|':>10}")
weights = gibbs_weights(PARAMS.energies(), BETA)
kets = np.eye(2, dtype=complex)
for t in np.linspace(0.5e-3, 8e-3, 6):
    spec = CorrelationSpec(((X, 0.0), (X, t)))
    f_thermal = sum(weights[k] * run_protocol(spec, H0, kets[k]).f for k in range(2))
    phi_circuit = -2.0 * GAMMA ** 2 * BP0 * f_thermal.imag
    phi_direct = response_function(X, X, t, PARAMS)
    print(f"{t * 1e3:7.2f} {phi_direct:14.4f} {phi_circuit:17.4f} "
          f"{abs(phi_circuit - phi_direct):10.2e}")

print("\nchi_xx(omega) vs the analytic Lorentzian "
      "C * Omega / ((eta + i omega)^2 + Omega^2):")
pops = PARAMS.thermal_populations()
c = 2 * GAMMA ** 2 * BP0 * (pops[0] - pops[1])
omega0 = PARAMS.level_splitting
print(f"{'omega (rad/s)':>14} {'Re chi':>12} {'Im chi':>12} {'rel err':>10}")
for omega in np.linspace(-1600.0, 1600.0, 9):
    chi = susceptibility(X, X, omega, PARAMS)
    analytic = c * omega0 / ((PARAMS.eta + 1j * omega) ** 2 + omega0 ** 2)
    print(f"{omega:14.1f} {chi.real:12.4f} {chi.imag:12.4f} "
          f"{abs(chi - analytic) / abs(analytic):10.2e}")
