"""Kubo linear response for a spin-1/2 in a static field along z.

The unperturbed Hamiltonian is H0 = -gamma*B*sigma_z and the probe couples an
oscillating field of amplitude Bp0 to a Pauli axis. The response function is
the thermal commutator kernel

    phi_{a,b}(t) = <[gamma*Bp0*sigma_a, gamma*sigma_b(t)]> / i,

and the susceptibility is its Fourier-Laplace transform. The textbook
adiabatic factor exp(-eta*tau) regularizes the infinite-time integral; eta is
an explicit user parameter (default 50 1/s, small against the Larmor scale of
the shipped presets) and is never hidden inside the quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .qcore import PauliAxis, gibbs_weights, pauli

IM_TOL = 1e-10


class QuadratureError(RuntimeError):
    """Step refinement failed to converge within the point budget."""


@dataclass(frozen=True)
class ResponseParams:
    """Physical setup for response calculations.

    gamma: gyromagnetic ratio (rad/s per field unit)
    b: static field along z (field units); H0 = -gamma*b*sigma_z
    bp0: perturbation amplitude (field units)
    beta: inverse temperature, (rad/s)^-1 with hbar = 1; inf and 0 allowed
    eta: adiabatic regularization rate (1/s), must be positive
    omega: optional probe frequency grid (rad/s), strictly increasing
    """

    gamma: float
    b: float
    bp0: float
    beta: float
    eta: float = 50.0
    omega: tuple = field(default=())

    def __post_init__(self):
        for name in ("gamma", "b", "bp0", "eta"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"ResponseParams.{name} must be finite")
        if self.eta <= 0:
            raise ValueError("ResponseParams.eta must be positive")
        if math.isnan(self.beta) or self.beta < 0:
            raise ValueError("ResponseParams.beta must be >= 0 (inf allowed)")
        om = np.asarray(self.omega, dtype=float)
        if om.size:
            if not np.all(np.isfinite(om)):
                raise ValueError("ResponseParams.omega must be finite")
            if np.any(np.diff(om) <= 0):
                raise ValueError("ResponseParams.omega must be strictly increasing")
        object.__setattr__(self, "omega", tuple(om.tolist()))

    @property
    def level_splitting(self) -> float:
        """Transition frequency 2*gamma*b between the H0 eigenstates (rad/s)."""
        return 2.0 * self.gamma * self.b

    def energies(self) -> np.ndarray:
        """H0 eigenvalues attached to the computational basis (|0>, |1>)."""
        return np.array([-self.gamma * self.b, self.gamma * self.b])

    def thermal_populations(self) -> np.ndarray:
        return gibbs_weights(self.energies(), self.beta)

    def thermal_expect(self, axis: PauliAxis) -> float:
        p = self.thermal_populations()
        rho = np.diag(p).astype(complex)
        return float(np.trace(rho @ pauli(axis)).real)


def _heisenberg_samples(axis: PauliAxis, taus: np.ndarray, params: ResponseParams) -> np.ndarray:
    """sigma_axis(tau) for every tau, shape (len(taus), 2, 2).

    H0 is diagonal in the computational basis, so the Heisenberg operator is
    an elementwise phase twist of the bare Pauli matrix.
    """
    lam = params.energies()
    delta = lam[:, None] - lam[None, :]
    phases = np.exp(1j * np.multiply.outer(taus, delta))
    return phases * pauli(axis)[None, :, :]


def _phi_samples(alpha: PauliAxis, beta_axis: PauliAxis, taus: np.ndarray,
                 params: ResponseParams) -> np.ndarray:
    """Vectorized response function on a time grid; asserts a real result."""
    taus = np.asarray(taus, dtype=float)
    sb = _heisenberg_samples(beta_axis, taus, params)
    sa = pauli(alpha)
    comm = sa[None, :, :] @ sb - sb @ sa[None, :, :]
    p = params.thermal_populations()
    # diagonal thermal state: <C> = sum_m p_m C_mm
    vals = np.einsum("m,tmm->t", p, comm) / 1j * params.gamma ** 2 * params.bp0
    worst = float(np.max(np.abs(vals.imag))) if vals.size else 0.0
    if worst >= IM_TOL:
        raise AssertionError(f"response function has imaginary residue {worst:.3e}")
    return vals.real


def response_function(alpha: PauliAxis, beta_axis: PauliAxis, t: float,
                      params: ResponseParams) -> float:
    """phi_{alpha,beta}(t): thermal commutator kernel, guaranteed real."""
    if t < 0:
        raise ValueError("response_function is defined for t >= 0")
    return float(_phi_samples(alpha, beta_axis, np.array([t]), params)[0])


def _simpson(y: np.ndarray, dx: float) -> complex:
    n = y.shape[0] - 1
    if n % 2 != 0:
        raise ValueError("composite Simpson needs an even interval count")
    return complex(dx / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-1:2].sum()))


def susceptibility(alpha: PauliAxis, beta_axis: PauliAxis, omega: float,
                   params: ResponseParams, rel_tol: float = 1e-8,
                   max_points: int = 2 ** 20) -> complex:
    """chi(omega) = integral_0^T phi(tau) e^{-i omega tau} e^{-eta tau} dtau.

    T is chosen so the damping factor has fallen below 1e-10; the composite
    Simpson estimate is refined by step halving until it changes by less than
    `rel_tol` relatively, or QuadratureError is raised at the point cap.
    """
    horizon = math.log(1e10) / params.eta
    n = 256
    prev = None
    while n + 1 <= max_points:
        taus = np.linspace(0.0, horizon, n + 1)
        phi = _phi_samples(alpha, beta_axis, taus, params)
        integrand = phi * np.exp(-(params.eta + 1j * omega) * taus)
        est = _simpson(integrand, horizon / n)
        if prev is not None:
            scale = max(abs(est), abs(prev))
            if abs(est - prev) <= rel_tol * scale or scale == 0.0:
                return est
        prev = est
        n *= 2
    raise QuadratureError(
        f"susceptibility quadrature did not converge within {max_points} points")


def corrected_moment(alpha: PauliAxis, beta_axis: PauliAxis, omega: float, t: float,
                     params: ResponseParams) -> complex:
    """First-order corrected magnetic moment mu_b(0) + chi(omega) e^{-i omega t}."""
    mu0 = params.gamma * params.thermal_expect(beta_axis)
    return mu0 + susceptibility(alpha, beta_axis, omega, params) * np.exp(-1j * omega * t)


@dataclass(frozen=True)
class PerturbationEnvelope:
    """Real switching function F(t) sampled on a uniform grid, linearly interpolated."""

    times: tuple
    values: tuple

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.ndim != 1 or t.shape != v.shape or t.size < 2:
            raise ValueError("PerturbationEnvelope needs matching 1-d grids with >= 2 points")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
            raise ValueError("PerturbationEnvelope samples must be finite")
        steps = np.diff(t)
        if np.any(steps <= 0):
            raise ValueError("PerturbationEnvelope times must be strictly increasing")
        if np.max(steps) - np.min(steps) > 1e-9 * np.max(steps):
            raise ValueError("PerturbationEnvelope grid must be uniform")
        object.__setattr__(self, "times", tuple(t.tolist()))
        object.__setattr__(self, "values", tuple(v.tolist()))

    @classmethod
    def from_function(cls, func, t_max: float, samples: int = 257) -> "PerturbationEnvelope":
        ts = np.linspace(0.0, t_max, samples)
        return cls(tuple(ts.tolist()), tuple(float(func(t)) for t in ts))

    @classmethod
    def constant(cls, value: float, t_max: float) -> "PerturbationEnvelope":
        return cls((0.0, t_max), (value, value))

    def __call__(self, t):
        return np.interp(t, self.times, self.values)


def second_order_correction(b_axis: PauliAxis, a_axis: PauliAxis,
                            envelope: PerturbationEnvelope, t: float,
                            params: ResponseParams, grid_steps: int = 200,
                            state: np.ndarray | None = None) -> float:
    """Second-order change of <sigma_b> under H(t) = H0 + sigma_a F(t).

    Nested trapezoid quadrature of the double-commutator kernel
    <[B(t), [A(t1), A(t2)]]> F(t1) F(t2) over the ordered simplex
    0 <= t2 <= t1 <= t. The switch-on is at time 0, so the lower limits are
    truncated there.

    The expectation is taken on the thermal state of H0 by default. Note the
    z-field symmetry makes the thermal kernel vanish identically for every
    Pauli axis pair (the inner commutator is z-like, the outer commutator is
    then transverse and traceless against a diagonal state); pass an explicit
    `state` (ket or density matrix) to probe a non-equilibrium input.
    """
    if t < 0:
        raise ValueError("second_order_correction is defined for t >= 0")
    if grid_steps < 1:
        raise ValueError("grid_steps must be >= 1")
    if envelope.times[-1] < t:
        raise ValueError("envelope must cover [0, t]")
    if t == 0.0:
        return 0.0

    if state is None:
        rho = np.diag(params.thermal_populations()).astype(complex)
    else:
        state = np.asarray(state, dtype=complex)
        rho = np.outer(state, state.conj()) if state.ndim == 1 else state

    taus = np.linspace(0.0, t, grid_steps + 1)
    h = t / grid_steps
    a_ops = _heisenberg_samples(a_axis, taus, params)
    b_op = _heisenberg_samples(b_axis, np.array([t]), params)[0]
    fvals = np.asarray(envelope(taus), dtype=float)

    # inner commutators [A(t1), A(t2)] for the whole grid at once
    prod = np.einsum("iab,jbc->ijac", a_ops, a_ops)
    inner = prod - prod.transpose(1, 0, 2, 3)
    outer = np.einsum("ab,ijbc->ijac", b_op, inner) - np.einsum("ijab,bc->ijac", inner, b_op)
    g = np.einsum("ab,ijba->ij", rho, outer)

    kernel = g * fvals[None, :]
    # trapezoid over t2 in [0, t1] for each grid row
    inner_int = np.empty(grid_steps + 1, dtype=complex)
    inner_int[0] = 0.0
    for i in range(1, grid_steps + 1):
        row = kernel[i, : i + 1]
        inner_int[i] = h * (row.sum() - 0.5 * (row[0] + row[-1]))
    outer_vals = inner_int * fvals
    total = h * (outer_vals.sum() - 0.5 * (outer_vals[0] + outer_vals[-1]))

    if abs(total.imag) >= IM_TOL * max(1.0, abs(total.real)):
        raise AssertionError(f"second-order correction has imaginary residue {total.imag:.3e}")
    return float(total.real)
