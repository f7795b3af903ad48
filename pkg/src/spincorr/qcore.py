"""Dense complex linear algebra for one- and two-spin-1/2 systems.

Conventions used throughout the package:

- hbar = 1; Hamiltonian coefficients are angular frequencies in rad/s and
  times are seconds (converting from ms happens at the config boundary).
- Rotations follow R_n(theta) = exp(-i theta sigma.n / 2), so
  Rz(-pi) = i sigma_z, Ry(pi) = -i sigma_y and i Rx(pi) = sigma_x.
- Two-spin states order the ancilla as the first tensor factor:
  basis |00>, |01>, |10>, |11| with the system in the second slot.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

UNITARY_TOL = 1e-12
HERMITIAN_TOL = 1e-12
NORM_TOL = 1e-10


class PauliAxis(enum.Enum):
    """Axis label for the three Pauli operators."""

    X = "x"
    Y = "y"
    Z = "z"

    @classmethod
    def from_str(cls, s: str) -> "PauliAxis":
        try:
            return cls(s.lower())
        except ValueError:
            raise ValueError(f"unknown Pauli axis {s!r}, expected one of x, y, z") from None


_PAULI = {
    PauliAxis.X: np.array([[0, 1], [1, 0]], dtype=complex),
    PauliAxis.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    PauliAxis.Z: np.array([[1, 0], [0, -1]], dtype=complex),
}

IDENTITY_2 = np.eye(2, dtype=complex)
IDENTITY_4 = np.eye(4, dtype=complex)

KET_0 = np.array([1, 0], dtype=complex)
KET_1 = np.array([0, 1], dtype=complex)
KET_PLUS = np.array([1, 1], dtype=complex) / math.sqrt(2)


def pauli(axis: PauliAxis) -> np.ndarray:
    """Return the 2x2 Pauli matrix for `axis` (a fresh copy)."""
    return _PAULI[axis].copy()


def rotation(axis: PauliAxis, angle: float) -> np.ndarray:
    """Single-spin rotation exp(-i angle sigma_axis / 2)."""
    half = 0.5 * angle
    return math.cos(half) * IDENTITY_2 - 1j * math.sin(half) * _PAULI[axis]


@dataclass(frozen=True)
class ConstHamiltonian:
    """Time-independent single-spin generator h0*I + hx*sx + hy*sy + hz*sz (rad/s)."""

    h0: float = 0.0
    hx: float = 0.0
    hy: float = 0.0
    hz: float = 0.0

    def __post_init__(self):
        for name in ("h0", "hx", "hy", "hz"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"ConstHamiltonian.{name} must be finite")

    def matrix(self) -> np.ndarray:
        return (self.h0 * IDENTITY_2 + self.hx * _PAULI[PauliAxis.X]
                + self.hy * _PAULI[PauliAxis.Y] + self.hz * _PAULI[PauliAxis.Z])


@dataclass(frozen=True)
class TwoSpinHamiltonian:
    """Two-spin generator hz1*(sz x I) + hz2*(I x sz) + jzz*(sz x sz), all rad/s.

    Covers the z-type internal Hamiltonians of a weakly coupled spin pair;
    the matrix is diagonal, so propagators are exact elementwise exponentials.
    """

    hz1: float = 0.0
    hz2: float = 0.0
    jzz: float = 0.0

    def __post_init__(self):
        for name in ("hz1", "hz2", "jzz"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"TwoSpinHamiltonian.{name} must be finite")

    def diagonal(self) -> np.ndarray:
        z = np.array([1.0, -1.0])
        return (self.hz1 * np.kron(z, np.ones(2)) + self.hz2 * np.kron(np.ones(2), z)
                + self.jzz * np.kron(z, z))

    def matrix(self) -> np.ndarray:
        return np.diag(self.diagonal()).astype(complex)

    def propagator(self, dt: float) -> np.ndarray:
        return np.diag(np.exp(-1j * self.diagonal() * dt))


@dataclass(frozen=True)
class ExpDecay:
    """Envelope amplitude * exp(-rate * t); amplitude in rad/s, rate in 1/s."""

    amplitude: float
    rate: float

    def __post_init__(self):
        if not (math.isfinite(self.amplitude) and math.isfinite(self.rate)):
            raise ValueError("ExpDecay parameters must be finite")

    def __call__(self, t):
        return self.amplitude * np.exp(-self.rate * t)


@dataclass(frozen=True)
class Sampled:
    """Envelope tabulated on a strictly increasing time grid, linearly interpolated."""

    times: tuple
    values: tuple

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.ndim != 1 or t.shape != v.shape or t.size < 2:
            raise ValueError("Sampled envelope needs matching 1-d grids with >= 2 points")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
            raise ValueError("Sampled envelope grid must be finite")
        if np.any(np.diff(t) <= 0):
            raise ValueError("Sampled envelope times must be strictly increasing")
        object.__setattr__(self, "times", tuple(t.tolist()))
        object.__setattr__(self, "values", tuple(v.tolist()))

    def __call__(self, t):
        return np.interp(t, self.times, self.values)


@dataclass(frozen=True)
class TimeDepHamiltonian:
    """Sum of Pauli terms with time-dependent envelopes: H(t) = sum_k env_k(t) sigma_k."""

    terms: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        for axis, env in self.terms:
            if not isinstance(axis, PauliAxis):
                raise TypeError("term axis must be a PauliAxis")
            if not callable(env):
                raise TypeError("term envelope must be callable")

    def coeffs(self, t: float) -> tuple[float, float, float]:
        """(hx, hy, hz) at time t, in rad/s."""
        c = {PauliAxis.X: 0.0, PauliAxis.Y: 0.0, PauliAxis.Z: 0.0}
        for axis, env in self.terms:
            c[axis] += float(env(t))
        return c[PauliAxis.X], c[PauliAxis.Y], c[PauliAxis.Z]

    def with_term(self, axis: PauliAxis, env) -> "TimeDepHamiltonian":
        return TimeDepHamiltonian(self.terms + ((axis, env),))


def propagator_const(h: ConstHamiltonian, dt: float) -> np.ndarray:
    """exp(-i H dt) for a constant single-spin H, in closed form.

    dt may be negative (inverted evolution of a static Hamiltonian).
    """
    if not math.isfinite(dt):
        raise ValueError("dt must be finite")
    a = math.sqrt(h.hx * h.hx + h.hy * h.hy + h.hz * h.hz)
    phase = complex(math.cos(h.h0 * dt), -math.sin(h.h0 * dt))
    if a == 0.0:
        return phase * IDENTITY_2
    n = np.array([h.hx, h.hy, h.hz]) / a
    theta = a * dt
    nsigma = (n[0] * _PAULI[PauliAxis.X] + n[1] * _PAULI[PauliAxis.Y]
              + n[2] * _PAULI[PauliAxis.Z])
    return phase * (math.cos(theta) * IDENTITY_2 - 1j * math.sin(theta) * nsigma)


def propagator_timedep(h: TimeDepHamiltonian, t0: float, t1: float, steps: int = 1024) -> np.ndarray:
    """Time-ordered propagator over [t0, t1] via piecewise-constant midpoint steps.

    Second-order accurate in the step size; exact in the steps -> inf limit.
    Time-dependent evolution is only defined forward (t1 >= t0).
    """
    if t1 < t0:
        raise ValueError("time-dependent propagation requires t1 >= t0")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if t1 == t0:
        return IDENTITY_2.copy()
    dt = (t1 - t0) / steps
    u = IDENTITY_2.copy()
    for k in range(steps):
        tm = t0 + (k + 0.5) * dt
        hx, hy, hz = h.coeffs(tm)
        # later sub-intervals compose on the left
        u = propagator_const(ConstHamiltonian(0.0, hx, hy, hz), dt) @ u
    return u


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, first argument as the leading (ancilla) factor."""
    return np.kron(a, b)


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def apply(a: np.ndarray, psi: np.ndarray) -> np.ndarray:
    if a.shape[1] != psi.shape[0]:
        raise ValueError(f"dimension mismatch: operator {a.shape} on state {psi.shape}")
    return a @ psi


def expect(a: np.ndarray, state: np.ndarray) -> complex:
    """<A> on a state vector (1-d) or a density matrix (2-d)."""
    if state.ndim == 1:
        if a.shape[1] != state.shape[0]:
            raise ValueError(f"dimension mismatch: operator {a.shape} on state {state.shape}")
        return complex(np.vdot(state, a @ state))
    if a.shape[1] != state.shape[0]:
        raise ValueError(f"dimension mismatch: operator {a.shape} on state {state.shape}")
    return complex(np.trace(a @ state))


def unitarity_defect(u: np.ndarray) -> float:
    """max |U^dag U - I| entry; 0 for an exactly unitary U."""
    return float(np.max(np.abs(dagger(u) @ u - np.eye(u.shape[0]))))


def hermiticity_defect(a: np.ndarray) -> float:
    return float(np.max(np.abs(a - dagger(a))))


def normalized(psi: np.ndarray) -> np.ndarray:
    nrm = np.linalg.norm(psi)
    if nrm == 0:
        raise ValueError("cannot normalize the zero vector")
    return np.asarray(psi, dtype=complex) / nrm


def pure_density(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def check_state(psi: np.ndarray, tol: float = NORM_TOL) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1 or psi.shape[0] not in (2, 4):
        raise ValueError("state vector must have dimension 2 or 4")
    if abs(np.linalg.norm(psi) - 1.0) > tol:
        raise ValueError("state vector is not normalized")
    return psi


def check_density(rho: np.ndarray, tol: float = NORM_TOL) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] not in (2, 4):
        raise ValueError("density matrix must be square with dimension 2 or 4")
    if hermiticity_defect(rho) > 1e-10:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > tol:
        raise ValueError("density matrix trace differs from 1")
    if np.min(np.linalg.eigvalsh(rho)) < -1e-10:
        raise ValueError("density matrix has a negative eigenvalue")
    return rho


def gibbs_weights(energies: np.ndarray, beta: float) -> np.ndarray:
    """Thermal weights exp(-beta E_k) / Z, stable for any beta >= 0 including inf.

    Degenerate minima share weight equally in the beta -> inf limit.
    """
    e = np.asarray(energies, dtype=float)
    if math.isnan(beta):
        raise ValueError("beta must not be NaN")
    if beta == math.inf:
        w = (e - e.min() < 1e-12 * max(1.0, abs(e.min()))).astype(float)
    else:
        w = np.exp(-beta * (e - e.min()))
    return w / w.sum()


def thermal_state(hmat: np.ndarray, beta: float) -> np.ndarray:
    """Gibbs density matrix exp(-beta H)/Z for a Hermitian 2x2 (or 4x4) H."""
    energies, vecs = np.linalg.eigh(hmat)
    w = gibbs_weights(energies, beta)
    return (vecs * w) @ dagger(vecs)
