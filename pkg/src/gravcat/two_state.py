"""Tunneling two-state system and its coarse-grained mass-density statistics.

A particle confined near two potential minima reduces, at macroscopic
resolution, to a qubit: |+> = (1, 0)^T localized in the right well and
|-> = (0, 1)^T in the left.  Tunneling at angular rate nu with phase chi
evolves the well projectors, and the mass density sampled over the well
regions inherits the qubit's quantum statistics.  Everything here is closed
form on 2x2 matrices; natural units hbar = 1 throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PAULI_1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

_NORM_TOL = 1e-12


@dataclass(frozen=True)
class TunnelingParams:
    """Tunneling rate nu and phase chi of the double-well qubit.

    Optionally carries the underlying per-step angle theta and
    stabilization time-step epsilon; when both are given they must satisfy
    nu = 2 * theta / epsilon to relative 1e-12.
    """

    nu: float
    chi: float = 0.0
    theta: float | None = None
    epsilon: float | None = None

    def __post_init__(self):
        if self.nu < 0:
            raise ValueError(f"tunneling rate must be nonnegative, got {self.nu}")
        if (self.theta is None) != (self.epsilon is None):
            raise ValueError("theta and epsilon must be supplied together")
        if self.theta is not None:
            if self.epsilon <= 0:
                raise ValueError("stabilization time-step must be positive")
            implied = 2.0 * self.theta / self.epsilon
            scale = max(abs(self.nu), abs(implied), 1e-300)
            if abs(self.nu - implied) > 1e-12 * scale:
                raise ValueError(
                    f"nu = {self.nu} inconsistent with 2*theta/epsilon = {implied}"
                )


@dataclass(frozen=True)
class QubitState:
    """Well amplitudes (c_plus, c_minus), normalized to 1 within 1e-12.

    The Bloch-type parameters are always recomputed, never stored: delta is
    the population asymmetry and (beta, gamma) are the real and imaginary
    parts of 2 conj(c_plus) c_minus e^{i chi}, so they depend on the
    tunneling phase chi.
    """

    c_plus: complex
    c_minus: complex

    def __post_init__(self):
        n2 = abs(self.c_plus) ** 2 + abs(self.c_minus) ** 2
        if abs(n2 - 1.0) > _NORM_TOL:
            raise ValueError(f"amplitudes have squared norm {n2}, expected 1")

    @property
    def delta(self) -> float:
        return abs(self.c_plus) ** 2 - abs(self.c_minus) ** 2

    def bloch(self, chi: float) -> tuple[float, float, float]:
        """(delta, beta, gamma) for tunneling phase chi."""
        cross = 2.0 * np.conj(self.c_plus) * self.c_minus * np.exp(1j * chi)
        return self.delta, float(cross.real), float(cross.imag)

    def vector(self) -> np.ndarray:
        return np.array([self.c_plus, self.c_minus], dtype=complex)

    @classmethod
    def plus(cls) -> "QubitState":
        return cls(1.0, 0.0)

    @classmethod
    def minus(cls) -> "QubitState":
        return cls(0.0, 1.0)

    @classmethod
    def balanced(cls, relative_phase: float = 0.0) -> "QubitState":
        return cls(1.0 / np.sqrt(2.0), np.exp(1j * relative_phase) / np.sqrt(2.0))


@dataclass(frozen=True)
class SmearedDensityParams:
    """Particle mass m and smearing scale ell of the well-region sampling."""

    m: float
    ell: float

    def __post_init__(self):
        if self.m <= 0:
            raise ValueError(f"mass must be positive, got {self.m}")
        if self.ell <= 0:
            raise ValueError(f"smearing scale must be positive, got {self.ell}")


def _check_sign(a: int) -> int:
    if a not in (1, -1):
        raise ValueError(f"well label must be +1 or -1, got {a!r}")
    return a


def tunneling_hamiltonian(params: TunnelingParams) -> np.ndarray:
    """Effective qubit Hamiltonian nu (cos(chi) sigma_1 + sin(chi) sigma_2)."""
    return params.nu * (np.cos(params.chi) * PAULI_1 + np.sin(params.chi) * PAULI_2)


def tunneling_propagator(params: TunnelingParams, t: float) -> np.ndarray:
    """Unitary evolution over time t >= 0.

    [[ cos(nu t / 2),             sin(nu t / 2) e^{i chi} ],
     [-sin(nu t / 2) e^{-i chi},  cos(nu t / 2)           ]]
    """
    if t < 0:
        raise ValueError(f"time must be nonnegative, got {t}")
    half = 0.5 * params.nu * t
    c, s = np.cos(half), np.sin(half)
    phase = np.exp(1j * params.chi)
    return np.array([[c, s * phase], [-s / phase, c]], dtype=complex)


def heisenberg_projector(a: int, params: TunnelingParams, t: float) -> np.ndarray:
    """Heisenberg-picture well projector (1 + a S_t) / 2.

    S_t = [[cos(nu t), sin(nu t) e^{i chi}], [sin(nu t) e^{-i chi}, -cos(nu t)]]
    squares to the identity, so the output is an exact rank-1 projector.
    """
    _check_sign(a)
    c, s = np.cos(params.nu * t), np.sin(params.nu * t)
    phase = np.exp(1j * params.chi)
    s_t = np.array([[c, s * phase], [s / phase, -c]], dtype=complex)
    return 0.5 * (IDENTITY_2 + a * s_t)


def mean_density(
    state: QubitState,
    density: SmearedDensityParams,
    a: int,
    params: TunnelingParams,
    t: float,
) -> float:
    """Mean smeared mass density read off well a at time t.

    (m / 2 ell^3) [1 + a (delta cos(nu t) + beta sin(nu t))]; the sum over
    both wells is m / ell^3 identically.
    """
    _check_sign(a)
    delta, beta, _ = state.bloch(params.chi)
    nt = params.nu * t
    bracket = 1.0 + a * (delta * np.cos(nt) + beta * np.sin(nt))
    return density.m / (2.0 * density.ell**3) * bracket


def two_time_quantum_corr(
    state: QubitState,
    density: SmearedDensityParams,
    a1: int,
    a2: int,
    params: TunnelingParams,
    t1: float,
    t2: float,
) -> complex:
    """Quantum two-time density correlation <mu(a2, t2) mu(a1, t1)>.

    Equals (m^2/ell^6) <P(a2, t2) P(a1, t1)> with Heisenberg projectors; the
    lag term a1 a2 (cos(nu (t2-t1)) - i gamma sin(nu (t2-t1))) carries unit
    weight, as the projector product algebra requires.  Times must be
    ordered t1 <= t2.
    """
    _check_sign(a1)
    _check_sign(a2)
    if t2 < t1:
        raise ValueError(f"times must be ordered t1 <= t2, got {t1} > {t2}")
    delta, beta, gamma = state.bloch(params.chi)
    nu = params.nu
    x1 = delta * np.cos(nu * t1) + beta * np.sin(nu * t1)
    x2 = delta * np.cos(nu * t2) + beta * np.sin(nu * t2)
    lag = nu * (t2 - t1)
    bracket = (
        1.0
        + a1 * x1
        + a2 * x2
        + a1 * a2 * (np.cos(lag) - 1j * gamma * np.sin(lag))
    )
    return density.m**2 / (4.0 * density.ell**6) * complex(bracket)


def two_time_statistical_corr(
    state: QubitState,
    density: SmearedDensityParams,
    a1: int,
    a2: int,
    params: TunnelingParams,
    t1: float,
    t2: float,
) -> float:
    """Statistical (measured) two-time correlation of the well densities.

    Equals (m^2/ell^6) P_2(a1, t1; a2, t2) where P_2 is the two-step
    projective measurement probability for outcome a1 at t1 followed by a2
    at t2.  Real by construction; marginalizing over a2 returns
    (m^2/ell^6) P_1(a1, t1).
    """
    _check_sign(a1)
    _check_sign(a2)
    if t2 < t1:
        raise ValueError(f"times must be ordered t1 <= t2, got {t1} > {t2}")
    delta, beta, _ = state.bloch(params.chi)
    nu = params.nu
    x1 = delta * np.cos(nu * t1) + beta * np.sin(nu * t1)
    lag_cos = np.cos(nu * (t2 - t1))
    bracket = 1.0 + a1 * x1 + a2 * lag_cos * x1 + a1 * a2 * lag_cos
    return density.m**2 / (4.0 * density.ell**6) * float(bracket)
