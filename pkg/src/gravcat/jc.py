"""Quantum oscillator probe of the two-well system.

The well qubit couples to an oscillator probe through the Newtonian force:
H = nu sigma_1 + omega a^dag a + g sigma_3 (a + a^dag) with
g = -f0 / sqrt(2 m0 omega).  For nu << omega the conditional dynamics is a
displaced rotation solvable in closed form (each well drags the oscillator
around a circle of center zeta_0 = -g/omega in phase space), and the probe
resolves the wells once the pointer coherent states are distinguishable,
|<zeta_0|-zeta_0>|^2 = exp(-4 |zeta_0|^2) << 1.  A first-order
interaction-picture propagator and a brute-force step integrator of the
full H are provided to study tunneling-induced transitions between the
pointer states.

Composite vectors are ordered (qubit |+> block, qubit |-> block), each
block a Fock vector; composite operators are 2D x 2D dense arrays built
with kron(qubit, oscillator).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .fock import (
    FockSpace,
    FockVector,
    coherent_state,
    displacement,
    ladder_operators,
    matrix_exponential,
    number_operator,
    vacuum,
)
from .two_state import PAULI_1, PAULI_3

MAX_STEP_NORM = 0.1


class RegimeWarning(UserWarning):
    """Parameters outside the validity regime of a closed-form result."""


@dataclass(frozen=True)
class JCParams:
    """Tunneling rate nu, oscillator frequency omega, coupling g.

    When built from the probe geometry (`from_probe`), the force amplitude
    f0 and probe mass m0 are retained so the equilibrium displacement
    x0 = f0 / (m0 omega^2) is available.  zeta_0 = -g / omega always is.
    """

    nu: float
    omega: float
    g: float
    f0: float | None = None
    m0: float | None = None

    def __post_init__(self):
        if self.omega <= 0:
            raise ValueError(f"oscillator frequency must be positive, got {self.omega}")
        if self.nu < 0:
            raise ValueError(f"tunneling rate must be nonnegative, got {self.nu}")

    @classmethod
    def from_probe(cls, nu: float, omega: float, f0: float, m0: float) -> "JCParams":
        return cls(nu=nu, omega=omega, g=jc_coupling(f0, m0, omega), f0=f0, m0=m0)

    @property
    def zeta0(self) -> float:
        """Pointer displacement -g / omega (center of the dragged orbit)."""
        return -self.g / self.omega

    @property
    def x0(self) -> float:
        """Equilibrium position shift f0 / (m0 omega^2); needs probe data."""
        if self.f0 is None or self.m0 is None:
            raise ValueError("x0 requires probe parameters (use from_probe)")
        return self.f0 / (self.m0 * self.omega**2)

    @property
    def deep_strong(self) -> bool:
        return abs(self.g) > self.omega


def jc_coupling(f0: float, m0: float, omega: float) -> float:
    """Qubit-oscillator coupling g = -f0 / sqrt(2 m0 omega)."""
    if m0 <= 0 or omega <= 0:
        raise ValueError("probe mass and frequency must be positive")
    return -f0 / np.sqrt(2.0 * m0 * omega)


@dataclass
class CompositeState:
    """Qubit (x) oscillator state as (up block, down block) Fock vectors.

    Total norm must be 1 within 1e-10 (pass check_norm=False for
    intentionally unnormalized intermediates).
    """

    up: FockVector
    down: FockVector
    check_norm: bool = True

    def __post_init__(self):
        if self.up.space != self.down.space:
            raise ValueError("blocks must live on the same Fock space")
        if self.check_norm and abs(self.norm() - 1.0) > 1e-10:
            raise ValueError(f"composite state has norm {self.norm()!r}, expected 1")

    @property
    def space(self) -> FockSpace:
        return self.up.space

    def as_vector(self) -> np.ndarray:
        return np.concatenate([self.up.amplitudes, self.down.amplitudes])

    @classmethod
    def from_vector(cls, space: FockSpace, vec: np.ndarray) -> "CompositeState":
        d = space.dim
        vec = np.asarray(vec, dtype=complex)
        if vec.shape != (2 * d,):
            raise ValueError(f"composite vector must have length {2 * d}")
        return cls(FockVector(vec[:d], space), FockVector(vec[d:], space))

    def norm(self) -> float:
        return float(np.linalg.norm(self.as_vector()))

    def inner(self, other: "CompositeState") -> complex:
        return complex(np.vdot(self.as_vector(), other.as_vector()))

    def fidelity(self, other: "CompositeState") -> float:
        return abs(self.inner(other)) ** 2


def pointer_state(params: JCParams, space: FockSpace, sign: int) -> CompositeState:
    """|+zeta_0, +> or |-zeta_0, ->, the two conditional rest states."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    coh = coherent_state(space, sign * params.zeta0)
    zero = FockVector(np.zeros(space.dim, dtype=complex), space)
    return CompositeState(coh, zero) if sign == 1 else CompositeState(zero, coh)


def total_hamiltonian(params: JCParams, space: FockSpace) -> np.ndarray:
    """nu sigma_1 (x) 1 + omega 1 (x) a^dag a + g sigma_3 (x) (a + a^dag)."""
    a, adag = ladder_operators(space)
    eye = np.eye(space.dim)
    n_op = number_operator(space).matrix
    quad = a.matrix + adag.matrix
    return (
        params.nu * np.kron(PAULI_1, eye)
        + params.omega * np.kron(np.eye(2), n_op)
        + params.g * np.kron(PAULI_3, quad)
    )


def _blockdiag(upper: np.ndarray, lower: np.ndarray) -> np.ndarray:
    d = upper.shape[0]
    out = np.zeros((2 * d, 2 * d), dtype=complex)
    out[:d, :d] = upper
    out[d:, d:] = lower
    return out


def adiabatic_propagator(params: JCParams, space: FockSpace, t: float) -> np.ndarray:
    """Closed-form propagator of the nu = 0 Hamiltonian.

    exp(i g^2 t / omega) diag( D^dag(g/w) e^{-i w n t} D(g/w),
                               D(g/w) e^{-i w n t} D^dag(g/w) ).
    Ignores params.nu (valid in the nu << omega regime).
    """
    d_op = displacement(space, params.g / params.omega).matrix
    rot = np.diag(np.exp(-1j * params.omega * np.arange(space.dim) * t))
    upper = d_op.conj().T @ rot @ d_op
    lower = d_op @ rot @ d_op.conj().T
    phase = np.exp(1j * params.g**2 * t / params.omega)
    return phase * _blockdiag(upper, lower)


def pointer_path(params: JCParams, t) -> complex | np.ndarray:
    """Coherent-state label zeta(t) = -(g/omega)(1 - e^{-i omega t}) of the
    vacuum-started oscillator conditioned on the up well."""
    return -(params.g / params.omega) * (1.0 - np.exp(-1j * params.omega * np.asarray(t)))


def evolved_cat(c_plus: complex, c_minus: complex, params: JCParams,
                space: FockSpace, t: float) -> CompositeState:
    """Vacuum-started oscillator entangled with the well qubit at nu = 0.

    Global phase exp(i (g/omega)^2 (omega t - sin omega t)); the up block is
    c_plus |zeta(t)>, the down block c_minus |-zeta(t)>.
    """
    zeta = complex(pointer_path(params, t))
    phase = np.exp(1j * (params.g / params.omega) ** 2 * (params.omega * t - np.sin(params.omega * t)))
    up = phase * c_plus * coherent_state(space, zeta).amplitudes
    down = phase * c_minus * coherent_state(space, -zeta).amplitudes
    return CompositeState(FockVector(up, space), FockVector(down, space))


def reduced_oscillator_state(state: CompositeState,
                             include_branch_coherences: bool = False) -> np.ndarray:
    """Oscillator density matrix after tracing out the qubit.

    The partial trace of a block state is up up^dag + down down^dag; branch
    cross terms do not survive it.  `include_branch_coherences=True` adds
    them anyway (up down^dag + h.c.), which is not a partial trace and is
    kept only for comparison against treatments that ignore the qubit's
    orthogonality.
    """
    up = state.up.amplitudes
    down = state.down.amplitudes
    rho = np.outer(up, up.conj()) + np.outer(down, down.conj())
    if include_branch_coherences:
        rho = rho + np.outer(up, down.conj()) + np.outer(down, up.conj())
    return rho


def purity(rho: np.ndarray) -> float:
    return float(np.trace(rho @ rho).real)


@dataclass(frozen=True)
class DistinguishabilityReport:
    """Pointer-state overlap and the probe-quality inequality it implies.

    `coupling_scale` = 2 |zeta_0|^2 omega^3 (equal to f0^2 / m0 when the
    coupling comes from a force amplitude); the probe resolves the wells
    when omega^3 is far below it, equivalently when `overlap` is small.
    """

    overlap: float
    probe_ok: bool
    threshold: float
    omega_cubed: float
    coupling_scale: float


def distinguishability(params: JCParams, threshold: float = 1e-2) -> DistinguishabilityReport:
    """Pointer overlap exp(-4 |zeta_0|^2) and whether it clears `threshold`."""
    overlap = float(np.exp(-4.0 * abs(params.zeta0) ** 2))
    return DistinguishabilityReport(
        overlap=overlap,
        probe_ok=overlap < threshold,
        threshold=threshold,
        omega_cubed=params.omega**3,
        coupling_scale=2.0 * abs(params.zeta0) ** 2 * params.omega**3,
    )


def perturbative_propagator(params: JCParams, space: FockSpace, t: float) -> np.ndarray:
    """First-order interaction-picture correction O_t to the nu = 0 flow.

    [[cos(nu t) 1,           -i sin(nu t) D(2 zeta_0)],
     [-i sin(nu t) D(-2 zeta_0),          cos(nu t) 1]]
    The full propagator is adiabatic_propagator(t) @ O_t.  Valid for
    nu << omega and omega t >> 1; outside that a RegimeWarning is emitted.
    """
    if params.nu > 0 and (params.nu > 0.1 * params.omega
                          or (t > 0 and params.omega * t < 2.0 * np.pi)):
        warnings.warn(
            f"first-order propagator outside its regime (nu/omega = "
            f"{params.nu / params.omega:.3g}, omega t = {params.omega * t:.3g})",
            RegimeWarning,
            stacklevel=2,
        )
    d = space.dim
    z2 = 2.0 * params.zeta0
    d_plus = displacement(space, z2).matrix
    d_minus = displacement(space, -z2).matrix
    c, s = np.cos(params.nu * t), np.sin(params.nu * t)
    out = np.zeros((2 * d, 2 * d), dtype=complex)
    out[:d, :d] = c * np.eye(d)
    out[d:, d:] = c * np.eye(d)
    out[:d, d:] = -1j * s * d_plus
    out[d:, :d] = -1j * s * d_minus
    return out


def rabi_probability(params: JCParams, t) -> float | np.ndarray:
    """First-order pointer-swap probability sin^2(nu t)."""
    val = np.sin(params.nu * np.asarray(t)) ** 2
    return float(val) if np.ndim(t) == 0 else val


def stationary_state_check(params: JCParams, space: FockSpace, t: float,
                           sign: int) -> float:
    """Residual || e^{-i H0 t} |s zeta_0, s> - e^{i g^2 t / omega} |s zeta_0, s> ||.

    H0 is the nu = 0 Hamiltonian integrated by matrix exponential; the
    residual is a pure truncation diagnostic (<= 1e-8 at D = 64 for
    |zeta_0| <= 2).
    """
    h0 = total_hamiltonian(JCParams(0.0, params.omega, params.g), space)
    psi = pointer_state(params, space, sign).as_vector()
    from scipy.linalg import expm

    evolved = expm(-1j * h0 * t) @ psi
    expected = np.exp(1j * params.g**2 * t / params.omega) * psi
    return float(np.linalg.norm(evolved - expected))


def hamiltonian_step_count(params: JCParams, space: FockSpace, t: float,
                           max_step_norm: float = MAX_STEP_NORM) -> int:
    """Smallest step count with ||H|| t / steps <= max_step_norm."""
    h_norm = float(np.linalg.norm(total_hamiltonian(params, space), 2))
    return max(1, int(np.ceil(h_norm * abs(t) / max_step_norm)))


def exact_propagate(params: JCParams, space: FockSpace, state: CompositeState,
                    t: float, steps: int) -> CompositeState:
    """Integrate the full H by repeated application of exp(-i H t / steps).

    Requires ||H|| (t / steps) <= 0.1 (step-size contract); the step
    exponential is exactly unitary, so the norm is preserved.
    """
    h = total_hamiltonian(params, space)
    h_norm = float(np.linalg.norm(h, 2))
    if h_norm * abs(t) / steps > MAX_STEP_NORM * (1.0 + 1e-9):
        raise ValueError(
            f"step too large: ||H|| t / steps = {h_norm * abs(t) / steps:.3g} "
            f"> {MAX_STEP_NORM}; need steps >= {hamiltonian_step_count(params, space, t)}"
        )
    from scipy.linalg import expm

    u_step = expm(-1j * h * (t / steps))
    vec = state.as_vector()
    for _ in range(steps):
        vec = u_step @ vec
    return CompositeState.from_vector(space, vec)


def evolve_series(params: JCParams, space: FockSpace, state: CompositeState,
                  times: np.ndarray) -> list[CompositeState]:
    """States at the given uniformly spaced times (starting at times[0] = 0),
    stepping the full H with one shared step exponential."""
    times = np.asarray(times, dtype=float)
    if times[0] != 0.0:
        raise ValueError("time series must start at 0")
    if times.size < 2:
        return [state]
    seg = np.diff(times)
    if not np.allclose(seg, seg[0], rtol=1e-9, atol=0.0):
        raise ValueError("time series must be uniformly spaced")
    h = total_hamiltonian(params, space)
    h_norm = float(np.linalg.norm(h, 2))
    sub = max(1, int(np.ceil(h_norm * seg[0] / MAX_STEP_NORM)))
    from scipy.linalg import expm

    u_step = expm(-1j * h * (seg[0] / sub))
    out = [state]
    vec = state.as_vector()
    for _ in range(times.size - 1):
        for _ in range(sub):
            vec = u_step @ vec
        out.append(CompositeState.from_vector(space, vec))
    return out


def transition_probability_series(params: JCParams, space: FockSpace,
                                  times: np.ndarray,
                                  initial: CompositeState | None = None,
                                  target: CompositeState | None = None) -> np.ndarray:
    """|<target | U(t) | initial>|^2 along a uniform time series.

    Defaults: initial = |+zeta_0, +>, target = |-zeta_0, -> (the pointer
    swap channel).
    """
    if initial is None:
        initial = pointer_state(params, space, +1)
    if target is None:
        target = pointer_state(params, space, -1)
    states = evolve_series(params, space, initial, times)
    tvec = target.as_vector()
    return np.array([abs(np.vdot(tvec, st.as_vector())) ** 2 for st in states])


def interaction_picture_potential(params: JCParams, space: FockSpace,
                                  t: float) -> np.ndarray:
    """Interaction-picture tunneling term nu e^{i H0 t} sigma_1 e^{-i H0 t}.

    Off-diagonal blocks are S_t = D(zeta_0) e^{i w n t} D(-2 zeta_0)
    e^{-i w n t} D(zeta_0), assembled from exactly unitary factors, so the
    result is Hermitian with unitary blocks by construction.
    """
    s_t = _tunneling_block(params, space, t)
    d = space.dim
    out = np.zeros((2 * d, 2 * d), dtype=complex)
    out[:d, d:] = params.nu * s_t
    out[d:, :d] = params.nu * s_t.conj().T
    return out


def _tunneling_block(params: JCParams, space: FockSpace, t: float) -> np.ndarray:
    d_z = displacement(space, params.zeta0).matrix
    rot = np.exp(1j * params.omega * np.arange(space.dim) * t)
    d_mid = displacement(space, -2.0 * params.zeta0).matrix
    inner = (rot[:, None] * d_mid) * rot.conj()[None, :]
    return d_z @ inner @ d_z


def tunneling_block_time_average(params: JCParams, space: FockSpace, t: float,
                                 nodes: int = 4000) -> np.ndarray:
    """(1/t) Integral_0^t S(s) ds by the trapezoid rule.

    Quantifies how far the averaged interaction-picture tunneling block is
    from the bare pointer-swap displacement D(2 zeta_0): the average
    converges instead to the dressed block whose pointer matrix element is
    exp(-2 |zeta_0|^2).
    """
    if t <= 0:
        raise ValueError("average needs a positive time window")
    ss = np.linspace(0.0, t, nodes)
    d_z = displacement(space, params.zeta0).matrix
    d_mid = displacement(space, -2.0 * params.zeta0).matrix
    levels = np.arange(space.dim)
    acc = np.zeros((space.dim, space.dim), dtype=complex)
    for i, s in enumerate(ss):
        w = 0.5 if i in (0, nodes - 1) else 1.0
        rot = np.exp(1j * params.omega * levels * s)
        acc += w * ((rot[:, None] * d_mid) * rot.conj()[None, :])
    avg_inner = acc * (ss[1] - ss[0]) / t
    return d_z @ avg_inner @ d_z
