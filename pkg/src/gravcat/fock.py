"""Truncated harmonic-oscillator Hilbert space.

Dense complex linear algebra on the number basis |0>, ..., |D-1> with
hbar = 1 and <n-1|a|n> = sqrt(n).  Displacement operators are built as
matrix exponentials of the truncated generator w a^dag - conj(w) a; the
generator is exactly anti-Hermitian, so the resulting operator is unitary
to machine precision regardless of the cutoff.  Truncation error instead
shows up as leakage of displaced states past the top level, which
`vacuum_truncation_leak` quantifies analytically.

Rule of thumb used throughout: a cutoff D is adequate for displacements w
with |w|^2 <= D/4 (coherent-state occupation tail beyond D is then far
below double precision).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm as _expm
from scipy.special import gammainc as _gammainc


class TruncationInadequateWarning(UserWarning):
    """Displacement pushes significant amplitude past the Fock cutoff."""


@dataclass(frozen=True)
class FockSpace:
    """Oscillator Hilbert space truncated to the first `dim` number states."""

    dim: int

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError(f"Fock cutoff must be at least 2, got {self.dim}")


@dataclass
class FockVector:
    """Complex amplitude vector on a truncated Fock space.

    If `normalized` is set, unit norm is enforced at construction
    (tolerance 1e-10).
    """

    amplitudes: np.ndarray
    space: FockSpace
    normalized: bool = False

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.shape != (self.space.dim,):
            raise ValueError(
                f"amplitude vector has shape {amp.shape}, expected ({self.space.dim},)"
            )
        if not np.all(np.isfinite(amp.view(float))):
            raise ValueError("amplitude vector contains non-finite entries")
        self.amplitudes = amp
        if self.normalized and abs(self.norm() - 1.0) > 1e-10:
            raise ValueError(f"vector flagged normalized has norm {self.norm()!r}")

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def inner(self, other: "FockVector") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def overlap(self, other: "FockVector") -> float:
        """Fidelity |<self|other>|^2."""
        return abs(self.inner(other)) ** 2


@dataclass
class FockOperator:
    """Dense D x D operator on a truncated Fock space."""

    matrix: np.ndarray
    space: FockSpace

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        d = self.space.dim
        if mat.shape != (d, d):
            raise ValueError(f"operator has shape {mat.shape}, expected ({d}, {d})")
        self.matrix = mat

    @property
    def dagger(self) -> "FockOperator":
        return FockOperator(self.matrix.conj().T, self.space)

    def apply(self, vec: FockVector) -> FockVector:
        return FockVector(self.matrix @ vec.amplitudes, self.space)

    def expectation(self, vec: FockVector) -> complex:
        return complex(np.vdot(vec.amplitudes, self.matrix @ vec.amplitudes))

    def __matmul__(self, other):
        if isinstance(other, FockOperator):
            return FockOperator(self.matrix @ other.matrix, self.space)
        if isinstance(other, FockVector):
            return self.apply(other)
        return NotImplemented


def vacuum(space: FockSpace) -> FockVector:
    amp = np.zeros(space.dim, dtype=complex)
    amp[0] = 1.0
    return FockVector(amp, space, normalized=True)


def ladder_operators(space: FockSpace) -> tuple[FockOperator, FockOperator]:
    """Annihilation and creation operators (a, a^dag)."""
    d = space.dim
    a = np.zeros((d, d), dtype=complex)
    ns = np.arange(1, d)
    a[ns - 1, ns] = np.sqrt(ns)
    return FockOperator(a, space), FockOperator(a.conj().T, space)


def number_operator(space: FockSpace) -> FockOperator:
    return FockOperator(np.diag(np.arange(space.dim, dtype=complex)), space)


def matrix_exponential(op: FockOperator, scale: complex = 1.0) -> FockOperator:
    """exp(scale * op) by scaling-and-squaring (Pade); no eigendecomposition.

    Raises OverflowError if the result is not finite (pathological norms).
    """
    result = _expm(scale * op.matrix)
    if not np.all(np.isfinite(result.view(float))):
        raise OverflowError("matrix exponential overflowed; rescale the operator")
    return FockOperator(result, op.space)


def vacuum_truncation_leak(space: FockSpace, w: complex) -> float:
    """Probability weight of D(w)|0> beyond the top retained level.

    This is the tail of a Poisson distribution with mean |w|^2, evaluated
    through the regularized incomplete gamma function for stability at
    large |w|.
    """
    lam = abs(w) ** 2
    if lam == 0.0:
        return 0.0
    return float(_gammainc(space.dim, lam))


def displacement(space: FockSpace, w: complex, warn_inadequate: bool = True) -> FockOperator:
    """Displacement operator exp(w a^dag - conj(w) a) on the truncated space.

    Exactly unitary.  Emits TruncationInadequateWarning when the vacuum
    leak past the cutoff exceeds 1e-6, i.e. when displaced states are no
    longer faithfully represented.
    """
    d = space.dim
    gen = np.zeros((d, d), dtype=complex)
    ns = np.arange(1, d)
    gen[ns, ns - 1] = w * np.sqrt(ns)        # w a^dag
    gen[ns - 1, ns] = -np.conj(w) * np.sqrt(ns)  # -conj(w) a
    if warn_inadequate:
        leak = vacuum_truncation_leak(space, w)
        if leak > 1e-6:
            warnings.warn(
                f"displacement |w|^2 = {abs(w)**2:.3g} leaks {leak:.3g} of the "
                f"vacuum image past cutoff D = {d}; increase the cutoff",
                TruncationInadequateWarning,
                stacklevel=2,
            )
    mat = _expm(gen)
    return FockOperator(mat, space)


def coherent_state(space: FockSpace, zeta: complex, warn_inadequate: bool = True) -> FockVector:
    """Coherent state D(zeta)|0>."""
    op = displacement(space, zeta, warn_inadequate=warn_inadequate)
    amp = op.matrix[:, 0].copy()
    return FockVector(amp, space, normalized=True)
