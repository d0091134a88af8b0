"""Finite-dimensional quantum states, channels, and universal cloning.

All randomness flows through an explicit numpy Generator; no global RNG
state is touched.  Dense matrices only, with a hard size cap of
d**N <= 4096 on multi-copy spaces.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

SIZE_CAP = 4096
# Permutations of the copy factors are enumerated explicitly.
MAX_COPIES = 8

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
EIG_TOL = 1e-10
COMPLETENESS_TOL = 1e-10


@dataclass(frozen=True)
class PureState:
    """Unit vector in C^d."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.ndim != 1 or amp.size == 0:
            raise ValueError("amplitudes must be a nonempty vector")
        norm = np.linalg.norm(amp)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {norm} deviates from 1 beyond tolerance")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    @property
    def d(self) -> int:
        return self.amplitudes.size

    def density(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("density matrix must be square")
        if np.abs(m - m.conj().T).max() > HERMITIAN_TOL:
            raise ValueError("density matrix is not Hermitian within tolerance")
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace {tr} deviates from 1 beyond tolerance")
        min_eig = float(np.linalg.eigvalsh(m)[0])
        if min_eig < -EIG_TOL:
            raise ValueError(f"negative eigenvalue {min_eig} beyond tolerance")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def d(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class KrausChannel:
    """Quantum channel given by Kraus operators with sum K^dag K = I."""

    kraus_operators: tuple[np.ndarray, ...]

    def __post_init__(self):
        ops = tuple(np.asarray(k, dtype=complex) for k in self.kraus_operators)
        if not ops:
            raise ValueError("channel needs at least one Kraus operator")
        d_in = ops[0].shape[1]
        if any(k.ndim != 2 or k.shape != ops[0].shape for k in ops):
            raise ValueError("Kraus operators must all share one shape")
        acc = sum(k.conj().T @ k for k in ops)
        if np.abs(acc - np.eye(d_in)).max() > COMPLETENESS_TOL:
            raise ValueError("Kraus completeness sum K^dag K = I violated")
        for k in ops:
            k.setflags(write=False)
        object.__setattr__(self, "kraus_operators", ops)


def maximally_mixed(d: int) -> DensityMatrix:
    return DensityMatrix(np.eye(d) / d)


def haar_sample(d: int, rng: np.random.Generator) -> PureState:
    """Haar-uniform pure state: normalized vector of standard complex Gaussians."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    z = rng.normal(size=d) + 1j * rng.normal(size=d)
    return PureState(z / np.linalg.norm(z))


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Gaussian with phase-fixed diagonal."""
    z = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


def fidelity(target: PureState, delivered: DensityMatrix) -> float:
    """Pure-target fidelity <psi|rho|psi>."""
    if target.d != delivered.d:
        raise ValueError(f"dimension mismatch: {target.d} vs {delivered.d}")
    psi = target.amplitudes
    f = float(np.real(psi.conj() @ delivered.entries @ psi))
    return min(1.0, max(0.0, f))


def trace_distance(a: DensityMatrix, b: DensityMatrix) -> float:
    if a.d != b.d:
        raise ValueError(f"dimension mismatch: {a.d} vs {b.d}")
    eigs = np.linalg.eigvalsh(a.entries - b.entries)
    return 0.5 * float(np.abs(eigs).sum())


def apply_channel(ch: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    if ch.kraus_operators[0].shape[1] != rho.d:
        raise ValueError("channel input dimension does not match state")
    out = sum(k @ rho.entries @ k.conj().T for k in ch.kraus_operators)
    return DensityMatrix(out)


def partial_trace(state: DensityMatrix, keep: int, d: int, copies: int) -> DensityMatrix:
    """Reduced state of one factor of a d-dimensional N-fold tensor product."""
    if state.d != d**copies:
        raise ValueError(f"state dimension {state.d} is not {d}^{copies}")
    if not 0 <= keep < copies:
        raise ValueError(f"keep index {keep} out of range for {copies} factors")
    if copies == 1:
        return state
    rho = state.entries.reshape((d,) * (2 * copies))
    axes = [i for i in range(copies) if i != keep]
    for ax in reversed(axes):
        rho = np.trace(rho, axis1=ax, axis2=ax + rho.ndim // 2)
    return DensityMatrix(rho)


def _permutation_matrix(perm: tuple[int, ...], d: int) -> np.ndarray:
    """Operator permuting the tensor factors of (C^d)^otimes(N): factor i -> slot perm[i]."""
    n = len(perm)
    dim = d**n
    idx = np.arange(dim)
    digits = np.empty((n, dim), dtype=np.int64)
    rem = idx.copy()
    for i in range(n - 1, -1, -1):
        digits[i] = rem % d
        rem //= d
    out = np.zeros(dim, dtype=np.int64)
    for i in range(n):
        out = out * d + digits[perm[i]]
    mat = np.zeros((dim, dim))
    mat[out, idx] = 1.0
    return mat


@lru_cache(maxsize=None)
def _symmetric_projector_matrix(d: int, copies: int) -> np.ndarray:
    dim = d**copies
    acc = np.zeros((dim, dim))
    for perm in itertools.permutations(range(copies)):
        acc += _permutation_matrix(perm, d)
    acc /= math.factorial(copies)
    acc.setflags(write=False)
    return acc


@dataclass(frozen=True)
class SymmetricProjector:
    """Projector onto the symmetric subspace of (C^d)^otimes(N).

    Built as the average of all N! permutation operators; rank must equal
    binomial(N + d - 1, N).
    """

    d: int
    copies: int
    matrix: np.ndarray

    @classmethod
    def build(cls, d: int, copies: int) -> "SymmetricProjector":
        if d < 1 or copies < 1:
            raise ValueError("d and copies must be >= 1")
        if copies > MAX_COPIES:
            raise ValueError(f"copies > {MAX_COPIES} not supported")
        if d**copies > SIZE_CAP:
            raise ValueError(f"d^N = {d**copies} exceeds size cap {SIZE_CAP}")
        return cls(d=d, copies=copies, matrix=_symmetric_projector_matrix(d, copies))

    @property
    def rank(self) -> int:
        return math.comb(self.copies + self.d - 1, self.copies)


class UniversalCloner:
    """Optimal symmetric universal 1 -> N cloner.

    Maps rho on C^d to the normalized projection of rho tensor I^(N-1)
    onto the symmetric subspace of (C^d)^otimes(N).
    """

    def __init__(self, d: int, copies: int):
        if d < 2:
            raise ValueError(f"dimension must be >= 2, got {d}")
        if copies < 1:
            raise ValueError(f"copies must be >= 1, got {copies}")
        self.d = d
        self.copies = copies
        if copies > 1:
            self._proj = SymmetricProjector.build(d, copies)
            # Tr[P (rho x I)] is state-independent: rank(P) / d.
            self._norm = self._proj.rank / d
        else:
            self._proj = None
            self._norm = 1.0

    def __call__(self, rho: DensityMatrix) -> DensityMatrix:
        if rho.d != self.d:
            raise ValueError(f"dimension mismatch: {rho.d} vs {self.d}")
        if self.copies == 1:
            return rho
        big = np.kron(rho.entries, np.eye(self.d ** (self.copies - 1)))
        p = self._proj.matrix
        return DensityMatrix(p @ big @ p / self._norm)

    def marginal(self, rho: DensityMatrix) -> DensityMatrix:
        """Single-clone reduced state (identical across the N outputs)."""
        if rho.d != self.d:
            raise ValueError(f"dimension mismatch: {rho.d} vs {self.d}")
        if self.copies == 1:
            return rho
        sup = _marginal_superoperator(self.d, self.copies)
        vec = rho.entries.reshape(-1)
        return DensityMatrix((sup @ vec).reshape(self.d, self.d))


def _raw_first_marginal(big: np.ndarray, d: int, copies: int) -> np.ndarray:
    """Partial trace over factors 2..N of a raw d^N x d^N matrix."""
    t = big.reshape((d,) * (2 * copies))
    for _ in range(copies - 1):
        half = t.ndim // 2
        t = np.trace(t, axis1=half - 1, axis2=t.ndim - 1)
    return t


@lru_cache(maxsize=None)
def _marginal_superoperator(d: int, copies: int) -> np.ndarray:
    """d^2 x d^2 matrix of rho -> first-clone marginal of the universal cloner.

    Acts on row-major-vectorized rho; built by pushing each matrix unit E_ij
    through P (E_ij x I) P / norm followed by the partial trace.
    """
    proj = SymmetricProjector.build(d, copies).matrix
    norm = math.comb(copies + d - 1, copies) / d
    eye_rest = np.eye(d ** (copies - 1))
    sup = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            unit = np.zeros((d, d))
            unit[i, j] = 1.0
            big = proj @ np.kron(unit, eye_rest) @ proj / norm
            sup[:, i * d + j] = _raw_first_marginal(big, d, copies).reshape(-1)
    sup.setflags(write=False)
    return sup


def universal_cloner(d: int, copies: int) -> UniversalCloner:
    return UniversalCloner(d, copies)


def cloning_fidelity(d: int, copies: int) -> float:
    """Haar-average single-clone fidelity of the symmetric universal 1->N cloner.

    Closed form (2N + d - 1) / (N (d + 1)); must agree with the empirical
    marginal fidelity of the constructed cloner.
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    if copies < 1:
        raise ValueError(f"copies must be >= 1, got {copies}")
    return (2 * copies + d - 1) / (copies * (d + 1))


def measure_prepare(d: int, rng: np.random.Generator):
    """Measure-and-prepare map: Haar-random basis measurement, re-prepare outcome.

    Each invocation of the returned map samples a fresh basis.  Haar-average
    fidelity is 2 / (d + 1).
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")

    def run(psi: PureState) -> DensityMatrix:
        if psi.d != d:
            raise ValueError(f"dimension mismatch: {psi.d} vs {d}")
        u = haar_unitary(d, rng)
        probs = np.abs(u.conj().T @ psi.amplitudes) ** 2
        probs /= probs.sum()
        outcome = rng.choice(d, p=probs)
        col = u[:, outcome]
        return DensityMatrix(np.outer(col, col.conj()))

    return run
