"""Real Bloch representation ``ds/dt = A s + c`` of the Lindblad equation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .basis import HermitianBasis, build_basis, is_hermitian

IMAG_TOL = 1e-12
DRIFT_TOL = 1e-12


class ConsistencyError(RuntimeError):
    """Two routes to the same quantity disagree beyond tolerance."""


@dataclass(frozen=True)
class LindbladSystem:
    """Hamiltonian ``H`` plus Lindblad operators ``V_d`` (rates absorbed)."""

    hamiltonian: np.ndarray
    lindblad_ops: tuple = field(default_factory=tuple)

    def __post_init__(self):
        H = np.asarray(self.hamiltonian, dtype=complex)
        if H.ndim != 2 or H.shape[0] != H.shape[1]:
            raise ValueError(f"hamiltonian must be square, got shape {H.shape}")
        N = H.shape[0]
        if N < 2:
            raise ValueError("system dimension must be >= 2")
        if not np.all(np.isfinite(H)):
            raise ValueError("hamiltonian has non-finite entries")
        if not is_hermitian(H):
            raise ValueError("hamiltonian is not Hermitian")
        ops = []
        for d, V in enumerate(self.lindblad_ops):
            V = np.asarray(V, dtype=complex)
            if V.shape != (N, N):
                raise ValueError(f"lindblad operator {d} has shape {V.shape}, expected {(N, N)}")
            if not np.all(np.isfinite(V)):
                raise ValueError(f"lindblad operator {d} has non-finite entries")
            ops.append(V)
        object.__setattr__(self, "hamiltonian", H)
        object.__setattr__(self, "lindblad_ops", tuple(ops))

    @classmethod
    def dissipative(cls, *ops, rates: Sequence[float] | None = None) -> "LindbladSystem":
        """Purely dissipative system; ``rates`` scale each ``V`` by ``sqrt(rate)``."""
        ops = [np.asarray(V, dtype=complex) for V in ops]
        if not ops:
            raise ValueError("need at least one operator to infer the dimension")
        if rates is not None:
            if len(rates) != len(ops):
                raise ValueError("rates and lindblad_ops differ in length")
            ops = [np.sqrt(g) * V for g, V in zip(rates, ops)]
        N = ops[0].shape[0]
        return cls(np.zeros((N, N), dtype=complex), tuple(ops))

    @property
    def dim(self) -> int:
        return self.hamiltonian.shape[0]


@dataclass(frozen=True)
class BlochSystem:
    """Affine generator on Bloch vectors: ``A`` is ``(N^2-1) x (N^2-1)``."""

    a_matrix: np.ndarray
    c_vector: np.ndarray
    basis: HermitianBasis

    @property
    def dim(self) -> int:
        return self.basis.dim


def _trace_products(X: np.ndarray, basis: HermitianBasis) -> np.ndarray:
    """``T[m, n] = Tr(X[m] sigma_n)`` for a stack ``X`` of N x N matrices."""
    K = len(basis)
    S_t = basis.elements.transpose(0, 2, 1).reshape(K, -1)
    return X.reshape(X.shape[0], -1) @ S_t.T


def hamiltonian_part(H, basis: HermitianBasis) -> np.ndarray:
    """``L_mn = Tr(i H [sigma_m, sigma_n])`` as a real ``N^2 x N^2`` matrix."""
    H = np.asarray(H, dtype=complex)
    if H.shape != (basis.dim, basis.dim):
        raise ValueError(f"H has shape {H.shape}, basis is for N={basis.dim}")
    if not is_hermitian(H):
        raise ValueError("hamiltonian_part requires Hermitian H")
    T = _trace_products(H @ basis.elements, basis)  # Tr(H s_m s_n)
    L = 1j * (T - T.T)
    return _real_part(L, "hamiltonian_part")


def dissipator_part(V, basis: HermitianBasis) -> np.ndarray:
    """``D_mn = Tr(V^+ s_m V s_n) - Tr(V^+ V {s_m, s_n}) / 2`` as a real matrix."""
    V = np.asarray(V, dtype=complex)
    if V.shape != (basis.dim, basis.dim):
        raise ValueError(f"V has shape {V.shape}, basis is for N={basis.dim}")
    Vd = V.conj().T
    S = basis.elements
    T1 = _trace_products(Vd @ S @ V, basis)
    T2 = _trace_products((Vd @ V) @ S, basis)  # Tr(V^+V s_m s_n)
    D = T1 - 0.5 * (T2 + T2.T)
    return _real_part(D, "dissipator_part")


def _real_part(M: np.ndarray, what: str) -> np.ndarray:
    scale = max(1.0, float(np.abs(M).max()))
    resid = float(np.abs(M.imag).max())
    if resid > IMAG_TOL * scale:
        raise ConsistencyError(f"{what}: imaginary residue {resid:.3e} exceeds tolerance")
    return np.ascontiguousarray(M.real)


def commutator_sum(system: LindbladSystem) -> np.ndarray:
    """``sum_d [V_d, V_d^dagger]``."""
    C = np.zeros((system.dim, system.dim), dtype=complex)
    for V in system.lindblad_ops:
        Vd = V.conj().T
        C += V @ Vd - Vd @ V
    return C


def full_generator(system: LindbladSystem, basis: HermitianBasis | None = None) -> np.ndarray:
    """``L + sum_d D^(d)`` acting on full coordinate vectors."""
    basis = basis or build_basis(system.dim)
    G = hamiltonian_part(system.hamiltonian, basis)
    for V in system.lindblad_ops:
        G = G + dissipator_part(V, basis)
    return G


def build_bloch_system(system: LindbladSystem, basis: HermitianBasis | None = None) -> BlochSystem:
    """Reduce the full generator to the affine Bloch form ``(A, c)``.

    ``c`` is computed from the commutator sum and cross-checked against the
    identity column of the full generator.
    """
    basis = basis or build_basis(system.dim)
    if basis.dim != system.dim:
        raise ValueError(f"basis is for N={basis.dim}, system has N={system.dim}")
    N = system.dim
    G = full_generator(system, basis)
    A = G[:-1, :-1].copy()

    C = commutator_sum(system)
    c = np.einsum("nij,ji->n", basis.elements[:-1], C).real / N
    c_col = G[:-1, -1] / np.sqrt(N)
    scale = max(1.0, float(np.abs(c).max()))
    if not np.allclose(c, c_col, rtol=0, atol=DRIFT_TOL * scale):
        raise ConsistencyError(
            f"drift mismatch between commutator and column formulas: "
            f"{np.abs(c - c_col).max():.3e}"
        )
    return BlochSystem(a_matrix=A, c_vector=c, basis=basis)


def apply_lindbladian(rho, system: LindbladSystem) -> np.ndarray:
    """Right-hand side ``-i[H, rho] + sum_d D[V_d] rho`` evaluated directly."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (system.dim, system.dim):
        raise ValueError(f"rho has shape {rho.shape}, system has N={system.dim}")
    if not is_hermitian(rho):
        raise ValueError("rho must be Hermitian")
    H = system.hamiltonian
    out = -1j * (H @ rho - rho @ H)
    for V in system.lindblad_ops:
        Vd = V.conj().T
        VdV = Vd @ V
        out += V @ rho @ Vd - 0.5 * (VdV @ rho + rho @ VdV)
    return 0.5 * (out + out.conj().T)
