"""Contractivity criteria for the HS norm and HS distance.

The HS norm of states is non-increasing iff the evolution is unital
(``c = 0``, equivalently ``sum_d [V_d, V_d^dagger] = 0``).  The HS distance
between states is non-increasing iff the symmetric part ``A + A^T`` has no
positive eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .basis import HermitianBasis, reconstruct
from .superop import BlochSystem, LindbladSystem, build_bloch_system, commutator_sum

UNITAL_TOL = 1e-10
NORMAL_RTOL = 1e-9
POSITIVE_RTOL = 1e-9
PSD_TOL = 1e-12
INTERIOR_TOL = 1e-8
MIN_ALPHA = 1e-6


def positive_tolerance(a_matrix: np.ndarray) -> float:
    """Threshold above which an eigenvalue of ``A + A^T`` counts as positive."""
    return POSITIVE_RTOL * float(np.linalg.norm(a_matrix))


def check_unital(system: LindbladSystem, bloch: BlochSystem | None = None) -> tuple[bool, float]:
    """Return ``(unital, ||sum_d [V_d, V_d^dagger]||_F)``.

    When ``bloch`` is given the verdict is cross-checked against ``||c||``.
    """
    residual = float(np.linalg.norm(commutator_sum(system)))
    unital = residual <= UNITAL_TOL
    if bloch is not None:
        # ||c|| = residual / N, so verdicts may only differ inside (tol, N tol]
        c_zero = float(np.linalg.norm(bloch.c_vector)) <= UNITAL_TOL
        if c_zero != unital and not (UNITAL_TOL < residual <= system.dim * UNITAL_TOL):
            raise RuntimeError(
                f"unitality verdicts disagree: commutator residual {residual:.3e}, "
                f"||c|| = {np.linalg.norm(bloch.c_vector):.3e}"
            )
    return unital, residual


def symmetric_eigh(bloch: BlochSystem) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues and orthonormal eigenvectors (columns) of ``A + A^T``."""
    A = bloch.a_matrix
    if not np.all(np.isfinite(A)):
        raise np.linalg.LinAlgError("A has non-finite entries")
    return np.linalg.eigh(A + A.T)


def symmetric_spectrum(bloch: BlochSystem) -> np.ndarray:
    return symmetric_eigh(bloch)[0]


def check_normal(M) -> tuple[bool, float]:
    """Return ``(normal, ||M M^T - M^T M||_F)`` for a real square matrix."""
    M = np.asarray(M, dtype=float)
    residual = float(np.linalg.norm(M @ M.T - M.T @ M))
    return residual <= NORMAL_RTOL * float(np.linalg.norm(M)) ** 2, residual


@dataclass(frozen=True)
class SteadyState:
    """Solution set ``{vector + null_space @ x}`` of ``A s + c = 0``."""

    vector: np.ndarray
    unique: bool
    null_space: np.ndarray


def steady_state(bloch: BlochSystem) -> SteadyState:
    A, c = bloch.a_matrix, bloch.c_vector
    U, sv, Vt = np.linalg.svd(A)
    if sv[-1] > 1e-10 * sv[0]:
        s = -np.linalg.solve(A, c)
        return SteadyState(s, True, np.zeros((A.shape[0], 0)))
    rank = int(np.sum(sv > 1e-10 * sv[0])) if sv[0] > 0 else 0
    s = np.linalg.lstsq(A, -c, rcond=None)[0]
    return SteadyState(s, False, Vt[rank:].T.copy())


@dataclass(frozen=True)
class Witness:
    """Pair of physical Bloch vectors whose distance initially grows.

    ``state - reference = alpha * vector``; ``initial_rate`` is the
    derivative of the squared HS distance at ``t = 0``.
    """

    state: np.ndarray
    reference: np.ndarray
    vector: np.ndarray
    gamma: float
    alpha: float
    initial_rate: float

    def density_matrices(self, basis: HermitianBasis) -> tuple[np.ndarray, np.ndarray]:
        return reconstruct(self.state, basis), reconstruct(self.reference, basis)


def _min_eig(s: np.ndarray, basis: HermitianBasis) -> float:
    return float(np.linalg.eigvalsh(reconstruct(s, basis))[0])


def _max_alpha(base, v, basis, hi) -> float:
    """Largest ``alpha`` in ``[0, hi]`` with ``base + alpha v`` PSD (bisection)."""
    if _min_eig(base + hi * v, basis) >= -PSD_TOL:
        return hi
    lo = 0.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if _min_eig(base + mid * v, basis) >= -PSD_TOL:
            lo = mid
        else:
            hi = mid
    return lo


def _interior_base(bloch: BlochSystem) -> np.ndarray:
    ss = steady_state(bloch)
    if ss.unique and _min_eig(ss.vector, bloch.basis) > INTERIOR_TOL:
        return ss.vector
    # maximally mixed state is always interior
    return np.zeros(bloch.a_matrix.shape[0])


def witness_state(bloch: BlochSystem, alpha: float | None = None) -> Optional[Witness]:
    """Construct states whose HS distance grows at ``t = 0``.

    The reference is the steady state when it is unique and full rank,
    otherwise the maximally mixed state.  Positive-eigenvalue eigenvectors
    of ``A + A^T`` are tried from the largest eigenvalue down, in both
    orientations.  With ``alpha`` given, that displacement is used if it
    is physical; otherwise the largest admissible one is found by
    bisection.  Returns ``None`` when ``A + A^T`` has no positive
    eigenvalue.
    """
    evals, evecs = symmetric_eigh(bloch)
    tol = positive_tolerance(bloch.a_matrix)
    if evals[-1] <= tol:
        return None
    basis = bloch.basis
    N = basis.dim
    base = _interior_base(bloch)
    # distances between states are bounded by sqrt(2); 2 * radius of state set
    hi = 2.0 * np.sqrt((N - 1) / N)
    S = bloch.a_matrix + bloch.a_matrix.T
    for idx in range(len(evals) - 1, -1, -1):
        gamma = float(evals[idx])
        if gamma <= tol:
            break
        for sign in (1.0, -1.0):
            v = sign * evecs[:, idx]
            if alpha is not None:
                if _min_eig(base + alpha * v, basis) < -PSD_TOL:
                    continue
                a = float(alpha)
            else:
                a = _max_alpha(base, v, basis, hi)
                if a < MIN_ALPHA:
                    continue
            delta = a * v
            rate = float(delta @ S @ delta)
            return Witness(
                state=base + delta,
                reference=base.copy(),
                vector=v,
                gamma=gamma,
                alpha=a,
                initial_rate=rate,
            )
    raise RuntimeError("no admissible witness displacement found for any positive eigenvector")


@dataclass
class ContractivityReport:
    unital: bool
    commutator_residual: float
    a_normal: bool
    normal_residual: float
    sym_spectrum: np.ndarray
    max_sym_eig: float
    positive_count: int
    positive_tol: float
    hs_norm_contractive: bool
    hs_distance_contractive: bool
    steady_state: Optional[np.ndarray] = None
    steady_state_unique: bool = False
    witness: Optional[Witness] = None
    dissipator_normal: list = field(default_factory=list)

    def to_dict(self) -> dict:
        w = None
        if self.witness is not None:
            w = {
                "vector": self.witness.vector.tolist(),
                "gamma": self.witness.gamma,
                "alpha": self.witness.alpha,
                "initial_rate": self.witness.initial_rate,
                "state": self.witness.state.tolist(),
                "reference": self.witness.reference.tolist(),
            }
        return {
            "unital": self.unital,
            "commutator_residual": self.commutator_residual,
            "a_normal": self.a_normal,
            "normal_residual": self.normal_residual,
            "sym_spectrum": [float(x) for x in self.sym_spectrum],
            "max_sym_eig": self.max_sym_eig,
            "positive_count": self.positive_count,
            "positive_tol": self.positive_tol,
            "hs_norm_contractive": self.hs_norm_contractive,
            "hs_distance_contractive": self.hs_distance_contractive,
            "steady_state": None if self.steady_state is None else self.steady_state.tolist(),
            "steady_state_unique": self.steady_state_unique,
            "dissipator_normal": list(self.dissipator_normal),
            "witness": w,
        }

    def verdict(self) -> str:
        yn = lambda b: "yes" if b else "no"
        return (
            f"HS-norm contractive: {yn(self.hs_norm_contractive)}; "
            f"HS-distance contractive: {yn(self.hs_distance_contractive)}"
        )


def analyze(system: LindbladSystem, basis: HermitianBasis | None = None) -> ContractivityReport:
    bloch = build_bloch_system(system, basis)
    unital, resid = check_unital(system, bloch)
    normal, nres = check_normal(bloch.a_matrix)
    spec = symmetric_spectrum(bloch)
    tol = positive_tolerance(bloch.a_matrix)
    npos = int(np.sum(spec > tol))
    ss = steady_state(bloch)
    dist_ok = npos == 0
    dissipator_normal = [
        bool(np.linalg.norm(V @ V.conj().T - V.conj().T @ V) <= UNITAL_TOL)
        for V in system.lindblad_ops
    ]
    return ContractivityReport(
        unital=unital,
        commutator_residual=resid,
        a_normal=normal,
        normal_residual=nres,
        sym_spectrum=spec,
        max_sym_eig=float(spec[-1]),
        positive_count=npos,
        positive_tol=tol,
        hs_norm_contractive=unital,
        hs_distance_contractive=dist_ok,
        steady_state=ss.vector,
        steady_state_unique=ss.unique,
        witness=None if dist_ok else witness_state(bloch),
        dissipator_normal=dissipator_normal,
    )
