"""Orthonormal Hermitian basis, coordinate maps and Hilbert-Schmidt metrics.

The basis for N-level systems is the generalized Gell-Mann set normalized
so that ``Tr(sigma_k sigma_l) = delta_kl``, with the identity-proportional
element ``I / sqrt(N)`` stored last.  Element ``(r, s)`` (1-based) sits at
position ``k = r + (s - 1) N``:

* ``r < s``  symmetric     ``(|r><s| + |s><r|) / sqrt(2)``
* ``r > s``  antisymmetric ``i (-|s><r| + |r><s|) / sqrt(2)``
* ``r == s < N`` diagonal  ``(sum_{k<=r} |k><k| - r |r+1><r+1|) / sqrt(r + r^2)``
* ``r == s == N`` identity ``I / sqrt(N)``
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

HERMITIAN_TOL = 1e-10


@dataclass(frozen=True)
class HermitianBasis:
    """Ordered orthonormal basis of the N x N Hermitian matrices.

    ``elements`` has shape ``(N**2, N, N)``; the last element is
    proportional to the identity and all others are traceless.
    """

    dim: int
    elements: np.ndarray

    def __len__(self) -> int:
        return self.elements.shape[0]

    def __getitem__(self, k):
        return self.elements[k]

    @property
    def n_reduced(self) -> int:
        return self.dim * self.dim - 1


@lru_cache(maxsize=32)
def build_basis(N: int) -> HermitianBasis:
    """Return the standard orthonormal Hermitian basis for dimension ``N``."""
    if int(N) != N or N < 2:
        raise ValueError(f"basis dimension must be an integer >= 2, got {N!r}")
    N = int(N)
    out = np.zeros((N * N, N, N), dtype=complex)
    h = 1.0 / np.sqrt(2.0)
    for r in range(1, N + 1):
        for s in range(1, N + 1):
            M = out[r + (s - 1) * N - 1]
            if r < s:
                M[r - 1, s - 1] = M[s - 1, r - 1] = h
            elif r > s:
                # sigma_{sr} with s < r: i(-|s><r| + |r><s|)/sqrt(2)
                M[s - 1, r - 1] = -1j * h
                M[r - 1, s - 1] = 1j * h
            elif r < N:
                M[np.arange(r), np.arange(r)] = 1.0
                M[r, r] = -r
                M /= np.sqrt(r + r * r)
            else:
                M[...] = np.eye(N) / np.sqrt(N)
    out.setflags(write=False)
    return HermitianBasis(dim=N, elements=out)


def _as_square(M, name="matrix") -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"{name} must be square, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError(f"{name} has non-finite entries")
    return M


def is_hermitian(M, tol: float = HERMITIAN_TOL) -> bool:
    M = np.asarray(M)
    scale = max(1.0, np.linalg.norm(M))
    return bool(np.linalg.norm(M - M.conj().T) <= tol * scale)


def _check_pair(A, B):
    A = _as_square(A, "A")
    B = _as_square(B, "B")
    if A.shape != B.shape:
        raise ValueError(f"dimension mismatch: {A.shape} vs {B.shape}")
    return A, B


def expand(M, basis: HermitianBasis) -> np.ndarray:
    """Full real coordinate vector ``r_n = Tr(sigma_n M)`` of a Hermitian matrix."""
    M = _as_square(M)
    if M.shape[0] != basis.dim:
        raise ValueError(f"matrix is {M.shape[0]}x{M.shape[0]}, basis is for N={basis.dim}")
    if not is_hermitian(M):
        raise ValueError("expand requires a Hermitian matrix")
    # Tr(sigma_n M) = sum_ij sigma_n[i, j] M[j, i]
    r = np.einsum("nij,ji->n", basis.elements, M)
    return r.real.copy()


def reduced(M, basis: HermitianBasis) -> np.ndarray:
    """Bloch vector: the first ``N**2 - 1`` coordinates of ``M``."""
    return expand(M, basis)[:-1]


def reconstruct(r, basis: HermitianBasis) -> np.ndarray:
    """Inverse of :func:`expand`.

    A vector of length ``N**2 - 1`` is read as a Bloch vector and the
    trace component is fixed to one.
    """
    r = np.asarray(r, dtype=float)
    n = len(basis)
    if r.ndim != 1 or r.shape[0] not in (n, n - 1):
        raise ValueError(f"coordinate vector must have length {n} or {n - 1}, got shape {r.shape}")
    if r.shape[0] == n - 1:
        M = np.tensordot(r, basis.elements[:-1], axes=1)
        M = M + np.eye(basis.dim) / basis.dim
    else:
        M = np.tensordot(r, basis.elements, axes=1)
    return 0.5 * (M + M.conj().T)


def hs_inner(A, B) -> complex:
    """Hilbert-Schmidt inner product ``Tr(A^dagger B)``."""
    A, B = _check_pair(A, B)
    return complex(np.vdot(A, B))


def hs_norm(A) -> float:
    A = _as_square(A)
    return float(np.linalg.norm(A))


def hs_norm_squared_from_reduced(a, trace: float, N: int) -> float:
    """``<A|A>`` from a reduced coordinate vector and the trace of ``A``.

    The identity component is ``Tr(A)/sqrt(N)``, so the trace enters
    squared: ``Tr(A)**2 / N + <a, a>``.
    """
    a = np.asarray(a, dtype=float)
    return float(trace * trace / N + a @ a)


def hs_distance(A, B) -> float:
    """Hilbert-Schmidt distance ``sqrt(Tr[(A - B)^2])`` of Hermitian matrices."""
    A, B = _check_pair(A, B)
    return float(np.linalg.norm(A - B))


def trace_distance(A, B, halved: bool = True) -> float:
    """Trace distance of two Hermitian matrices.

    With ``halved=True`` this is ``0.5 * sum |lambda_i(A - B)|``; with
    ``halved=False`` the unnormalized trace norm ``sum |lambda_i|``, which
    is the convention satisfying ``||X||_HS <= ||X||_TR``.
    """
    A, B = _check_pair(A, B)
    D = A - B
    D = 0.5 * (D + D.conj().T)
    total = float(np.sum(np.abs(np.linalg.eigvalsh(D))))
    return 0.5 * total if halved else total
