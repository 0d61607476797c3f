"""Exact propagation of the affine Bloch equation and distance monitoring."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from .analysis import steady_state
from .basis import reconstruct
from .superop import BlochSystem

PHYSICAL_TOL = 1e-8
MONOTONE_RTOL = 1e-10


@dataclass(frozen=True)
class Trajectory:
    """Bloch vectors ``states[i]`` at ``times[i]``.

    ``reference`` optionally holds a second trajectory on the same grid;
    ``distance_to_reference`` is then the pointwise HS distance to it.
    """

    times: np.ndarray
    states: np.ndarray
    dim: int
    reference: Optional[np.ndarray] = None

    @property
    def hs_norm(self) -> np.ndarray:
        """``||rho(t)||_2 = sqrt(1/N + ||s||^2)``."""
        return np.sqrt(1.0 / self.dim + np.sum(self.states**2, axis=1))

    @property
    def distance_to_reference(self) -> Optional[np.ndarray]:
        if self.reference is None:
            return None
        return np.linalg.norm(self.states - self.reference, axis=1)

    def with_reference(self, other: "Trajectory") -> "Trajectory":
        _check_grids(self, other)
        return Trajectory(self.times, self.states, self.dim, reference=other.states)

    def density_matrices(self, basis) -> np.ndarray:
        return np.array([reconstruct(s, basis) for s in self.states])


def _check_grid(times) -> np.ndarray:
    t = np.asarray(times, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise ValueError("time grid must be a non-empty 1-d array")
    if not np.all(np.isfinite(t)):
        raise ValueError("time grid has non-finite entries")
    if t[0] != 0.0 or np.any(np.diff(t) <= 0):
        raise ValueError("time grid must start at 0 and be strictly increasing")
    return t


def _check_grids(t1: Trajectory, t2: Trajectory):
    if t1.times.shape != t2.times.shape or not np.array_equal(t1.times, t2.times):
        raise ValueError("trajectories are on different time grids")


def default_grid(t_max: float = 10.0, steps: int = 400) -> np.ndarray:
    return np.linspace(0.0, t_max, steps)


def propagate(bloch: BlochSystem, s0, times, check_physical: bool = True) -> Trajectory:
    """Evaluate ``s(t)`` for ``ds/dt = A s + c`` exactly on ``times``.

    With invertible ``A`` this is ``e^{tA}(s0 - s_ss) + s_ss``; otherwise the
    augmented linear system ``[[A, c], [0, 0]]`` is exponentiated.
    """
    t = _check_grid(times)
    A, c = bloch.a_matrix, bloch.c_vector
    s0 = np.asarray(s0, dtype=float)
    if s0.shape != c.shape:
        raise ValueError(f"initial Bloch vector has shape {s0.shape}, expected {c.shape}")
    if check_physical:
        lam = np.linalg.eigvalsh(reconstruct(s0, bloch.basis))[0]
        if lam < -PHYSICAL_TOL:
            raise ValueError(f"initial state is not positive semidefinite (min eigenvalue {lam:.3e})")

    ss = steady_state(bloch)
    out = np.empty((t.size, s0.size))
    if ss.unique:
        d0 = s0 - ss.vector
        for i, ti in enumerate(t):
            out[i] = expm(ti * A) @ d0 + ss.vector
    else:
        n = s0.size
        G = np.zeros((n + 1, n + 1))
        G[:n, :n] = A
        G[:n, n] = c
        x0 = np.append(s0, 1.0)
        for i, ti in enumerate(t):
            out[i] = (expm(ti * G) @ x0)[:n]
    return Trajectory(times=t, states=out, dim=bloch.dim)


def integrate_ode(bloch: BlochSystem, s0, times, rtol=1e-11, atol=1e-12) -> np.ndarray:
    """Adaptive Runge-Kutta (4)5 solution of the Bloch equation.

    Independent of :func:`propagate`; used to cross-check it.
    """
    t = _check_grid(times)
    A, c = bloch.a_matrix, bloch.c_vector
    sol = solve_ivp(
        lambda _, s: A @ s + c,
        (t[0], t[-1]),
        np.asarray(s0, dtype=float),
        method="RK45",
        t_eval=t,
        rtol=rtol,
        atol=atol,
    )
    if not sol.success:
        raise RuntimeError(sol.message)
    return sol.y.T


def distance_series(t1: Trajectory, t2: Trajectory) -> np.ndarray:
    """Pointwise HS distance between two trajectories on the same grid."""
    _check_grids(t1, t2)
    return np.linalg.norm(t1.states - t2.states, axis=1)


@dataclass(frozen=True)
class MonotonicityResult:
    monotone: bool
    first_violation_time: Optional[float]
    derivative: np.ndarray


def monotonicity_check(bloch: BlochSystem, t1: Trajectory, t2: Trajectory) -> MonotonicityResult:
    """Sign of ``d/dt d_HS^2 = Delta^T (A + A^T) Delta`` along the grid."""
    _check_grids(t1, t2)
    delta = t1.states - t2.states
    S = bloch.a_matrix + bloch.a_matrix.T
    deriv = np.einsum("ti,ij,tj->t", delta, S, delta)
    bad = deriv > MONOTONE_RTOL * np.sum(delta**2, axis=1)
    if not bad.any():
        return MonotonicityResult(True, None, deriv)
    return MonotonicityResult(False, float(t1.times[np.argmax(bad)]), deriv)
