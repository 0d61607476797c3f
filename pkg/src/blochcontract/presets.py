"""Built-in three-level systems used as worked examples."""

from __future__ import annotations

import numpy as np

from .superop import LindbladSystem


def _ket_bra(r: int, s: int, N: int = 3) -> np.ndarray:
    M = np.zeros((N, N), dtype=complex)
    M[r - 1, s - 1] = 1.0
    return M


def example1() -> LindbladSystem:
    """Single dissipator, unit upper-triangular V. Non-contractive HS distance."""
    return LindbladSystem.dissipative(np.triu(np.ones((3, 3))))


def example2() -> LindbladSystem:
    """|1><3| and the subdiagonal shift: unital, A not normal."""
    return LindbladSystem.dissipative(_ket_bra(1, 3), np.diag([1.0, 1.0], -1))


def example3(rates=(1.0, 1.0)) -> LindbladSystem:
    """Lambda system, decay |3> -> |1> and |3> -> |2>; equal rates give diagonal A."""
    return LindbladSystem.dissipative(_ket_bra(1, 3), _ket_bra(2, 3), rates=list(rates))


def example4() -> LindbladSystem:
    """Upper shift V: A not normal, non-unital, yet HS-distance contractive."""
    return LindbladSystem.dissipative(np.diag([1.0, 1.0], 1))


PRESETS = {
    "example1": example1,
    "example2": example2,
    "example3": example3,
    "example4": example4,
}

RATES = {"example3": [1.0, 1.0]}

FINDINGS = {
    "example1": [
        "not unital: c = (sqrt(2)/3)(1, 0, 0, 1, sqrt(3), 0, 0, -1)",
        "A invertible, not normal",
        "largest eigenvalue of A + A^T: gamma = 0.1914 > 0 (HS distance not contractive)",
        "steady state rho_ss = (1/5)[[2,-1,0],[-1,2,-1],[0,-1,1]]",
    ],
    "example2": [
        "[V_d, V_d^+] != 0 individually, but their sum vanishes: c = 0 (unital)",
        "HS norm and HS distance contractive",
        "A not normal",
    ],
    "example3": [
        "sum_d [V_d, V_d^+] = diag(1, 1, -2): not unital, HS norm not contractive",
        "equal rates: A diagonal, hence normal",
        "HS distance contractive",
    ],
    "example4": [
        "V and A not normal; not unital",
        "eigenvalues of A + A^T: -2 +- (2/3)sqrt(3), -3/2 +- sqrt(5)/2 (x2), -1 (x2); all negative",
        "HS distance contractive; unique steady state |1><1|",
        "from rho0 = diag(0, 0, 1) the HS norm first decreases then increases",
    ],
}
