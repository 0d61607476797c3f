"""Random single-dissipator surveys of HS-distance contractivity.

Each sample ``i`` for dimension ``N`` draws from its own generator seeded by
``SeedSequence([seed, N, i])``, so results do not depend on the number of
workers or on evaluation order.
"""

from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .analysis import positive_tolerance
from .basis import build_basis
from .superop import dissipator_part

log = logging.getLogger(__name__)

ENSEMBLES = ("complex-ginibre", "real-ginibre", "real-uniform")
NORMAL_RTOL = 1e-6


def sample_lindblad(N: int, rng: np.random.Generator, ensemble: str = "complex-ginibre") -> np.ndarray:
    """Draw one random Lindblad operator.

    ``complex-ginibre``: i.i.d. entries with real and imaginary parts
    ``N(0, 1/2)``.  ``real-ginibre``: i.i.d. ``N(0, 1)``.  ``real-uniform``:
    i.i.d. uniform on ``[0, 1)``.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    if ensemble == "complex-ginibre":
        z = rng.standard_normal((2, N, N))
        return (z[0] + 1j * z[1]) / np.sqrt(2.0)
    if ensemble == "real-ginibre":
        return rng.standard_normal((N, N)).astype(complex)
    if ensemble == "real-uniform":
        return rng.random((N, N)).astype(complex)
    raise ValueError(f"unknown ensemble {ensemble!r}; choose from {ENSEMBLES}")


def sample_rng(seed: int, N: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, N, index]))


@dataclass(frozen=True)
class SurveyConfig:
    dims: tuple
    samples_per_dim: int
    seed: int = 42
    ensemble: str = "complex-ginibre"
    workers: int = 1

    def __post_init__(self):
        dims = tuple(int(n) for n in self.dims)
        if not dims:
            raise ValueError("dims must not be empty")
        if any(n < 2 or n > 12 for n in dims):
            raise ValueError(f"dims must lie in 2..12, got {dims}")
        if self.samples_per_dim < 1:
            raise ValueError("samples_per_dim must be >= 1")
        if self.ensemble not in ENSEMBLES:
            raise ValueError(f"unknown ensemble {self.ensemble!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        object.__setattr__(self, "dims", dims)


@dataclass
class DimStats:
    dim: int
    samples: int
    non_contractive: int
    max_positive_count: int
    histogram: dict
    normal_V_count: int
    max_sym_eig: float
    failures: int = 0

    @property
    def non_contractive_fraction(self) -> float:
        ok = self.samples - self.failures
        return self.non_contractive / ok if ok else float("nan")


@dataclass
class SurveyResult:
    config: SurveyConfig
    per_dim: dict = field(default_factory=dict)

    def __getitem__(self, N: int) -> DimStats:
        return self.per_dim[N]

    def to_dict(self) -> dict:
        return {
            "config": {
                "dims": list(self.config.dims),
                "samples_per_dim": self.config.samples_per_dim,
                "seed": self.config.seed,
                "ensemble": self.config.ensemble,
                "generator": "numpy PCG64, SeedSequence([seed, N, index])",
            },
            "dims": {
                str(N): {
                    "samples": st.samples,
                    "non_contractive": st.non_contractive,
                    "non_contractive_fraction": st.non_contractive_fraction,
                    "max_positive_count": st.max_positive_count,
                    "histogram": {str(k): v for k, v in sorted(st.histogram.items())},
                    "normal_V_count": st.normal_V_count,
                    "max_sym_eig": st.max_sym_eig,
                    "failures": st.failures,
                }
                for N, st in self.per_dim.items()
            },
        }


def _classify(N: int, seed: int, start: int, stop: int, ensemble: str) -> list:
    """Per-sample ``(positive_count, max_sym_eig, V_is_normal)`` or ``None`` on failure."""
    basis = build_basis(N)
    out = []
    for i in range(start, stop):
        V = sample_lindblad(N, sample_rng(seed, N, i), ensemble)
        try:
            A = dissipator_part(V, basis)[:-1, :-1]
            ev = np.linalg.eigvalsh(A + A.T)
        except (np.linalg.LinAlgError, RuntimeError) as exc:
            log.warning("sample %d for N=%d failed: %s", i, N, exc)
            out.append(None)
            continue
        comm = V @ V.conj().T - V.conj().T @ V
        normal = np.linalg.norm(comm) <= NORMAL_RTOL * np.linalg.norm(V) ** 2
        out.append((int(np.sum(ev > positive_tolerance(A))), float(ev[-1]), bool(normal)))
    return out


def _chunks(n: int, k: int):
    step = -(-n // k)
    return [(a, min(a + step, n)) for a in range(0, n, step)]


def survey(config: SurveyConfig) -> SurveyResult:
    result = SurveyResult(config)
    for N in config.dims:
        n = config.samples_per_dim
        if config.workers > 1:
            with ProcessPoolExecutor(config.workers) as ex:
                parts = ex.map(
                    _classify,
                    *zip(*[(N, config.seed, a, b, config.ensemble) for a, b in _chunks(n, config.workers)]),
                )
                rows = [r for part in parts for r in part]
        else:
            rows = _classify(N, config.seed, 0, n, config.ensemble)
        good = [r for r in rows if r is not None]
        counts = [r[0] for r in good]
        result.per_dim[N] = DimStats(
            dim=N,
            samples=n,
            non_contractive=sum(1 for k in counts if k > 0),
            max_positive_count=max(counts, default=0),
            histogram=dict(Counter(counts)),
            normal_V_count=sum(1 for r in good if r[2]),
            max_sym_eig=max((r[1] for r in good), default=float("nan")),
            failures=len(rows) - len(good),
        )
        log.info("N=%d: %.1f%% non-contractive", N, 100 * result.per_dim[N].non_contractive_fraction)
    return result
