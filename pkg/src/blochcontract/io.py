"""File formats: system specs (JSON), reports (JSON), trajectories and surveys (CSV)."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .dynamics import Trajectory
from .montecarlo import SurveyResult
from .superop import LindbladSystem


class SpecError(ValueError):
    """Malformed system specification or state file."""


def matrix_to_pairs(M) -> list:
    M = np.asarray(M, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def pairs_to_matrix(data, N: int | None = None, what: str = "matrix") -> np.ndarray:
    try:
        M = np.array(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise SpecError(f"{what}: not a rectangular array of [re, im] pairs ({exc})") from None
    if M.ndim != 3 or M.shape[2] != 2 or M.shape[0] != M.shape[1]:
        raise SpecError(f"{what}: expected an NxN array of [re, im] pairs, got shape {M.shape}")
    if N is not None and M.shape[0] != N:
        raise SpecError(f"{what}: expected {N}x{N}, got {M.shape[0]}x{M.shape[1]}")
    return M[..., 0] + 1j * M[..., 1]


def _loads(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{source}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def system_to_spec(system: LindbladSystem, rates=None) -> dict:
    """Serialize; when ``rates`` is given the stored operators are divided by ``sqrt(rate)``."""
    ops = list(system.lindblad_ops)
    if rates is not None:
        ops = [V / np.sqrt(g) if g > 0 else V for V, g in zip(ops, rates)]
    spec = {
        "dim": system.dim,
        "hamiltonian": matrix_to_pairs(system.hamiltonian),
        "lindblad_ops": [matrix_to_pairs(V) for V in ops],
    }
    if rates is not None:
        spec["rates"] = [float(g) for g in rates]
    return spec


def spec_to_system(spec: dict, source: str = "spec") -> LindbladSystem:
    if not isinstance(spec, dict):
        raise SpecError(f"{source}: top level must be a JSON object")
    try:
        N = int(spec["dim"])
    except (KeyError, TypeError, ValueError):
        raise SpecError(f"{source}: missing or invalid 'dim'") from None
    if N < 2:
        raise SpecError(f"{source}: dim must be >= 2")
    H = spec.get("hamiltonian")
    H = np.zeros((N, N), dtype=complex) if H is None else pairs_to_matrix(H, N, f"{source}: hamiltonian")
    raw_ops = spec.get("lindblad_ops", [])
    if not isinstance(raw_ops, list):
        raise SpecError(f"{source}: 'lindblad_ops' must be a list")
    ops = [pairs_to_matrix(V, N, f"{source}: lindblad_ops[{d}]") for d, V in enumerate(raw_ops)]
    rates = spec.get("rates")
    if rates is not None:
        if not isinstance(rates, list) or len(rates) != len(ops):
            raise SpecError(f"{source}: 'rates' must be a list matching lindblad_ops in length")
        if any(not isinstance(g, (int, float)) or g < 0 for g in rates):
            raise SpecError(f"{source}: rates must be nonnegative numbers")
        ops = [np.sqrt(g) * V for g, V in zip(rates, ops)]
    try:
        return LindbladSystem(H, tuple(ops))
    except ValueError as exc:
        raise SpecError(f"{source}: {exc}") from None


def load_system(path) -> LindbladSystem:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SpecError(f"{path}: {exc.strerror}") from None
    return spec_to_system(_loads(text, str(path)), str(path))


def load_state(path, N: int) -> np.ndarray:
    """Density matrix file: a bare NxN [re, im] array or ``{"rho": ...}``."""
    path = Path(path)
    try:
        data = _loads(path.read_text(), str(path))
    except OSError as exc:
        raise SpecError(f"{path}: {exc.strerror}") from None
    if isinstance(data, dict):
        data = data.get("rho")
    return pairs_to_matrix(data, N, f"{path}: rho")


def dump_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def trajectory_csv(traj: Trajectory) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    n = traj.states.shape[1]
    header = ["t"] + [f"s_{k}" for k in range(1, n + 1)] + ["hs_norm"]
    dist = traj.distance_to_reference
    if dist is not None:
        header.append("distance_to_reference")
    w.writerow(header)
    norms = traj.hs_norm
    for i, t in enumerate(traj.times):
        row = [repr(float(t))] + [repr(float(x)) for x in traj.states[i]] + [repr(float(norms[i]))]
        if dist is not None:
            row.append(repr(float(dist[i])))
        w.writerow(row)
    return buf.getvalue()


def write_trajectory(traj: Trajectory, path) -> None:
    Path(path).write_text(trajectory_csv(traj))


def read_trajectory_csv(path) -> dict:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], np.array(rows[1:], dtype=float)
    return {name: body[:, j] for j, name in enumerate(header)}


def survey_csv(result: SurveyResult) -> str:
    """Table with columns N and rows for percentage non-contractive and max positive count."""
    dims = list(result.per_dim)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["N"] + dims)
    w.writerow(["non-contractive"] + [f"{100 * result[N].non_contractive_fraction:.1f}%" for N in dims])
    w.writerow(["max. no. gamma>0"] + [result[N].max_positive_count for N in dims])
    return buf.getvalue()


def format_table(result: SurveyResult) -> str:
    dims = list(result.per_dim)
    rows = [
        ["N"] + [str(N) for N in dims],
        ["non-contractive"] + [f"{100 * result[N].non_contractive_fraction:.1f}%" for N in dims],
        ["max. no. gamma>0"] + [str(result[N].max_positive_count) for N in dims],
    ]
    widths = [max(len(r[j]) for r in rows) for j in range(len(rows[0]))]
    return "\n".join("  ".join(c.rjust(wd) for c, wd in zip(r, widths)) for r in rows)
