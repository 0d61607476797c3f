"""Command-line interface: ``analyze``, ``simulate``, ``survey``, ``examples``.

Exit codes: 0 success, 2 bad input (flags, spec or state files), 3 numerical
failure, 4 ``--witness`` requested for an HS-distance contractive system.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import io
from .analysis import analyze, steady_state, witness_state
from .basis import reduced
from .dynamics import default_grid, monotonicity_check, propagate
from .montecarlo import ENSEMBLES, SurveyConfig, survey
from .presets import FINDINGS, PRESETS, RATES
from .superop import ConsistencyError, build_bloch_system

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_CONTRACTIVE = 0, 2, 3, 4

log = logging.getLogger("blochcontract")


def _resolve_system(ref: str):
    """A spec file path, or the name of a built-in example."""
    if not Path(ref).exists() and ref in PRESETS:
        return PRESETS[ref]()
    return io.load_system(ref)


def _parse_dims(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid dims {text!r}; use e.g. 2..8 or 2,3,5") from None


def _parse_diag(text: str) -> np.ndarray:
    try:
        return np.array([float(x) for x in text.split(",")])
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid diagonal {text!r}") from None


def cmd_analyze(args) -> int:
    system = _resolve_system(args.spec)
    report = analyze(system)
    if args.output:
        io.dump_json(report.to_dict(), args.output)
    print(report.verdict())
    print(f"max eigenvalue of A + A^T: {report.max_sym_eig:.6g} ({report.positive_count} positive)")
    return EXIT_OK


def cmd_simulate(args) -> int:
    system = _resolve_system(args.spec)
    bloch = build_bloch_system(system)
    basis = bloch.basis
    times = default_grid(args.t_max, args.steps)
    meta = None

    if args.witness:
        w = witness_state(bloch, alpha=args.alpha)
        if w is None:
            print("system is HS-distance contractive; no witness exists", file=sys.stderr)
            return EXIT_CONTRACTIVE
        traj = propagate(bloch, w.state, times)
        ref = propagate(bloch, w.reference, times)
        traj = traj.with_reference(ref)
        mono = monotonicity_check(bloch, traj, ref)
        meta = {
            "gamma": w.gamma,
            "alpha": w.alpha,
            "initial_rate": w.initial_rate,
            "vector": w.vector.tolist(),
            "reference": w.reference.tolist(),
            "monotone": mono.monotone,
            "first_violation_time": mono.first_violation_time,
        }
        print(f"gamma = {w.gamma:.6g}, alpha = {w.alpha:.6g}, d/dt d_HS^2(0) = {w.initial_rate:.6g}")
    else:
        N = system.dim
        if args.initial_diag is not None:
            if args.initial_diag.size != N:
                print(f"--initial-diag needs {N} entries", file=sys.stderr)
                return EXIT_INPUT
            rho0 = np.diag(args.initial_diag).astype(complex)
        elif args.initial is not None:
            rho0 = io.load_state(args.initial, N)
        else:
            print("one of --initial, --initial-diag or --witness is required", file=sys.stderr)
            return EXIT_INPUT
        if abs(np.trace(rho0).real - 1.0) > 1e-10:
            print("initial state must have unit trace", file=sys.stderr)
            return EXIT_INPUT
        traj = propagate(bloch, reduced(rho0, basis), times)
        if args.reference == "steady":
            ss = steady_state(bloch)
            if not ss.unique:
                print("steady state is not unique; cannot use it as reference", file=sys.stderr)
                return EXIT_INPUT
            traj = traj.with_reference(propagate(bloch, ss.vector, times, check_physical=False))

    io.write_trajectory(traj, args.output)
    if meta is not None:
        io.dump_json(meta, Path(args.output).with_suffix(".witness.json"))
    return EXIT_OK


def cmd_survey(args, parser) -> int:
    try:
        config = SurveyConfig(
            dims=tuple(args.dims),
            samples_per_dim=args.samples,
            seed=args.seed,
            ensemble=args.ensemble,
            workers=args.workers,
        )
    except ValueError as exc:
        parser.error(str(exc))
    result = survey(config)
    out = Path(args.output)
    out.write_text(io.survey_csv(result))
    io.dump_json(result.to_dict(), out.with_suffix(".json"))
    print(io.format_table(result))
    failures = sum(st.failures for st in result.per_dim.values())
    if failures:
        print(f"{failures} samples failed numerically (see JSON)", file=sys.stderr)
    return EXIT_OK


def cmd_examples(args) -> int:
    if args.name not in PRESETS:
        print(f"unknown example {args.name!r}; choose from {', '.join(PRESETS)}", file=sys.stderr)
        return EXIT_INPUT
    system = PRESETS[args.name]()
    out = args.output or f"{args.name}.json"
    io.dump_json(io.system_to_spec(system, RATES.get(args.name)), out)
    print(f"wrote {out}")
    for line in FINDINGS[args.name]:
        print(f"  - {line}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="blochcontract", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="contractivity report for a system")
    a.add_argument("spec", help="system spec JSON, or a built-in name (example1..example4)")
    a.add_argument("-o", "--output", help="report JSON path")

    s = sub.add_parser("simulate", help="propagate a state and write a trajectory CSV")
    s.add_argument("spec")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--initial", help="initial density matrix JSON")
    g.add_argument("--initial-diag", type=_parse_diag, help="diagonal initial state, e.g. 0,0,1")
    g.add_argument("--witness", action="store_true", help="start from a distance-increasing witness pair")
    s.add_argument("--alpha", type=float, help="witness displacement (default: largest physical)")
    s.add_argument("--reference", choices=("none", "steady"), default="none")
    s.add_argument("--t-max", type=float, default=10.0)
    s.add_argument("--steps", type=int, default=400)
    s.add_argument("-o", "--output", required=True)

    v = sub.add_parser("survey", help="Monte Carlo contractivity survey")
    v.add_argument("--dims", type=_parse_dims, default=list(range(2, 9)))
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--ensemble", choices=ENSEMBLES, default="complex-ginibre")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("-o", "--output", default="survey.csv", help="CSV path; JSON goes next to it")

    e = sub.add_parser("examples", help="write a built-in example spec")
    e.add_argument("name")
    e.add_argument("-o", "--output")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        if args.command == "analyze":
            return cmd_analyze(args)
        if args.command == "simulate":
            if args.steps < 2 or not np.isfinite(args.t_max) or args.t_max <= 0:
                parser.error("need --steps >= 2 and a positive finite --t-max")
            return cmd_simulate(args)
        if args.command == "survey":
            return cmd_survey(args, parser)
        return cmd_examples(args)
    except io.SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (np.linalg.LinAlgError, ConsistencyError, RuntimeError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
