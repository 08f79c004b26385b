"""Command-line interface: solve, sweep, trace, and lemma1 subcommands.

Exit codes: 0 on success, 2 for parse/validation/usage problems, 3 when
the requested configuration is infeasible, 4 on numerical failure
(including rank-deficient zero-forcing). When ``--out`` is given, sweep
and trace render a matplotlib figure next to the CSV.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .beamforming import Precoder, incident_powers, mrt_precoder, object_steering_matrix
from .combining import (
    RankDeficient,
    equivalent_channels,
    mrc_combiner,
    sinr,
    zf_combiner,
)
from .posynomials import amplification, evaluate, lemma1_check, tx_power
from .report import ResultRow, to_db, write_rows
from .scenario import ParseError, ValidationError, bundled_scenario_path, parse_scenario_with_seed
from .scene import ChannelSet, Scene, generate_channels
from .solver import (
    Infeasible,
    NumericalFailure,
    StartInfeasible,
    build_joint_mrc_problem,
    build_txonly_problem,
    find_feasible_start,
    solve_sp,
)

__all__ = ["main"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_NUMERICAL = 4

_DISPLAY_POWER_FLOOR = 1e-6


def _resolve_scenario(arg: str) -> Path:
    path = Path(arg)
    if path.exists():
        return path
    bundled = bundled_scenario_path(arg)
    if bundled.exists():
        return bundled
    raise ParseError(f"scenario file not found: {arg}")


def _achieved_sinrs(
    scene: Scene, channels: ChannelSet, assignment: dict, combiner: str, mode: str
) -> np.ndarray:
    n = scene.n_targets
    powers = np.array([assignment[tx_power(t)] for t in range(n)])
    k = scene.sensors.sensor_count
    if mode == "joint":
        alphas = np.array([assignment[amplification(i)] for i in range(k)])
    else:
        alphas = np.full(k, scene.sensors.alpha_max)
    steering = object_steering_matrix(scene)
    beams = mrt_precoder(steering[:n])
    deltas, _ = incident_powers(scene, Precoder(directions=beams, powers=powers))
    eq = equivalent_channels(channels, alphas, scene.sensors.sensor_noise_var)
    comb = mrc_combiner(eq, n) if combiner == "mrc" else zf_combiner(eq, n)
    q = scene.response_powers
    return np.array(
        [sinr(j, comb, eq, deltas, q, scene.fusion.fc_noise_var) for j in range(n)]
    )


def _solve_point(
    scene: Scene, channels: ChannelSet, combiner: str, mode: str, seed: int
) -> tuple[ResultRow, object]:
    """Solve one configuration; infeasibility becomes a row, not an error."""
    psi_repr = max(scene.sinr_demands)
    if mode == "joint":
        problem = build_joint_mrc_problem(scene, channels)
    else:
        problem = build_txonly_problem(scene, channels, combiner)
    try:
        start = find_feasible_start(problem, scene)
        assignment, trace = solve_sp(problem, start)
    except (Infeasible, StartInfeasible):
        row = ResultRow(
            psi=psi_repr,
            combiner=combiner,
            mode=mode,
            objective_linear=None,
            objective_db=None,
            sinr_min=None,
            iterations=0,
            termination="Infeasible",
            seed=seed,
        )
        return row, None
    objective = evaluate(problem.objective, assignment)
    sinrs = _achieved_sinrs(scene, channels, assignment, combiner, mode)
    row = ResultRow(
        psi=psi_repr,
        combiner=combiner,
        mode=mode,
        objective_linear=objective,
        objective_db=to_db(objective),
        sinr_min=float(sinrs.min()),
        iterations=trace.iterations,
        termination=trace.termination.value,
        seed=seed,
        sinr_per_target=tuple(float(v) for v in sinrs),
    )
    return row, (assignment, trace)


def _emit_rows(rows, out: str | None, figure=None) -> None:
    if out is None:
        write_rows(rows, sys.stdout)
        return
    out_path = Path(out)
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        write_rows(rows, fh)
    if figure is not None:
        figure(out_path.with_suffix(".png"))


def _fmt_power(x: float) -> str:
    return "0" if x < _DISPLAY_POWER_FLOOR else f"{x:.6g}"


def _print_summary(scene: Scene, row: ResultRow, detail) -> None:
    print(f"termination: {row.termination}", file=sys.stderr)
    if row.objective_linear is None:
        return
    print(
        f"objective: {row.objective_linear:.6g} ({row.objective_db:.4f} dB) "
        f"after {row.iterations} iterations",
        file=sys.stderr,
    )
    print(
        "target SINRs: " + ", ".join(f"{v:.6g}" for v in row.sinr_per_target),
        file=sys.stderr,
    )
    assignment, _ = detail
    n = scene.n_targets
    k = scene.sensors.sensor_count
    powers = ", ".join(_fmt_power(assignment[tx_power(t)]) for t in range(n))
    print(f"tx powers: {powers}", file=sys.stderr)
    if row.mode == "joint":
        amps = ", ".join(_fmt_power(assignment[amplification(i)]) for i in range(k))
        print(f"amplifications: {amps}", file=sys.stderr)


def cmd_solve(args) -> int:
    scene, file_seed = parse_scenario_with_seed(_resolve_scenario(args.scenario))
    seed = args.seed if args.seed is not None else (file_seed if file_seed is not None else 0)
    channels = generate_channels(scene, seed)
    row, detail = _solve_point(scene, channels, args.combiner, args.mode, seed)
    _emit_rows([row], args.out)
    _print_summary(scene, row, detail)
    return EXIT_OK if row.termination != "Infeasible" else EXIT_INFEASIBLE


def _psi_grid(start: float, stop: float, step: float) -> list[float]:
    if step <= 0:
        raise ValueError("--psi-step must be positive")
    if stop < start:
        raise ValueError("--psi-to must not be below --psi-from")
    count = int((stop - start) / step + 1e-9) + 1
    return [start + i * step for i in range(count)]


def cmd_sweep(args) -> int:
    scene, file_seed = parse_scenario_with_seed(_resolve_scenario(args.scenario))
    seed = args.seed if args.seed is not None else (file_seed if file_seed is not None else 0)
    channels = generate_channels(scene, seed)
    grid = _psi_grid(args.psi_from, args.psi_to, args.psi_step)

    def work(psi: float) -> ResultRow:
        swept = dataclasses.replace(
            scene, sinr_demands=(psi,) * scene.n_targets
        )
        row, _ = _solve_point(swept, channels, args.combiner, args.mode, seed)
        return row

    with ThreadPoolExecutor() as pool:
        rows = list(pool.map(work, grid))

    def figure(path: Path) -> None:
        from .figures import render_sweep_figure

        render_sweep_figure(rows, path)

    _emit_rows(rows, args.out, figure)
    return EXIT_OK


def cmd_trace(args) -> int:
    scene, file_seed = parse_scenario_with_seed(_resolve_scenario(args.scenario))
    seed = args.seed if args.seed is not None else (file_seed if file_seed is not None else 0)
    channels = generate_channels(scene, seed)
    swept = dataclasses.replace(scene, sinr_demands=(args.psi,) * scene.n_targets)
    problem = build_joint_mrc_problem(swept, channels)
    start = find_feasible_start(problem, swept)
    _, trace = solve_sp(problem, start)
    iterations = list(range(1, len(trace.objectives) + 1))
    decibels = [to_db(v) for v in trace.objectives]

    lines = ["q,objective_db"] + [
        f"{q},{value!r}" for q, value in zip(iterations, decibels)
    ]
    text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        out_path = Path(args.out)
        out_path.write_text(text, encoding="utf-8")
        from .figures import render_trace_figure

        render_trace_figure(iterations, decibels, out_path.with_suffix(".png"))
    print(
        f"trace: {trace.termination.value} after {trace.iterations} iterations",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_lemma1(args) -> int:
    scene, file_seed = parse_scenario_with_seed(_resolve_scenario(args.scenario))
    seed = args.seed if args.seed is not None else (file_seed if file_seed is not None else 0)
    channels = generate_channels(scene, seed)
    report = lemma1_check(channels, scene.n_targets)
    print(f"seed: {seed}")
    print(f"posynomial: {'yes' if report.posynomial else 'no'}")
    if report.violations:
        print("violating cross terms (target, object, sensor_k, sensor_l):")
        for quad in report.violations:
            print(f"  {quad}")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="afsense",
        description="Minimum-power design of an amplify-and-forward RF probing network.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_config: bool = True) -> None:
        p.add_argument("scenario", help="scenario file path (or bundled name, e.g. paper_s4)")
        if with_config:
            p.add_argument("--combiner", choices=("mrc", "zf"), default="mrc")
            p.add_argument("--mode", choices=("joint", "txonly"), default="joint")
        p.add_argument("--seed", type=int, default=None, help="channel seed (default: scenario [rng] seed, else 0)")

    p_solve = sub.add_parser("solve", help="solve one configuration")
    add_common(p_solve)
    p_solve.add_argument("--out", default=None, help="CSV output path (default: stdout)")
    p_solve.set_defaults(func=cmd_solve)

    p_sweep = sub.add_parser("sweep", help="sweep the SINR demand")
    add_common(p_sweep)
    p_sweep.add_argument("--psi-from", type=float, required=True)
    p_sweep.add_argument("--psi-to", type=float, required=True)
    p_sweep.add_argument("--psi-step", type=float, required=True)
    p_sweep.add_argument("--out", default=None, help="CSV output path (default: stdout); a .png figure is rendered next to it")
    p_sweep.set_defaults(func=cmd_sweep)

    p_trace = sub.add_parser("trace", help="per-iteration objective of one joint MRC solve")
    add_common(p_trace, with_config=False)
    p_trace.add_argument("--psi", type=float, default=1.0, help="uniform SINR demand (default 1.0)")
    p_trace.add_argument("--out", default=None, help="CSV output path (default: stdout); a .png figure is rendered next to it")
    p_trace.set_defaults(func=cmd_trace)

    p_lemma = sub.add_parser("lemma1", help="check interference cross-term signs for a channel draw")
    add_common(p_lemma, with_config=False)
    p_lemma.set_defaults(func=cmd_lemma1)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "mode", None) == "joint" and getattr(args, "combiner", "mrc") == "zf":
        print(
            "error: joint mode optimizes the amplifications under MRC only; "
            "use --mode txonly with --combiner zf",
            file=sys.stderr,
        )
        return EXIT_USAGE
    try:
        return args.func(args)
    except (ParseError, ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (Infeasible, StartInfeasible) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except RankDeficient as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
