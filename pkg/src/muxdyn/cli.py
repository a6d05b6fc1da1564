"""Command-line surface.

Four subcommands over the JSON network format:

* ``validate`` — run the structural checks; human-readable findings go to
  stderr, a JSON report to stdout.  Exit 0 only when nothing is violated.
* ``analyze``  — predict the limit profile and print the analysis as JSON.
* ``simulate`` — run the dynamics, write a CSV trajectory (and a PNG figure
  unless ``--no-plot``), print a summary JSON to stdout.
* ``bidirectional`` — write the symmetrized variant of a network to a new
  file, opinions carried over unchanged.

Exit codes are stable for scripting: 0 success, 1 a network that parses but
fails the structural requirements (or any other analysis failure), 2 for
unreadable/malformed input or unwritable output.  The ``MUXDYN_LOG``
environment variable (error, info, debug; default error) controls stderr
logging verbosity.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from .analysis import AnalysisReport, analyze
from .dynamics import (
    DEFAULT_T_MAX,
    DEFAULT_TOL,
    BoundParameters,
    Calibration,
    calibrate_u,
    simulate,
    with_bound,
)
from .errors import CalibrationError, MuxdynError, NetworkFormatError
from .matrices import induced_norm, layer_adjacency
from .netfile import load_network, save_network
from .network import MultiplexNetwork, ValidationReport, symmetrize, validate_assumptions
from .reporting import render_convergence_figure, run_summary, write_trajectory_csv

log = logging.getLogger("muxdyn")

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2


def _configure_logging() -> None:
    level_name = os.environ.get("MUXDYN_LOG", "error").strip().lower()
    levels = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
    if level_name not in levels:
        print(
            f"muxdyn: ignoring MUXDYN_LOG={level_name!r} (expected error, info or debug)",
            file=sys.stderr,
        )
        level_name = "error"
    logging.basicConfig(
        level=levels[level_name],
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _labels(net: MultiplexNetwork, indices) -> list[str]:
    return [net.labels[i] for i in sorted(indices)]


def _validation_json(net: MultiplexNetwork, report: ValidationReport) -> dict:
    return {
        "ok": report.ok,
        "leaders": {
            "layer1": _labels(net, report.leaders_layer1),
            "layer2": _labels(net, report.leaders_layer2),
            "union": _labels(net, report.leaders_union),
        },
        "spanning_tree_root": (
            None
            if report.spanning_tree_root is None
            else net.labels[report.spanning_tree_root]
        ),
        "violations": [
            {
                "code": v.code,
                "message": v.message,
                "agents": _labels(net, v.agents),
            }
            for v in report.violations
        ],
    }


def cmd_validate(args: argparse.Namespace) -> int:
    net, _ = load_network(args.network)
    report = validate_assumptions(net)
    if report.ok:
        print(f"{args.network}: ok ({net.n} agents)", file=sys.stderr)
    else:
        for v in report.violations:
            agents = ", ".join(_labels(net, v.agents)) or "-"
            print(f"{args.network}: {v.code}: {v.message} [{agents}]", file=sys.stderr)
    json.dump(_validation_json(net, report), sys.stdout, indent=2)
    print()
    return EXIT_OK if report.ok else EXIT_INVALID


def _analysis_json(net: MultiplexNetwork, report: AnalysisReport) -> dict:
    closed = [net.labels[i] for i in report.canonical.closed_class]
    return {
        "leaders": _validation_json(net, report.validation)["leaders"],
        "classes": [
            {"members": [net.labels[i] for i in c.members], "closed": c.closed}
            for c in report.classes
        ],
        "closed_class": closed,
        "pi": dict(zip(closed, (float(w) for w in report.prediction.pi.weights))),
        "consensus_value": report.prediction.consensus_value,
        "q": report.contraction,
        "mode": report.prediction.mode,
    }


def cmd_analyze(args: argparse.Namespace) -> int:
    net, x0 = load_network(args.network)
    report = analyze(net, x0)
    json.dump(_analysis_json(net, report), sys.stdout, indent=2)
    print()
    return EXIT_OK


def _calibrate(
    net: MultiplexNetwork, x0, report: AnalysisReport, trajectory
) -> tuple[Calibration, BoundParameters]:
    a1_norm1 = induced_norm(layer_adjacency(net, "layer1"), 1)
    cal = calibrate_u(
        x0, report.prediction.x_bar, trajectory.err_series, report.contraction, a1_norm1
    )
    params = BoundParameters(
        u=cal.u_min,
        q=report.contraction,
        norm_x0=float(np.linalg.norm(np.asarray(x0, dtype=float))),
        a1_norm1=a1_norm1,
    )
    return cal, params


def cmd_simulate(args: argparse.Namespace) -> int:
    net, x0 = load_network(args.network)
    report = analyze(net, x0)
    trajectory = simulate(
        net, x0, t_max=args.t_max, tol=args.tol, x_bar=report.prediction.x_bar
    )

    calibration: Calibration | None = None
    try:
        calibration, params = _calibrate(net, x0, report, trajectory)
    except CalibrationError:
        if args.emit_bound:
            raise
        log.info("envelope calibration unavailable; summary U fields left null")
    if args.emit_bound:
        trajectory = with_bound(trajectory, params)

    out = Path(args.out)
    write_trajectory_csv(out, net, trajectory)
    log.info("wrote %s (%d rows)", out, len(trajectory.times))
    if not args.no_plot:
        figure = out.with_suffix(".png")
        render_convergence_figure(figure, net, trajectory)
        log.info("wrote %s", figure)

    json.dump(run_summary(trajectory, report, calibration), sys.stdout, indent=2)
    print()
    return EXIT_OK


def cmd_bidirectional(args: argparse.Namespace) -> int:
    net, x0 = load_network(args.network)
    report = validate_assumptions(net)
    if not report.ok:
        for v in report.violations:
            print(f"{args.network}: {v.code}: {v.message}", file=sys.stderr)
        return EXIT_INVALID
    save_network(args.out, symmetrize(net), x0)
    print(f"wrote {args.out}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="muxdyn",
        description="Opinion dynamics on two-layer multiplex networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the structural assumptions")
    p.add_argument("network", help="network JSON file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="predict the limit profile")
    p.add_argument("network", help="network JSON file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simulate", help="run the dynamics and write reports")
    p.add_argument("network", help="network JSON file")
    p.add_argument("--out", required=True, help="trajectory CSV path")
    p.add_argument("--t-max", type=int, default=DEFAULT_T_MAX, help="step horizon")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="consensus tolerance")
    p.add_argument(
        "--emit-bound",
        action="store_true",
        help="append the calibrated envelope column to the CSV",
    )
    p.add_argument(
        "--no-plot", action="store_true", help="skip the PNG figure next to the CSV"
    )
    p.add_argument(
        "--seed",
        type=int,
        default=None,
        help="reserved for future randomized features; unused by the core pipeline",
    )
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bidirectional", help="write the symmetrized variant")
    p.add_argument("network", help="network JSON file")
    p.add_argument("--out", required=True, help="output network JSON path")
    p.set_defaults(func=cmd_bidirectional)

    return parser


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NetworkFormatError as exc:
        print(f"muxdyn: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"muxdyn: {exc}", file=sys.stderr)
        return EXIT_IO
    except MuxdynError as exc:
        print(f"muxdyn: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
