"""Command line entry point: figure sweeps to CSV and invariant verification."""

from __future__ import annotations

import argparse
import json
import sys

from .experiments import ExperimentConfig, fig4_default_config, run_figure
from .verify import SUITES, run_suite


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--qubits", type=int, default=None)
    p.add_argument("--randomizations", type=int, default=None)
    p.add_argument("--circuits", type=int, default=None)
    p.add_argument("--r-cz", type=float, default=None, dest="r_cz")
    p.add_argument("--r-min", type=float, default=None, dest="r_min")
    p.add_argument("--r-max", type=float, default=None, dest="r_max")
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--easy-ratio", type=float, default=None, dest="easy_ratio")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default="-")
    p.add_argument("--threads", type=int, default=None)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rctailor",
        description="Randomized-compiling sweeps: CSV data for the bound and "
        "simulation figures, plus invariant verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p2 = sub.add_parser("fig2", help="worst-case bound curves vs hard-gate infidelity")
    _add_common(p2)

    p3 = sub.add_parser("fig3", help="tau vs r_cz for random circuits, bare and tailored")
    _add_common(p3)
    p3.add_argument("--cycles", type=int, default=None)

    p4 = sub.add_parser("fig4", help="tau vs cycle count at fixed noise")
    _add_common(p4)
    p4.add_argument("--cycles-min", type=int, default=None, dest="cycles_min")
    p4.add_argument("--cycles-max", type=int, default=None, dest="cycles_max")

    pv = sub.add_parser("verify", help="run an invariant suite and emit JSON")
    pv.add_argument("suite", choices=sorted(SUITES) + ["all"])
    pv.add_argument("--seed", type=int, default=0)
    return parser


def _config_from_args(args: argparse.Namespace, base: ExperimentConfig) -> ExperimentConfig:
    updates = {}
    for field in ("qubits", "cycles", "cycles_min", "cycles_max", "randomizations",
                  "circuits", "r_cz", "r_min", "r_max", "points", "easy_ratio",
                  "seed", "threads"):
        value = getattr(args, field, None)
        if value is not None:
            updates[field] = value
    from dataclasses import replace

    return replace(base, **updates)


def _cmd_figure(kind: str, args: argparse.Namespace) -> int:
    base = fig4_default_config() if kind == "fig4" else ExperimentConfig()
    if kind == "fig2":
        base = ExperimentConfig(r_min=1e-6, r_max=1e-2, points=25)
    cfg = _config_from_args(args, base)
    if args.out == "-":
        run_figure(kind, cfg, sys.stdout)
    else:
        run_figure(kind, cfg, args.out)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    report = []
    ok = True
    for name in names:
        checks = run_suite(name, seed=args.seed)
        ok = ok and all(c.passed for c in checks)
        report.append(
            {
                "suite": name,
                "passed": all(c.passed for c in checks),
                "checks": [
                    {"name": c.name, "passed": c.passed, "detail": c.detail}
                    for c in checks
                ],
            }
        )
    json.dump({"passed": ok, "suites": report}, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0 if ok else 1


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "verify":
        return _cmd_verify(args)
    return _cmd_figure(args.command, args)


if __name__ == "__main__":
    sys.exit(main())
