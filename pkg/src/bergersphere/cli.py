"""Command-line interface.

Exit codes: 0 success, 1 invalid input or usage, 2 oracle disagreement
or numerical failure, 3 failed verification checks.  All output is
deterministic; rerunning a command byte-reproduces it.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .cutprofile import sample_profile
from .diameter import diameter_report
from .errors import NormalizationError
from .geodesic import endpoint_state, initial_momentum
from .model import BergerMetric, ReducedMomentum
from .serialize import fmt17, json_text
from .verify import run_checks

__all__ = ["CliConfig", "build_parser", "main", "entrypoint"]

_GAP_BUDGET = 1e-6  # relative closed-form vs numeric gap treated as disagreement


class _Parser(argparse.ArgumentParser):
    # usage problems land in the same exit code as semantic validation
    def error(self, message: str) -> "None":
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class CliConfig:
    """Parsed and validated invocation."""

    i1: float
    i3: float
    command: str
    output: Optional[str] = None
    n: int = 201
    format: str = "json"
    pbar3: float = 0.0
    phi: float = 0.0
    t: float = 0.0
    step: Optional[float] = None
    level: str = "quick"


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="bergersphere",
        description=(
            "Exact diameters, cut times, and geodesics for left-invariant "
            "Berger metrics on SU(2)."
        ),
    )
    parser.add_argument("--i1", type=float, required=True, metavar="I1",
                        help="metric eigenvalue of the two equatorial directions")
    parser.add_argument("--i3", type=float, required=True, metavar="I3",
                        help="metric eigenvalue of the axis direction")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_diam = sub.add_parser("diameter", help="closed-form diameter with numeric cross-check")
    p_diam.add_argument("-o", "--output", help="write JSON here instead of stdout")

    p_prof = sub.add_parser("profile", help="tabulate the cut-time profile over pbar3")
    p_prof.add_argument("-n", type=int, default=201, help="number of grid rows (default 201)")
    p_prof.add_argument("--format", choices=("csv", "json"), default="json")
    p_prof.add_argument("-o", "--output", help="write the table here instead of stdout")

    p_exp = sub.add_parser("exp", help="integrate one geodesic and print its endpoint")
    p_exp.add_argument("--pbar3", type=float, required=True,
                       help="axis fraction of the initial momentum, in [-1, 1]")
    p_exp.add_argument("--phi", type=float, default=0.0,
                       help="equatorial angle of the initial momentum (default 0)")
    p_exp.add_argument("--t", type=float, required=True, help="integration time, >= 0")
    p_exp.add_argument("--step", type=float, default=None,
                       help="integrator step (default t/2000, capped at t/1000)")
    p_exp.add_argument("-o", "--output", help="write JSON here instead of stdout")

    p_ver = sub.add_parser("verify", help="run the named self-check suite")
    p_ver.add_argument("--level", choices=("quick", "full"), default="quick")
    return parser


def _config_from(args: argparse.Namespace) -> CliConfig:
    return CliConfig(
        i1=args.i1,
        i3=args.i3,
        command=args.command,
        output=getattr(args, "output", None),
        n=getattr(args, "n", 201),
        format=getattr(args, "format", "json"),
        pbar3=getattr(args, "pbar3", 0.0),
        phi=getattr(args, "phi", 0.0),
        t=getattr(args, "t", 0.0),
        step=getattr(args, "step", None),
        level=getattr(args, "level", "quick"),
    )


def _emit(text: str, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def _cmd_diameter(metric: BergerMetric, cfg: CliConfig) -> int:
    report = diameter_report(metric)
    _emit(report.to_json(), cfg.output)
    if report.abs_gap > _GAP_BUDGET * report.closed_form:
        print(
            f"error: numeric maximization disagrees with the closed form "
            f"(gap {fmt17(report.abs_gap)})",
            file=sys.stderr,
        )
        return 2
    return 0


def _cmd_profile(metric: BergerMetric, cfg: CliConfig) -> int:
    profile = sample_profile(metric, cfg.n)
    if cfg.format == "csv":
        _emit(profile.to_csv(), cfg.output)
    else:
        _emit(profile.to_json(), cfg.output)
    return 0


def _cmd_exp(metric: BergerMetric, cfg: CliConfig) -> int:
    pb = ReducedMomentum(cfg.pbar3)
    if not math.isfinite(cfg.t) or cfg.t < 0.0:
        raise ValueError(f"--t must be finite and nonnegative, got {cfg.t!r}")
    step = cfg.t / 2000.0 if cfg.step is None else cfg.step
    p0 = initial_momentum(metric, pb, cfg.phi)
    state = endpoint_state(metric, p0, cfg.t, step)

    norm0 = p0.norm()
    h_end = 0.5 * ((state.p.p1**2 + state.p.p2**2) / metric.i1 + state.p.p3**2 / metric.i3)
    payload = {
        "i1": metric.i1,
        "i3": metric.i3,
        "pbar3": pb.pbar3,
        "phi": cfg.phi,
        "t": cfg.t,
        "step": step,
        "endpoint": {"w": state.q.w, "x": state.q.x, "y": state.q.y, "z": state.q.z},
        "drift": {
            "hamiltonian_rel": abs(h_end - 0.5) / 0.5,
            "momentum_norm_rel": abs(state.p.norm() - norm0) / norm0,
            "axis_momentum_rel": abs(state.p.p3 - p0.p3) / norm0,
        },
    }
    _emit(json_text(payload), cfg.output)
    return 0


def _cmd_verify(metric: BergerMetric, cfg: CliConfig) -> int:
    results = run_checks(metric, cfg.level)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:<{width}}  {r.detail}")
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} checks passed")
    if passed != len(results):
        failing = ", ".join(r.name for r in results if not r.passed)
        print(f"error: failing checks: {failing}", file=sys.stderr)
        return 3
    return 0


def main(argv: "Optional[list[str]]" = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = _config_from(args)
    try:
        metric = BergerMetric(cfg.i1, cfg.i3)
        if cfg.command == "diameter":
            return _cmd_diameter(metric, cfg)
        if cfg.command == "profile":
            return _cmd_profile(metric, cfg)
        if cfg.command == "exp":
            return _cmd_exp(metric, cfg)
        return _cmd_verify(metric, cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NormalizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
