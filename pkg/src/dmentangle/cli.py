"""Command-line front end.

Exit codes: 0 success, 1 usage or I/O error, 2 config error, 3 numerical
validation failure (a failed sweep or an oracle mismatch).
"""

import argparse
import sys

from . import __version__
from .errors import ConfigError, UnknownScenario
from .scenarios import PRESETS, format_value, load_config, parse_windows, run_scenario

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 2:
        raise argparse.ArgumentTypeError("need at least 2 steps")
    return value


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _windows(text):
    try:
        windows = parse_windows(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not windows:
        raise argparse.ArgumentTypeError("need at least one window")
    return windows


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="dmentangle",
        description="Negativity dynamics of two qubits with Heisenberg and DM coupling.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sim = sub.add_parser("simulate", help="run a preset or config file and write series data")
    sim.add_argument("target", help=f"preset ({', '.join(PRESETS)}) or config file path")
    sim.add_argument("--t-max", type=_positive_float, help="end of the sampled time grid")
    sim.add_argument("--steps", type=_positive_int, help="number of grid points")
    sim.add_argument("--subsystem", choices=("a", "b"), help="qubit to partially transpose")
    sim.add_argument("--format", choices=("csv", "json"), dest="output_format")
    sim.add_argument("--out", default=".", help="output directory (default: .)")
    sim.add_argument("--windows", type=_windows, help='averaging windows, e.g. "0:50,0:100,0:200"')
    sim.add_argument("--jobs", type=int, default=1, help="sweep values computed concurrently")

    val = sub.add_parser("validate", help="parse a config file and report whether it is valid")
    val.add_argument("config")

    orc = sub.add_parser(
        "oracle", help="compare closed-form propagators with the numerical propagator"
    )
    orc.add_argument("preset", help=f"one of {', '.join(PRESETS)} or 'all'")
    return parser


def _simulate(args) -> int:
    config = load_config(args.target)
    changes = {}
    if args.t_max is not None:
        changes["t_max"] = args.t_max
    if args.steps is not None:
        changes["n_steps"] = args.steps
    if args.subsystem is not None:
        changes["subsystem"] = args.subsystem
    if args.output_format is not None:
        changes["output_format"] = args.output_format
    if args.windows is not None:
        changes["windows"] = args.windows
    if changes:
        config = config.replace(**changes)

    report = run_scenario(config, args.out, jobs=max(1, args.jobs))
    print(report.table())
    for path in report.files:
        print(f"wrote {path}")
    for failed in report.failures:
        print(
            f"sweep {failed.param}={format_value(failed.value)} failed: {failed.error}",
            file=sys.stderr,
        )
    return EXIT_OK if report.ok else EXIT_NUMERIC


def _validate(args) -> int:
    config = load_config(args.config)
    print(f"{args.config}: ok ({config.name}, {len(list(config.sweep()))} sweep values)")
    return EXIT_OK


def _oracle(args) -> int:
    from .oracles import SCENARIOS, oracle_reports

    names = SCENARIOS if args.preset == "all" else (args.preset,)
    if args.preset != "all" and args.preset not in SCENARIOS:
        raise UnknownScenario(f"unknown preset {args.preset!r}")
    ok = True
    for name in names:
        for r in oracle_reports(name):
            status = "PASS" if r.passed else "FAIL"
            excluded = ", ".join(f"({i},{j})" for i, j in r.excluded) or "none"
            print(
                f"{r.label:<14} max|dU| = {r.max_deviation:.3e}  {status}  "
                f"excluded (unitarity self-check): {excluded}  "
                f"closed-form |U^dag U - I| = {r.closed_form_unitarity:.3e}"
            )
            if r.failing:
                bad = ", ".join(f"({i},{j})" for i, j in r.failing)
                print(f"{'':<14} entries above {r.tol:.0e}: {bad}")
                if r.resembles:
                    print(f"{'':<14} closed form reproduces the propagator of: {', '.join(r.resembles)}")
            ok &= r.passed
    return EXIT_OK if ok else EXIT_NUMERIC


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"simulate": _simulate, "validate": _validate, "oracle": _oracle}[args.command]
    try:
        return handler(args)
    except (ConfigError, UnknownScenario) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
