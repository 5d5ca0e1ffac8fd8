"""Command-line front end.

    tyurin-rmatrix run      [options]          all configured suites
    tyurin-rmatrix verify   SUITE [options]    a single suite
    tyurin-rmatrix evolve   [options]          integrate a flow, CSV + drift table
    tyurin-rmatrix sample   [options]          print a seeded phase-space point
    tyurin-rmatrix explain  CHECK_ID           statement and formula of a check

Exit codes: 0 all checks pass, 1 a check failed (or a flow aborted),
2 configuration or usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from .checks import SUITES, explain
from .config import SuiteConfig, apply_overrides, format_complex, load_config, parse_complex
from .dynamics import FlowConfig, conservation_report, evolve
from .errors import ConfigError
from .phase_space import sample
from .report import build_report, summary_lines, to_csv, to_json
from .suites import run_suites
from .theta import CurveModulus

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="INI configuration file")
    p.add_argument("--n", type=int, help="rank = number of marked points")
    p.add_argument("--tau", help="lattice modulus, e.g. i or 0.3+1.1i")
    p.add_argument("--seed", type=int, help="run a single seed")
    p.add_argument("--tolerance", action="append", default=[], metavar="KEY=VAL",
                   help="override a check tolerance (repeatable)")
    p.add_argument("--out", help="write the output here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tyurin-rmatrix", description="Certify the r-matrix structure of the elliptic Lax differential.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="run all configured suites")
    _common(p)

    p = sub.add_parser("verify", help="run one suite")
    p.add_argument("suite", choices=SUITES)
    _common(p)

    p = sub.add_parser("evolve", help="integrate the flow of tr L(z0)^k / k")
    _common(p)
    p.add_argument("--t-end", type=float, default=1.0)
    p.add_argument("--z0", help="point defining the Hamiltonian (default: config flow_point)")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--rel-tol", type=float, default=None)
    p.add_argument("--probes", nargs="+", default=None, metavar="W",
                   help="points w at which tr L(w)^2 and tr L(w)^3 are monitored")

    p = sub.add_parser("sample", help="print a seeded phase-space point")
    _common(p)
    p.add_argument("--moment-surface", action="store_true")
    p.add_argument("--gauge-slice", action="store_true")

    p = sub.add_parser("explain", help="describe a check id")
    p.add_argument("check_id")
    return parser


def _config(args) -> SuiteConfig:
    cfg = load_config(args.config)
    suites = (args.suite,) if getattr(args, "suite", None) else None
    return apply_overrides(cfg, n=args.n, tau=args.tau, seed=args.seed,
                           tolerances=args.tolerance, suites=suites)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_run(args) -> int:
    cfg = _config(args)
    results, conv = run_suites(cfg)
    report = build_report(cfg, results, conv.record())
    for line in summary_lines(results):
        print(line, file=sys.stderr)
    _emit(to_json(report) if args.format == "json" else to_csv(report), args.out)
    return EXIT_OK if report["overall_pass"] else EXIT_FAIL


def _cmd_evolve(args) -> int:
    cfg = _config(args)
    z0 = parse_complex(args.z0) if args.z0 else cfg.flow_point
    probes = [parse_complex(w) for w in args.probes] if args.probes else list(cfg.conservation_points)
    fc = FlowConfig(z0, k=args.k, t_end=args.t_end, rel_tol=args.rel_tol or cfg.rel_tol)
    x = sample(cfg.seeds[0], cfg.n, CurveModulus(cfg.tau), avoid=[z0, *probes])
    traj = evolve(x, fc)
    table = conservation_report(traj, [(w, k) for w in probes for k in (2, 3)])
    _emit(traj.to_csv(), args.out)
    drift_out = sys.stdout if args.out else sys.stderr
    print("w                          k  max_abs_drift  max_rel_drift", file=drift_out)
    for row in table:
        print(f"{format_complex(row['w']):26s} {row['k']}  {row['max_abs_drift']:.3e}      {row['max_rel_drift']:.3e}",
              file=drift_out)
    if traj.aborted:
        print(f"flow aborted: {traj.aborted}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _cmd_sample(args) -> int:
    cfg = _config(args)
    x = sample(cfg.seeds[0], cfg.n, CurveModulus(cfg.tau), on_moment_surface=args.moment_surface,
               on_gauge_slice=args.gauge_slice, avoid=cfg.probe_points())

    def enc(a):
        a = np.asarray(a)
        return [format_complex(v) for v in a.ravel()] if a.ndim == 1 else [enc(r) for r in a]

    doc = {"seed": cfg.seeds[0], "n": x.n, "tau": format_complex(cfg.tau),
           "q": enc(x.q), "p": enc(x.p), "alpha": enc(x.alpha), "beta": enc(x.beta)}
    _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.out)
    return EXIT_OK


def _cmd_explain(args) -> int:
    try:
        print(explain(args.check_id))
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handlers = {"run": _cmd_run, "verify": _cmd_run, "evolve": _cmd_evolve,
                "sample": _cmd_sample, "explain": _cmd_explain}
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
