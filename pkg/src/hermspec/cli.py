"""Command-line front end: pick checks, run them on a worker pool, write files.

Each subcommand names a fixed set of checks.  The run always writes
<out>/manifest.json (config snapshot, every report, wall time per check) and
one table per check in the requested format.  Exit status: 0 all passed,
1 any failure, 2 inconclusive results only, 64 usage error, 74 unwritable
output directory.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .errors import ToleranceError
from .verify import (
    DEFAULT_TOLERANCES,
    RunManifest,
    ScanConfig,
    check_antideriv_norms,
    check_appendix_identities,
    check_even_3d,
    check_hermite_sobolev,
    check_kato,
    check_kernel_bound,
    check_morawetz_2d,
    check_odd_identity,
    check_operator_norms,
    check_collapse_9d,
    check_radial_3d_identity,
    emit_table,
    negative_control_divergence,
)

# registry: key -> callable(cfg, options) -> EstimateReport
CHECK_REGISTRY = {
    "antideriv_norms": lambda cfg, opt: check_antideriv_norms(cfg),
    "odd_identity": lambda cfg, opt: check_odd_identity(cfg),
    "radial_3d_identity": lambda cfg, opt: check_radial_3d_identity(cfg),
    "appendix_identities": lambda cfg, opt: check_appendix_identities(cfg),
    "kato_nd": lambda cfg, opt: check_kato(cfg, opt["n"], opt["delta"]),
    "kernel_n2": lambda cfg, opt: check_kernel_bound(cfg, 2),
    "kernel_n3": lambda cfg, opt: check_kernel_bound(cfg, 3),
    "operator_norm_n3": lambda cfg, opt: check_operator_norms(cfg, 3),
    "morawetz_2d": lambda cfg, opt: check_morawetz_2d(cfg),
    "even_3d": lambda cfg, opt: check_even_3d(cfg),
    "sobolev_s05": lambda cfg, opt: check_hermite_sobolev(cfg, 0.5),
    "sobolev_s10": lambda cfg, opt: check_hermite_sobolev(cfg, 1.0),
    "collapse_9d": lambda cfg, opt: check_collapse_9d(cfg),
    "negative_control": lambda cfg, opt: negative_control_divergence(cfg),
}

COMMAND_CHECKS = {
    "norms": ("antideriv_norms",),
    "identities": ("odd_identity", "radial_3d_identity", "appendix_identities"),
    "kato": ("kato_nd",),
    "kernel": ("kernel_n2", "kernel_n3", "operator_norm_n3"),
    "morawetz": ("morawetz_2d",),
    "even3d": ("even_3d",),
    "sobolev": ("sobolev_s05", "sobolev_s10"),
    "collapse": ("collapse_9d",),
    "all": (
        "antideriv_norms",
        "odd_identity",
        "radial_3d_identity",
        "appendix_identities",
        "kato_nd",
        "kernel_n2",
        "kernel_n3",
        "operator_norm_n3",
        "morawetz_2d",
        "even_3d",
        "sobolev_s05",
        "sobolev_s10",
        "collapse_9d",
    ),
}

EX_USAGE = 64
EX_CANTCREAT = 74


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage, which collides with the inconclusive code
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EX_USAGE)


def build_parser() -> _Parser:
    parser = _Parser(
        prog="hermspec",
        description="Scan the oscillator smoothing identities and bounds.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    for name in COMMAND_CHECKS:
        p = sub.add_parser(name, help=f"run: {', '.join(COMMAND_CHECKS[name])}")
        p.add_argument("--n", type=int, default=3,
                       help="dimension for the per-level scan (default 3)")
        p.add_argument("--delta", type=float, default=1.0,
                       help="weight exponent for the per-level scan (default 1)")
        p.add_argument("--kmax", type=int, default=20,
                       help="highest level scanned (default 20)")
        p.add_argument("--trials", type=int, default=16,
                       help="random states per randomized check (default 16)")
        p.add_argument("--seed", type=int, default=42,
                       help="root seed for every random draw (default 42)")
        p.add_argument("--rule-scale", type=float, default=1.0,
                       help="quadrature refinement multiplier (default 1)")
        p.add_argument("--tol", type=float, default=None,
                       help="override the equality tolerances (defaults: "
                       + ", ".join(f"{k}={v:g}"
                                   for k, v in sorted(DEFAULT_TOLERANCES.items())))
        p.add_argument("--out", default="hermspec-out",
                       help="output directory (default ./hermspec-out)")
        p.add_argument("--format", choices=("json", "csv"), default="csv",
                       help="per-check table format (default csv)")
        p.add_argument("--negative-controls", action="store_true",
                       help="include the divergence demonstration")
        p.add_argument("--jobs", type=int, default=None,
                       help="worker pool size (default: HK_JOBS or cpu count)")
    return parser


def _config_from_args(args) -> ScanConfig:
    tolerances = None
    if args.tol is not None:
        if args.tol <= 0:
            raise ValueError("--tol must be positive")
        tolerances = {key: args.tol for key in DEFAULT_TOLERANCES}
    return ScanConfig(
        k_max=args.kmax,
        trials=args.trials,
        seed=args.seed,
        rule_scale=args.rule_scale,
        tolerances=tolerances,
    )


def _select_checks(args) -> tuple:
    keys = list(COMMAND_CHECKS[args.command])
    if args.command == "kato":
        admissible = not (args.n == 2 and args.delta >= 1.0)
        if not admissible:
            # the 2D endpoint diverges; only the demonstration of that fact runs
            if not args.negative_controls:
                raise ValueError(
                    "n=2 with delta>=1 is inadmissible (the weighted integral "
                    "diverges); pass --negative-controls to run the "
                    "divergence demonstration instead"
                )
            keys = ["negative_control"]
        elif args.negative_controls:
            keys.append("negative_control")
    elif args.negative_controls and args.command == "all":
        keys.append("negative_control")
    return tuple(keys)


def _jobs_from_args(args) -> int:
    if args.jobs is not None:
        jobs = args.jobs
    else:
        env = os.environ.get("HK_JOBS", "").strip()
        if env:
            jobs = int(env)
        else:
            jobs = os.cpu_count() or 1
    if jobs < 1:
        raise ValueError("--jobs must be >= 1")
    return jobs


def run_checks(cfg: ScanConfig, keys, options, jobs: int = 1) -> RunManifest:
    """Execute the named checks on a thread pool; reports keep key order."""
    wall: dict = {}

    def work(key):
        t0 = time.perf_counter()
        report = CHECK_REGISTRY[key](cfg, options)
        return key, report, time.perf_counter() - t0

    reports = {}
    with ThreadPoolExecutor(max_workers=max(1, min(jobs, len(keys)))) as pool:
        for key, report, dt in pool.map(work, keys):
            reports[key] = report
            wall[key] = dt
    ordered = tuple(reports[key] for key in keys)
    return RunManifest(
        version=__version__, config=cfg, reports=ordered, wall_time_s=wall
    )


def _write_outputs(manifest: RunManifest, keys, out_dir: str, fmt: str) -> None:
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "manifest.json"), "wb") as fh:
        fh.write(emit_table(manifest, "json"))
    for key, report in zip(keys, manifest.reports):
        single = RunManifest(
            version=manifest.version, config=manifest.config, reports=(report,)
        )
        with open(os.path.join(out_dir, f"{key}.{fmt}"), "wb") as fh:
            fh.write(emit_table(single, fmt))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config_from_args(args)
        keys = _select_checks(args)
        jobs = _jobs_from_args(args)
    except ValueError as exc:
        sys.stderr.write(f"hermspec: error: {exc}\n")
        return EX_USAGE
    options = {"n": args.n, "delta": args.delta}
    try:
        manifest = run_checks(cfg, keys, options, jobs)
    except ValueError as exc:
        sys.stderr.write(f"hermspec: error: {exc}\n")
        return EX_USAGE
    except ToleranceError as exc:
        sys.stderr.write(f"hermspec: numerical abort: {exc}\n")
        return 1
    try:
        _write_outputs(manifest, keys, args.out, args.format)
    except OSError as exc:
        sys.stderr.write(f"hermspec: cannot write output: {exc}\n")
        return EX_CANTCREAT
    any_failed = False
    any_inconclusive = False
    for key, report in zip(keys, manifest.reports):
        print(
            f"{key}: {report.status} "
            f"(sup ratio {report.sup_ratio:.6g}, "
            f"{len(report.samples)} samples, {manifest.wall_time_s[key]:.2f}s)"
        )
        any_failed = any_failed or report.status == "failed"
        any_inconclusive = any_inconclusive or report.status == "inconclusive"
    if any_failed:
        return 1
    if any_inconclusive:
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
