"""Command-line front door.

Exit codes are stable: 0 success, 1 generic failure, 2 usage error,
3 validation error, 4 network or integrity error.  Results go to stdout,
diagnostics to stderr.
"""

import argparse
import json
import math
import os
from pathlib import Path
import socket
import sys
from typing import Optional, Sequence

from . import repo as repo_mod
from .datafile import Dataset, load_dataset
from .errors import (IntegrityError, ParseError, RemoteError, RooflineError,
                     TransportError, ValidationError, VersionError)
from .geometry import ChartDomain, default_domain, build_geometry
from .model import KernelTrial, analyze_kernel
from .svg import RenderStyle, render, render_comparison

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_NETWORK = 4


def _err(message: str) -> None:
    print(f"roofline: {message}", file=sys.stderr)


def _read_file(path: str) -> Optional[bytes]:
    try:
        return Path(path).read_bytes()
    except OSError as e:
        _err(f"cannot read {path}: {e.strerror or e}")
        return None


def _load(path: str) -> "Dataset | int":
    data = _read_file(path)
    if data is None:
        return EXIT_FAILURE
    try:
        return load_dataset(data)
    except (ParseError, ValidationError, VersionError) as e:
        _err(f"{path}: {e}")
        return EXIT_VALIDATION


def cmd_validate(args) -> int:
    result = _load(args.file)
    if isinstance(result, int):
        return result
    print(result.fingerprint)
    return EXIT_OK


def cmd_plot(args) -> int:
    files = args.files
    if args.compare:
        if not 2 <= len(files) <= 4:
            _err(f"--compare takes 2-4 files, got {len(files)}")
            return EXIT_USAGE
    elif len(files) != 1:
        _err("plot takes exactly one file (use --compare for 2-4)")
        return EXIT_USAGE

    datasets = []
    for path in files:
        result = _load(path)
        if isinstance(result, int):
            return result
        datasets.append(result)

    profiles = [d.machine for d in datasets]
    all_trials = [t for d in datasets for t in d.trials]
    domain = default_domain(profiles, all_trials)
    if args.x_min is not None or args.x_max is not None:
        lo = args.x_min if args.x_min is not None else domain.x_min
        hi = args.x_max if args.x_max is not None else domain.x_max
        if not (lo > 0 and hi > 0 and math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            _err(f"invalid x domain [{lo}, {hi}]")
            return EXIT_USAGE
        domain = ChartDomain(x_min=lo, x_max=hi, y_min=domain.y_min, y_max=domain.y_max)

    geometries = [
        build_geometry(d.machine, d.trials, domain=domain, dataset_id=d.machine.name)
        for d in datasets
    ]
    style = RenderStyle()
    if args.compare:
        document = render_comparison(geometries, style)
    else:
        document = render(geometries[0], style, title=datasets[0].machine.name)
    Path(args.output).write_bytes(document.encode("utf-8"))
    print(args.output)
    return EXIT_OK


def _format_row(row) -> list[str]:
    pair = f"{row.ceiling_pair[0]} × {row.ceiling_pair[1]}"
    if row.is_top:
        pair += " (top)"
    return [
        pair,
        f"{row.ridge_point:g}",
        f"{row.attainable_gflops:g}",
        row.classification.replace("_", "-"),
        f"{row.efficiency:.3f}",
    ]


def cmd_analyze(args) -> int:
    if not (args.ai > 0 and math.isfinite(args.ai)):
        _err(f"--ai must be > 0, got {args.ai}")
        return EXIT_USAGE
    if not (args.gflops > 0 and math.isfinite(args.gflops)):
        _err(f"--gflops must be > 0, got {args.gflops}")
        return EXIT_USAGE
    result = _load(args.file)
    if isinstance(result, int):
        return result

    trial = KernelTrial(name="query", arithmetic_intensity=args.ai,
                        achieved_gflops=args.gflops)
    rows = analyze_kernel(trial, result.machine)
    if args.json:
        print(json.dumps([
            {"ceiling_pair": list(r.ceiling_pair), "ridge_point": r.ridge_point,
             "attainable_gflops": r.attainable_gflops, "classification": r.classification,
             "efficiency": r.efficiency, "is_top": r.is_top}
            for r in rows
        ], indent=2))
        return EXIT_OK

    header = ["ceiling pair", "ridge", "attainable", "bound", "efficiency"]
    table = [header] + [_format_row(r) for r in rows]
    widths = [max(len(line[i]) for line in table) for i in range(len(header))]
    for line in table:
        print("  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip())
    return EXIT_OK


def _repo_url(args) -> Optional[str]:
    return args.url or os.environ.get("ROOFLINE_REPO_URL") or None


def cmd_repo_sync(args) -> int:
    url = _repo_url(args)
    if not url:
        _err("no repository URL (pass --url or set ROOFLINE_REPO_URL)")
        return EXIT_USAGE
    cache_dir = repo_mod.default_cache_dir()
    try:
        index = repo_mod.fetch_index(url)
    except (TransportError, RemoteError, ValidationError) as e:
        _err(str(e))
        return EXIT_NETWORK
    report = repo_mod.sync(index, cache_dir)
    print(f"pulled: {len(report.pulled)}")
    print(f"cached: {len(report.cached)}")
    print(f"errors: {len(report.errors)}")
    for failure in report.errors:
        _err(f"{failure['id']}: {failure['message']}")
    return EXIT_NETWORK if report.errors else EXIT_OK


def cmd_repo_list(args) -> int:
    url = _repo_url(args)
    if not url:
        _err("no repository URL (pass --url or set ROOFLINE_REPO_URL)")
        return EXIT_USAGE
    try:
        index = repo_mod.fetch_index(url)
    except (TransportError, RemoteError, ValidationError) as e:
        _err(str(e))
        return EXIT_NETWORK
    for entry in repo_mod.list_remote(index, args.tag):
        tags = ",".join(entry.tags)
        print(f"{entry.id}  {entry.machine_name}  {entry.created}  [{tags}]")
    return EXIT_OK


def cmd_serve(args) -> int:
    from .service import config_from_env, create_app
    import uvicorn

    try:
        config = config_from_env(data_dir=args.data_dir, port=args.port,
                                 cors_allowed_origin=args.cors_origin)
        app = create_app(config)
    except (ValidationError, RooflineError) as e:
        _err(str(e))
        return EXIT_FAILURE

    # probe the port up front so "address in use" is a clean exit 1, not a
    # traceback out of the event loop
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.bind((args.host, args.port))
    except OSError as e:
        _err(f"cannot listen on {args.host}:{args.port}: {e.strerror or e}")
        return EXIT_FAILURE
    finally:
        probe.close()

    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roofline",
        description="Roofline performance datasets: validate, plot, analyze, sync, serve.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a dataset file and print its fingerprint")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("plot", help="render dataset(s) to an SVG chart")
    p.add_argument("files", nargs="+", metavar="file")
    p.add_argument("-o", "--output", required=True, help="output SVG path")
    p.add_argument("--x-min", type=float, default=None)
    p.add_argument("--x-max", type=float, default=None)
    p.add_argument("--compare", action="store_true",
                   help="overlay 2-4 datasets in one chart")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("analyze", help="classify an ad-hoc kernel against a machine")
    p.add_argument("file")
    p.add_argument("--ai", type=float, required=True, help="arithmetic intensity, FLOPs/Byte")
    p.add_argument("--gflops", type=float, required=True, help="achieved GFLOP/s")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("repo", help="remote dataset repositories")
    repo_sub = p.add_subparsers(dest="repo_command", required=True)
    ps = repo_sub.add_parser("sync", help="pull every index entry into the local cache")
    ps.add_argument("--url", default=None, help="repository base URL")
    ps.set_defaults(func=cmd_repo_sync)
    pl = repo_sub.add_parser("list", help="list remote entries")
    pl.add_argument("--url", default=None, help="repository base URL")
    pl.add_argument("--tag", default=None, help="only entries carrying this tag")
    pl.set_defaults(func=cmd_repo_list)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--data-dir", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--cors-origin", default=None,
                   help="emit CORS headers for this origin")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TransportError, RemoteError, IntegrityError) as e:
        _err(str(e))
        return EXIT_NETWORK
    except RooflineError as e:
        _err(str(e))
        return EXIT_FAILURE
    except KeyboardInterrupt:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
