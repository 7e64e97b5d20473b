"""Command-line entry point: ``dsrange {matrix,numrange,berezin,verify}``.

Exit codes: 0 success, 1 verification failures, 2 invalid input, 3 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from typing import List, Optional, Sequence

import numpy as np

from . import berezin as bz
from .config import ConfigError, RunConfig, load_config
from .numrange import boundary_sweep, contains_point, numerical_radius
from .operators import Mobius, build_matrix
from .special import DomainError
from .verify import SUITES, VerifyConfig, run_all

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_IO = 0, 1, 2, 3


def fmt(x) -> str:
    """15 significant digits; complex as a+bj."""
    x = complex(x)
    if x.imag == 0.0:
        return f"{x.real:.15g}"
    return f"{x.real:.15g}{x.imag:+.15g}j"


def _c17(x: float) -> str:
    return f"{float(x):.17g}"


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_text(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_c17(v) for v in row])
    return buf.getvalue()


def read_csv(path: str):
    """Header and float rows of a CSV written by this tool."""
    with open(path, newline="", encoding="utf-8") as fh:
        r = csv.reader(fh)
        header = next(r)
        return header, [[float(v) for v in row] for row in r]


def _grid(text: str):
    try:
        r, k = (int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected R,K (two integers), got {text!r}") from None
    return r, k


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="INI-style run configuration")
    common.add_argument("--out", metavar="DIR", default=".", help="output directory (default: .)")
    common.add_argument("--angles", type=int, metavar="M", help="sweep angle count")
    common.add_argument("--grid", type=_grid, metavar="R,K", help="Berezin grid radial,angular counts")
    common.add_argument("--seed", type=int, metavar="S")
    common.add_argument("--allow-unverified-selfmap", action="store_true",
                        help="accept phi given as a raw coefficient series")

    p = argparse.ArgumentParser(prog="dsrange",
                                description="Numerical ranges and Berezin transforms of weighted "
                                            "composition operators on weighted Dirichlet spaces.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("matrix", parents=[common], help="write the truncated matrix as JSON")
    sub.add_parser("numrange", parents=[common], help="sweep the numerical range boundary")
    sub.add_parser("berezin", parents=[common], help="sample the Berezin transform on a polar grid")
    v = sub.add_parser("verify", parents=[common], help="run the verification suites")
    v.add_argument("--suite", action="append", choices=sorted(SUITES), metavar="NAME",
                   help=f"restrict to a suite (repeatable): {', '.join(sorted(SUITES))}")
    v.add_argument("--long-running", action="store_true", help="include slow instances")
    return p


def _load(args) -> RunConfig:
    cfg = (load_config(args.config, args.allow_unverified_selfmap) if args.config else RunConfig())
    r, k = args.grid if args.grid else (None, None)
    return cfg.with_overrides(angles=args.angles, radial=r, angular=k, seed=args.seed)


def cmd_matrix(cfg: RunConfig, out: str) -> int:
    A = build_matrix(cfg.spec())
    path = os.path.join(out, "matrix.json")
    write_atomic(path, json.dumps(A.to_json(), indent=1) + "\n")
    print(f"wrote {path} ({A.N + 1}x{A.N + 1})")
    return EXIT_OK


def cmd_numrange(cfg: RunConfig, out: str) -> int:
    curve = boundary_sweep(build_matrix(cfg.spec()), cfg.angles)
    write_atomic(os.path.join(out, "boundary.csv"),
                 csv_text(("theta", "re", "im"),
                          ((t, p.real, p.imag) for t, p in zip(curve.thetas, curve.points))))
    write_atomic(os.path.join(out, "hull.csv"),
                 csv_text(("re", "im"), ((p.real, p.imag) for p in curve.hull)))
    print(f"hull: {curve.kind} with {curve.hull.size} vertices")
    print(f"numerical radius: {fmt(numerical_radius(None, curve=curve))}")
    print(f"0 interior: {'true' if contains_point(curve, 0j, 1e-6) else 'false'}")
    return EXIT_OK


def cmd_berezin(cfg: RunConfig, out: str) -> int:
    extra = []
    if isinstance(cfg.phi, Mobius) and abs(cfg.phi.alpha + 1.0) < 1e-12:
        extra.append(bz.weyl_fixed_point(cfg.phi.gamma))
    S = bz.berezin_grid(cfg.spec(), cfg.radial, cfg.angular, extra_points=extra)
    r, theta = S.polar()
    write_atomic(os.path.join(out, "berezin.csv"),
                 csv_text(("r", "theta", "z_re", "z_im", "val_re", "val_im"),
                          zip(r, theta, S.points.real, S.points.imag, S.values.real, S.values.imag)))
    print(f"Berezin radius estimate: {fmt(S.radius_estimate)}")
    print(f"maximizer: {fmt(S.maximizer)}")
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out: str, suites: Optional[List[str]], long_running: bool) -> int:
    vc = VerifyConfig(N=cfg.N, angles=cfg.angles, radial=cfg.radial, angular=cfg.angular,
                      seed=cfg.seed, suites=tuple(suites) if suites else None,
                      long_running=long_running)
    report = run_all(vc)
    path = os.path.join(out, "report.json")
    write_atomic(path, report.dumps())
    summary = report.summary
    print(", ".join(f"{k}: {v}" for k, v in summary.items()))
    for c in report.failed:
        print(f"FAIL {c.id} {json.dumps(c.to_json()['params'], sort_keys=True)}")
    print(f"wrote {path}")
    return report.exit_code


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load(args)
        if args.command == "matrix":
            return cmd_matrix(cfg, args.out)
        cfg.require_sweep_order()
        if args.command == "numrange":
            return cmd_numrange(cfg, args.out)
        if args.command == "berezin":
            return cmd_berezin(cfg, args.out)
        return cmd_verify(cfg, args.out, args.suite, args.long_running)
    except (ConfigError, DomainError) as exc:
        print(f"dsrange: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"dsrange: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
