"""Command-line front end.

Usage::

    compop classify --a 1 --re-b 0 --im-b 1
    compop matrix   --a 1 --re-b 0 --im-b 0 --size 4
    compop verify   --a 2 --re-b 1 --im-b 0 --size 128
    compop eigen    --a 2 --re-b 1 --lambda-re -1
    compop orbit    --a 1 --re-b 1 --im-b 1
    compop norms    --a 4 --re-b 1
    compop krylov   --a 1 --re-b 1 --n-max 16 --size 256

Exit codes: 0 success, 1 failed checks, 2 invalid input, 3 symbol of the
wrong type for the command.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import rkhs, verify
from .symbol import AffineSymbol, UnboundedSymbol, classify, fixed_point, make_symbol

log = logging.getLogger("compop")

COMMANDS = ("classify", "matrix", "verify", "eigen", "orbit", "norms", "krylov")
EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_WRONG_TYPE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    a: float
    re_b: float
    im_b: float
    size: int = 128
    tol: dict = field(default_factory=dict)
    n_max: int | None = None
    lambda_re: float = -1.0
    lambda_im: float = 0.0
    format: str | None = None
    output: str | None = None

    @property
    def symbol(self) -> AffineSymbol:
        return make_symbol(self.a, complex(self.re_b, self.im_b))


def max_size() -> int:
    raw = os.environ.get("COMPOP_MAX_N", "512")
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"COMPOP_MAX_N must be an integer, got {raw!r}") from None
    return max(1, min(cap, 512))


def _tol_pair(text):
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    try:
        tol = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance for {name!r} is not a number: {value!r}") from None
    if not (math.isfinite(tol) and tol >= 0):
        raise argparse.ArgumentTypeError(f"tolerance for {name!r} must be finite and >= 0")
    if name not in verify.TOLERANCES:
        raise argparse.ArgumentTypeError(f"unknown check {name!r}")
    return name, tol


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--a", type=float, required=True, help="dilation a > 0")
    common.add_argument("--re-b", type=float, default=0.0, help="Re(b) >= 0")
    common.add_argument("--im-b", type=float, default=0.0, help="Im(b)")
    common.add_argument("--size", type=int, default=128, help="truncation size N")
    common.add_argument("--tol", type=_tol_pair, action="append", default=[], metavar="NAME=VALUE")
    common.add_argument("--n-max", type=int, default=None)
    common.add_argument("--lambda-re", type=float, default=-1.0)
    common.add_argument("--lambda-im", type=float, default=0.0)
    common.add_argument("--format", choices=("json", "csv", "text"), default=None)
    common.add_argument("--output", default=None, help="write to this path instead of stdout")

    parser = _Parser(prog="compop", description="Affine composition operators on H^2 of the right half-plane.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=ns.command,
        a=ns.a,
        re_b=ns.re_b,
        im_b=ns.im_b,
        size=ns.size,
        tol=dict(ns.tol),
        n_max=ns.n_max,
        lambda_re=ns.lambda_re,
        lambda_im=ns.lambda_im,
        format=ns.format,
        output=ns.output,
    )
    cap = max_size()
    if not 1 <= cfg.size <= cap:
        raise UsageError(f"--size must lie in [1, {cap}], got {cfg.size}")
    if cfg.n_max is not None and cfg.n_max < 0:
        raise UsageError(f"--n-max must be >= 0, got {cfg.n_max}")
    for name in ("lambda_re", "lambda_im", "im_b"):
        if not math.isfinite(getattr(cfg, name)):
            raise UsageError(f"--{name.replace('_', '-')} must be finite")
    if cfg.format == "csv" and cfg.command != "matrix":
        raise UsageError("--format csv is only available for the matrix command")
    cfg.symbol  # validates a and b
    return cfg


# --------------------------------------------------------------------------
# commands: each returns (payload, exit code)
# --------------------------------------------------------------------------

def _classify(cfg):
    s = cfg.symbol
    cls, profile = classify(s)
    fp = fixed_point(s)
    payload = {
        "symbol": s.as_dict(),
        "class": cls.value,
        "profile": profile.as_dict(),
        "fixed_point": None if fp.value is None else [fp.value.real, fp.value.imag],
        "fixed_point_in_half_plane": fp.in_half_plane,
        "identity": fp.identity,
    }
    return payload, EXIT_OK


def _matrix(cfg):
    return rkhs.assemble_matrix(cfg.symbol, cfg.size), EXIT_OK


def _reports(reports):
    code = EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED
    return sorted(reports, key=lambda r: r.check_name), code


def _verify(cfg):
    n_max = 8 if cfg.n_max is None else cfg.n_max
    return _reports(verify.run_suite(cfg.symbol, cfg.size, cfg.tol, n_max=n_max))


def _eigen(cfg):
    s = cfg.symbol
    lam = complex(cfg.lambda_re, cfg.lambda_im)
    probe = verify.EigenProbe.for_symbol(s, lam)
    reports = [
        verify.eigenfunction_residual(s, probe, tol=cfg.tol.get("eigenfunction_residual")),
        verify.hardy_membership(s, lam, cfg.size),
    ]
    if lam.real < -0.5:
        reports.append(verify.multiplicity_witness(s, lam, (0, 1, 2), cfg.size))
    else:
        log.info("skipping multiplicity_witness: f_lambda is not in H^2 for Re(lambda) >= -1/2")
    return _reports(reports)


def _orbit(cfg):
    s = cfg.symbol
    orbit_n = 10 if cfg.n_max is None else cfg.n_max
    blaschke_n = 10**6 if cfg.n_max is None else max(cfg.n_max, 1)
    return _reports([
        verify.kernel_orbit_identity(s, orbit_n, tol=cfg.tol.get("kernel_orbit_identity")),
        verify.blaschke_partial_sums(s, blaschke_n),
    ])


def _norms(cfg):
    s = cfg.symbol
    sizes = sorted({n for n in (cfg.size // 4, cfg.size // 2, cfg.size) if n >= 1})
    reports = [verify.norm_convergence(s, sizes, cfg.tol.get("norm_convergence"))]
    if s.a > 1.0:
        n_max = 8 if cfg.n_max is None else cfg.n_max
        reports.append(verify.power_norm_decay(s, n_max, cfg.size, cfg.tol.get("power_norm_decay")))
    return _reports(reports)


def _krylov(cfg):
    s = cfg.symbol
    m = min(16, cfg.size) if cfg.n_max is None else cfg.n_max
    v = rkhs.kernel_vector(1.0, cfg.size).coeffs
    sv = verify.krylov_diagnostic(s, v, m, cfg.size)
    payload = {"symbol": s.as_dict(), "N": cfg.size, "m": m, "start": "k_1", "singular_values": [float(x) for x in sv]}
    return payload, EXIT_OK


HANDLERS = {
    "classify": _classify,
    "matrix": _matrix,
    "verify": _verify,
    "eigen": _eigen,
    "orbit": _orbit,
    "norms": _norms,
    "krylov": _krylov,
}


# --------------------------------------------------------------------------
# rendering
# --------------------------------------------------------------------------

def render(cfg, payload) -> str:
    fmt = cfg.format or ("csv" if cfg.command == "matrix" else "json")
    if isinstance(payload, rkhs.TruncatedOperator):
        if fmt == "csv":
            return rkhs.matrix_to_csv(payload)
        if fmt == "json":
            return rkhs.matrix_to_json(payload) + "\n"
        return np.array2string(payload.matrix, precision=6, max_line_width=120) + "\n"
    if isinstance(payload, list):
        if fmt == "json":
            return json.dumps([r.as_dict() for r in payload], indent=2, sort_keys=True) + "\n"
        lines = []
        for r in payload:
            status = "PASS" if r.passed else "FAIL"
            cmp = ">" if r.kind == "witness" else "<="
            lines.append(f"{status}  {r.check_name:<24} residual={r.residual:.3e} {cmp} {r.tolerance:.1e}")
        return "\n".join(lines) + "\n"
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    return "\n".join(f"{k}: {v}" for k, v in _flatten(payload)) + "\n"


def _flatten(d, prefix=""):
    for k in sorted(d):
        v = d[k]
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            yield from _flatten(v, key + ".")
        else:
            yield key, v


def run(cfg: RunConfig, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    payload, code = HANDLERS[cfg.command](cfg)
    text = render(cfg, payload)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
        return run(cfg)
    except (UsageError, UnboundedSymbol) as exc:
        print(f"compop: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except verify.WrongSymbolType as exc:
        print(f"compop: wrong symbol type: {exc}", file=sys.stderr)
        return EXIT_WRONG_TYPE


if __name__ == "__main__":
    sys.exit(main())
