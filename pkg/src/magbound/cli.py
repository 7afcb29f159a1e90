"""Command-line interface: solve, field, vortices, compare, verify.

Every float in a report or data file is rendered in 9-significant-digit
scientific notation so identical inputs always produce byte-identical
output. Exit codes: 0 success, 1 verification failure, 2 validation error,
3 solver failure, 4 output I/O failure.
"""

from __future__ import annotations

import argparse
import configparser
import json
import math
import os
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import __version__
from .boundstate import (SolveMethod, b_asymptotic, defining_residual, ground_state_eval,
                         solve_b_exact, solve_b_log)
from .currents import (EPS_SEP_FACTOR, VortexCenter, VortexConfig, current_field_arrays,
                       curl_field_array, multi_center_current)
from .errors import SolverError, ValidationError
from .units import PhysicalParams, derive_scales
from .verify import ground_state_arrays, run_checks
from .zerofield import (ZeroFieldState, dwell_ratio, localization_ratio_estimate,
                        localization_ratio_exact)

FIELD_HEADER = "x,y,re_psi,im_psi,prob,jx,jy,curl"
VORTEX_HEADER = "x,y,jx,jy"

_SOLVERS = {
    "exact": solve_b_exact,
    "log": solve_b_log,
    "asymptotic": b_asymptotic,
}


def fmt(v: float) -> str:
    """Fixed-width scientific rendering, 9 significant digits."""
    if math.isnan(v):
        return "nan"
    if v == 0.0:
        v = 0.0  # canonicalize -0.0
    return f"{v:.8e}"


def fmt9(v: float) -> float:
    """Round to the same 9 significant digits for JSON payloads."""
    if math.isnan(v):
        return v
    if v == 0.0:
        return 0.0
    return float(f"{v:.8e}")


@dataclass(frozen=True)
class RunConfig:
    """Effective run configuration after merging defaults, file, and flags."""

    units: str = "natural"
    lam: float = 2.0 * math.pi
    b_kilogauss: float = 10.0
    mass_ratio: float = 1.0
    cutoff: int = 10 ** 6
    method: str = "log"
    tol: float = 1e-12
    nx: int = 201
    ny: int = 201
    extent: tuple[float, float, float, float] = (-4.0, 4.0, -4.0, 4.0)
    out: str = "-"
    format: str = "csv"

    def validate(self) -> "RunConfig":
        if self.units not in ("natural", "gaussian"):
            raise ValidationError(f"units must be natural or gaussian, got {self.units!r}")
        if not (self.lam > 0.0 and math.isfinite(self.lam)):
            raise ValidationError(f"lambda must be positive, got {self.lam!r}")
        if self.b_kilogauss <= 0.0:
            raise ValidationError(f"b_kilogauss must be positive, got {self.b_kilogauss!r}")
        if self.mass_ratio <= 0.0:
            raise ValidationError(f"mass_ratio must be positive, got {self.mass_ratio!r}")
        if self.cutoff < 1:
            raise ValidationError(f"cutoff must be >= 1, got {self.cutoff}")
        if self.method not in _SOLVERS:
            raise ValidationError(f"method must be one of {sorted(_SOLVERS)}, got {self.method!r}")
        if not (self.tol > 0.0):
            raise ValidationError(f"tol must be positive, got {self.tol!r}")
        if self.nx < 2 or self.ny < 2:
            raise ValidationError(f"grid must be at least 2x2, got {self.nx},{self.ny}")
        x_min, x_max, y_min, y_max = self.extent
        if not (x_min < x_max and y_min < y_max):
            raise ValidationError(f"extent is empty: {self.extent}")
        if self.format not in ("csv", "json"):
            raise ValidationError(f"format must be csv or json, got {self.format!r}")
        return self

    def params(self) -> PhysicalParams:
        if self.units == "natural":
            return PhysicalParams.natural(lam=self.lam, mass_ratio=self.mass_ratio)
        return PhysicalParams.gaussian(b_kilogauss=self.b_kilogauss, lam=self.lam,
                                       mass_ratio=self.mass_ratio)


@dataclass(frozen=True)
class FieldRecord:
    """One exported field sample."""

    x: float
    y: float
    re_psi: float
    im_psi: float
    prob: float
    jx: float
    jy: float
    curl: float

    def csv_row(self) -> str:
        return ",".join(fmt(v) for v in
                        (self.x, self.y, self.re_psi, self.im_psi,
                         self.prob, self.jx, self.jy, self.curl))

    def json_obj(self) -> dict:
        return {key: fmt9(getattr(self, key)) for key in
                ("x", "y", "re_psi", "im_psi", "prob", "jx", "jy", "curl")}


def _load_config_file(path: str) -> dict:
    parser = configparser.ConfigParser()
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read config file {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ValidationError(f"malformed config file {path}: {exc}") from exc
    out: dict = {}
    try:
        if parser.has_option("units", "system"):
            out["units"] = parser.get("units", "system")
        if parser.has_option("params", "lambda"):
            out["lam"] = parser.getfloat("params", "lambda")
        if parser.has_option("params", "b_kilogauss"):
            out["b_kilogauss"] = parser.getfloat("params", "b_kilogauss")
        if parser.has_option("params", "mass_ratio"):
            out["mass_ratio"] = parser.getfloat("params", "mass_ratio")
        if parser.has_option("solver", "cutoff"):
            out["cutoff"] = parser.getint("solver", "cutoff")
        if parser.has_option("solver", "method"):
            out["method"] = parser.get("solver", "method")
        if parser.has_option("solver", "tol"):
            out["tol"] = parser.getfloat("solver", "tol")
        if parser.has_option("grid", "nx"):
            out["nx"] = parser.getint("grid", "nx")
        if parser.has_option("grid", "ny"):
            out["ny"] = parser.getint("grid", "ny")
        if parser.has_option("grid", "extent"):
            out["extent"] = _parse_extent(parser.get("grid", "extent"))
        if parser.has_option("output", "path"):
            out["out"] = parser.get("output", "path")
        if parser.has_option("output", "format"):
            out["format"] = parser.get("output", "format")
    except ValueError as exc:
        raise ValidationError(f"bad value in config file {path}: {exc}") from exc
    return out


def _parse_grid(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValidationError(f"grid must be NX,NY, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ValidationError(f"grid must be NX,NY integers, got {text!r}") from exc


def _parse_extent(text: str) -> tuple[float, float, float, float]:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValidationError(f"extent must be XMIN,XMAX,YMIN,YMAX, got {text!r}")
    try:
        vals = tuple(float(p) for p in parts)
    except ValueError as exc:
        raise ValidationError(f"extent must be four numbers, got {text!r}") from exc
    return vals  # type: ignore[return-value]


def build_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        cfg = replace(cfg, **_load_config_file(args.config))
    overrides: dict = {}
    for attr, key in (("units", "units"), ("lam", "lam"), ("b_kilogauss", "b_kilogauss"),
                      ("mass_ratio", "mass_ratio"), ("cutoff", "cutoff"),
                      ("method", "method"), ("tol", "tol"), ("out", "out"),
                      ("format", "format")):
        value = getattr(args, attr, None)
        if value is not None:
            overrides[key] = value
    if getattr(args, "grid", None) is not None:
        overrides["nx"], overrides["ny"] = _parse_grid(args.grid)
    if getattr(args, "extent", None) is not None:
        overrides["extent"] = _parse_extent(args.extent)
    return replace(cfg, **overrides).validate()


def _config_text(cfg: RunConfig) -> str:
    extent = ",".join(repr(v) for v in cfg.extent)
    return (
        "[units]\n"
        f"system = {cfg.units}\n\n"
        "[params]\n"
        f"lambda = {cfg.lam!r}\n"
        f"b_kilogauss = {cfg.b_kilogauss!r}\n"
        f"mass_ratio = {cfg.mass_ratio!r}\n\n"
        "[solver]\n"
        f"cutoff = {cfg.cutoff}\n"
        f"method = {cfg.method}\n"
        f"tol = {cfg.tol!r}\n\n"
        "[grid]\n"
        f"nx = {cfg.nx}\n"
        f"ny = {cfg.ny}\n"
        f"extent = {extent}\n\n"
        "[output]\n"
        f"path = {cfg.out}\n"
        f"format = {cfg.format}\n"
    )


def _write_output(cfg: RunConfig, text: str, stdout) -> None:
    if cfg.out == "-":
        stdout.write(text)
        return
    try:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise _OutputError(f"cannot write {cfg.out}: {exc}") from exc


class _OutputError(OSError):
    pass


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_solve(cfg: RunConfig, stdout) -> int:
    sol = _SOLVERS[cfg.method](cfg.lam, cfg.cutoff)
    residual = abs(defining_residual(sol.b, cfg.lam, cfg.cutoff))
    payload = {
        "b": fmt9(sol.b),
        "energy_hw": fmt9(sol.energy),
        "binding_hw": fmt9(sol.binding),
        "c_norm": fmt9(sol.c_norm),
        "cutoff": sol.cutoff_N,
        "method": sol.method.value,
        "residual": fmt9(residual),
    }
    if cfg.format == "json":
        _write_output(cfg, json.dumps(payload, indent=2) + "\n", stdout)
    else:
        lines = [
            f"b           {fmt(sol.b)}",
            f"energy_hw   {fmt(sol.energy)}",
            f"binding_hw  {fmt(sol.binding)}",
            f"c_norm      {fmt(sol.c_norm)}",
            f"cutoff      {sol.cutoff_N}",
            f"method      {sol.method.value}",
            f"residual    {fmt(residual)}",
        ]
        _write_output(cfg, "\n".join(lines) + "\n", stdout)
    return 0


def _field_grid(cfg: RunConfig):
    params = cfg.params()
    scales = derive_scales(params)
    a = scales.a
    x_min, x_max, y_min, y_max = (v * a for v in cfg.extent)
    xs = np.linspace(x_min, x_max, cfg.nx)
    ys = np.linspace(y_min, y_max, cfg.ny)
    return params, scales, xs, ys


def cmd_field(cfg: RunConfig, stdout) -> int:
    params, scales, xs, ys = _field_grid(cfg)
    X, Y = np.meshgrid(xs, ys)
    psi = ground_state_arrays(X, Y, scales)
    jx, jy = current_field_arrays(X, Y, scales)
    curl = curl_field_array(X, Y, scales)
    prob = psi.real ** 2 + psi.imag ** 2
    records = [
        FieldRecord(x=X[j, i], y=Y[j, i], re_psi=psi[j, i].real, im_psi=psi[j, i].imag,
                    prob=prob[j, i], jx=jx[j, i], jy=jy[j, i], curl=curl[j, i])
        for j in range(cfg.ny) for i in range(cfg.nx)
    ]
    if cfg.format == "json":
        text = json.dumps([r.json_obj() for r in records], indent=2) + "\n"
    else:
        text = "\n".join([FIELD_HEADER] + [r.csv_row() for r in records]) + "\n"
    _write_output(cfg, text, stdout)
    return 0


def _load_centers(path: str, a: float) -> VortexConfig:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read centers file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed centers file {path}: {exc}") from exc
    if not isinstance(raw, list) or len(raw) == 0:
        raise ValidationError("centers file must be a non-empty JSON list")
    centers = []
    for k, item in enumerate(raw):
        if not isinstance(item, dict) or not {"x", "y", "intensity"} <= set(item):
            raise ValidationError(
                f"centers[{k}] must be an object with keys x, y, intensity")
        try:
            x, y = float(item["x"]), float(item["y"])
            intensity = float(item["intensity"])
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"centers[{k}] has non-numeric values") from exc
        centers.append(VortexCenter(zk=complex(x * a, y * a), intensity=intensity))
    return VortexConfig(centers=tuple(centers), eps_sep=EPS_SEP_FACTOR * a)


def cmd_vortices(cfg: RunConfig, centers_path: str, stdout, stderr) -> int:
    params, scales, xs, ys = _field_grid(cfg)
    config = _load_centers(centers_path, scales.a)
    rows = []
    pole_adjacent = 0
    for y in ys:
        for x in xs:
            z = complex(x, y)
            try:
                j = multi_center_current(config, z)
                jx, jy = j.real, j.imag
            except ValidationError:
                jx = jy = float("nan")
                pole_adjacent += 1
            rows.append((x, y, jx, jy))
    if cfg.format == "json":
        text = json.dumps(
            [{"x": fmt9(x), "y": fmt9(y), "jx": fmt9(jx), "jy": fmt9(jy)}
             for x, y, jx, jy in rows], indent=2) + "\n"
    else:
        text = "\n".join([VORTEX_HEADER]
                         + [",".join(fmt(v) for v in row) for row in rows]) + "\n"
    _write_output(cfg, text, stdout)
    print(f"samples={len(rows)} pole_adjacent={pole_adjacent}", file=stderr)
    return 0


def cmd_compare(cfg: RunConfig, e0_ev: float, b_kg: float, r0_cm: float | None,
                stdout) -> int:
    if not (e0_ev > 0.0 and math.isfinite(e0_ev)):
        raise ValidationError(f"e0_ev must be positive, got {e0_ev!r}")
    if not (b_kg > 0.0 and math.isfinite(b_kg)):
        raise ValidationError(f"b_kg must be positive, got {b_kg!r}")
    gaussian = PhysicalParams.gaussian(b_kilogauss=b_kg, lam=cfg.lam)
    a = derive_scales(gaussian).a
    state = ZeroFieldState.from_binding_energy(
        e0_ev * 1.602176634e-12, mass=gaussian.m_e, hbar=gaussian.hbar)
    l0 = state.l0
    exact = localization_ratio_exact(e0_ev, b_kg)
    estimate = localization_ratio_estimate(e0_ev, b_kg)
    r0 = 0.05 * min(a, l0) if r0_cm is None else r0_cm
    payload = {
        "a_cm": fmt9(a),
        "l0_cm": fmt9(l0),
        "ratio_exact": fmt9(exact),
        "ratio_estimate": fmt9(estimate),
        "deviation_percent": fmt9((exact - estimate) / exact * 100.0),
        "r0_cm": fmt9(r0),
        "dwell_with_field": fmt9(dwell_ratio(r0, a, with_field=True)),
        "dwell_without_field": fmt9(dwell_ratio(r0, l0, with_field=False)),
    }
    if cfg.format == "json":
        _write_output(cfg, json.dumps(payload, indent=2) + "\n", stdout)
    else:
        width = max(len(k) for k in payload)
        lines = [f"{k.ljust(width)}  {fmt(float(v))}" for k, v in payload.items()]
        _write_output(cfg, "\n".join(lines) + "\n", stdout)
    return 0


def _use_color(stream) -> bool:
    return os.environ.get("NO_COLOR") is None and hasattr(stream, "isatty") \
        and stream.isatty()


def cmd_verify(perturb_j0: float, verbose: bool, stdout) -> int:
    color = _use_color(stdout)
    results = run_checks(perturb_j0=perturb_j0)
    failed = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        if color:
            code = "32" if res.passed else "31"
            status = f"\x1b[{code}m{status}\x1b[0m"
        line = f"{status}  {res.name:32s} measured={fmt(res.measured)}"
        if verbose:
            line += f"  tol={fmt(res.tol)}"
        print(line, file=stdout)
        if not res.passed:
            failed += 1
    print(f"{len(results) - failed}/{len(results)} checks passed", file=stdout)
    return 0 if failed == 0 else 1


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="INI config file; flags override file values")
    parser.add_argument("--units", choices=["natural", "gaussian"])
    parser.add_argument("--lambda", dest="lam", type=float,
                        help="dimensionless delta coupling > 0")
    parser.add_argument("--b-kilogauss", dest="b_kilogauss", type=float,
                        help="field strength in kilogauss (gaussian units)")
    parser.add_argument("--mass-ratio", dest="mass_ratio", type=float,
                        help="effective mass over free electron mass")
    parser.add_argument("--cutoff", type=int, help="level cutoff N")
    parser.add_argument("--method", choices=sorted(_SOLVERS))
    parser.add_argument("--tol", type=float, help="solver tolerance")
    parser.add_argument("--grid", help="NX,NY sample counts")
    parser.add_argument("--extent", help="XMIN,XMAX,YMIN,YMAX in units of a")
    parser.add_argument("--out", help="output path, '-' for stdout")
    parser.add_argument("--format", choices=["csv", "json"])
    parser.add_argument("--show-config", action="store_true",
                        help="print the effective configuration and exit")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="magbound",
        description="Bound electron states in a magnetic field with attractive "
                    "delta potentials: solvers, field maps, and verification.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve the bound-state energy condition")
    _add_common(p_solve)

    p_field = sub.add_parser("field", help="export the ground-state field map")
    _add_common(p_field)

    p_vort = sub.add_parser("vortices", help="export a multi-center current map")
    _add_common(p_vort)
    p_vort.add_argument("--centers", required=True,
                        help="JSON file: list of {x, y, intensity}, positions in units of a")

    p_cmp = sub.add_parser("compare", help="magnetic vs zero-field localization")
    _add_common(p_cmp)
    p_cmp.add_argument("e0_ev", type=float, help="zero-field binding energy in eV")
    p_cmp.add_argument("b_kg", type=float, help="magnetic field in kilogauss")
    p_cmp.add_argument("--r0-cm", dest="r0_cm", type=float,
                       help="well radius in cm for the dwell-time ratios")

    p_ver = sub.add_parser("verify", help="run the numerical verification battery")
    _add_common(p_ver)
    p_ver.add_argument("--verbose", "-v", action="store_true",
                       help="print tolerances next to measurements")
    p_ver.add_argument("--perturb-j0", dest="perturb_j0", type=float, default=1.0,
                       help=argparse.SUPPRESS)
    return parser


def main(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
        if getattr(args, "show_config", False):
            stdout.write(_config_text(cfg))
            return 0
        if args.command == "solve":
            return cmd_solve(cfg, stdout)
        if args.command == "field":
            return cmd_field(cfg, stdout)
        if args.command == "vortices":
            return cmd_vortices(cfg, args.centers, stdout, stderr)
        if args.command == "compare":
            return cmd_compare(cfg, args.e0_ev, args.b_kg, args.r0_cm, stdout)
        if args.command == "verify":
            return cmd_verify(args.perturb_j0, args.verbose, stdout)
        raise ValidationError(f"unknown command {args.command!r}")
    except ValidationError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except SolverError as exc:
        print(f"solver error: {exc}", file=stderr)
        return 3
    except _OutputError as exc:
        print(f"output error: {exc}", file=stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
