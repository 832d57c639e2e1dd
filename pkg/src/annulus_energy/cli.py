"""Command-line driver: ``annulus-energy {energy,sweep,radial-min,verify}``.

Settings come from defaults, then an optional INI-style ``--config`` file,
then flags, later sources winning.  CSV output starts with ``#`` comment
lines echoing the effective settings; JSON output carries them under
``"config"``.  Exit codes: 0 ok, 1 failed checks, 2 bad configuration,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

from .energy import (
    CSV_HEADER,
    SeparableMap,
    combined_energy_separable,
    quasiradial_energy,
)
from .errors import ConfigError, DomainError, NonConvergence
from .euler_lagrange import build_radial_minimizer
from .geometry import Annulus
from .profiles import DECREASING, INCREASING, load_tabulated_profile, make_boundary_profile
from .quadrature import QuadratureConfig
from .verification import FAULTS, DEFAULT_SEED, SuiteConfig, gap_report, run_suite, sweep_lambda

EXIT_OK, EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_NONCONVERGENCE = 0, 1, 2, 3

PROFILE_CHOICES = ("boundary-increasing", "boundary-decreasing", "el-minimizer", "tabulated:PATH")
SWEEP_HEADER = ("lambda", "energy", "limit_energy", "bound", "relative_excess")
CONFIG_KEYS = {
    "n": int, "r": float, "R": float, "r_star": float, "R_star": float,
    "rel_tol": float, "abs_tol": float, "output": str, "format": str,
}
DEFAULTS = {"n": 4, "r": 1.0, "R": 2.0, "r_star": 1.0, "R_star": math.e,
            "rel_tol": 1e-10, "abs_tol": 1e-14, "output": None, "format": None}
FORMAT_DEFAULTS = {"energy": "csv", "sweep": "csv", "radial-min": "json", "verify": "table"}


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


@dataclass
class LabConfig:
    n: int
    r: float
    R: float
    r_star: float
    R_star: float
    rel_tol: float
    abs_tol: float
    output: Optional[str]
    format: str
    sources: List[str] = field(default_factory=list)

    @property
    def domain(self) -> Annulus:
        return Annulus(self.n, self.r, self.R)

    @property
    def target(self) -> Annulus:
        return Annulus(self.n, self.r_star, self.R_star)

    @property
    def quadrature(self) -> QuadratureConfig:
        return QuadratureConfig(rel_tol=self.rel_tol, abs_tol=self.abs_tol)

    def validate(self):
        # report annulus problems under the config key names
        for build, names in ((lambda: self.domain, {"inner": "r", "outer": "R"}),
                             (lambda: self.target, {"inner": "r_star", "outer": "R_star"})):
            try:
                build()
            except ConfigError as exc:
                raise ConfigError(str(exc), field=names.get(exc.field, exc.field)) from None
        self.quadrature

    def items(self):
        return [("n", self.n), ("r", self.r), ("R", self.R), ("r_star", self.r_star),
                ("R_star", self.R_star), ("rel_tol", self.rel_tol), ("abs_tol", self.abs_tol)]


def read_config_file(path) -> dict:
    """Collect known keys from every section of an INI-style file.

    Keys may sit in any section; a key repeated in several sections is an
    error, as is any unknown key.
    """
    # no DEFAULT inheritance: every section holds only its own keys
    parser = configparser.ConfigParser(default_section="\x00")
    parser.optionxform = str
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror}",
                          field="config") from None
    except configparser.Error as exc:
        raise ConfigError(f"malformed config file {path}: {exc}", field="config") from None
    out = {}
    seen = {}
    for section in parser.sections():
        for key, raw in parser.items(section, raw=True):
            if key not in CONFIG_KEYS:
                raise ConfigError(f"{path}: unknown key {key!r} in [{section}]", field=key)
            if key in seen:
                raise ConfigError(f"{path}: key {key!r} set in both [{seen[key]}] and "
                                  f"[{section}]", field=key)
            seen[key] = section
            try:
                out[key] = CONFIG_KEYS[key](raw)
            except ValueError:
                raise ConfigError(f"{path}: bad value {raw!r} for {key!r}", field=key) from None
    return out


def resolve_config(args: argparse.Namespace) -> LabConfig:
    values = dict(DEFAULTS)
    sources = ["defaults"]
    if args.config:
        values.update(read_config_file(args.config))
        sources.append(f"config file {args.config}")
    flags = {k: getattr(args, k) for k in CONFIG_KEYS if getattr(args, k, None) is not None}
    if flags:
        values.update(flags)
        sources.append("flags")
    if values["format"] is None:
        values["format"] = FORMAT_DEFAULTS[args.command]
    allowed = ("csv", "json", "table") if args.command == "verify" else ("csv", "json")
    if values["format"] not in allowed:
        raise ConfigError(f"format must be one of {', '.join(allowed)}", field="format")
    cfg = LabConfig(**values, sources=sources)
    cfg.validate()
    return cfg


def make_profile(spec: str, cfg: LabConfig):
    domain, target = cfg.domain, cfg.target
    if spec == "boundary-increasing":
        return make_boundary_profile(domain, target, INCREASING)
    if spec == "boundary-decreasing":
        return make_boundary_profile(domain, target, DECREASING)
    if spec == "el-minimizer":
        return build_radial_minimizer(domain, target).profile
    if spec.startswith("tabulated:"):
        path = spec.split(":", 1)[1]
        if not path:
            raise ConfigError("tabulated profile needs a path: tabulated:PATH", field="profile")
        try:
            return load_tabulated_profile(path, domain, target)
        except OSError as exc:
            raise ConfigError(f"cannot read profile {path}: {exc.strerror}",
                              field="profile") from None
    raise ConfigError(f"unknown profile {spec!r}; choose from {', '.join(PROFILE_CHOICES)}",
                      field="profile")


def parse_grid(spec: str) -> List[float]:
    """``geometric:start,ratio,count`` or a comma-separated list of lambdas."""
    try:
        if spec.startswith("geometric:"):
            parts = spec.split(":", 1)[1].split(",")
            if len(parts) != 3:
                raise ValueError
            start, ratio, count = float(parts[0]), float(parts[1]), int(parts[2])
            if count < 1 or not start > 0 or not ratio > 0:
                raise ValueError
            lams = [start * ratio ** k for k in range(count)]
        else:
            lams = [float(x) for x in spec.split(",") if x.strip()]
    except ValueError:
        raise ConfigError(f"bad grid {spec!r}; use geometric:start,ratio,count or a list",
                          field="grid") from None
    if not lams or not all(x > 0 and math.isfinite(x) for x in lams):
        raise ConfigError("grid must hold at least one positive finite lambda", field="grid")
    return lams


# ---------------------------------------------------------------------------
# output helpers

def provenance(command: str, cfg: LabConfig, extra: Sequence = ()) -> List[str]:
    lines = [f"# annulus-energy {command}", f"# sources: {' < '.join(cfg.sources)}"]
    lines += [f"# {k} = {fmt(v)}" for k, v in list(cfg.items()) + list(extra)]
    return lines


def csv_text(comments, header, rows) -> str:
    buf = io.StringIO()
    for line in comments:
        buf.write(line + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def config_dict(cfg: LabConfig, extra: Sequence = ()) -> dict:
    d = dict(cfg.items())
    d.update(extra)
    d["sources"] = cfg.sources
    return d


def emit(text: str, cfg: LabConfig):
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands

def cmd_energy(args, cfg: LabConfig) -> int:
    profile = make_profile(args.profile, cfg)
    smap = SeparableMap(profile, args.lam)
    if args.a is not None or args.b is not None:
        a = 1.0 if args.a is None else args.a
        b = 1.0 if args.b is None else args.b
        report = combined_energy_separable(a, b, smap, cfg.quadrature)
    else:
        report = quasiradial_energy(smap, cfg.quadrature)
    row = report.row()
    extra = [("profile", args.profile), ("lambda", args.lam)]
    if cfg.format == "json":
        emit(json.dumps({"config": config_dict(cfg, extra), "report": row}, indent=2) + "\n",
             cfg)
    else:
        emit(csv_text(provenance("energy", cfg, extra), CSV_HEADER,
                      [[row[k] for k in CSV_HEADER]]), cfg)
    print(f"bound {fmt(report.bound)}  relative gap {fmt(report.relative_gap)}",
          file=sys.stderr)
    return EXIT_OK


def cmd_sweep(args, cfg: LabConfig) -> int:
    profile = make_profile(args.profile, cfg)
    lams = parse_grid(args.grid)
    result = sweep_lambda(profile, lams, cfg.quadrature)
    rows = [[r.lam, r.energy, r.limit_energy, r.bound, r.relative_excess] for r in result.rows]
    extra = [("profile", args.profile), ("grid", args.grid)]
    if cfg.format == "json":
        payload = {
            "config": config_dict(cfg, extra),
            "rows": [dict(zip(SWEEP_HEADER, row)) for row in rows],
            "checks": [{"name": c.name, "status": c.status, "measured": c.measured,
                        "threshold": c.threshold, "anchor": c.anchor}
                       for c in result.checks],
        }
        emit(json.dumps(payload, indent=2) + "\n", cfg)
    else:
        emit(csv_text(provenance("sweep", cfg, extra), SWEEP_HEADER, rows), cfg)
    for c in result.checks:
        print(f"{c.status.upper()} {c.name} ({c.anchor}): {c.measured:.4g} {c.comparison} "
              f"{c.threshold:.4g}", file=sys.stderr)
    return EXIT_OK if result.passed else EXIT_CHECK_FAILED


def cmd_radial_min(args, cfg: LabConfig) -> int:
    domain, target = cfg.domain, cfg.target
    sol = build_radial_minimizer(domain, target)
    gap = gap_report(domain, target, cfg.quadrature)
    summary = sol.summary()
    regime = ("strict gap expected" if domain.n >= 4
              else "n = 3: outside the strict-gap range, all three values coincide")
    gap_fields = {
        "dirichlet_infimum": gap.infimum,
        "quasiradial_energy_eighth": gap.quasiradial_eighth,
        "minimal_radial_energy": gap.minimal_radial,
        "gap": gap.gap,
        "gap_passed": gap.passed,
        "regime": regime,
    }
    if cfg.format == "json":
        payload = {"config": config_dict(cfg), "solution": summary, "gap": gap_fields}
        emit(json.dumps(payload, indent=2) + "\n", cfg)
    else:
        merged = {**summary, **gap_fields}
        emit(csv_text(provenance("radial-min", cfg), list(merged), [list(merged.values())]),
             cfg)
    return EXIT_OK if gap.passed else EXIT_CHECK_FAILED


def cmd_verify(args, cfg: LabConfig) -> int:
    suite_cfg = SuiteConfig(n=cfg.n, r=cfg.r, R=cfg.R, r_star=cfg.r_star, R_star=cfg.R_star,
                            quadrature=cfg.quadrature, seed=args.seed, fault=args.inject_fault)
    report = run_suite(suite_cfg)
    if cfg.format == "json":
        emit(report.to_json(indent=2) + "\n", cfg)
    elif cfg.format == "csv":
        emit("\n".join(provenance("verify", cfg, [("seed", args.seed)])) + "\n"
             + report.to_csv(), cfg)
    else:
        emit(report.to_table() + "\n", cfg)
    for c in report.failed:
        print(f"FAILED {c.name} [{c.anchor}]: measured {c.measured:.6g} "
              f"{c.comparison} {c.threshold:.6g}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


COMMANDS = {"energy": cmd_energy, "sweep": cmd_sweep, "radial-min": cmd_radial_min,
            "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("annuli and numerics")
    g.add_argument("--n", type=int, help="ambient dimension, 3..30 (default 4)")
    g.add_argument("--r", type=float, help="inner radius of the domain annulus (default 1)")
    g.add_argument("--R", type=float, help="outer radius of the domain annulus (default 2)")
    g.add_argument("--r-star", dest="r_star", type=float,
                   help="inner radius of the target annulus (default 1)")
    g.add_argument("--R-star", dest="R_star", type=float,
                   help="outer radius of the target annulus (default e)")
    g.add_argument("--rel-tol", dest="rel_tol", type=float,
                   help="relative quadrature tolerance (default 1e-10)")
    g.add_argument("--abs-tol", dest="abs_tol", type=float,
                   help="absolute quadrature tolerance (default 1e-14)")
    g.add_argument("--config", help="INI-style file with any of: "
                   + ", ".join(CONFIG_KEYS) + " (flags win over file values)")
    g.add_argument("--output", help="write to this file instead of stdout")
    g.add_argument("--format", help="csv or json (verify also accepts table); "
                   "default csv, json for radial-min, table for verify")

    parser = argparse.ArgumentParser(
        prog="annulus-energy",
        description="Energies of radial and quasiradial maps between spherical annuli.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("energy", parents=[common],
                       help="energy of one separable map H(|x|) Phi^lambda(x/|x|)")
    p.add_argument("--profile", default="boundary-increasing",
                   help="one of " + ", ".join(PROFILE_CHOICES) + " (default boundary-increasing)")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0,
                   help="conformal dilation factor (default 1, the radial map)")
    p.add_argument("--a", type=float, help="sphere weight; with --b gives the combined energy")
    p.add_argument("--b", type=float, help="radial weight of the combined energy")

    p = sub.add_parser("sweep", parents=[common], help="energies along a lambda grid")
    p.add_argument("--profile", default="boundary-increasing",
                   help="profile spec as for energy (default boundary-increasing)")
    p.add_argument("--grid", default="geometric:1,0.5,11",
                   help="geometric:start,ratio,count or comma list (default geometric:1,0.5,11)")

    sub.add_parser("radial-min", parents=[common],
                   help="radial-energy minimiser and the infimum / quasiradial / radial triple")

    p = sub.add_parser("verify", parents=[common], help="run the property suite")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                   help=f"seed for randomised checks (default {DEFAULT_SEED})")
    p.add_argument("--inject-fault", choices=sorted(FAULTS), default=None,
                   help=argparse.SUPPRESS)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        return COMMANDS[args.command](args, cfg)
    except ConfigError as exc:
        where = f" [{exc.field}]" if getattr(exc, "field", None) else ""
        print(f"annulus-energy: configuration error{where}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NonConvergence, DomainError) as exc:
        print(f"annulus-energy: numerical failure: {exc}", file=sys.stderr)
        diag = getattr(exc, "diagnostics", None)
        if diag:
            print(f"annulus-energy: diagnostics {diag}", file=sys.stderr)
        return EXIT_NONCONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
