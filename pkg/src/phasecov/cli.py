"""Command-line front end: evolve states, check CPTP, dump rates, sweep.

Subcommands
-----------
evolve    write t, P1, Re_alpha, Im_alpha, Gamma, GammaTilde, Omega, g as CSV
cp-check  per-time CP margins and verdicts as JSON
rates     gamma1, gamma2, gamma3, omega over the grid as CSV
scan      one summary row per value of a swept parameter as CSV

All times are dimensionless (the thermal model's tau; w_c t for the
dephasing model).  Curves go to CSV, verdict reports to JSON, both with
deterministic formatting.  Exit codes: 0 success (and CP everywhere for
cp-check), 1 bad usage or parameters, 2 I/O failure, 3 CP violation
found.

The environment variable PHASECOV_TOL overrides the default verdict
tolerance (margins and Choi eigenvalues count as non-negative above
minus this value).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import cptp, models, nonmarkov
from .coeffs import (CoefficientSet, QuadratureConfig, ToleranceError,
                     integrate_profile, markovian_coefficients)
from .dynamics import QubitState, evolve_state

__all__ = ["main", "build_parser", "TOL_ENV_VAR"]

TOL_ENV_VAR = "PHASECOV_TOL"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_VIOLATION = 3

EVOLVE_HEADER = "t,P1,Re_alpha,Im_alpha,Gamma,GammaTilde,Omega,g"
RATES_HEADER = "t,gamma1,gamma2,gamma3,omega"
SCAN_HEADER = ("param,value,stationary_P1,max_P1,osc_amplitude,"
               "nm_verdict,first_negative_start")

MODELS = ("thermal", "ohmic", "both", "constant", "tabulated")
SCAN_PARAMS = ("R", "N", "s", "alpha", "omega_c", "T")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # our documented exit codes differ from argparse's default 2
    def error(self, message):
        raise UsageError(message)


def default_tolerance() -> float:
    raw = os.environ.get(TOL_ENV_VAR)
    if raw is None:
        return cptp.DEFAULT_TOL
    try:
        val = float(raw)
    except ValueError as exc:
        raise UsageError(f"{TOL_ENV_VAR} must be a float, got {raw!r}") from exc
    if val <= 0:
        raise UsageError(f"{TOL_ENV_VAR} must be positive")
    return val


@dataclass(frozen=True)
class RunConfig:
    model: str
    R: float = 0.25
    N: float = 0.0
    alpha: float = 0.1
    s: float = 1.0
    omega_c: float = 1.0
    T: float = 0.0
    kernel: str = "literature"
    g1: float = 0.0
    g2: float = 0.0
    g3: float = 0.0
    w: float = 0.0
    rates_file: str | None = None
    t_max: float = 10.0
    steps: int = 200
    p1_0: float = 1.0
    re_alpha_0: float = 0.0
    im_alpha_0: float = 0.0
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    tol: float = cptp.DEFAULT_TOL
    out: str = "-"

    def validate(self):
        if self.model not in MODELS:
            raise UsageError(f"unknown model {self.model!r}")
        if self.steps < 2:
            raise UsageError("steps must be at least 2")
        if self.t_max <= 0:
            raise UsageError("t-max must be positive")
        if self.model == "tabulated" and not self.rates_file:
            raise UsageError("tabulated model requires --rates-file")
        try:
            QubitState(self.p1_0, complex(self.re_alpha_0, self.im_alpha_0))
            if self.model in ("thermal", "both"):
                models.ThermalParams(self.R, self.N)
            if self.model in ("ohmic", "both"):
                models.OhmicParams(self.alpha, self.s, self.omega_c,
                                   self.T, self.kernel)
            QuadratureConfig(self.rel_tol, self.abs_tol)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.steps)

    @property
    def quad_cfg(self) -> QuadratureConfig:
        return QuadratureConfig(self.rel_tol, self.abs_tol)

    @property
    def initial_state(self) -> QubitState:
        return QubitState(self.p1_0, complex(self.re_alpha_0, self.im_alpha_0))


def _tabulated_profile(cfg: RunConfig):
    try:
        data = np.loadtxt(cfg.rates_file, delimiter=",", skiprows=1, ndmin=2)
    except OSError as exc:
        raise UsageError(f"cannot read rates file: {exc}") from exc
    if data.shape[1] != 5:
        raise UsageError("rates file needs columns t,gamma1,gamma2,gamma3,omega")
    t = data[:, 0]

    def interp(col):
        return lambda x, _t=t, _v=data[:, col]: float(np.interp(x, _t, _v))

    from .coeffs import RateProfile
    return RateProfile(gamma1=interp(1), gamma2=interp(2),
                       gamma3=interp(3), omega=interp(4))


def _profile_for(cfg: RunConfig):
    """RateProfile of the configured model (for rates/NM scanning)."""
    parts = []
    if cfg.model in ("thermal", "both"):
        parts.append(models.thermal_profile(
            models.ThermalParams(cfg.R, cfg.N), t_max=cfg.t_max))
    if cfg.model in ("ohmic", "both"):
        parts.append(models.ohmic_profile(
            models.OhmicParams(cfg.alpha, cfg.s, cfg.omega_c, cfg.T, cfg.kernel),
            cfg.quad_cfg))
    if cfg.model == "constant":
        from .coeffs import constant_profile
        parts.append(constant_profile(cfg.g1, cfg.g2, cfg.g3, cfg.w))
    if cfg.model == "tabulated":
        parts.append(_tabulated_profile(cfg))
    from .coeffs import combine_profiles
    return combine_profiles(*parts)


def _coefficient_grid(cfg: RunConfig) -> list[CoefficientSet]:
    """CoefficientSets over the time grid.

    The thermal part uses its closed form (exact also across rate
    singularities at R > 1/2); the Ohmic part uses the zero-T closed
    form or the single frequency integral at T > 0; constant rates use
    the GKSL expressions; tabulated rates are integrated numerically.
    """
    times = cfg.times
    if cfg.model == "constant":
        return [markovian_coefficients(cfg.g1, cfg.g2, cfg.g3, cfg.w, float(t))
                for t in times]
    if cfg.model == "tabulated":
        profile = _tabulated_profile(cfg)
        ts = times if times[0] > 0 else times[1:]
        out = integrate_profile(profile, ts, cfg.quad_cfg)
        if times[0] == 0.0:
            out = [CoefficientSet.identity(0.0)] + out
        return out

    gamma = np.zeros_like(times)
    g = np.zeros_like(times)
    tilde = np.zeros_like(times)
    if cfg.model in ("thermal", "both"):
        tp = models.ThermalParams(cfg.R, cfg.N)
        closed = [models.thermal_closed_form(tp, t) for t in times]
        gamma = np.array([c[0] for c in closed])
        g = np.array([c[1] for c in closed])
    if cfg.model in ("ohmic", "both"):
        op = models.OhmicParams(cfg.alpha, cfg.s, cfg.omega_c, cfg.T, cfg.kernel)
        if op.T == 0:
            tilde = np.array([models.ohmic_closed_form(op, t)[1] for t in times])
        else:
            tilde = np.array([models.ohmic_gamma_tilde(op, t, cfg.quad_cfg)
                              for t in times])
    return [CoefficientSet(t=float(t), Gamma=float(gm), GammaTilde=float(td),
                           Omega=0.0, g=float(gg))
            for t, gm, td, gg in zip(times, gamma, tilde, g)]


def _fmt(x: float) -> str:
    return repr(float(x))


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise IOError(f"cannot write {path}: {exc}") from exc


def cmd_evolve(cfg: RunConfig) -> int:
    state0 = cfg.initial_state
    rows = [EVOLVE_HEADER]
    for c in _coefficient_grid(cfg):
        s = evolve_state(state0, c)
        rows.append(",".join([
            _fmt(c.t), _fmt(s.P1), _fmt(s.alpha.real), _fmt(s.alpha.imag),
            _fmt(c.Gamma), _fmt(c.GammaTilde), _fmt(c.Omega), _fmt(c.g),
        ]))
    _write_text(cfg.out, "\n".join(rows) + "\n")
    return EXIT_OK


def cmd_cp_check(cfg: RunConfig, method: str) -> int:
    results = []
    all_cp = True
    first_violation = None
    for c in _coefficient_grid(cfg):
        entry: dict = {"t": float(c.t)}
        verdicts = []
        if method in ("paper", "both"):
            conds = cptp.cp_paper(c, cfg.tol)
            entry.update(
                margin_i=float(conds.margin_i), margin_ii=float(conds.margin_ii),
                margin_iii=float(conds.margin_iii), margin_iv=float(conds.margin_iv),
                paper_verdict=bool(conds.verdict),
            )
            verdicts.append(conds.verdict)
        if method in ("choi", "both"):
            choi = cptp.cp_choi(c, cfg.tol)
            entry.update(choi_min_eig=float(choi.min_eigenvalue),
                         choi_verdict=bool(choi.is_cp))
            verdicts.append(choi.is_cp)
        if method == "both":
            entry["agreement"] = entry["paper_verdict"] == entry["choi_verdict"]
        ok = bool(all(verdicts))
        if not ok and first_violation is None:
            first_violation = float(c.t)
        all_cp = all_cp and ok
        results.append(entry)
    report = {
        "model": cfg.model,
        "method": method,
        "tol": cfg.tol,
        "results": results,
        "summary": {"all_cp": all_cp, "first_violation_t": first_violation},
    }
    _write_text(cfg.out, json.dumps(report, indent=2) + "\n")
    return EXIT_OK if all_cp else EXIT_VIOLATION


def cmd_rates(cfg: RunConfig) -> int:
    profile = _profile_for(cfg)
    times = cfg.times
    dt = times[1] - times[0]
    singular = [s for s in profile.singular_points if s <= cfg.t_max]
    rows = [RATES_HEADER]
    suppressed = []
    for i, t in enumerate(times):
        cells = [_fmt(t)]
        near_pole = any(abs(t - s) <= dt / 2 for s in singular)
        for fn in (profile.gamma1, profile.gamma2, profile.gamma3, profile.omega):
            try:
                v = fn(t)
            except (ArithmeticError, ValueError):
                v = math.nan
            if near_pole or not math.isfinite(v):
                cells.append("")
                if i not in suppressed:
                    suppressed.append(i)
            else:
                cells.append(_fmt(v))
        rows.append(",".join(cells))
    _write_text(cfg.out, "\n".join(rows) + "\n")
    sidecar = json.dumps({"singular_times": singular,
                          "suppressed_rows": suppressed}, indent=2) + "\n"
    if cfg.out == "-":
        sys.stderr.write(sidecar)
    else:
        _write_text(cfg.out + ".singularities.json", sidecar)
    return EXIT_OK


def _with_param(cfg: RunConfig, name: str, value: float) -> RunConfig:
    return replace(cfg, **{name: value})


def cmd_scan(cfg: RunConfig, param: str, values: list[float]) -> int:
    if param not in SCAN_PARAMS:
        raise UsageError(f"unknown scan parameter {param!r}; "
                         f"choose from {', '.join(SCAN_PARAMS)}")
    rows = [SCAN_HEADER]
    for value in values:
        sub = _with_param(cfg, param, value)
        sub.validate()
        state0 = sub.initial_state
        p1 = np.array([evolve_state(state0, c).P1 for c in _coefficient_grid(sub)])
        stationary = p1[-1]
        report = nonmarkov.negative_intervals(
            _profile_for(sub), (0.0, sub.t_max), tol=sub.tol)
        first = report.first_negative
        rows.append(",".join([
            param, _fmt(value), _fmt(stationary), _fmt(p1.max()),
            _fmt(p1.max() - stationary), report.verdict.value,
            "" if first is None else _fmt(first),
        ]))
    _write_text(cfg.out, "\n".join(rows) + "\n")
    return EXIT_OK


def _add_model_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", required=True, choices=MODELS)
    p.add_argument("--R", type=float, default=0.25,
                   help="thermal coupling (dimensionless, > 0)")
    p.add_argument("--N", type=float, default=0.0,
                   help="mean thermal occupation (>= 0)")
    p.add_argument("--alpha", type=float, default=0.1,
                   help="Ohmic coupling constant")
    p.add_argument("--s", type=float, default=1.0, help="Ohmicity parameter")
    p.add_argument("--omega-c", type=float, default=1.0, help="cutoff frequency")
    p.add_argument("--T", type=float, default=0.0,
                   help="dephasing bath temperature (hbar = k_B = 1)")
    p.add_argument("--kernel", choices=models.KERNELS, default="literature")
    p.add_argument("--g1", type=float, default=0.0, help="constant heating rate")
    p.add_argument("--g2", type=float, default=0.0, help="constant dissipation rate")
    p.add_argument("--g3", type=float, default=0.0, help="constant dephasing rate")
    p.add_argument("--w", type=float, default=0.0, help="constant frequency shift")
    p.add_argument("--rates-file", help="CSV t,gamma1,gamma2,gamma3,omega")
    p.add_argument("--t-max", type=float, default=10.0)
    p.add_argument("--steps", type=int, default=200,
                   help="number of grid points including t = 0")
    p.add_argument("--p1-0", type=float, default=1.0)
    p.add_argument("--re-alpha-0", type=float, default=0.0)
    p.add_argument("--im-alpha-0", type=float, default=0.0)
    p.add_argument("--rel-tol", type=float, default=1e-10)
    p.add_argument("--abs-tol", type=float, default=1e-12)
    p.add_argument("--tol", type=float, default=None,
                   help=f"verdict tolerance (default {cptp.DEFAULT_TOL:g}, "
                        f"override with {TOL_ENV_VAR})")
    p.add_argument("--out", default="-", help="output path, - for stdout")
    p.add_argument("--config", help="JSON file with defaults for any option")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="phasecov", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, descr in (
        ("evolve", "population and coherence over a time grid (CSV)"),
        ("cp-check", "complete-positivity report over a time grid (JSON)"),
        ("rates", "decay rates over a time grid (CSV)"),
        ("scan", "summary per value of a swept parameter (CSV)"),
    ):
        p = sub.add_parser(name, help=descr)
        _add_model_args(p)
        if name == "cp-check":
            p.add_argument("--method", choices=("paper", "choi", "both"),
                           default="both")
        if name == "scan":
            p.add_argument("--param", required=True)
            p.add_argument("--values", required=True,
                           help="comma-separated parameter values")
    return parser


def _apply_config_file(parser, argv):
    probe = _Parser(add_help=False)
    probe.add_argument("--config")
    known, _ = probe.parse_known_args(argv)
    if not known.config:
        return argv
    try:
        with open(known.config) as fh:
            values = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot load config file: {exc}") from exc
    if not isinstance(values, dict):
        raise UsageError("config file must hold a JSON object")
    for action_parser in parser._subparsers._group_actions[0].choices.values():
        valid = {a.dest for a in action_parser._actions}
        action_parser.set_defaults(**{k: v for k, v in values.items() if k in valid})
    return argv


def _config_from_args(args) -> RunConfig:
    tol = args.tol if args.tol is not None else default_tolerance()
    cfg = RunConfig(
        model=args.model, R=args.R, N=args.N, alpha=args.alpha, s=args.s,
        omega_c=args.omega_c, T=args.T, kernel=args.kernel,
        g1=args.g1, g2=args.g2, g3=args.g3, w=args.w,
        rates_file=args.rates_file, t_max=args.t_max, steps=args.steps,
        p1_0=args.p1_0, re_alpha_0=args.re_alpha_0, im_alpha_0=args.im_alpha_0,
        rel_tol=args.rel_tol, abs_tol=args.abs_tol, tol=tol, out=args.out,
    )
    cfg.validate()
    return cfg


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _apply_config_file(parser, argv)
        args = parser.parse_args(argv)
        cfg = _config_from_args(args)
        if args.command == "evolve":
            return cmd_evolve(cfg)
        if args.command == "cp-check":
            return cmd_cp_check(cfg, args.method)
        if args.command == "rates":
            return cmd_rates(cfg)
        if args.command == "scan":
            try:
                values = [float(v) for v in args.values.split(",") if v.strip()]
            except ValueError as exc:
                raise UsageError(f"bad --values list: {exc}") from exc
            if not values:
                raise UsageError("--values must list at least one number")
            return cmd_scan(cfg, args.param, values)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ToleranceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IOError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
