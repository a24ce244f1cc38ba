"""Command-line front end.

    python -m aztec_efp efp --alpha 1/2 --r 3 --s 3
    python -m aztec_efp check --suite all
    python -m aztec_efp sigma --alpha 1/4 --sweep 0:1:0.01
    python -m aztec_efp sweep --alpha 1/4 --v 1/2 --r 8,16,24,32
    python -m aztec_efp density --alpha 1/4 --R 1.2 --points 200
    python -m aztec_efp transition --alpha 1/4

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error.  CSV goes to
stdout with ``#`` header comments; ``--json`` emits the full run report.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

import numpy as np

from . import asymptotics as asy
from . import matrix_model as mm
from .efp_exact import DomainError, EnumerationLimitError, ModelParams, efp
from .toda import toda_reconstruct, toda_residual_r, toda_residual_s
from .efp_exact import efp_poly

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


@dataclass
class Check:
    name: str
    status: str
    measured: float
    tolerance: float


@dataclass
class RunReport:
    command: str
    inputs: dict
    outputs: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    wall_time_ms: int = 0

    def add_check(self, name: str, measured: float, tolerance: float, ok: Optional[bool] = None):
        if ok is None:
            ok = measured <= tolerance
        self.checks.append(Check(name, "pass" if ok else "fail", measured, tolerance))
        return ok

    @property
    def passed(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def to_json(self) -> str:
        return json.dumps(_jsonable(asdict(self)), indent=2, sort_keys=True)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed rational {text!r}; use p/q") from None


def parse_real(text: str) -> float:
    return float(parse_rational(text))


def parse_int_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"malformed integer list {text!r}") from None


def threads() -> int:
    try:
        return max(1, int(os.environ.get("EFP_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn: Callable, items: Iterable) -> list:
    """Order-preserving map, parallel when EFP_THREADS > 1."""
    items = list(items)
    n = threads()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


def write_csv(out, header: dict, columns: list, rows: Iterable):
    for k, v in header.items():
        out.write(f"# {k}: {fmt(v)}\n")
    out.write(",".join(columns) + "\n")
    for row in rows:
        out.write(",".join(fmt(x) for x in row) + "\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_efp(args, out) -> RunReport:
    alpha = parse_rational(args.alpha)
    if not 0 <= alpha <= 1:
        raise UsageError("alpha must lie in [0, 1]")
    if args.s > args.r:
        raise UsageError(f"s={args.s} exceeds r={args.r}")
    rep = RunReport("efp", {"alpha": alpha, "r": args.r, "s": args.s, "method": args.method})
    try:
        res = efp(ModelParams(args.r, args.s, None if args.symbolic else alpha), args.method)
    except (DomainError, EnumerationLimitError) as exc:
        raise UsageError(str(exc)) from exc
    if args.symbolic:
        poly = res.as_polynomial
        rep.outputs["coefficients"] = [str(c) for c in poly.coefficients]
        value = poly(alpha)
    else:
        value = res.value_exact
    rep.outputs.update({"value": value, "decimal": float(value), "method": res.method})
    if not args.json:
        out.write(f"{value}\n")
        out.write(f"# decimal: {fmt(float(value))}\n# method: {res.method}\n")
        if args.symbolic:
            out.write("# coefficients: " + " ".join(rep.outputs["coefficients"]) + "\n")
    return rep


def _suite_toda(rep: RunReport, args):
    r_max = args.r_max
    bad = 0
    for r in range(2, r_max + 1):
        for s in range(1, r):
            for res in (toda_residual_s(r, s), toda_residual_r(r, s)):
                if not res.holds:
                    bad += 1
                    rep.add_check(f"toda_{res.direction}_r{r}_s{s}", res.residual.degree + 1, 0, False)
    rep.add_check(f"toda residuals zero for r<={r_max}", bad, 0)
    mismatched = sum(
        toda_reconstruct(r, r) != [efp_poly(r, s) for s in range(r + 1)]
        for r in range(1, min(r_max, 10) + 1)
    )
    rep.add_check(f"toda reconstruction matches hankel for r<={min(r_max, 10)}", mismatched, 0)


def _alphas(args) -> list:
    if args.alpha:
        return [parse_real(args.alpha)]
    return [0.25, 0.5, 0.75]


def _suite_ode(rep: RunReport, args):
    for a in _alphas(args):
        p = asy.sigma_profile(a)
        vs = np.linspace(p.v_c, 1, 102)[1:-1]
        worst = max(asy.ode_residual(a, float(v)) for v in vs)
        rep.add_check(f"ode residual alpha={fmt(a)}", worst, 1e-10)


def _suite_master_integral(rep: RunReport, args):
    rng = np.random.default_rng(args.seed)
    for branch in ("left", "right"):
        cases = mm.random_master_integral_cases(rng, 20, branch)
        worst = max(abs(l - r) for l, r in (mm.appendix_b_integral_check(*c) for c in cases))
        rep.add_check(f"master integral c,d {branch} of cut", worst, 1e-8)


def _scenario_solutions(args) -> list:
    sols = []
    for a in _alphas(args):
        _, R_c = asy.v_critical(a)
        sols += [mm.endpoints(a, 2 * R_c), mm.endpoints(a, 1 + 0.4 * (R_c - 1))]
    return sols


def _suite_density(rep: RunReport, args):
    for sol in _scenario_solutions(args):
        tag = f"alpha={fmt(sol.alpha)} R={fmt(sol.R)}"
        rep.add_check(f"normalization {tag}", abs(mm.normalization(sol) - 1), 1e-8)
        mus = np.linspace(0, sol.R, 1001)
        vals = [mm.density(sol, float(m)) for m in mus]
        rep.add_check(f"0<=rho<=1 {tag}", 0.0, 0.0, all(0 <= v <= 1 for v in vals))
        inner = np.linspace(sol.a, sol.b, 12)[1:-1]
        worst = max(abs(mm.density(sol, m) - mm.density_from_resolvent(sol, m)) for m in inner)
        rep.add_check(f"density vs resolvent jump {tag}", worst, 1e-8)


def _suite_moments(rep: RunReport, args):
    for sol in _scenario_solutions(args):
        tag = f"alpha={fmt(sol.alpha)} R={fmt(sol.R)}"
        e_f, e_q = mm.first_moment_check(sol)
        rep.add_check(f"first moment {tag}", abs(e_f - e_q), 1e-8)
        c = mm.laurent_coefficients(sol, 2)
        rep.add_check(f"resolvent 1/z coefficient {tag}", abs(c[1] - 1), 1e-5)
        rep.add_check(f"resolvent E/z^2 coefficient {tag}", abs(c[2] - sol.E), 1e-5)


SUITES = {
    "toda": _suite_toda,
    "ode": _suite_ode,
    "appendix-b": _suite_master_integral,
    "density": _suite_density,
    "moments": _suite_moments,
}


def cmd_check(args, out) -> RunReport:
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}")
    rep = RunReport("check", {"suite": args.suite, "r_max": args.r_max, "alpha": args.alpha})
    names = list(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        SUITES[name](rep, args)
    if not args.json:
        write_csv(out, {"suite": args.suite}, ["check", "status", "measured", "tolerance"],
                  ((c.name, c.status, float(c.measured), float(c.tolerance)) for c in rep.checks))
    return rep


def _sigma_row(p: asy.SigmaProfile, v: float):
    return (v, p.sigma(v), p.sigma_d1(v), p.sigma_d2(v), p.regime(v))


def cmd_sigma(args, out) -> RunReport:
    alpha = parse_real(args.alpha)
    if not 0 < alpha < 1:
        raise UsageError("alpha must lie in (0, 1)")
    p = asy.sigma_profile(alpha)
    v_c, R_c = asy.v_critical(alpha)
    rep = RunReport("sigma", {"alpha": alpha, "v": args.v, "sweep": args.sweep})
    rep.outputs.update({"v_c": v_c, "R_c": R_c})
    if args.sweep:
        try:
            start, stop, step = (float(x) for x in args.sweep.split(":"))
        except ValueError:
            raise UsageError("sweep must be start:stop:step") from None
        n = int(round((stop - start) / step)) + 1
        vs = np.linspace(start, stop, n)
        if vs.min() < 0 or vs.max() > 1:
            raise UsageError("sweep range must lie in [0, 1]")
        rows = [_sigma_row(p, float(v)) for v in vs]
        rep.outputs["rows"] = rows
        sig = [r[1] for r in rows]
        rep.add_check("sigma nondecreasing", 0.0, 0.0, all(b >= a for a, b in zip(sig, sig[1:])))
        if not args.json:
            write_csv(out, {"alpha": alpha, "v_c": v_c, "R_c": R_c},
                      ["v", "sigma", "sigma_d1", "sigma_d2", "regime"], rows)
        return rep
    v = parse_real(args.v if args.v is not None else "1")
    if not 0 <= v <= 1:
        raise UsageError("v must lie in [0, 1]")
    d3 = p.sigma_d3(v, "+")
    F = asy.free_energy(asy.FreeEnergyParams(alpha, v, args.rho))
    rep.outputs.update({
        "v": v, "sigma": p.sigma(v), "sigma_d1": p.sigma_d1(v), "sigma_d2": p.sigma_d2(v),
        "sigma_d3_plus": d3, "regime": p.regime(v), "free_energy": F,
    })
    if not args.json:
        for k in ("v_c", "R_c", "v", "sigma", "sigma_d1", "sigma_d2", "sigma_d3_plus", "regime", "free_energy"):
            out.write(f"{k},{fmt(rep.outputs[k])}\n")
    return rep


def cmd_transition(args, out) -> RunReport:
    alpha = parse_real(args.alpha)
    if not 0 < alpha < 1:
        raise UsageError("alpha must lie in (0, 1)")
    p = asy.sigma_profile(alpha)
    v_c, R_c = asy.v_critical(alpha)
    jump = p.third_derivative_jump()
    ell = asy.arctic_ellipse(alpha)
    rep = RunReport("transition", {"alpha": alpha})
    rep.outputs.update({
        "v_c": v_c, "R_c": R_c, "sigma": p.sigma(v_c), "sigma_d1": p.sigma_d1(v_c),
        "sigma_d2": p.sigma_d2(v_c), "sigma_d3_minus": p.sigma_d3(v_c, "-"),
        "sigma_d3_plus": p.sigma_d3(v_c, "+"), "sigma_d3_jump": jump,
        "free_energy_d3_jump": jump / (1 + 2 * v_c),
        "corner_fraction": ell.corner_fraction, "ellipse_contact": ell.contact_value,
    })
    rep.add_check("corner touches arctic ellipse", abs(ell.corner_residual), 1e-12)
    if not args.json:
        for k, v in rep.outputs.items():
            out.write(f"{k},{fmt(v)}\n")
    return rep


def _estimate(job):
    alpha, v, r = job
    return asy.finite_size_estimates(alpha, v, [r])[0]


def cmd_sweep(args, out) -> RunReport:
    alpha, v = parse_rational(args.alpha), parse_rational(args.v)
    if not 0 < alpha < 1 or not 0 <= v <= 1:
        raise UsageError("need alpha in (0, 1) and v in [0, 1]")
    rs = parse_int_list(args.r)
    bad = [r for r in rs if (v * r).denominator != 1]
    if bad:
        admissible = [r for r in range(1, max(rs) + 1) if (v * r).denominator == 1]
        raise UsageError(f"v*r not integral for r={bad}; admissible r: {admissible}")
    rows = pmap(_estimate, [(alpha, v, r) for r in rs])
    sig = asy.sigma_profile(float(alpha)).sigma(float(v))
    limit, err, p = asy.richardson([r[0] for r in rows], [r[3] for r in rows])
    table = [(r, s, float(f), est, abs(est - sig)) for r, s, f, est in rows]
    rep = RunReport("sweep", {"alpha": alpha, "v": v, "r": rs})
    rep.outputs.update({"rows": table, "sigma": sig, "limit": limit, "limit_error": err,
                        "fitted_exponent": p})
    errs = [t[4] for t in table]
    rep.add_check("error column nonincreasing", 0.0, 0.0, all(b <= a for a, b in zip(errs, errs[1:])))
    if not args.json:
        write_csv(out, {"alpha": alpha, "v": v, "sigma": sig},
                  ["r", "s", "f", "estimate", "abs_error"], table)
        out.write(f"# extrapolated: {fmt(limit)} +- {fmt(err)} (exponent {fmt(p)})\n")
    return rep


def cmd_density(args, out) -> RunReport:
    alpha, R = parse_real(args.alpha), parse_real(args.R)
    if not 0 < alpha < 1:
        raise UsageError("alpha must lie in (0, 1)")
    if R < 1:
        raise UsageError("R must be >= 1")
    if args.points < 2:
        raise UsageError("need at least 2 points")
    sol = mm.endpoints(alpha, R)
    samples = mm.sample_density(sol, args.points)
    rep = RunReport("density", {"alpha": alpha, "R": R, "points": args.points})
    rep.outputs.update({"scenario": sol.scenario, "a": sol.a, "b": sol.b, "E": sol.E,
                        "samples": samples})
    rep.add_check("0<=rho<=1", 0.0, 0.0, all(0 <= r <= 1 for _, r in samples))
    if not args.json:
        write_csv(out, {"scenario": sol.scenario, "alpha": alpha, "R": R, "a": sol.a, "b": sol.b},
                  ["mu", "rho"], samples)
    return rep


COMMANDS = {
    "efp": cmd_efp, "check": cmd_check, "sigma": cmd_sigma, "transition": cmd_transition,
    "sweep": cmd_sweep, "density": cmd_density,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="aztec-efp", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", help="emit the run report as JSON")
        return p

    p = add("efp", "exact emptiness formation probability")
    p.add_argument("--alpha", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--method", choices=["hankel", "oracle", "special"], default="hankel")
    p.add_argument("--symbolic", action="store_true", help="also print the polynomial in alpha")

    p = add("check", "run an identity suite")
    p.add_argument("--suite", default="all")
    p.add_argument("--r-max", type=int, default=8)
    p.add_argument("--alpha", default=None)
    p.add_argument("--seed", type=int, default=20130)

    p = add("sigma", "rate function sigma(v) and free energy")
    p.add_argument("--alpha", required=True)
    p.add_argument("--v", default=None)
    p.add_argument("--sweep", default=None, help="start:stop:step")
    p.add_argument("--rho", type=float, default=2.0)

    p = add("transition", "sigma and its jump at v = v_c")
    p.add_argument("--alpha", required=True)

    p = add("sweep", "finite-size estimates -log f / r^2")
    p.add_argument("--alpha", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--r", required=True, help="comma-separated r values")

    p = add("density", "saddle-point eigenvalue density")
    p.add_argument("--alpha", required=True)
    p.add_argument("--R", required=True)
    p.add_argument("--points", type=int, default=200)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    t0 = time.perf_counter()
    try:
        rep = COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rep.wall_time_ms = int((time.perf_counter() - t0) * 1000)
    if args.json:
        out.write(rep.to_json() + "\n")
    for c in rep.checks:
        if c.status == "fail":
            print(f"FAIL {c.name}: measured {fmt(c.measured)} > tolerance {fmt(c.tolerance)}",
                  file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL
