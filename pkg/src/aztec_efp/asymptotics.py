"""Thermodynamic-limit quantities: sigma(v), v_c, F(v), Phi(R), extrapolation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from .closed_forms import psi
from .efp_exact import DomainError, ModelParams, efp_hankel
from .exact_algebra import as_fraction

FROZEN, CRITICAL, DISORDERED = "frozen", "critical_point", "disordered"


def _check_alpha(alpha: float):
    if not 0 < alpha < 1:
        raise DomainError(f"alpha={alpha} outside (0, 1)")


def v_critical(alpha: float) -> tuple:
    """(v_c, R_c) with v_c = (1 - sqrt a)/(1 + sqrt a) and R_c = 1/v_c."""
    _check_alpha(alpha)
    q = math.sqrt(alpha)
    return (1 - q) / (1 + q), (1 + q) / (1 - q)


@dataclass(frozen=True)
class SigmaProfile:
    """sigma(v) = -lim log f_{r,s} / r^2 at s/r = v, with analytic derivatives.

    On [0, v_c] sigma vanishes; on [v_c, 1]
        sigma = v^2 log(v/u) - (1-v)^2/2 log((1-v)/(1-u)) - (1+v)^2/2 log((1+v)/(1+u))
    with u = v_c.  The point v = v_c itself belongs to the frozen branch.
    """

    alpha: float
    v_c: float

    def _check(self, v):
        if not 0 <= v <= 1:
            raise DomainError(f"v={v} outside [0, 1]")

    def regime(self, v: float) -> str:
        self._check(v)
        if v == self.v_c:
            return CRITICAL
        return FROZEN if v < self.v_c else DISORDERED

    def sigma(self, v: float) -> float:
        self._check(v)
        if v <= self.v_c:
            return 0.0
        u = self.v_c
        a = v * v * math.log(v / u)
        b = 0.0 if v == 1 else 0.5 * (1 - v) ** 2 * math.log((1 - v) / (1 - u))
        c = 0.5 * (1 + v) ** 2 * math.log((1 + v) / (1 + u))
        return a - b - c

    def sigma_d1(self, v: float) -> float:
        self._check(v)
        if v <= self.v_c:
            return 0.0
        u = self.v_c
        b = 0.0 if v == 1 else (1 - v) * math.log((1 - v) / (1 - u))
        return 2 * v * math.log(v / u) + b - (1 + v) * math.log((1 + v) / (1 + u))

    def sigma_d2(self, v: float) -> float:
        """Diverges to +inf at v = 1."""
        self._check(v)
        if v <= self.v_c:
            return 0.0
        if v == 1:
            return math.inf
        u = self.v_c
        return 2 * math.log(v / u) - math.log((1 - v) / (1 - u)) - math.log((1 + v) / (1 + u))

    def sigma_d3(self, v: float, side: str = "+") -> float:
        """Third derivative; at v_c the side ('+' or '-') selects the branch."""
        self._check(v)
        if v < self.v_c or (v == self.v_c and side == "-"):
            return 0.0
        if v == 1:
            return math.inf
        return 2 / v + 1 / (1 - v) - 1 / (1 + v)

    def third_derivative_jump(self) -> float:
        return self.sigma_d3(self.v_c, "+") - self.sigma_d3(self.v_c, "-")


def sigma_profile(alpha: float) -> SigmaProfile:
    return SigmaProfile(alpha, v_critical(alpha)[0])


def ode_lhs(v: float, s0: float, s1: float, s2: float) -> float:
    e = -2 * v * s1 + 2 * s0
    return v * v * math.exp((v * v - 1) * s2 + e) + (1 - v * v) * math.exp(v * v * s2 + e)


def ode_residual(alpha: float, v: float) -> float:
    """|LHS - 1| of the second-order ODE in v obeyed by sigma."""
    p = sigma_profile(alpha)
    return abs(ode_lhs(v, p.sigma(v), p.sigma_d1(v), p.sigma_d2(v)) - 1)


@dataclass(frozen=True)
class FreeEnergyParams:
    alpha: float
    v: float
    rho: float = 2.0


def free_energy(p: FreeEnergyParams) -> float:
    """Free energy per site of the cut-corner lattice (per domino when rho = 2)."""
    if not 0 <= p.v <= 1:
        raise DomainError(f"v={p.v} outside [0, 1]")
    sig = sigma_profile(p.alpha).sigma(p.v)
    w = 1 + 2 * p.v
    return -0.5 * math.log(p.rho) + p.v**2 / w * 0.5 * math.log(1 - p.alpha) + sig / w


def phi_scenario_one(alpha: float) -> float:
    return math.log(math.sqrt(alpha) / (1 - alpha))


def phi_scenario_two(alpha: float, R: float) -> float:
    q = math.sqrt(alpha)
    return (R * R - 1) * math.log((1 + q) / (2 * alpha**0.25)) + R * math.log(q) - R * R * psi(1 / R)


def phi_of_R(alpha: float, R: float) -> float:
    """Large-s rate s^{-2} log I_{r,s} of the discrete matrix integral at R = r/s."""
    _check_alpha(alpha)
    if R < 1:
        raise DomainError("no admissible eigenvalue configuration for R < 1")
    if R >= v_critical(alpha)[1]:
        return phi_scenario_one(alpha)
    return phi_scenario_two(alpha, R)


def sigma_from_phi(alpha: float, v: float) -> float:
    return -v * v * math.log((1 - alpha) / math.sqrt(alpha)) - v * v * phi_of_R(alpha, 1 / v)


# ---------------------------------------------------------------------------
# finite-size data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtrapolationTable:
    alpha: Fraction
    v: Fraction
    rows: list  # (r, s, exact f_{r,s}, estimate)
    limit: float
    error: float
    exponent: float


def finite_size_estimates(alpha, v, r_list: Sequence[int]) -> list:
    """(r, s, f_{r,s}, -log f_{r,s} / r^2) with f exact."""
    a, v = as_fraction(alpha), as_fraction(v)
    rows = []
    for r in r_list:
        s = v * r
        if s.denominator != 1:
            raise DomainError(f"s = v r = {s} is not an integer for r={r}")
        s = int(s)
        f = efp_hankel(ModelParams(r, s, a)).value_exact
        est = -_log_fraction(f) / r**2
        rows.append((r, s, f, est))
    return rows


def _log_fraction(q: Fraction) -> float:
    # float(q) underflows for the tiny f at large r
    return math.log(q.numerator) - math.log(q.denominator)


def _fit_exponent(rs, es) -> float:
    """Exponent p in e_r = L + c r^-p through three points."""
    (r1, r2, r3), (e1, e2, e3) = rs, es
    d12, d23 = e1 - e2, e2 - e3
    if d23 == 0 or d12 / d23 <= 0:
        return math.nan

    def g(p):
        return (r1**-p - r2**-p) / (r2**-p - r3**-p) - d12 / d23

    try:
        return brentq(g, 1e-3, 20.0)
    except ValueError:
        return math.nan


def richardson(rs: Sequence[int], es: Sequence[float]) -> tuple:
    """(limit, error estimate, fitted exponent) from the last points.

    Fits e_r = L + c r^-p on each consecutive triple; the limit is the last
    triple's L and the error is its change from the previous triple.
    """
    if len(rs) < 3:
        return es[-1], math.inf, math.nan
    if all(e == es[0] for e in es):
        return es[0], 0.0, math.nan
    limits, exps = [], []
    for i in range(len(rs) - 2):
        r3, e3 = rs[i + 2], es[i + 2]
        p = _fit_exponent(rs[i:i + 3], es[i:i + 3])
        if math.isnan(p):
            limits.append(e3)
        else:
            c = (es[i + 1] - e3) / (rs[i + 1] ** -p - r3**-p)
            limits.append(e3 - c * r3**-p)
        exps.append(p)
    err = abs(limits[-1] - limits[-2]) if len(limits) > 1 else abs(limits[-1] - es[-1])
    return limits[-1], err, exps[-1]


def finite_size_extrapolate(alpha, v, r_list: Sequence[int]) -> ExtrapolationTable:
    rows = finite_size_estimates(alpha, v, r_list)
    rs = [row[0] for row in rows]
    es = [row[3] for row in rows]
    limit, err, p = richardson(rs, es)
    return ExtrapolationTable(as_fraction(alpha), as_fraction(v), rows, limit, err, p)


# ---------------------------------------------------------------------------
# arctic ellipse
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ArcticEllipse:
    """(1-x-y)^2/alpha + (x-y)^2/(1-alpha) = 1 in unit-square coordinates.

    ``coefficients`` are (A, B, C, D, E, F) of A x^2 + B xy + C y^2 + D x + E y + F = 0.
    """

    alpha: float
    coefficients: tuple
    corner_fraction: float  # v_c / (1 + v_c)
    contact_value: float  # (1 - sqrt alpha)/2
    corner_residual: float  # ellipse equation at the cut corner, minus 1

    def value(self, x: float, y: float) -> float:
        return (1 - x - y) ** 2 / self.alpha + (x - y) ** 2 / (1 - self.alpha)


def arctic_ellipse(alpha: float) -> ArcticEllipse:
    _check_alpha(alpha)
    ia, ib = 1 / alpha, 1 / (1 - alpha)
    coeffs = (ia + ib, 2 * ia - 2 * ib, ia + ib, -2 * ia, -2 * ia, ia - 1)
    vc = v_critical(alpha)[0]
    t = vc / (1 + vc)
    e = (1 - 2 * t) ** 2 / alpha - 1
    return ArcticEllipse(alpha, coeffs, t, (1 - math.sqrt(alpha)) / 2, e)


def sample_sigma(alpha: float, vs: Sequence[float]) -> np.ndarray:
    p = sigma_profile(alpha)
    return np.array([p.sigma(v) for v in vs])
