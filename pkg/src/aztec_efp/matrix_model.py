"""Saddle point of the discrete log-gas with linear potential and hard walls.

Rescaled eigenvalues live on [0, R] with potential V(mu) = -mu log(alpha) and
density bounded by 1.  Two regimes occur:

* ``one_saturated`` (R >= R_c): rho = 1 on [0, a], unsaturated on [a, b],
  vacant on [b, R];
* ``two_saturated`` (1 <= R < R_c): rho = 1 on [0, a] and on [b, R].

Square roots are principal branches of the individual factors sqrt(z - a),
sqrt(z - b), sqrt(z), so the resolvents are analytic off [0, max(b, R)]
and behave as 1/z at infinity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import integrate

from .asymptotics import phi_scenario_one, phi_scenario_two, v_critical
from .closed_forms import psi
from .efp_exact import DomainError

ONE_SATURATED, TWO_SATURATED = "one_saturated", "two_saturated"


class CutEvaluationError(ValueError):
    pass


class UnsupportedCaseError(ValueError):
    """c, d straddle the cut: the master integral has no closed form here."""


@dataclass(frozen=True)
class SaddleSolution:
    alpha: float
    R: float
    scenario: str
    a: float
    b: float

    @property
    def E(self) -> float:
        """First moment of the density from the z^-2 term of the resolvent."""
        base = (self.a + self.b) / 4
        if self.scenario == ONE_SATURATED:
            return base
        return base + self.R / 2 * math.sqrt(max((self.R - self.a) * (self.R - self.b), 0.0))

    @property
    def support(self) -> dict:
        right = "vacant" if self.scenario == ONE_SATURATED else "saturated"
        return {
            "saturated": [(0.0, self.a)] + ([(self.b, self.R)] if right == "saturated" else []),
            "unsaturated": [(self.a, self.b)],
            "vacant": [(self.b, self.R)] if right == "vacant" else [],
        }


def endpoints(alpha: float, R: float) -> SaddleSolution:
    if not 0 < alpha < 1:
        raise DomainError(f"alpha={alpha} outside (0, 1)")
    if R < 1:
        raise DomainError("no admissible eigenvalue configuration for R < 1")
    q = math.sqrt(alpha)
    _, R_c = v_critical(alpha)
    if R >= R_c:
        return SaddleSolution(alpha, R, ONE_SATURATED, (1 - q) / (1 + q), (1 + q) / (1 - q))
    p, m = math.sqrt(R + 1), math.sqrt((R - 1) * q)
    d = 2 * (1 + q)
    return SaddleSolution(alpha, R, TWO_SATURATED, (p - m) ** 2 / d, (p + m) ** 2 / d)


def endpoints_scenario_two(alpha: float, R: float) -> tuple:
    """Two-saturated endpoint formulas evaluated regardless of regime."""
    q = math.sqrt(alpha)
    p, m = math.sqrt(R + 1), math.sqrt((R - 1) * q)
    d = 2 * (1 + q)
    return (p - m) ** 2 / d, (p + m) ** 2 / d


def _on_cut(sol: SaddleSolution, z: complex) -> bool:
    return z.imag == 0 and sol.a <= z.real <= sol.b


def resolvent(sol: SaddleSolution, z: complex) -> complex:
    z = complex(z)
    if _on_cut(sol, z):
        raise CutEvaluationError(f"z={z} lies on the cut [{sol.a}, {sol.b}]; use density()")
    a, b, R = sol.a, sol.b, sol.R
    sq = cmath.sqrt
    za, zb = sq(z - a), sq(z - b)
    num = math.sqrt(a) * zb + math.sqrt(b) * za
    w = -0.5 * math.log(sol.alpha)
    if sol.scenario == ONE_SATURATED:
        return w - 2 * cmath.log(num / (math.sqrt(b - a) * sq(z)))
    den = math.sqrt(R - a) * zb + math.sqrt(R - b) * za
    return w - cmath.log((z - R) / z) - 2 * cmath.log(num / den)


def saturation_logs(sol: SaddleSolution, z: complex) -> complex:
    """Logarithmic part of W carrying the saturated intervals."""
    z = complex(z)
    if sol.scenario == ONE_SATURATED:
        return cmath.log(z / (z - sol.a))
    return cmath.log(z * (z - sol.b) / ((z - sol.a) * (z - sol.R)))


def auxiliary_h(sol: SaddleSolution, z: complex) -> complex:
    """H(z) = W(z) minus the saturation logarithms; its only cut is [a, b]."""
    return resolvent(sol, z) - saturation_logs(sol, z)


def h_jump_target(sol: SaddleSolution, mu: float) -> float:
    """Right-hand side of H(mu + i0) + H(mu - i0) on (a, b)."""
    q = math.sqrt(sol.alpha)
    if sol.scenario == ONE_SATURATED:
        return -2 * math.log(q * mu / (mu - sol.a))
    return -2 * math.log(q * mu * (mu - sol.b) / ((mu - sol.a) * (mu - sol.R)))


def laurent_coefficients(sol: SaddleSolution, n_max: int = 3, radius: float | None = None,
                         points: int = 512) -> np.ndarray:
    """c_0..c_{n_max} of W(z) = sum c_k z^-k by the trapezoid rule on a circle."""
    if radius is None:
        radius = 2.0 * max(sol.b, sol.R) + 1.0
    theta = 2 * np.pi * (np.arange(points) + 0.5) / points
    zs = radius * np.exp(1j * theta)
    ws = np.array([resolvent(sol, z) for z in zs])
    return np.array([np.mean(ws * zs**k) for k in range(n_max + 1)])


def density(sol: SaddleSolution, mu: float) -> float:
    if not 0 <= mu <= sol.R:
        raise DomainError(f"mu={mu} outside [0, {sol.R}]")
    a, b, R = sol.a, sol.b, sol.R
    if mu <= a:
        return 1.0
    if mu >= b:
        return 0.0 if sol.scenario == ONE_SATURATED else 1.0
    first = 2 / math.pi * math.atan(math.sqrt(a * (b - mu)) / math.sqrt(b * (mu - a)))
    if sol.scenario == ONE_SATURATED:
        return first
    if R == b:
        return first
    second = 2 / math.pi * math.atan(math.sqrt((R - a) * (b - mu)) / math.sqrt((R - b) * (mu - a)))
    return first - second + 1


def density_from_resolvent(sol: SaddleSolution, mu: float, eps: float = 1e-7) -> float:
    """rho = -(1/2 pi i) [W(mu + i0) - W(mu - i0)], Richardson-refined in eps."""

    def jump(e):
        return resolvent(sol, complex(mu, e)) - resolvent(sol, complex(mu, -e))

    d1, d2 = jump(eps), jump(eps / 2)
    d = 2 * d2 - d1
    return (-d / (2j * math.pi)).real


def resolvent_real_part_on_cut(sol: SaddleSolution, mu: float, eps: float = 1e-7) -> float:
    w1 = resolvent(sol, complex(mu, eps))
    w2 = resolvent(sol, complex(mu, eps / 2))
    return (2 * w2 - w1).real


def sample_density(sol: SaddleSolution, points: int) -> list:
    mus = np.linspace(0.0, sol.R, points)
    return [(float(m), density(sol, float(m))) for m in mus]


def _cut_integral(sol: SaddleSolution, g) -> float:
    """int_a^b g(mu) dmu with mu = (a+b)/2 - (b-a)/2 cos(theta)."""
    a, b = sol.a, sol.b
    c, h = (a + b) / 2, (b - a) / 2
    val, _ = integrate.quad(lambda t: g(c - h * math.cos(t)) * h * math.sin(t), 0, math.pi,
                            epsabs=1e-14, epsrel=1e-13, limit=200)
    return val


def normalization(sol: SaddleSolution) -> float:
    """Total mass including saturated intervals."""
    mass = sol.a + _cut_integral(sol, lambda m: density(sol, m))
    if sol.scenario == TWO_SATURATED:
        mass += sol.R - sol.b
    return mass


def first_moment_check(sol: SaddleSolution) -> tuple:
    """(closed-form E, quadrature of mu rho(mu) over [0, R])."""
    q = sol.a**2 / 2 + _cut_integral(sol, lambda m: m * density(sol, m))
    if sol.scenario == TWO_SATURATED:
        q += (sol.R**2 - sol.b**2) / 2
    return sol.E, q


# ---------------------------------------------------------------------------
# master integral
# ---------------------------------------------------------------------------

def _sqrt_pair(z: complex, a: float, b: float):
    return cmath.sqrt(z - a), cmath.sqrt(z - b)


def master_integral_closed_form(a: float, b: float, c: float, d: float, z: complex) -> complex:
    za, zb = _sqrt_pair(complex(z), a, b)
    pref = 2 * math.pi / (za * zb)
    sq = cmath.sqrt
    if c <= a and d <= a:
        num = sq(a - c) * zb + sq(b - c) * za
        den = sq(a - d) * zb + sq(b - d) * za
    elif c >= b and d >= b:
        num = sq(c - a) * zb + sq(c - b) * za
        den = sq(d - a) * zb + sq(d - b) * za
    else:
        raise UnsupportedCaseError("c and d must both lie left of a or both right of b")
    return pref * cmath.log(num / den)


def master_integral_quadrature(a: float, b: float, c: float, d: float, z: float) -> float:
    """int_a^b log((u-c)/(u-d)) / ((z-u) sqrt((u-a)(b-u))) du for real z off [a, b].

    With u = (a+b)/2 + (b-a)/2 cos(theta) the weight becomes d(theta).
    """
    if not ((c <= a and d <= a) or (c >= b and d >= b)):
        raise UnsupportedCaseError("c and d must both lie left of a or both right of b")
    if a <= z <= b:
        raise ValueError("z must lie off [a, b]")
    mid, half = (a + b) / 2, (b - a) / 2

    def gap(t, x):
        # u - x without cancellation when x is an endpoint
        if x == a:
            return 2 * half * math.cos(t / 2) ** 2
        if x == b:
            return -2 * half * math.sin(t / 2) ** 2
        return (mid - x) + half * math.cos(t)

    def f(t):
        return math.log(abs(gap(t, c))) - math.log(abs(gap(t, d)))

    val, _ = integrate.quad(lambda t: f(t) / (z - (mid + half * math.cos(t))), 0, math.pi,
                            epsabs=1e-13, epsrel=1e-12, limit=400)
    return val


def appendix_b_integral_check(a: float, b: float, c: float, d: float, z: float) -> tuple:
    lhs = master_integral_quadrature(a, b, c, d, z)
    rhs = master_integral_closed_form(a, b, c, d, z)
    return lhs, rhs.real


def resolvent_from_integral(sol: SaddleSolution, z: float) -> complex:
    """W(z) rebuilt from the Cauchy-type integral of the saddle-point data.

    H solves H(+) + H(-) = U_H on (a, b); the constant part of U_H integrates
    in closed form and the logarithmic parts go through the master integral.
    """
    a, b, R = sol.a, sol.b, sol.R
    z = complex(z)
    za, zb = _sqrt_pair(z, a, b)
    root = za * zb
    q = math.sqrt(sol.alpha)

    def quad(c, d):
        return master_integral_quadrature(a, b, c, d, z.real)

    # U_H = -2 log sqrt(alpha) - 2 log((u - 0)/(u - a)) [- 2 log((u - b)/(u - R))]
    total = -2 * math.log(q) * math.pi / root - 2 * quad(0.0, a)
    if sol.scenario == TWO_SATURATED:
        total += -2 * quad(b, R)
    h = root / (2 * math.pi) * total
    return saturation_logs(sol, z) + h


# ---------------------------------------------------------------------------
# Phi from the first moment
# ---------------------------------------------------------------------------

def _moment(alpha: float, R: float) -> float:
    return endpoints(alpha, R).E


def phi_from_moment(alpha_grid: Sequence[float], R: float, alpha_floor: float = 1e-12,
                    anchor: str = "auto") -> np.ndarray:
    """Phi(R) on a grid of alpha by integrating alpha dPhi/dalpha = E(alpha).

    Points in the one-saturated regime are anchored at alpha -> 0, where
    sigma -> 0 fixes Phi ~ log(sqrt(alpha)/(1-alpha)); points in the
    two-saturated regime are anchored at alpha -> 1, where
    Phi -> -R^2 psi(1/R).  ``anchor="zero"`` or ``"one"`` forces a single
    anchor for every point, integrating straight through the regime change.
    """
    if anchor not in ("auto", "zero", "one"):
        raise ValueError(f"unknown anchor {anchor!r}")
    grid = np.asarray(alpha_grid, dtype=float)
    if np.any(grid <= 0) or np.any(grid >= 1):
        raise DomainError("alpha grid must lie inside (0, 1)")
    if R < 1:
        raise DomainError("R must be >= 1")
    alpha_star = ((R - 1) / (R + 1)) ** 2  # R = R_c(alpha_star)
    out = np.empty_like(grid)
    for i, al in enumerate(grid):
        use_zero = al <= alpha_star if anchor == "auto" else anchor == "zero"
        if use_zero:
            lo = min(alpha_floor, al)
            base = math.log(math.sqrt(lo) / (1 - lo))
            kink = [math.log(alpha_star)] if lo < alpha_star < al else None
            inc, _ = integrate.quad(lambda t: _moment(math.exp(t), R), math.log(lo), math.log(al),
                                    epsabs=1e-13, epsrel=1e-12, limit=200, points=kink)
            out[i] = base + inc
        else:
            base = -R * R * psi(1 / R)
            kink = [math.log(alpha_star)] if al < alpha_star else None
            inc, _ = integrate.quad(lambda t: _moment(math.exp(t), R), math.log(al), 0.0,
                                    epsabs=1e-13, epsrel=1e-12, limit=200, points=kink)
            out[i] = base - inc
    return out


def phi_closed_form(alpha: float, R: float) -> float:
    if R >= v_critical(alpha)[1]:
        return phi_scenario_one(alpha)
    return phi_scenario_two(alpha, R)


def random_master_integral_cases(rng: np.random.Generator, n: int, branch: str) -> list:
    """Random admissible (a, b, c, d, z) with c, d left of a ("left") or right of b ("right")."""
    cases = []
    for _ in range(n):
        a = rng.uniform(0.1, 2.0)
        b = a + rng.uniform(0.2, 3.0)
        if branch == "left":
            c, d = a - rng.uniform(0.05, 2.0), a - rng.uniform(0.05, 2.0)
        elif branch == "right":
            c, d = b + rng.uniform(0.05, 2.0), b + rng.uniform(0.05, 2.0)
        else:
            raise ValueError(f"unknown branch {branch!r}")
        if rng.random() < 0.5:
            z = b + rng.uniform(0.1, 3.0)
        else:
            z = a - rng.uniform(0.1, 3.0)
        cases.append((a, b, c, d, z))
    return cases
