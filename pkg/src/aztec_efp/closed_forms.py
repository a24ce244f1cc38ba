"""Factorised Hankel determinants at r = infinity and alpha = 1, C_{r,s}, psi."""

from __future__ import annotations

import math
from fractions import Fraction

from .efp_exact import DomainError
from .exact_algebra import as_fraction

fact = math.factorial


def meixner_determinant(s: int, alpha) -> Fraction:
    """prod_{j<s} (j!)^2 alpha^j / (1-alpha)^{2j+1}: the r -> infinity moment determinant."""
    a = as_fraction(alpha)
    if not 0 < a < 1:
        raise DomainError(f"alpha={a} outside (0, 1)")
    if s < 1:
        raise DomainError("s must be positive")
    out = Fraction(1)
    for j in range(s):
        out *= fact(j) ** 2 * a**j / (1 - a) ** (2 * j + 1)
    return out


def hahn_determinant(s: int, r: int) -> Fraction:
    """prod_{j<s} (j!)^4 (j+r)! / ((2j)! (r-j-1)! (2j+1)!): the alpha = 1 determinant."""
    if not 1 <= s <= r:
        raise DomainError(f"need 1 <= s <= r, got s={s}, r={r}")
    out = Fraction(1)
    for j in range(s):
        out *= Fraction(fact(j) ** 4 * fact(j + r), fact(2 * j) * fact(r - j - 1) * fact(2 * j + 1))
    return out


def c_rs(r: int, s: int) -> Fraction:
    """Coefficient of (1-alpha)^{s^2} in f_{r,s} as alpha -> 1."""
    if not 1 <= s <= r:
        raise DomainError(f"need 1 <= s <= r, got s={s}, r={r}")
    out = Fraction(1)
    for j in range(s):
        out *= Fraction(fact(j) ** 2 * fact(j + r), fact(2 * j) * fact(r - j - 1) * fact(2 * j + 1))
    return out


def _xlogx(x: float) -> float:
    return 0.0 if x == 0 else x * math.log(x)


def psi(v: float) -> float:
    """v^2 log 4v - (1-v)^2/2 log(1-v) - (1+v)^2/2 log(1+v), continuous at 0 and 1."""
    if not 0 <= v <= 1:
        raise DomainError(f"v={v} outside [0, 1]")
    first = 0.0 if v == 0 else v * v * math.log(4 * v)
    return first - 0.5 * _xlogx(1 - v) * (1 - v) - 0.5 * (1 + v) ** 2 * math.log1p(v)


def log_c_rs_rate(r: int, s: int) -> float:
    """-log C_{r,s} / r^2, evaluated through lgamma to avoid huge rationals."""
    lg = math.lgamma
    total = 0.0
    for j in range(s):
        total += 2 * lg(j + 1) + lg(j + r + 1) - lg(2 * j + 1) - lg(r - j) - lg(2 * j + 2)
    return -total / r**2
