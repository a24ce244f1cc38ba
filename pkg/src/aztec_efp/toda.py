"""Toda-chain identities for f_{r,s} as exact polynomial identities.

With D = alpha d/dalpha, both chain equations

    D^2 log f = c^2 alpha / (1-alpha)^2 * (f_+ f_- / f^2 - 1)

(c = s for shifts in s, c = r for shifts in r) are multiplied through by
f^2 (1-alpha)^2, giving the residual

    (f D^2 f - (D f)^2) (1-alpha)^2 - c^2 alpha (f_+ f_- - f^2)

which vanishes identically iff the equation holds.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .efp_exact import DomainError, efp_poly
from .exact_algebra import (
    ALPHA,
    AlphaPoly,
    InexactDivisionError,
    alpha_derivative_operator as D,
    one_minus_alpha_pow,
)


class IdentityViolation(ArithmeticError):
    pass


@dataclass(frozen=True)
class TodaResidual:
    direction: str  # "shift_s" or "shift_r"
    r: int
    s: int
    residual: AlphaPoly

    @property
    def holds(self) -> bool:
        return self.residual.is_zero()


@lru_cache(maxsize=None)
def _f(r: int, s: int) -> AlphaPoly:
    return efp_poly(r, s)


def log_second_derivative_numerator(f: AlphaPoly) -> AlphaPoly:
    """f D^2 f - (D f)^2, i.e. f^2 D^2 log f."""
    df = D(f)
    return f * D(df) - df * df


def cleared_residual(f: AlphaPoly, f_plus: AlphaPoly, f_minus: AlphaPoly, c: int) -> AlphaPoly:
    lhs = log_second_derivative_numerator(f) * one_minus_alpha_pow(2)
    rhs = ALPHA * (c * c) * (f_plus * f_minus - f * f)
    return lhs - rhs


def toda_residual_s(r: int, s: int) -> TodaResidual:
    if not 1 <= s <= r - 1:
        raise DomainError(f"s-shift identity needs 1 <= s <= r-1, got r={r}, s={s}")
    res = cleared_residual(_f(r, s), _f(r, s + 1), _f(r, s - 1), s)
    return TodaResidual("shift_s", r, s, res)


def toda_residual_r(r: int, s: int, allow_boundary: bool = False) -> TodaResidual:
    """r-shift residual.  ``allow_boundary`` admits s = r, where f_{r-1,s} = 0."""
    upper = r if allow_boundary else r - 1
    if not (1 <= s <= upper and r >= 2):
        raise DomainError(f"r-shift identity needs 1 <= s <= r-1, got r={r}, s={s}")
    res = cleared_residual(_f(r, s), _f(r + 1, s), _f(r - 1, s), r)
    return TodaResidual("shift_r", r, s, res)


def toda_reconstruct(r: int, s_max: int) -> list:
    """f_{r,0..s_max} from f_{r,0} = 1, f_{r,1} = 1 - alpha^r and the s-chain.

    f_{s+1} = [s^2 alpha f_s^2 + (1-alpha)^2 (f_s D^2 f_s - (D f_s)^2)] / (s^2 alpha f_{s-1})
    """
    if not 0 <= s_max <= r:
        raise DomainError(f"need 0 <= s_max <= r, got s_max={s_max}, r={r}")
    fs = [AlphaPoly.constant(1), AlphaPoly.constant(1) - AlphaPoly.monomial(r)]
    omd2 = one_minus_alpha_pow(2)
    for s in range(1, s_max):
        f, f_prev = fs[s], fs[s - 1]
        num = ALPHA * (s * s) * f * f + omd2 * log_second_derivative_numerator(f)
        try:
            fs.append(num.exact_div(ALPHA * (s * s) * f_prev))
        except InexactDivisionError as exc:
            raise IdentityViolation(f"non-polynomial f_{{{r},{s + 1}}}: {exc}") from exc
    return fs[: s_max + 1]
