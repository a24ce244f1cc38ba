"""Exact emptiness formation probability f_{r,s}.

Three independent routes are provided: the s x s Hankel determinant of
alpha-moments, a brute-force enumeration of the discrete matrix-model sum,
and the closed forms available for s in {0, 1, r}.  Each route can return
either a rational value at a given alpha or the full polynomial in alpha.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence

from .exact_algebra import (
    AlphaPoly,
    ExactMatrix,
    as_fraction,
    det_fraction_free,
    one_minus_alpha_pow,
)

ORACLE_MAX_TERMS = 10**7


class DomainError(ValueError):
    pass


class EnumerationLimitError(RuntimeError):
    pass


@dataclass(frozen=True)
class ModelParams:
    """Lattice data for the corner of an (r+s) x (r+s) domain-wall lattice.

    ``alpha=None`` requests the symbolic result (a polynomial in alpha).
    ``rho`` only normalises the weights and enters the partition functions.
    """

    r: int
    s: int
    alpha: Optional[Fraction] = None
    rho: Fraction = Fraction(2)

    def __post_init__(self):
        if self.alpha is not None:
            object.__setattr__(self, "alpha", as_fraction(self.alpha))
            if not 0 <= self.alpha <= 1:
                raise DomainError(f"alpha={self.alpha} outside [0, 1]")
        object.__setattr__(self, "rho", as_fraction(self.rho))
        if self.rho <= 0:
            raise DomainError("rho must be positive")
        if self.r < 1 or self.s < 0:
            raise DomainError(f"need r >= 1 and s >= 0, got r={self.r}, s={self.s}")

    @property
    def N(self) -> int:
        return self.r + self.s

    @property
    def symbolic(self) -> bool:
        return self.alpha is None

    def weights(self) -> dict:
        """Squared weights w_i**2 (w_1..w_4 are square roots of rationals)."""
        a, rho = self.alpha, self.rho
        return {
            "w1^2": rho * (1 - a),
            "w2^2": rho * (1 - a),
            "w3^2": rho * a,
            "w4^2": rho * a,
            "w5^2": Fraction(1),
            "w6^2": rho * rho,
        }


@dataclass(frozen=True)
class EfpResult:
    value_exact: Optional[Fraction]
    as_polynomial: Optional[AlphaPoly]
    method: str
    params: ModelParams
    value_float: Optional[float] = field(default=None)

    def __post_init__(self):
        if self.value_exact is not None and self.value_float is None:
            object.__setattr__(self, "value_float", float(self.value_exact))


def _finish(poly: AlphaPoly, params: ModelParams, method: str) -> EfpResult:
    if params.symbolic:
        return EfpResult(None, poly, method, params)
    return EfpResult(poly(params.alpha), poly, method, params)


def _check_range(params: ModelParams):
    if params.s > params.r:
        raise DomainError(f"EFP needs s <= r, got r={params.r}, s={params.s}")


def hankel_entry(r: int, j: int, k: int) -> AlphaPoly:
    """sum_{m=0}^{r-1} m**(j+k-2) alpha**m, with 0**0 = 1."""
    if j < 1 or k < 1:
        raise DomainError("Hankel indices start at 1")
    p = j + k - 2
    return AlphaPoly([m**p for m in range(r)])  # Python: 0**0 == 1


def hankel_matrix(r: int, s: int, alpha: Optional[Fraction] = None) -> ExactMatrix:
    rows = [[hankel_entry(r, j, k) for k in range(1, s + 1)] for j in range(1, s + 1)]
    m = ExactMatrix.from_rows(rows)
    return m if alpha is None else m.evaluate(alpha)


def superfactorial(n: int) -> int:
    """prod_{j=1}^{n} j!"""
    out = 1
    for j in range(1, n + 1):
        out *= math.factorial(j)
    return out


def _prefactor_poly(s: int, body: AlphaPoly, extra: int = 1) -> AlphaPoly:
    """(1-alpha)^{s^2} body / (extra * (prod j!)^2 * alpha^{s(s-1)/2})."""
    shift = s * (s - 1) // 2
    coeffs = body.coefficients
    if any(coeffs[:shift]):
        raise ArithmeticError("alpha power prefactor does not divide the determinant")
    reduced = AlphaPoly(coeffs[shift:])
    denom = extra * superfactorial(s - 1) ** 2
    return one_minus_alpha_pow(s * s) * reduced * Fraction(1, denom)


def efp_hankel(params: ModelParams) -> EfpResult:
    """f_{r,s} from the Hankel determinant of alpha-moments."""
    _check_range(params)
    r, s = params.r, params.s
    if s == 0:
        return _finish(AlphaPoly.constant(1), params, "hankel")
    if params.symbolic:
        det = det_fraction_free(hankel_matrix(r, s))
        return _finish(_prefactor_poly(s, det), params, "hankel")
    a = params.alpha
    if a == 0:
        # the alpha^{s(s-1)/2} prefactor cancels only symbolically
        return _finish(efp_hankel(replace(params, alpha=None)).as_polynomial, params, "hankel")
    det = det_fraction_free(hankel_matrix(r, s, a))
    value = (1 - a) ** (s * s) * det / (superfactorial(s - 1) ** 2 * a ** (s * (s - 1) // 2))
    return EfpResult(value, None, "hankel", params)


def matrix_model_sum(r: int, s: int, limit: int = ORACLE_MAX_TERMS) -> AlphaPoly:
    """sum over (m_1..m_s) in {0..r-1}^s of prod_{j<k}(m_k-m_j)^2 alpha^{sum m}.

    Every tuple is enumerated; no symmetry reduction is applied.
    """
    if r**s > limit:
        raise EnumerationLimitError(f"r^s = {r**s} tuples exceeds the limit {limit}")
    if s == 0:
        return AlphaPoly.constant(1)
    coeffs = [0] * (s * (r - 1) + 1)
    pairs = list(itertools.combinations(range(s), 2))
    for ms in itertools.product(range(r), repeat=s):
        w = 1
        for j, k in pairs:
            d = ms[k] - ms[j]
            if not d:
                w = 0
                break
            w *= d * d
        if w:
            coeffs[sum(ms)] += w
    return AlphaPoly(coeffs)


def efp_oracle(params: ModelParams, limit: int = ORACLE_MAX_TERMS) -> EfpResult:
    """f_{r,s} by direct enumeration of the discrete matrix-model sum."""
    _check_range(params)
    total = matrix_model_sum(params.r, params.s, limit)
    poly = _prefactor_poly(params.s, total, extra=math.factorial(params.s))
    return _finish(poly, params, "oracle")


def efp_special(params: ModelParams) -> Optional[EfpResult]:
    """Closed forms for s = 0, 1, r; ``None`` when none applies."""
    _check_range(params)
    r, s = params.r, params.s
    if s == 0:
        poly = AlphaPoly.constant(1)
    elif s == 1:
        poly = AlphaPoly.constant(1) - AlphaPoly.monomial(r)
    elif s == r:
        poly = one_minus_alpha_pow(r * r)
    else:
        return None
    return _finish(poly, params, "special")


METHODS = {"hankel": efp_hankel, "oracle": efp_oracle, "special": efp_special}


def efp(params: ModelParams, method: str = "hankel") -> EfpResult:
    try:
        fn = METHODS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; choose from {sorted(METHODS)}") from None
    out = fn(params)
    if out is None:
        raise DomainError(f"no closed form for r={params.r}, s={params.s}")
    return out


def efp_poly(r: int, s: int) -> AlphaPoly:
    """Symbolic f_{r,s}, zero for s > r (no admissible configuration)."""
    if s > r:
        return AlphaPoly()
    return efp_hankel(ModelParams(r, s)).as_polynomial


# ---------------------------------------------------------------------------
# partition functions
# ---------------------------------------------------------------------------

def _exact_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class PartitionFunctions:
    """Z_N and Z_{r,s} = Z_N f_{r,s} / w_2^{s^2}.

    w_2 = sqrt(rho (1 - alpha)) is in general irrational, so ``z_rs_squared``
    is always exact while ``z_rs_exact`` is set only when w_2^{s^2} is
    rational.
    """

    z_n: Fraction
    f_rs: Fraction
    w2_squared: Fraction
    z_rs_squared: Fraction
    z_rs_exact: Optional[Fraction]
    z_rs_float: float


def z_dwbc(n: int, rho: Fraction) -> Fraction:
    """Z_N = w5^{N(N-1)/2} w6^{N(N+1)/2} with w5 = 1, w6 = rho."""
    return as_fraction(rho) ** (n * (n + 1) // 2)


def partition_functions(params: ModelParams) -> PartitionFunctions:
    if params.symbolic:
        raise DomainError("partition functions need a numeric alpha")
    r, s, a, rho = params.r, params.s, params.alpha, params.rho
    z_n = z_dwbc(r + s, rho)
    f = efp_hankel(params).value_exact
    w2sq = rho * (1 - a)
    if s == 0:
        return PartitionFunctions(z_n, f, w2sq, z_n * z_n, z_n, float(z_n))
    if w2sq == 0:
        raise DomainError("w_2 vanishes at alpha = 1")
    z_sq = (z_n * f) ** 2 / w2sq ** (s * s)
    if s % 2 == 0:
        exact = z_n * f / w2sq ** (s * s // 2)
    else:
        w2 = _exact_sqrt(w2sq)
        exact = None if w2 is None else z_n * f / w2 ** (s * s)
    if exact is not None:
        fl = float(exact)
    else:
        fl = math.exp(math.log(z_n) + math.log(f) - s * s * 0.5 * math.log(w2sq)) if f else 0.0
    return PartitionFunctions(z_n, f, w2sq, z_sq, exact, fl)


def exponential_tail_ratio(s: int, alpha, r_list: Sequence[int]) -> list:
    """(r, (1 - f_{r,s}) / alpha^r) for each r."""
    a = as_fraction(alpha)
    if not 0 < a < 1:
        raise DomainError("alpha must lie in (0, 1)")
    out = []
    for r in r_list:
        f = efp_hankel(ModelParams(r, s, a)).value_exact
        out.append((r, (1 - f) / a**r))
    return out
