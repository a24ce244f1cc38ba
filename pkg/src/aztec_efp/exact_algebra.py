"""Exact rational and polynomial arithmetic.

Rationals are :class:`fractions.Fraction`.  Polynomials in the weight
parameter alpha are dense coefficient tuples (:class:`AlphaPoly`).
Determinants are evaluated by Bareiss fraction-free elimination; rational
inputs are first scaled row by row to integers so that the elimination runs
over ``Z`` or ``Z[alpha]``, where every Bareiss division is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

ExactScalar = Fraction
Number = Union[int, Fraction]


class DimensionError(ValueError):
    pass


class InexactDivisionError(ArithmeticError):
    """Raised when a division that must be exact leaves a remainder."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class AlphaPoly:
    """Dense univariate polynomial in alpha with rational coefficients.

    ``coeffs[k]`` is the coefficient of ``alpha**k``.  Instances are
    immutable and hashable; the zero polynomial has an empty coefficient
    tuple and degree 0.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        self._c = tuple(_trim([as_fraction(c) for c in coeffs]))

    @classmethod
    def _raw(cls, coeffs: tuple) -> "AlphaPoly":
        p = object.__new__(cls)
        p._c = coeffs
        return p

    @classmethod
    def constant(cls, c: Number) -> "AlphaPoly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c: Number = 1) -> "AlphaPoly":
        return cls([0] * k + [c])

    @property
    def coefficients(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        return max(len(self._c) - 1, 0)

    def is_zero(self) -> bool:
        return not self._c

    def valuation(self) -> int:
        """Lowest power of alpha with a nonzero coefficient."""
        for k, c in enumerate(self._c):
            if c:
                return k
        raise ValueError("valuation of the zero polynomial")

    def __call__(self, x: Number) -> Fraction:
        x = as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def __float__(self):
        raise TypeError("evaluate the polynomial at a point first")

    # arithmetic

    def _coerce(self, other) -> "AlphaPoly":
        if isinstance(other, AlphaPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return AlphaPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return AlphaPoly._raw(tuple(_trim(out)))

    __radd__ = __add__

    def __neg__(self):
        return AlphaPoly._raw(tuple(-c for c in self._c))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._c, other._c
        if not a or not b:
            return AlphaPoly._raw(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return AlphaPoly._raw(tuple(_trim(out)))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = AlphaPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        db = len(other._c) - 1
        lead = other._c[-1]
        if len(rem) - 1 < db:
            return AlphaPoly(), self
        quot = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            q = rem[k] / lead
            if q:
                quot[k - db] = q
                for j, c in enumerate(other._c):
                    rem[k - db + j] -= q * c
        return AlphaPoly(quot), AlphaPoly(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "AlphaPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise InexactDivisionError(f"nonzero remainder of degree {r.degree}")
        return q

    def __eq__(self, other):
        if isinstance(other, AlphaPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == AlphaPoly.constant(other)._c
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        return f"AlphaPoly({[str(c) for c in self._c]})"

    def __str__(self):
        if not self._c:
            return "0"
        terms = []
        for k, c in enumerate(self._c):
            if not c:
                continue
            mono = "" if k == 0 else ("a" if k == 1 else f"a^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(terms).replace("+ -", "- ")


ALPHA = AlphaPoly.monomial(1)
ONE = AlphaPoly.constant(1)


def one_minus_alpha_pow(n: int) -> AlphaPoly:
    """(1 - alpha)**n with binomial coefficients."""
    return AlphaPoly([(-1) ** k * math.comb(n, k) for k in range(n + 1)])


def alpha_derivative_operator(p: AlphaPoly) -> AlphaPoly:
    """Apply ``alpha * d/dalpha``: coefficient ``k`` is multiplied by ``k``."""
    return AlphaPoly._raw(tuple(_trim([k * c for k, c in enumerate(p.coefficients)])))


# ---------------------------------------------------------------------------
# matrices and determinants
# ---------------------------------------------------------------------------

Entry = Union[AlphaPoly, int, Fraction]


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows <= 0 or self.cols <= 0:
            raise DimensionError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Entry]]) -> "ExactMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        return cls(nrows, ncols, tuple(x for r in rows for x in r))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row_list(self) -> list:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def is_polynomial(self) -> bool:
        return any(isinstance(x, AlphaPoly) for x in self.entries)

    def evaluate(self, alpha: Number) -> "ExactMatrix":
        """Specialise polynomial entries at a rational point."""
        alpha = as_fraction(alpha)
        vals = tuple(x(alpha) if isinstance(x, AlphaPoly) else as_fraction(x) for x in self.entries)
        return ExactMatrix(self.rows, self.cols, vals)


# integer polynomials as lists of ints (lowest degree first), used inside Bareiss

def _ip_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _ip_sub(a: list, b: list) -> list:
    if len(a) < len(b):
        out = a + [0] * (len(b) - len(a))
    else:
        out = list(a)
    for k, c in enumerate(b):
        out[k] -= c
    return _trim(out)


def _ip_exact_div(a: list, b: list) -> list:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(rem) - 1 < db:
        raise InexactDivisionError("divisor degree exceeds dividend degree")
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if c:
            q, m = divmod(c, lead)
            if m:
                raise InexactDivisionError("non-integral quotient coefficient")
            quot[k - db] = q
            for j, y in enumerate(b):
                rem[k - db + j] -= q * y
    if any(rem[:db]):
        raise InexactDivisionError("nonzero remainder in Bareiss step")
    return _trim(quot)


def _bareiss(rows: list, mul, sub, div, is_zero, one):
    """Bareiss elimination in place; returns (sign, last pivot)."""
    n = len(rows)
    sign = 1
    prev = one
    for k in range(n - 1):
        if is_zero(rows[k][k]):
            for i in range(k + 1, n):
                if not is_zero(rows[i][k]):
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0, None
        pivot = rows[k][k]
        for i in range(k + 1, n):
            rk_i = rows[i][k]
            row_i = rows[i]
            row_k = rows[k]
            for j in range(k + 1, n):
                row_i[j] = div(sub(mul(pivot, row_i[j]), mul(rk_i, row_k[j])), prev)
        prev = pivot
    return sign, rows[n - 1][n - 1]


def det_fraction_free(m: ExactMatrix):
    """Exact determinant of a square matrix.

    Polynomial matrices give an :class:`AlphaPoly`; scalar matrices give a
    :class:`Fraction`.
    """
    if m.rows != m.cols:
        raise DimensionError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    poly = m.is_polynomial()
    rows = m.row_list()
    # scale each row to integer content; remember the scale
    scale = Fraction(1)
    int_rows = []
    for row in rows:
        if poly:
            coeff_lists = [
                list(x.coefficients) if isinstance(x, AlphaPoly) else [as_fraction(x)]
                for x in row
            ]
            dens = [c.denominator for cl in coeff_lists for c in cl]
        else:
            coeff_lists = [as_fraction(x) for x in row]
            dens = [c.denominator for c in coeff_lists]
        lcm = math.lcm(*dens) if dens else 1
        scale /= lcm
        if poly:
            int_rows.append([_trim([int(c * lcm) for c in cl]) for cl in coeff_lists])
        else:
            int_rows.append([int(c * lcm) for c in coeff_lists])

    if poly:
        sign, d = _bareiss(int_rows, _ip_mul, _ip_sub, _ip_exact_div, lambda p: not p, [1])
        if d is None:
            return AlphaPoly()
        return AlphaPoly([sign * c for c in d]) * scale

    def _div(a, b):
        q, r = divmod(a, b)
        if r:
            raise InexactDivisionError("nonzero remainder in integer Bareiss step")
        return q

    sign, d = _bareiss(int_rows, lambda a, b: a * b, lambda a, b: a - b, _div, lambda x: x == 0, 1)
    if d is None:
        return Fraction(0)
    return sign * d * scale
