"""Exact arithmetic substrate: rational literals, half-integers, dense polynomials
and a Gaussian-elimination solver over the rationals.

Rationals are :class:`fractions.Fraction` throughout; nothing in this module
touches floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

from .errors import Inconsistent, Singular

RationalLike = Union[int, Fraction, str, "HalfInt"]

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?")


def parse_rational(text: str) -> Fraction:
    """Parse ``"n/d"`` or ``"n"``.

    Any whitespace is rejected, as is a zero denominator.

    >>> parse_rational("-764019/3040")
    Fraction(-764019, 3040)
    """
    if not isinstance(text, str) or not _RATIONAL_RE.fullmatch(text):
        raise ValueError(f"not a rational literal: {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(x: Rational) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, HalfInt):
        return x.value
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


@dataclass(frozen=True, order=True)
class HalfInt:
    """Spin eigenvalue ``doubled / 2``, kept as the doubled integer."""

    doubled: int

    def __post_init__(self):
        if not isinstance(self.doubled, int) or isinstance(self.doubled, bool):
            raise TypeError("HalfInt.doubled must be an int")

    @classmethod
    def of(cls, x: RationalLike) -> "HalfInt":
        """Build from an int, Fraction, literal string or another HalfInt."""
        if isinstance(x, HalfInt):
            return x
        v = as_fraction(x) * 2
        if v.denominator != 1:
            raise ValueError(f"{x!r} is not a multiple of 1/2")
        return cls(int(v))

    @property
    def value(self) -> Fraction:
        return Fraction(self.doubled, 2)

    @property
    def is_integer(self) -> bool:
        return self.doubled % 2 == 0

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.doubled)

    def __add__(self, other: "HalfInt") -> "HalfInt":
        if not isinstance(other, HalfInt):
            return NotImplemented
        return HalfInt(self.doubled + other.doubled)

    def __sub__(self, other: "HalfInt") -> "HalfInt":
        if not isinstance(other, HalfInt):
            return NotImplemented
        return HalfInt(self.doubled - other.doubled)

    def __str__(self) -> str:
        return format_rational(self.value)

    def __repr__(self) -> str:
        return f"HalfInt({self})"


@dataclass(frozen=True, init=False)
class RationalPolynomial:
    """Dense univariate polynomial; ``coefficients[k]`` multiplies ``s**k``.

    The zero polynomial has an empty coefficient tuple.
    """

    coefficients: tuple[Fraction, ...]

    def __init__(self, coefficients: Iterable[RationalLike] = ()):
        coeffs = [as_fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def monomial(cls, power: int, coeff: RationalLike = 1) -> "RationalPolynomial":
        return cls([0] * power + [coeff])

    @classmethod
    def from_roots(cls, roots: Iterable[RationalLike]) -> "RationalPolynomial":
        """Monic product of ``(s - r)`` over ``roots``."""
        out = cls([1])
        for r in roots:
            out = out * cls([-as_fraction(r), 1])
        return out

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coefficients):
            return self.coefficients[k]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coefficients)

    def evaluate(self, x: RationalLike) -> Fraction:
        x = as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    __call__ = evaluate

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        n = max(len(self), len(other))
        return RationalPolynomial(self[k] + other[k] for k in range(n))

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial(-c for c in self.coefficients)

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        if not self or not other:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return RationalPolynomial(out)

    def scale(self, factor: RationalLike) -> "RationalPolynomial":
        f = as_fraction(factor)
        return RationalPolynomial(c * f for c in self.coefficients)

    def is_odd(self) -> bool:
        return all(c == 0 for c in self.coefficients[0::2])

    def to_strings(self) -> list[str]:
        """Serialize as rational literals, constant term first."""
        return [format_rational(c) for c in self.coefficients]

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> "RationalPolynomial":
        return cls(parse_rational(t) for t in items)

    def pretty(self, var: str = "s") -> str:
        terms = []
        for k in range(len(self) - 1, -1, -1):
            c = self.coefficients[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = format_rational(abs(c))
            if k == 0:
                body = mag
            else:
                power = var if k == 1 else f"{var}^{k}"
                body = power if mag == "1" else f"{mag} {power}"
            terms.append((sign, body))
        if not terms:
            return "0"
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.pretty()


def poly_eval(poly: RationalPolynomial, x: RationalLike) -> Fraction:
    return poly.evaluate(x)


def poly_arith(p: RationalPolynomial, q, op: str) -> RationalPolynomial:
    """``op`` is ``"add"``, ``"mul"`` or ``"scale"`` (``q`` is then a scalar)."""
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    if op == "scale":
        return p.scale(q)
    raise ValueError(f"unknown polynomial operation {op!r}")


def linear_solve(
    A: Sequence[Sequence[RationalLike]], b: Sequence[RationalLike]
) -> list[Fraction]:
    """Solve ``A x = b`` exactly by Gauss-Jordan elimination.

    ``A`` may have more rows than columns as long as the system is
    consistent and has full column rank.

    Raises:
        Inconsistent: no vector satisfies every equation.
        Singular: solutions exist but are not unique (or ``A`` is wide).
    """
    rows = len(A)
    if rows != len(b):
        raise ValueError("row count of A and length of b differ")
    cols = len(A[0]) if rows else 0
    aug = []
    for row, rhs in zip(A, b):
        if len(row) != cols:
            raise ValueError("ragged matrix")
        aug.append([as_fraction(v) for v in row] + [as_fraction(rhs)])

    pivot_cols = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [vi - f * vr for vi, vr in zip(aug[i], aug[r])]
        pivot_cols.append(c)
        r += 1
        if r == rows:
            break

    if any(aug[i][cols] != 0 for i in range(r, rows)):
        raise Inconsistent("linear system has no solution")
    if r < cols:
        raise Singular(f"linear system has rank {r} < {cols} unknowns")
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivot_cols):
        x[c] = aug[i][cols]
    return x
