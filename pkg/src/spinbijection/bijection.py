"""Bijection between one spin ``S = (p**M - 1)/2`` and ``M`` spins ``(p - 1)/2``.

Digits are indexed by weight: digit ``i`` (1-based) multiplies ``p**(i-1)``,
so ``s = sum_i p**(i-1) * sigma_i``.  The projection values of the inverse
map are usually tabulated most-significant-first; :meth:`ProjectionTable.msf_rows`
gives that ordering (``m = M + 1 - i``) when it is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .errors import (
    DigitOutOfRange,
    DomainError,
    IndexOutOfRange,
    LimitExceeded,
    ParityMismatch,
    ShapeMismatch,
    SpinOutOfRange,
)
from .exact import HalfInt, RationalLike, RationalPolynomial, as_fraction

DEFAULT_TABLE_LIMIT = 2**20
DEFAULT_POLY_LIMIT = 2**16

DigitVector = tuple  # tuple[HalfInt, ...], least significant digit first


@dataclass(frozen=True)
class ClusterSpec:
    p: int
    M: int
    limit: int = field(default=DEFAULT_TABLE_LIMIT, compare=False)

    def __post_init__(self):
        if self.p < 2:
            raise DomainError(f"p must be >= 2, got {self.p}")
        if self.M < 1:
            raise DomainError(f"M must be >= 1, got {self.M}")
        if self.p**self.M > self.limit:
            raise LimitExceeded(
                f"p**M = {self.p}**{self.M} exceeds the configured limit {self.limit}"
            )

    @property
    def size(self) -> int:
        """Number of eigenvalues, ``2S + 1 = p**M``."""
        return self.p**self.M

    @property
    def S(self) -> HalfInt:
        return HalfInt(self.size - 1)

    @property
    def sigma(self) -> HalfInt:
        return HalfInt(self.p - 1)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(self.p**i for i in range(self.M))

    def eigenvalues(self) -> list[HalfInt]:
        """All ``s`` from ``-S`` to ``S`` in ascending order."""
        n = self.size
        return [HalfInt(2 * j - (n - 1)) for j in range(n)]

    def __str__(self) -> str:
        return f"p={self.p}, M={self.M}, S={self.S}"


def _check_digit(spec: ClusterSpec, d: HalfInt) -> None:
    top = spec.p - 1
    if abs(d.doubled) > top or (d.doubled - top) % 2:
        raise DigitOutOfRange(f"digit {d} not in {{-{spec.sigma}, ..., {spec.sigma}}}")


def _spin_index(spec: ClusterSpec, s: RationalLike) -> int:
    """``j = s + S`` with range and parity validation."""
    try:
        s = HalfInt.of(s)
    except ValueError as exc:
        raise ParityMismatch(str(exc)) from None
    top = spec.size - 1
    if (s.doubled - top) % 2:
        raise ParityMismatch(f"2s = {s.doubled} must have the parity of 2S = {top}")
    if abs(s.doubled) > top:
        raise SpinOutOfRange(f"s = {s} outside [-{spec.S}, {spec.S}]")
    return (s.doubled + top) // 2


def compose_spin(spec: ClusterSpec, digits: Sequence[RationalLike]) -> HalfInt:
    """``s = sum_i p**(i-1) * sigma_i`` for least-significant-first digits."""
    if len(digits) != spec.M:
        raise DigitOutOfRange(f"expected {spec.M} digits, got {len(digits)}")
    total = 0
    for w, d in zip(spec.weights, digits):
        d = HalfInt.of(d)
        _check_digit(spec, d)
        total += w * d.doubled
    return HalfInt(total)


def decompose_spin(spec: ClusterSpec, s: RationalLike) -> DigitVector:
    """Inverse of :func:`compose_spin`: base-``p`` digits of ``s + S``, shifted."""
    q = _spin_index(spec, s)
    shift = spec.p - 1
    out = []
    for _ in range(spec.M):
        q, d = divmod(q, spec.p)
        out.append(HalfInt(2 * d - shift))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class ProjectionTable:
    """Digit values of every configuration index ``j = s + S``.

    ``doubled[i - 1, j]`` is twice the digit of weight ``p**(i-1)``.
    """

    spec: ClusterSpec
    doubled: np.ndarray

    def entry(self, i: int, j: int) -> HalfInt:
        if not 1 <= i <= self.spec.M or not 0 <= j < self.spec.size:
            raise IndexOutOfRange(f"entry ({i}, {j}) outside table")
        return HalfInt(int(self.doubled[i - 1, j]))

    def row(self, i: int) -> list[HalfInt]:
        return [HalfInt(int(v)) for v in self.doubled[i - 1]]

    def msf_rows(self) -> np.ndarray:
        """Rows ordered most significant first (``m = 1`` has weight ``p**(M-1)``)."""
        return np.ascontiguousarray(self.doubled[::-1])

    def __eq__(self, other):
        if not isinstance(other, ProjectionTable):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.doubled, other.doubled)

    def to_tsv(self) -> str:
        n = self.spec.size
        lines = ["weight\t" + "\t".join(f"j={j}" for j in range(n))]
        for i, w in enumerate(self.spec.weights):
            vals = "\t".join(str(HalfInt(int(v))) for v in self.doubled[i])
            lines.append(f"{w}\t{vals}")
        return "\n".join(lines) + "\n"


def projection_table(spec: ClusterSpec) -> ProjectionTable:
    t = kernels.digit_table(spec.p, spec.M)
    t.setflags(write=False)
    return ProjectionTable(spec, t)


def floor_projection(p: int, M: int, j: int, m: int) -> Fraction:
    """Projection value ``P_{j,m}`` from the floor formula, most-significant-first ``m``."""
    hi = math.floor(Fraction(j) * Fraction(p) ** (m - M))
    lo = math.floor(Fraction(j) * Fraction(p) ** (m - 1 - M))
    return hi - p * lo - Fraction(p - 1, 2)


@lru_cache(maxsize=4096)
def _lagrange_basis(two_s: int, j: int) -> RationalPolynomial:
    S = Fraction(two_s, 2)
    prefactor = Fraction((-1) ** (two_s + j), math.factorial(j) * math.factorial(two_s - j))
    roots = [i - S for i in range(two_s + 1) if i != j]
    return RationalPolynomial.from_roots(roots).scale(prefactor)


def lagrange_basis(S: RationalLike, j: int) -> RationalPolynomial:
    """``A_j(s)``: equals 1 at ``s = j - S`` and 0 at every other eigenvalue."""
    two_s = HalfInt.of(S).doubled
    if two_s < 0:
        raise DomainError("S must be non-negative")
    if not 0 <= j <= two_s:
        raise IndexOutOfRange(f"j = {j} outside 0..{two_s}")
    return _lagrange_basis(two_s, j)


def _interpolate_doubled(rows: Sequence[Sequence[int]], n: int) -> list[RationalPolynomial]:
    """Interpolate doubled values given at the ``n`` eigenvalues of spin ``(n-1)/2``.

    Works in ``t = 2s`` where the nodes ``t_k = 2k - (n - 1)`` are integers:

        sigma(t) = sum_j (2 P_j) (-1)**(n-1-j) C(n-1, j) W(t)/(t - t_j) / (2**n (n-1)!)

    with ``W(t) = prod_k (t - t_k)``.  Everything up to the final division is
    integer arithmetic.
    """
    nodes = [2 * k - (n - 1) for k in range(n)]
    W = [1]
    for x in nodes:
        nxt = [0] * (len(W) + 1)
        for k, c in enumerate(W):
            nxt[k + 1] += c
            nxt[k] -= x * c
        W = nxt
    # quotients W / (t - t_j), highest coefficient first
    quotients = []
    for x in nodes:
        q = [0] * n
        acc = 0
        for k in range(n, 0, -1):
            acc = W[k] + x * acc
            q[k - 1] = acc
        quotients.append(q)
    binom = [math.comb(n - 1, j) for j in range(n)]
    denom = 2**n * math.factorial(n - 1)
    out = []
    for vals in rows:
        num = [0] * n
        for j, v in enumerate(vals):
            if v:
                c = int(v) * binom[j] * (-1 if (n - 1 - j) % 2 else 1)
                q = quotients[j]
                for k in range(n):
                    num[k] += c * q[k]
        out.append(RationalPolynomial(Fraction(num[k] * 2**k, denom) for k in range(n)))
    return out


def inverse_polynomials(
    spec: ClusterSpec, limit: int = DEFAULT_POLY_LIMIT
) -> list[RationalPolynomial]:
    """Digit polynomials ``sigma_i(s)``, ordered by weight ``p**(i-1)``."""
    if spec.size > limit:
        raise LimitExceeded(f"p**M = {spec.size} exceeds polynomial limit {limit}")
    table = projection_table(spec)
    return _interpolate_doubled(table.doubled.tolist(), spec.size)


def general_inverse(S: RationalLike, table: Sequence[Sequence[RationalLike]]) -> list[RationalPolynomial]:
    """Row-wise ``sum_j A_j(s) * table[m][j]`` for an arbitrary value table.

    Expands the Lagrange basis directly, so it is cubic in ``2S + 1``; use
    :func:`inverse_polynomials` for the digit table itself.
    """
    two_s = HalfInt.of(S).doubled
    out = []
    for m, row in enumerate(table):
        if len(row) != two_s + 1:
            raise ShapeMismatch(f"row {m} has {len(row)} entries, expected {two_s + 1}")
        acc = RationalPolynomial()
        for j, v in enumerate(row):
            v = as_fraction(v)
            if (v * 2).denominator != 1:
                raise DomainError(f"table[{m}][{j}] = {v} is not a half-integer")
            if v:
                acc = acc + _lagrange_basis(two_s, j).scale(v)
        out.append(acc)
    return out


def eval_doubled(poly: RationalPolynomial, n: int) -> list[Fraction]:
    """Twice ``poly(s)`` at every eigenvalue of spin ``(n-1)/2``, ascending."""
    deg = max(poly.degree, 0)
    den = 1
    for c in poly.coefficients:
        den = den * c.denominator // math.gcd(den, c.denominator)
    # poly(t/2) * den * 2**deg = sum_k ints[k] * t**k
    ints = [int(poly[k] * den) * 2 ** (deg - k) for k in range(deg + 1)]
    scale = den * 2**deg
    out = []
    for k in range(n):
        t = 2 * k - (n - 1)
        acc = 0
        for c in reversed(ints):
            acc = acc * t + c
        out.append(Fraction(2 * acc, scale))
    return out


@dataclass
class RoundtripReport:
    spec: ClusterSpec
    passed: bool
    checked: int
    odd: bool
    counterexample: Optional[str] = None

    def __str__(self) -> str:
        head = f"roundtrip {self.spec}: {'PASS' if self.passed else 'FAIL'}"
        lines = [head, f"eigenvalues checked: {self.checked}", f"odd polynomials: {self.odd}"]
        if self.counterexample:
            lines.append(f"counterexample: {self.counterexample}")
        return "\n".join(lines) + "\n"


def verify_roundtrip(spec: ClusterSpec, limit: int = DEFAULT_POLY_LIMIT) -> RoundtripReport:
    """Exhaustive check of compose/decompose, the digit polynomials and their identity.

    Failures are reported, not raised.
    """
    n = spec.size
    table = projection_table(spec)

    composed = kernels.compose_doubled(table.doubled, spec.p)
    expected = np.arange(n, dtype=np.int64) * 2 - (n - 1)
    bad = np.flatnonzero(composed != expected)
    if bad.size:
        j = int(bad[0])
        return RoundtripReport(spec, False, n, False, f"compose(decompose(s)) != s at s = {HalfInt(int(expected[j]))}")

    polys = inverse_polynomials(spec, limit)
    odd = all(p.is_odd() for p in polys)
    for i, poly in enumerate(polys, start=1):
        values = eval_doubled(poly, n)
        for j, v in enumerate(values):
            if v != table.doubled[i - 1, j]:
                s = HalfInt(2 * j - (n - 1))
                return RoundtripReport(
                    spec, False, n, odd, f"sigma_{i}({s}) = {v / 2}, digit is {table.entry(i, j)}"
                )

    combo = RationalPolynomial()
    for w, poly in zip(spec.weights, polys):
        combo = combo + poly.scale(w)
    if combo != RationalPolynomial([0, 1]):
        return RoundtripReport(spec, False, n, odd, f"sum_i p**(i-1) sigma_i(s) = {combo} != s")
    return RoundtripReport(spec, True, n, odd)
