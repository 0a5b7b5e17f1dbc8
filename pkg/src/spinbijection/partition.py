"""Periodic spin-1/2 Ising chain written as a single spin-S particle, S = (2**M - 1)/2.

Configuration energies are exact :class:`LinearForm` values ``a*J + b*h``
(contributions to ``-beta H``); the symbolic partition function is the
multiset of these forms.  Numeric evaluation happens only in the functions
taking float ``J``/``h`` arguments.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .bijection import ClusterSpec, _spin_index, projection_table
from .errors import DomainError, IndexOutOfRange, LimitExceeded
from .exact import RationalLike, as_fraction, format_rational, parse_rational

DEFAULT_CHAIN_LIMIT = 20
_MAX_LOG = math.log(np.finfo(float).max)


@dataclass(frozen=True, order=True)
class LinearForm:
    """``a*J + b*h`` with exact coefficients."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "b", as_fraction(self.b))

    def __add__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(self.a - other.a, self.b - other.b)

    def scale(self, k: RationalLike) -> "LinearForm":
        k = as_fraction(k)
        return LinearForm(self.a * k, self.b * k)

    def __call__(self, J: float, h: float) -> float:
        return float(self.a) * J + float(self.b) * h

    def __str__(self) -> str:
        return f"{format_rational(self.a)}*J + {format_rational(self.b)}*h"


@dataclass(frozen=True)
class ChainSpec:
    """Uniform periodic chain of ``M`` spin-1/2 sites."""

    M: int
    limit: int = field(default=DEFAULT_CHAIN_LIMIT, compare=False)
    boundary: str = "periodic"

    def __post_init__(self):
        if self.M < 2:
            raise DomainError("chain needs M >= 2 sites")
        if self.boundary != "periodic":
            raise DomainError("only periodic chains are supported")

    def require_enumerable(self) -> None:
        """Operations that touch all ``2**M`` momenta call this first."""
        if self.M > self.limit:
            raise LimitExceeded(f"M = {self.M} exceeds chain limit {self.limit}")

    @property
    def cluster(self) -> ClusterSpec:
        return ClusterSpec(2, self.M, limit=2**self.M)

    @property
    def S(self):
        return self.cluster.S


class FMatrix:
    """Lazily evaluated pair-energy matrix ``F[j, j']`` of the single-particle Hamiltonian.

    ``F[j, j'] = sum over bonds (m, m', c) of c*J*P[j,m]*P[j',m'] + w*h*(P[j,m] + P[j',m'])``
    with ``P`` the projection values indexed most-significant-first.
    The matrix has ``p**(2M)`` entries, so nothing is materialized unless
    :meth:`dense` is called.
    """

    def __init__(self, spec: ClusterSpec, bonds: Sequence[tuple[int, int, Fraction]], field_weight: Fraction):
        self.spec = spec
        self.bonds = [(m, mp, as_fraction(c)) for m, mp, c in bonds]
        self.field_weight = as_fraction(field_weight)
        self._P = projection_table(spec).msf_rows()  # doubled values
        self.size = spec.size

    @property
    def shape(self) -> tuple[int, int]:
        return (self.size, self.size)

    def __getitem__(self, idx: tuple[int, int]) -> LinearForm:
        j, jp = idx
        if not (0 <= j < self.size and 0 <= jp < self.size):
            raise IndexOutOfRange(f"F index {idx} outside 0..{self.size - 1}")
        P = self._P
        a = 0
        b = 0
        for m, mp, c in self.bonds:
            x, y = int(P[m - 1, j]), int(P[mp - 1, jp])
            a += c * x * y
            b += x + y
        return LinearForm(Fraction(a) / 4, self.field_weight * b / 2)

    def diagonal(self) -> list[LinearForm]:
        return [self[j, j] for j in range(self.size)]

    def dense(self, max_size: int = 1024) -> list[list[LinearForm]]:
        if self.size > max_size:
            raise LimitExceeded(f"refusing to materialize a {self.size}x{self.size} F matrix")
        return [[self[j, jp] for jp in range(self.size)] for j in range(self.size)]


def f_matrix(chain: ChainSpec) -> FMatrix:
    chain.require_enumerable()
    M = chain.M
    bonds = [(m, m % M + 1, Fraction(1)) for m in range(1, M + 1)]
    return FMatrix(chain.cluster, bonds, Fraction(1, 2))


def f_matrix_general(
    bonds: Iterable[tuple[int, int, RationalLike]], gamma: int, spec: ClusterSpec
) -> FMatrix:
    """Pair-energy matrix for arbitrary bonds ``(m, m', J_mm')`` on ``M`` sites.

    The field enters with weight ``2/gamma`` per bond end, so on a
    ``gamma``-regular bond list each site carries field ``2h``: twice the chain
    normalisation of :func:`f_matrix`.
    """
    if gamma <= 0:
        raise DomainError("gamma must be positive")
    bonds = list(bonds)
    for m, mp, _ in bonds:
        if not (1 <= m <= spec.M and 1 <= mp <= spec.M):
            raise IndexOutOfRange(f"bond ({m}, {mp}) refers to a site outside 1..{spec.M}")
    return FMatrix(spec, bonds, Fraction(2, gamma))


def single_particle_energy(s: RationalLike, chain: ChainSpec) -> LinearForm:
    """``-beta H_M(s)``, the diagonal element ``F[s+S, s+S]``.

    Read off the bits of ``j = s + S`` directly, so any ``M`` works.
    """
    j = _spin_index(chain.cluster, s)
    M = chain.M
    x = [2 * ((j >> (M - m)) & 1) - 1 for m in range(1, M + 1)]  # doubled, most significant first
    bond = sum(x[m] * x[(m + 1) % M] for m in range(M))
    return LinearForm(Fraction(bond, 4), Fraction(sum(x), 2))


@dataclass(frozen=True)
class SymbolicZ:
    """``sum mult * exp(form)`` with terms sorted by ``(a, b)``."""

    terms: tuple[tuple[LinearForm, int], ...]

    @classmethod
    def from_forms(cls, forms: Iterable[LinearForm]) -> "SymbolicZ":
        return cls.from_counts(Counter(forms))

    @classmethod
    def from_counts(cls, counts) -> "SymbolicZ":
        merged: Counter = Counter()
        for form, n in dict(counts).items():
            if n < 0:
                raise ValueError("negative multiplicity")
            if n:
                merged[form] += n
        return cls(tuple(sorted(merged.items())))

    def as_dict(self) -> dict[tuple[Fraction, Fraction], int]:
        return {(f.a, f.b): n for f, n in self.terms}

    @property
    def total(self) -> int:
        return sum(n for _, n in self.terms)

    def flip_field(self) -> "SymbolicZ":
        return SymbolicZ.from_counts({LinearForm(f.a, -f.b): n for f, n in self.terms})

    def log_evaluate(self, J: float, h: float) -> float:
        exps = [f(J, h) for f, _ in self.terms]
        top = max(exps)
        return top + math.log(math.fsum(n * math.exp(e - top) for e, (_, n) in zip(exps, self.terms)))

    def evaluate(self, J: float, h: float) -> float:
        return _checked_exp(self.log_evaluate(J, h))

    def __str__(self) -> str:
        return "".join(
            f"{n} * exp({format_rational(f.a)}*J + {format_rational(f.b)}*h)\n" for f, n in self.terms
        )

    @classmethod
    def parse(cls, text: str) -> "SymbolicZ":
        pat = re.compile(r"(\d+) \* exp\((\S+)\*J \+ (\S+)\*h\)")
        counts: Counter = Counter()
        for line in text.splitlines():
            if not line.strip():
                continue
            m = pat.fullmatch(line)
            if not m:
                raise ValueError(f"malformed term {line!r}")
            counts[LinearForm(parse_rational(m[2]), parse_rational(m[3]))] += int(m[1])
        return cls.from_counts(counts)


def partition_symbolic(chain: ChainSpec) -> SymbolicZ:
    """Collect the diagonal single-particle energies over all ``2**M`` momenta."""
    chain.require_enumerable()
    P = projection_table(chain.cluster).msf_rows()
    bond, fld = kernels.cyclic_chain_sums(P)
    pairs, counts = np.unique(np.stack([bond, fld], axis=1), axis=0, return_counts=True)
    return SymbolicZ.from_counts(
        {LinearForm(Fraction(int(bq), 4), Fraction(int(fq), 2)): int(n) for (bq, fq), n in zip(pairs, counts)}
    )


@dataclass(frozen=True)
class GapFactors:
    """Exponents (as forms) of the factors built from the extreme single-particle energies.

    ``b_plus``/``b_minus`` are ``Delta E / 4`` as defined; ``b_product`` is
    the exponent of the off-diagonal product that actually enters the
    two-eigenvalue formula.
    """

    a_plus: LinearForm
    a_minus: LinearForm
    c_plus: LinearForm
    c_minus: LinearForm
    delta_e_plus: LinearForm
    delta_e_minus: LinearForm
    b_plus: LinearForm
    b_minus: LinearForm
    b_product: LinearForm


def gap_factors(chain: ChainSpec) -> GapFactors:
    M = chain.M
    S = chain.S.value
    e = {s: single_particle_energy(s, chain) for s in (S, S - 1, -S, 1 - S)}
    a_p, a_m = e[S].scale(Fraction(1, M)), e[-S].scale(Fraction(1, M))
    c_p, c_m = e[S - 1].scale(Fraction(1, M)), e[1 - S].scale(Fraction(1, M))
    d_p, d_m = e[S] - e[S - 1], e[-S] - e[1 - S]
    return GapFactors(
        a_plus=a_p,
        a_minus=a_m,
        c_plus=c_p,
        c_minus=c_m,
        delta_e_plus=d_p,
        delta_e_minus=d_m,
        b_plus=d_p.scale(Fraction(1, 4)),
        b_minus=d_m.scale(Fraction(1, 4)),
        b_product=LinearForm(Fraction(-1, 2), 0),
    )


def _checked_exp(x: float) -> float:
    if x > _MAX_LOG:
        raise OverflowError(f"exp({x}) exceeds the double-precision range")
    return math.exp(x)


def _two_eigen_log(lam_plus: float, lam_minus: float, M: int) -> float:
    ratio = lam_minus / lam_plus
    return M * math.log(lam_plus) + math.log1p(ratio**M)


def log_partition_closed_form(chain: ChainSpec, J: float, h: float) -> float:
    a_p = math.exp(J / 4 + h / 2)
    a_m = math.exp(J / 4 - h / 2)
    root = math.sqrt((a_p - a_m) ** 2 + 4 * math.exp(-J / 2))
    return _two_eigen_log((a_p + a_m + root) / 2, (a_p + a_m - root) / 2, chain.M)


def partition_closed_form(chain: ChainSpec, J: float, h: float) -> float:
    """``lambda_+**M + lambda_-**M`` from the extreme-momentum factors."""
    return _checked_exp(log_partition_closed_form(chain, J, h))


def transfer_matrix(J: float, h: float) -> np.ndarray:
    off = math.exp(-J / 4)
    return np.array([[math.exp(J / 4 + h / 2), off], [off, math.exp(J / 4 - h / 2)]])


def log_transfer_matrix_partition(chain: ChainSpec, J: float, h: float) -> float:
    lam = np.linalg.eigvalsh(transfer_matrix(J, h))
    return _two_eigen_log(float(lam[1]), float(lam[0]), chain.M)


def transfer_matrix_partition(chain: ChainSpec, J: float, h: float) -> float:
    """``trace(T**M)`` from the numerically computed spectrum of ``T``."""
    return _checked_exp(log_transfer_matrix_partition(chain, J, h))


def free_energy(J: float, h: float) -> float:
    """``lim ln(Z_M)/M``, the log of the largest transfer-matrix eigenvalue."""
    return math.log(math.exp(J / 4) * math.cosh(h / 2) + math.sqrt(math.exp(J / 2) * math.sinh(h / 2) ** 2 + math.exp(-J / 2)))
