"""Spin-S bond Hamiltonians and their rewriting in terms of layered cluster spins.

The up-down symmetric spin-S model has, per nearest-neighbour bond,

    sum_{a<=b, a+b even} J_ab/2 (s_i^a s_j^b + s_i^b s_j^a)
        + sum_k gamma h_2k / 2 (s_i^2k + s_j^2k).

Substituting ``s = sum_i p**(i-1) sigma_i`` turns each bond into a polynomial
in the layer spins of both sites.  A *pattern* ``(e, f)`` is a pair of
exponent vectors, the first for site ``i`` and the second for site ``j``;
its layer constant is the coefficient of the single monomial
``prod sigma_{k,i}**e_k * prod sigma_{k,j}**f_k``.  The bond energy is the
pattern constant times the symmetrized sum over the two site orders (one
term when ``e == f``).  For the three-layer spin-7/2 case this gives the 19
named constants:

    K_aa  sigma_a,i sigma_a,j
    K_ab  sigma_a,i sigma_b,j + sigma_b,i sigma_a,j          (b > a, cross)
    K_ba  sigma_a,i sigma_b,i + sigma_a,j sigma_b,j          (b > a, glue)
    R_abc sigma_a,i sigma_a,j (sigma_b,i sigma_c,j + sigma_b,j sigma_c,i)   (c > b)
    R_acb sigma_a,i sigma_a,j (sigma_b,i sigma_c,i + sigma_b,j sigma_c,j)   (c > b)
    R_ab  sigma_a,i sigma_a,j sigma_b,i sigma_b,j
    R     sigma_1,i sigma_2,i sigma_3,i sigma_1,j sigma_2,j sigma_3,j

Note there is no factor 1/2 on the cross, glue or ``R_abc`` terms.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, NamedTuple, Optional, Sequence

from .bijection import ClusterSpec, decompose_spin
from .errors import DigitOutOfRange, DomainError, Inconsistent, LimitExceeded, SpinOutOfRange
from .exact import HalfInt, RationalLike, as_fraction, format_rational, linear_solve, parse_rational
from .published import LAYER_FORMS

Form = dict  # symbol -> Fraction
Pattern = tuple  # (exponents at site i, exponents at site j)

DEFAULT_DERIVE_LIMIT = 2**8


# ---------------------------------------------------------------------------
# spin-S couplings


def j_name(a: int, b: int) -> str:
    return f"J{a}{b}" if max(a, b) < 10 else f"J{a},{b}"


def field_symbol(power: int) -> str:
    return f"gamma*h{power}"


def coupling_pairs(two_s: int) -> list[tuple[int, int]]:
    """``(a, b)`` with ``1 <= a <= b <= 2S`` and ``a + b`` even, odd sector first."""
    pairs = [(a, b) for a in range(1, two_s + 1) for b in range(a, two_s + 1) if (a + b) % 2 == 0]
    return sorted(pairs, key=lambda ab: (ab[0] % 2 == 0, ab))


def field_powers(two_s: int) -> list[int]:
    return list(range(2, two_s + 1, 2))


def _parse_j_key(key: str) -> Optional[tuple[int, int]]:
    body = key[1:]
    if "," in body:
        a, _, b = body.partition(",")
    elif len(body) == 2:
        a, b = body
    else:
        return None
    if not (a.isdigit() and b.isdigit()):
        return None
    a, b = int(a), int(b)
    return (min(a, b), max(a, b))


@dataclass(frozen=True)
class SpinCouplings:
    """Couplings of the up-down symmetric spin-S bond Hamiltonian (default S = 7/2).

    ``J`` is keyed by ``(a, b)`` with ``a <= b``; ``h`` by the even power.
    Missing keys are zero.
    """

    J: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)
    h: Mapping[int, Fraction] = field(default_factory=dict)
    gamma: int = 4
    two_s: int = 7

    def __post_init__(self):
        pairs = coupling_pairs(self.two_s)
        powers = field_powers(self.two_s)
        J = {}
        for key, val in self.J.items():
            a, b = key
            key = (min(a, b), max(a, b))
            if key not in pairs:
                raise DomainError(f"{j_name(*key)} is not a coupling of the spin-{HalfInt(self.two_s)} model")
            J[key] = as_fraction(val)
        h = {}
        for key, val in self.h.items():
            if key not in powers:
                raise DomainError(f"h{key} is not a field of the spin-{HalfInt(self.two_s)} model")
            h[key] = as_fraction(val)
        if not isinstance(self.gamma, int) or self.gamma <= 0:
            raise DomainError("gamma must be a positive integer")
        object.__setattr__(self, "J", {k: J.get(k, Fraction(0)) for k in pairs})
        object.__setattr__(self, "h", {k: h.get(k, Fraction(0)) for k in powers})

    @classmethod
    def from_names(cls, values: Mapping[str, RationalLike], gamma: int = 4, two_s: int = 7):
        """Build from ``{"J11": ..., "h2": ...}``; reversed J indices are accepted."""
        J, h = {}, {}
        for key, val in values.items():
            if key.startswith("J") and (ab := _parse_j_key(key)):
                J[ab] = as_fraction(val)
            elif key.startswith("h") and key[1:].isdigit():
                h[int(key[1:])] = as_fraction(val)
            else:
                raise DomainError(f"unknown coupling key {key!r}")
        return cls(J, h, gamma, two_s)

    def names(self) -> dict[str, Fraction]:
        out = {j_name(*k): v for k, v in self.J.items()}
        out.update({f"h{k}": v for k, v in self.h.items()})
        return out

    def symbol_values(self) -> dict[str, Fraction]:
        """Values for the symbols of the layer-constant forms (``gamma*h`` products)."""
        out = {j_name(*k): v for k, v in self.J.items()}
        out.update({field_symbol(k): self.gamma * v for k, v in self.h.items()})
        return out

    def to_text(self) -> str:
        lines = [f"{k} = {format_rational(v)}" for k, v in self.names().items()]
        lines.append(f"gamma = {self.gamma}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, two_s: int = 7) -> "SpinCouplings":
        """Parse ``key = rational`` lines; ``#`` starts a comment.

        ``gamma`` is required.  Unknown or repeated keys are errors.
        """
        values: dict[str, Fraction] = {}
        gamma = None
        seen = set()
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, val = line.partition("=")
            key, val = key.strip(), val.strip()
            if not sep or not key:
                raise DomainError(f"line {lineno}: expected 'key = value'")
            canon = key
            if key.startswith("J") and (ab := _parse_j_key(key)):
                canon = j_name(*ab)
            if canon in seen:
                raise DomainError(f"line {lineno}: duplicate key {key!r}")
            seen.add(canon)
            try:
                if key == "gamma":
                    g = parse_rational(val)
                    if g.denominator != 1:
                        raise ValueError("gamma must be an integer")
                    gamma = int(g)
                else:
                    values[key] = parse_rational(val)
            except ValueError as exc:
                raise DomainError(f"line {lineno}: {exc}") from None
        if gamma is None:
            raise DomainError("coupling file does not set gamma")
        return cls.from_names(values, gamma=gamma, two_s=two_s)


# ---------------------------------------------------------------------------
# three-layer couplings

LAYER_NAMES = (
    "K11", "K12", "K13", "K22", "K23", "K33", "K21", "K31", "K32",
    "R12", "R13", "R23", "R123", "R213", "R312", "R132", "R231", "R321", "R",
)
_PAIRS = ((1, 2), (1, 3), (2, 3))
_TRIPLES = ((1, 2, 3), (2, 1, 3), (3, 1, 2), (1, 3, 2), (2, 3, 1), (3, 2, 1))


@dataclass(frozen=True)
class LayerCouplings:
    """The 19 constants of the three-layer spin-1/2 bond Hamiltonian.

    ``K[(a, b)]`` holds the intra-layer (``a == b``), cross (``b > a``) and glue
    (``b < a``) couplings; ``Rpair`` the ``R_ab``; ``Rtriple`` the ``R_abc``.
    """

    K: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)
    Rpair: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)
    Rtriple: Mapping[tuple[int, int, int], Fraction] = field(default_factory=dict)
    Rsix: Fraction = Fraction(0)

    def __post_init__(self):
        def full(given, keys, what):
            extra = set(given) - set(keys)
            if extra:
                raise DomainError(f"unknown {what} keys {sorted(extra)}")
            return {k: as_fraction(given.get(k, 0)) for k in keys}

        object.__setattr__(self, "K", full(self.K, list(itertools.product((1, 2, 3), repeat=2)), "K"))
        object.__setattr__(self, "Rpair", full(self.Rpair, _PAIRS, "R_ab"))
        object.__setattr__(self, "Rtriple", full(self.Rtriple, _TRIPLES, "R_abc"))
        object.__setattr__(self, "Rsix", as_fraction(self.Rsix))

    @classmethod
    def from_names(cls, values: Mapping[str, RationalLike]) -> "LayerCouplings":
        K, Rp, Rt, R = {}, {}, {}, Fraction(0)
        for name, v in values.items():
            if name not in LAYER_NAMES:
                raise DomainError(f"unknown layer constant {name!r}")
            idx = tuple(int(c) for c in name[1:])
            if name == "R":
                R = v
            elif name[0] == "K":
                K[idx] = v
            elif len(idx) == 2:
                Rp[idx] = v
            else:
                Rt[idx] = v
        return cls(K, Rp, Rt, R)

    def names(self) -> dict[str, Fraction]:
        out = {}
        for name in LAYER_NAMES:
            idx = tuple(int(c) for c in name[1:])
            if name == "R":
                out[name] = self.Rsix
            elif name[0] == "K":
                out[name] = self.K[idx]
            elif len(idx) == 2:
                out[name] = self.Rpair[idx]
            else:
                out[name] = self.Rtriple[idx]
        return out

    def to_tsv(self) -> str:
        return "".join(f"{k}\t{format_rational(v)}\n" for k, v in self.names().items())


# ---------------------------------------------------------------------------
# bond energies


def bond_energy_spin(s_i: RationalLike, s_j: RationalLike, c: SpinCouplings) -> Fraction:
    """Contribution of one bond to ``-beta H`` in the spin-S model."""
    top = c.two_s
    a_, b_ = HalfInt.of(s_i), HalfInt.of(s_j)
    for s in (a_, b_):
        if abs(s.doubled) > top or (s.doubled - top) % 2:
            raise SpinOutOfRange(f"{s} is not an eigenvalue of spin {HalfInt(top)}")
    x, y = a_.value, b_.value
    px = [x**k for k in range(top + 1)]
    py = [y**k for k in range(top + 1)]
    e = Fraction(0)
    for (a, b), J in c.J.items():
        if J:
            e += J * (px[a] * py[b] + px[b] * py[a]) / 2
    for k, h in c.h.items():
        if h:
            e += c.gamma * h * (px[k] + py[k]) / 2
    return e


def _check_layers(d) -> tuple[Fraction, Fraction, Fraction]:
    if len(d) != 3:
        raise DigitOutOfRange("three layer spins required")
    out = []
    for v in d:
        v = HalfInt.of(v)
        if abs(v.doubled) != 1:
            raise DigitOutOfRange(f"layer spin {v} is not +-1/2")
        out.append(v.value)
    return tuple(out)


def bond_energy_layers(d_i: Sequence[RationalLike], d_j: Sequence[RationalLike], k: LayerCouplings) -> Fraction:
    """Contribution of one bond to ``-beta H`` in the three-layer model.

    ``d_i`` and ``d_j`` list the layer spins of each site, layer 1 first.
    """
    si = (None,) + _check_layers(d_i)
    sj = (None,) + _check_layers(d_j)
    K = k.K
    e = sum(K[a, a] * si[a] * sj[a] for a in (1, 2, 3))
    for a, b in _PAIRS:
        e += K[a, b] * (si[a] * sj[b] + si[b] * sj[a])
        e += K[b, a] * (si[a] * si[b] + sj[a] * sj[b])
        e += k.Rpair[a, b] * si[a] * sj[a] * si[b] * sj[b]
    for a in (1, 2, 3):
        b, c = (x for x in (1, 2, 3) if x != a)
        e += k.Rtriple[a, b, c] * si[a] * sj[a] * (si[b] * sj[c] + sj[b] * si[c])
        e += k.Rtriple[a, c, b] * si[a] * sj[a] * (si[b] * si[c] + sj[b] * sj[c])
    e += k.Rsix * si[1] * si[2] * si[3] * sj[1] * sj[2] * sj[3]
    return e


# ---------------------------------------------------------------------------
# expansion engine


def _mul_by_spin(poly: dict, spec: ClusterSpec, reduce_top: dict) -> dict:
    """``poly * sum_i p**(i-1) sigma_i`` with ``sigma**p`` rewritten in lower powers."""
    p = spec.p
    out: dict = {}
    for e, c in poly.items():
        for i, w in enumerate(spec.weights):
            if e[i] + 1 < p:
                key = e[:i] + (e[i] + 1,) + e[i + 1 :]
                out[key] = out.get(key, 0) + c * w
            else:
                for low, r in reduce_top.items():
                    key = e[:i] + (low,) + e[i + 1 :]
                    out[key] = out.get(key, 0) + c * w * r
    return {k: v for k, v in out.items() if v}


def site_powers(spec: ClusterSpec, top: int) -> list[dict]:
    """``s**n`` for ``n = 0..top`` as maps from exponent vectors to coefficients.

    Exponents stay below ``p`` by substituting the monic polynomial whose
    roots are the layer-spin values.
    """
    values = [Fraction(v, 2) for v in range(-(spec.p - 1), spec.p, 2)]
    minimal = [Fraction(1)]
    for v in values:
        minimal = [(minimal[k - 1] if k else 0) - v * (minimal[k] if k < len(minimal) else 0) for k in range(len(minimal) + 1)]
    reduce_top = {k: -minimal[k] for k in range(spec.p) if minimal[k]}
    powers = [{(0,) * spec.M: Fraction(1)}]
    for _ in range(top):
        powers.append(_mul_by_spin(powers[-1], spec, reduce_top))
    return powers


def _canonical(e: tuple, f: tuple) -> Pattern:
    return (e, f) if e <= f else (f, e)


def _form_add(target: dict, key, sym: str, val: Fraction) -> None:
    if val:
        form = target.setdefault(key, {})
        form[sym] = form.get(sym, 0) + val


def pattern_label(pattern: Pattern) -> str:
    """Layer-constant name for two-level layers where one exists, else a generic label."""
    e, f = pattern

    def support(x):
        return tuple(i + 1 for i, v in enumerate(x) if v)

    if all(v <= 1 for v in e + f):
        A, B = support(e), support(f)
        if len(A) > len(B):
            A, B = B, A
        M = len(e)
        if len(A) == 1 and len(B) == 1:
            return f"K{A[0]}{B[0]}" if A[0] <= B[0] else f"K{B[0]}{A[0]}"
        if not A and len(B) == 2:
            return f"K{B[1]}{B[0]}"
        if len(A) == 2 and len(B) == 2:
            if A == B:
                return f"R{A[0]}{A[1]}"
            shared = set(A) & set(B)
            if len(shared) == 1:
                a = shared.pop()
                b, c = sorted((set(A) | set(B)) - {a})
                # representative monomial has sigma_b at the same site as the first 2-set
                return f"R{a}{b}{c}"
        if len(A) == 1 and len(B) == 3:
            a = A[0]
            b, c = sorted(set(B) - {a})
            return f"R{a}{c}{b}"
        if M == 3 and len(A) == 3 and len(B) == 3:
            return "R"
    def mono(x):
        return "*".join(f"s{i + 1}^{v}" if v > 1 else f"s{i + 1}" for i, v in enumerate(x) if v) or "1"

    return f"[{mono(e)} | {mono(f)}]"


@dataclass
class Reduction:
    """Layer constants of a spin-S bond Hamiltonian as linear forms in its couplings.

    ``patterns`` maps canonical patterns to forms; ``constant`` is the
    configuration-independent part of the bond energy.
    """

    spec: ClusterSpec
    patterns: dict[Pattern, Form]
    constant: Form

    def labelled(self) -> dict[str, Form]:
        return {pattern_label(k): v for k, v in sorted(self.patterns.items())}

    def layer_forms(self) -> dict[str, Form]:
        """The 19 named forms; only defined for ``p = 2, M = 3``."""
        if (self.spec.p, self.spec.M) != (2, 3):
            raise DomainError("named layer constants exist only for p=2, M=3")
        named = self.labelled()
        return {name: named.get(name, {}) for name in LAYER_NAMES}

    def bond_energy(self, values: Mapping[str, Fraction], d_i: Sequence[HalfInt], d_j: Sequence[HalfInt]) -> Fraction:
        """Evaluate the layered bond energy (without the constant) at digit vectors."""
        xi = [HalfInt.of(v).value for v in d_i]
        xj = [HalfInt.of(v).value for v in d_j]

        def mono(x, e):
            out = Fraction(1)
            for v, k in zip(x, e):
                out *= v**k
            return out

        total = Fraction(0)
        for (e, f), form in self.patterns.items():
            c = evaluate_form(form, values)
            if not c:
                continue
            term = mono(xi, e) * mono(xj, f)
            if e != f:
                term += mono(xi, f) * mono(xj, e)
            total += c * term
        return total


def evaluate_form(form: Mapping[str, Fraction], values: Mapping[str, Fraction]) -> Fraction:
    return sum((c * values.get(sym, 0) for sym, c in form.items()), Fraction(0))


def derive_reduction(spec: ClusterSpec, limit: int = DEFAULT_DERIVE_LIMIT) -> Reduction:
    """Expand the symbolic up-down symmetric spin-S bond energy in layer spins.

    Every ``J_ab`` and every ``gamma*h_2k`` is an independent symbol.
    """
    if spec.size > limit:
        raise LimitExceeded(f"p**M = {spec.size} exceeds derivation limit {limit}")
    two_s = spec.size - 1
    powers = site_powers(spec, two_s)
    ordered: dict = {}
    for a, b in coupling_pairs(two_s):
        sym = j_name(a, b)
        pa, pb = powers[a], powers[b]
        for e, ca in pa.items():
            for f, cb in pb.items():
                _form_add(ordered, (e, f), sym, ca * cb / 2)
                _form_add(ordered, (f, e), sym, ca * cb / 2)
    zero = (0,) * spec.M
    for k in field_powers(two_s):
        sym = field_symbol(k)
        for e, c in powers[k].items():
            _form_add(ordered, (e, zero), sym, c / 2)
            _form_add(ordered, (zero, e), sym, c / 2)

    patterns = {}
    constant: Form = {}
    for (e, f), form in ordered.items():
        form = {s: v for s, v in form.items() if v}
        if not form:
            continue
        if e == zero and f == zero:
            constant = form
            continue
        key = _canonical(e, f)
        if key == (e, f):
            patterns[key] = form
    return Reduction(spec, dict(sorted(patterns.items())), constant)


# ---------------------------------------------------------------------------
# the hard-coded spin-7/2 reduction and its exhaustive check


def reduce_couplings_7_2(c: SpinCouplings) -> LayerCouplings:
    if c.two_s != 7:
        raise DomainError("the three-layer reduction needs spin-7/2 couplings")
    vals = c.symbol_values()
    return LayerCouplings.from_names({name: evaluate_form(form, vals) for name, form in LAYER_FORMS.items()})


@lru_cache(maxsize=None)
def _spin_features(two_s: int):
    """Integer feature matrix of the spin bond energy over all ordered site pairs.

    ``energy * 2**(2*two_s + 1) == sum_k coupling_k * row[k]`` where the
    couplings are ``J_ab`` then ``gamma*h_2k`` in :func:`coupling_pairs` order.
    """
    top = 2 * two_s
    pairs = coupling_pairs(two_s)
    powers = field_powers(two_s)
    doubled = range(-two_s, two_s + 1, 2)
    rows = []
    for di in doubled:
        for dj in doubled:
            row = [(di**a * dj**b + di**b * dj**a) * 2 ** (top - a - b) for a, b in pairs]
            row += [(di**k + dj**k) * 2 ** (top - k) for k in powers]
            rows.append(row)
    return rows, 2 ** (top + 1)


@lru_cache(maxsize=None)
def _layer_features():
    """Integer features of the 19 named layer terms, scaled by ``2**6``."""
    spec = ClusterSpec(2, 3)
    feats = []
    for si in spec.eigenvalues():
        for sj in spec.eigenvalues():
            di = [0] + [v.doubled for v in decompose_spin(spec, si)]
            dj = [0] + [v.doubled for v in decompose_spin(spec, sj)]
            row = {}
            for a in (1, 2, 3):
                row[f"K{a}{a}"] = 16 * di[a] * dj[a]
            for a, b in _PAIRS:
                row[f"K{a}{b}"] = 16 * (di[a] * dj[b] + di[b] * dj[a])
                row[f"K{b}{a}"] = 16 * (di[a] * di[b] + dj[a] * dj[b])
                row[f"R{a}{b}"] = 4 * di[a] * dj[a] * di[b] * dj[b]
            for a in (1, 2, 3):
                b, c = (x for x in (1, 2, 3) if x != a)
                row[f"R{a}{b}{c}"] = 4 * di[a] * dj[a] * (di[b] * dj[c] + dj[b] * di[c])
                row[f"R{a}{c}{b}"] = 4 * di[a] * dj[a] * (di[b] * di[c] + dj[b] * dj[c])
            row["R"] = di[1] * di[2] * di[3] * dj[1] * dj[2] * dj[3]
            feats.append([row[n] for n in LAYER_NAMES])
    return feats, 64


def _integer_weights(values: Sequence[Fraction]) -> tuple[list[int], int]:
    den = 1
    for v in values:
        den = den * v.denominator // math.gcd(den, v.denominator)
    return [int(v * den) for v in values], den


class EquivalenceResult(NamedTuple):
    ok: bool
    offset: Optional[Fraction]
    violation: Optional[tuple[HalfInt, HalfInt, Fraction]] = None


def equivalence_check(c: SpinCouplings, k: LayerCouplings) -> EquivalenceResult:
    """Compare both bond energies on all 64 x 64 ordered bond configurations.

    On success ``offset`` is the common value of ``spin - layers``.  On failure
    ``violation`` holds the first pair ``(s_i, s_j)`` whose difference departs
    from the one at ``(-7/2, -7/2)``, together with that difference.
    """
    if c.two_s != 7:
        raise DomainError("equivalence_check needs spin-7/2 couplings")
    sv = c.symbol_values()
    spin_coeffs = [sv[j_name(*ab)] for ab in coupling_pairs(7)] + [sv[field_symbol(q)] for q in field_powers(7)]
    cw, cden = _integer_weights(spin_coeffs)
    kw, kden = _integer_weights(list(k.names().values()))
    sf, sscale = _spin_features(7)
    lf, lscale = _layer_features()
    A = cden * sscale
    B = kden * lscale
    first = None
    eig = range(-7, 8, 2)
    for idx, (srow, lrow) in enumerate(zip(sf, lf)):
        es = sum(x * y for x, y in zip(cw, srow))
        el = sum(x * y for x, y in zip(kw, lrow))
        diff = es * B - el * A  # (spin - layers) * A * B
        if first is None:
            first = diff
        elif diff != first:
            si, sj = divmod(idx, 8)
            return EquivalenceResult(
                False, None, (HalfInt(eig[si]), HalfInt(eig[sj]), Fraction(diff, A * B))
            )
    return EquivalenceResult(True, Fraction(first, A * B))


# ---------------------------------------------------------------------------
# constrained couplings


def _spin_symbols() -> list[str]:
    return [j_name(*ab) for ab in coupling_pairs(7)] + [field_symbol(q) for q in field_powers(7)]


def _difference(a: str, b: str) -> Form:
    out = dict(LAYER_FORMS[a])
    for s, v in LAYER_FORMS[b].items():
        out[s] = out.get(s, 0) - v
    return out


_MULTISPIN_AND_CROSS = ["R", "R12", "R13", "R23", "R123", "R213", "R312", "R132", "R231", "R321", "K12", "K13", "K23"]


def _solve(conditions: list[Form], fixed: Mapping[str, Fraction]) -> dict[str, Fraction]:
    unknowns = [s for s in _spin_symbols() if s not in fixed]
    A, b = [], []
    for form in conditions:
        A.append([form.get(u, 0) for u in unknowns])
        b.append(-sum((form.get(s, 0) * v for s, v in fixed.items()), Fraction(0)))
    x = linear_solve(A, b)
    out = dict(fixed)
    out.update(zip(unknowns, x))
    return out


def _to_couplings(solution: Mapping[str, Fraction], gamma: int) -> SpinCouplings:
    values = {}
    for sym, v in solution.items():
        if sym.startswith("gamma*"):
            values[sym[len("gamma*"):]] = v / gamma
        else:
            values[sym] = v
    return SpinCouplings.from_names(values, gamma=gamma)


def _check_closure(c: SpinCouplings, zero: Sequence[str], equal: Sequence[Sequence[str]]) -> LayerCouplings:
    k = reduce_couplings_7_2(c)
    named = k.names()
    if any(named[n] for n in zero) or any(len({named[n] for n in grp}) != 1 for grp in equal):
        raise Inconsistent("constrained couplings do not satisfy the defining conditions")
    if not equivalence_check(c, k).ok:
        raise Inconsistent("constrained couplings fail the bond-energy equivalence")
    return k


class PeriodicSolution(NamedTuple):
    couplings: SpinCouplings
    K1: Fraction
    K2: Fraction


class FreeSolution(NamedTuple):
    couplings: SpinCouplings
    K1: Fraction
    K3: Fraction


class ExactSolution(NamedTuple):
    couplings: SpinCouplings
    K11: Fraction
    K22: Fraction
    K33: Fraction


def solve_periodic_constraints(J77: RationalLike, h6: RationalLike, gamma: int = 4) -> PeriodicSolution:
    """Couplings whose layered form is three identical layers with equal glue on all pairs.

    Returns ``K1`` (the common intra-layer coupling) and ``K2`` (the common glue
    per unit ``gamma``).
    """
    J77, h6 = as_fraction(J77), as_fraction(h6)
    conds = [LAYER_FORMS[n] for n in _MULTISPIN_AND_CROSS]
    conds += [_difference("K11", "K22"), _difference("K22", "K33")]
    conds += [_difference("K21", "K32"), _difference("K32", "K31")]
    sol = _solve(conds, {"J77": J77, "gamma*h6": gamma * h6})
    c = _to_couplings(sol, gamma)
    k = _check_closure(c, _MULTISPIN_AND_CROSS, [("K11", "K22", "K33"), ("K21", "K32", "K31")])
    return PeriodicSolution(c, k.K[1, 1], k.K[2, 1] / gamma)


def solve_free_constraints(J77: RationalLike, h6: RationalLike, gamma: int = 4) -> FreeSolution:
    """As :func:`solve_periodic_constraints` but with glue only between layers 1-2 and 2-3."""
    J77, h6 = as_fraction(J77), as_fraction(h6)
    conds = [LAYER_FORMS[n] for n in _MULTISPIN_AND_CROSS]
    conds += [_difference("K11", "K22"), _difference("K22", "K33")]
    conds += [_difference("K21", "K32"), LAYER_FORMS["K31"]]
    sol = _solve(conds, {"J77": J77, "gamma*h6": gamma * h6})
    c = _to_couplings(sol, gamma)
    k = _check_closure(c, _MULTISPIN_AND_CROSS + ["K31"], [("K11", "K22", "K33"), ("K21", "K32")])
    return FreeSolution(c, k.K[1, 1], k.K[2, 1] / gamma)


def solve_exact_case(J55: RationalLike, J57: RationalLike, J77: RationalLike, gamma: int = 4) -> ExactSolution:
    """Couplings that decouple the layers completely (no glue, no multi-spin terms)."""
    fixed = {"J55": as_fraction(J55), "J57": as_fraction(J57), "J77": as_fraction(J77)}
    zero = _MULTISPIN_AND_CROSS + ["K21", "K31", "K32"]
    sol = _solve([LAYER_FORMS[n] for n in zero], fixed)
    c = _to_couplings(sol, gamma)
    k = _check_closure(c, zero, [])
    return ExactSolution(c, k.K[1, 1], k.K[2, 2], k.K[3, 3])
