import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spinbijection.bijection import ClusterSpec, decompose_spin
from spinbijection.errors import DomainError, IndexOutOfRange, LimitExceeded, ParityMismatch
from spinbijection.partition import (
    ChainSpec,
    LinearForm,
    SymbolicZ,
    f_matrix,
    f_matrix_general,
    free_energy,
    gap_factors,
    log_partition_closed_form,
    log_transfer_matrix_partition,
    partition_closed_form,
    partition_symbolic,
    single_particle_energy,
    transfer_matrix_partition,
)

moderate = st.floats(-3, 3, allow_nan=False)


def _brute_energy(M, s):
    """Chain energy from the most-significant-first digit sequence of s."""
    digits = [d.value for d in reversed(decompose_spin(ClusterSpec(2, M), s))]
    a = sum(digits[m] * digits[(m + 1) % M] for m in range(M))
    b = sum(digits)
    return LinearForm(a, b)


@pytest.mark.parametrize("M", [2, 3, 5, 8])
def test_single_particle_energy_is_chain_energy(M):
    chain = ChainSpec(M)
    for s in chain.cluster.eigenvalues():
        assert single_particle_energy(s, chain) == _brute_energy(M, s)


@given(st.integers(2, 12))
def test_multiplicities_match_domain_wall_count(M):
    # periodic chain with k up spins in w up-domains: (M/w) C(k-1, w-1) C(M-k-1, w-1) states
    expected = {(Fraction(M, 4), Fraction(M, 2)): 1, (Fraction(M, 4), Fraction(-M, 2)): 1}
    for k in range(1, M):
        for w in range(1, min(k, M - k) + 1):
            n = M * math.comb(k - 1, w - 1) * math.comb(M - k - 1, w - 1) // w
            key = (Fraction(M - 4 * w, 4), Fraction(2 * k - M, 2))
            expected[key] = expected.get(key, 0) + n
    z = partition_symbolic(ChainSpec(M))
    assert z.as_dict() == expected
    assert z.total == 2**M


@given(st.integers(2, 10))
def test_field_flip_symmetry(M):
    z = partition_symbolic(ChainSpec(M))
    assert z.flip_field() == z


@given(st.integers(2, 10))
def test_symbolic_text_roundtrip(M):
    z = partition_symbolic(ChainSpec(M))
    assert SymbolicZ.parse(str(z)) == z


def test_symbolic_z2_text():
    assert str(partition_symbolic(ChainSpec(2))) == (
        "2 * exp(-1/2*J + 0*h)\n1 * exp(1/2*J + -1*h)\n1 * exp(1/2*J + 1*h)\n"
    )


def test_symbolic_parse_rejects():
    with pytest.raises(ValueError):
        SymbolicZ.parse("2 * exp(1/2*J)")
    with pytest.raises(ValueError):
        SymbolicZ.from_counts({LinearForm(0, 0): -1})


@given(st.integers(2, 20), moderate, moderate)
def test_closed_form_equals_transfer_matrix(M, J, h):
    chain = ChainSpec(M)
    assert math.isclose(
        log_partition_closed_form(chain, J, h), log_transfer_matrix_partition(chain, J, h), rel_tol=1e-12, abs_tol=1e-12
    )


@given(st.integers(2, 12), moderate, moderate)
def test_symbolic_evaluation_equals_closed_form(M, J, h):
    chain = ChainSpec(M)
    assert math.isclose(partition_symbolic(chain).evaluate(J, h), partition_closed_form(chain, J, h), rel_tol=1e-12)


def test_zero_couplings_count_states():
    assert partition_closed_form(ChainSpec(7), 0.0, 0.0) == pytest.approx(128, rel=1e-15)


def test_overflow_is_reported():
    with pytest.raises(OverflowError):
        partition_closed_form(ChainSpec(20), 200.0, 0.0)
    with pytest.raises(OverflowError):
        transfer_matrix_partition(ChainSpec(20), 200.0, 0.0)
    # both saturated states survive at h = 0
    assert log_partition_closed_form(ChainSpec(20), 200.0, 0.0) == pytest.approx(1000 + math.log(2))


@given(moderate)
def test_free_energy_zero_field(J):
    assert abs(free_energy(J, 0.0) - math.log(2 * math.cosh(J / 4))) <= 1e-14


@given(moderate, moderate)
def test_free_energy_is_even_in_h(J, h):
    assert free_energy(J, h) == free_energy(J, -h)


def test_free_energy_is_large_m_limit():
    J, h = 0.8, 0.4
    chain = ChainSpec(20)
    assert abs(log_partition_closed_form(chain, J, h) / 20 - free_energy(J, h)) < 1e-6


def test_gap_factors():
    g = gap_factors(ChainSpec(6))
    assert g.a_plus == LinearForm(Fraction(1, 4), Fraction(1, 2))
    assert g.a_minus == LinearForm(Fraction(1, 4), Fraction(-1, 2))
    assert g.delta_e_plus == LinearForm(1, 1)
    assert g.delta_e_minus == LinearForm(1, -1)
    assert g.b_plus + g.b_minus == LinearForm(Fraction(1, 2), 0)
    assert g.b_product == LinearForm(Fraction(-1, 2), 0)
    # next-largest momenta carry one flipped spin
    assert g.c_plus.scale(6) == LinearForm(Fraction(1, 2), 2)


def test_f_matrix_diagonal_and_off_diagonal():
    F = f_matrix(ChainSpec(3))
    assert F.shape == (8, 8)
    assert [F[j, j] for j in range(8)] == F.diagonal()
    dense = F.dense()
    spec = ClusterSpec(2, 3)
    for j, s in enumerate(spec.eigenvalues()):
        for jp, sp in enumerate(spec.eigenvalues()):
            x = [d.value for d in reversed(decompose_spin(spec, s))]
            y = [d.value for d in reversed(decompose_spin(spec, sp))]
            a = sum(x[m] * y[(m + 1) % 3] for m in range(3))
            b = sum(x[m] + y[(m + 1) % 3] for m in range(3)) / 2
            assert dense[j][jp] == LinearForm(a, b)
    with pytest.raises(IndexOutOfRange):
        F[8, 0]
    with pytest.raises(LimitExceeded):
        f_matrix(ChainSpec(11)).dense()


def test_f_matrix_large_chain_is_lazy():
    F = f_matrix(ChainSpec(20))
    assert F.size == 2**20
    assert F[2**20 - 1, 2**20 - 1] == LinearForm(5, 10)


def test_general_f_matrix_field_normalization():
    spec = ClusterSpec(2, 4)
    ring = [(m, m % 4 + 1, 1) for m in range(1, 5)]
    # gamma = 4 reproduces the chain field weight 1/2; gamma = 2 doubles it
    assert f_matrix_general(ring, 4, spec).diagonal() == f_matrix(ChainSpec(4)).diagonal()
    doubled = f_matrix_general(ring, 2, spec).diagonal()
    assert [d.b for d in doubled] == [2 * d.b for d in f_matrix(ChainSpec(4)).diagonal()]
    with pytest.raises(IndexOutOfRange):
        f_matrix_general([(1, 5, 1)], 2, spec)
    with pytest.raises(DomainError):
        f_matrix_general(ring, 0, spec)


def test_chain_validation():
    with pytest.raises(DomainError):
        ChainSpec(1)
    with pytest.raises(LimitExceeded):
        partition_symbolic(ChainSpec(21))
    with pytest.raises(LimitExceeded):
        f_matrix(ChainSpec(21))
    assert partition_symbolic(ChainSpec(8, limit=8)).total == 256
    with pytest.raises(DomainError):
        ChainSpec(4, boundary="free")
    with pytest.raises(ParityMismatch):
        single_particle_energy(0, ChainSpec(3))


def test_linear_form_text():
    f = LinearForm("1/4", -2)
    assert str(f) == "1/4*J + -2*h"
    assert f(4.0, 1.0) == -1.0


def test_numeric_forms_are_not_size_limited():
    # closed form and transfer matrix never enumerate, so large M is fine
    for J in (-2.0, -0.5, 0.0, 1.0, 2.0):
        for h in (-2.0, 0.3, 2.0):
            chain = ChainSpec(50)
            assert math.isclose(
                partition_closed_form(chain, J, h), transfer_matrix_partition(chain, J, h), rel_tol=1e-12
            )
    assert single_particle_energy(Fraction(2**64 - 1, 2), ChainSpec(64)) == LinearForm(16, 32)
    assert gap_factors(ChainSpec(64)).delta_e_plus == LinearForm(1, 1)


@pytest.mark.parametrize(
    "M, s, form",
    [
        (2, Fraction(3, 2), LinearForm(Fraction(1, 2), 1)),
        (3, Fraction(7, 2), LinearForm(Fraction(3, 4), Fraction(3, 2))),
        (2, Fraction(1, 2), LinearForm(Fraction(-1, 2), 0)),
        (2, Fraction(-1, 2), LinearForm(Fraction(-1, 2), 0)),
    ],
)
def test_single_particle_energy_values(M, s, form):
    assert single_particle_energy(s, ChainSpec(M)) == form


@pytest.mark.parametrize("M", [2, 3, 4])
def test_lagrange_double_sum_collapses_to_diagonal(M):
    from spinbijection.bijection import lagrange_basis

    chain = ChainSpec(M)
    F = f_matrix(chain).dense()
    S = chain.S.value
    n = 2**M
    for s in chain.cluster.eigenvalues():
        A = [lagrange_basis(S, j)(s.value) for j in range(n)]
        a = sum(A[j] * A[jp] * F[j][jp].a for j in range(n) for jp in range(n))
        b = sum(A[j] * A[jp] * F[j][jp].b for j in range(n) for jp in range(n))
        assert LinearForm(a, b) == single_particle_energy(s, chain)


def test_f_matrix_corners():
    F = f_matrix(ChainSpec(2))
    assert F[3, 3] == LinearForm(Fraction(1, 2), 1)
    for M in (2, 5, 9):
        assert f_matrix(ChainSpec(M))[0, 0] == LinearForm(Fraction(M, 4), Fraction(-M, 2))


def test_general_f_matrix_single_bond_and_empty():
    spec = ClusterSpec(2, 2)
    F = f_matrix_general([(1, 2, 1)], 2, spec).dense()
    vals = [[Fraction(-1, 2), Fraction(-1, 2)], [Fraction(-1, 2), Fraction(1, 2)], [Fraction(1, 2), Fraction(-1, 2)], [Fraction(1, 2), Fraction(1, 2)]]
    for j in range(4):
        for jp in range(4):
            assert F[j][jp].a == vals[j][0] * vals[jp][1]
    zero = f_matrix_general([], 2, spec).dense()
    assert all(f == LinearForm() for row in zero for f in row)


def test_gap_factor_next_momenta():
    g = gap_factors(ChainSpec(4))
    assert g.c_plus == LinearForm(0, Fraction(1, 4))
    for M in (3, 7, 10):
        g = gap_factors(ChainSpec(M))
        assert g.c_plus == LinearForm(Fraction(M - 4, 4 * M), Fraction(M - 2, 2 * M))
        assert g.c_minus == LinearForm(Fraction(M - 4, 4 * M), -Fraction(M - 2, 2 * M))


def test_transfer_matrix_values():
    assert transfer_matrix_partition(ChainSpec(2), 0.0, 0.0) == pytest.approx(4, rel=1e-15)
    assert transfer_matrix_partition(ChainSpec(2), 2.0, 1.0) == pytest.approx(
        math.exp(2) + 2 * math.exp(-1) + 1, rel=1e-14
    )
    assert partition_closed_form(ChainSpec(3), 1.0, 0.0) == pytest.approx(
        2 * math.exp(0.75) + 6 * math.exp(-0.25), rel=1e-14
    )
    chain = ChainSpec(12)
    assert partition_closed_form(chain, 1.3, 0.7) == pytest.approx(partition_symbolic(chain).evaluate(1.3, 0.7), rel=1e-12)


def test_free_energy_values():
    for h in (-1.0, 0.0, 2.5):
        assert free_energy(0.0, h) == pytest.approx(math.log(2 * math.cosh(h / 2)), rel=1e-15)
    errs = [abs(log_partition_closed_form(ChainSpec(M), 1.0, 1.0) / M - free_energy(1.0, 1.0)) for M in (10, 20, 40, 64)]
    assert errs == sorted(errs, reverse=True)
