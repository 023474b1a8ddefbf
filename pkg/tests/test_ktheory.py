import pytest
from hypothesis import given, settings, strategies as st

from cpnmahowald.burnside import BurnsideElement
from cpnmahowald.exactint import Lattice
from cpnmahowald.ktheory import (
    GradedKUClass,
    a_half,
    a_power,
    adams_graded,
    base_index,
    block_identity_failures,
    chain_indices,
    closed_form_complex_basis,
    closed_form_lattice,
    closed_form_real_basis,
    default_ell_set,
    fixed_point_marks,
    graded_from_burnside,
    half_step_index,
    oracle_complex_fixed,
    quotient_structure,
    real_generator_data_p2,
    span,
    specialcase_basis,
    wide_ell_set,
)
from cpnmahowald.repring import DSequence, GroupSpec, RUElement, adams

C2, C4, C8 = GroupSpec(2, 1), GroupSpec(2, 2), GroupSpec(2, 3)


def cls(group, degree, coeffs):
    return GradedKUClass(group, degree, RUElement(group, tuple(coeffs)))


def test_base_index():
    assert [base_index(k) for k in range(7)] == [0, 0, 1, 1, 2, 2, 3]


def test_odd_payload_must_be_augmentation_zero():
    with pytest.raises(ValueError):
        cls(C2, 1, (1, 0))
    with pytest.raises(ValueError):
        cls(C2, -1, (0, 0))


def test_a_half_conventions():
    x = cls(C4, 4, (1, 2, 0, -1))
    odd = a_half(x)
    d2 = DSequence(2)[2]
    assert odd.degree == 3 and odd.payload == x.payload.times_one_minus(d2)
    even = a_half(odd)
    assert even.degree == 2 and even.payload == odd.payload
    y = cls(C2, 1, (1, -1))
    assert a_half(y) == cls(C2, 0, (1, -1))
    assert a_power(x, 4).degree == 0
    with pytest.raises(ValueError):
        a_half(cls(C2, 0, (1, 0)))


def test_json_roundtrip():
    x = cls(C8, 5, (1, -1, 0, 0, 0, 0, 3, -3))
    assert GradedKUClass.from_json(x.to_json()) == x
    assert 3 * x == cls(C8, 5, (3, -3, 0, 0, 0, 0, 9, -9))


def test_adams_on_degree_two_of_c2():
    # psi^3 beta_L = (1 + L + L^2) beta_L = (2 + L) beta_L over C_2
    x = cls(C2, 2, (1, 0))
    assert adams_graded(x, 3).payload.coeffs == (2, 1)
    with pytest.raises(ValueError):
        adams_graded(x, 2)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([C2, C4, C8, GroupSpec(3, 1), GroupSpec(3, 2)]), st.integers(1, 12), st.data())
def test_adams_commutes_with_half_step(group, k, data):
    ell = data.draw(st.sampled_from([e for e in (3, 5, 7, -1, 2) if e % group.p]))
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=group.order, max_size=group.order))
    if k % 2:
        coeffs[0] -= sum(coeffs)
    x = cls(group, k, coeffs)
    assert adams_graded(a_half(x), ell) == a_half(adams_graded(x, ell))


def test_oracle_examples():
    assert oracle_complex_fixed(C2, 2, (3,)).lattice.basis == ((1, -1),)
    assert oracle_complex_fixed(C2, 2).lattice.basis == ((1, -1),)
    assert oracle_complex_fixed(C2, 1).lattice.basis == ((1, -1),)
    assert oracle_complex_fixed(C4, 4, (1,)).lattice == Lattice.full(4)
    with pytest.raises(ValueError):
        oracle_complex_fixed(C2, 2, (2,))


def test_default_ell_sets():
    assert default_ell_set(2) == (3, 5)
    assert default_ell_set(3) == (2,)
    assert default_ell_set(5) == (2,)


def test_single_three_is_not_enough_at_c8():
    # (Z/8)^x is not cyclic, so psi^3 alone leaves extra fixed classes
    narrow = oracle_complex_fixed(C8, 2, (3,)).lattice
    assert narrow.rank > oracle_complex_fixed(C8, 2).lattice.rank


@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)])
def test_oracle_matches_closed_form(p, n):
    g = GroupSpec(p, n)
    for k in range(1, 6 * p ** (n - 1) * (p - 1) + 1):
        assert oracle_complex_fixed(g, k).lattice == closed_form_lattice(g, k).lattice, k


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2), (5, 1)])
def test_wide_ell_stabilization(p, n):
    g = GroupSpec(p, n)
    for k in range(1, 2 * p ** (n - 1) * (p - 1) + 3):
        assert oracle_complex_fixed(g, k, wide_ell_set(p, n)).lattice == oracle_complex_fixed(g, k).lattice


def test_complex_basis_example():
    (y,) = closed_form_complex_basis(C2, 2)
    assert y.degree == 2 and y.payload.coeffs == (1, -1)


def test_real_basis_shapes():
    # k = 8k'-4 at C_2: one generator, a^4 beta_{4k'}
    assert real_generator_data_p2(1, 4) == [(1, 1, 4, 4)]
    # k = 8k'-5 at C_4: a^{1/2} t_{2,1} beta_{4k'-2} and 2 a^{1/2} beta_{4k'-2}
    assert real_generator_data_p2(2, 3) == [(1, 1, 2, 1), (2, 2, 2, 1)]
    assert len(closed_form_real_basis(C8, 3)) == 3
    g = GroupSpec(3, 2)
    for k in range(1, 20):
        assert closed_form_real_basis(g, k) == closed_form_complex_basis(g, k)


def test_real_marks_example():
    marks = [fixed_point_marks(y) for y in closed_form_real_basis(C8, 3)]
    assert marks == [(16, 0, 0), (8, 4, 0), (16, 4, 2)]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_real_basis_inside_complex_and_conjugation_fixed(n):
    g = GroupSpec(2, n)
    for k in range(1, 6 * 2 ** (n - 1) + 1):
        complex_lattice = closed_form_lattice(g, k).lattice
        for y in closed_form_real_basis(g, k):
            assert y.vector in complex_lattice
            assert adams_graded(y, -1) == y


def test_half_step_index_and_chains():
    assert half_step_index(GroupSpec(3, 1), 3) == 1
    assert set(chain_indices(GroupSpec(3, 2), 24).values()) == {1}
    assert set(chain_indices(C4, 12).values()) == {1}


def test_quotient_examples():
    q = quotient_structure(GroupSpec(3, 2), 2 * 3 * 2 - 1)
    assert q.invariants == (9,) and q.generator_images == ((3,), (1,))
    q = quotient_structure(C8, 3)
    assert q.invariants == (8,) and q.generator_images == ((-2,), (1,), (0,))
    q = quotient_structure(GroupSpec(3, 1), 2)
    assert q.invariants == () and q.order == 1


def test_specialcase_basis_spans_fixed_lattice():
    for p, n in [(2, 2), (2, 3), (3, 2)]:
        g = GroupSpec(p, n)
        for kp in range(1, 9):
            basis = specialcase_basis(g, kp)
            assert span(basis, g) == closed_form_lattice(g, 2 * kp * (p - 1)).lattice


def test_graded_from_burnside():
    x = graded_from_burnside(C4, BurnsideElement.orbit(2, 2, 1), 2)
    assert x.payload.coeffs == (1, 0, 1, 0)
    with pytest.raises(ValueError):
        graded_from_burnside(C4, BurnsideElement.orbit(2, 1, 1), 2)


def test_block_identities_odd_primes():
    for p, n in [(3, 1), (3, 2), (5, 1)]:
        checked, failures = block_identity_failures(GroupSpec(p, n))
        assert checked > 0 and failures == []


def test_block_identities_two_primary_congruence():
    # the exact e*t formula holds, but at p = 2 the coefficient of z_{n,i-1}
    # is 1, so e*t is not z_{n,i} modulo 2
    checked, failures = block_identity_failures(C4)
    assert failures and all("mod p" in f for f in failures)
    assert block_identity_failures(C2)[1] == []
