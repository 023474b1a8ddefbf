import pytest
from hypothesis import given, strategies as st

from cpnmahowald.burnside import (
    BurnsideElement,
    augmentation_ideal_basis,
    from_marks,
    geometric_fixed,
    lift_through_phi,
    multiply,
    norm_from_trivial,
    parse_orbit_notation,
    restriction,
    transfer,
)
from cpnmahowald.errors import AugmentationObstruction, LevelOutOfRange, NotInBurnsideImage
from cpnmahowald.exactint import Lattice, kernel_lattice

LEVELS = [(p, m) for p in (2, 3, 5) for m in range(0, 4)]


@st.composite
def elements(draw, pm=None):
    p, m = pm or draw(st.sampled_from(LEVELS))
    return BurnsideElement(p, m, tuple(draw(st.lists(st.integers(-30, 30), min_size=m + 1, max_size=m + 1))))


@st.composite
def pairs(draw):
    pm = draw(st.sampled_from(LEVELS))
    return draw(elements(pm)), draw(elements(pm))


def test_marks_examples():
    assert BurnsideElement.orbit(2, 3, 1).marks == (4, 4, 0, 0)
    assert BurnsideElement.z_element(3, 3, 2).marks == (0, 0, 9, 0)
    assert BurnsideElement.scalar(5, 2, 1).marks == (1, 1, 1)


def test_from_marks_examples():
    assert from_marks(2, 3, [0, 16, 4, 2]).t_coeffs == (-2, 3, 1, 2)
    with pytest.raises(NotInBurnsideImage):
        from_marks(2, 1, [1, 0])


def test_multiply_examples():
    assert multiply(BurnsideElement.orbit(2, 2, 0), BurnsideElement.orbit(2, 2, 1)) == BurnsideElement.orbit(2, 2, 0, 2)
    z1, z2 = BurnsideElement.z_element(2, 3, 1), BurnsideElement.z_element(2, 3, 2)
    assert (z1 * z2).is_zero()


def test_mackey_examples():
    assert transfer(BurnsideElement.orbit(2, 1, 0), 2) == BurnsideElement.orbit(2, 2, 0)
    assert restriction(BurnsideElement.orbit(2, 3, 1)) == BurnsideElement.orbit(2, 2, 1, 2)
    assert restriction(BurnsideElement.orbit(3, 2, 1)) == BurnsideElement.scalar(3, 1, 3)
    assert geometric_fixed(BurnsideElement.orbit(2, 3, 2)) == BurnsideElement.orbit(2, 2, 1)
    assert geometric_fixed(BurnsideElement.orbit(2, 3, 0)).is_zero()
    with pytest.raises(LevelOutOfRange):
        transfer(BurnsideElement.scalar(2, 2, 1), 1)


def test_norms():
    assert norm_from_trivial(2, 2, 2).marks == (16, 4, 2)
    assert norm_from_trivial(3, 1, 2) == BurnsideElement.scalar(3, 2, 1)
    assert norm_from_trivial(3, 0, 2).is_zero()
    # the C_p-fixed points of the Euler element of W_{p^n}
    e = from_marks(2, 3, [0, 16, 4, 2])
    assert geometric_fixed(e) == norm_from_trivial(2, 2, 2)


def test_lift_examples():
    x = BurnsideElement.orbit(2, 2, 0, 4)
    assert lift_through_phi(x).t_coeffs == (-2, 4, 0, 0)
    with pytest.raises(AugmentationObstruction) as err:
        lift_through_phi(BurnsideElement.scalar(2, 0, 1))
    assert err.value.residue == 1


def test_orbit_parser():
    assert parse_orbit_notation(2, 2, "2+[C_4/C_2]+3[C_4]").t_coeffs == (3, 1, 2)
    assert parse_orbit_notation(2, 1, "4[C_2] - 1").t_coeffs == (4, -1)
    with pytest.raises(ValueError):
        parse_orbit_notation(2, 2, "[C_8]")
    with pytest.raises(ValueError):
        parse_orbit_notation(2, 2, "")


@given(pairs())
def test_marks_are_multiplicative(pair):
    x, y = pair
    assert (x * y).marks == tuple(a * b for a, b in zip(x.marks, y.marks))
    assert (x + y).marks == tuple(a + b for a, b in zip(x.marks, y.marks))


@given(elements())
def test_basis_roundtrips(x):
    assert from_marks(x.p, x.m, x.marks) == x
    assert BurnsideElement.from_z(x.p, x.m, x.z_coeffs) == x
    for basis in ("t", "z", "marks"):
        assert BurnsideElement.from_json(x.to_json(basis)) == x
    assert parse_orbit_notation(x.p, x.m, str(x)) == x if not x.is_zero() else True


@given(st.sampled_from([(p, n) for p in (2, 3, 5) for n in range(1, 4)]), st.data())
def test_t_in_terms_of_z(pn, data):
    p, n = pn
    i = data.draw(st.integers(0, n))
    z = [0] * (n + 1)
    z[0] = p ** (n - i)
    for k in range(i + 1, n + 1):
        z[k] = -p ** (k - i - 1)
    assert BurnsideElement.from_z(p, n, z) == BurnsideElement.orbit(p, n, i)


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)])
def test_restriction_kernel_spanned_by_z(p, n):
    for i in range(n):
        # marks of res^n_i are the first i+1 marks, so the kernel is cut out by them
        rows = [[BurnsideElement.orbit(p, n, t).marks[j] for j in range(i + 1)] for t in range(n + 1)]
        ker = kernel_lattice(rows)
        z = [BurnsideElement.z_element(p, n, k).t_coeffs for k in range(i + 1, n + 1)]
        assert ker == Lattice.span(z, n + 1)


@given(elements())
def test_mackey_identities(x):
    p, m = x.p, x.m
    if m >= 1:
        assert restriction(x).marks == x.marks[:-1]
        assert geometric_fixed(x).marks == x.marks[1:]
        # Frobenius reciprocity for the transfer from the index-p subgroup
        y = BurnsideElement(p, m - 1, x.t_coeffs[:-1])
        assert transfer(y, m) * x == transfer(y * restriction(x), m)
    assert transfer(x, m) == x


@given(elements())
def test_phi_exactness(x):
    n = x.m + 1
    if x.augmentation % x.p ** n == 0:
        lifted = lift_through_phi(x)
        assert lifted.augmentation == 0 and geometric_fixed(lifted) == x
    else:
        with pytest.raises(AugmentationObstruction):
            lift_through_phi(x)


def test_augmentation_ideal_basis():
    zs = augmentation_ideal_basis(3, 2)
    assert [z.augmentation for z in zs] == [0, 0]
    assert len(zs) == 2
