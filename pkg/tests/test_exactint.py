from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cpnmahowald.errors import NoSolution, NotASublattice
from cpnmahowald.exactint import (
    INFINITE,
    Lattice,
    hnf,
    kernel_lattice,
    lattice_index,
    saturate,
    snf,
    solve_integral,
)

small = st.integers(-20, 20)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=1, max_size=max_rows)
    )


def test_hnf_examples():
    assert hnf([[2, 1], [0, 1]]) == ((2, 0), (0, 1))
    assert hnf([[1, 0], [0, 1]]) == ((1, 0), (0, 1))
    assert hnf([[0, 0], [0, 0]]) == ()


def test_kernel_examples():
    assert kernel_lattice([[1, -1], [-1, 1]]).basis == ((1, 1),)
    assert kernel_lattice([[1, 0], [0, 1]]).rank == 0
    assert kernel_lattice([[0, 0], [0, 0]]) == Lattice.full(2)


def test_index_examples():
    z2 = Lattice.full(2)
    assert lattice_index(Lattice.span([[2, 0], [0, 2]], 2), z2) == 4
    assert lattice_index(z2, z2) == 1
    assert lattice_index(Lattice.span([[2, 0]], 2), z2) is INFINITE
    with pytest.raises(NotASublattice):
        lattice_index(z2, Lattice.span([[2, 0], [0, 2]], 2))


def test_solve_examples():
    assert solve_integral([[8, 0], [4, 2]], [4, 2]) == ((0, 1), True)
    c, ok = solve_integral([[8, 0], [8, 4]], [4, 2])
    assert c == (0, Fraction(1, 2)) and not ok
    assert solve_integral([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [7, -3, 5]) == ((7, -3, 5), True)
    with pytest.raises(NoSolution):
        solve_integral([[1, 0]], [0, 1])


def test_snf_diagonal():
    s = snf([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert s.diagonal == (2, 6, 12)


@given(matrices())
def test_hnf_idempotent_and_same_span(m):
    h = hnf(m)
    assert hnf(h) == h
    n = len(m[0])
    assert Lattice.span(m, n) == Lattice.span(list(h) + list(m), n)
    for row in m:
        assert row in Lattice(n, h) or not any(row)


@given(matrices())
def test_snf_is_equivalent(m):
    s = snf(m)
    u, v = s.left, s.right
    rows, cols = len(m), len(m[0])
    um = [[sum(u[i][k] * m[k][j] for k in range(rows)) for j in range(cols)] for i in range(rows)]
    d = [[sum(um[i][k] * v[k][j] for k in range(cols)) for j in range(cols)] for i in range(rows)]
    for i in range(rows):
        for j in range(cols):
            want = s.diagonal[i] if i == j and i < len(s.diagonal) else 0
            assert d[i][j] == want
    for a, b in zip(s.diagonal, s.diagonal[1:]):
        assert b % a == 0


@given(matrices())
def test_kernel_is_saturated_and_annihilates(m):
    k = kernel_lattice(m)
    assert k.is_saturated()
    for v in k.basis:
        assert all(sum(a * b for a, b in zip(v, col)) == 0 for col in zip(*m))


@given(matrices(max_rows=3, max_cols=3), st.integers(1, 5))
def test_saturation_contains_divided_vectors(m, c):
    n = len(m[0])
    sat = saturate(m, n)
    for row in m:
        if any(row):
            assert [c * x for x in row] in sat


@settings(max_examples=60)
@given(st.lists(st.integers(1, 6), min_size=2, max_size=2), st.lists(st.integers(1, 6), min_size=2, max_size=2))
def test_index_is_multiplicative(a, b):
    top = Lattice.full(2)
    mid = Lattice.span([[a[0], 0], [0, a[1]]], 2)
    low = Lattice.span([[a[0] * b[0], 0], [0, a[1] * b[1]]], 2)
    assert lattice_index(low, top) == lattice_index(low, mid) * lattice_index(mid, top)


@given(st.lists(small, min_size=3, max_size=3))
def test_solve_roundtrip(c):
    basis = [[1, 2, 0], [0, 3, 1], [1, 0, 5]]
    target = [sum(c[i] * basis[i][j] for i in range(3)) for j in range(3)]
    sol, ok = solve_integral(basis, target)
    assert ok and list(sol) == c


def test_infinite_is_singleton():
    assert type(INFINITE)() is INFINITE
