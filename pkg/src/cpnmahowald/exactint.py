"""Exact integer linear algebra: Hermite and Smith normal forms, lattices.

Matrices are tuples of row tuples of Python ints. Python integers are
arbitrary precision, so nothing here can overflow. The only outside help is
python-flint's rational nullspace, used as the first stage of
:func:`kernel_lattice`; everything downstream of it (saturation, canonical
forms, indices) is done here.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import flint

from .errors import NoSolution, NotASublattice

IntMatrix = tuple[tuple[int, ...], ...]


class _Infinite:
    """Index of a sublattice of strictly smaller rank."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __str__(self):
        return "infinite"


INFINITE = _Infinite()


def as_matrix(m: Sequence[Sequence[int]]) -> IntMatrix:
    rows = tuple(tuple(int(x) for x in row) for row in m)
    if rows and len({len(r) for r in rows}) != 1:
        raise ValueError("matrix rows have different lengths")
    return rows


def transpose(m: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _hnf_rows(rows: list[list[int]], ncols: int) -> list[list[int]]:
    r = 0
    for j in range(ncols):
        if r == len(rows):
            break
        sel = next((i for i in range(r, len(rows)) if rows[i][j]), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        for i in range(r + 1, len(rows)):
            b = rows[i][j]
            if not b:
                continue
            a = rows[r][j]
            if b % a == 0:
                q = b // a
                rows[i] = [y - q * x for x, y in zip(rows[r], rows[i])]
                continue
            g, x, y = egcd(a, b)
            ag, bg = a // g, b // g
            top, bot = rows[r], rows[i]
            rows[r] = [x * u + y * v for u, v in zip(top, bot)]
            rows[i] = [ag * v - bg * u for u, v in zip(top, bot)]
        piv = rows[r][j]
        if not piv:
            continue
        if piv < 0:
            rows[r] = [-x for x in rows[r]]
            piv = -piv
        for i in range(r):
            q = rows[i][j] // piv
            if q:
                rows[i] = [u - q * v for u, v in zip(rows[i], rows[r])]
        r += 1
    return rows[:r]


def hnf(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Row-style Hermite normal form with zero rows removed.

    Pivots are positive and entries above a pivot lie in [0, pivot).

    >>> hnf([[2, 1], [0, 1]])
    ((2, 0), (0, 1))
    >>> hnf([[0, 0], [0, 0]])
    ()
    """
    m = as_matrix(m)
    if not m:
        return ()
    ncols = len(m[0])
    return tuple(tuple(r) for r in _hnf_rows([list(r) for r in m], ncols))


@dataclass(frozen=True)
class SmithForm:
    """U * m * V = D with D diagonal; ``diagonal`` lists the nonzero invariants
    d_1 | d_2 | ... and ``left``/``right`` are the unimodular U and V."""

    diagonal: tuple[int, ...]
    left: IntMatrix
    right: IntMatrix


def snf(m: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    a = [list(r) for r in as_matrix(m)]
    nr = len(a)
    nc = len(a[0]) if a else (ncols or 0)
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def row_op(i, k, q):  # row_i -= q * row_k
        a[i] = [x - q * y for x, y in zip(a[i], a[k])]
        u[i] = [x - q * y for x, y in zip(u[i], u[k])]

    def col_op(j, k, q):  # col_j -= q * col_k
        for row in a:
            row[j] -= q * row[k]
        for row in v:
            row[j] -= q * row[k]

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    diag = []
    for t in range(min(nr, nc)):
        while True:
            best = None
            for i in range(t, nr):
                for j in range(t, nc):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                q = a[i][t] // piv
                if q:
                    row_op(i, t, q)
                dirty |= a[i][t] != 0
            for j in range(t + 1, nc):
                q = a[t][j] // piv
                if q:
                    col_op(j, t, q)
                dirty |= a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % piv),
                None,
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
            u[t] = [x + y for x, y in zip(u[t], u[bad])]
        if a and t < nr and t < nc and a[t][t]:
            if a[t][t] < 0:
                a[t] = [-x for x in a[t]]
                u[t] = [-x for x in u[t]]
            diag.append(a[t][t])
        else:
            break
    return SmithForm(tuple(diag), as_matrix(u), as_matrix(v))


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^ambient_rank stored by its HNF basis.

    Two lattices are equal exactly when their stored forms are identical.
    """

    ambient_rank: int
    basis: IntMatrix

    @classmethod
    def span(cls, generators: Sequence[Sequence[int]], ambient_rank: int) -> "Lattice":
        gens = as_matrix(generators)
        if any(len(g) != ambient_rank for g in gens):
            raise ValueError("generator length differs from ambient rank")
        return cls(ambient_rank, hnf(gens))

    @classmethod
    def full(cls, ambient_rank: int) -> "Lattice":
        return cls(ambient_rank, tuple(
            tuple(int(i == j) for j in range(ambient_rank)) for i in range(ambient_rank)
        ))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, vec: Sequence[int]) -> tuple[int, ...] | None:
        """Integer coordinates of vec in the stored basis, or None if vec is
        not in the lattice."""
        vec = list(vec)
        coords = []
        for row in self.basis:
            j = next(i for i, x in enumerate(row) if x)
            q, r = divmod(vec[j], row[j])
            if r:
                return None
            coords.append(q)
            if q:
                vec = [x - q * y for x, y in zip(vec, row)]
        if any(vec):
            return None
        return tuple(coords)

    def __contains__(self, vec) -> bool:
        return self.coordinates(vec) is not None

    def is_saturated(self) -> bool:
        return saturate(self.basis, self.ambient_rank) == self


def saturate(generators: Sequence[Sequence[int]], ambient_rank: int) -> Lattice:
    """The lattice of integer vectors lying in the rational span of generators."""
    b = hnf(generators)
    if not b:
        return Lattice(ambient_rank, ())
    r = len(b)
    # Row HNF of the transpose gives B = H^T * (rows of a unimodular matrix),
    # so H^{-T} B is a primitive basis of the same rational span.
    h = hnf(transpose(b))
    sat = []
    for i in range(r):
        row = list(b[i])
        for j in range(i):
            c = h[j][i]
            if c:
                row = [x - c * y for x, y in zip(row, sat[j])]
        d = h[i][i]
        assert all(x % d == 0 for x in row)
        sat.append([x // d for x in row])
    return Lattice.span(sat, ambient_rank)


def kernel_lattice(m: Sequence[Sequence[int]], nrows: int | None = None) -> Lattice:
    """Saturated lattice of integer row vectors v with v * m = 0.

    >>> kernel_lattice([[1, -1], [-1, 1]]).basis
    ((1, 1),)
    """
    m = as_matrix(m)
    r = len(m) if m else (nrows or 0)
    c = len(m[0]) if m else 0
    if c == 0:
        return Lattice.full(r)
    mt = flint.fmpz_mat(c, r, [x for col in zip(*m) for x in col])
    x, nullity = mt.nullspace()
    vecs = [[int(x[i, j]) for i in range(r)] for j in range(nullity)]
    for v in vecs:
        assert all(sum(a * b for a, b in zip(v, col)) == 0 for col in zip(*m))
    return saturate(vecs, r)


def solve_rational(basis: Sequence[Sequence[int]], target: Sequence[int]) -> tuple[Fraction, ...]:
    """Unique rational c with c * basis = target; basis rows must be independent."""
    basis = as_matrix(basis)
    r = len(basis)
    ncol = len(target)
    # columns of the augmented system basis^T c = target
    rows = [[Fraction(basis[i][j]) for i in range(r)] + [Fraction(target[j])] for j in range(ncol)]
    piv_cols = []
    pr = 0
    for col in range(r):
        sel = next((i for i in range(pr, ncol) if rows[i][col]), None)
        if sel is None:
            raise ValueError("basis rows are linearly dependent")
        rows[pr], rows[sel] = rows[sel], rows[pr]
        inv = 1 / rows[pr][col]
        rows[pr] = [x * inv for x in rows[pr]]
        for i in range(ncol):
            if i != pr and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[pr])]
        piv_cols.append(col)
        pr += 1
    if any(rows[i][r] for i in range(pr, ncol)):
        raise NoSolution("target is outside the rational row span")
    return tuple(rows[i][r] for i in range(r))


def solve_integral(basis: Sequence[Sequence[int]], target: Sequence[int]) -> tuple[tuple[Fraction, ...], bool]:
    """Solve c * basis = target over Q and report whether c is integral.

    >>> solve_integral([[8, 0], [8, 4]], [4, 2])
    ((Fraction(0, 1), Fraction(1, 2)), False)
    """
    c = solve_rational(basis, target)
    return c, all(x.denominator == 1 for x in c)


def lattice_index(sub: Lattice, sup: Lattice):
    """[sup : sub] as an int, or INFINITE if the ranks differ."""
    if sub.ambient_rank != sup.ambient_rank:
        raise NotASublattice("ambient ranks differ")
    coords = []
    for row in sub.basis:
        c = sup.coordinates(row)
        if c is None:
            raise NotASublattice(f"{row} is not in the larger lattice")
        coords.append(c)
    if sub.rank != sup.rank:
        return INFINITE
    index = 1
    for d in snf(coords, sup.rank).diagonal:
        index *= d
    return index
