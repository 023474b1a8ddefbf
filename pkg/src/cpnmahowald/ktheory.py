"""Spoke-graded equivariant K-theory of C_{p^n} and its Adams-fixed lattices.

A class of even degree 2m is payload * beta_m, where beta_m is the Bott class
of V_m = L^{d_1} + ... + L^{d_m}. A class of odd degree 2m-1 is stored by its
(injective) image under a^{1/2} in degree 2m-2, so its payload is an
augmentation-zero element of RU. With this convention:

* a^{1/2} from degree 2m to 2m-1 multiplies the payload by (1 - L^{d_m});
* a^{1/2} from degree 2m-1 to 2m-2 leaves the payload unchanged.

Everything is therefore a vector in Z^{p^n}, and the fixed lattices M_k are
honest sublattices of it.
"""

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .burnside import BurnsideElement
from .exactint import Lattice, kernel_lattice, lattice_index, snf
from .repring import (
    DSequence,
    GroupSpec,
    RUElement,
    adams,
    bott_multiplier,
    char_value,
    e_block,
    permutation_character,
    primitive_root_mod_p_squared,
)


def base_index(degree: int) -> int:
    """Bott index of the even-degree representative: m for 2m and m-1 for 2m-1."""
    return degree // 2 if degree % 2 == 0 else (degree - 1) // 2


@dataclass(frozen=True)
class GradedKUClass:
    group: GroupSpec
    degree: int
    payload: RUElement

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("negative degrees are not supported")
        if self.payload.group != self.group:
            raise ValueError("payload lives in the wrong representation ring")
        if self.degree % 2 and self.payload.augmentation != 0:
            raise ValueError("odd-degree payloads must have augmentation 0")

    @property
    def vector(self) -> tuple[int, ...]:
        return self.payload.coeffs

    def to_json(self) -> dict:
        return {
            "p": self.group.p,
            "n": self.group.n,
            "degree": self.degree,
            "payload": [str(c) for c in self.payload.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GradedKUClass":
        group = GroupSpec(int(data["p"]), int(data["n"]))
        return cls(group, int(data["degree"]), RUElement(group, tuple(int(c) for c in data["payload"])))

    def __mul__(self, c: int) -> "GradedKUClass":
        return GradedKUClass(self.group, self.degree, self.payload * c)

    __rmul__ = __mul__


def a_half(x: GradedKUClass) -> GradedKUClass:
    """The one-cell map a^{1/2}: degree k -> k-1."""
    if x.degree < 1:
        raise ValueError("a^{1/2} needs a class of positive degree")
    if x.degree % 2 == 0:
        d = DSequence(x.group.p)[x.degree // 2]
        return GradedKUClass(x.group, x.degree - 1, x.payload.times_one_minus(d))
    return GradedKUClass(x.group, x.degree - 1, x.payload)


def a_power(x: GradedKUClass, steps: int) -> GradedKUClass:
    for _ in range(steps):
        x = a_half(x)
    return x


def push_to_zero(x: GradedKUClass) -> RUElement:
    """a^{k/2} x as an element of RU = degree 0."""
    return x.payload * e_block(x.group, 0, base_index(x.degree))


def fixed_point_marks(x: GradedKUClass) -> tuple[int, ...]:
    """(phi_{n,i}(a^{k/2} x))_{i=1..n}, computed by cyclotomic evaluation."""
    y = push_to_zero(x)
    out = []
    for i in range(1, x.group.n + 1):
        v = char_value(y, i)
        if not v.is_rational():
            raise ValueError(f"a^(k/2) x is not a rational representation (level {i}: {v})")
        out.append(v.rational_value)
    return tuple(out)


_MULT_CACHE: dict[tuple[GroupSpec, int], list[RUElement]] = {}


def bott_prefix_multiplier(group: GroupSpec, m: int, ell: int) -> RUElement:
    """prod_{i<=m} u(d_i, ell), the unit by which psi^ell scales beta_m."""
    prefix = _MULT_CACHE.setdefault((group, ell), [RUElement.scalar(group, 1)])
    ds = DSequence(group.p)
    while len(prefix) <= m:
        i = len(prefix)
        prefix.append(prefix[-1] * bott_multiplier(group, ds[i], ell))
    return prefix[m]


def adams_graded(x: GradedKUClass, ell: int) -> GradedKUClass:
    if gcd(ell, x.group.p) != 1:
        raise ValueError("ell must be prime to p")
    m = base_index(x.degree)
    out = adams(x.payload, ell) * bott_prefix_multiplier(x.group, m, ell)
    if x.degree % 2:
        # The odd group embeds in degree 2m-2 through a^{1/2}; the action there
        # restricts correctly only if psi^ell commutes with the half step.
        d = DSequence(x.group.p)[m + 1]
        one = RUElement.scalar(x.group, 1)
        lhs = adams(one.times_one_minus(d), ell)
        rhs = bott_multiplier(x.group, d, ell).times_one_minus(d)
        if lhs != rhs or out.augmentation != 0:
            raise AssertionError("Adams action does not commute with a^{1/2}")
    return GradedKUClass(x.group, x.degree, out)


def default_ell_set(p: int) -> tuple[int, ...]:
    """psi^3 alone has too large a fixed lattice once (Z/2^n)^x stops being
    cyclic, so p = 2 uses {3, 5}."""
    if p == 2:
        return (3, 5)
    return (primitive_root_mod_p_squared(p),)


def wide_ell_set(p: int, n: int) -> tuple[int, ...]:
    return tuple(ell for ell in range(2, 2 * p ** n + 2) if ell % p)


@dataclass(frozen=True)
class FixedLattice:
    group: GroupSpec
    degree: int
    lattice: Lattice
    provenance: str

    def to_json(self) -> dict:
        return {
            "p": self.group.p,
            "n": self.group.n,
            "degree": self.degree,
            "provenance": self.provenance,
            "basis": [[str(c) for c in row] for row in self.lattice.basis],
        }


def oracle_complex_fixed(group: GroupSpec, k: int, ell_set: Iterable[int] | None = None) -> FixedLattice:
    """Brute force: the saturated lattice of payloads fixed by every psi^ell.

    Degree 0 and odd degrees also impose augmentation 0.
    """
    if k < 0:
        raise ValueError("negative degrees are not supported")
    ells = tuple(ell_set) if ell_set is not None else default_ell_set(group.p)
    N = group.order
    m = base_index(k)
    columns: list[list[int]] = []
    for ell in ells:
        if gcd(ell, group.p) != 1:
            raise ValueError(f"ell = {ell} is not prime to p")
        mu = bott_prefix_multiplier(group, m, ell).coeffs
        # row a of (A - I): psi^ell(L^a) * mu - L^a
        rows = []
        for a in range(N):
            row = [0] * N
            shift = ell * a
            for b, c in enumerate(mu):
                if c:
                    row[(shift + b) % N] += c
            row[a] -= 1
            rows.append(row)
        columns.extend(zip(*rows))
    if k % 2 or k == 0:
        columns.append([1] * N)
    matrix = list(zip(*columns)) if columns else [[] for _ in range(N)]
    return FixedLattice(group, k, kernel_lattice(matrix, N), "oracle")


def _materialize(group: GroupSpec, payload: RUElement, bott: int, steps: int) -> GradedKUClass:
    return a_power(GradedKUClass(group, 2 * bott, payload), steps)


def complex_generator_data(p: int, n: int, k: int) -> list[tuple[int, int, int, int]]:
    """(orbit index s, scalar, Bott index, half steps) for y_s = a^{q_s-k} t_{n,s} beta_{q_s/2}."""
    out = []
    for s in range(1, n + 1):
        width = 2 * p ** (s - 1) * (p - 1)
        q = width * (k // width + 1)
        out.append((s, 1, q // 2, q - k))
    return out


def real_generator_data_p2(n: int, k: int) -> list[tuple[int, int, int, int]]:
    """The generators of M_k for C_{2^n}, in the same encoding."""
    j = (-k) % 8 or 8
    kp = (k + j) // 8
    top = 4 * kp
    if n == 1:
        if j <= 4:
            gens = [(1, 1, top, j)]
        elif j == 5:
            gens = [(1, 1, top - 1, 3)]
        elif j == 6:
            gens = [(1, 1, top - 2, 2)]
        else:
            gens = [(1, 1, top - 3, j - 6)]
    elif n == 2:
        if j <= 4:
            gens = [(1, 1, top, j), (2, 1, top, j)]
        elif j == 5:
            gens = [(1, 1, top - 2, 1), (2, 2, top - 2, 1)]
        elif j == 6:
            gens = [(1, 1, top - 2, 2), (2, 1, top - 2, 2)]
        else:
            eps = j - 7
            gens = [(1, 1, top - 3, 1 + eps), (2, 1, top - 2, 3 + eps)]
    else:
        b = [None] + [-(-top // 2 ** (i - 1)) * 2 ** (i - 1) for i in range(1, n + 1)]
        if j <= 4:
            gens = [(i, 1, b[i], 2 * (b[i] - top) + j) for i in range(1, n + 1)]
        elif j <= 6:
            eps = j - 5
            gens = [(1, 1, top - 2, 1 + eps), (2, 1, top - 2, 1 + eps)]
            gens += [(i, 1, b[i], 2 * (b[i] - top + 2) + eps + 1) for i in range(3, n + 1)]
        else:
            eps = j - 7
            gens = [(1, 1, top - 3, 1 + eps), (2, 1, top - 2, 3 + eps)]
            gens += [(i, 1, b[i], 2 * (b[i] - top + 3) + eps + 1) for i in range(3, n + 1)]
    for _, _, bott, steps in gens:
        assert 2 * bott - steps == k
    return gens


def _build(group: GroupSpec, data) -> list[GradedKUClass]:
    return [
        _materialize(group, permutation_character(group, s) * c, bott, steps)
        for s, c, bott, steps in data
    ]


def closed_form_complex_basis(group: GroupSpec, k: int) -> list[GradedKUClass]:
    if k < 1:
        raise ValueError("k must be positive")
    return _build(group, complex_generator_data(group.p, group.n, k))


def closed_form_real_basis(group: GroupSpec, k: int) -> list[GradedKUClass]:
    if k < 1:
        raise ValueError("k must be positive")
    if group.p != 2:
        return closed_form_complex_basis(group, k)
    return _build(group, real_generator_data_p2(group.n, k))


def span(classes: Sequence[GradedKUClass], group: GroupSpec) -> Lattice:
    return Lattice.span([x.vector for x in classes], group.order)


def closed_form_lattice(group: GroupSpec, k: int, real: bool = False) -> FixedLattice:
    basis = closed_form_real_basis(group, k) if real else closed_form_complex_basis(group, k)
    return FixedLattice(group, k, span(basis, group), "closed_form_real" if real else "closed_form_complex")


def half_step_image(lattice: Lattice, group: GroupSpec, k: int) -> Lattice:
    """a^{1/2} applied to a lattice of degree-k payloads, in degree k-1."""
    rows = [a_half(GradedKUClass(group, k, RUElement(group, row))).vector for row in lattice.basis]
    return Lattice.span(rows, group.order)


def half_step_index(group: GroupSpec, k: int, ell_set=None):
    """[M_{k-1} : a^{1/2} M_k] for the brute-force complex lattices."""
    upper = oracle_complex_fixed(group, k, ell_set).lattice
    lower = oracle_complex_fixed(group, k - 1, ell_set).lattice
    return lattice_index(half_step_image(upper, group, k), lower)


@dataclass(frozen=True)
class QuotientStructure:
    """M_k / a^{1/2} M_{k+1} as a product of cyclic groups, plus the images of
    the closed-form generators of M_k in it (one coordinate per factor)."""

    invariants: tuple[int, ...]
    generator_images: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariants:
            out *= d
        return out


def _signed(x: int, m: int) -> int:
    x %= m
    return x - m if 2 * x > m else x


def quotient_structure(group: GroupSpec, k: int, real: bool | None = None) -> QuotientStructure:
    """Uses the real lattices at p = 2 and the complex ones otherwise.

    For a cyclic quotient the images are rescaled so the first generator that
    maps to a unit maps to 1, then printed as signed residues.
    """
    if real is None:
        real = group.p == 2
    basis = closed_form_real_basis(group, k) if real else closed_form_complex_basis(group, k)
    upper = closed_form_real_basis(group, k + 1) if real else closed_form_complex_basis(group, k + 1)
    rows = [list(x.vector) for x in basis]
    # coordinates of the image of M_{k+1} in the generators of M_k
    from .exactint import solve_integral

    coords = []
    for y in upper:
        c, integral = solve_integral(rows, a_half(y).vector)
        if not integral:
            raise AssertionError("a^{1/2} M_{k+1} is not inside M_k")
        coords.append([int(v) for v in c])
    form = snf(coords, len(rows))
    r = len(rows)
    diag = list(form.diagonal) + [0] * (r - len(form.diagonal))
    keep = [t for t in range(r) if diag[t] != 1]
    invariants = tuple(diag[t] for t in keep)
    images = []
    for i in range(r):
        img = []
        for t in keep:
            v = form.right[i][t]
            img.append(v % diag[t] if diag[t] else v)
        images.append(img)
    if len(keep) == 1 and invariants[0] > 1:
        mod = invariants[0]
        unit = next((img[0] for img in images if gcd(img[0], mod) == 1), None)
        if unit is not None:
            inv = pow(unit, -1, mod)
            images = [[_signed(img[0] * inv, mod)] for img in images]
    return QuotientStructure(invariants, tuple(tuple(img) for img in images))


def graded_from_burnside(group: GroupSpec, x: BurnsideElement, degree: int) -> GradedKUClass:
    if (x.p, x.m) != (group.p, group.n):
        raise ValueError("Burnside element lives over a different group")
    return GradedKUClass(group, degree, x.to_ru())


def isomorphism_chain_degrees(p: int, k_max: int) -> list[int]:
    """Degrees j <= k_max at which a^{1/2}: M_j -> M_{j-1} should be onto."""
    return [j for j in range(1, k_max + 1) if j % (2 * (p - 1))]


def chain_indices(group: GroupSpec, k_max: int, ell_set=None) -> dict[int, object]:
    """[M_{j-1} : a^{1/2} M_j] for every j in isomorphism_chain_degrees."""
    cache: dict[int, Lattice] = {}

    def lattice(k):
        if k not in cache:
            cache[k] = oracle_complex_fixed(group, k, ell_set).lattice
        return cache[k]

    return {
        j: lattice_index(half_step_image(lattice(j), group, j), lattice(j - 1))
        for j in isomorphism_chain_degrees(group.p, k_max)
    }


def specialcase_basis(group: GroupSpec, kp: int) -> list[GradedKUClass]:
    """For k' = p^{l-1} c with p not dividing c: z_{n,i} beta_{k'(p-1)} for
    i <= l, and the usual a-power generators for i > l."""
    p, n = group.p, group.n
    l = 1
    while kp % p ** l == 0:
        l += 1
    bott = kp * (p - 1)
    out = []
    for i in range(1, n + 1):
        if i <= l:
            z = BurnsideElement.z_element(p, n, i).to_ru()
            out.append(GradedKUClass(group, 2 * bott, z))
        else:
            b = p ** (i - 1) * (p - 1) * -(-kp // p ** (i - 1))
            out.append(_materialize(group, permutation_character(group, i), b, 2 * (b - bott)))
    return out


def block_identity_failures(group: GroupSpec, b_max: int | None = None) -> tuple[int, list[str]]:
    """Check, over aligned blocks with b <= b_max (default 4p^n):

    * the character of e_{a,a+B_i} at level i is p,
    * e_{a,a+cB_i} z_{n,i} = p^c z_{n,i},
    * e_{a,a+B_i} t_{n,i} = sum_{j<=i} p^{p^{i-j}+j-i-1} z_{n,j}, which is z_{n,i} mod p,

    where B_i = p^{i-1}(p-1). Returns (number checked, failure labels).
    """
    p, n = group.p, group.n
    if b_max is None:
        b_max = 4 * p ** n
    z = [None] + [BurnsideElement.z_element(p, n, i) for i in range(1, n + 1)]
    z_ru = [None] + [x.to_ru() for x in z[1:]]
    checked, failures = 0, []
    for i in range(1, n + 1):
        width = p ** (i - 1) * (p - 1)
        t = permutation_character(group, i)
        for a in range(0, b_max - width + 1, width):
            e = e_block(group, a, a + width)
            checked += 1
            v = char_value(e, i)
            if not (v.is_rational() and v.rational_value == p):
                failures.append(f"char of e_({a},{a + width}) at level {i} is {v}")
            checked += 1
            expected = BurnsideElement(p, n, (0,) * (n + 1))
            for j in range(1, i + 1):
                expected = expected + p ** (p ** (i - j) + j - i - 1) * z[j]
            if e * t != expected.to_ru():
                failures.append(f"e_({a},{a + width}) t_{n},{i} formula")
            residue = [c % p for c in (expected - z[i]).z_coeffs]
            if any(residue):
                failures.append(f"e_({a},{a + width}) t_{n},{i} is not z_{n},{i} mod p")
            ez = z_ru[i]
            for c in range(1, (b_max - a) // width + 1):
                checked += 1
                ez = ez * e_block(group, a + (c - 1) * width, a + c * width)
                if ez != z_ru[i] * p ** c:
                    failures.append(f"e_({a},{a + c * width}) z_{n},{i} != {p}^{c} z")
    return checked, failures
