"""Verification suites, shared by ``cpnmahowald verify`` and the test-suite.

A suite is split into independent cells, usually one per (p, n). Each cell
returns a list of (label, ok, detail) triples. Cells may run in worker
processes, and results are always reported in cell order, so the output is
the same with or without ``parallel``.
"""

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .burnside import (
    BurnsideElement,
    from_marks,
    geometric_fixed,
    lift_through_phi,
    norm_from_trivial,
    parse_orbit_notation,
    restriction,
    transfer,
)
from .errors import AugmentationObstruction, MisalignedBlock, NotInBurnsideImage
from .exactint import INFINITE, Lattice, kernel_lattice, lattice_index, solve_integral
from .ktheory import (
    adams_graded,
    block_identity_failures,
    chain_indices,
    closed_form_complex_basis,
    closed_form_lattice,
    closed_form_real_basis,
    fixed_point_marks,
    oracle_complex_fixed,
    quotient_structure,
    span,
    specialcase_basis,
    wide_ell_set,
)
from .mahowald import (
    degree_image,
    f_even_consistency,
    f_even_value,
    f_table,
    f_value,
    gamma_basis,
    gamma_basis_even_norm_form,
    gamma_membership,
    sign_rep_g,
    mahowald_degree,
    mahowald_invariant,
    presentation_check,
)
from .repring import (
    GroupSpec,
    RUElement,
    adams,
    bott_fixed_value,
    char_value,
    dseq_block_restriction_check,
    e_block,
    is_rational_rep,
    permutation_character,
    power_map_degrees,
    primitive_root_mod_p_squared,
    verify_adams_on_w_power,
)

PRIMES = (2, 3, 5)
SUITES = ("burnside", "repring", "oracle-vs-closed", "f-tables", "examples", "presentation", "quotients")


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def add(self, checks):
        for label, ok, detail in checks:
            self.checked += 1
            if not ok:
                self.failures.append({"check": label, "detail": str(detail)})

    def to_json(self) -> dict:
        return {"suite": self.name, "checked": self.checked, "ok": self.ok, "failures": self.failures}


def full_k_range(p: int, n: int) -> int:
    return 6 * p ** (n - 1) * (p - 1)


def sweep_cells(max_n: int) -> list[tuple[int, int]]:
    """(p, n) for p in {2, 3, 5} and n <= max_n, plus n = max_n + 1 at p = 2."""
    cells = [(p, n) for p in PRIMES for n in range(1, max_n + 1)]
    if max_n >= 1:
        cells.append((2, max_n + 1))
    return sorted(cells)


def _k_max(p: int, n: int, max_k: int | None) -> int:
    full = full_k_range(p, n)
    return full if max_k is None else min(full, max_k)


# ---------------------------------------------------------------- burnside

def _random_element(rng: random.Random, p: int, m: int, bound: int = 20) -> BurnsideElement:
    return BurnsideElement(p, m, tuple(rng.randint(-bound, bound) for _ in range(m + 1)))


def _z0(p: int, m: int, i: int) -> BurnsideElement:
    """z_{m,i}, with the convention z_{m,0} = p t_{m,0}."""
    if i == 0:
        return BurnsideElement.orbit(p, m, 0, p)
    return BurnsideElement.z_element(p, m, i)


def burnside_cell(p: int, m: int, samples: int = 200, seed: int = 0) -> list:
    rng = random.Random(f"{seed}:{p}:{m}")
    out = []
    one = BurnsideElement.scalar(p, m, 1)
    t = [BurnsideElement.orbit(p, m, i) for i in range(m + 1)]
    z = [None] + [BurnsideElement.z_element(p, m, i) for i in range(1, m + 1)]

    for i in range(m + 1):
        rebuilt = one * p ** (m - i)
        for k in range(i + 1, m + 1):
            rebuilt = rebuilt - p ** (k - i - 1) * z[k]
        out.append((f"t_{m},{i} in the z-basis", rebuilt == t[i], rebuilt))
        if i >= 1:
            out.append((f"z_{m},{i} = p t - t", z[i] == p * t[i] - t[i - 1], z[i]))
        for j in range(i, m + 1):
            out.append((f"t_{i} t_{j}", t[i] * t[j] == p ** (m - j) * t[i], t[i] * t[j]))
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            want = p ** (m + 1 - i) * z[i] if i == j else 0 * one
            out.append((f"z_{i} z_{j}", z[i] * z[j] == want, z[i] * z[j]))

    # Mackey structure on both bases
    for i in range(m + 1):
        out.append((f"tr t_{m},{i}", transfer(t[i], m + 1) == BurnsideElement.orbit(p, m + 1, i), None))
        out.append((f"tr z_{m},{i}", transfer(_z0(p, m, i), m + 1) == _z0(p, m + 1, i), None))
        if m >= 1 and i < m:
            out.append((f"res t_{m},{i}", restriction(t[i]) == p * BurnsideElement.orbit(p, m - 1, i), None))
            out.append((f"res z_{m},{i}", restriction(_z0(p, m, i)) == p * _z0(p, m - 1, i), None))
        if m >= 1 and i >= 1:
            out.append((f"Phi t_{m},{i}", geometric_fixed(t[i]) == BurnsideElement.orbit(p, m - 1, i - 1), None))
            out.append((f"Phi z_{m},{i}", geometric_fixed(_z0(p, m, i)) == _z0(p, m - 1, i - 1), None))
    if m >= 1:
        out.append(("Phi t_0 = 0", geometric_fixed(t[0]).is_zero(), None))

    # z_{m,i+1}, ..., z_{m,m} span the kernel of restriction to C_{p^i}
    for i in range(m + 1):
        cols = [[p ** (m - s) if j <= s else 0 for j in range(i + 1)] for s in range(m + 1)]
        ker = kernel_lattice(cols, m + 1)
        want = Lattice.span([z[s].t_coeffs for s in range(i + 1, m + 1)], m + 1)
        out.append((f"ker res^{m}_{i} = z-span", ker == want, ker.basis))

    for _ in range(samples):
        x = _random_element(rng, p, m)
        y = _random_element(rng, p, m)
        xy = x * y
        out.append(("marks multiplicative", xy.marks == tuple(a * b for a, b in zip(x.marks, y.marks)), (x, y)))
        out.append(("marks round trip", from_marks(p, m, x.marks) == x, x))
        out.append(("z round trip", BurnsideElement.from_z(p, m, x.z_coeffs) == x, x))
        for basis in ("t", "z", "marks"):
            out.append((f"json {basis}", BurnsideElement.from_json(x.to_json(basis)) == x, x))
        tx = transfer(x, m + 1)
        want = tuple(p * v for v in x.marks) + (0,)
        out.append(("transfer marks", tx.marks == want, x))
        if m >= 1:
            out.append(("res multiplicative", restriction(xy) == restriction(x) * restriction(y), (x, y)))
            out.append(("Phi multiplicative", geometric_fixed(xy) == geometric_fixed(x) * geometric_fixed(y), (x, y)))
        # exactness: I(C_{p^{m+1}}) -> A(C_{p^m}) -> Z/p^{m+1}
        zc = [0] + [rng.randint(-20, 20) for _ in range(m + 1)]
        big = BurnsideElement.from_z(p, m + 1, zc)
        phi = geometric_fixed(big)
        out.append(("Phi of I lands in Gamma_1", phi.augmentation % p ** (m + 1) == 0, big))
        out.append(("lift inverts Phi on I", lift_through_phi(phi) == big, big))
        try:
            lifted = lift_through_phi(x)
            ok = x.augmentation % p ** (m + 1) == 0 and lifted.augmentation == 0 and geometric_fixed(lifted) == x
        except AugmentationObstruction as err:
            ok = x.augmentation % p ** (m + 1) != 0 and err.residue == x.augmentation % p ** (m + 1)
        out.append(("lift obstruction", ok, x))
    return out


# ----------------------------------------------------------------- repring

def repring_cell(p: int, n: int, samples: int = 50, seed: int = 0) -> list:
    rng = random.Random(f"{seed}:{p}:{n}:ru")
    g = GroupSpec(p, n)
    N = g.order
    out = []
    ell0 = primitive_root_mod_p_squared(p)

    def rand(bound=9):
        return RUElement(g, tuple(rng.randint(-bound, bound) for _ in range(N)))

    out.append(("(1-L) rho = 0", (1 - RUElement.monomial(g, 1)) * RUElement.regular(g) == RUElement.zero(g), None))
    for j in range(n + 1):
        v = char_value(RUElement.regular(g), j)
        out.append((f"char of rho at level {j}", v.is_rational() and v.rational_value == (N if j == 0 else 0), v))
    for _ in range(samples):
        x, y = rand(), rand()
        ell = rng.choice([l for l in range(-N, 2 * N) if l % p])
        out.append(("adams multiplicative", adams(x * y, ell) == adams(x, ell) * adams(y, ell), ell))
        out.append(("adams periodic", adams(x, ell) == adams(x, ell + N), ell))
        for j in range(n + 1):
            out.append((f"char_value ring map at {j}",
                        char_value(x * y, j) == char_value(x, j) * char_value(y, j)
                        and char_value(x + y, j) == char_value(x, j) + char_value(y, j), j))
        # rationality <=> fixed by one primitive root
        r = sum((rng.randint(-5, 5) * permutation_character(g, i) for i in range(n + 1)), RUElement.zero(g))
        for cand in (x, r):
            out.append(("rational iff psi-fixed", is_rational_rep(cand) == (adams(cand, ell0) == cand), cand))
    for t in range(1, 2 * N + 1):
        blk = e_block(g, 0, 2 * t)
        out.append((f"psi^-1 fixes e_(0,{2 * t})", adams(blk, -1) == blk, t))
    for i in range(1, n + 1):
        width = p ** (i - 1) * (p - 1)
        for a in range(0, 4 * N, width):
            out.append((f"d-block ({a},{a + width}] restricts to W_{p ** i}",
                        dseq_block_restriction_check(p, n, i, a, width), a))
    for c in (1, 2, 3):
        for j in range(1, n + 1):
            out.append((f"bott value c={c} j={j}", bott_fixed_value(p, n, c, j) == p ** (c * p ** (n - j)), None))
        for ell in [l for l in range(2, 12) if l % p][:4]:
            out.append((f"Adams on W^{c}, ell={ell}", verify_adams_on_w_power(p, n, ell, c), ell))
    out.append(("power map at p^n", power_map_degrees(N, p, n) == (N,) + (0,) * n, None))
    d = next(x for x in range(2, 10) if x % p)
    out.append(("power map prime to p", power_map_degrees(d, p, n) == (d,) + (1,) * n, None))
    checked, failures = block_identity_failures(g)
    out.append((f"Euler block identities ({checked} instances)", not failures, failures[:5]))
    return out


# ------------------------------------------------------- oracle-vs-closed

def oracle_cell(p: int, n: int, max_k: int | None = None) -> list:
    g = GroupSpec(p, n)
    k_max = _k_max(p, n, max_k)
    out = []
    for k in range(1, k_max + 1):
        oracle = oracle_complex_fixed(g, k).lattice
        closed = closed_form_lattice(g, k).lattice
        out.append((f"M_{k} oracle = closed form (p={p}, n={n})", oracle == closed,
                    {"oracle": oracle.basis, "closed": closed.basis}))
        if p == 2:
            real = closed_form_real_basis(g, k)
            inside = all(y.vector in oracle for y in real)
            fixed = all(adams_graded(y, -1).vector == y.vector for y in real)
            out.append((f"real M_{k} inside complex M_{k} (n={n})", inside and fixed, None))
    for j, index in chain_indices(g, k_max).items():
        out.append((f"a^(1/2): M_{j} -> M_{j - 1} onto (p={p}, n={n})", index == 1, index))
    for kp in range(1, k_max // (2 * (p - 1)) + 1):
        ok = span(specialcase_basis(g, kp), g) == closed_form_lattice(g, 2 * kp * (p - 1)).lattice
        out.append((f"z-form basis of M_{2 * kp * (p - 1)}", ok, kp))
    if g.order <= 25:
        wide = wide_ell_set(p, n)
        for k in range(0, min(k_max, 4 * p ** (n - 1) * (p - 1)) + 1):
            ok = oracle_complex_fixed(g, k).lattice == oracle_complex_fixed(g, k, wide).lattice
            out.append((f"M_{k} stable under more Adams operations (p={p}, n={n})", ok, None))
    return out


# ---------------------------------------------------------------- f-tables

def ftables_cell(p: int, n: int, max_k: int | None = None) -> list:
    g = GroupSpec(p, n)
    k_max = _k_max(p, n, max_k)
    out = []
    for k in range(1, k_max + 1):
        table = f_table(p, n, k)
        basis = closed_form_real_basis(g, k)
        marks = [fixed_point_marks(y) for y in basis]
        want = [table.column(s) for s in range(1, n + 1)]
        out.append((f"generator marks = f_(.,{k})^({p},{n})", marks == want, {"marks": marks, "f": want}))
        tri = all(table.values[s][i] == 0 for s in range(n) for i in range(s + 1, n))
        diag = all(_is_p_power(table.values[s][s], p) for s in range(n))
        out.append((f"f_(.,{k}) triangular with p-power diagonal", tri and diag, table.values))
        try:
            gb = gamma_basis(p, n, k)
            ok = [x.marks for x in gb] == want
        except NotInBurnsideImage as err:
            ok, gb = False, err
        out.append((f"Gamma_{k} basis is integral", ok, gb))
    for kp in range(1, k_max // 2 + 1):
        out.append((f"even form k'={kp}", all(
            f_even_value(p, n, s, kp, i) == f_value(p, n, s, 2 * kp, i)
            for s in range(1, n + 1) for i in range(1, n + 1)), kp))
        out.append((f"f even consistency k'={kp}", f_even_consistency(p, n, kp), kp))
        norm_form = gamma_basis_even_norm_form(p, n, kp)
        out.append((f"transfer-of-norm basis k'={kp}", norm_form == gamma_basis(p, n, 2 * kp), norm_form))
    if n == 1 and p == 2:
        for k in range(1, 33):
            out.append((f"sign-rep table g({k})", f_value(2, 1, 1, k, 1) == sign_rep_g(k), k))
        for kp in range(1, 17):
            out.append((f"degree image k'={kp}", degree_image(2, 1, kp, 1) == sign_rep_g(2 * kp), kp))
    if n == 1 and p > 2:
        for kp in range(1, 41):
            out.append((f"C_p image k'={kp}", degree_image(p, 1, kp, 1) == p ** (1 + kp // (p - 1)), kp))
    return out


def _is_p_power(x: int, p: int) -> bool:
    while x > 1 and x % p == 0:
        x //= p
    return x == 1


# ---------------------------------------------------------------- examples

# (n, element of A(C_{2^{n-1}}), expected degree, expected family, coefficient, modulus)
EX_C2_POWERS = [
    (1, "2", 1, "eta", None, None),
    (2, "2[C_2]", 1, "eta", None, None),
    (2, "4", 1, "eta", None, None),
    (3, "2[C_4]", 1, "eta", None, None),
    (3, "8", 1, "eta", None, None),
    (1, "4", 2, "eta_squared", None, None),
    (2, "2+[C_2]", 2, "eta_squared", None, None),
    (2, "4+2[C_2]", 3, "j_generator", 2, 8),
    (2, "4[C_2]", 3, "j_generator", -2, 8),
    (3, "4[C_4/C_2]+2[C_4]", 3, "j_generator", 2, 8),
    (3, "4+6[C_4/C_2]", 3, "j_generator", 6, 8),
    (3, "2[C_4/C_2]+[C_4]", 3, "j_generator", 1, 8),
    (3, "2+[C_4/C_2]+3[C_4]", 7, "j_generator", 2, 16),
    # printed as -nu in the source table; the case formula gives -2
    (3, "4[C_4]", 3, "j_generator", -2, 8),
]


def check_mahowald_example(n, text, degree, family, coeff, modulus) -> tuple[bool, object]:
    x = parse_orbit_notation(2, n - 1, text)
    r = mahowald_invariant(x)
    ok = r.degree == degree and r.j_part.family == family
    if coeff is not None:
        ok = ok and r.j_part.modulus == modulus and (r.j_part.coefficient - coeff) % modulus == 0
    return ok, r.to_json()


def examples_cell() -> list:
    out = []
    for row in EX_C2_POWERS:
        ok, detail = check_mahowald_example(*row)
        out.append((f"M_(C_{2 ** row[0]})({row[1]})", ok, detail))
    for p in (3, 5, 7):
        for n in (1, 2, 3):
            for x in (BurnsideElement.scalar(p, n - 1, p ** n), BurnsideElement.orbit(p, n - 1, 0, p)):
                r = mahowald_invariant(x)
                ok = (r.degree == 2 * (p - 1) - 1 and r.j_part.family == "j_generator"
                      and r.j_part.modulus == p and r.j_part.coefficient % p == 1)
                out.append((f"M_(C_{p}^{n})({x}) = j", ok, r.to_json()))
    out.append(("Gamma_2(C_2) basis", [b.marks for b in gamma_basis(2, 2, 2)] == [(8, 0), (4, 2)], None))
    out.append(("Gamma_3(C_2) basis", [b.marks for b in gamma_basis(2, 2, 3)] == [(8, 0), (8, 4)], None))
    x = parse_orbit_notation(2, 1, "2+[C_2]")
    out.append(("2+[C_2] in Gamma_2", gamma_membership(x, 2) == (0, 1), None))
    out.append(("2+[C_2] not in Gamma_3", gamma_membership(x, 3) is None, None))
    out.append(("2[C_4/C_2]+[C_4] in Gamma_3",
                gamma_membership(parse_orbit_notation(2, 2, "2[C_4/C_2]+[C_4]"), 3) == (0, 1, 0), None))
    out.append(("degree of 4 at C_2", mahowald_degree(BurnsideElement.scalar(2, 0, 4)) == 2, None))
    out.append(("degree of 8 at C_8", mahowald_degree(BurnsideElement.scalar(2, 2, 8)) == 1, None))
    out.append(("coefficients of 8 at C_8", gamma_membership(BurnsideElement.scalar(2, 2, 8), 1) == (-5, -2, 4), None))
    out.append(("degree of 2+[C_4/C_2]+3[C_4]",
                mahowald_degree(parse_orbit_notation(2, 2, "2+[C_4/C_2]+3[C_4]")) == 7, None))
    out.append(("f_(2,3)^(2,2)", [f_value(2, 2, 2, 3, i) for i in (1, 2)] == [8, 4], None))
    out.append(("f_(1,3)^(2,1)", f_value(2, 1, 1, 3, 1) == 8, None))
    out.append(("f_(3,3)^(2,3)", [f_value(2, 3, 3, 3, i) for i in (1, 2, 3)] == [16, 4, 2], None))
    out.append(("e_W8 from marks", from_marks(2, 3, [0, 16, 4, 2]).t_coeffs == (-2, 3, 1, 2), None))
    out.append(("lift of 4[C_4]", lift_through_phi(BurnsideElement.orbit(2, 2, 0, 4)).t_coeffs == (-2, 4, 0, 0), None))
    out.append(("Phi(e_W8) = N(2)", geometric_fixed(from_marks(2, 3, [0, 16, 4, 2])) == norm_from_trivial(2, 2, 2), None))
    c, integral = solve_integral([[8, 0], [4, 2]], [4, 2])
    out.append(("solve (8,0),(4,2)", integral and tuple(c) == (0, 1), c))
    c, integral = solve_integral([[8, 0], [8, 4]], [4, 2])
    out.append(("solve (8,0),(8,4)", not integral, c))
    g = GroupSpec(2, 3)
    marks = [fixed_point_marks(y) for y in closed_form_complex_basis(g, 3)]
    out.append(("C_8 generators in degree 3", marks == [(16, 0, 0), (8, 4, 0), (16, 4, 2)], marks))
    g1 = GroupSpec(2, 1)
    out.append(("C_2 degree 2 oracle", oracle_complex_fixed(g1, 2, (3,)).lattice.basis == ((1, -1),), None))
    out.append(("lattice index 2Z^2", lattice_index(Lattice.span([[2, 0], [0, 2]], 2), Lattice.full(2)) == 4, None))
    out.append(("lattice index rank drop", lattice_index(Lattice.span([[2, 0]], 2), Lattice.full(2)) is INFINITE, None))
    try:
        dseq_block_restriction_check(2, 2, 2, 1, 2)
        ok = False
    except MisalignedBlock:
        ok = not dseq_block_restriction_check(2, 2, 2, 1, 2, require_alignment=False)
    out.append(("unaligned d-block rejected", ok, None))
    return out


# ------------------------------------------------------------ presentation

def presentation_cell(p: int, n: int, c_max: int = 8) -> list:
    rep = presentation_check(p, n, c_max)
    return [(f"presentation p={p} n={n} ({rep.checked} relations)", rep.ok, rep.failures[:5])]


# --------------------------------------------------------------- quotients

def rescritical_degrees(p: int, n: int, k_max: int) -> list[int]:
    """Jump degrees 2p^{n-1}(p-1)c - 1 <= k_max where M_k/M_{k+1} should be Z/p^n.
    At p = 2 the description needs 8 | k + 1."""
    step = 2 * p ** (n - 1) * (p - 1)
    return [k for k in range(step - 1, k_max + 1, step) if p > 2 or (k + 1) % 8 == 0]


def quotients_cell(p: int, n: int, max_k: int | None = None) -> list:
    g = GroupSpec(p, n)
    k_max = _k_max(p, n, max_k)
    out = []
    want = tuple((p ** (n - s),) for s in range(1, n + 1))
    for k in rescritical_degrees(p, n, k_max):
        q = quotient_structure(g, k)
        out.append((f"M_{k}/M_{k + 1} for C_{p}^{n}", q.invariants == (p ** n,) and q.generator_images == want, q))
    if (p, n) == (2, 3):
        for k in range(3, k_max + 1, 8):
            q = quotient_structure(g, k)
            ok = q.invariants == (8,) and q.generator_images == ((-2,), (1,), (0,))
            out.append((f"M_{k}/M_{k + 1} for C_8", ok, q))
    for k in range(1, k_max):
        if (k + 1) % (2 * (p - 1)):
            q = quotient_structure(g, k, real=False)
            out.append((f"complex M_{k}/M_{k + 1} trivial (p={p}, n={n})", q.invariants == (), q))
    return out


# ------------------------------------------------------------------ driver

def _tasks(name: str, max_n: int, max_k: int | None, samples: int):
    if name == "burnside":
        return [(burnside_cell, (p, m, samples)) for p in PRIMES for m in range(0, max_n + 1)]
    if name == "repring":
        return [(repring_cell, (p, n)) for p, n in sweep_cells(max_n)]
    if name == "oracle-vs-closed":
        return [(oracle_cell, (p, n, max_k)) for p, n in sweep_cells(max_n)]
    if name == "f-tables":
        return [(ftables_cell, (p, n, max_k)) for p, n in sweep_cells(max_n)]
    if name == "examples":
        return [(examples_cell, ())]
    if name == "presentation":
        return [(presentation_cell, (p, n)) for p in (2, 3) for n in range(1, max_n + 1)]
    if name == "quotients":
        return [(quotients_cell, (p, n, max_k)) for p, n in sweep_cells(max_n)]
    raise KeyError(name)


def _call(task):
    fn, args = task
    return fn(*args)


def run_suite(name: str, max_n: int = 3, max_k: int | None = None, parallel: bool = False,
              samples: int = 200) -> list[SuiteResult]:
    names = SUITES if name == "all" else (name,)
    for n in names:
        if n not in SUITES:
            raise KeyError(n)
    results = []
    for n in names:
        tasks = _tasks(n, max_n, max_k, samples)
        if parallel and len(tasks) > 1:
            with ProcessPoolExecutor() as pool:
                chunks = list(pool.map(_call, tasks))
        else:
            chunks = [_call(t) for t in tasks]
        res = SuiteResult(n)
        for chunk in chunks:
            res.add(chunk)
        results.append(res)
    return results
