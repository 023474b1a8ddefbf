"""The f-tables, the Gamma_k filtration of A(C_{p^{n-1}}) and the Mahowald
invariant engine.

An element X of A(C_{p^{n-1}}) is in Gamma_k exactly when its marks
(|X|, |X^{C_p}|, ..., |X^{C_{p^{n-2}}}|) are an integral combination of the
functions f_{1,k}, ..., f_{n,k}. Since f_{s,k}(i) = 0 for i > s, the
coefficients are forced by back-substitution from i = n down to i = 1.
"""

from dataclasses import dataclass, field
from math import gcd

from .burnside import BurnsideElement, from_marks, norm_from_trivial, transfer
from .errors import LevelOutOfRange, TheoremViolation, ZeroElement
from .repring import GroupSpec, char_value, e_block, is_prime, permutation_character


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _vp(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _two_primary_exception(n: int, s: int, k: int, i: int) -> int | None:
    l, r = divmod(k, 8)
    if s == 1 and i == 1 and n == 1:
        if r <= 1:
            return 2 ** (4 * l + 1)
        if r == 2:
            return 2 ** (4 * l + 2)
        if r == 3:
            return 2 ** (4 * l + 3)
        return 2 ** (4 * l + 4)
    if s == 1 and i == 1:
        if r <= 1:
            return 2 ** (n + 4 * l)
        if r <= 3:
            return 2 ** (n + 4 * l + 1)
        return 2 ** (n + 4 * l + 3)
    if n == 2 and s == 2 and i == 1:
        if r <= 2:
            return 2 ** (4 * l + 2)
        if r == 3:
            return 2 ** (4 * l + 3)
        return 2 ** (4 * l + 4)
    if n == 2 and s == 2 and i == 2:
        return 2 ** (2 * l + 1) if r <= 2 else 2 ** (2 * l + 2)
    return None


def f_value(p: int, n: int, s: int, k: int, i: int) -> int:
    """f_{s,k}^{p,n}(i).

    >>> [f_value(2, 2, 2, 3, i) for i in (1, 2)]
    [8, 4]
    >>> [f_value(2, 3, 3, 3, i) for i in (1, 2, 3)]
    [16, 4, 2]
    """
    GroupSpec(p, n)
    if not 1 <= s <= n or not 1 <= i <= n:
        raise LevelOutOfRange(f"need 1 <= s, i <= {n}")
    if k < 1:
        raise ValueError("k must be positive")
    if i > s:
        return 0
    if p == 2:
        special = _two_primary_exception(n, s, k, i)
        if special is not None:
            return special
    width = 2 * p ** (s - 1) * (p - 1)
    return p ** (n - s + p ** (s - i) * _ceil_div(k + 1, width))


def f_even_value(p: int, n: int, s: int, kp: int, i: int) -> int:
    """The same function at k = 2k', written in its even-degree form."""
    if i > s:
        return 0
    if p == 2 and i == s == 1:
        return 2 ** (n + kp + (1 if kp % 4 == 2 else 0))
    return p ** (n - s + p ** (s - i) * (1 + kp // (p ** (s - 1) * (p - 1))))


@dataclass(frozen=True)
class FTable:
    """values[s-1][i-1] = f_{s,k}^{p,n}(i)."""

    p: int
    n: int
    k: int
    values: tuple[tuple[int, ...], ...]

    def column(self, s: int) -> tuple[int, ...]:
        return self.values[s - 1]

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "k": self.k,
                "values": [[str(v) for v in row] for row in self.values]}


def f_table(p: int, n: int, k: int) -> FTable:
    return FTable(p, n, k, tuple(
        tuple(f_value(p, n, s, k, i) for i in range(1, n + 1)) for s in range(1, n + 1)
    ))


def _level(x: BurnsideElement) -> int:
    return x.m + 1


def gamma_membership(x: BurnsideElement, k: int) -> tuple[int, ...] | None:
    """Coefficients c with marks(x) = sum c_s f_{s,k}, or None if x is not in Gamma_k."""
    if k < 1:
        raise ValueError("k must be positive")
    p, n = x.p, _level(x)
    table = f_table(p, n, k)
    marks = x.marks
    c = [0] * n
    for i in range(n, 0, -1):
        rest = marks[i - 1] - sum(c[s - 1] * table.values[s - 1][i - 1] for s in range(i + 1, n + 1))
        q, r = divmod(rest, table.values[i - 1][i - 1])
        if r:
            return None
        c[i - 1] = q
    return tuple(c)


def degree_search_bound(x: BurnsideElement) -> int:
    """Past this k every diagonal entry f_{s,k}(s) exceeds every mark of x,
    so back-substitution can only succeed for x = 0."""
    p, n = x.p, _level(x)
    bits = max(abs(v) for v in x.marks).bit_length()
    return 2 * p ** (n - 1) * (p - 1) * (bits + 2) + 8


def mahowald_degree(x: BurnsideElement) -> int:
    if x.is_zero():
        raise ZeroElement("the zero element has no Mahowald invariant")
    p, n = x.p, _level(x)
    in_gamma1 = x.augmentation % p ** n == 0
    if (gamma_membership(x, 1) is not None) != in_gamma1:
        raise TheoremViolation("Gamma_1 membership disagrees with the augmentation test")
    if not in_gamma1:
        return 0
    bound = degree_search_bound(x)
    k = 1
    while gamma_membership(x, k + 1) is not None:
        k += 1
        if k > bound:
            raise TheoremViolation(f"degree search passed its bound {bound}")
    return k


def signed_residue(x: int, modulus: int) -> int:
    """The representative of x mod modulus in (-modulus/2, modulus/2]."""
    x %= modulus
    return x - modulus if 2 * x > modulus else x


@dataclass(frozen=True)
class JImageElement:
    """A formal element of the p-primary image of J in stem k.

    ``family`` is one of eta, eta_squared, P_eta, P_eta_squared, j_generator.
    For j_generator, ``coefficient`` is the raw integer produced by the
    formula; it is only meaningful mod ``modulus``.
    """

    stem: int
    family: str
    coefficient: int
    modulus: int
    p: int
    l: int = 0
    indeterminacy: str = ""

    @property
    def residue(self) -> int:
        return signed_residue(self.coefficient, self.modulus)

    def generator_symbol(self) -> str:
        if self.family == "eta":
            return "η"
        if self.family == "eta_squared":
            return "η²"
        if self.family == "P_eta":
            return f"P^{self.l}η"
        if self.family == "P_eta_squared":
            return f"P^{self.l}η²"
        if self.p == 2 and self.stem == 3:
            return "ν"
        if self.p == 2 and self.stem == 7:
            return "σ"
        return f"j_{self.stem}^({self.p})"

    def display(self) -> str:
        sym = self.generator_symbol()
        if self.family != "j_generator":
            return sym
        c = self.residue
        if c == 0:
            return "0"
        if c == 1:
            return sym
        if c == -1:
            return f"-{sym}"
        return f"{c}{sym}"

    def to_json(self) -> dict:
        return {
            "stem": self.stem,
            "family": self.family,
            "coefficient": str(self.residue),
            "modulus": str(self.modulus),
            "indeterminacy": self.indeterminacy,
        }


@dataclass(frozen=True)
class MahowaldResult:
    element: BurnsideElement
    degree: int
    coefficients: tuple[int, ...] = ()
    j_part: JImageElement | None = None
    residue: int | None = None
    notes: tuple[str, ...] = field(default=())

    def display(self) -> str:
        if self.degree == 0:
            return f"{self.residue} mod {self.element.p ** _level(self.element)}"
        return self.j_part.display()

    def to_json(self) -> dict:
        out = {
            "degree": self.degree,
            "coefficients": [str(c) for c in self.coefficients],
            "display": self.display(),
        }
        if self.j_part is not None:
            out["j"] = self.j_part.to_json()
        if self.residue is not None:
            out["residue"] = str(self.residue)
            out["modulus"] = str(self.element.p ** _level(self.element))
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _weighted(c: tuple[int, ...], p: int, t: int) -> int:
    """p^{t-1} c_1 + p^{t-2} c_2 + ... + c_t."""
    return sum(p ** (t - s) * c[s - 1] for s in range(1, t + 1))


def j_part(p: int, n: int, k: int, c: tuple[int, ...]) -> JImageElement:
    if p > 2:
        width = 2 * (p - 1)
        if (k + 1) % width:
            raise TheoremViolation(f"degree {k} is not -1 mod {width}")
        l = 1 + _vp((k + 1) // width, p)
        t = min(n, l)
        coeff = _weighted(c, p, t) * p ** (l - t)
        return JImageElement(k, "j_generator", coeff, p ** l, p, l)
    r = k % 8
    if k == 1:
        return JImageElement(k, "eta", 1, 2, 2)
    if r == 1:
        l = k // 8
        return JImageElement(k, "P_eta", 1, 2, 2, l, f"Z/2{{P^{l - 1}ηε}}")
    if r == 2:
        if n > 2:
            raise TheoremViolation(f"degree 8l+2 is impossible for n = {n}")
        l = k // 8
        return JImageElement(k, "eta_squared" if l == 0 else "P_eta_squared", 1, 2, 2, l)
    if r == 3:
        if n == 1:
            coeff = 4
        elif n == 2:
            coeff = -2 * (c[0] - c[1])
        else:
            coeff = -(2 * c[0] - c[1])
        return JImageElement(k, "j_generator", coeff, 8, 2)
    if r == 7:
        l = _vp(k + 1, 2)
        t = min(n, l)
        coeff = _weighted(c, 2, t) * 2 ** (l + 1 - t)
        return JImageElement(k, "j_generator", coeff, 2 ** (l + 1), 2, l)
    raise TheoremViolation(f"degree {k} is not 1, 2, 3 or 7 mod 8")


def mahowald_invariant(x: BurnsideElement) -> MahowaldResult:
    k = mahowald_degree(x)
    p, n = x.p, _level(x)
    if k == 0:
        return MahowaldResult(x, 0, residue=x.augmentation % p ** n)
    c = gamma_membership(x, k)
    return MahowaldResult(x, k, c, j_part(p, n, k, c))


def gamma_basis(p: int, n: int, k: int) -> list[BurnsideElement]:
    """Elements of A(C_{p^{n-1}}) whose marks are f_{1,k}, ..., f_{n,k}."""
    table = f_table(p, n, k)
    return [from_marks(p, n - 1, table.column(s)) for s in range(1, n + 1)]


def gamma_basis_even_norm_form(p: int, n: int, kp: int) -> list[BurnsideElement]:
    """The same basis at k = 2k', built as transfers of norms of integers."""
    out = []
    for s in range(1, n + 1):
        if p == 2 and s == 1:
            inner = BurnsideElement.scalar(2, 0, f_value(2, 1, 1, 2 * kp, 1))
        else:
            q = p ** (1 + kp // (p ** (s - 1) * (p - 1)))
            inner = norm_from_trivial(p, q, s - 1)
        out.append(transfer(inner, n - 1))
    return out


def degree_image(p: int, n: int, kp: int, i: int) -> int:
    """Generator of the image of Phi^{C_{p^i}} on pi_V, V = k' faithful characters."""
    if not 1 <= i <= n:
        raise LevelOutOfRange(f"i = {i} outside 1..{n}")
    g = 0
    for s in range(i, n + 1):
        g = gcd(g, f_value(p, n, s, 2 * kp, i))
    return g


def f_even_consistency(p: int, n: int, kp: int) -> bool:
    """Marks of the closed-form generators of M_{2k'} against the f-table."""
    from .ktheory import closed_form_real_basis, fixed_point_marks

    group = GroupSpec(p, n)
    basis = closed_form_real_basis(group, 2 * kp)
    table = f_table(p, n, 2 * kp)
    return all(fixed_point_marks(y) == table.column(s) for s, y in enumerate(basis, start=1))


def sign_rep_g(k: int) -> int:
    l, r = divmod(k, 8)
    return 2 ** (4 * l + {0: 1, 1: 1, 2: 2, 3: 3}.get(r, 4))


# ---- the presentation of the reduced ring in degrees *L ----

@dataclass
class PresentationReport:
    checked: int = 0
    skipped: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _excluded(p: int, i: int, c: int) -> bool:
    return p == 2 and i == 1 and c % 4 == 2


def _y_value(group: GroupSpec, i: int, c: int):
    """y_{n,i,c} = a t_{n,i} beta_{p^{i-1}(p-1)c}, pushed to degree 0 with a_L -> 1."""
    p = group.p
    return permutation_character(group, i) * e_block(group, 0, p ** (i - 1) * (p - 1) * c)


def _same_mod_regular(group: GroupSpec, x, y) -> bool:
    """x = y in RU/(Z rho): all character values away from the identity agree."""
    diff = x - y
    return all(not any(char_value(diff, j).coeffs) for j in range(1, group.n + 1))


def induce(x, group: GroupSpec):
    """Induction RU(C_{p^i}) -> RU(C_{p^n}): L^a goes to the sum of L^b, b = a mod p^i."""
    from .repring import RUElement

    small = x.group.order
    return RUElement(group, tuple(x.coeffs[b % small] for b in range(group.order)))


def presentation_check(p: int, n: int, c_max: int) -> PresentationReport:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    group = GroupSpec(p, n)
    rep = PresentationReport()

    def record(ok: bool, label: str):
        rep.checked += 1
        if not ok:
            rep.failures.append(label)

    record(_same_mod_regular(group, _y_value(group, n, 0), permutation_character(group, n)),
           "y_{n,n,0} = a_L")
    for i in range(1, n + 1):
        sub = GroupSpec(p, i)
        for c in range(c_max + 1):
            if _excluded(p, i, c):
                rep.skipped += 1
                continue
            lhs = induce(e_block(sub, 0, p ** (i - 1) * (p - 1) * c), group)
            record(lhs == _y_value(group, i, c), f"y_{{{n},{i},{c}}} = tr(y_{{{i},{i},{c}}})")

    for i in range(1, n + 1):
        for j in range(i, n + 1):
            for c in range(c_max + 1):
                for d in range(c_max + 1):
                    e = c + d * p ** (j - i)
                    if any(_excluded(p, a, b) for a, b in ((i, c), (j, d), (i, e))):
                        rep.skipped += 1
                        continue
                    lhs = _y_value(group, i, c) * _y_value(group, j, d)
                    rhs = p ** (n - j) * _y_value(group, i, e)
                    record(_same_mod_regular(group, lhs, rhs),
                           f"y({i},{c}) y({j},{d}) = {p}^{n - j} a_L y({i},{e})")

    for i in range(1, n + 1):
        for c in range(c_max):
            if p == 2 and i == 1 and c % 4 == 2:
                # a_L^2 y_{1,4k+3} = 4 y_{1,4k+1}
                lhs = _y_value(group, 1, c + 1)
                rhs = 4 * _y_value(group, 1, c - 1)
                record(_same_mod_regular(group, lhs, rhs), f"a_L^2 y(1,{c + 1}) = 4 y(1,{c - 1})")
                continue
            terms = [(i, c, p)] + [
                (j, p ** (i - j) * c, (p ** (p ** (i - j)) - p ** (p ** (i - j - 1))) // p ** (i - j))
                for j in range(1, i)
            ]
            if _excluded(p, i, c + 1) or any(_excluded(p, a, b) for a, b, _ in terms):
                rep.skipped += 1
                continue
            lhs = _y_value(group, i, c + 1)
            rhs = sum((coef * _y_value(group, a, b) for a, b, coef in terms[1:]),
                      p * _y_value(group, i, c))
            record(_same_mod_regular(group, lhs, rhs), f"a_L^B y({i},{c + 1}) = p y({i},{c}) + ...")
    return rep
