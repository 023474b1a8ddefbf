"""The Burnside ring A(C_{p^m}) and its Mackey structure.

Elements are stored in the orbit basis t_{m,i} = [C_{p^m}/C_{p^i}], i = 0..m.
The marks vector lists |X^{C_{p^j}}| for j = 0..m. The z-basis view is
(1, z_{m,1}, ..., z_{m,m}) with z_{m,i} = p t_{m,i} - t_{m,i-1}.
"""

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import AugmentationObstruction, GroupMismatch, LevelOutOfRange, NotInBurnsideImage
from .repring import GroupSpec, RUElement, permutation_character


@dataclass(frozen=True)
class BurnsideElement:
    p: int
    m: int
    t_coeffs: tuple[int, ...]

    def __post_init__(self):
        GroupSpec(self.p, self.m)
        if len(self.t_coeffs) != self.m + 1:
            raise ValueError(f"expected {self.m + 1} orbit coefficients, got {len(self.t_coeffs)}")

    # constructors

    @classmethod
    def orbit(cls, p: int, m: int, i: int, c: int = 1) -> "BurnsideElement":
        """c * [C_{p^m}/C_{p^i}]."""
        if not 0 <= i <= m:
            raise LevelOutOfRange(f"orbit index {i} outside 0..{m}")
        v = [0] * (m + 1)
        v[i] = c
        return cls(p, m, tuple(v))

    @classmethod
    def scalar(cls, p: int, m: int, c: int) -> "BurnsideElement":
        return cls.orbit(p, m, m, c)

    @classmethod
    def z_element(cls, p: int, m: int, i: int) -> "BurnsideElement":
        if not 1 <= i <= m:
            raise LevelOutOfRange(f"z index {i} outside 1..{m}")
        v = [0] * (m + 1)
        v[i] = p
        v[i - 1] = -1
        return cls(p, m, tuple(v))

    @classmethod
    def from_z(cls, p: int, m: int, z_coeffs: Sequence[int]) -> "BurnsideElement":
        """From coefficients of (1, z_{m,1}, ..., z_{m,m})."""
        if len(z_coeffs) != m + 1:
            raise ValueError(f"expected {m + 1} z-basis coefficients")
        out = cls.scalar(p, m, z_coeffs[0])
        for i in range(1, m + 1):
            out = out + z_coeffs[i] * cls.z_element(p, m, i)
        return out

    @classmethod
    def from_marks(cls, p: int, m: int, values: Sequence[int]) -> "BurnsideElement":
        return from_marks(p, m, values)

    # views

    @cached_property
    def marks(self) -> tuple[int, ...]:
        return to_marks(self)

    @property
    def z_coeffs(self) -> tuple[int, ...]:
        mk = self.marks
        c0 = mk[0]
        out = [c0]
        for i in range(1, self.m + 1):
            q, r = divmod(mk[i] - c0, self.p ** (self.m + 1 - i))
            assert r == 0
            out.append(q)
        return tuple(out)

    @property
    def augmentation(self) -> int:
        return self.marks[0]

    def is_zero(self) -> bool:
        return not any(self.t_coeffs)

    def to_ru(self) -> RUElement:
        """The permutation representation, as a rational element of RU(C_{p^m})."""
        group = GroupSpec(self.p, self.m)
        out = RUElement.zero(group)
        for i, c in enumerate(self.t_coeffs):
            if c:
                out = out + c * permutation_character(group, i)
        return out

    # arithmetic

    def _check(self, other: "BurnsideElement"):
        if (self.p, self.m) != (other.p, other.m):
            raise GroupMismatch(f"A(C_{self.p}^{self.m}) vs A(C_{other.p}^{other.m})")

    def __add__(self, other):
        if isinstance(other, int):
            other = BurnsideElement.scalar(self.p, self.m, other)
        self._check(other)
        return BurnsideElement(self.p, self.m, tuple(a + b for a, b in zip(self.t_coeffs, other.t_coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return BurnsideElement(self.p, self.m, tuple(-a for a in self.t_coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return BurnsideElement(self.p, self.m, tuple(other * a for a in self.t_coeffs))
        return multiply(self, other)

    __rmul__ = __mul__

    def to_json(self, basis: str = "t") -> dict:
        if basis == "t":
            coeffs = self.t_coeffs
        elif basis == "z":
            coeffs = self.z_coeffs
        elif basis == "marks":
            coeffs = self.marks
        else:
            raise ValueError(f"unknown basis {basis!r}")
        return {"p": self.p, "m": self.m, "basis": basis, "coeffs": [str(c) for c in coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "BurnsideElement":
        p, m = int(data["p"]), int(data["m"])
        coeffs = [int(c) for c in data["coeffs"]]
        basis = data.get("basis", "t")
        if basis == "t":
            return cls(p, m, tuple(coeffs))
        if basis == "z":
            return cls.from_z(p, m, coeffs)
        if basis == "marks":
            return from_marks(p, m, coeffs)
        raise ValueError(f"unknown basis {basis!r}")

    def __str__(self):
        terms = []
        for i in range(self.m, -1, -1):
            c = self.t_coeffs[i]
            if not c:
                continue
            if i == self.m:
                terms.append(str(c))
                continue
            orbit = orbit_name(self.p, self.m, i)
            terms.append(orbit if c == 1 else (f"-{orbit}" if c == -1 else f"{c}{orbit}"))
        return " + ".join(terms).replace("+ -", "- ") or "0"


def orbit_name(p: int, m: int, i: int) -> str:
    """[C_{p^m}/C_{p^i}], written [C_{p^m}] for the free orbit."""
    if i == 0:
        return f"[C_{p ** m}]"
    return f"[C_{p ** m}/C_{p ** i}]"


_TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*(\[C_(\d+)(?:/C_(\d+))?\])?\s*")


def parse_orbit_notation(p: int, m: int, text: str) -> BurnsideElement:
    """Parse sums like '2+[C_4/C_2]+3[C_4]' as an element of A(C_{p^m}).

    >>> parse_orbit_notation(2, 2, "4[C_4/C_2] + 2[C_4]").t_coeffs
    (2, 4, 0)
    """
    coeffs = [0] * (m + 1)
    pos = 0
    text = text.strip()
    if not text:
        raise ValueError("empty element")
    while pos < len(text):
        match = _TERM.match(text, pos)
        if not match or match.end() == pos or not (match.group(2) or match.group(3)):
            raise ValueError(f"cannot parse {text[pos:]!r}")
        sign = -1 if match.group(1) == "-" else 1
        c = sign * int(match.group(2) or 1)
        if match.group(3):
            whole = int(match.group(4))
            sub = int(match.group(5) or 1)
            if whole != p ** m or sub == 0 or whole % sub:
                raise ValueError(f"{match.group(3)} is not an orbit of C_{p ** m}")
            i = 0
            while p ** i < sub:
                i += 1
            if p ** i != sub:
                raise ValueError(f"{sub} is not a power of {p}")
            coeffs[i] += c
        else:
            coeffs[m] += c
        pos = match.end()
    return BurnsideElement(p, m, tuple(coeffs))


def to_marks(x: BurnsideElement) -> tuple[int, ...]:
    """|t_{m,i}^{C_{p^j}}| = p^{m-i} for j <= i and 0 otherwise."""
    p, m = x.p, x.m
    out = []
    for j in range(m + 1):
        out.append(sum(c * p ** (m - i) for i, c in enumerate(x.t_coeffs) if i >= j))
    return tuple(out)


def from_marks(p: int, m: int, values: Sequence[int]) -> BurnsideElement:
    """Recover the orbit coefficients from the marks.

    >>> from_marks(2, 3, [0, 16, 4, 2]).t_coeffs
    (-2, 3, 1, 2)
    """
    if len(values) != m + 1:
        raise ValueError(f"expected {m + 1} marks")
    values = [int(v) for v in values]
    coeffs = []
    for i in range(m):
        q, r = divmod(values[i] - values[i + 1], p ** (m - i))
        if r:
            raise NotInBurnsideImage(
                f"({values[i]} - {values[i + 1]}) is not divisible by {p ** (m - i)}"
            )
        coeffs.append(q)
    coeffs.append(values[m])
    return BurnsideElement(p, m, tuple(coeffs))


def multiply(x: BurnsideElement, y: BurnsideElement) -> BurnsideElement:
    x._check(y)
    return from_marks(x.p, x.m, [a * b for a, b in zip(x.marks, y.marks)])


def transfer(x: BurnsideElement, n: int) -> BurnsideElement:
    """tr_m^n: [C_{p^m}/C_{p^j}] goes to [C_{p^n}/C_{p^j}]."""
    if n < x.m:
        raise LevelOutOfRange(f"cannot transfer from level {x.m} down to {n}")
    return BurnsideElement(x.p, n, x.t_coeffs + (0,) * (n - x.m))


def restriction(x: BurnsideElement) -> BurnsideElement:
    """res to the index-p subgroup: drop the top mark."""
    if x.m < 1:
        raise LevelOutOfRange("the trivial group has no proper subgroup")
    return from_marks(x.p, x.m - 1, x.marks[:-1])


def geometric_fixed(x: BurnsideElement) -> BurnsideElement:
    """X -> X^{C_p}, a C_{p^m}/C_p = C_{p^{m-1}}-set: drop the bottom mark."""
    if x.m < 1:
        raise LevelOutOfRange("the trivial group has no C_p-fixed points map")
    return from_marks(x.p, x.m - 1, x.marks[1:])


def norm_from_trivial(p: int, q: int, m: int) -> BurnsideElement:
    """N_e^{C_{p^m}}(q): the set of maps C_{p^m} -> {1..q}, with marks q^{p^{m-j}}."""
    if q < 0:
        raise ValueError("q must be non-negative")
    return from_marks(p, m, [q ** (p ** (m - j)) for j in range(m + 1)])


def lift_through_phi(x: BurnsideElement) -> BurnsideElement:
    """The unique augmentation-zero element of A(C_{p^{m+1}}) whose C_p-fixed
    points are x. Exists iff |x| = 0 mod p^{m+1}."""
    n = x.m + 1
    modulus = x.p ** n
    if x.augmentation % modulus:
        raise AugmentationObstruction(x.augmentation % modulus, modulus)
    return from_marks(x.p, n, (0,) + x.marks)


def augmentation_ideal_basis(p: int, m: int) -> list[BurnsideElement]:
    """z_{m,1}, ..., z_{m,m}."""
    return [BurnsideElement.z_element(p, m, i) for i in range(1, m + 1)]
