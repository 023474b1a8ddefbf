"""The complex representation ring RU(C_{p^n}) = Z[L]/(L^{p^n} - 1).

Elements are coefficient vectors indexed by the exponent of L. Besides ring
arithmetic this module provides Adams operations, evaluation of characters at
roots of unity of every order p^j, Euler classes, and the ordering of faithful
characters that fixes the spoke grading.
"""

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .errors import DivisibilityViolation, GroupMismatch, LevelOutOfRange, MisalignedBlock


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class GroupSpec:
    """The cyclic group C_{p^n}."""

    p: int
    n: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.n < 0:
            raise ValueError("n must be non-negative")

    @property
    def order(self) -> int:
        return self.p ** self.n

    def __str__(self):
        return f"C_{self.order}"


@dataclass(frozen=True)
class RUElement:
    group: GroupSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.group.order:
            raise ValueError(f"expected {self.group.order} coefficients, got {len(self.coeffs)}")

    # constructors

    @classmethod
    def zero(cls, group: GroupSpec) -> "RUElement":
        return cls(group, (0,) * group.order)

    @classmethod
    def scalar(cls, group: GroupSpec, c: int) -> "RUElement":
        return cls(group, (c,) + (0,) * (group.order - 1))

    @classmethod
    def monomial(cls, group: GroupSpec, a: int, c: int = 1) -> "RUElement":
        v = [0] * group.order
        v[a % group.order] = c
        return cls(group, tuple(v))

    @classmethod
    def from_exponents(cls, group: GroupSpec, exponents: Iterable[int]) -> "RUElement":
        """Sum of the characters L^d for d in exponents (with multiplicity)."""
        v = [0] * group.order
        for d in exponents:
            v[d % group.order] += 1
        return cls(group, tuple(v))

    @classmethod
    def regular(cls, group: GroupSpec) -> "RUElement":
        return cls(group, (1,) * group.order)

    # arithmetic

    def _check(self, other: "RUElement"):
        if self.group != other.group:
            raise GroupMismatch(f"{self.group} vs {other.group}")

    def __add__(self, other):
        if isinstance(other, int):
            other = RUElement.scalar(self.group, other)
        self._check(other)
        return RUElement(self.group, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return RUElement(self.group, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return RUElement(self.group, tuple(other * a for a in self.coeffs))
        return ru_mul(self, other)

    __rmul__ = __mul__

    def shift(self, d: int) -> "RUElement":
        """Multiply by L^d."""
        N = self.group.order
        v = [0] * N
        for a, c in enumerate(self.coeffs):
            v[(a + d) % N] = c
        return RUElement(self.group, tuple(v))

    def times_one_minus(self, d: int) -> "RUElement":
        """Multiply by (1 - L^d) in O(N)."""
        N = self.group.order
        c = self.coeffs
        return RUElement(self.group, tuple(c[a] - c[(a - d) % N] for a in range(N)))

    # invariants

    @property
    def augmentation(self) -> int:
        return sum(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def adams(self, ell: int) -> "RUElement":
        return adams(self, ell)

    def char_value(self, j: int) -> "CyclotomicValue":
        return char_value(self, j)

    def to_json(self) -> dict:
        return {"p": self.group.p, "n": self.group.n, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "RUElement":
        return cls(GroupSpec(int(data["p"]), int(data["n"])), tuple(int(c) for c in data["coeffs"]))

    def __str__(self):
        terms = []
        for a, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if a == 0 else ("L" if a == 1 else f"L^{a}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def ru_mul(x: RUElement, y: RUElement) -> RUElement:
    """Cyclic convolution of coefficient vectors.

    >>> G = GroupSpec(2, 1)
    >>> str(ru_mul(RUElement(G, (1, 1)), RUElement(G, (1, 1))))
    '2 + 2L'
    """
    x._check(y)
    N = x.group.order
    out = [0] * N
    ys = [(b, c) for b, c in enumerate(y.coeffs) if c]
    for a, c in enumerate(x.coeffs):
        if c:
            for b, d in ys:
                out[(a + b) % N] += c * d
    return RUElement(x.group, tuple(out))


def adams(x: RUElement, ell: int) -> RUElement:
    """psi^ell: the coefficient of L^a moves to L^{ell*a}."""
    N = x.group.order
    out = [0] * N
    for a, c in enumerate(x.coeffs):
        if c:
            out[(ell * a) % N] += c
    return RUElement(x.group, tuple(out))


@dataclass(frozen=True)
class CyclotomicValue:
    """An element of Z[x]/Phi_{p^j}(x); level 0 is a plain integer."""

    p: int
    level: int
    coeffs: tuple[int, ...]

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    @property
    def rational_value(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __mul__(self, other: "CyclotomicValue") -> "CyclotomicValue":
        if (self.p, self.level) != (other.p, other.level):
            raise GroupMismatch("cyclotomic values at different levels")
        prod = [0] * (len(self.coeffs) + len(other.coeffs))
        for a, c in enumerate(self.coeffs):
            if c:
                for b, d in enumerate(other.coeffs):
                    prod[a + b] += c * d
        return _reduce_cyclotomic(self.p, self.level, prod)

    def __add__(self, other: "CyclotomicValue") -> "CyclotomicValue":
        if (self.p, self.level) != (other.p, other.level):
            raise GroupMismatch("cyclotomic values at different levels")
        return CyclotomicValue(self.p, self.level, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __str__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        terms = [f"{c}*z^{a}" if a else str(c) for a, c in enumerate(self.coeffs) if c]
        return " + ".join(terms)


def _reduce_cyclotomic(p: int, j: int, poly: list[int]) -> CyclotomicValue:
    if j == 0:
        return CyclotomicValue(p, 0, (sum(poly),))
    q = p ** (j - 1)
    D = q * (p - 1)
    y = list(poly) + [0] * max(0, D - len(poly))
    # x^D = -(1 + x^q + ... + x^{(p-2)q}) modulo Phi_{p^j}
    for e in range(len(y) - 1, D - 1, -1):
        c = y[e]
        if c:
            y[e] = 0
            base = e - D
            for t in range(p - 1):
                y[base + t * q] -= c
    return CyclotomicValue(p, j, tuple(y[:D]))


def char_value(x: RUElement, j: int) -> CyclotomicValue:
    """Evaluate x at L = zeta_{p^j}; level 0 gives the dimension.

    >>> G = GroupSpec(2, 1)
    >>> str(char_value(RUElement.monomial(G, 1), 1))
    '-1'
    """
    p, n = x.group.p, x.group.n
    if not 0 <= j <= n:
        raise LevelOutOfRange(f"level {j} outside 0..{n}")
    m = p ** j
    folded = [0] * m
    for a, c in enumerate(x.coeffs):
        folded[a % m] += c
    return _reduce_cyclotomic(p, j, folded)


def marks(x: RUElement) -> tuple[int, ...]:
    """Character values at every level 0..n; x must be a rational representation."""
    return tuple(char_value(x, j).rational_value for j in range(x.group.n + 1))


def is_rational_rep(x: RUElement) -> bool:
    return all(char_value(x, j).is_rational() for j in range(x.group.n + 1))


def euler_class(group: GroupSpec, exponents: Iterable[int]) -> RUElement:
    """prod (1 - L^d) over the given exponents."""
    out = RUElement.scalar(group, 1)
    for d in exponents:
        out = out.times_one_minus(d)
    return out


def faithful_exponents(p: int, i: int) -> list[int]:
    """Exponents 0 < k < p^i with gcd(k, p) = 1, i.e. the faithful characters of C_{p^i}."""
    if i == 0:
        return [0]
    return [k for k in range(1, p ** i) if k % p]


def w_character(i: int, ambient: GroupSpec) -> RUElement:
    """W_{p^i}, the sum of the faithful characters, as an element of RU(C_{p^i})."""
    if not 0 <= i <= ambient.n:
        raise LevelOutOfRange(f"level {i} outside 0..{ambient.n}")
    return RUElement.from_exponents(GroupSpec(ambient.p, i), faithful_exponents(ambient.p, i))


def permutation_character(group: GroupSpec, i: int) -> RUElement:
    """t_{n,i} = [C_{p^n}/C_{p^i}]: the characters trivial on C_{p^i}."""
    if not 0 <= i <= group.n:
        raise LevelOutOfRange(f"level {i} outside 0..{group.n}")
    step = group.p ** i
    return RUElement.from_exponents(group, range(0, group.order, step))


_DSEQ_CACHE: dict[int, list[int]] = {}


def _dseq_prefix(p: int, length: int) -> list[int]:
    out = _DSEQ_CACHE.setdefault(p, [])
    a = out[-2] + 1 if out else 1
    while len(out) < length:
        if a % p:
            out.extend((a, -a))
        a += 1
    return out


class DSequence:
    """The signed exponents d_1, d_2, ... = a_1, -a_1, a_2, -a_2, ...

    where a_1 < a_2 < ... are the positive integers prime to p. Indexing is
    1-based to match V_m = L^{d_1} + ... + L^{d_m}.
    """

    def __init__(self, p: int):
        self.p = p

    def __getitem__(self, i: int) -> int:
        if i < 1:
            raise IndexError("the d-sequence is indexed from 1")
        return _dseq_prefix(self.p, i)[i - 1]

    def block(self, a: int, b: int) -> tuple[int, ...]:
        """(d_{a+1}, ..., d_b)."""
        return tuple(_dseq_prefix(self.p, b)[a:b])

    def prefix(self, m: int) -> tuple[int, ...]:
        return self.block(0, m)


def e_block(group: GroupSpec, a: int, b: int) -> RUElement:
    """e_{a,b} = prod_{a < i <= b} (1 - L^{d_i})."""
    return euler_class(group, DSequence(group.p).block(a, b))


def dseq_block_restriction_check(p: int, n: int, i: int, a: int, length: int,
                                 require_alignment: bool = True) -> bool:
    """Does L^{d_{a+1}} + ... + L^{d_{a+length}} restrict to W_{p^i}?

    The block must start at a multiple of p^{i-1}(p-1); unaligned blocks can
    fail (p=2, i=2, block (d_2, d_3) restricts to 2L^3).
    """
    if not 1 <= i <= n:
        raise LevelOutOfRange(f"level {i} outside 1..{n}")
    width = p ** (i - 1) * (p - 1)
    if require_alignment and (length != width or a % width):
        raise MisalignedBlock(f"block ({a}, {a + length}] is not aligned to width {width}")
    sub = GroupSpec(p, i)
    block = RUElement.from_exponents(sub, DSequence(p).block(a, a + length))
    return block == w_character(i, GroupSpec(p, n))


def bott_multiplier(group: GroupSpec, d: int, ell: int) -> RUElement:
    """The unit u with psi^ell(beta_{L^d}) = u * beta_{L^d}."""
    if ell >= 1:
        return RUElement.from_exponents(group, (d * t for t in range(ell)))
    if ell == 0:
        raise ValueError("psi^0 does not act on Bott classes")
    m = -ell
    return -RUElement.from_exponents(group, (d * ell + d * t for t in range(m)))


def bott_fixed_value(p: int, n: int, c: int, j: int) -> int:
    """Phi^{C_{p^j}}(beta_{W_{p^n}}^c) = p^{c p^{n-j}}, cross-checked by evaluating
    the Euler class of W_{p^n} at a primitive p^j-th root of unity."""
    if not 1 <= j <= n:
        raise LevelOutOfRange(f"level {j} outside 1..{n}")
    if c < 1:
        raise ValueError("c must be positive")
    group = GroupSpec(p, n)
    e = euler_class(group, faithful_exponents(p, n))
    v = char_value(e, j)
    if not v.is_rational() or v.rational_value != p ** (p ** (n - j)):
        raise AssertionError(f"Euler class of W_{p ** n} evaluates to {v} at level {j}")
    w = euler_class(GroupSpec(p, j), faithful_exponents(p, j))
    if char_value(w, j).rational_value != p:
        raise AssertionError(f"Euler class of W_{p ** j} does not evaluate to {p}")
    return p ** (c * p ** (n - j))


def verify_adams_on_w_power(p: int, n: int, ell: int, c: int) -> bool:
    """Check psi^ell(beta_W^c) = (1 + (ell^{c phi} - 1)/p^n * rho) beta_W^c in RU,
    where W = W_{p^n}, phi = p^{n-1}(p-1) and rho is the regular representation."""
    if gcd(ell, p) != 1:
        raise ValueError("ell must be prime to p")
    group = GroupSpec(p, n)
    phi = p ** (n - 1) * (p - 1) if n else 1
    num = ell ** (c * phi) - 1
    if num % group.order:
        raise DivisibilityViolation(f"{group.order} does not divide {ell}^{c * phi} - 1")
    lhs = RUElement.scalar(group, 1)
    for d in faithful_exponents(p, n) * c:
        lhs = lhs * bott_multiplier(group, d, ell)
    rhs = 1 + (num // group.order) * RUElement.regular(group)
    return lhs == rhs


def power_map_degrees(d: int, p: int, n: int) -> tuple[int, ...]:
    """Fixed-point degrees of the power map psi_d at C_{p^j}, j = 0..n."""
    out = []
    for j in range(n + 1):
        k = p ** j
        if k == 1:
            out.append(d)
        elif d % k == 0:
            out.append(0)
        else:
            out.append(1)
    return tuple(out)


def primitive_root_mod_p_squared(p: int) -> int:
    """Smallest positive integer generating (Z/p^2)^x; 3 when p = 2."""
    if p == 2:
        return 3
    m = p * p
    phi = p * (p - 1)
    factors = {q for q in range(2, phi + 1) if phi % q == 0 and is_prime(q)}
    for g in range(2, m):
        if g % p and all(pow(g, phi // q, m) != 1 for q in factors):
            return g
    raise AssertionError("unreachable")
