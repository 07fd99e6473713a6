"""Exact arithmetic in the cyclotomic rings Z[zeta_m].

Elements are stored over the power basis 1, zeta, ..., zeta^(phi(m)-1),
reduced modulo the m-th cyclotomic polynomial.  Binary operations lift
both operands to the lcm of their conductors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

# Integer polynomials are coefficient tuples, lowest degree first.
Poly = tuple[int, ...]


def poly_trim(a: Sequence[int]) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_mul(a: Sequence[int], b: Sequence[int], mod: int = 0) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    if mod:
        out = [x % mod for x in out]
    return poly_trim(out)


def poly_divmod(a: Sequence[int], b: Sequence[int], mod: int = 0) -> tuple[Poly, Poly]:
    """Divide by a monic polynomial ``b``, optionally with coefficients mod ``mod``."""
    b = poly_trim(b)
    if not b or b[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(a)
    if mod:
        rem = [x % mod for x in rem]
    db = len(b) - 1
    if len(rem) - 1 < db:
        return (), poly_trim(rem)
    quot = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if mod:
            c %= mod
        if c == 0:
            continue
        quot[i - db] = c
        for j in range(db + 1):
            rem[i - db + j] -= c * b[j]
        if mod:
            for j in range(db + 1):
                rem[i - db + j] %= mod
    return poly_trim(quot), poly_trim(rem[:db])


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> Poly:
    """Phi_m, via x^m - 1 divided by Phi_d for the proper divisors d of m."""
    if m < 1:
        raise ValueError("conductor must be positive")
    num: Poly = (-1,) + (0,) * (m - 1) + (1,)
    for d in range(1, m):
        if m % d == 0:
            num, rem = poly_divmod(num, cyclotomic_polynomial(d))
            assert not rem
    return num


def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


@lru_cache(maxsize=None)
def _power_reductions(m: int) -> tuple[Poly, ...]:
    """Power-basis coordinates of zeta_m^j for j = 0..m-1."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    out = []
    for j in range(m):
        mono = (0,) * j + (1,)
        _, rem = poly_divmod(mono, phi)
        out.append(rem + (0,) * (deg - len(rem)))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class CycInt:
    """An element of Z[zeta_m] in reduced power-basis coordinates."""

    m: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("conductor must be positive")
        deg = euler_phi(self.m)
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) != deg:
            raise ValueError(f"Z[zeta_{self.m}] needs {deg} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_exponents(cls, m: int, dense: Sequence[int]) -> "CycInt":
        """Reduce ``sum_j dense[j] * zeta_m^j`` (j taken mod m)."""
        reductions = _power_reductions(m)
        deg = euler_phi(m)
        out = [0] * deg
        for j, c in enumerate(dense):
            if c:
                for i, r in enumerate(reductions[j % m]):
                    if r:
                        out[i] += c * r
        return cls(m, tuple(out))

    @classmethod
    def integer(cls, k: int) -> "CycInt":
        return cls(1, (int(k),))

    @classmethod
    def zeta(cls, m: int, j: int = 1) -> "CycInt":
        dense = [0] * m
        dense[j % m] = 1
        return cls.from_exponents(m, dense)

    @classmethod
    def coerce(cls, x: Union["CycInt", int]) -> "CycInt":
        if isinstance(x, CycInt):
            return x
        if isinstance(x, int):
            return cls.integer(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to CycInt")

    # -- conductor changes -------------------------------------------------

    def dense(self) -> list[int]:
        """Exponent-indexed coordinates of length m (power basis padded with zeros)."""
        return list(self.coeffs) + [0] * (self.m - len(self.coeffs))

    def lift(self, big_m: int) -> "CycInt":
        """The same element viewed in Z[zeta_M], M a multiple of m."""
        if big_m % self.m:
            raise ValueError(f"{big_m} is not a multiple of the conductor {self.m}")
        if big_m == self.m:
            return self
        step = big_m // self.m
        dense = [0] * big_m
        for i, c in enumerate(self.coeffs):
            dense[i * step] += c
        return CycInt.from_exponents(big_m, dense)

    def descend(self, small_m: int) -> Optional["CycInt"]:
        """The element as a member of Z[zeta_d], d | m, or None if it is not there."""
        if self.m % small_m:
            raise ValueError(f"{small_m} does not divide the conductor {self.m}")
        if small_m == self.m:
            return self
        basis = [CycInt.zeta(small_m, i).lift(self.m).coeffs for i in range(euler_phi(small_m))]
        solution = _solve_exact(basis, self.coeffs)
        if solution is None or any(x.denominator != 1 for x in solution):
            return None
        return CycInt(small_m, tuple(int(x) for x in solution))

    def minimal_conductor(self) -> "CycInt":
        m = self.m
        changed = True
        x = self
        while changed:
            changed = False
            for q in _prime_factors(m):
                d = m // q
                y = x.descend(d)
                if y is not None:
                    x, m, changed = y, d, True
                    break
        return x

    # -- ring operations ---------------------------------------------------

    def _unify(self, other) -> tuple["CycInt", "CycInt"]:
        other = CycInt.coerce(other)
        big = math.lcm(self.m, other.m)
        return self.lift(big), other.lift(big)

    def __add__(self, other):
        a, b = self._unify(other)
        return CycInt(a.m, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.m, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-CycInt.coerce(other))

    def __rsub__(self, other):
        return CycInt.coerce(other) - self

    def __mul__(self, other):
        a, b = self._unify(other)
        m = a.m
        prod = [0] * m
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[(i + j) % m] += x * y
        return CycInt.from_exponents(m, prod)

    __rmul__ = __mul__

    def scale(self, k: int) -> "CycInt":
        return CycInt(self.m, tuple(k * x for x in self.coeffs))

    def exact_div(self, k: int) -> "CycInt":
        """Divide by a rational integer, failing loudly if not exact."""
        if k == 0:
            raise ZeroDivisionError("division by zero")
        if any(x % k for x in self.coeffs):
            raise ArithmeticError(f"{self} is not divisible by {k} in Z[zeta_{self.m}]")
        return CycInt(self.m, tuple(x // k for x in self.coeffs))

    def galois(self, k: int) -> "CycInt":
        """Image under zeta -> zeta^k, gcd(k, m) = 1."""
        if math.gcd(k, self.m) != 1:
            raise ValueError(f"{k} is not a unit mod {self.m}")
        dense = [0] * self.m
        for i, c in enumerate(self.coeffs):
            dense[(i * k) % self.m] += c
        return CycInt.from_exponents(self.m, dense)

    def conjugate(self) -> "CycInt":
        return self.galois(-1 % self.m if self.m > 1 else 1)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycInt.integer(other)
        if not isinstance(other, CycInt):
            return NotImplemented
        a, b = self._unify(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        x = self.minimal_conductor()
        return hash((x.m, x.coeffs))

    def __complex__(self):
        import cmath

        w = cmath.exp(2j * cmath.pi / self.m)
        return complex(sum(c * w**i for i, c in enumerate(self.coeffs)))

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, data: dict) -> "CycInt":
        return cls(int(data["m"]), tuple(int(c) for c in data["coeffs"]))

    def __repr__(self) -> str:
        return f"CycInt(m={self.m}, coeffs={list(self.coeffs)})"

    def __str__(self) -> str:
        value = as_integer(self)
        if value is not None:
            return str(value)
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            mono = f"z{self.m}" if i == 1 else f"z{self.m}^{i}"
            terms.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def as_integer(x: CycInt) -> Optional[int]:
    """The rational integer equal to ``x``, or None when ``x`` is not one."""
    # 1 is a power-basis vector, so rational elements have no other coordinates
    if any(x.coeffs[1:]):
        return None
    return x.coeffs[0]


@dataclass(frozen=True, order=True)
class RootIndex:
    """The root of unity zeta_m^j."""

    m: int
    j: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("order must be positive")
        object.__setattr__(self, "j", self.j % self.m)

    @property
    def order(self) -> int:
        return self.m // math.gcd(self.j, self.m)

    def reduced(self) -> "RootIndex":
        d = self.order
        return RootIndex(d, self.j * d // self.m)

    def same_root(self, other: "RootIndex") -> bool:
        return self.reduced() == other.reduced()

    def to_cycint(self) -> CycInt:
        return CycInt.zeta(self.m, self.j)

    def __str__(self) -> str:
        return f"zeta({self.m})^{self.j}"

    @classmethod
    def parse(cls, text: str) -> "RootIndex":
        import re

        match = re.fullmatch(r"\s*zeta\((\d+)\)\^(-?\d+)\s*", text)
        if not match:
            raise ValueError(f"cannot parse root index {text!r}")
        return cls(int(match.group(1)), int(match.group(2)))


def inner_dft(values: Sequence[Union[CycInt, int]], j: Union[RootIndex, int]) -> CycInt:
    """``sum_k values[k] * zeta_m^(-j k)`` where m = len(values).

    The caller divides by m; for the character of a genuine representation
    evaluated on the powers of an element of order m the quotient is the
    multiplicity of zeta_m^j as an eigenvalue.
    """
    m = len(values)
    if isinstance(j, RootIndex):
        if j.m != m:
            raise ValueError(f"root index {j} does not match {m} values")
        j = j.j
    total = CycInt.integer(0).lift(m)
    for k, v in enumerate(values):
        total = total + CycInt.coerce(v) * CycInt.zeta(m, -j * k)
    return total


def sqrt_of_discriminant(q: int) -> CycInt:
    """A square root of an integer q with q = 1 mod 4, as a cyclotomic integer.

    Writes |q| = s^2 r with r squarefree and uses the quadratic Gauss sums
    g_p = sum_a (a/p) zeta_p^a, g_p^2 = p* = (-1)^((p-1)/2) p.  The product
    of p* over p | r equals q / s^2 because both are 1 mod 4.
    """
    if q % 4 != 1:
        raise ValueError(f"{q} is not 1 mod 4")
    from .permutations import jacobi_symbol

    r, s = _squarefree_split(abs(q))
    root = CycInt.integer(s)
    for p in _prime_factors(r):
        gauss = CycInt.from_exponents(p, [0] + [jacobi_symbol(a, p) for a in range(1, p)])
        root = root * gauss
    if not (root * root) == q:
        raise ArithmeticError(f"Gauss-sum square root of {q} failed")
    return root


def _squarefree_split(a: int) -> tuple[int, int]:
    r, s = 1, 1
    for p in _prime_factors(a):
        e = 0
        while a % p == 0:
            a //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            r *= p
    return r, s


def _prime_factors(a: int) -> list[int]:
    out = []
    d = 2
    while d * d <= a:
        if a % d == 0:
            out.append(d)
            while a % d == 0:
                a //= d
        d += 1
    if a > 1:
        out.append(a)
    return out


def _solve_exact(columns: Sequence[Sequence[int]], target: Sequence[int]) -> Optional[list[Fraction]]:
    """Solve sum_i x_i columns[i] = target over Q, or None if inconsistent."""
    rows = len(target)
    ncols = len(columns)
    mat = [[Fraction(columns[c][r]) for c in range(ncols)] + [Fraction(target[r])] for r in range(rows)]
    pivots = []
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, rows) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        inv = 1 / mat[row][col]
        mat[row] = [v * inv for v in mat[row]]
        for r in range(rows):
            if r != row and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
    for r in range(row, rows):
        if mat[r][-1] != 0:
            return None
    x = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        x[col] = mat[r][-1]
    return x
