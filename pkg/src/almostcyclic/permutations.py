"""Cycle types, prime-power classes of S_n and A_n, and permutation arithmetic.

Letters are 1-based in every string or JSON form and 0-based internally.
A permutation is stored as the tuple of images ``images[i] = g(i)`` and
products compose right to left: ``(g * h)(i) = g(h(i))``.
"""

from __future__ import annotations

import itertools
import math
import re
import sys
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator, Optional, Sequence

GROUP_ORDER_MAX_DEGREE = 16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def prime_power_decomposition(q: int) -> Optional[tuple[int, int]]:
    """Return ``(p, a)`` with ``q == p**a`` and ``a >= 1``, or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            a = 0
            while q % p == 0:
                q //= p
                a += 1
            return (p, a) if q == 1 else None
    return None


# ---------------------------------------------------------------------------
# Cycle types


_CT_TOKEN = re.compile(r"^(\d+)(?:\^\{?(\d+)\}?)?$")


@dataclass(frozen=True, order=True)
class CycleType:
    """A partition of ``n`` recording the cycle lengths of a permutation.

    Parts are kept in non-increasing order, so two cycle types are equal
    exactly when they label the same conjugacy class of S_n.
    """

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted((int(c) for c in self.parts), reverse=True))
        if not parts:
            raise ValueError("a cycle type needs at least one part")
        if parts[-1] < 1:
            raise ValueError(f"cycle lengths must be positive, got {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str, n: Optional[int] = None) -> "CycleType":
        """Parse ``"[4,2,1^3]"``; whitespace is ignored and brackets optional.

        When ``n`` is given and the parts sum to less than ``n``, the
        remainder is filled with fixed points; a larger sum is an error.
        """
        body = re.sub(r"\s+", "", text)
        if body.startswith("[") and body.endswith("]"):
            body = body[1:-1]
        if not body:
            raise ValueError(f"empty cycle type: {text!r}")
        parts: list[int] = []
        for token in body.split(","):
            match = _CT_TOKEN.match(token)
            if match is None:
                raise ValueError(f"cannot parse cycle-type token {token!r} in {text!r}")
            length = int(match.group(1))
            count = int(match.group(2)) if match.group(2) else 1
            if length < 1:
                raise ValueError(f"cycle lengths must be positive in {text!r}")
            parts.extend([length] * count)
        if not parts:
            raise ValueError(f"empty cycle type: {text!r}")
        total = sum(parts)
        if n is not None:
            if total > n:
                raise ValueError(f"cycle type {text!r} has degree {total} > n={n}")
            parts.extend([1] * (n - total))
        return cls(tuple(parts))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def order(self) -> int:
        return reduce(math.lcm, self.parts, 1)

    @property
    def num_cycles(self) -> int:
        return len(self.parts)

    @property
    def sign(self) -> int:
        return -1 if (self.n - len(self.parts)) % 2 else 1

    @property
    def is_even(self) -> bool:
        return self.sign == 1

    def is_identity(self) -> bool:
        return self.parts[0] == 1

    def power(self, k: int) -> "CycleType":
        """Cycle type of ``g**k``: a c-cycle breaks into gcd(c, k) cycles."""
        out: list[int] = []
        for c in self.parts:
            d = math.gcd(c, k)
            out.extend([c // d] * d)
        return CycleType(tuple(out))

    def multiplicities(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for c in self.parts:
            counts[c] = counts.get(c, 0) + 1
        return counts

    def centralizer_order(self) -> int:
        """Order of the centralizer in S_n of an element of this type."""
        out = 1
        for c, k in self.multiplicities().items():
            out *= c**k * math.factorial(k)
        return out

    def class_size(self) -> int:
        return math.factorial(self.n) // self.centralizer_order()

    def __str__(self) -> str:
        chunks = []
        for c, group in itertools.groupby(self.parts):
            k = len(list(group))
            chunks.append(f"{c}^{k}" if k > 1 else str(c))
        return "[" + ",".join(chunks) + "]"


def partitions(n: int, max_part: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as non-increasing tuples, in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def _partitions_into(n: int, allowed: Sequence[int]) -> Iterator[tuple[int, ...]]:
    allowed = sorted(set(allowed), reverse=True)

    def rec(remaining: int, start: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for i in range(start, len(allowed)):
            c = allowed[i]
            if c <= remaining:
                for rest in rec(remaining - c, i):
                    yield (c,) + rest

    yield from rec(n, 0)


# ---------------------------------------------------------------------------
# Prime-power classes


@dataclass(frozen=True)
class PrimePowerClass:
    """An S_n class of p-elements; ``p**a`` is the element order."""

    base: CycleType
    p: int
    a: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        for c in self.base.parts:
            if c > 1 and (prime_power_decomposition(c) or (0,))[0] != self.p:
                raise ValueError(f"part {c} of {self.base} is not a power of {self.p}")
        if self.p**self.a != self.base.order:
            raise ValueError(f"{self.base} has order {self.base.order}, not {self.p}^{self.a}")

    @classmethod
    def of(cls, ct: CycleType) -> "PrimePowerClass":
        pa = prime_power_decomposition(ct.order)
        if pa is None:
            raise ValueError(f"{ct} does not have prime-power order")
        return cls(ct, *pa)

    @property
    def order(self) -> int:
        return self.p**self.a

    @property
    def n(self) -> int:
        return self.base.n

    def __str__(self) -> str:
        return str(self.base)


def enumerate_p_classes(n: int, p: int) -> list[PrimePowerClass]:
    """All non-identity classes of p-elements in S_n, lexicographic on parts."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("n must be positive")
    powers = [1]
    while powers[-1] * p <= n:
        powers.append(powers[-1] * p)
    out = [
        PrimePowerClass.of(CycleType(parts))
        for parts in _partitions_into(n, powers)
        if parts[0] > 1
    ]
    out.sort(key=lambda cls: cls.base.parts)
    return out


def splits_in_An(ct: CycleType) -> bool:
    """Whether the S_n class of an even permutation breaks into two A_n classes."""
    if not ct.is_even:
        raise ValueError(f"{ct} is an odd cycle type; only even classes lie in A_n")
    return all(c % 2 == 1 for c in ct.parts) and len(set(ct.parts)) == len(ct.parts)


@dataclass(frozen=True)
class AnClassLabel:
    """A conjugacy class of A_n: a cycle type plus an A/B tag for split classes.

    The class holding the canonical representative of the cycle type is
    tagged ``"A"``; its conjugate under a transposition is ``"B"``.
    """

    cycle_type: CycleType
    split_part: Optional[str] = None

    def __post_init__(self):
        if not self.cycle_type.is_even:
            raise ValueError(f"{self.cycle_type} is odd and does not lie in A_n")
        splits = splits_in_An(self.cycle_type)
        if splits and self.split_part not in ("A", "B"):
            raise ValueError(f"{self.cycle_type} splits in A_n; give split_part 'A' or 'B'")
        if not splits and self.split_part is not None:
            raise ValueError(f"{self.cycle_type} does not split in A_n")

    @property
    def order(self) -> int:
        return self.cycle_type.order

    @property
    def n(self) -> int:
        return self.cycle_type.n

    def swapped(self) -> "AnClassLabel":
        if self.split_part is None:
            return self
        return AnClassLabel(self.cycle_type, "B" if self.split_part == "A" else "A")

    def power(self, k: int) -> "AnClassLabel":
        """Class of ``g**k``.

        For a split class and gcd(k, |g|) = 1, conjugating g to g**k inside
        each c-cycle is multiplication by k on Z/c, whose sign is the Jacobi
        symbol (k/c) (Zolotarev). The centralizer of g lies in A_n, so g**k
        stays in the same A_n class iff the product of those symbols is 1.
        """
        ct = self.cycle_type.power(k)
        if not splits_in_An(ct):
            return AnClassLabel(ct)
        if self.split_part is None:
            # reachable only via a power of a non-split class; cannot happen
            # for prime-power orders, see the module tests
            raise ValueError(f"power {k} of the non-split class {self} is split")
        if math.gcd(k, self.order) != 1:
            raise ValueError(f"power {k} of {self} changes the cycle type to a split class")
        sign = 1
        for c in self.cycle_type.parts:
            sign *= jacobi_symbol(k, c)
        return self if sign == 1 else self.swapped()

    def representative(self) -> "Permutation":
        g = Permutation.canonical(self.cycle_type)
        if self.split_part == "B":
            g = g.conjugate_by(Permutation.transposition(self.n, 0, 1))
        return g

    def __str__(self) -> str:
        return str(self.cycle_type) + (self.split_part or "")


def an_classes(n: int) -> list[AnClassLabel]:
    out = []
    for parts in sorted(partitions(n)):
        ct = CycleType(parts)
        if not ct.is_even:
            continue
        if splits_in_An(ct):
            out.extend([AnClassLabel(ct, "A"), AnClassLabel(ct, "B")])
        else:
            out.append(AnClassLabel(ct))
    return out


def jacobi_symbol(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise ValueError("the Jacobi symbol needs an odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


# ---------------------------------------------------------------------------
# Permutations


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection on {len(images)} letters: {images}")
        object.__setattr__(self, "images", images)

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        images = list(range(n))
        images[i], images[j] = j, i
        return cls(tuple(images))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        """Build from 1-based cycles, e.g. ``[(1, 2, 3), (4, 5)]``."""
        images = list(range(n))
        seen: set[int] = set()
        for cycle in cycles:
            cyc = [int(x) - 1 for x in cycle]
            for x in cyc:
                if not 0 <= x < n:
                    raise ValueError(f"letter {x + 1} outside 1..{n}")
                if x in seen:
                    raise ValueError(f"letter {x + 1} appears twice")
                seen.add(x)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, n: int) -> "Permutation":
        """Parse cycle notation such as ``"(1 2 3)(4 5)"`` or ``"()"``."""
        body = text.strip()
        if not re.fullmatch(r"(\s*\([\d\s,]*\)\s*)*", body):
            raise ValueError(f"cannot parse permutation {text!r}")
        cycles = []
        for chunk in re.findall(r"\(([^()]*)\)", body):
            letters = [int(x) for x in re.split(r"[\s,]+", chunk.strip()) if x]
            if letters:
                cycles.append(letters)
        return cls.from_cycles(cycles, n)

    @classmethod
    def canonical(cls, ct: CycleType) -> "Permutation":
        """Cycles laid out consecutively, largest first, letters increasing."""
        cycles = []
        start = 1
        for c in ct.parts:
            cycles.append(range(start, start + c))
            start += c
        return cls.from_cycles(cycles, ct.n)

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.n != other.n:
            raise ValueError("degree mismatch")
        return Permutation(tuple(self.images[x] for x in other.images))

    def __call__(self, i: int) -> int:
        return self.images[i]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(tuple(inv))

    def conjugate_by(self, q: "Permutation") -> "Permutation":
        """``q * self * q^-1``."""
        return q * self * q.inverse()

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        """0-based cycles, each starting at its smallest letter, fixed points included."""
        seen = [False] * self.n
        out = []
        for i in range(self.n):
            if seen[i]:
                continue
            cycle = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                cycle.append(j)
                seen[j] = True
                j = self.images[j]
            out.append(tuple(cycle))
        return out

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    @property
    def sign(self) -> int:
        return cycle_type_of(self).sign

    @property
    def order(self) -> int:
        return cycle_type_of(self).order

    def to_json(self) -> list[int]:
        return [x + 1 for x in self.images]

    @classmethod
    def from_json(cls, images: Sequence[int]) -> "Permutation":
        return cls(tuple(int(x) - 1 for x in images))

    def __str__(self) -> str:
        parts = [c for c in self.cycles() if len(c) > 1]
        if not parts:
            return "()"
        return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in parts)


def cycle_type_of(perm: Permutation) -> CycleType:
    return CycleType(tuple(len(c) for c in perm.cycles()))


# ---------------------------------------------------------------------------
# Stabilizer chain


class _StabilizerChain:
    """Schreier-Sims in Knuth's formulation, base points 0, 1, ..., n-1.

    Level k holds generators of the pointwise stabilizer of 0..k-1 and a
    transversal ``trans[k][j]`` mapping k to j.
    """

    def __init__(self, n: int):
        self.n = n
        ident = tuple(range(n))
        self.identity = ident
        self.gens: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
        self.trans: list[dict[int, tuple[int, ...]]] = [{k: ident} for k in range(n)]
        self.inv_trans: list[dict[int, tuple[int, ...]]] = [{k: ident} for k in range(n)]

    @staticmethod
    def _mul(a, b):
        return tuple(a[x] for x in b)

    @staticmethod
    def _inv(a):
        out = [0] * len(a)
        for i, x in enumerate(a):
            out[x] = i
        return tuple(out)

    def contains(self, k: int, g: tuple[int, ...]) -> bool:
        for level in range(k, self.n):
            j = g[level]
            u_inv = self.inv_trans[level].get(j)
            if u_inv is None:
                return False
            g = self._mul(u_inv, g)
        return g == self.identity

    def add(self, k: int, g: tuple[int, ...]) -> None:
        if k >= self.n or self.contains(k, g):
            return
        self.gens[k].append(g)
        for u in list(self.trans[k].values()):
            self._close(k, self._mul(g, u))

    def _close(self, k: int, g: tuple[int, ...]) -> None:
        j = g[k]
        u = self.trans[k].get(j)
        if u is None:
            self.trans[k][j] = g
            self.inv_trans[k][j] = self._inv(g)
            for s in list(self.gens[k]):
                self._close(k, self._mul(s, g))
        else:
            self.add(k + 1, self._mul(self.inv_trans[k][j], g))

    def order(self) -> int:
        out = 1
        for t in self.trans:
            out *= len(t)
        return out


def group_order(generators: Sequence[Permutation]) -> int:
    """Order of the subgroup of S_n generated by ``generators``."""
    if not generators:
        raise ValueError("need at least one generator")
    n = generators[0].n
    if any(g.n != n for g in generators):
        raise ValueError("generators have different degrees")
    if n > GROUP_ORDER_MAX_DEGREE:
        raise ValueError(f"degree {n} exceeds the cap {GROUP_ORDER_MAX_DEGREE}")
    chain = _StabilizerChain(n)
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 20000))
    try:
        for g in generators:
            chain.add(0, g.images)
    finally:
        sys.setrecursionlimit(old_limit)
    return chain.order()


# ---------------------------------------------------------------------------
# Generation lemma


@dataclass(frozen=True)
class GenerationWitness:
    n: int
    part: int
    kind: str  # "n-cycles" or "double-cycles"
    target: str  # "A_n" or "S_n"
    x: Permutation
    y: Permutation
    conjugator: Permutation
    order: int
    expected_order: int
    tried: int

    @property
    def verified(self) -> bool:
        return self.order == self.expected_order

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "part": self.part,
            "kind": self.kind,
            "target": self.target,
            "x": str(self.x),
            "y": str(self.y),
            "conjugator": str(self.conjugator),
            "order": self.order,
            "expected_order": self.expected_order,
            "conjugates_tried": self.tried,
            "verified": self.verified,
        }


class GenerationFailure(RuntimeError):
    """No conjugate pair generates the target group."""


def find_generating_conjugate(x: Permutation, target_order: int) -> tuple[Permutation, Permutation, int]:
    """First ``q`` in lexicographic order with <x, q x q^-1> of the target order."""
    n = x.n
    tried = 0
    for images in itertools.permutations(range(n)):
        q = Permutation(images)
        y = x.conjugate_by(q)
        tried += 1
        if y == x:
            continue
        if group_order([x, y]) == target_order:
            return q, y, tried
    raise GenerationFailure(f"no conjugate of {x} together with it has order {target_order}")


def verify_generation_lemma(n: int, part: int = 1, kind: Optional[str] = None) -> GenerationWitness:
    """Find two conjugate elements generating A_n (or S_n) as in the lemma.

    ``part=1``: n odd, two n-cycles generating A_n.
    ``part=2``: n > 6 even; ``kind="double-cycles"`` (default) gives two
    double (n/2)-cycles generating A_n, ``kind="n-cycles"`` two n-cycles
    generating S_n.
    """
    if n < 5:
        raise ValueError("the generation lemma is stated for n >= 5")
    if n > GROUP_ORDER_MAX_DEGREE:
        raise ValueError(f"degree {n} exceeds the cap {GROUP_ORDER_MAX_DEGREE}")
    if part == 1:
        if n % 2 == 0:
            raise ValueError("part 1 needs n odd")
        kind = kind or "n-cycles"
        if kind != "n-cycles":
            raise ValueError("part 1 concerns n-cycles")
        ct = CycleType((n,))
        target, expected = "A_n", math.factorial(n) // 2
    elif part == 2:
        if n % 2 or n <= 6:
            raise ValueError("part 2 is stated for even n > 6")
        kind = kind or "double-cycles"
        if kind == "double-cycles":
            ct = CycleType((n // 2, n // 2))
            target, expected = "A_n", math.factorial(n) // 2
        elif kind == "n-cycles":
            ct = CycleType((n,))
            target, expected = "S_n", math.factorial(n)
        else:
            raise ValueError(f"unknown kind {kind!r}")
    else:
        raise ValueError("part must be 1 or 2")
    x = Permutation.canonical(ct)
    q, y, tried = find_generating_conjugate(x, expected)
    order = group_order([x, y])
    return GenerationWitness(n, part, kind, target, x, y, q, order, expected, tried)
