"""Ordinary characters of S_n and A_n and the spectra they induce on p-elements.

S_n values come from the Murnaghan-Nakayama rule on beta-sets.  A_n
characters are restrictions; a self-conjugate partition splits into a pair
whose values on the split class cut out by its diagonal hooks are
(eps +- sqrt(eps * prod h_i)) / 2 with eps = (-1)^((n - d)/2), d the number
of diagonal hooks.  The "+" character takes the "+" value on class A.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from .cyclotomic import CycInt, as_integer, inner_dft, sqrt_of_discriminant
from .permutations import AnClassLabel, CycleType, partitions, prime_power_decomposition, splits_in_An
from .spectra import EigenSpectrum


class CharacterError(ArithmeticError):
    """A character computation produced an impossible value."""


@dataclass(frozen=True, order=True)
class PartitionLabel:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if not parts or any(a < b for a, b in zip(parts, parts[1:])) or parts[-1] < 1:
            raise ValueError(f"not a partition in non-increasing order: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "PartitionLabel":
        return cls(CycleType.parse(text).parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "PartitionLabel":
        return PartitionLabel(tuple(sum(1 for x in self.parts if x > i) for i in range(self.parts[0])))

    def is_self_conjugate(self) -> bool:
        return self == self.conjugate()

    def diagonal_hooks(self) -> tuple[int, ...]:
        conj = self.conjugate().parts
        return tuple(
            self.parts[i] - i + conj[i] - i - 1 for i in range(len(self.parts)) if self.parts[i] > i
        )

    def hook_lengths(self) -> list[int]:
        conj = self.conjugate().parts
        return [
            self.parts[i] - j + conj[j] - i - 1
            for i in range(len(self.parts))
            for j in range(self.parts[i])
        ]

    def dimension(self) -> int:
        return math.factorial(self.n) // math.prod(self.hook_lengths())

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def partition_labels(n: int) -> list[PartitionLabel]:
    """All partitions of n, in lexicographic order."""
    return [PartitionLabel(p) for p in sorted(partitions(n))]


# ---------------------------------------------------------------------------
# Murnaghan-Nakayama


def _beta_set(parts: tuple[int, ...]) -> tuple[int, ...]:
    k = len(parts)
    return tuple(parts[i] + (k - 1 - i) for i in range(k))


def _from_beta(beta: tuple[int, ...]) -> tuple[int, ...]:
    k = len(beta)
    b = sorted(beta, reverse=True)
    parts = tuple(b[i] - (k - 1 - i) for i in range(k))
    return tuple(x for x in parts if x > 0)


@lru_cache(maxsize=None)
def _mn(parts: tuple[int, ...], cycles: tuple[int, ...]) -> int:
    if not cycles:
        return 1 if not parts else 0
    if not parts:
        return 0
    r = cycles[0]
    rest = cycles[1:]
    beta = _beta_set(parts)
    present = set(beta)
    total = 0
    for b in beta:
        if b - r >= 0 and (b - r) not in present:
            # removing an r-rim hook = sliding bead b down to b - r
            height = sum(1 for x in beta if b - r < x < b)
            new_beta = tuple(x if x != b else b - r for x in beta)
            value = _mn(_from_beta(new_beta), rest)
            if value:
                total += -value if height % 2 else value
    return total


def mn_character(lam: PartitionLabel, ct: CycleType) -> int:
    """chi_lambda at the class ct, strips removed for the largest cycle first."""
    if lam.n != ct.n:
        raise ValueError(f"partition of {lam.n} evaluated on a class of degree {ct.n}")
    return _mn(lam.parts, ct.parts)


def character_table(n: int) -> dict[PartitionLabel, dict[CycleType, int]]:
    classes = [CycleType(p) for p in sorted(partitions(n))]
    return {lam: {ct: mn_character(lam, ct) for ct in classes} for lam in partition_labels(n)}


# ---------------------------------------------------------------------------
# A_n characters


@dataclass(frozen=True, order=True)
class AnCharacter:
    """An irreducible character of A_n.

    ``origin`` is normalized to the larger of lambda and its conjugate in
    lexicographic order; ``split_part`` is "+" or "-" exactly when lambda is
    self-conjugate.
    """

    origin: PartitionLabel
    split_part: Optional[str] = None

    def __post_init__(self):
        conj = self.origin.conjugate()
        if conj.parts > self.origin.parts:
            object.__setattr__(self, "origin", conj)
        if self.origin.is_self_conjugate():
            if self.split_part not in ("+", "-"):
                raise ValueError(f"{self.origin} is self-conjugate; give split_part '+' or '-'")
        elif self.split_part is not None:
            raise ValueError(f"{self.origin} is not self-conjugate and does not split")

    @property
    def n(self) -> int:
        return self.origin.n

    @property
    def degree(self) -> int:
        d = self.origin.dimension()
        return d // 2 if self.split_part else d

    def partner(self) -> "AnCharacter":
        if self.split_part is None:
            return self
        return AnCharacter(self.origin, "-" if self.split_part == "+" else "+")

    def __str__(self) -> str:
        return str(self.origin) + (self.split_part or "")


def an_characters(n: int) -> list[AnCharacter]:
    out = []
    for lam in partition_labels(n):
        if lam.conjugate().parts > lam.parts:
            continue
        if lam.is_self_conjugate():
            out.extend([AnCharacter(lam, "+"), AnCharacter(lam, "-")])
        else:
            out.append(AnCharacter(lam))
    return out


def an_character_value(chi: AnCharacter, cls: AnClassLabel) -> CycInt:
    if chi.n != cls.n:
        raise ValueError(f"character of A_{chi.n} evaluated on a class of degree {cls.n}")
    if not cls.cycle_type.is_even:
        raise ValueError(f"{cls.cycle_type} is odd")
    value = mn_character(chi.origin, cls.cycle_type)
    if chi.split_part is None:
        return CycInt.integer(value)
    hooks = chi.origin.diagonal_hooks()
    if cls.split_part is not None and cls.cycle_type.parts == tuple(sorted(hooks, reverse=True)):
        d = len(hooks)
        eps = -1 if ((chi.n - d) // 2) % 2 else 1
        if value != eps:
            raise CharacterError(f"chi_{chi.origin} at its hook class is {value}, expected {eps}")
        q = math.prod(hooks)
        root = sqrt_of_discriminant(eps * q)
        same = (chi.split_part == "+") == (cls.split_part == "A")
        total = CycInt.integer(eps) + (root if same else -root)
        return total.exact_div(2)
    if value % 2:
        raise CharacterError(f"odd value {value} of self-conjugate chi_{chi.origin} at {cls}")
    return CycInt.integer(value // 2)


# ---------------------------------------------------------------------------
# Spectra from characters

Character = Union[PartitionLabel, AnCharacter]
ClassLabel = Union[CycleType, AnClassLabel]


def _class_order(cls: ClassLabel) -> int:
    ct = cls if isinstance(cls, CycleType) else cls.cycle_type
    return ct.order


def character_values_on_powers(chi: Character, cls: ClassLabel) -> list[CycInt]:
    """chi(g^k) for k = 0..|g|-1."""
    m = _class_order(cls)
    if isinstance(chi, PartitionLabel):
        if not isinstance(cls, CycleType):
            raise TypeError("S_n characters take cycle types")
        return [CycInt.integer(mn_character(chi, cls.power(k))) for k in range(m)]
    if isinstance(cls, CycleType):
        if splits_in_An(cls):
            raise ValueError(f"{cls} splits in A_n; give an AnClassLabel with its A/B tag")
        cls = AnClassLabel(cls)
    return [an_character_value(chi, cls.power(k)) for k in range(m)]


def character_degree(chi: Character) -> int:
    return chi.dimension() if isinstance(chi, PartitionLabel) else chi.degree


def irrep_spectrum(chi: Character, cls: ClassLabel) -> EigenSpectrum:
    """Eigenvalue multiplicities of g in the representation affording chi.

    The multiplicity of zeta_m^j is (1/m) sum_k chi(g^k) zeta_m^(-jk); each
    one is checked to be a non-negative rational integer.
    """
    m = _class_order(cls)
    if m > 1 and prime_power_decomposition(m) is None:
        raise ValueError(f"class {cls} has order {m}, not a prime power")
    values = character_values_on_powers(chi, cls)
    counts = {}
    for j in range(m):
        total = inner_dft(values, j)
        value = as_integer(total)
        if value is None or value % m or value < 0:
            raise CharacterError(
                f"multiplicity of zeta_{m}^{j} for {chi} at {cls} is {total}/{m}, not a non-negative integer"
            )
        if value:
            counts[j] = value // m
    spec = EigenSpectrum.from_mapping(m, counts, 0)
    if spec.dim != character_degree(chi):
        raise CharacterError(f"spectrum of {chi} at {cls} has dimension {spec.dim} != {character_degree(chi)}")
    return spec


def character_table_json(n: int, group: str = "Sn") -> dict:
    """Character table as nested JSON: rows by character, columns by class."""
    if group == "Sn":
        classes = [CycleType(p) for p in sorted(partitions(n))]
        rows = {
            str(lam): {str(ct): CycInt.integer(mn_character(lam, ct)).to_json() for ct in classes}
            for lam in partition_labels(n)
        }
    elif group == "An":
        from .permutations import an_classes

        rows = {
            str(chi): {str(cls): an_character_value(chi, cls).to_json() for cls in an_classes(n)}
            for chi in an_characters(n)
        }
    else:
        raise ValueError(f"unknown group {group!r}")
    return {"schema": 1, "group": f"{group[0]}_{n}", "rows": rows}
