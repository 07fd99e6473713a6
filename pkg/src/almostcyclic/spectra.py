"""Eigenvalue-multiplicity spectra and the almost-cyclic predicate.

A spectrum is a multiset of roots of unity stored sparsely as exponents of
zeta_m, where m is the exact conductor (the lcm of the eigenvalue orders).
Eigenvalues in characteristic ell > 0 are identified with complex roots of
unity through the Brauer lift, so only orders coprime to ell may occur.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Mapping, Optional

from .cyclotomic import RootIndex
from .permutations import CycleType, PrimePowerClass, is_prime

CYCLIC = "cyclic"
ALMOST_CYCLIC = "almost_cyclic"
NOT_ALMOST_CYCLIC = "not_almost_cyclic"


class PreconditionError(ValueError):
    """An input violates a standing hypothesis (for instance ell dividing |g|)."""


def _check_ell(ell: int) -> None:
    if ell != 0 and not is_prime(ell):
        raise ValueError(f"characteristic must be 0 or a prime, got {ell}")


@dataclass(frozen=True)
class EigenSpectrum:
    """Multiset of eigenvalues ``zeta_m^j`` with multiplicities, tagged with ell.

    ``mult`` is a sorted tuple of ``(j, multiplicity)`` pairs with positive
    multiplicities; construction normalizes any conductor to the exact one.
    """

    m: int
    mult: tuple[tuple[int, int], ...]
    ell: int = 0

    def __post_init__(self):
        _check_ell(self.ell)
        if self.m < 1:
            raise ValueError("conductor must be positive")
        counts: dict[int, int] = {}
        for j, k in self.mult:
            if k < 0:
                raise ValueError(f"negative multiplicity {k} for exponent {j}")
            if k:
                counts[j % self.m] = counts.get(j % self.m, 0) + k
        orders = [self.m // math.gcd(j, self.m) for j in counts]
        exact = reduce(math.lcm, orders, 1)
        if self.ell:
            bad = [d for d in orders if d % self.ell == 0]
            if bad:
                raise PreconditionError(
                    f"eigenvalue orders {sorted(set(bad))} are divisible by ell={self.ell}"
                )
        step = self.m // exact
        normalized = tuple(sorted((j // step, k) for j, k in counts.items()))
        object.__setattr__(self, "m", exact)
        object.__setattr__(self, "mult", normalized)

    @classmethod
    def from_mapping(cls, m: int, mult: Mapping[int, int], ell: int = 0) -> "EigenSpectrum":
        return cls(m, tuple(mult.items()), ell)

    @property
    def dim(self) -> int:
        return sum(k for _, k in self.mult)

    def as_dict(self) -> dict[int, int]:
        return dict(self.mult)

    def over(self, big_m: int) -> dict[int, int]:
        """Multiplicities indexed by exponents of zeta_M, M a multiple of m."""
        if big_m % self.m:
            raise ValueError(f"{big_m} is not a multiple of {self.m}")
        step = big_m // self.m
        return {j * step: k for j, k in self.mult}

    def multiplicity(self, root: RootIndex) -> int:
        big = math.lcm(self.m, root.m)
        return self.over(big).get(root.j * (big // root.m), 0)

    def roots(self) -> list[tuple[RootIndex, int]]:
        return [(RootIndex(self.m, j), k) for j, k in self.mult]

    def negated(self) -> "EigenSpectrum":
        """Every eigenvalue multiplied by -1."""
        big = math.lcm(self.m, 2)
        shift = big // 2
        return EigenSpectrum.from_mapping(
            big, {(j + shift) % big: k for j, k in self.over(big).items()}, self.ell
        )

    def inverse_closed(self) -> bool:
        d = self.as_dict()
        return all(d.get((-j) % self.m, 0) == k for j, k in d.items())

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "ell": self.ell,
            "dim": self.dim,
            "mult": {str(j): k for j, k in self.mult},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "EigenSpectrum":
        spec = cls(int(data["m"]), tuple((int(j), int(k)) for j, k in data["mult"].items()), int(data.get("ell", 0)))
        if "dim" in data and int(data["dim"]) != spec.dim:
            raise ValueError(f"dim {data['dim']} does not match multiplicities summing to {spec.dim}")
        return spec

    def __str__(self) -> str:
        inner = ", ".join(f"{describe_root(r)}:{k}" for r, k in self.roots())
        return "{" + inner + "}"


def describe_root(root: RootIndex) -> str:
    """Short human form: 1, -1, i, -i, or zeta(d)^j in lowest terms."""
    r = root.reduced()
    if r.m == 1:
        return "1"
    if r.m == 2:
        return "-1"
    if r.m == 4:
        return "i" if r.j == 1 else "-i"
    return str(r)


@dataclass(frozen=True)
class AlmostCyclicReport:
    """Verdict on a semisimple matrix from its eigenvalue multiplicities.

    ``deg`` is the number of distinct eigenvalues, which is the degree of the
    minimal polynomial in the semisimple case.  Cyclic matrices count as
    almost cyclic (k = 0); the verdict names the strongest level.
    """

    verdict: str
    exceptional: Optional[RootIndex]
    deg: int
    max_mult: int
    dim: int = 0

    @property
    def is_almost_cyclic(self) -> bool:
        return self.verdict in (CYCLIC, ALMOST_CYCLIC)

    @property
    def is_scalar(self) -> bool:
        return self.deg == 1

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "exceptional": None if self.exceptional is None else str(self.exceptional.reduced()),
            "e": None if self.exceptional is None else describe_root(self.exceptional),
            "deg": self.deg,
            "max_mult": self.max_mult,
            "dim": self.dim,
            "scalar": self.is_scalar,
        }


def analyze(spec: EigenSpectrum) -> AlmostCyclicReport:
    repeated = [(j, k) for j, k in spec.mult if k > 1]
    deg = len(spec.mult)
    max_mult = max((k for _, k in spec.mult), default=0)
    if not repeated:
        return AlmostCyclicReport(CYCLIC, None, deg, max_mult, spec.dim)
    if len(repeated) == 1:
        j = repeated[0][0]
        return AlmostCyclicReport(ALMOST_CYCLIC, RootIndex(spec.m, j).reduced(), deg, max_mult, spec.dim)
    return AlmostCyclicReport(NOT_ALMOST_CYCLIC, None, deg, max_mult, spec.dim)


# ---------------------------------------------------------------------------
# Permutation modules


def _check_semisimple(ct: CycleType, ell: int) -> None:
    _check_ell(ell)
    if ell and any(c % ell == 0 for c in ct.parts):
        raise PreconditionError(
            f"ell={ell} divides a cycle length of {ct}; only ell coprime to |g| "
            "(the semisimple case ell != p) is supported"
        )


def spectrum_on_Pn(ct: CycleType, ell: int = 0) -> EigenSpectrum:
    """A c-cycle contributes every c-th root of unity once."""
    _check_semisimple(ct, ell)
    m = ct.order
    counts: dict[int, int] = {}
    for c in ct.parts:
        step = m // c
        for j in range(c):
            counts[j * step] = counts.get(j * step, 0) + 1
    return EigenSpectrum.from_mapping(m, counts, ell)


def trivial_factors(n: int, ell: int) -> int:
    """Number of trivial composition factors of the permutation module P_n."""
    return 2 if ell and n % ell == 0 else 1


def spectrum_on_Wn(ct: CycleType, ell: int = 0, sign_twist: bool = False) -> EigenSpectrum:
    """Spectrum on the nontrivial composition factor W_n of P_n (or on W_n tensor sign)."""
    _check_semisimple(ct, ell)
    if sign_twist and ell == 2:
        raise PreconditionError("the sign twist W_n^- needs ell != 2")
    n = ct.n
    m = ct.order
    counts = spectrum_on_Pn(ct, ell).over(m)
    t = trivial_factors(n, ell)
    if counts.get(0, 0) < t:
        raise PreconditionError(f"{ct} on W_{n} leaves a negative eigenvalue-1 multiplicity")
    counts[0] -= t
    spec = EigenSpectrum.from_mapping(m, counts, ell)
    if sign_twist and ct.sign == -1:
        spec = spec.negated()
    return spec


def kronecker(spec1: EigenSpectrum, spec2: EigenSpectrum) -> EigenSpectrum:
    """Spectrum of M1 (x) M2: products of eigenvalues, multiplicities multiplied."""
    if spec1.ell != spec2.ell:
        raise ValueError(f"characteristic mismatch: {spec1.ell} vs {spec2.ell}")
    big = math.lcm(spec1.m, spec2.m)
    a, b = spec1.over(big), spec2.over(big)
    out: dict[int, int] = {}
    for i, x in a.items():
        for j, y in b.items():
            key = (i + j) % big
            out[key] = out.get(key, 0) + x * y
    return EigenSpectrum.from_mapping(big, out, spec1.ell)


def kronecker_lemma_violations(spec1: EigenSpectrum, spec2: EigenSpectrum) -> list[str]:
    """Check the four Kronecker-product multiplicity statements on one pair.

    The statements concern non-scalar diagonal factors with dim(M1) <= dim(M2):
      1. multiplicities of M1 (x) M2 are at most dim(M1) * maxmult(M2);
      2. if both factors are cyclic they are at most dim(M1);
      3. if the product is almost cyclic both factors are cyclic;
      4. if moreover each factor is similar to its inverse, multiplicities are
         at most 2 and a multiplicity-2 eigenvalue is +1 or -1.
    Returns the labels ("1".."4") of violated statements; empty when the pair
    is outside the hypotheses.
    """
    if spec1.dim > spec2.dim:
        spec1, spec2 = spec2, spec1
    r1, r2 = analyze(spec1), analyze(spec2)
    if r1.is_scalar or r2.is_scalar:
        return []
    prod = kronecker(spec1, spec2)
    rp = analyze(prod)
    bad = []
    if rp.max_mult > spec1.dim * r2.max_mult:
        bad.append("1")
    if r1.verdict == CYCLIC and r2.verdict == CYCLIC and rp.max_mult > spec1.dim:
        bad.append("2")
    if rp.is_almost_cyclic and not (r1.verdict == CYCLIC and r2.verdict == CYCLIC):
        bad.append("3")
    if rp.is_almost_cyclic and spec1.inverse_closed() and spec2.inverse_closed():
        if rp.max_mult > 2:
            bad.append("4")
        elif rp.max_mult == 2 and rp.exceptional is not None and rp.exceptional.reduced().m > 2:
            bad.append("4")
    return bad


# ---------------------------------------------------------------------------
# Closed-form classification on W_n


def classify_33e(n: int, cls: PrimePowerClass, ell: int = 0) -> AlmostCyclicReport:
    """Closed-form verdict for a p-element on W_n from its cycle shape alone.

    Almost cyclic exactly for a single nontrivial cycle [p^a, 1^(n-p^a)], or
    for p = 2, n = 2^a + 2 and g = [2^a, 2].  The other fields follow from
    counting cycles: a root of order d > 1 occurs once per cycle of length
    divisible by d, and 1 occurs #cycles - t times, t the number of trivial
    composition factors of P_n.
    """
    if cls.n != n:
        raise ValueError(f"class {cls} has degree {cls.n}, not {n}")
    if cls.p == ell:
        raise PreconditionError(f"ell={ell} equals p; unipotent elements are not covered")
    _check_semisimple(cls.base, ell)
    parts = cls.base.parts
    t = trivial_factors(n, ell)
    ones = len(parts) - t
    nontrivial = sum(1 for c in parts if c > 1)
    order = cls.order
    deg = order - 1 + (1 if ones > 0 else 0)
    single = nontrivial == 1
    two_cycle = cls.p == 2 and len(parts) == 2 and parts[1] == 2 and n == parts[0] + 2 and parts[0] >= 2
    if single:
        if ones >= 2:
            return AlmostCyclicReport(ALMOST_CYCLIC, RootIndex(1, 0), deg, ones, n - t)
        return AlmostCyclicReport(CYCLIC, None, deg, 1, n - t)
    if two_cycle:
        return AlmostCyclicReport(ALMOST_CYCLIC, RootIndex(2, 1), deg, 2, n - t)
    return AlmostCyclicReport(NOT_ALMOST_CYCLIC, None, deg, max(ones, nontrivial), n - t)


def degree_equality_predicted(n: int, cls: PrimePowerClass) -> bool:
    """Whether the closed-form statement predicts deg = |g| - 1 on W_n.

    Predicted cases: |g| = n (g an n-cycle, hence cyclic), or p = 2,
    n = 2^a + 2 and g = [2^a, 2] (whose eigenvalue -1 always has
    multiplicity 2 on W_n).
    """
    parts = cls.base.parts
    if cls.order == n:
        return True
    return cls.p == 2 and len(parts) == 2 and parts[1] == 2 and n == parts[0] + 2 and parts[0] >= 2
