"""Explicit-matrix oracles for eigenvalue spectra.

These build actual matrices (the deleted permutation module W_n over F_ell
or Q, and Specht modules from polytabloids) and read eigenvalue
multiplicities off the characteristic polynomial by stripping cyclotomic
factors.  They do not use character values, so they check the character
route independently.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .characters import PartitionLabel
from .cyclotomic import cyclotomic_polynomial, poly_divmod
from .permutations import Permutation, cycle_type_of
from .spectra import EigenSpectrum, PreconditionError, _check_ell

WN_ORACLE_MAX_DEGREE = 12
SPECHT_ORACLE_MAX_DEGREE = 7

# Large prime standing in for characteristic 0.  A char-0 matrix of finite
# order has charpoly prod Phi_d^a_d, and distinct Phi_d stay coprime mod any
# prime not dividing the order, so counting factors mod this prime is exact.
_CHAR0_PRIME = (1 << 61) - 1


def charpoly_mod(matrix: Sequence[Sequence[int]], prime: int) -> tuple[int, ...]:
    """Characteristic polynomial det(xI - A) over F_prime, lowest degree first.

    Reduces to upper Hessenberg form by similarity and expands along the
    subdiagonal recurrence.
    """
    n = len(matrix)
    h = [[x % prime for x in row] for row in matrix]
    for j in range(n - 2):
        pivot = next((i for i in range(j + 1, n) if h[i][j]), None)
        if pivot is None:
            continue
        if pivot != j + 1:
            h[pivot], h[j + 1] = h[j + 1], h[pivot]
            for row in h:
                row[pivot], row[j + 1] = row[j + 1], row[pivot]
        inv = pow(h[j + 1][j], prime - 2, prime)
        for i in range(j + 2, n):
            u = h[i][j] * inv % prime
            if not u:
                continue
            ri, rj = h[i], h[j + 1]
            for k in range(n):
                ri[k] = (ri[k] - u * rj[k]) % prime
            for row in h:
                row[j + 1] = (row[j + 1] + u * row[i]) % prime
    # p_k = charpoly of the leading k x k block
    polys: list[list[int]] = [[1]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        cur = [0] * (k + 1)
        for i, c in enumerate(prev):
            cur[i + 1] += c
            cur[i] -= h[k - 1][k - 1] * c
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = prod * h[i][i - 1] % prime
            coeff = prod * h[i - 1][k - 1] % prime
            if coeff:
                for t, c in enumerate(polys[i - 1]):
                    cur[t] -= coeff * c
        polys.append([c % prime for c in cur])
    return tuple(polys[n])


def spectrum_from_charpoly(poly: Sequence[int], order: int, prime: int, ell: int) -> EigenSpectrum:
    """Split a product of cyclotomic polynomials Phi_d, d | order, into multiplicities."""
    rest = tuple(poly)
    counts: dict[int, int] = {}
    for d in range(1, order + 1):
        if order % d:
            continue
        phi = cyclotomic_polynomial(d)
        power = 0
        while len(rest) > 1:
            quot, rem = poly_divmod(rest, phi, prime)
            if any(rem):
                break
            rest = quot
            power += 1
        if power:
            for j in range(order):
                if _order_of(j, order) == d:
                    counts[j] = power
    if tuple(c % prime for c in rest) != (1,):
        raise ArithmeticError(f"characteristic polynomial is not a product of Phi_d with d | {order}")
    return EigenSpectrum.from_mapping(order, counts, ell)


def _order_of(j: int, m: int) -> int:
    from math import gcd

    return m // gcd(j, m)


def matrix_oracle_Wn(g: Permutation, ell: int = 0) -> EigenSpectrum:
    """Spectrum of g on W_n built as an explicit matrix.

    W_n is the sum-zero subspace of F^n, divided by the all-ones vector when
    ell | n.  Basis b_i = e_i - e_n; the all-ones vector is sum b_i mod ell.
    """
    _check_ell(ell)
    n = g.n
    if n > WN_ORACLE_MAX_DEGREE:
        raise ValueError(f"degree {n} exceeds the oracle cap {WN_ORACLE_MAX_DEGREE}")
    order = g.order
    if ell and order % ell == 0:
        raise PreconditionError(f"ell={ell} divides |g|={order}")
    last = n - 1
    cols = []
    for i in range(n - 1):
        v = [0] * (n - 1)
        a, b = g(i), g(last)
        if a != last:
            v[a] += 1
        if b != last:
            v[b] -= 1
        cols.append(v)
    if ell and n % ell == 0:
        k = n - 2
        cols = [[v[i] - v[k] for i in range(k)] for v in cols[:k]]
    dim = len(cols)
    matrix = [[cols[c][r] for c in range(dim)] for r in range(dim)]
    prime = ell or _CHAR0_PRIME
    if dim == 0:
        return EigenSpectrum(1, (), ell)
    return spectrum_from_charpoly(charpoly_mod(matrix, prime), order, prime, ell)


# ---------------------------------------------------------------------------
# Specht modules


def standard_tableaux(lam: PartitionLabel) -> list[tuple[tuple[int, ...], ...]]:
    """Standard Young tableaux filled with 0..n-1, in a fixed recursive order."""
    shape = lam.parts
    n = lam.n
    out = []

    def place(rows: list[list[int]], k: int):
        if k == n:
            out.append(tuple(tuple(r) for r in rows))
            return
        for i in range(len(shape)):
            if len(rows[i]) < shape[i] and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(k)
                place(rows, k + 1)
                rows[i].pop()

    place([[] for _ in shape], 0)
    return out


def _parity(seq: Sequence[int]) -> int:
    inv = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    return -1 if inv % 2 else 1


@lru_cache(maxsize=None)
def _specht_data(parts: tuple[int, ...]):
    lam = PartitionLabel(parts)
    tableaux = standard_tableaux(lam)
    tabloid_index = {_tabloid(t): i for i, t in enumerate(tableaux)}
    dim = len(tableaux)
    m = [[Fraction(0)] * dim for _ in range(dim)]
    for c, t in enumerate(tableaux):
        for r, coeff in _polytabloid(t, tabloid_index).items():
            m[r][c] = Fraction(coeff)
    return tableaux, tabloid_index, _invert(m)


def _tabloid(t) -> tuple[frozenset, ...]:
    return tuple(frozenset(row) for row in t)


def _polytabloid(t, tabloid_index) -> dict[int, int]:
    """Coordinates of e_t on the standard tabloids."""
    ncols = len(t[0])
    columns = [[row[j] for row in t if len(row) > j] for j in range(ncols)]
    out: dict[int, int] = {}
    for perms in itertools.product(*(itertools.permutations(range(len(col))) for col in columns)):
        sign = 1
        mapping = {}
        for col, perm in zip(columns, perms):
            sign *= _parity(perm)
            for src, dst in zip(col, perm):
                mapping[src] = col[dst]
        image = tuple(frozenset(mapping[x] for x in row) for row in t)
        idx = tabloid_index.get(image)
        if idx is not None:
            out[idx] = out.get(idx, 0) + sign
    return out


def _invert(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def specht_matrix(lam: PartitionLabel, g: Permutation) -> list[list[int]]:
    """Matrix of g on the Specht module in the standard polytabloid basis."""
    if lam.n != g.n:
        raise ValueError("partition and permutation have different degrees")
    if lam.n > SPECHT_ORACLE_MAX_DEGREE:
        raise ValueError(f"degree {lam.n} exceeds the Specht oracle cap {SPECHT_ORACLE_MAX_DEGREE}")
    tableaux, tabloid_index, m_inv = _specht_data(lam.parts)
    dim = len(tableaux)
    cols = []
    for t in tableaux:
        moved = tuple(tuple(g(x) for x in row) for row in t)
        v = _polytabloid(moved, tabloid_index)
        coords = []
        for r in range(dim):
            value = sum((m_inv[r][k] * c for k, c in v.items()), Fraction(0))
            if value.denominator != 1:
                raise ArithmeticError("non-integral Specht matrix entry")
            coords.append(int(value))
        cols.append(coords)
    return [[cols[c][r] for c in range(dim)] for r in range(dim)]


def specht_matrix_oracle(lam: PartitionLabel, g: Permutation) -> EigenSpectrum:
    """Characteristic-0 spectrum of g on the Specht module S^lambda."""
    matrix = specht_matrix(lam, g)
    order = cycle_type_of(g).order
    return spectrum_from_charpoly(charpoly_mod(matrix, _CHAR0_PRIME), order, _CHAR0_PRIME, 0)
