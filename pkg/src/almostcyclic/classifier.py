"""Search for almost-cyclic (representation, class) pairs and verify claims about them.

Every check produces a :class:`VerificationReport`.  Each recorded number
carries a provenance tag saying which route produced it: ``formula``
(closed form on cycle shapes), ``character`` (Murnaghan-Nakayama values and
the multiplicity sum), ``matrix-oracle`` (explicit matrices) or ``dataset``
(the bundled tables).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .characters import (
    AnCharacter,
    Character,
    ClassLabel,
    PartitionLabel,
    an_characters,
    character_degree,
    irrep_spectrum,
    partition_labels,
)
from .dataset import EllCondition, TableRow
from .oracles import WN_ORACLE_MAX_DEGREE, matrix_oracle_Wn
from .permutations import (
    AnClassLabel,
    CycleType,
    Permutation,
    enumerate_p_classes,
    is_prime,
    prime_power_decomposition,
    splits_in_An,
)
from .spectra import (
    AlmostCyclicReport,
    PreconditionError,
    degree_equality_predicted,
    analyze,
    classify_33e,
    describe_root,
    spectrum_on_Wn,
)

GROUPS = ("Sn", "An")
SEARCH_MIN_DEGREE = 5
SEARCH_MAX_DEGREE = 12
TABLE_MAX_DEGREE = 10

PASS, FAIL, NOTE, DATASET_ONLY = "pass", "fail", "note", "dataset-only"


def is_subnatural(label: Character) -> bool:
    """(n-1,1), its conjugate (2,1^(n-2)), or their common A_n restriction."""
    lam = label.origin if isinstance(label, AnCharacter) else label
    n = lam.n
    if n < 3:
        return False
    return lam.parts == (n - 1, 1) or lam.parts == (2,) + (1,) * (n - 2)


@dataclass(frozen=True)
class ClassificationHit:
    n: int
    group: str
    rep: Character
    cls: ClassLabel
    report: AlmostCyclicReport
    subnatural: bool

    def __post_init__(self):
        if not self.report.is_almost_cyclic:
            raise ValueError("a hit must be cyclic or almost cyclic")

    @property
    def dim(self) -> int:
        return character_degree(self.rep)

    @property
    def cycle_type(self) -> CycleType:
        return self.cls if isinstance(self.cls, CycleType) else self.cls.cycle_type

    @property
    def order(self) -> int:
        return self.cycle_type.order

    @property
    def e(self) -> str:
        """Root with multiplicity > 1, or "-" when the action is cyclic."""
        ex = self.report.exceptional
        return "-" if ex is None else describe_root(ex)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "group": self.group,
            "rep": str(self.rep),
            "class": str(self.cls),
            "dim": self.dim,
            "order": self.order,
            "subnatural": self.subnatural,
            "report": self.report.to_json(),
            "provenance": "character",
        }


def group_p_classes(n: int, group: str, p: int) -> list[ClassLabel]:
    """Non-identity p-classes of S_n, or of A_n with split classes as A then B."""
    if group not in GROUPS:
        raise ValueError(f"unknown group {group!r}; expected one of {GROUPS}")
    out: list[ClassLabel] = []
    for pc in enumerate_p_classes(n, p):
        ct = pc.base
        if group == "Sn":
            out.append(ct)
        elif ct.is_even:
            if splits_in_An(ct):
                out.extend([AnClassLabel(ct, "A"), AnClassLabel(ct, "B")])
            else:
                out.append(AnClassLabel(ct))
    return out


def group_characters(n: int, group: str) -> list[Character]:
    if group == "Sn":
        return list(partition_labels(n))
    if group == "An":
        return list(an_characters(n))
    raise ValueError(f"unknown group {group!r}; expected one of {GROUPS}")


def search_almost_cyclic(
    n: int, group: str, p: int, max_degree: int = SEARCH_MAX_DEGREE
) -> list[ClassificationHit]:
    """All characteristic-0 pairs (irreducible character, p-class) acting almost cyclically.

    Linear characters are skipped.  Ordering is by character (partition
    order, "+" before "-") and then by class.
    """
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if not SEARCH_MIN_DEGREE <= n <= max_degree:
        raise ValueError(f"n={n} outside the search range {SEARCH_MIN_DEGREE}..{max_degree}")
    classes = group_p_classes(n, group, p)
    hits = []
    for chi in group_characters(n, group):
        if character_degree(chi) == 1:
            continue
        sub = is_subnatural(chi)
        for cls in classes:
            report = analyze(irrep_spectrum(chi, cls))
            if report.is_almost_cyclic:
                hits.append(ClassificationHit(n, group, chi, cls, report, sub))
    return hits


# ---------------------------------------------------------------------------
# Reports


@dataclass
class VerificationReport:
    suite: str
    checks: list[dict] = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def add(self, name: str, status: str, **details) -> None:
        self.checks.append({"check": name, "status": status, **details})

    @property
    def violations(self) -> list[dict]:
        return [c for c in self.checks if c["status"] == FAIL]

    @property
    def ok(self) -> bool:
        return not self.violations

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for c in self.checks:
            out[c["status"]] = out.get(c["status"], 0) + 1
        return dict(sorted(out.items()))

    def merge(self, other: "VerificationReport") -> None:
        for c in other.checks:
            self.checks.append({**c, "check": f"{other.suite}/{c['check']}"})

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "suite": self.suite,
            "ok": self.ok,
            "params": self.params,
            "counts": self.counts(),
            "checks": self.checks,
        }


# ---------------------------------------------------------------------------
# Table rows


def _slice_filter(table: str):
    """Predicate selecting the hits a source table speaks about."""
    if table in ("1.1", "2.1"):
        return lambda h: h.group == "An"
    if table == "1.2":
        # elements of A_n inside S_n-representations that split on A_n
        return lambda h: h.group == "Sn" and h.cycle_type.is_even and h.rep.is_self_conjugate()
    if table == "2.2":
        return lambda h: h.group == "Sn" and not h.cycle_type.is_even
    raise ValueError(f"unknown source table {table!r}")


def _slice_group_and_primes(table: str) -> tuple[str, bool]:
    group = "An" if table in ("1.1", "2.1") else "Sn"
    odd = table in ("1.1", "1.2")
    return group, odd


def class_tag_map(dataset: Iterable[TableRow]) -> dict[tuple[int, CycleType], str]:
    """(n, cycle type) -> class tag, collected from all row annotations."""
    out = {}
    for row in dataset:
        for tag, ct in row.class_tags().items():
            out[(row.n, ct)] = tag
    return out


def hit_descriptor(hit: ClassificationHit, tags: dict) -> str:
    return tags.get((hit.n, hit.cycle_type), str(hit.order))


def _matches_descriptor(hit: ClassificationHit, desc, row: TableRow) -> bool:
    if hit.order != desc.order:
        return False
    if desc.tag is None:
        return True
    return row.class_tags().get(str(desc)) == hit.cycle_type


class _HitCache:
    def __init__(self, max_degree: int = SEARCH_MAX_DEGREE):
        self.store: dict = {}
        self.max_degree = max_degree

    def get(self, n: int, group: str, p: int) -> list[ClassificationHit]:
        key = (n, group, p)
        if key not in self.store:
            self.store[key] = search_almost_cyclic(n, group, p, self.max_degree)
        return self.store[key]


def _row_e_values(row: TableRow) -> tuple[str, ...]:
    return row.e_values or ("-",)


def verify_table_rows(dataset: Sequence[TableRow], cache: Optional[_HitCache] = None) -> VerificationReport:
    """Recompute (deg, e, m) for every recomputable row; echo the rest as dataset-only."""
    cache = cache or _HitCache()
    report = VerificationReport("tables")
    for row in dataset:
        name = f"table {row.source_table} line {row.line}: {row.group_label} dim {row.dim} o(g) {','.join(map(str, row.o_g))}"
        if row.scope != "recomputable":
            report.add(name, DATASET_ONLY, row=row.to_json(), provenance="dataset")
            continue
        keep = _slice_filter(row.source_table)
        group = row.plain_group
        if group is None:
            raise ValueError(f"line {row.line}: recomputable row needs a plain A_n or S_n label")
        problems = []
        observed = []
        for desc in row.o_g:
            pp = prime_power_decomposition(desc.order)
            if pp is None:
                problems.append(f"o(g)={desc.order} is not a prime power")
                continue
            candidates = [
                h for h in cache.get(row.n, group, pp[0])
                if keep(h) and not h.subnatural and h.dim == row.dim and _matches_descriptor(h, desc, row)
            ]
            profiles = sorted({(h.report.deg, h.e, h.report.max_mult) for h in candidates})
            observed.append({
                "o_g": str(desc),
                "hits": [{"rep": str(h.rep), "class": str(h.cls), "deg": h.report.deg, "e": h.e,
                          "m": h.report.max_mult, "provenance": "character"} for h in candidates],
            })
            for e in _row_e_values(row):
                if (row.deg, e, row.max_mult) not in profiles:
                    problems.append(
                        f"o(g)={desc}: listed (deg={row.deg}, e={e}, m={row.max_mult}) "
                        f"not among computed {profiles or 'none'}"
                    )
        status = FAIL if problems else PASS
        report.add(name, status, row=row.to_json(), computed=observed, problems=problems, provenance="character")
    return report


def expected_tuples(dataset: Sequence[TableRow], n_max: int = TABLE_MAX_DEGREE) -> set[tuple]:
    """(table, n, dim, class, deg, e, m) for every recomputable row, with e alternatives expanded."""
    out = set()
    for row in dataset:
        if row.scope != "recomputable" or row.n > n_max:
            continue
        for desc in row.o_g:
            for e in _row_e_values(row):
                out.add((row.source_table, row.n, row.dim, str(desc), row.deg, e, row.max_mult))
    return out


def computed_tuples(
    dataset: Sequence[TableRow],
    n_min: int = SEARCH_MIN_DEGREE,
    n_max: int = TABLE_MAX_DEGREE,
    cache: Optional[_HitCache] = None,
) -> dict[tuple, list[ClassificationHit]]:
    """Non-subnatural hits in each table's slice, keyed like :func:`expected_tuples`."""
    cache = cache or _HitCache()
    tags = class_tag_map(dataset)
    out: dict[tuple, list[ClassificationHit]] = {}
    for table in ("1.1", "1.2", "2.1", "2.2"):
        group, odd = _slice_group_and_primes(table)
        keep = _slice_filter(table)
        for n in range(n_min, n_max + 1):
            primes = [p for p in range(3, n + 1) if is_prime(p)] if odd else [2]
            for p in primes:
                for h in cache.get(n, group, p):
                    if h.subnatural or not keep(h):
                        continue
                    key = (table, n, h.dim, hit_descriptor(h, tags), h.report.deg, h.e, h.report.max_mult)
                    out.setdefault(key, []).append(h)
    return out


def verify_table_completeness(
    dataset: Sequence[TableRow],
    n_min: int = SEARCH_MIN_DEGREE,
    n_max: int = TABLE_MAX_DEGREE,
    cache: Optional[_HitCache] = None,
) -> VerificationReport:
    """Exact set equality between recomputable rows and the exhaustive search."""
    expected = expected_tuples(dataset, n_max)
    found = computed_tuples(dataset, n_min, n_max, cache)
    report = VerificationReport("completeness", params={"n_min": n_min, "n_max": n_max})
    fields = ("table", "n", "dim", "o_g", "deg", "e", "m")
    for key in sorted(expected | set(found), key=str):
        entry = dict(zip(fields, key))
        if key in expected and key in found:
            report.add("listed and found", PASS, tuple=entry, provenance=["dataset", "character"])
        elif key in expected:
            report.add("listed but not found", FAIL, tuple=entry, provenance="dataset")
        else:
            witnesses = [{"rep": str(h.rep), "class": str(h.cls)} for h in found[key]]
            report.add("found but not listed", FAIL, tuple=entry, witnesses=witnesses, provenance="character")
    return report


def verify_dataset_consistency(dataset: Sequence[TableRow]) -> VerificationReport:
    """Internal checks on the listed numbers; disagreements are notes, not failures."""
    report = VerificationReport("dataset")
    for row in dataset:
        name = f"table {row.source_table} line {row.line}: {row.group_label} dim {row.dim}"
        note = row.consistency_note()
        if note:
            report.add(name, NOTE, message=note, provenance="dataset")
        if row.criteria_scope() != row.scope and not row.annotation:
            report.add(name, FAIL, message="scope flag differs from the row data without an annotation",
                       provenance="dataset")
    return report


# ---------------------------------------------------------------------------
# Corollaries on small-degree minimal polynomials


def _has_cover(row: TableRow, c: int, kinds: str) -> bool:
    return any(cover == c and kind in kinds and not suffix for cover, kind, _, suffix in row.groups)


# (order, dim, deg, [(n, ell condition), ...]) for the odd-order corollary
ODD_CASES = (
    ("1", 9, 8, 7, ((9, "≠2"), (10, "=5"))),
    ("2", 5, 3, 3, ((5, "≠2"), (6, "=3"))),
    ("3", 7, 4, 4, ((7, "any"), (8, "=2"))),
    ("4", 5, 2, 2, ((6, "=3"), (5, "any"))),
)
# (order, dim, deg, [(n, group kind, ell condition), ...]) for 2-elements
TWO_CASES = (
    ("1", 4, 2, 2, ((6, "A", "=3"),)),
    ("2", 4, 2, 2, ((5, "S", "=5"),)),
)


def _match_odd(row: TableRow, desc, p: int) -> Optional[str]:
    for label, order, dim, deg, options in ODD_CASES:
        if (desc.order, row.dim, row.deg) != (order, dim, deg):
            continue
        for n, cond in options:
            if row.n == n and row.ell_condition.compatible(EllCondition.parse(cond), p):
                return label
    return None


def _match_two(row: TableRow, desc) -> Optional[str]:
    kinds = {kind for cover, kind, _, suffix in row.groups if cover == 2 and not suffix}
    for label, order, dim, deg, options in TWO_CASES:
        if (desc.order, row.dim, row.deg) != (order, dim, deg):
            continue
        for n, kind, cond in options:
            if row.n == n and kind in kinds and row.ell_condition.compatible(EllCondition.parse(cond), 2):
                return label
    return None


def verify_corollaries(dataset: Sequence[TableRow], include_trivial_centre: bool = False) -> VerificationReport:
    """Rows with deg < o(g) - 1 must be among the enumerated exceptions.

    Filtering follows the group labels: 2.A_n for odd-order elements, 2.A_n
    or 2.S_n for 2-elements.  Characteristic conditions match when some
    characteristic satisfies both.  With ``include_trivial_centre`` the rows
    labelled A_n are also run through the odd-order filter, and anything
    unmatched is reported as a note.
    """
    report = VerificationReport("corollaries", params={"include_trivial_centre": include_trivial_centre})
    for row in dataset:
        for desc in row.o_g:
            pp = prime_power_decomposition(desc.order)
            if pp is None or row.deg >= desc.order - 1:
                continue
            p = pp[0]
            name = f"table {row.source_table} line {row.line}: {row.group_label} o(g)={desc} dim {row.dim} deg {row.deg}"
            if p > 2 and _has_cover(row, 2, "A"):
                label = _match_odd(row, desc, p)
                if desc.order > 9 or label is None:
                    report.add(name, FAIL, corollary="odd", message="no enumerated case fits", provenance="dataset")
                else:
                    report.add(name, PASS, corollary="odd", case=label, provenance="dataset")
            elif p > 2 and include_trivial_centre and _has_cover(row, 1, "A"):
                label = _match_odd(row, desc, p)
                status = PASS if label and desc.order <= 9 else NOTE
                report.add(name, status, corollary="odd", case=label, provenance="dataset",
                           message=None if label else "trivial-centre row outside the enumerated cases")
            elif p == 2 and _has_cover(row, 2, "AS"):
                label = _match_two(row, desc)
                if label is None:
                    report.add(name, FAIL, corollary="two", message="no enumerated case fits", provenance="dataset")
                else:
                    report.add(name, PASS, corollary="two", case=label, provenance="dataset")
    for row in dataset:
        big = [d.order for d in row.o_g if d.order > 9]
        if row.dim > 8 or big:
            report.add(f"table {row.source_table} line {row.line}: dim <= 8 and o(g) <= 9", FAIL,
                       provenance="dataset")
    report.add("dataset rows have dim <= 8 and o(g) <= 9",
               PASS if all(r.dim <= 8 and all(d.order <= 9 for d in r.o_g) for r in dataset) else FAIL,
               provenance="dataset")
    return report


# ---------------------------------------------------------------------------
# Bounds


def _bound_cases(hit: ClassificationHit) -> list[tuple[str, int, bool]]:
    """Dimension bounds for an element that generates the group with one conjugate.

    Each case is (name, bound, binding).  The even-degree cases bind only for
    n > 6, where the generation statement they rest on holds; at n = 6 they
    are still evaluated and reported as notes.
    """
    n, ct = hit.n, hit.cycle_type
    out = []
    if hit.group == "An" and n % 2 == 1 and ct.parts == (n,):
        out.append(("n-cycle in A_n, n odd", 2 * (n - 1), True))
    if hit.group == "Sn" and n % 2 == 0 and ct.parts == (n,):
        out.append(("n-cycle in S_n, n even", 2 * (n - 1), n > 6))
    if hit.group == "An" and n % 2 == 0 and ct.parts == (n // 2, n // 2):
        out.append(("double (n/2)-cycle in A_n, n even", n - 2, n > 6))
    return out


def verify_bounds(hits: Iterable[ClassificationHit]) -> VerificationReport:
    report = VerificationReport("bounds")
    for hit in hits:
        label = f"{hit.group} n={hit.n} {hit.rep} at {hit.cls}"
        if hit.subnatural:
            ok = hit.dim <= hit.n + 1
            report.add(label, PASS if ok else FAIL, bound="dim <= n+1", dim=hit.dim, provenance="character")
        else:
            ok = hit.dim <= 8 and hit.order <= 9
            report.add(label, PASS if ok else FAIL, bound="dim <= 8 and o(g) <= 9",
                       dim=hit.dim, order=hit.order, provenance="character")
        for case, bound, binding in _bound_cases(hit):
            status = PASS if hit.dim <= bound else (FAIL if binding else NOTE)
            report.add(label, status, bound=f"dim <= {bound} ({case})", dim=hit.dim, provenance="character")
    return report


def ee2_exponent(n: int) -> int:
    s = bin(n).count("1")
    return (n - s - 1) // 2


def ee2_holds(n: int) -> bool:
    return 2 ** ee2_exponent(n) > 2 * (n - 1)


def verify_wagner_ee2(n_max: int, n_min: int = 5) -> VerificationReport:
    """The power of 2 dividing faithful 2.A_n degrees beats 2(n-1) from n = 14 on."""
    if n_max < 14:
        raise ValueError("n_max must be at least 14")
    report = VerificationReport("wagner", params={"n_min": n_min, "n_max": n_max})
    small_failures = [n for n in range(n_min, 14) if not ee2_holds(n)]
    large_failures = [n for n in range(14, n_max + 1) if not ee2_holds(n)]
    report.add("failures below 14", NOTE, failures=small_failures, provenance="formula")
    report.add(f"holds for 14 <= n <= {n_max}", FAIL if large_failures else PASS,
               failures=large_failures, provenance="formula")
    return report


# ---------------------------------------------------------------------------
# The deleted permutation module


LEMMA_PRIMES = (2, 3, 5, 7, 11)
LEMMA_ELLS = (0, 2, 3, 5, 7, 11)


def sweep_w_module(n_min: int = 5, n_max: int = WN_ORACLE_MAX_DEGREE,
                   primes: Sequence[int] = LEMMA_PRIMES, ells: Sequence[int] = LEMMA_ELLS):
    """Yield (n, class, ell, closed form, formula, matrix) over the deleted-module sweep."""
    for n in range(n_min, n_max + 1):
        for p in primes:
            if p > n:
                continue
            for pc in enumerate_p_classes(n, p):
                for ell in ells:
                    if ell and pc.order % ell == 0:
                        continue
                    closed = classify_33e(n, pc, ell)
                    formula = analyze(spectrum_on_Wn(pc.base, ell))
                    matrix = analyze(matrix_oracle_Wn(Permutation.canonical(pc.base), ell))
                    yield n, pc, ell, closed, formula, matrix


def verify_w_module(n_min: int = 5, n_max: int = WN_ORACLE_MAX_DEGREE) -> tuple[VerificationReport, VerificationReport]:
    """Closed-form verdicts against both spectrum routes, and the deg statements.

    Returns (verdict report, deg report).
    """
    verdicts = VerificationReport("lemma33e", params={"n_min": n_min, "n_max": n_max})
    degrees = VerificationReport("deg", params={"n_min": n_min, "n_max": n_max})
    for n, pc, ell, closed, formula, matrix in sweep_w_module(n_min, n_max):
        label = f"n={n} {pc} ell={ell}"
        if formula.to_json() != matrix.to_json():
            verdicts.add(label, FAIL, message="formula and matrix routes disagree",
                         formula=formula.to_json(), matrix=matrix.to_json(), provenance=["formula", "matrix-oracle"])
        if closed.verdict != formula.verdict:
            verdicts.add(label, FAIL, closed_form=closed.verdict, computed=formula.verdict,
                         provenance=["formula", "matrix-oracle"])
        bound_ok = matrix.deg >= pc.order - 1
        degrees.add(label + " bound", PASS if bound_ok else FAIL, deg=matrix.deg, order=pc.order,
                    provenance="matrix-oracle")
        if not formula.is_almost_cyclic:
            continue
        equal = formula.deg == pc.order - 1
        predicted = degree_equality_predicted(n, pc)
        if equal != predicted:
            degrees.add(label + " equality", FAIL, deg=formula.deg, order=pc.order,
                        predicted_equality=predicted, provenance="matrix-oracle")
    verdicts.add("sweep", PASS if verdicts.ok else FAIL, provenance=["formula", "matrix-oracle"])
    return verdicts, degrees


def verify_irrep_oracles(specht_max: int = 7, wn_max: int = WN_ORACLE_MAX_DEGREE) -> VerificationReport:
    """Character spectra against Specht matrices and, for (n-1,1), against W_n."""
    from .oracles import specht_matrix_oracle
    from .permutations import partitions

    report = VerificationReport("oracles", params={"specht_max": specht_max, "wn_max": wn_max})
    bad = 0
    count = 0
    for n in range(1, specht_max + 1):
        classes = [CycleType(p) for p in sorted(partitions(n)) if CycleType(p).order == 1
                   or prime_power_decomposition(CycleType(p).order)]
        for lam in partition_labels(n):
            for ct in classes:
                count += 1
                a = irrep_spectrum(lam, ct)
                b = specht_matrix_oracle(lam, Permutation.canonical(ct))
                if a != b:
                    bad += 1
                    report.add(f"S^{lam} at {ct}", FAIL, character=a.to_json(), matrix=b.to_json(),
                               provenance=["character", "matrix-oracle"])
    report.add(f"Specht modules n <= {specht_max}", PASS if not bad else FAIL, pairs=count,
               provenance=["character", "matrix-oracle"])
    bad = 0
    count = 0
    for n in range(3, wn_max + 1):
        lam = PartitionLabel((n - 1, 1))
        for p in (q for q in range(2, n + 1) if is_prime(q)):
            for pc in enumerate_p_classes(n, p):
                count += 1
                a = irrep_spectrum(lam, pc.base)
                b = spectrum_on_Wn(pc.base, 0)
                if a != b:
                    bad += 1
                    report.add(f"(n-1,1) at {pc}", FAIL, character=a.to_json(), formula=b.to_json(),
                               provenance=["character", "formula"])
    report.add(f"(n-1,1) against W_n, n <= {wn_max}", PASS if not bad else FAIL, pairs=count,
               provenance=["character", "formula"])
    return report


def verify_generation(degrees: Sequence[int] = (5, 7, 8, 9, 10, 11, 12)) -> VerificationReport:
    from .permutations import verify_generation_lemma

    report = VerificationReport("generation")
    for n in degrees:
        part = 1 if n % 2 else 2
        witness = verify_generation_lemma(n, part)
        report.add(f"n={n}", PASS if witness.verified else FAIL, witness=witness.to_json(),
                   provenance="formula")
    return report


def all_hits(n_min: int = SEARCH_MIN_DEGREE, n_max: int = TABLE_MAX_DEGREE,
             cache: Optional[_HitCache] = None) -> list[ClassificationHit]:
    cache = cache or _HitCache()
    out = []
    for n in range(n_min, n_max + 1):
        for group in GROUPS:
            for p in (q for q in range(2, n + 1) if is_prime(q)):
                out.extend(cache.get(n, group, p))
    return out



def verify_emptiness(degrees: Sequence[int] = (11, 12), cache: Optional[_HitCache] = None) -> VerificationReport:
    """Beyond the tables' range only subnatural characters should act almost cyclically."""
    cache = cache or _HitCache()
    report = VerificationReport("emptiness", params={"degrees": list(degrees)})
    for n in degrees:
        for group in GROUPS:
            extra = [
                h.to_json()
                for p in (q for q in range(2, n + 1) if is_prime(q))
                for h in cache.get(n, group, p)
                if not h.subnatural
            ]
            report.add(f"{group} n={n}", FAIL if extra else PASS, hits=extra, provenance="character")
    return report


# ---------------------------------------------------------------------------
# Kronecker products


def _count_vectors(m: int, dims: Sequence[int]):
    """All multiplicity vectors of length m with total in ``dims``, as an int array."""
    import itertools

    import numpy as np

    rows = []
    for d in dims:
        for combo in itertools.combinations_with_replacement(range(m), d):
            v = [0] * m
            for j in combo:
                v[j] += 1
            rows.append(v)
    return np.array(rows, dtype=np.int16)


def kronecker_sweep_violations(m: int, dim_min: int = 2, dim_max: int = 4) -> list[tuple]:
    """Vectorized check of the four Kronecker statements over one conductor m.

    Every pair of non-scalar spectra with roots of order dividing m and
    dim_min <= dim1 <= dim2 <= dim_max is tested.  Returns
    (statement, spectrum1, spectrum2) triples, spectra as count tuples.
    """
    import numpy as np

    vecs = _count_vectors(m, range(dim_min, dim_max + 1))
    dims = vecs.sum(axis=1)
    maxm = vecs.max(axis=1)
    nonscalar = (vecs > 0).sum(axis=1) > 1
    cyclic = maxm <= 1
    neg = (-np.arange(m)) % m
    inv_closed = (vecs == vecs[:, neg]).all(axis=1)
    vecs, dims, maxm, cyclic, inv_closed = (x[nonscalar] for x in (vecs, dims, maxm, cyclic, inv_closed))
    out = []
    for i in range(len(vecs)):
        a = vecs[i]
        sel = dims >= dims[i]
        b = vecs[sel]
        prod = np.zeros((len(b), m), dtype=np.int32)
        for j in np.nonzero(a)[0]:
            prod += int(a[j]) * np.roll(b, j, axis=1)
        pmax = prod.max(axis=1)
        almost = (prod > 1).sum(axis=1) <= 1
        both_cyclic = cyclic[i] & cyclic[sel]
        s1 = pmax > dims[i] * maxm[sel]
        s2 = both_cyclic & (pmax > dims[i])
        s3 = almost & ~both_cyclic
        both_inv = inv_closed[i] & inv_closed[sel]
        where2 = prod.argmax(axis=1)
        sign_root = (where2 == 0) | ((m % 2 == 0) & (where2 == m // 2))
        s4 = almost & both_inv & ((pmax > 2) | ((pmax == 2) & ~sign_root))
        for label, mask in (("1", s1), ("2", s2), ("3", s3), ("4", s4)):
            for k in np.nonzero(mask)[0]:
                out.append((label, tuple(int(x) for x in a), tuple(int(x) for x in b[k])))
    return out


def verify_kronecker(seed: int = 0, random_count: int = 10_000, m_max: int = 12, dim_max: int = 4) -> VerificationReport:
    """Exhaustive small sweep plus seeded random larger pairs."""
    import random

    from .spectra import EigenSpectrum, kronecker_lemma_violations

    report = VerificationReport("kronecker", params={"seed": seed, "random_count": random_count,
                                                     "m_max": m_max, "dim_max": dim_max})
    # conductors not dividing a larger one in range cover every conductor <= m_max
    tops = [m for m in range(2, m_max + 1) if not any(k % m == 0 for k in range(m + 1, m_max + 1))]
    for m in tops:
        bad = kronecker_sweep_violations(m, 2, dim_max)
        report.add(f"exhaustive conductor {m}", FAIL if bad else PASS, violations=bad[:20],
                   provenance="formula")
    rng = random.Random(seed)
    bad = []
    for _ in range(random_count):
        pair = []
        for _ in range(2):
            m = rng.randint(1, 30)
            d = rng.randint(2, 10)
            counts: dict[int, int] = {}
            for _ in range(d):
                j = rng.randrange(m)
                counts[j] = counts.get(j, 0) + 1
            pair.append(EigenSpectrum.from_mapping(m, counts))
        v = kronecker_lemma_violations(*pair)
        if v:
            bad.append({"statements": v, "spectra": [s.to_json() for s in pair]})
    report.add(f"random pairs ({random_count})", FAIL if bad else PASS, violations=bad[:20], provenance="formula")
    return report
