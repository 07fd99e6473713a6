"""Bundled classification tables and the characteristic-condition grammar."""

from __future__ import annotations

import csv
import os
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from .permutations import CycleType

DATASET_ENV = "ALMOSTCYCLIC_DATASET"
SOURCE_TABLES = ("1.1", "1.2", "2.1", "2.2")
SCOPES = ("recomputable", "dataset-only")
COLUMNS = (
    "source_table", "group_label", "ell_condition", "dim", "cover_c", "o_g",
    "deg", "e", "max_mult", "pairing_id", "scope", "annotation",
)


class DatasetError(ValueError):
    """A malformed dataset file or row."""


def _normalize(text: str) -> str:
    return text.replace("−", "-").replace("!=", "≠").replace(" ", "").strip()


@dataclass(frozen=True)
class EllCondition:
    """Which field characteristics a row applies to.

    ``forbidden`` may contain the token "p", standing for the prime of the
    element order.  ``allowed`` is empty unless the condition is "=...".
    """

    text: str
    allowed: frozenset = frozenset()
    forbidden: frozenset = frozenset()
    greater_than: Optional[int] = None

    @classmethod
    def parse(cls, text: str) -> "EllCondition":
        t = _normalize(text)
        if t in ("any", ""):
            return cls(text)
        try:
            if t.startswith("≠"):
                items = t[1:].split(",")
                return cls(text, forbidden=frozenset(x if x == "p" else int(x) for x in items))
            if t.startswith("="):
                return cls(text, allowed=frozenset(int(x) for x in t[1:].split(",")))
            if t.startswith(">"):
                return cls(text, greater_than=int(t[1:]))
        except ValueError:
            pass
        raise DatasetError(f"cannot parse characteristic condition {text!r}")

    def admits(self, ell: int, p: Optional[int] = None) -> bool:
        if self.allowed:
            return ell in self.allowed
        if ell in self.forbidden or (p is not None and "p" in self.forbidden and ell == p):
            return False
        if self.greater_than is not None and ell:
            return ell > self.greater_than
        return True

    def admits_ordinary(self) -> bool:
        return not self.allowed and 0 not in self.forbidden

    def compatible(self, other: "EllCondition", p: Optional[int] = None, limit: int = 100) -> bool:
        """True if some characteristic (0 or a prime below ``limit``) satisfies both."""
        from .permutations import is_prime

        candidates = [0] + [q for q in range(2, limit) if is_prime(q)]
        return any(self.admits(q, p) and other.admits(q, p) for q in candidates)

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True, order=True)
class ClassDescriptor:
    order: int
    tag: Optional[str] = None

    @classmethod
    def parse_list(cls, text: str) -> tuple["ClassDescriptor", ...]:
        out = []
        for item in _normalize(text).split(","):
            m = re.fullmatch(r"(\d+)([A-Z](?:_\d+)?)?", item)
            if not m:
                raise DatasetError(f"cannot parse class descriptor {item!r}")
            out.append(cls(int(m.group(1)), m.group(2)))
        return tuple(out)

    def __str__(self) -> str:
        return f"{self.order}{self.tag or ''}"


# e descriptors: "−" (absent), "1", "−1", "±1", "∓1", "±√−1"
_E_VALUES = {
    "-": (),
    "1": ("1",),
    "-1": ("-1",),
    "±1": ("1", "-1"),
    "∓1": ("-1", "1"),
    "±√-1": ("i", "-i"),
    "±i": ("i", "-i"),
}


def parse_e(text: str) -> tuple[str, ...]:
    """Eigenvalue alternatives named by an e entry, as root descriptions."""
    key = _normalize(text)
    if key not in _E_VALUES:
        raise DatasetError(f"cannot parse eigenvalue descriptor {text!r}")
    return _E_VALUES[key]


_GROUP = re.compile(r"(?:(\d+)\.)?([AS])_(\d+)((?:\.2_\d+)?)")


def parse_group_label(label: str) -> list[tuple[int, str, int, str]]:
    """Split "3.A_6, 6.A_6" into (cover, "A"|"S", n, extension suffix) tuples."""
    out = []
    for part in label.split(","):
        m = _GROUP.fullmatch(part.strip())
        if not m:
            raise DatasetError(f"cannot parse group label {label!r}")
        out.append((int(m.group(1) or 1), m.group(2), int(m.group(3)), m.group(4)))
    return out


@dataclass(frozen=True)
class TableRow:
    source_table: str
    group_label: str
    ell_condition: EllCondition
    dim: int
    covers: tuple[int, ...]
    o_g: tuple[ClassDescriptor, ...]
    deg: int
    e: str
    max_mult: int
    pairing_id: str = ""
    scope: str = "dataset-only"
    annotation: str = ""
    line: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.source_table not in SOURCE_TABLES:
            raise DatasetError(f"unknown source table {self.source_table!r}")
        if self.scope not in SCOPES:
            raise DatasetError(f"unknown scope {self.scope!r}")
        if (self.max_mult == 1) != (not self.e_values):
            raise DatasetError(f"line {self.line}: m = 1 must go with an absent e")
        if self.dim < self.deg:
            raise DatasetError(f"line {self.line}: dim < deg")

    @property
    def cover_c(self) -> int:
        return self.covers[0]

    @property
    def e_values(self) -> tuple[str, ...]:
        return parse_e(self.e)

    @property
    def groups(self) -> list[tuple[int, str, int, str]]:
        return parse_group_label(self.group_label)

    @property
    def n(self) -> int:
        return self.groups[0][2]

    @property
    def plain_group(self) -> Optional[str]:
        """"An" or "Sn" when the label is a single group A_n or S_n, else None."""
        groups = self.groups
        if len(groups) == 1 and groups[0][0] == 1 and not groups[0][3]:
            return groups[0][1] + "n"
        return None

    def class_tags(self) -> dict[str, CycleType]:
        """Class tags bound to cycle types by a "class=3B:[3,3]" annotation."""
        out = {}
        for m in re.finditer(r"class=(\w+):(\[[^\]]*\])", self.annotation):
            out[m.group(1)] = CycleType.parse(m.group(2), self.n)
        return out

    def criteria_scope(self) -> str:
        """Scope implied by the row data alone: ordinary, trivial centre, plain group."""
        if self.cover_c == 1 and len(self.covers) == 1 and self.ell_condition.admits_ordinary() and self.plain_group:
            return "recomputable"
        return "dataset-only"

    def consistency_note(self) -> Optional[str]:
        """Distinct eigenvalues plus the extra copies of e should add up to dim."""
        expected = self.deg - 1 + self.max_mult
        if expected != self.dim:
            return f"dim {self.dim} but deg - 1 + m = {expected}"
        return None

    def to_json(self) -> dict:
        return {
            "source_table": self.source_table,
            "group_label": self.group_label,
            "ell_condition": self.ell_condition.text,
            "dim": self.dim,
            "cover_c": ",".join(map(str, self.covers)),
            "o_g": ",".join(map(str, self.o_g)),
            "deg": self.deg,
            "e": self.e,
            "max_mult": self.max_mult,
            "pairing_id": self.pairing_id,
            "scope": self.scope,
            "annotation": self.annotation,
            "line": self.line,
        }


def _parse_row(record: dict, line: int) -> TableRow:
    try:
        return TableRow(
            source_table=record["source_table"].strip(),
            group_label=record["group_label"].strip(),
            ell_condition=EllCondition.parse(record["ell_condition"]),
            dim=int(record["dim"]),
            covers=tuple(int(x) for x in record["cover_c"].split(",")),
            o_g=ClassDescriptor.parse_list(record["o_g"]),
            deg=int(record["deg"]),
            e=record["e"].strip(),
            max_mult=int(record["max_mult"]),
            pairing_id=record["pairing_id"].strip(),
            scope=record["scope"].strip(),
            annotation=record["annotation"].strip(),
            line=line,
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise DatasetError(f"line {line}: missing or malformed field ({exc})") from exc
    except ValueError as exc:
        if isinstance(exc, DatasetError):
            raise
        raise DatasetError(f"line {line}: {exc}") from exc


def default_dataset_path() -> str:
    env = os.environ.get(DATASET_ENV)
    if env:
        return env
    return str(resources.files("almostcyclic").joinpath("data/tables.csv"))


def load_dataset(path: Optional[str] = None) -> list[TableRow]:
    path = path or default_dataset_path()
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            if tuple(reader.fieldnames or ()) != COLUMNS:
                raise DatasetError(f"{path}: expected columns {','.join(COLUMNS)}")
            return [_parse_row(rec, i) for i, rec in enumerate(reader, start=2)]
    except OSError as exc:
        raise DatasetError(f"cannot read dataset {path}: {exc}") from exc
