"""The ninety-five families of quasismooth Fano 3-fold hypersurfaces.

The classification data (family number, hypersurface degree, weights) ships as
a TSV table inside the package.  Loading re-validates every arithmetic
invariant a record must satisfy — the degree equals the sum of the nontrivial
weights, the weights ascend from 1, and any three of the nontrivial weights
are coprime — so a corrupted table cannot load silently.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import IO, Iterable, Iterator, Union

from .wps import Rational, Weights, anticanonical_cube

#: Number of families in the classification.
FAMILY_COUNT = 95

#: Canonical TSV column layout: number, d, then the five weights.
TSV_COLUMNS = ("number", "d", "a0", "a1", "a2", "a3", "a4")


class FamilyTableError(ValueError):
    """Base class for errors raised while loading the family table."""


class ParseError(FamilyTableError):
    """A line of the table could not be parsed; carries the 1-based line number."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class ValidationError(FamilyTableError):
    """A parsed record violates an invariant; names the family and the invariant."""

    def __init__(self, family: int | None, message: str):
        prefix = f"family {family}: " if family is not None else ""
        super().__init__(prefix + message)
        self.family = family


class FamilyNotFoundError(FamilyTableError):
    """Requested family number is not present in the database."""


@dataclass(frozen=True)
class FamilyRecord:
    """One family: its number, hypersurface degree, weights and degree invariant."""

    number: int
    d: int
    weights: Weights
    a_cube: Rational

    @classmethod
    def build(cls, number: int, d: int, weights: Weights) -> "FamilyRecord":
        """Construct and validate a record; raises ValidationError on bad data."""
        if not 1 <= number <= FAMILY_COUNT:
            raise ValidationError(number, f"family number must lie in 1..{FAMILY_COUNT}")
        if d != sum(weights.tail):
            raise ValidationError(
                number,
                f"d = {d} but a1+a2+a3+a4 = {sum(weights.tail)} "
                "(invariant d = a1+a2+a3+a4 violated)",
            )
        return cls(number=number, d=d, weights=weights, a_cube=anticanonical_cube(d, weights))


class FamilyDatabase:
    """Immutable, number-indexed collection of exactly 95 validated records."""

    def __init__(self, records: Iterable[FamilyRecord]):
        self._records: tuple[FamilyRecord, ...] = tuple(records)
        if len(self._records) != FAMILY_COUNT:
            raise ValidationError(
                None,
                f"expected exactly {FAMILY_COUNT} family records, got {len(self._records)}",
            )
        numbers = [r.number for r in self._records]
        if numbers != list(range(1, FAMILY_COUNT + 1)):
            raise ValidationError(
                None,
                "family numbers must be exactly 1..95 in ascending order "
                f"(got {numbers[:5]}...{numbers[-3:]})",
            )
        self._by_number = {r.number: r for r in self._records}

    def __iter__(self) -> Iterator[FamilyRecord]:
        return iter(self._records)

    def __len__(self) -> int:
        return len(self._records)

    def get(self, number: int) -> FamilyRecord:
        """The unique record with the given number; FamilyNotFoundError otherwise."""
        try:
            return self._by_number[number]
        except KeyError:
            raise FamilyNotFoundError(
                f"no family numbered {number}; valid numbers are 1..{FAMILY_COUNT}"
            ) from None

    @property
    def records(self) -> tuple[FamilyRecord, ...]:
        return self._records


Source = Union[str, Path, IO[str], IO[bytes]]


def _iter_lines(source: Source) -> Iterator[str]:
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            yield from fh
        return
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    yield from io.StringIO(data)


def parse_family_line(line_number: int, line: str) -> FamilyRecord:
    """Parse one TSV data line into a validated record."""
    fields = line.rstrip("\n").split("\t")
    if len(fields) != len(TSV_COLUMNS):
        raise ParseError(
            line_number,
            f"expected {len(TSV_COLUMNS)} tab-separated fields "
            f"({' '.join(TSV_COLUMNS)}), got {len(fields)}",
        )
    try:
        values = [int(f) for f in fields]
    except ValueError:
        raise ParseError(line_number, f"non-integer field in {fields!r}") from None
    number, d, *ws = values
    try:
        weights = Weights(tuple(ws))  # type: ignore[arg-type]
    except ValueError as exc:
        raise ValidationError(number, str(exc)) from None
    return FamilyRecord.build(number, d, weights)


def load_families(source: Source) -> FamilyDatabase:
    """Load and validate the family table from a path, stream, or open file.

    Lines starting with '#' and blank lines are ignored.  Raises ParseError,
    ValidationError (including a count error when the table does not hold
    exactly 95 records), or OSError for unreadable paths.
    """
    records = []
    for line_number, line in enumerate(_iter_lines(source), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        records.append(parse_family_line(line_number, line))
    return FamilyDatabase(records)


def serialize_families(db: FamilyDatabase) -> str:
    """Canonical TSV serialization: the 95 data lines, no comments."""
    lines = [
        "\t".join(str(v) for v in (r.number, r.d, *r.weights))
        for r in db
    ]
    return "\n".join(lines) + "\n"


def get_family(db: FamilyDatabase, number: int) -> FamilyRecord:
    """Module-level accessor mirroring FamilyDatabase.get."""
    return db.get(number)


def packaged_data_path(name: str) -> Path:
    """Filesystem path of a data file shipped inside the package."""
    return Path(str(resources.files("fano95").joinpath("data", name)))


def load_packaged_families() -> FamilyDatabase:
    """Load the family table shipped with the package."""
    return load_families(packaged_data_path("families.tsv"))
