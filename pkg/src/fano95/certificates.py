"""Numeric exclusion certificates for the remaining curve classes.

Two certificate kinds close out the curves that survive the coarse bounds:

* *Test-class certificates*: blow up the curve C, pick the nef class
  M = b·A − E, and evaluate M·B² with B = −K.  Strict negativity excludes C.
  The value collapses to a closed form in (b, A³, deg C, genus).

* *Surface certificates*: restrict to a general surface T in |m·A − C|,
  compute the adjunction different of C in T, its self-intersection on T,
  and either a single exclusion value (method "41") or a two-curve pencil
  contradiction (method "42").

Certificate validity is always a strict inequality; an exactly-zero value is
reported invalid and additionally flagged as a boundary case.  The shipped
surface-row table is verified, not trusted: each row's "fails" tags are
re-derived from the classification verdicts and any mismatch is an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Iterable

from .families import (
    FamilyDatabase,
    FamilyRecord,
    Source,
    _iter_lines,
    packaged_data_path,
)
from .lemmas import (
    BoundStatus,
    CaseTag,
    case1_verdict,
    case2_verdict,
    classify_case,
    contracted_verdict,
)
from .wps import Rational, StratumCurve

SURFACE_ROWS_FILENAME = "surface_rows.tsv"

#: Column layout of the surface-row TSV (tab-separated, "#" comments allowed).
SURFACE_ROW_COLUMNS = ("family", "vanishing", "fails", "method", "m")

VALID_FAIL_TAGS = frozenset({"residual", "contracted"})


class CertificateError(Exception):
    """A certificate that was expected to be valid is not."""


class RowError(CertificateError):
    """A surface-table row failed to certify or cross-check."""

    def __init__(self, family: int, message: str):
        super().__init__(f"family {family}: {message}")
        self.family = family


class SurfaceRowParseError(ValueError):
    """A surface-row TSV line could not be parsed."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


# ---------------------------------------------------------------------------
# Test-class certificates
# ---------------------------------------------------------------------------

def rational_curve_blowup_numbers(
    deg_c: Rational, p_a: int
) -> tuple[Rational, Rational, Rational]:
    """Intersection numbers (A²E, AE², E³) of the exceptional divisor over a
    curve of degree deg_c and arithmetic genus p_a on an index-one 3-fold."""
    deg_c = Fraction(deg_c)
    return (Fraction(0), -deg_c, -deg_c + 2 - 2 * p_a)


def test_class_value_expanded(
    b: int, a_cube: Rational, a2e: Rational, ae2: Rational, e3: Rational
) -> Rational:
    """M·B² by multiplying out (bA − E)(A − E)²: b·A³ − (2b+1)·A²E + (b+2)·AE² − E³."""
    if b < 1:
        raise ValueError(f"test-class multiplier must be >= 1, got {b}")
    return b * Fraction(a_cube) - (2 * b + 1) * Fraction(a2e) \
        + (b + 2) * Fraction(ae2) - Fraction(e3)


def test_class_value(b: int, a_cube: Rational, deg_c: Rational, p_a: int) -> Rational:
    """M·B² for M = b·A − E over a curve of degree deg_c and genus p_a.

    Closed form b·A³ − (b+1)·deg_c − 2 + 2·p_a; asserted equal to the full
    triple-product expansion on every call, so the two derivations cannot
    drift apart.
    """
    if b < 1:
        raise ValueError(f"test-class multiplier must be >= 1, got {b}")
    deg_c = Fraction(deg_c)
    if deg_c <= 0:
        raise ValueError(f"curve degree must be positive, got {deg_c}")
    if p_a < 0:
        raise ValueError(f"arithmetic genus must be non-negative, got {p_a}")
    a_cube = Fraction(a_cube)
    closed = b * a_cube - (b + 1) * deg_c - 2 + 2 * p_a
    expanded = test_class_value_expanded(
        b, a_cube, *rational_curve_blowup_numbers(deg_c, p_a)
    )
    if closed != expanded:
        raise AssertionError(
            f"closed form {closed} disagrees with expansion {expanded}"
        )
    return closed


@dataclass(frozen=True)
class TestClassCertificate:
    """A strict-negativity certificate M·B² < 0 excluding one curve."""

    family: int
    curve: str          # human-readable description of the excluded curve
    b: int              # multiplier in the test class b·A − E
    a_cube: Rational
    deg_c: Rational
    p_a: int
    value: Rational

    @property
    def valid(self) -> bool:
        return self.value < 0

    @property
    def boundary(self) -> bool:
        return self.value == 0


#: The curves needing a test class in the three smallest-weight families:
#: (family, curve description, b, deg_c).  All are rational (p_a = 0).
_TEST_CLASS_CURVES: tuple[tuple[int, str, int, int], ...] = (
    (1, "twisted cubic", 2, 3),
    (2, "conic", 2, 2),
    (3, "conic", 6, 2),
    (4, "line", 2, 1),
    (5, "line", 6, 1),
    (6, "line", 4, 1),
)


def case3_test_class_certificates(
    db: FamilyDatabase,
) -> tuple[TestClassCertificate, ...]:
    """Build the six test-class certificates for the a1 = a2 = 1 families
    whose degree cap is >= 1, and insist every value is strictly negative."""
    certs = []
    for number, curve, b, deg_c in _TEST_CLASS_CURVES:
        f = db.get(number)
        value = test_class_value(b, f.a_cube, Fraction(deg_c), 0)
        cert = TestClassCertificate(
            family=number,
            curve=curve,
            b=b,
            a_cube=f.a_cube,
            deg_c=Fraction(deg_c),
            p_a=0,
            value=value,
        )
        if not cert.valid:
            raise CertificateError(
                f"family {number} ({curve}): test-class value {value} is not "
                "strictly negative"
            )
        certs.append(cert)
    return tuple(certs)


# ---------------------------------------------------------------------------
# Surface-method building blocks
# ---------------------------------------------------------------------------

def different_total(indices: Iterable[int]) -> Rational:
    """Total coefficient of the adjunction different: Σ (m−1)/m over the
    singular-point indices the curve passes through."""
    total = Fraction(0)
    for m in indices:
        if m < 2:
            raise ValueError(f"singular-point index must be >= 2, got {m}")
        total += Fraction(m - 1, m)
    return total


def curve_self_intersection(m: int, deg_c: Rational, diff_total: Rational) -> Rational:
    """C² on a general surface T in |m·A − C|, by adjunction:
    deg(K_C + Diff) = (K + T)·C + C²_T with K + T ~ (m−1)·A."""
    if m < 1:
        raise ValueError(f"surface-system multiplier must be >= 1, got {m}")
    return -2 + Fraction(diff_total) - (m - 1) * Fraction(deg_c)


def surface_exclusion_value(
    m: int, a_cube: Rational, deg_c: Rational, c2t: Rational
) -> Rational:
    """Self-intersection of the restricted mobile system on T:
    m·A³ − 2·deg_c + C²_T.  Strict negativity excludes the curve."""
    if m < 1:
        raise ValueError(f"surface-system multiplier must be >= 1, got {m}")
    return m * Fraction(a_cube) - 2 * Fraction(deg_c) + Fraction(c2t)


@dataclass(frozen=True)
class TwoCurveCertificate:
    """Pencil-variant certificate: T carries a second curve C′ with
    C + C′ ~ A|_T.  Negativity of C′² forces the mobile part onto C′, and the
    combined degree then violates the global degree cap."""

    a_cube: Rational
    deg_c: Rational
    deg_c_prime: Rational
    c_prime_sq: Rational

    @property
    def forces_alpha_one(self) -> bool:
        return self.c_prime_sq < 0

    @property
    def degree_contradiction(self) -> bool:
        return self.deg_c + self.deg_c_prime > self.a_cube

    @property
    def valid(self) -> bool:
        return self.forces_alpha_one and self.degree_contradiction

    @property
    def boundary(self) -> bool:
        return self.c_prime_sq == 0 or self.deg_c + self.deg_c_prime == self.a_cube


def two_curve_certificate(
    a_cube: Rational,
    deg_c: Rational,
    deg_c_prime: Rational,
    c_prime_sq: Rational,
) -> TwoCurveCertificate:
    """Evaluate the two-curve pencil contradiction from its four inputs."""
    deg_c = Fraction(deg_c)
    deg_c_prime = Fraction(deg_c_prime)
    if deg_c <= 0 or deg_c_prime <= 0:
        raise ValueError(
            f"curve degrees must be positive, got {deg_c} and {deg_c_prime}"
        )
    return TwoCurveCertificate(
        a_cube=Fraction(a_cube),
        deg_c=deg_c,
        deg_c_prime=deg_c_prime,
        c_prime_sq=Fraction(c_prime_sq),
    )


# ---------------------------------------------------------------------------
# Surface-row table
# ---------------------------------------------------------------------------

class Method(Enum):
    """Which surface argument a row uses."""

    M41 = "41"  # single exclusion value m·A³ − 2·deg_c + C²_T < 0
    M42 = "42"  # two-curve pencil contradiction


@dataclass(frozen=True)
class SurfaceRow:
    """One row of the surface-method table: which curve of which family is
    excluded on a surface in |m·A − C|, and which coarse bounds it evaded."""

    family: int
    vanishing: frozenset[int]       # coordinate indices cut out to give C
    fails: frozenset[str]           # subset of {"residual", "contracted"}
    method: Method
    m: int

    def __post_init__(self) -> None:
        if not 1 <= self.family <= 95:
            raise ValueError(f"family number must lie in 1..95, got {self.family}")
        if len(self.vanishing) != 3 or not all(0 <= i <= 4 for i in self.vanishing):
            raise ValueError(
                f"vanishing set must be 3 distinct indices in 0..4, got "
                f"{sorted(self.vanishing)}"
            )
        bad = self.fails - VALID_FAIL_TAGS
        if bad:
            raise ValueError(f"unknown fail tags {sorted(bad)}")
        if self.m < 1:
            raise ValueError(f"surface-system multiplier must be >= 1, got {self.m}")


def parse_surface_row(line: str, line_number: int | None = None) -> SurfaceRow:
    """Parse one TSV data line: family, vanishing indices, fail tags, method, m."""
    fields = line.rstrip("\n").split("\t")
    if len(fields) != len(SURFACE_ROW_COLUMNS):
        raise SurfaceRowParseError(
            f"expected {len(SURFACE_ROW_COLUMNS)} tab-separated fields, got "
            f"{len(fields)}",
            line_number,
        )
    raw_family, raw_vanishing, raw_fails, raw_method, raw_m = fields
    try:
        family = int(raw_family)
        vanishing = frozenset(int(p) for p in raw_vanishing.split(","))
        m = int(raw_m)
    except ValueError as exc:
        raise SurfaceRowParseError(f"non-integer field: {exc}", line_number) from exc
    fails = frozenset(p for p in raw_fails.split(",") if p)
    try:
        method = Method(raw_method)
    except ValueError as exc:
        raise SurfaceRowParseError(
            f"method must be one of {[m.value for m in Method]}, got {raw_method!r}",
            line_number,
        ) from exc
    try:
        return SurfaceRow(
            family=family, vanishing=vanishing, fails=fails, method=method, m=m
        )
    except ValueError as exc:
        raise SurfaceRowParseError(str(exc), line_number) from exc


def load_surface_rows(source: Source) -> tuple[SurfaceRow, ...]:
    """Load surface rows from a path, open stream, or TSV text.

    Blank lines and lines starting with "#" are skipped.  Rows keep file
    order; duplicates are rejected.
    """
    rows: list[SurfaceRow] = []
    seen: set[tuple[int, frozenset[int]]] = set()
    for line_number, raw in enumerate(_iter_lines(source), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        row = parse_surface_row(raw, line_number)
        key = (row.family, row.vanishing)
        if key in seen:
            raise SurfaceRowParseError(
                f"duplicate row for family {row.family}, vanishing "
                f"{sorted(row.vanishing)}",
                line_number,
            )
        seen.add(key)
        rows.append(row)
    return tuple(rows)


def serialize_surface_rows(rows: Iterable[SurfaceRow]) -> str:
    """Canonical TSV serialization (data lines only, trailing newline)."""
    lines = []
    for row in rows:
        lines.append(
            "\t".join(
                (
                    str(row.family),
                    ",".join(str(i) for i in sorted(row.vanishing)),
                    ",".join(sorted(row.fails)),
                    row.method.value,
                    str(row.m),
                )
            )
        )
    return "\n".join(lines) + "\n"


def load_packaged_surface_rows() -> tuple[SurfaceRow, ...]:
    """Load the surface-row table shipped with the package."""
    return load_surface_rows(packaged_data_path(SURFACE_ROWS_FILENAME))


# ---------------------------------------------------------------------------
# Row certification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SurfaceCertificate:
    """Fully evaluated surface certificate for one table row."""

    family: int
    curve: StratumCurve
    m: int
    method: Method
    diff_indices: tuple[int, ...]
    diff_total: Rational
    c2t: Rational
    exclusion_value: Rational | None = None       # method 41 only
    companion: TwoCurveCertificate | None = None  # method 42 only

    @property
    def deg_c(self) -> Rational:
        return self.curve.degree

    @property
    def valid(self) -> bool:
        if self.method is Method.M41:
            return self.exclusion_value < 0
        return self.companion.valid

    @property
    def boundary(self) -> bool:
        """True when some deciding quantity is exactly zero/equal — reported
        separately because validity demands strict inequalities."""
        if self.method is Method.M41:
            return self.exclusion_value == 0
        return self.companion.boundary


def certify_row(f: FamilyRecord, row: SurfaceRow) -> SurfaceCertificate:
    """Evaluate one surface row bottom-up from the family's weights.

    The curve is the coordinate stratum of the row's vanishing indices.  Its
    singular-point indices in T are taken to be the surviving weights
    exceeding 1 — an assumption, so any row it fails to certify is surfaced
    rather than patched (see ``verify_surface_table``).
    """
    if row.family != f.number:
        raise RowError(
            row.family, f"row applied to family record {f.number}"
        )
    curve = StratumCurve.from_vanishing(f.weights, row.vanishing)
    deg_c = curve.degree
    diff_indices = tuple(sorted(w for w in curve.surviving_weights if w > 1))
    diff = different_total(diff_indices)
    c2t = curve_self_intersection(row.m, deg_c, diff)
    if row.method is Method.M41:
        value = surface_exclusion_value(row.m, f.a_cube, deg_c, c2t)
        return SurfaceCertificate(
            family=f.number,
            curve=curve,
            m=row.m,
            method=row.method,
            diff_indices=diff_indices,
            diff_total=diff,
            c2t=c2t,
            exclusion_value=value,
        )
    # Method 42: the pencil A|_T cuts out C + C', so deg C' = m*A^3 - deg C;
    # C' meets the same singular points, giving its self-intersection by the
    # same adjunction formula.
    deg_c_prime = row.m * f.a_cube - deg_c
    if deg_c_prime <= 0:
        raise RowError(
            f.number,
            f"two-curve method needs positive companion degree, got {deg_c_prime}",
        )
    c_prime_sq = curve_self_intersection(row.m, deg_c_prime, diff)
    companion = two_curve_certificate(f.a_cube, deg_c, deg_c_prime, c_prime_sq)
    return SurfaceCertificate(
        family=f.number,
        curve=curve,
        m=row.m,
        method=row.method,
        diff_indices=diff_indices,
        diff_total=diff,
        c2t=c2t,
        companion=companion,
    )


def expected_fail_tags(f: FamilyRecord) -> frozenset[str]:
    """Which coarse bounds genuinely fail for this family, re-derived from the
    weights: "residual" when the second-case curve bound fails, "contracted"
    when neither contracted-curve dismissal applies."""
    tags = set()
    if classify_case(f) is CaseTag.CASE2 and not case2_verdict(f):
        tags.add("residual")
    if not contracted_verdict(f).safe:
        tags.add("contracted")
    return frozenset(tags)


@dataclass(frozen=True)
class TableVerification:
    """Outcome of verifying the whole surface-row table."""

    certificates: tuple[SurfaceCertificate, ...]
    invalid: tuple[SurfaceCertificate, ...]
    tag_mismatches: tuple[tuple[int, frozenset[str], frozenset[str]], ...]
    # (family, tags in the row file, tags re-derived from the weights)

    @property
    def ok(self) -> bool:
        return not self.invalid and not self.tag_mismatches


def verify_surface_table(db: FamilyDatabase, rows: Iterable[SurfaceRow]) -> TableVerification:
    """Certify every row and cross-check its "fails" tags against the
    re-derived verdicts.  Never raises for invalid certificates; they are
    collected so callers can report all failures at once."""
    certificates = []
    invalid = []
    mismatches = []
    for row in rows:
        f = db.get(row.family)
        cert = certify_row(f, row)
        certificates.append(cert)
        if not cert.valid:
            invalid.append(cert)
        expected = expected_fail_tags(f)
        if row.fails != expected:
            mismatches.append((row.family, row.fails, expected))
    return TableVerification(
        certificates=tuple(certificates),
        invalid=tuple(invalid),
        tag_mismatches=tuple(mismatches),
    )


# ---------------------------------------------------------------------------
# Extension checks for the Case-1 families where the residual bound fails
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtensionEntry:
    """One comparison in the extension argument, with what a non-strict
    outcome would require (the geometric step the engine cannot check)."""

    label: str
    lhs: Rational
    rhs: Rational
    assumption_if_not_strict: str

    @property
    def relation(self) -> str:
        if self.lhs > self.rhs:
            return ">"
        if self.lhs == self.rhs:
            return "="
        return "<"

    @property
    def strict(self) -> bool:
        """True when the inequality alone kills the candidate curve."""
        return self.lhs > self.rhs


@dataclass(frozen=True)
class ExtensionCheck:
    """All numeric comparisons behind extending the Case-1 bound to one of
    the families where it fails outright."""

    family: int
    a_cube: Rational
    entries: tuple[ExtensionEntry, ...]

    @property
    def strict_entries(self) -> tuple[ExtensionEntry, ...]:
        return tuple(e for e in self.entries if e.strict)

    @property
    def assumption_entries(self) -> tuple[ExtensionEntry, ...]:
        """Entries that are equalities or reversed — each one leans on the
        recorded geometric assumption instead of arithmetic."""
        return tuple(e for e in self.entries if not e.strict)


def extension_check(f: FamilyRecord) -> ExtensionCheck:
    """Evaluate the double-projection comparisons for one Case-1 family whose
    residual bound fails (d >= a2*a4).

    The candidate curve projects twice; either the image is a curve (degree
    1/(a1*a2)) or a point of the weighted plane P(1, a1, a2), whose four
    orbits give fibres of degree 1/a3 (twice, with the binomial orbit
    degenerating to 1/(a3*h) when h = gcd(a1, a2) > 1), 1/(a1*a3), or the
    section of degree a1*A^3 — each compared against the degree cap A^3.
    """
    verdict = case1_verdict(f)
    if verdict.status is not BoundStatus.FAILS:
        raise ValueError(
            f"family {f.number}: extension checks apply only where the "
            f"residual bound fails, status is {verdict.status.value}"
        )
    a = f.weights
    cap = f.a_cube
    h = gcd(a[1], a[2])
    binomial_degree = Fraction(1, a[3] * h)
    binomial_label = "image point on the binomial orbit"
    if h > 1:
        binomial_label += f" (shared factor {h} drops the fibre degree)"
    entries = (
        ExtensionEntry(
            "image curve in the weighted plane",
            Fraction(1, a[1] * a[2]),
            cap,
            "equality forces the curve onto a stratum; excluded by the "
            "stratum-pair analysis",
        ),
        ExtensionEntry(
            "image point on the first coordinate orbit",
            Fraction(1, a[3]),
            cap,
            "fibre over the first coordinate point not excluded by degree",
        ),
        ExtensionEntry(
            binomial_label,
            binomial_degree,
            cap,
            "fibre over the binomial point not excluded by degree",
        ),
        ExtensionEntry(
            "image point on the second coordinate orbit",
            Fraction(1, a[1] * a[3]),
            cap,
            "candidate equals a stratum-pair curve; excluded by the "
            "stratum-pair analysis",
        ),
        ExtensionEntry(
            "two-form section through the last orbit",
            a[1] * cap,
            cap,
            "needs irreducibility of the section curve",
        ),
    )
    return ExtensionCheck(family=f.number, a_cube=cap, entries=entries)


def extension_checks(db: FamilyDatabase) -> tuple[ExtensionCheck, ...]:
    """Extension reports for every Case-1 family with a failing residual
    bound, in family order (the set is derived, not hard-coded)."""
    out = []
    for f in db:
        if classify_case(f) is CaseTag.CASE1:
            if case1_verdict(f).status is BoundStatus.FAILS:
                out.append(extension_check(f))
    return tuple(out)
