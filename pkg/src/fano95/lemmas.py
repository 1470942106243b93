"""Hypothesis classification for the coarse curve-exclusion bounds.

The families split into three cases by their smallest nontrivial weights:

* Case 1: a1 > 1,
* Case 2: a1 = 1 and a2 > 1,
* Case 3: a1 = a2 = 1.

For a curve C on a general hypersurface X, projection away from the largest-
weight coordinate either contracts C to a point or maps it to a curve; we call
the non-contracted classes *residual*.  Each case has a coarse inequality
under which every low-degree residual curve is excluded outright, and a
separate product bound handles the contracted classes.  This module evaluates
those inequalities exactly, derives the exception sets from the weights alone
(never from stored lists), and emits the divisibility certificates used when
the projection genuinely contracts curves.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd

from .families import FamilyDatabase, FamilyRecord
from .wps import Rational, coordinate_point_on_hypersurface


class CaseTag(Enum):
    """Partition of the families by their two smallest nontrivial weights."""

    CASE1 = "case1"  # a1 > 1
    CASE2 = "case2"  # a1 = 1 < a2
    CASE3 = "case3"  # a1 = a2 = 1


class BoundStatus(Enum):
    """Strength of the Case-1 residual-curve bound for one family."""

    STRONG_A = "strong_a"  # d < a1*a4: no generality assumptions needed
    WEAK_B = "weak_b"      # a1*a4 <= d < a2*a4: needs an irreducibility assumption
    FAILS = "fails"        # d >= a2*a4: handled by the extension checks


class ContractedReason(Enum):
    """Why a family's contracted-curve classes are already safe."""

    NO_CONTRACTED_CURVES = "no_contracted_curves"  # last coordinate point off X
    DEGREE_BOUND = "degree_bound"                  # d < a1*a2*a3


class WrongCaseError(ValueError):
    """Operation applied to a family outside its case precondition."""


class SharedFactorPreconditionError(ValueError):
    """Shared-factor check applied where gcd(a1, a2) = 1."""


class DivisibilityViolation(ArithmeticError):
    """A reduced weight divides neither d - a4 nor d (unreachable on valid data)."""


def classify_case(f: FamilyRecord) -> CaseTag:
    """The case tag of a family, read off its weights."""
    a = f.weights
    if a[1] > 1:
        return CaseTag.CASE1
    if a[2] > 1:
        return CaseTag.CASE2
    return CaseTag.CASE3


def degree_bound(f: FamilyRecord) -> Rational:
    """The absolute degree cap: every curve class of degree above it is excluded."""
    return f.a_cube


@dataclass(frozen=True)
class Comparison:
    """One evaluated inequality lhs vs rhs, with the exclusion reading lhs > rhs."""

    label: str
    lhs: Rational
    rhs: Rational
    note: str | None = None

    @property
    def relation(self) -> str:
        if self.lhs > self.rhs:
            return ">"
        if self.lhs == self.rhs:
            return "="
        return "<"

    @property
    def contradiction(self) -> bool:
        """True when the comparison alone excludes the candidate curve."""
        return self.lhs > self.rhs


@dataclass(frozen=True)
class PointCaseReport:
    """The four image-point cases in the proof of the Case-1 bound.

    Projecting twice lands the candidate curve on a point of the weighted
    plane P(1, a1, a2); each possible image point gives a fibre curve whose
    degree is compared against the degree cap.
    """

    family: int
    entries: tuple[Comparison, ...]
    case4_section_degree: Rational  # degree a1 * A^3 of the two-form section
    case4_flag: bool                # a1 > 1, so the section degree exceeds the cap

    def __iter__(self):
        return iter(self.entries)


@dataclass(frozen=True)
class Case1Verdict:
    """Verdict of the Case-1 residual bound with its witness inequalities."""

    family: int
    status: BoundStatus
    d: int
    a1a4: int
    a2a4: int
    point_cases: PointCaseReport

    @property
    def strong_inequality(self) -> bool:
        return self.d < self.a1a4

    @property
    def weak_inequality(self) -> bool:
        return self.d < self.a2a4


def _require_case(f: FamilyRecord, tag: CaseTag, op: str) -> None:
    actual = classify_case(f)
    if actual is not tag:
        raise WrongCaseError(
            f"{op}: family {f.number} is {actual.value}, requires {tag.value}"
        )


def case1_point_cases(f: FamilyRecord) -> PointCaseReport:
    """Evaluate the four image-point comparisons for a Case-1 family.

    Cases 1 and 2 compare the fibre degree 1/a3 with the cap; case 3 compares
    1/(a1*a3), equivalently a2*a4 vs d; case 4 compares 1/(a2*a3),
    equivalently a1*a4 vs d, with the fallback section of degree a1*A^3
    recorded separately (it needs an irreducibility assumption).
    """
    _require_case(f, CaseTag.CASE1, "case1_point_cases")
    a = f.weights
    cap = f.a_cube
    entries = (
        Comparison("image point {y=z=0}", Fraction(1, a[3]), cap),
        Comparison("image point {y^q+z^p=x=0}", Fraction(1, a[3]), cap),
        Comparison(
            "image point {x=z=0}",
            Fraction(1, a[1] * a[3]),
            cap,
            note=f"equivalent to a2*a4 = {a[2] * a[4]} vs d = {f.d}",
        ),
        Comparison(
            "image point {x=y=0}",
            Fraction(1, a[2] * a[3]),
            cap,
            note=f"equivalent to a1*a4 = {a[1] * a[4]} vs d = {f.d}",
        ),
    )
    return PointCaseReport(
        family=f.number,
        entries=entries,
        case4_section_degree=a[1] * cap,
        case4_flag=a[1] > 1,
    )


def case1_verdict(f: FamilyRecord) -> Case1Verdict:
    """Classify a Case-1 family by the residual-curve inequalities."""
    _require_case(f, CaseTag.CASE1, "case1_verdict")
    a = f.weights
    a1a4 = a[1] * a[4]
    a2a4 = a[2] * a[4]
    if f.d < a1a4:
        status = BoundStatus.STRONG_A
    elif f.d < a2a4:
        status = BoundStatus.WEAK_B
    else:
        status = BoundStatus.FAILS
    return Case1Verdict(
        family=f.number,
        status=status,
        d=f.d,
        a1a4=a1a4,
        a2a4=a2a4,
        point_cases=case1_point_cases(f),
    )


@dataclass(frozen=True)
class SharedFactorCheck:
    """The image-curve degree bound when a1 and a2 share a factor h > 1.

    The binomial image point degenerates to a curve of degree 1/(a3*h); the
    argument applies exactly when that degree still exceeds the cap.
    """

    family: int
    h: int
    value: Rational
    a_cube: Rational

    @property
    def applies(self) -> bool:
        return self.value > self.a_cube

    @property
    def is_equality(self) -> bool:
        return self.value == self.a_cube


def shared_factor_check(f: FamilyRecord) -> SharedFactorCheck:
    """Evaluate 1/(a3*gcd(a1,a2)) against the degree cap; requires gcd > 1."""
    a = f.weights
    h = gcd(a[1], a[2])
    if h == 1:
        raise SharedFactorPreconditionError(
            f"family {f.number}: gcd(a1, a2) = 1, shared-factor check does not apply"
        )
    return SharedFactorCheck(
        family=f.number, h=h, value=Fraction(1, a[3] * h), a_cube=f.a_cube
    )


def case2_verdict(f: FamilyRecord) -> bool:
    """Case-2 residual bound: every low-degree residual curve lies in the base
    pencil exactly when d < a2*a4."""
    _require_case(f, CaseTag.CASE2, "case2_verdict")
    a = f.weights
    return f.d < a[2] * a[4]


def case3_integer_filter(f: FamilyRecord) -> bool:
    """Case-3 filter: non-stratum curves have integer degree, so a cap below 1
    excludes them all.  True iff the degree cap is < 1."""
    _require_case(f, CaseTag.CASE3, "case3_integer_filter")
    return f.a_cube < 1


@dataclass(frozen=True)
class ContractedVerdict:
    """Safety verdict for the contracted-curve classes of one family."""

    family: int
    p4_on_x: bool             # last coordinate point lies on a general member
    product_bound_holds: bool  # d < a1*a2*a3
    safe: bool
    reason: ContractedReason | None  # set only when safe


def contracted_verdict(f: FamilyRecord) -> ContractedVerdict:
    """Whether contracted curves are impossible or excluded by the product bound.

    When the last coordinate point is off X the projection has finite fibres
    and contracts nothing; that alone settles the family, without inspecting
    the product bound.
    """
    a = f.weights
    p4_on_x = coordinate_point_on_hypersurface(f.d, a, 4)
    product_bound = f.d < a[1] * a[2] * a[3]
    if not p4_on_x:
        return ContractedVerdict(f.number, p4_on_x, product_bound, True,
                                 ContractedReason.NO_CONTRACTED_CURVES)
    if product_bound:
        return ContractedVerdict(f.number, p4_on_x, product_bound, True,
                                 ContractedReason.DEGREE_BOUND)
    return ContractedVerdict(f.number, p4_on_x, product_bound, False, None)


def tangent_indices(f: FamilyRecord) -> tuple[int, ...]:
    """Indices j with a_j + 2*a4 = d: the possible tangent coordinates when the
    defining equation has the curve-contracting shape x_j*x4^2 + a*x4 + b."""
    a = f.weights
    return tuple(j for j in range(4) if a[j] + 2 * a[4] == f.d)


@dataclass(frozen=True)
class DivisibilityEntry:
    """One reduced weight and which of the two divisibilities it satisfies."""

    index: int
    weight: int
    divides_d_minus_a4: bool
    divides_d: bool

    @property
    def holds(self) -> bool:
        return self.divides_d_minus_a4 or self.divides_d


@dataclass(frozen=True)
class DivisibilityCertificate:
    """Certificate that the base points of the contracting pencil avoid the
    singular points of the residual weighted plane.

    Given the tangent relation a_j + 2*a4 = d, each reduced weight a > 1
    (the weights away from j and 4) must divide d - a4 or d.
    """

    family: int
    j: int
    d: int
    a4: int
    entries: tuple[DivisibilityEntry, ...]

    @property
    def holds(self) -> bool:
        return all(e.holds for e in self.entries)


def contracted_divisibility_certificate(f: FamilyRecord, j: int) -> DivisibilityCertificate:
    """Build the divisibility certificate for tangent index j.

    Raises ValueError if a_j + 2*a4 != d, and DivisibilityViolation if some
    reduced weight divides neither d - a4 nor d (impossible for valid data —
    kept as a loud failure rather than an assumption).
    """
    a = f.weights
    if not 0 <= j <= 3:
        raise ValueError(f"tangent index must lie in 0..3, got {j}")
    if a[j] + 2 * a[4] != f.d:
        raise ValueError(
            f"family {f.number}: a_{j} + 2*a4 = {a[j] + 2 * a[4]} != d = {f.d}; "
            "not a valid tangent index"
        )
    entries = []
    for i in range(4):
        if i == j:
            continue
        w = a[i]
        if w == 1:
            continue
        entry = DivisibilityEntry(
            index=i,
            weight=w,
            divides_d_minus_a4=(f.d - a[4]) % w == 0,
            divides_d=f.d % w == 0,
        )
        if not entry.holds:
            raise DivisibilityViolation(
                f"family {f.number}: reduced weight {w} (index {i}) divides neither "
                f"d - a4 = {f.d - a[4]} nor d = {f.d}"
            )
        entries.append(entry)
    return DivisibilityCertificate(
        family=f.number, j=j, d=f.d, a4=a[4], entries=tuple(entries)
    )


# ---------------------------------------------------------------------------
# Derived set producers.  These re-derive every list from the weights; the
# golden expectations live only in tests and in the CLI's comparison step.
# ---------------------------------------------------------------------------

def case_partition(db: FamilyDatabase) -> dict[CaseTag, tuple[int, ...]]:
    """Family numbers of each case, ascending."""
    out: dict[CaseTag, list[int]] = {tag: [] for tag in CaseTag}
    for f in db:
        out[classify_case(f)].append(f.number)
    return {tag: tuple(nums) for tag, nums in out.items()}


def verdict_sets(db: FamilyDatabase) -> dict[BoundStatus, tuple[int, ...]]:
    """Case-1 families partitioned by bound status, ascending."""
    out: dict[BoundStatus, list[int]] = {status: [] for status in BoundStatus}
    for f in db:
        if classify_case(f) is CaseTag.CASE1:
            out[case1_verdict(f).status].append(f.number)
    return {status: tuple(nums) for status, nums in out.items()}


def case2_exception_set(db: FamilyDatabase) -> tuple[int, ...]:
    """Case-2 families where the residual bound fails (d >= a2*a4)."""
    return tuple(
        f.number
        for f in db
        if classify_case(f) is CaseTag.CASE2 and not case2_verdict(f)
    )


def contracted_unsafe_set(db: FamilyDatabase) -> tuple[int, ...]:
    """Families whose contracted curves are not dismissed by the verdict."""
    return tuple(f.number for f in db if not contracted_verdict(f).safe)


def shared_factor_set(db: FamilyDatabase) -> tuple[int, ...]:
    """Families with gcd(a1, a2) > 1."""
    return tuple(f.number for f in db if gcd(f.weights[1], f.weights[2]) > 1)
