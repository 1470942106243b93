"""Per-family coverage audit: every curve class gets a verified route.

For each of the 95 families the audit names one route covering its
*residual* curve classes (those mapping to curves under the projection away
from the largest-weight coordinate) and one covering its *contracted*
classes, pulling in the relevant verdicts and certificates.  Steps the
numeric engine cannot check — irreducibility for general members, the
classification of candidates down to listed strata, the singular-index rule
for surface rows, and the asserted containment for three small families —
are surfaced as typed annotations, never silently assumed.

A family is Covered only when both routes exist and every certificate they
lean on is valid; anything else is an explicit Gap naming the curve class.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Iterable, Literal

from .certificates import (
    Method,
    SurfaceCertificate,
    SurfaceRow,
    TestClassCertificate,
    case3_test_class_certificates,
    extension_check,
    verify_surface_table,
)
from .families import FamilyDatabase, FamilyRecord
from .lemmas import (
    BoundStatus,
    CaseTag,
    ContractedReason,
    DivisibilityViolation,
    case1_verdict,
    case2_verdict,
    case3_integer_filter,
    classify_case,
    contracted_divisibility_certificate,
    contracted_verdict,
    shared_factor_check,
    tangent_indices,
)
from .wps import format_rational


class AnnotationKind(Enum):
    """Typed tag for a step taken on trust rather than by computation."""

    CONTAINMENT_OUT_OF_SCOPE = "containment-out-of-scope"
    GENERALITY = "generality"
    INDEX_RULE = "index-rule"


@dataclass(frozen=True)
class Annotation:
    kind: AnnotationKind
    text: str


@dataclass(frozen=True)
class RouteEntry:
    """One verified route for one curve class of one family."""

    route: str
    detail: str
    values: tuple[tuple[str, str], ...] = ()
    annotations: tuple[Annotation, ...] = ()


Status = Literal["Covered", "Gap"]


@dataclass(frozen=True)
class FamilyCoverage:
    """Coverage verdict for a single family."""

    family: int
    case: CaseTag
    residual: RouteEntry
    contracted: RouteEntry
    gaps: tuple[str, ...] = ()  # names of curve classes left without a route

    @property
    def status(self) -> Status:
        return "Gap" if self.gaps else "Covered"

    @property
    def annotations(self) -> tuple[Annotation, ...]:
        return self.residual.annotations + self.contracted.annotations


_CLASSIFICATION_NOTE = Annotation(
    AnnotationKind.GENERALITY,
    "reduction of the remaining candidates to the listed coordinate strata "
    "is a coordinate-change argument on general members, not re-derived here",
)

_INDEX_RULE_NOTE = Annotation(
    AnnotationKind.INDEX_RULE,
    "the singular-point index of the curve on the chosen surface is assumed "
    "to equal the surviving stratum weight; rows failing under this "
    "assumption are reported as invalid, never repaired",
)

_WEAK_BOUND_NOTE = Annotation(
    AnnotationKind.GENERALITY,
    "the two-form section curve is irreducible on a general member "
    "(Bertini); its class is then excluded by the section degree",
)

_DEGREE_BOUND_NOTE = Annotation(
    AnnotationKind.GENERALITY,
    "on a general member the two contracting coefficient forms share no "
    "factor, so the contracted locus is a finite cone certified to avoid "
    "the residual singular points",
)

_CONTAINMENT_NOTE = Annotation(
    AnnotationKind.CONTAINMENT_OUT_OF_SCOPE,
    "the contracted curves lie inside a codimension-two intersection of two "
    "degree-one forms — the allowed containment conclusion — by a direct "
    "geometric check that is out of the numeric engine's scope",
)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, int):
        return str(value)
    return format_rational(value)


def _surface_row_values(
    certs: Iterable[SurfaceCertificate],
) -> tuple[tuple[str, str], ...]:
    values = []
    for cert in certs:
        key = f"row {{{','.join(str(i) for i in sorted(cert.curve.vanishing))}}}"
        if cert.method is Method.M41:
            values.append((f"{key} deg", format_rational(cert.deg_c)))
            values.append((f"{key} value", format_rational(cert.exclusion_value)))
        else:
            cp = cert.companion
            values.append((f"{key} deg", format_rational(cert.deg_c)))
            values.append(
                (f"{key} companion self-intersection", format_rational(cp.c_prime_sq))
            )
            values.append(
                (
                    f"{key} degree sum vs cap",
                    f"{format_rational(cp.deg_c + cp.deg_c_prime)} vs "
                    f"{format_rational(cp.a_cube)}",
                )
            )
    return tuple(values)


def _residual_route(
    f: FamilyRecord,
    certs: tuple[SurfaceCertificate, ...],
    test_class_by_family: dict[int, TestClassCertificate],
) -> tuple[RouteEntry, list[str]]:
    """Route and gap list for the residual (non-contracted) curve classes."""
    gaps: list[str] = []
    case = classify_case(f)
    a = f.weights

    if case is CaseTag.CASE1:
        verdict = case1_verdict(f)
        values = [
            ("d", str(f.d)),
            ("a1*a4", str(verdict.a1a4)),
            ("a2*a4", str(verdict.a2a4)),
            ("degree cap", format_rational(f.a_cube)),
        ]
        annotations: list[Annotation] = []
        if verdict.status is BoundStatus.FAILS:
            check = extension_check(f)
            for e in check.entries:
                values.append(
                    (e.label, f"{format_rational(e.lhs)} {e.relation} "
                              f"{format_rational(e.rhs)}")
                )
                if not e.strict:
                    annotations.append(
                        Annotation(AnnotationKind.GENERALITY, e.assumption_if_not_strict)
                    )
            return (
                RouteEntry(
                    route="extension-checks",
                    detail="residual bound fails outright; every double-projection "
                    "image is compared against the degree cap, with the "
                    "non-strict comparisons closed by recorded assumptions",
                    values=tuple(values),
                    annotations=tuple(annotations),
                ),
                gaps,
            )
        if gcd(a[1], a[2]) > 1:
            chk = shared_factor_check(f)
            values.append(
                (
                    "shared-factor image degree vs cap",
                    f"{format_rational(chk.value)} vs {format_rational(chk.a_cube)}",
                )
            )
            if not chk.applies:
                gaps.append("residual (shared-factor image point uncovered)")
        if verdict.status is BoundStatus.STRONG_A:
            return (
                RouteEntry(
                    route="strong-bound",
                    detail="d < a1*a4, so every residual curve class exceeds the "
                    "degree cap with no extra assumptions",
                    values=tuple(values),
                ),
                gaps,
            )
        return (
            RouteEntry(
                route="weak-bound",
                detail="a1*a4 <= d < a2*a4: residual classes exceed the cap "
                "except the two-form section class, closed by irreducibility",
                values=tuple(values),
                annotations=(_WEAK_BOUND_NOTE,),
            ),
            gaps,
        )

    if case is CaseTag.CASE2:
        if case2_verdict(f):
            return (
                RouteEntry(
                    route="pencil-bound",
                    detail="d < a2*a4: every residual class outside the base "
                    "pencil exceeds the cap; classes inside it satisfy the "
                    "allowed containment conclusion",
                    values=(
                        ("d", str(f.d)),
                        ("a2*a4", str(a[2] * a[4])),
                        ("degree cap", format_rational(f.a_cube)),
                    ),
                ),
                gaps,
            )
        if not certs:
            gaps.append("residual (pencil bound fails and no surface rows)")
        if any(not c.valid for c in certs):
            gaps.append("residual (invalid surface certificate)")
        return (
            RouteEntry(
                route="surface-rows",
                detail="pencil bound fails; the candidate strata are excluded "
                "row by row on surfaces through them",
                values=_surface_row_values(certs),
                annotations=(_CLASSIFICATION_NOTE, _INDEX_RULE_NOTE),
            ),
            gaps,
        )

    # Case 3.
    if case3_integer_filter(f):
        return (
            RouteEntry(
                route="integer-filter",
                detail="degree cap below 1: residual classes have integer "
                "degree, so all exceed the cap; doubly-contracted classes "
                "land inside two-form sections, the permitted conclusion",
                values=(("degree cap", format_rational(f.a_cube)),),
            ),
            gaps,
        )
    cert = test_class_by_family.get(f.number)
    if cert is None:
        gaps.append("residual (degree cap >= 1 and no test-class certificate)")
        return (
            RouteEntry(
                route="test-class",
                detail="no certificate available",
            ),
            gaps,
        )
    if not cert.valid:
        gaps.append("residual (test-class value not strictly negative)")
    return (
        RouteEntry(
            route="test-class",
            detail=f"candidates outside two-form sections reduce to a "
            f"{cert.curve}; its blowup class value is strictly negative",
            values=(
                ("curve", cert.curve),
                ("multiplier", str(cert.b)),
                ("curve degree", format_rational(cert.deg_c)),
                ("value", format_rational(cert.value)),
            ),
            annotations=(_CLASSIFICATION_NOTE,),
        ),
        gaps,
    )


def _contracted_route(
    f: FamilyRecord,
    certs: tuple[SurfaceCertificate, ...],
) -> tuple[RouteEntry, list[str]]:
    """Route and gap list for the curve classes contracted by the projection
    away from the largest-weight coordinate."""
    gaps: list[str] = []
    verdict = contracted_verdict(f)
    a = f.weights

    if verdict.safe and verdict.reason is ContractedReason.NO_CONTRACTED_CURVES:
        return (
            RouteEntry(
                route="no-contracted-curves",
                detail="the largest weight divides d, so the last coordinate "
                "point misses a general member and the projection contracts "
                "no curves",
                values=(("d", str(f.d)), ("a4", str(a[4]))),
            ),
            gaps,
        )

    if verdict.safe:  # reason is DEGREE_BOUND
        values = [
            ("d", str(f.d)),
            ("a1*a2*a3", str(a[1] * a[2] * a[3])),
            ("degree cap", format_rational(f.a_cube)),
        ]
        indices = tangent_indices(f)
        for j in indices:
            try:
                cert = contracted_divisibility_certificate(f, j)
            except DivisibilityViolation as exc:
                gaps.append(f"contracted (divisibility certificate fails: {exc})")
                continue
            witness = ", ".join(
                f"{e.weight} | {f.d - a[4] if e.divides_d_minus_a4 else f.d}"
                for e in cert.entries
            ) or "no reduced weights above 1"
            values.append((f"tangent index {j} divisibility", witness))
        return (
            RouteEntry(
                route="contracted-degree-bound",
                detail="d < a1*a2*a3: a contracted curve would pass through "
                "only the last coordinate point, giving degree above the cap; "
                "the divisibility certificates pin its singular support",
                values=tuple(values),
                annotations=(_DEGREE_BOUND_NOTE,),
            ),
            gaps,
        )

    if classify_case(f) is CaseTag.CASE3:
        return (
            RouteEntry(
                route="containment-assertion",
                detail="contracted classes are asserted to lie inside a "
                "two-form section (permitted conclusion); not machine-checked",
                annotations=(_CONTAINMENT_NOTE,),
            ),
            gaps,
        )

    through_last = tuple(c for c in certs if 4 not in c.curve.vanishing)
    if not through_last:
        gaps.append("contracted (no surface row through the last coordinate point)")
    if any(not c.valid for c in through_last):
        gaps.append("contracted (invalid surface certificate)")
    return (
        RouteEntry(
            route="surface-rows",
            detail="contracted candidates reduce to strata through the last "
            "coordinate point, excluded on surfaces through them",
            values=_surface_row_values(through_last),
            annotations=(_CLASSIFICATION_NOTE, _INDEX_RULE_NOTE),
        ),
        gaps,
    )


def build_coverage(
    db: FamilyDatabase, rows: Iterable[SurfaceRow]
) -> tuple[FamilyCoverage, ...]:
    """Assemble the full 95-family coverage report from the shipped inputs."""
    verification = verify_surface_table(db, rows)
    by_family: dict[int, list[SurfaceCertificate]] = {}
    for cert in verification.certificates:
        by_family.setdefault(cert.family, []).append(cert)
    test_class_by_family = {
        c.family: c for c in case3_test_class_certificates(db)
    }

    out = []
    for f in db:
        certs = tuple(by_family.get(f.number, ()))
        residual, residual_gaps = _residual_route(f, certs, test_class_by_family)
        contracted, contracted_gaps = _contracted_route(f, certs)
        out.append(
            FamilyCoverage(
                family=f.number,
                case=classify_case(f),
                residual=residual,
                contracted=contracted,
                gaps=tuple(residual_gaps + contracted_gaps),
            )
        )
    return tuple(out)


def containment_annotated_families(
    coverage: Iterable[FamilyCoverage],
) -> tuple[int, ...]:
    """Families whose coverage carries the out-of-scope containment
    annotation (expected: exactly the three smallest-weight exceptions)."""
    return tuple(
        c.family
        for c in coverage
        if any(
            a.kind is AnnotationKind.CONTAINMENT_OUT_OF_SCOPE
            for a in c.annotations
        )
    )
