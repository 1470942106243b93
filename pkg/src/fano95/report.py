"""Report assembly: derived lists, JSON document, text rendering, round-trip.

The JSON document has a fixed top-level shape::

    {"families": [...], "certificates": {"test_class": [...], "surface": [...]},
     "lists": {...}, "coverage": [...]}

All four keys are always present; sections a command did not compute are
``null``.  Every rational is serialized as an exact "p/q" string (integers
included, e.g. "4/1"), array order is deterministic (family number, then row
order), and keys are emitted sorted — so identical inputs produce
byte-identical output.

The expected ("golden") membership lists live here, in the comparison step
only; everything the engine prints is re-derived from the weights and then
*compared* against these constants, never copied from them.
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping

from .certificates import (
    Method,
    SurfaceCertificate,
    TableVerification,
    TestClassCertificate,
    curve_self_intersection,
    different_total,
    surface_exclusion_value,
    test_class_value,
)
from .coverage import FamilyCoverage
from .families import FamilyDatabase
from .lemmas import (
    BoundStatus,
    case2_exception_set,
    classify_case,
    contracted_unsafe_set,
    shared_factor_set,
    verdict_sets,
)
from .wps import format_rational, parse_rational

#: Expected membership lists, used only to cross-check the derived ones.
GOLDEN_LISTS: dict[str, tuple[int, ...]] = {
    "strong_bound": (
        40, 45, 57, 58, 60, 61, 66, 68, 69, 74, 75, 76, 78, 79, 80, 81,
        83, 84, 85, 86, 87, 90, 91, 92, 93, 94, 95,
    ),
    "weak_bound": (
        23, 32, 33, 37, 38, 39, 42, 43, 44, 48, 49, 52, 55, 56, 59, 63,
        64, 65, 72, 73, 77, 89,
    ),
    "extension_required": (18, 19, 22, 27, 28),
    "pencil_exceptions": (7, 9, 11, 12, 13, 15, 16, 17, 21, 24, 29, 34),
    "contracted_unsafe": (2, 5, 7, 8, 12, 13, 16, 18, 20, 24, 25, 26, 46),
    "shared_factor": (18, 22, 28, 43, 52, 59, 69, 73, 81),
}


def derived_lists(db: FamilyDatabase) -> dict[str, tuple[int, ...]]:
    """Recompute every membership list from the weights alone."""
    status_sets = verdict_sets(db)
    return {
        "strong_bound": status_sets[BoundStatus.STRONG_A],
        "weak_bound": status_sets[BoundStatus.WEAK_B],
        "extension_required": status_sets[BoundStatus.FAILS],
        "pencil_exceptions": case2_exception_set(db),
        "contracted_unsafe": contracted_unsafe_set(db),
        "shared_factor": shared_factor_set(db),
    }


def list_mismatches(
    derived: Mapping[str, tuple[int, ...]]
) -> dict[str, tuple[tuple[int, ...], tuple[int, ...]]]:
    """For each non-matching list: (expected but missing, derived but unexpected)."""
    out = {}
    for name, expected in GOLDEN_LISTS.items():
        got = set(derived.get(name, ()))
        want = set(expected)
        if got != want:
            out[name] = (
                tuple(sorted(want - got)),
                tuple(sorted(got - want)),
            )
    return out


# ---------------------------------------------------------------------------
# JSON sections
# ---------------------------------------------------------------------------

def families_section(db: FamilyDatabase) -> list[dict]:
    return [
        {
            "number": f.number,
            "d": f.d,
            "weights": list(f.weights),
            "degree_cap": format_rational(f.a_cube),
            "case": classify_case(f).value,
        }
        for f in db
    ]


def test_class_section(certs: Iterable[TestClassCertificate]) -> list[dict]:
    return [
        {
            "family": c.family,
            "curve": c.curve,
            "b": c.b,
            "a_cube": format_rational(c.a_cube),
            "deg_c": format_rational(c.deg_c),
            "p_a": c.p_a,
            "value": format_rational(c.value),
            "valid": c.valid,
            "boundary": c.boundary,
        }
        for c in certs
    ]


def _surface_cert_json(cert: SurfaceCertificate, a_cube, fails) -> dict:
    base = {
        "family": cert.family,
        "vanishing": sorted(cert.curve.vanishing),
        "fails": sorted(fails),
        "method": cert.method.value,
        "m": cert.m,
        "a_cube": format_rational(a_cube),
        "deg_c": format_rational(cert.deg_c),
        "diff_indices": list(cert.diff_indices),
        "diff_total": format_rational(cert.diff_total),
        "c2t": format_rational(cert.c2t),
        "exclusion_value": None,
        "deg_c_prime": None,
        "c_prime_sq": None,
        "forces_alpha_one": None,
        "degree_contradiction": None,
        "valid": cert.valid,
        "boundary": cert.boundary,
    }
    if cert.method is Method.M41:
        base["exclusion_value"] = format_rational(cert.exclusion_value)
    else:
        cp = cert.companion
        base["deg_c_prime"] = format_rational(cp.deg_c_prime)
        base["c_prime_sq"] = format_rational(cp.c_prime_sq)
        base["forces_alpha_one"] = cp.forces_alpha_one
        base["degree_contradiction"] = cp.degree_contradiction
    return base


def surface_section(db: FamilyDatabase, verification: TableVerification, rows) -> list[dict]:
    by_key = {(r.family, r.vanishing): r for r in rows}
    out = []
    for cert in verification.certificates:
        row = by_key[(cert.family, cert.curve.vanishing)]
        out.append(_surface_cert_json(cert, db.get(cert.family).a_cube, row.fails))
    return out


def lists_section(db: FamilyDatabase) -> dict:
    derived = derived_lists(db)
    return {
        name: {
            "families": list(derived[name]),
            "expected": list(GOLDEN_LISTS[name]),
            "match": tuple(derived[name]) == GOLDEN_LISTS[name],
        }
        for name in sorted(GOLDEN_LISTS)
    }


def coverage_section(coverage: Iterable[FamilyCoverage]) -> list[dict]:
    def route_json(entry):
        return {
            "route": entry.route,
            "detail": entry.detail,
            "values": [[label, value] for label, value in entry.values],
            "annotations": [
                {"kind": a.kind.value, "text": a.text} for a in entry.annotations
            ],
        }

    return [
        {
            "family": c.family,
            "case": c.case.value,
            "status": c.status,
            "gaps": list(c.gaps),
            "residual": route_json(c.residual),
            "contracted": route_json(c.contracted),
        }
        for c in coverage
    ]


def build_document(
    db: FamilyDatabase,
    *,
    lists: dict | None = None,
    test_class: list[dict] | None = None,
    surface: list[dict] | None = None,
    coverage: list[dict] | None = None,
) -> dict:
    """Assemble the fixed-shape document from whichever sections were computed."""
    return {
        "families": families_section(db),
        "certificates": {"test_class": test_class, "surface": surface},
        "lists": lists,
        "coverage": coverage,
    }


def to_json(document: Mapping) -> str:
    """Canonical serialization: sorted keys, two-space indent, one trailing
    newline — byte-identical across runs on identical inputs."""
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Round-trip revalidation
# ---------------------------------------------------------------------------

def revalidate_document(document: Mapping) -> tuple[str, ...]:
    """Re-derive every certificate value in a parsed JSON document.

    Returns human-readable problem descriptions; an empty tuple means every
    serialized certificate re-validates from its own serialized inputs.
    """
    problems: list[str] = []

    families = document.get("families")
    if families is not None and [f["number"] for f in families] != list(range(1, 96)):
        problems.append("families section does not list numbers 1..95 in order")
    for f in families or ():
        if f["d"] != sum(f["weights"][1:]):
            problems.append(
                f"family {f['number']}: d = {f['d']} does not equal the weight sum"
            )

    certificates = document.get("certificates") or {}
    for c in certificates.get("test_class") or ():
        value = test_class_value(
            c["b"], parse_rational(c["a_cube"]), parse_rational(c["deg_c"]), c["p_a"]
        )
        if format_rational(value) != c["value"]:
            problems.append(
                f"test-class family {c['family']}: serialized value {c['value']} "
                f"!= recomputed {format_rational(value)}"
            )
        if c["valid"] != (value < 0):
            problems.append(
                f"test-class family {c['family']}: valid flag does not match value"
            )

    for s in certificates.get("surface") or ():
        label = f"surface family {s['family']} row {s['vanishing']}"
        diff = different_total(s["diff_indices"])
        if format_rational(diff) != s["diff_total"]:
            problems.append(f"{label}: different total does not recompute")
            continue
        deg_c = parse_rational(s["deg_c"])
        a_cube = parse_rational(s["a_cube"])
        c2t = curve_self_intersection(s["m"], deg_c, diff)
        if format_rational(c2t) != s["c2t"]:
            problems.append(f"{label}: self-intersection does not recompute")
            continue
        if s["method"] == "41":
            value = surface_exclusion_value(s["m"], a_cube, deg_c, c2t)
            if format_rational(value) != s["exclusion_value"]:
                problems.append(f"{label}: exclusion value does not recompute")
            if s["valid"] != (value < 0):
                problems.append(f"{label}: valid flag does not match value")
        else:
            deg_c_prime = s["m"] * a_cube - deg_c
            if format_rational(deg_c_prime) != s["deg_c_prime"]:
                problems.append(f"{label}: companion degree does not recompute")
                continue
            c_prime_sq = curve_self_intersection(s["m"], deg_c_prime, diff)
            if format_rational(c_prime_sq) != s["c_prime_sq"]:
                problems.append(
                    f"{label}: companion self-intersection does not recompute"
                )
                continue
            alpha = c_prime_sq < 0
            contradiction = deg_c + deg_c_prime > a_cube
            if s["forces_alpha_one"] != alpha or s["degree_contradiction"] != contradiction:
                problems.append(f"{label}: two-curve flags do not recompute")
            if s["valid"] != (alpha and contradiction):
                problems.append(f"{label}: valid flag does not match conditions")

    coverage = document.get("coverage")
    if coverage is not None:
        numbers = [c["family"] for c in coverage]
        if numbers != list(range(1, 96)):
            problems.append("coverage section does not list families 1..95 in order")
        for c in coverage:
            has_gaps = bool(c["gaps"])
            if (c["status"] == "Covered") == has_gaps:
                problems.append(
                    f"coverage family {c['family']}: status does not match gap list"
                )

    return tuple(problems)


# ---------------------------------------------------------------------------
# Text rendering
# ---------------------------------------------------------------------------

def render_validate(db: FamilyDatabase) -> str:
    cases = {tag: 0 for tag in ("case1", "case2", "case3")}
    for f in db:
        cases[classify_case(f).value] += 1
    return (
        f"ok: {len(db)} families validated "
        f"(case1: {cases['case1']}, case2: {cases['case2']}, "
        f"case3: {cases['case3']})\n"
    )


def render_lists(db: FamilyDatabase) -> tuple[str, bool]:
    derived = derived_lists(db)
    mismatches = list_mismatches(derived)
    lines = []
    for name in sorted(derived):
        members = " ".join(str(n) for n in derived[name])
        lines.append(f"{name}: {members}")
    if mismatches:
        for name, (missing, unexpected) in sorted(mismatches.items()):
            lines.append(
                f"MISMATCH {name}: missing {list(missing)}, "
                f"unexpected {list(unexpected)}"
            )
    else:
        lines.append("all lists match the expected values")
    return "\n".join(lines) + "\n", not mismatches


def render_certificates(
    tc_certs: Iterable[TestClassCertificate],
    verification: TableVerification,
) -> tuple[str, bool]:
    lines = []
    ok = True
    for c in tc_certs:
        status = "valid" if c.valid else "INVALID"
        ok = ok and c.valid
        lines.append(
            f"test-class family {c.family} ({c.curve}): multiplier {c.b}, "
            f"curve degree {format_rational(c.deg_c)}, "
            f"blowup-class value {format_rational(c.value)} [{status}]"
        )
    for cert in verification.certificates:
        flag = "valid" if cert.valid else "INVALID"
        if cert.boundary:
            flag += " boundary"
        key = ",".join(str(i) for i in sorted(cert.curve.vanishing))
        if cert.method is Method.M41:
            lines.append(
                f"surface family {cert.family} row {{{key}}} method 41 m={cert.m}: "
                f"curve degree {format_rational(cert.deg_c)}, "
                f"different total {format_rational(cert.diff_total)}, "
                f"self-intersection {format_rational(cert.c2t)}, "
                f"exclusion value {format_rational(cert.exclusion_value)} [{flag}]"
            )
        else:
            cp = cert.companion
            lines.append(
                f"surface family {cert.family} row {{{key}}} method 42 m={cert.m}: "
                f"curve degree {format_rational(cert.deg_c)}, "
                f"different total {format_rational(cert.diff_total)}, "
                f"self-intersection {format_rational(cert.c2t)}, "
                f"companion degree {format_rational(cp.deg_c_prime)}, "
                f"companion self-intersection {format_rational(cp.c_prime_sq)}, "
                f"degree sum {format_rational(cp.deg_c + cp.deg_c_prime)} vs cap "
                f"{format_rational(cp.a_cube)} [{flag}]"
            )
    ok = ok and verification.ok
    for family, got, expected in verification.tag_mismatches:
        lines.append(
            f"TAG MISMATCH family {family}: row file says {sorted(got)}, "
            f"derived verdicts say {sorted(expected)}"
        )
    return "\n".join(lines) + "\n", ok


def render_coverage(coverage: Iterable[FamilyCoverage]) -> tuple[str, bool]:
    lines = []
    covered = 0
    gaps = 0
    coverage = tuple(coverage)
    for c in coverage:
        lines.append(
            f"family {c.family:>2} {c.case.value}: residual via {c.residual.route}, "
            f"contracted via {c.contracted.route} [{c.status}]"
        )
        for g in c.gaps:
            lines.append(f"  GAP: {g}")
        for a in c.annotations:
            lines.append(f"  note ({a.kind.value}): {a.text}")
        if c.status == "Covered":
            covered += 1
        else:
            gaps += 1
    lines.append(f"coverage: {covered} Covered, {gaps} Gap")
    return "\n".join(lines) + "\n", gaps == 0
