"""Exclusion certificates: blow-up test classes, surface-method rows, extensions."""

import io
from fractions import Fraction

import pytest

from fano95 import certificates as C
from fano95 import (
    CertificateError,
    Method,
    RowError,
    SurfaceRow,
    SurfaceRowParseError,
    case3_test_class_certificates,
    certify_row,
    curve_self_intersection,
    different_total,
    expected_fail_tags,
    extension_check,
    extension_checks,
    load_families,
    load_surface_rows,
    serialize_surface_rows,
    surface_exclusion_value,
    two_curve_certificate,
    verify_surface_table,
)
from fano95.families import packaged_data_path

# The closed-form and expanded evaluators are referenced through the module
# (C.test_class_value, C.test_class_value_expanded): importing names that
# start with "test_" would make pytest try to collect them.


# ---------------------------------------------------------------------------
# Blow-up test class


def test_blowup_intersection_numbers_for_rational_curve():
    a2e, ae2, e3 = C.rational_curve_blowup_numbers(Fraction(3), 0)
    assert (a2e, ae2, e3) == (0, -3, -1)
    a2e, ae2, e3 = C.rational_curve_blowup_numbers(Fraction(2), 1)
    assert (a2e, ae2, e3) == (0, -2, -2)


@pytest.mark.parametrize(
    "b, a_cube, deg_c, expected",
    [
        (2, Fraction(4), Fraction(3), Fraction(-3)),
        (2, Fraction(5, 2), Fraction(2), Fraction(-3)),
        (6, Fraction(2), Fraction(2), Fraction(-4)),
        (2, Fraction(3, 2), Fraction(1), Fraction(-2)),
        (6, Fraction(7, 6), Fraction(1), Fraction(-2)),
        (4, Fraction(1), Fraction(1), Fraction(-3)),
    ],
)
def test_test_class_value_known_curves(b, a_cube, deg_c, expected):
    assert C.test_class_value(b, a_cube, deg_c, 0) == expected


def test_test_class_value_closed_form_matches_expansion():
    b, a_cube, deg_c, p_a = 5, Fraction(7, 3), Fraction(4, 3), 2
    a2e, ae2, e3 = C.rational_curve_blowup_numbers(deg_c, p_a)
    assert C.test_class_value(b, a_cube, deg_c, p_a) == C.test_class_value_expanded(
        b, a_cube, a2e, ae2, e3
    )


def test_test_class_value_validates_inputs():
    with pytest.raises(ValueError):
        C.test_class_value(0, Fraction(1), Fraction(1), 0)
    with pytest.raises(ValueError):
        C.test_class_value(2, Fraction(1), Fraction(0), 0)
    with pytest.raises(ValueError):
        C.test_class_value(2, Fraction(1), Fraction(1), -1)


def test_six_packaged_test_class_certificates(db):
    certs = case3_test_class_certificates(db)
    assert [(c.family, c.curve, c.b) for c in certs] == [
        (1, "twisted cubic", 2),
        (2, "conic", 2),
        (3, "conic", 6),
        (4, "line", 2),
        (5, "line", 6),
        (6, "line", 4),
    ]
    assert [c.value for c in certs] == [-3, -3, -4, -2, -2, -3]
    assert all(c.valid and not c.boundary for c in certs)
    assert all(c.p_a == 0 for c in certs)


def test_test_class_certificates_raise_when_not_negative(db):
    # Replace family 3's record with the degree-4 quartic system: the conic
    # certificate value becomes 6*4 - 14 - 2 = +8, which must abort loudly.
    text = packaged_data_path("families.tsv").read_text()
    lines = [l for l in text.splitlines() if l and not l.startswith("#")]
    lines[2] = "3\t4\t1\t1\t1\t1\t1"
    tampered = load_families(io.StringIO("\n".join(lines)))
    with pytest.raises(CertificateError, match="family 3"):
        case3_test_class_certificates(tampered)


# ---------------------------------------------------------------------------
# Adjunction bookkeeping


def test_different_total_values():
    assert different_total([]) == 0
    assert different_total([5]) == Fraction(4, 5)
    assert different_total([2, 3]) == Fraction(1, 2) + Fraction(2, 3)
    with pytest.raises(ValueError):
        different_total([1])
    with pytest.raises(ValueError):
        different_total([0, 3])


def test_curve_self_intersection_examples():
    # Genus-0 adjunction with no orbifold corrections: C^2 = -2 + 0 - 0*deg.
    assert curve_self_intersection(1, Fraction(1, 5), Fraction(0)) == -2
    # Worked chain: m=4, deg 1/5, corrections 4/5.
    assert curve_self_intersection(4, Fraction(1, 5), Fraction(4, 5)) == Fraction(-9, 5)


def test_surface_exclusion_value_examples():
    assert surface_exclusion_value(
        4, Fraction(13, 60), Fraction(1, 5), Fraction(-9, 5)
    ) == Fraction(-4, 3)
    # Exact zero at the boundary: m*cap - 2*deg + c2t = 0.
    assert surface_exclusion_value(1, Fraction(4), Fraction(1), Fraction(-2)) == 0


def test_two_curve_certificate_flags():
    cert = two_curve_certificate(
        Fraction(2, 5), Fraction(1, 5), Fraction(1, 5), Fraction(-7, 5)
    )
    assert cert.forces_alpha_one is True       # companion self-intersection < 0
    assert cert.degree_contradiction is False  # 1/5 + 1/5 = 2/5 is not > 2/5
    assert cert.valid is False
    assert cert.boundary is True

    good = two_curve_certificate(
        Fraction(2, 5), Fraction(1, 5), Fraction(2, 5), Fraction(-7, 5)
    )
    assert good.degree_contradiction is True and good.valid is True


# ---------------------------------------------------------------------------
# Surface-row table parsing


def test_parse_surface_row_fields():
    row = C.parse_surface_row("7\t0,2,3\tcontracted,residual\t41\t2")
    assert row == SurfaceRow(
        family=7,
        vanishing=frozenset({0, 2, 3}),
        fails=frozenset({"contracted", "residual"}),
        method=Method.M41,
        m=2,
    )


@pytest.mark.parametrize(
    "line",
    [
        "7\t0,2,3\tresidual\t41",          # missing column
        "0\t0,2,3\tresidual\t41\t2",       # family out of range
        "7\t0,2\tresidual\t41\t2",         # two vanishing indices
        "7\t0,2,5\tresidual\t41\t2",       # index out of range
        "7\t0,2,2\tresidual\t41\t2",       # repeated index
        "7\t0,2,3\tbogus\t41\t2",          # unknown tag
        "7\t0,2,3\tresidual\t43\t2",       # unknown method
        "7\t0,2,3\tresidual\t41\t0",       # nonpositive multiplicity
        "7\t0,2,3\tresidual\t41\ttwo",     # non-integer multiplicity
    ],
)
def test_parse_surface_row_rejects_malformed(line):
    with pytest.raises(SurfaceRowParseError):
        C.parse_surface_row(line)


def test_parse_surface_row_error_carries_line_number():
    with pytest.raises(SurfaceRowParseError, match="line 12"):
        C.parse_surface_row("7\t0,2,3\tresidual\t43\t2", 12)


def test_load_packaged_rows(rows):
    assert len(rows) == 21
    assert len({r.family for r in rows}) == 17
    assert sum(1 for r in rows if r.method is Method.M42) == 3
    assert {r.family for r in rows if r.method is Method.M42} == {15, 29, 34}


def test_load_rows_rejects_duplicate_stratum():
    text = "7\t0,2,3\tresidual\t41\t2\n7\t0,2,3\tresidual\t41\t3\n"
    with pytest.raises(SurfaceRowParseError, match="duplicate"):
        load_surface_rows(io.StringIO(text))


def test_serialize_rows_round_trip(rows):
    text = serialize_surface_rows(rows)
    again = load_surface_rows(io.StringIO(text))
    assert again == rows
    assert serialize_surface_rows(again) == text


def test_serialize_rows_matches_packaged_data(rows):
    raw = packaged_data_path(C.SURFACE_ROWS_FILENAME).read_text()
    data_lines = [l for l in raw.splitlines() if l and not l.startswith("#")]
    assert serialize_surface_rows(rows).splitlines() == data_lines


# ---------------------------------------------------------------------------
# Row certification


def test_certify_row_worked_chain(db):
    row = C.parse_surface_row("20\t0,2,3\tcontracted\t41\t4")
    cert = certify_row(db.get(20), row)
    assert cert.deg_c == Fraction(1, 5)
    assert cert.diff_indices == (5,)
    assert cert.diff_total == Fraction(4, 5)
    assert cert.c2t == Fraction(-9, 5)
    assert cert.exclusion_value == Fraction(-4, 3)
    assert cert.valid and not cert.boundary
    assert cert.companion is None


def test_certify_row_two_curve_chain(db):
    row = C.parse_surface_row("29\t0,2,4\tresidual\t42\t2")
    cert = certify_row(db.get(29), row)
    assert cert.deg_c == Fraction(1, 5)
    assert cert.c2t == Fraction(-7, 5)
    assert cert.exclusion_value is None
    comp = cert.companion
    assert comp.deg_c_prime == Fraction(1, 5)  # 2 * cap - deg = 2/5 - 1/5
    assert comp.c_prime_sq == Fraction(-7, 5)
    assert comp.forces_alpha_one and comp.degree_contradiction
    assert cert.valid


def test_certify_row_boundary_value_is_invalid(db):
    row = C.parse_surface_row("1\t0,1,2\t\t41\t1")
    cert = certify_row(db.get(1), row)
    assert cert.exclusion_value == 0
    assert cert.valid is False
    assert cert.boundary is True


def test_certify_row_positive_value_is_invalid(db):
    row = C.parse_surface_row("1\t0,1,2\t\t41\t3")
    cert = certify_row(db.get(1), row)
    assert cert.exclusion_value == 6
    assert cert.valid is False and cert.boundary is False


def test_certify_row_rejects_wrong_family_record(db):
    row = C.parse_surface_row("1\t0,1,2\t\t41\t1")
    with pytest.raises(RowError, match="applied to family record 2"):
        certify_row(db.get(2), row)


def test_certify_row_rejects_nonpositive_companion_degree(db):
    row = C.parse_surface_row("8\t2,3,4\t\t42\t1")
    with pytest.raises(RowError, match="companion degree"):
        certify_row(db.get(8), row)


def test_expected_fail_tags_derived_from_verdicts(db):
    assert expected_fail_tags(db.get(7)) == frozenset({"residual", "contracted"})
    assert expected_fail_tags(db.get(9)) == frozenset({"residual"})
    assert expected_fail_tags(db.get(20)) == frozenset({"contracted"})
    assert expected_fail_tags(db.get(40)) == frozenset()


def test_verify_packaged_table_is_clean(db, rows):
    verification = verify_surface_table(db, rows)
    assert verification.ok
    assert verification.invalid == ()
    assert verification.tag_mismatches == ()
    assert len(verification.certificates) == 21
    values = {
        (c.family, tuple(sorted(c.curve.vanishing)), c.m): c
        for c in verification.certificates
    }
    assert values[(7, (0, 2, 3), 2)].exclusion_value == Fraction(-1)
    assert values[(18, (1, 2, 3), 4)].exclusion_value == Fraction(-7, 5)
    assert values[(21, (0, 2, 4), 7)].exclusion_value is not None


def test_verify_table_reports_tag_mismatch(db, rows):
    tampered = list(rows)
    victim = tampered[0]
    tampered[0] = SurfaceRow(
        family=victim.family,
        vanishing=victim.vanishing,
        fails=frozenset({"residual"}),  # drops the contracted tag for family 7
        method=victim.method,
        m=victim.m,
    )
    verification = verify_surface_table(db, tampered)
    assert not verification.ok
    assert len(verification.tag_mismatches) == 1
    assert verification.tag_mismatches[0][0] == victim.family


def test_verify_table_reports_invalid_row(db, rows):
    extra = C.parse_surface_row("1\t0,1,2\t\t41\t1")
    verification = verify_surface_table(db, list(rows) + [extra])
    assert not verification.ok
    assert len(verification.invalid) == 1
    assert verification.invalid[0].family == 1
    assert verification.invalid[0].boundary


# ---------------------------------------------------------------------------
# Extension checks for the failing-bound families


def test_extension_checks_cover_derived_set(db):
    checks = extension_checks(db)
    assert [c.family for c in checks] == [18, 19, 22, 27, 28]
    for check in checks:
        assert len(check.entries) == 5
        # every non-strict entry must name its fallback assumption
        for entry in check.entries:
            if not entry.strict:
                assert entry.assumption_if_not_strict


def test_extension_check_family_18_values(db):
    check = extension_check(db.get(18))
    assert [e.relation for e in check.entries] == [">", ">", "<", "<", ">"]
    assert [e.lhs for e in check.entries] == [
        Fraction(1, 4),
        Fraction(1, 3),
        Fraction(1, 6),
        Fraction(1, 6),
        Fraction(2, 5),
    ]
    assert len(check.assumption_entries) == 2
    assert len(check.strict_entries) == 3


def test_extension_check_family_19_has_two_equalities(db):
    check = extension_check(db.get(19))
    assert [e.relation for e in check.entries] == ["=", ">", ">", "=", ">"]


def test_extension_check_rejects_non_failing_family(db):
    with pytest.raises(ValueError, match="status is strong_a"):
        extension_check(db.get(40))
