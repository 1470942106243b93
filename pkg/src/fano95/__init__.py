"""fano95: exact verification of the curve-exclusion case analysis over the
95 families of quasismooth Fano 3-fold weighted hypersurfaces.

The package re-derives, in exact rational arithmetic, every degree bound,
membership list, divisibility certificate, and exclusion value in the case
analysis, and audits that the 95 families are each covered by a verified
route.  See the ``audit`` console script for the command-line surface.
"""

from .certificates import (
    CertificateError,
    ExtensionCheck,
    ExtensionEntry,
    Method,
    RowError,
    SurfaceCertificate,
    SurfaceRow,
    SurfaceRowParseError,
    TableVerification,
    TestClassCertificate,
    TwoCurveCertificate,
    case3_test_class_certificates,
    certify_row,
    curve_self_intersection,
    different_total,
    expected_fail_tags,
    extension_check,
    extension_checks,
    load_packaged_surface_rows,
    load_surface_rows,
    serialize_surface_rows,
    surface_exclusion_value,
    test_class_value,
    test_class_value_expanded,
    two_curve_certificate,
    verify_surface_table,
)
from .coverage import (
    Annotation,
    AnnotationKind,
    FamilyCoverage,
    RouteEntry,
    build_coverage,
    containment_annotated_families,
)
from .families import (
    FAMILY_COUNT,
    FamilyDatabase,
    FamilyNotFoundError,
    FamilyRecord,
    FamilyTableError,
    ParseError,
    ValidationError,
    get_family,
    load_families,
    load_packaged_families,
    serialize_families,
)
from .lemmas import (
    BoundStatus,
    Case1Verdict,
    CaseTag,
    Comparison,
    ContractedReason,
    ContractedVerdict,
    DivisibilityCertificate,
    DivisibilityEntry,
    DivisibilityViolation,
    PointCaseReport,
    SharedFactorCheck,
    SharedFactorPreconditionError,
    WrongCaseError,
    case1_point_cases,
    case1_verdict,
    case2_exception_set,
    case2_verdict,
    case3_integer_filter,
    case_partition,
    classify_case,
    contracted_divisibility_certificate,
    contracted_unsafe_set,
    contracted_verdict,
    degree_bound,
    shared_factor_check,
    shared_factor_set,
    tangent_indices,
    verdict_sets,
)
from .report import GOLDEN_LISTS, build_document, derived_lists, revalidate_document, to_json
from .wps import (
    Rational,
    StratumCurve,
    Weights,
    anticanonical_cube,
    coordinate_point_on_hypersurface,
    format_rational,
    parse_rational,
    stratum_degree,
)

__version__ = "1.0.0"

__all__ = [
    "__version__",
    # wps
    "Rational", "Weights", "StratumCurve", "anticanonical_cube",
    "stratum_degree", "coordinate_point_on_hypersurface",
    "format_rational", "parse_rational",
    # families
    "FAMILY_COUNT", "FamilyRecord", "FamilyDatabase", "FamilyTableError",
    "ParseError", "ValidationError", "FamilyNotFoundError",
    "load_families", "load_packaged_families", "serialize_families",
    "get_family",
    # lemmas
    "CaseTag", "BoundStatus", "ContractedReason", "WrongCaseError",
    "SharedFactorPreconditionError", "DivisibilityViolation",
    "Comparison", "PointCaseReport", "Case1Verdict", "SharedFactorCheck",
    "ContractedVerdict", "DivisibilityEntry", "DivisibilityCertificate",
    "classify_case", "degree_bound", "case1_point_cases", "case1_verdict",
    "shared_factor_check", "case2_verdict", "case3_integer_filter",
    "contracted_verdict", "tangent_indices",
    "contracted_divisibility_certificate", "case_partition", "verdict_sets",
    "case2_exception_set", "contracted_unsafe_set", "shared_factor_set",
    # certificates
    "CertificateError", "RowError", "SurfaceRowParseError", "Method",
    "TestClassCertificate", "TwoCurveCertificate", "SurfaceRow",
    "SurfaceCertificate", "TableVerification", "ExtensionCheck",
    "ExtensionEntry",
    "test_class_value", "test_class_value_expanded",
    "case3_test_class_certificates", "different_total",
    "curve_self_intersection", "surface_exclusion_value",
    "two_curve_certificate", "certify_row", "expected_fail_tags",
    "verify_surface_table", "load_surface_rows", "serialize_surface_rows",
    "load_packaged_surface_rows", "extension_check", "extension_checks",
    # coverage
    "AnnotationKind", "Annotation", "RouteEntry", "FamilyCoverage",
    "build_coverage", "containment_annotated_families",
    # report
    "GOLDEN_LISTS", "derived_lists", "build_document", "to_json",
    "revalidate_document",
]
