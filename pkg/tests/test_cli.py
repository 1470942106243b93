"""End-to-end CLI behaviour: subcommands, exit codes, data resolution, JSON."""

import json
import shutil

import pytest

from fano95 import cli, revalidate_document
from fano95.certificates import SURFACE_ROWS_FILENAME
from fano95.families import packaged_data_path

FAMILIES = packaged_data_path("families.tsv")
ROWS = packaged_data_path(SURFACE_ROWS_FILENAME)


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture(autouse=True)
def isolated_env(monkeypatch):
    monkeypatch.delenv(cli.DATA_DIR_ENV, raising=False)


# ---------------------------------------------------------------------------
# validate


def test_validate_packaged_table(capsys):
    code, out, err = run(capsys, "validate")
    assert code == cli.EXIT_OK
    assert out == "ok: 95 families validated (case1: 54, case2: 32, case3: 9)\n"
    assert err == ""


def test_validate_missing_file(capsys, tmp_path):
    code, out, err = run(capsys, "validate", "--families", str(tmp_path / "nope.tsv"))
    assert code == cli.EXIT_INPUT_ERROR
    assert err.startswith("error:")


def test_validate_corrupt_file(capsys, tmp_path):
    bad = tmp_path / "families.tsv"
    lines = FAMILIES.read_text().splitlines()
    lines[10] = "garbage line"
    bad.write_text("\n".join(lines) + "\n")
    code, out, err = run(capsys, "validate", "--families", str(bad))
    assert code == cli.EXIT_INPUT_ERROR
    assert "error:" in err and "line 11" in err


def test_validate_wrong_count(capsys, tmp_path):
    bad = tmp_path / "families.tsv"
    lines = [l for l in FAMILIES.read_text().splitlines() if l and not l.startswith("#")]
    bad.write_text("\n".join(lines[:-1]) + "\n")
    code, _, err = run(capsys, "validate", "--families", str(bad))
    assert code == cli.EXIT_INPUT_ERROR
    assert "error:" in err


# ---------------------------------------------------------------------------
# lists


def test_lists_text_all_match(capsys):
    code, out, _ = run(capsys, "lists")
    assert code == cli.EXIT_OK
    assert out.rstrip().endswith("all lists match the expected values")
    assert "extension_required: 18 19 22 27 28" in out


def test_lists_json_shape(capsys):
    code, out, _ = run(capsys, "lists", "--format", "json")
    assert code == cli.EXIT_OK
    doc = json.loads(out)
    assert sorted(doc) == ["certificates", "coverage", "families", "lists"]
    assert doc["coverage"] is None
    entry = doc["lists"]["extension_required"]
    assert entry["families"] == [18, 19, 22, 27, 28]
    assert entry["match"] is True


def test_lists_detect_derivation_drift(capsys, tmp_path):
    # Swap family 11's system for (1,1,2,3,7), d=13: still a valid record, but
    # it leaves the pencil-exception list and becomes contracted-unsafe, so
    # both derived lists drift from the expectations.
    bad = tmp_path / "families.tsv"
    text = FAMILIES.read_text().replace(
        "11\t10\t1\t1\t2\t2\t5", "11\t13\t1\t1\t2\t3\t7"
    )
    bad.write_text(text)
    code, out, _ = run(capsys, "lists", "--families", str(bad))
    assert code == cli.EXIT_CHECK_FAILED
    assert "MISMATCH pencil_exceptions" in out
    assert "MISMATCH contracted_unsafe" in out


# ---------------------------------------------------------------------------
# certify


def test_certify_text_output(capsys):
    code, out, _ = run(capsys, "certify")
    assert code == cli.EXIT_OK
    lines = out.splitlines()
    assert sum(1 for l in lines if l.startswith("test-class")) == 6
    assert sum(1 for l in lines if l.startswith("surface")) == 21
    assert all("[valid]" in l for l in lines if l.startswith(("test-class", "surface")))


def test_certify_json_revalidates(capsys):
    code, out, _ = run(capsys, "certify", "--format", "json")
    assert code == cli.EXIT_OK
    doc = json.loads(out)
    assert len(doc["certificates"]["surface"]) == 21
    assert revalidate_document(doc) == ()


def test_certify_rejects_malformed_table(capsys, tmp_path):
    bad = tmp_path / "rows.tsv"
    bad.write_text("7\t0,2,3\tresidual\t43\t2\n")
    code, _, err = run(capsys, "certify", "--table", str(bad))
    assert code == cli.EXIT_INPUT_ERROR
    assert "error:" in err


def test_certify_reports_failing_row(capsys, tmp_path):
    bad = tmp_path / "rows.tsv"
    # the boundary row evaluates to exactly zero, which is not an exclusion
    bad.write_text(ROWS.read_text() + "1\t0,1,2\t\t41\t1\n")
    code, out, _ = run(capsys, "certify", "--table", str(bad))
    assert code == cli.EXIT_CHECK_FAILED
    assert "[INVALID" in out or "invalid" in out


def test_certify_reports_tag_mismatch(capsys, tmp_path):
    bad = tmp_path / "rows.tsv"
    bad.write_text(
        ROWS.read_text().replace(
            "7\t0,2,3\tcontracted,residual\t41\t2", "7\t0,2,3\tresidual\t41\t2"
        )
    )
    code, out, _ = run(capsys, "certify", "--table", str(bad))
    assert code == cli.EXIT_CHECK_FAILED
    assert "TAG MISMATCH" in out


# ---------------------------------------------------------------------------
# full


def test_full_text_summary(capsys):
    code, out, _ = run(capsys, "full")
    assert code == cli.EXIT_OK
    assert "coverage: 95 Covered, 0 Gap" in out


def test_full_json_document_revalidates(capsys):
    code, out, _ = run(capsys, "full", "--format", "json")
    assert code == cli.EXIT_OK
    doc = json.loads(out)
    assert len(doc["families"]) == 95
    assert len(doc["coverage"]) == 95
    assert revalidate_document(doc) == ()


def test_full_json_byte_deterministic(capsys):
    _, first, _ = run(capsys, "full", "--format", "json")
    _, second, _ = run(capsys, "full", "--format", "json")
    assert first.encode() == second.encode()


def test_full_reports_coverage_gap(capsys, tmp_path):
    reduced = tmp_path / "rows.tsv"
    reduced.write_text(
        "".join(
            l + "\n"
            for l in ROWS.read_text().splitlines()
            if not l.startswith("16\t")
        )
    )
    code, out, _ = run(capsys, "full", "--table", str(reduced))
    assert code == cli.EXIT_CHECK_FAILED
    assert "GAP" in out
    assert "94 Covered, 1 Gap" in out


# ---------------------------------------------------------------------------
# data-path resolution


def test_env_dir_supplies_both_tables(capsys, monkeypatch, tmp_path):
    shutil.copy(FAMILIES, tmp_path / "families.tsv")
    shutil.copy(ROWS, tmp_path / SURFACE_ROWS_FILENAME)
    monkeypatch.setenv(cli.DATA_DIR_ENV, str(tmp_path))
    code, out, _ = run(capsys, "full")
    assert code == cli.EXIT_OK


def test_env_dir_is_authoritative_when_set(capsys, monkeypatch, tmp_path):
    # An empty data dir must not silently fall back to the packaged tables.
    monkeypatch.setenv(cli.DATA_DIR_ENV, str(tmp_path))
    code, _, err = run(capsys, "validate")
    assert code == cli.EXIT_INPUT_ERROR
    assert "error:" in err


def test_explicit_flag_beats_env_dir(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv(cli.DATA_DIR_ENV, str(tmp_path))  # empty dir
    code, out, _ = run(capsys, "validate", "--families", str(FAMILIES))
    assert code == cli.EXIT_OK
    assert out.startswith("ok: 95 families")


def test_env_dir_with_tampered_data_still_checks(capsys, monkeypatch, tmp_path):
    shutil.copy(ROWS, tmp_path / SURFACE_ROWS_FILENAME)
    (tmp_path / "families.tsv").write_text(
        FAMILIES.read_text().replace("11\t10\t1\t1\t2\t2\t5", "11\t13\t1\t1\t2\t3\t7")
    )
    monkeypatch.setenv(cli.DATA_DIR_ENV, str(tmp_path))
    code, out, _ = run(capsys, "lists")
    assert code == cli.EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# argument errors


def test_missing_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 2


def test_unknown_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2
