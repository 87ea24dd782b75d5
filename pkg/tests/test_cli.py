import json

import pytest
from typer.testing import CliRunner

from superjordan import cli
from superjordan.cli import app, command_catalog_export, command_check, command_special

runner = CliRunner()

S37_BROKEN = """{
  "dim_even": 1,
  "dim_odd": 2,
  "field": "rational",
  "name": "broken",
  "products": [
    {"left": "e1", "right": "e1", "result": [["1", "e1"]]},
    {"left": "e1", "right": "o1", "result": [["1/3", "o1"]]},
    {"left": "e1", "right": "o2", "result": [["1/2", "o2"]]},
    {"left": "o1", "right": "o2", "result": [["1", "e1"]]}
  ]
}
"""


@pytest.fixture(autouse=True)
def reset_options():
    cli.OPTIONS.update(prime=None, ext=False, quiet=False, json=False)


@pytest.fixture
def exported(tmp_path):
    def export(name):
        path = str(tmp_path / f"{name}.sca")
        result = runner.invoke(app, ["catalog", "export", name, "--out", path])
        assert result.exit_code == 0, result.output
        return path

    return export


def test_check_accepts_an_exported_entry(exported):
    result = runner.invoke(app, ["check", exported("S3_7")])
    assert result.exit_code == 0
    assert "super Jordan" in result.output


def test_check_flags_a_broken_table(write_sca):
    result = runner.invoke(app, ["check", write_sca("broken.sca", S37_BROKEN)])
    assert result.exit_code == 1
    assert "FAILS" in result.output


def test_check_reports_unreadable_input(write_sca):
    assert runner.invoke(app, ["check", write_sca("empty.sca", "")]).exit_code == 2
    assert command_check("/nonexistent/file.sca").status == 2


def test_check_over_gf3_prints_the_banner(exported):
    result = command_check(exported("S3_7"), prime=3)
    assert result.report.splitlines()[0].startswith("WARNING")


def test_catalog_list_by_dimension():
    result = runner.invoke(app, ["catalog", "list", "--dim", "2"])
    assert result.exit_code == 0
    assert len(result.output.strip().splitlines()) == 11


def test_catalog_show():
    result = runner.invoke(app, ["catalog", "show", "S3_13"])
    assert result.exit_code == 0
    assert "(2,1)" in result.output
    assert "T10" in result.output


def test_catalog_show_unknown_name():
    assert runner.invoke(app, ["catalog", "show", "NOPE"]).exit_code == 2


def test_catalog_export_needs_a_name_or_dimension(tmp_path):
    assert command_catalog_export(None, str(tmp_path / "x.sca")).status == 2
    result = command_catalog_export(None, str(tmp_path / "dim1"), dim=1)
    assert result.status == 0
    assert len(result.payload["paths"]) == 3


def test_json_output():
    result = runner.invoke(app, ["--json", "catalog", "show", "S3_7"])
    doc = json.loads(result.output)
    assert doc["status"] == 0
    assert doc["payload"]["name"] == "S3_7"


def test_peirce_at_e1(exported):
    result = runner.invoke(app, ["peirce", exported("S3_7"), "--idempotent", "e1"])
    assert result.exit_code == 0


def test_iso_reports_the_fingerprint_difference(exported):
    result = runner.invoke(app, ["--field", "5", "iso", exported("S3_9"), exported("S3_12")])
    assert result.exit_code == 1
    assert "even_part." in result.output


def test_iso_finds_the_identity(exported):
    path = exported("S3_13")
    result = runner.invoke(app, ["--field", "5", "iso", path, path])
    assert result.exit_code == 0
    assert "graded isomorphism over GF(5)" in result.output


def test_iso_over_q_is_a_usage_error(exported):
    path = exported("S3_13")
    assert runner.invoke(app, ["iso", path, path]).exit_code == 2


def test_classify_u1(tmp_path):
    result = runner.invoke(app, ["classify", "--type", "1,1", "--even", "U1", "--field", "5",
                                 "--out", str(tmp_path / "reps")])
    assert result.exit_code == 0
    assert "orbits: 3" in result.output
    assert len(list((tmp_path / "reps").iterdir())) == 3


def test_classify_needs_a_field():
    assert runner.invoke(app, ["classify", "--type", "1,1", "--even", "U1"]).exit_code == 2


def test_special_k3_witness():
    result = runner.invoke(app, ["special", "--witness", "K3"])
    assert result.exit_code == 0
    assert "embedding verified" in result.output


@pytest.mark.parametrize("witness, algebra, target", [
    ("UT6", "T6", "U(T6)"),
    ("UT6-graded", "S3_12", "U(T6)-graded"),
])
def test_special_t6_envelope_witnesses(witness, algebra, target):
    result = runner.invoke(app, ["special", "--witness", witness])
    assert result.exit_code == 0, result.output
    assert result.output.startswith(f"{algebra} -> {target}")
    assert "embedding verified" in result.output


def test_special_unknown_witness():
    assert command_special(witness="K4").status == 2


def test_special_search_into_odd_weyl(exported):
    result = command_special(search=exported("S3_8"), target="odd-weyl")
    assert result.status == 0
    assert result.payload["images"] == {"e1": "1", "o1": "x", "o2": "2*y"}


def test_special_search_fails_with_the_anticommutator(exported):
    assert command_special(search=exported("S3_8"), target="odd-weyl-anti").status == 1
