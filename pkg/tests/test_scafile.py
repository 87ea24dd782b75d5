import json

import pytest

from superjordan import catalog
from superjordan.algebra import check_supercommutativity, reduce_algebra
from superjordan.errors import ScaParseError
from superjordan.exactfield import QuadraticField
from superjordan.iso import GradedMap
from superjordan.scafile import dumps_graded_map, dumps_sca, load_sca, loads_graded_map, loads_sca, save_sca

S37_TEXT = """{
  "dim_even": 1,
  "dim_odd": 2,
  "field": "rational",
  "name": "S3_7",
  "products": [
    {"left": "e1", "right": "e1", "result": [["1", "e1"]]},
    {"left": "e1", "right": "o1", "result": [["1/2", "o1"]]},
    {"left": "e1", "right": "o2", "result": [["1/2", "o2"]]},
    {"left": "o1", "right": "o2", "result": [["1", "e1"]]}
  ]
}
"""


def test_loads_reads_the_catalog_table():
    algebra = loads_sca(S37_TEXT)
    assert algebra == catalog.get("S3_7").algebra
    assert algebra.name == "S3_7"


def test_dumps_then_loads_keeps_table_and_labels(tmp_path):
    for name in ("K3", "S3_13", "KAC10", "B1s+S1_1"):
        algebra = catalog.get(name).algebra
        path = save_sca(algebra, tmp_path / f"{name}.sca")
        again = load_sca(path)
        assert again == algebra
        assert again.labels == algebra.labels


def test_extension_field_coefficients_survive(gf25):
    algebra = reduce_algebra(catalog.get("S3_1").algebra, gf25)
    text = dumps_sca(algebra)
    assert json.loads(text)["field"] == {"prime": 5, "ext": True}
    assert loads_sca(text).field == QuadraticField(5)


def test_incomplete_load_keeps_broken_tables_broken():
    relaxed = loads_sca(S37_TEXT, complete=False)
    assert relaxed.table[2][1] == ()
    assert not check_supercommutativity(relaxed).holds


def test_empty_file_is_a_parse_error(write_sca):
    with pytest.raises(ScaParseError):
        load_sca(write_sca("empty.sca", ""))


def test_json_syntax_error_carries_position():
    with pytest.raises(ScaParseError) as info:
        loads_sca('{\n  "dim_even": 1,\n  "dim_odd" 2\n}')
    assert info.value.line == 3


def test_schema_error_carries_position():
    with pytest.raises(ScaParseError) as info:
        loads_sca('{\n  "dim_even": -1,\n  "dim_odd": 2\n}')
    assert info.value.line == 2


def test_unknown_field_and_label_are_rejected():
    with pytest.raises(ScaParseError):
        loads_sca('{"dim_even": 1, "dim_odd": 0, "field": "real"}')
    with pytest.raises(ScaParseError):
        loads_sca('{"dim_even": 1, "dim_odd": 0, "products": [{"left": "e1", "right": "e9", "result": []}]}')


def test_grading_violation_is_a_parse_error():
    bad = '{"dim_even": 1, "dim_odd": 1, "products": [{"left": "e1", "right": "e1", "result": [["1", "o1"]]}]}'
    with pytest.raises(ScaParseError):
        loads_sca(bad)


def test_missing_file_is_a_parse_error(tmp_path):
    with pytest.raises(ScaParseError):
        load_sca(tmp_path / "nope.sca")


def test_graded_map_text_form():
    algebra = catalog.get("S3_3").algebra
    f = GradedMap.identity(algebra)
    again = loads_graded_map(dumps_graded_map(f), algebra, algebra)
    assert again == f
