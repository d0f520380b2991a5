import copy
import json
from pathlib import Path

import pytest

from hopfkit.algebra import check_algebra
from hopfkit.coalg import HopfAlgebra
from hopfkit.document import ParseError, ShapeError, UnknownName, parse_document
from hopfkit.exactla import GF, QQ
from hopfkit.hopfmod import DKHopfModule, check_hopf_module

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def _kc2_raw() -> dict:
    return json.loads((SAMPLES / "kc2.json").read_text())


def _dump(raw) -> str:
    return json.dumps(raw)


def test_minimal_kc2_document_parses():
    doc = parse_document((SAMPLES / "kc2.json").read_bytes(), source="kc2.json")
    assert doc.field == QQ
    assert list(doc.objects) == ["kC2", "kC2c", "H", "CA", "Areg", "N"]
    assert isinstance(doc.objects["H"], HopfAlgebra)
    assert isinstance(doc.objects["N"], DKHopfModule)
    assert check_algebra(doc.objects["kC2"]) == []
    assert check_hopf_module(doc.objects["N"]) == []
    assert doc.tasks[0] == "check"


def test_algebra_only_document():
    raw = {"field": "GF(2)", "objects": {"A": {
        "kind": "algebra", "dim": 1, "mult": [[["1"]]], "unit": ["1"]}}}
    doc = parse_document(_dump(raw))
    assert doc.field == GF(2) and doc.tasks == []


def test_wrong_arity_mult_names_path():
    raw = _kc2_raw()
    raw["objects"]["kC2"]["mult"] = [[["1", "0"], ["0", "1"]]]
    with pytest.raises(ShapeError) as e:
        parse_document(_dump(raw))
    assert e.value.path == "objects.kC2.mult"
    assert "objects.kC2.mult" in str(e.value)


def test_short_inner_row_names_nested_path():
    raw = _kc2_raw()
    raw["objects"]["kC2"]["mult"][1][0] = ["0"]
    with pytest.raises(ShapeError) as e:
        parse_document(_dump(raw))
    assert e.value.path == "objects.kC2.mult[1][0]"


def test_half_in_gf2_is_parse_error():
    raw = _kc2_raw()
    raw["field"] = "GF(2)"
    raw["objects"]["kC2"]["unit"] = ["1/2", "0"]
    with pytest.raises(ParseError) as e:
        parse_document(_dump(raw))
    assert e.value.path == "objects.kC2.unit[0]"


def test_fractions_are_fine_over_q():
    raw = _kc2_raw()
    raw["objects"]["Areg"]["action"][1] = [["0", "2/2"], ["3/3", "0"]]
    doc = parse_document(_dump(raw))
    assert check_hopf_module(doc.objects["N"]) == []


def test_json_syntax_error_carries_line():
    text = '{\n  "field": "Q",\n  "objects": {,}\n}'
    with pytest.raises(ParseError) as e:
        parse_document(text)
    assert e.value.path.startswith("line 3")


def test_non_utf8_rejected():
    with pytest.raises(ParseError):
        parse_document(b'{"field": "\xff"}')


@pytest.mark.parametrize("field", ["GF(4)", "R", 2, "GF(0)"])
def test_bad_field(field):
    raw = _kc2_raw()
    raw["field"] = field
    with pytest.raises(ParseError) as e:
        parse_document(_dump(raw))
    assert e.value.path == "field"


def test_unknown_reference():
    raw = _kc2_raw()
    raw["objects"]["H"]["coalgebra"] = "nope"
    with pytest.raises(UnknownName) as e:
        parse_document(_dump(raw))
    assert e.value.path == "objects.H.coalgebra"


def test_reference_of_wrong_kind():
    raw = _kc2_raw()
    raw["objects"]["H"]["coalgebra"] = "kC2"
    with pytest.raises(UnknownName):
        parse_document(_dump(raw))


def test_unknown_task():
    raw = _kc2_raw()
    raw["tasks"] = ["check", "prove-everything"]
    with pytest.raises(UnknownName) as e:
        parse_document(_dump(raw))
    assert e.value.path == "tasks[1]"


def test_unknown_kind():
    raw = _kc2_raw()
    raw["objects"]["kC2"]["kind"] = "lie-algebra"
    with pytest.raises(ParseError) as e:
        parse_document(_dump(raw))
    assert e.value.path == "objects.kC2.kind"


def test_missing_key_and_bad_dim():
    raw = _kc2_raw()
    del raw["objects"]["kC2"]["unit"]
    with pytest.raises(ParseError):
        parse_document(_dump(raw))
    raw = _kc2_raw()
    raw["objects"]["kC2"]["dim"] = 0
    with pytest.raises(ParseError) as e:
        parse_document(_dump(raw))
    assert e.value.path == "objects.kC2.dim"


def test_circular_reference():
    raw = {"field": "Q", "objects": {
        "H": {"kind": "bialgebra", "algebra": "A", "coalgebra": "C"},
        "A": {"kind": "comodule-algebra", "H": "H", "A": "A", "coaction": []},
        "C": {"kind": "coalgebra", "dim": 1, "comult": [[["1"]]], "counit": ["1"]}}}
    with pytest.raises(ParseError, match="circular"):
        parse_document(_dump(raw))


def test_hopf_module_over_wrong_algebra():
    raw = _kc2_raw()
    raw["objects"]["B"] = copy.deepcopy(raw["objects"]["kC2"])
    raw["objects"]["B"]["mult"][1][1] = ["0", "1"]
    raw["objects"]["Areg"]["action"][1] = [["0", "0"], ["0", "1"]]
    raw["objects"]["Areg"]["algebra"] = "B"
    with pytest.raises(ShapeError) as e:
        parse_document(_dump(raw))
    assert e.value.path == "objects.N.module"


def test_group_action_table_validation():
    raw = json.loads((SAMPLES / "f4_h1.json").read_text())
    raw["objects"]["Frob"]["table"] = [[0, 1], [1, 2]]
    with pytest.raises(ParseError) as e:
        parse_document(_dump(raw))
    assert e.value.path == "objects.Frob.table[1][1]"


def test_group_action_document_parses():
    doc = parse_document((SAMPLES / "f4_h1.json").read_text())
    assert doc.field == GF(2)
    assert doc.objects["Frob"].G.order == 2
    assert doc.tasks == ["check", "h1"]
