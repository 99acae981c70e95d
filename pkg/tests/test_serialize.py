import json
import math

import numpy as np
import pytest

from gpsne.serialize import (
    REFERENCE_HEADER,
    SCHEMA_VERSION,
    ReferenceCsvError,
    dumps_csv,
    dumps_json,
    dumps_wavefunction,
    envelope,
    format_float,
    parse_reference_csv,
)

HEADER = ",".join(REFERENCE_HEADER)


def test_format_float_round_trips():
    for x in (0.1, 1 / 3, -2.5e-300, 6.02214076e23, 1.0):
        text = format_float(x)
        assert float(text) == x
        assert "e" in text and len(text.split("e")[0].lstrip("-").replace(".", "")) == 17


def test_json_is_valid_and_fixed():
    obj = {"b": 1.0, "a": [np.float64(0.5), np.int64(3), True, None, math.nan, "x"], "c": {}}
    text = dumps_json(obj)
    assert text == dumps_json(obj)
    parsed = json.loads(text)
    assert list(parsed) == ["b", "a", "c"]
    assert parsed["a"] == [0.5, 3, True, None, None, "x"]
    assert '"b": 1.0000000000000000e+00' in text


def test_csv_fields():
    text = dumps_csv(["x", "flag", "missing", "label"], [{"x": 2.0, "flag": False, "label": "a,b"}])
    assert text == 'x,flag,missing,label\n2.0000000000000000e+00,false,,"a,b"\n'


def test_envelope_keys():
    env = envelope("box", {"mass": 1.0}, "planck", {"E": "planck_energy"}, "rows", [], ["w"])
    assert env["schema_version"] == SCHEMA_VERSION == "1"
    assert list(env) == ["schema_version", "command", "parameters", "unit_system", "units", "rows", "warnings"]


def test_parse_reference_ok():
    table = parse_reference_csv(f"{HEADER}\n1.0,1,0.5,dirac\n1.0,2,1.5,dirac\n\n2.0,1,0.2,other\n")
    assert [(r.width, r.level, r.energy_ref) for r in table.rows] == [(1.0, 1, 0.5), (1.0, 2, 1.5), (2.0, 1, 0.2)]
    assert table.provenance == "dirac; other"


@pytest.mark.parametrize(
    "body, line, fragment",
    [
        ("1.0,1,0.5,x\n1.0,1,0.6,x\n", 3, "duplicate"),
        ("1.0,1,-0.5,x\n", 2, "positive"),
        ("0,1,0.5,x\n", 2, "positive"),
        ("abc,1,0.5,x\n", 2, "not a number"),
        ("1.0,1.5,0.5,x\n", 2, "integer"),
        ("1.0,0,0.5,x\n", 2, ">= 1"),
        ("1.0,1,0.5\n", 2, "4 fields"),
        ("1.0,1,0.5,x\n2.0,1,nan,x\n", 3, "positive"),
    ],
)
def test_parse_reference_errors(body, line, fragment):
    with pytest.raises(ReferenceCsvError, match=fragment) as info:
        parse_reference_csv(f"{HEADER}\n{body}")
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_parse_reference_header():
    with pytest.raises(ReferenceCsvError) as info:
        parse_reference_csv("width,n,energy,source\n1,1,1,x\n")
    assert info.value.line == 1
    with pytest.raises(ReferenceCsvError):
        parse_reference_csv("")


def test_wavefunction_dump():
    text = dumps_wavefunction(np.array([0.5, 1.0]), np.array([0.25, 0.0]))
    assert text.splitlines() == ["r,u", "5.0000000000000000e-01,2.5000000000000000e-01",
                                 "1.0000000000000000e+00,0.0000000000000000e+00"]
