"""Unit tests for input parsing, encoding and canonical serialization."""

import json
import math

import numpy as np
import pytest

from hamcert import (
    InputFormatError,
    NotHamiltonian,
    certify_direct,
    dumps_canonical,
    emit_input_document,
    make_blocks,
    parse_input_dict,
    parse_input_text,
)
from hamcert.certify import ApproxSpectrumWitness
from hamcert.documents import (
    TOLERANCE_KEYS,
    certificate_to_dict,
    complex_to_wire,
    encode_value,
    matrix_to_wire,
    report_header,
    vector_to_wire,
    wire_to_matrix,
)

VALID_1X1 = {
    "n": 1,
    "A": [[[1.0, 0.0]]],
    "B": [[[1.0, 0.0]]],
    "C": [[[1.0, 0.0]]],
}


def test_complex_wire_round_trip():
    assert complex_to_wire(1 + 2j) == [1.0, 2.0]
    m = np.array([[1 + 2j, 3.0], [0.0, -1j]])
    wire = matrix_to_wire(m)
    back = wire_to_matrix(wire, "M", 2, 2)
    assert np.array_equal(back, m)


def test_vector_to_wire():
    assert vector_to_wire(np.array([1j, 2.0])) == [[0.0, 1.0], [2.0, 0.0]]


def test_wire_to_matrix_error_positions():
    with pytest.raises(InputFormatError, match="A: expected a list of 2 rows"):
        wire_to_matrix("nope", "A", 2, 2)
    with pytest.raises(InputFormatError, match="A: expected 2 rows, got 1"):
        wire_to_matrix([[[1.0, 0.0]]], "A", 2, 2)
    with pytest.raises(InputFormatError, match=r"A\[0\]: expected 2 entries"):
        wire_to_matrix([[[1.0, 0.0]], [[1.0, 0.0]]], "A", 2, 2)
    with pytest.raises(InputFormatError, match=r"A\[0\]\[1\]: expected an \[re, im\] pair"):
        wire_to_matrix([[[1.0, 0.0], [1.0]], [[1.0, 0.0], [1.0, 0.0]]], "A", 2, 2)
    with pytest.raises(InputFormatError, match=r"A\[0\]\[0\]\[1\]: expected a number"):
        wire_to_matrix([[[1.0, "x"]]], "A", 1, 1)


def test_parse_rejects_top_level_shape_problems():
    with pytest.raises(InputFormatError, match="expected a JSON object"):
        parse_input_dict([1, 2])
    with pytest.raises(InputFormatError, match="unknown keys"):
        parse_input_dict({**VALID_1X1, "extra": 1})
    with pytest.raises(InputFormatError, match="missing required key 'n'"):
        parse_input_dict({"A": []})
    with pytest.raises(InputFormatError, match="positive integer"):
        parse_input_dict({**VALID_1X1, "n": 0})
    with pytest.raises(InputFormatError, match="positive integer"):
        parse_input_dict({**VALID_1X1, "n": True})


def test_parse_blocks_xor_assembled():
    with pytest.raises(InputFormatError, match="not both"):
        parse_input_dict({**VALID_1X1, "H": [[[0.0, 0.0]] * 2] * 2})
    with pytest.raises(InputFormatError, match="expected blocks"):
        parse_input_dict({"n": 1})
    with pytest.raises(InputFormatError, match=r"missing block\(s\) \['C'\]"):
        parse_input_dict({"n": 1, "A": VALID_1X1["A"], "B": VALID_1X1["B"]})


def test_parse_blocks_success_and_digest_stability():
    doc1 = parse_input_dict(VALID_1X1)
    doc2 = parse_input_dict(json.loads(json.dumps(VALID_1X1)))
    assert doc1.source == "blocks"
    assert doc1.n == 1
    assert doc1.digest == doc2.digest
    assert len(doc1.digest) == 64
    other = parse_input_dict({**VALID_1X1, "A": [[[2.0, 0.0]]]})
    assert other.digest != doc1.digest


def test_parse_assembled_matrix():
    h = [[[1.0, 0.0], [1.0, 0.0]], [[-1.0, 0.0], [-1.0, 0.0]]]
    doc = parse_input_dict({"n": 1, "H": h})
    assert doc.source == "assembled"
    assert doc.hblocks.A[0, 0] == 1.0
    assert doc.hblocks.B[0, 0] == 1.0
    assert doc.hblocks.C[0, 0] == -1.0
    assert certify_direct(doc.hblocks).verdict.value == "singular"


def test_parse_assembled_rejects_non_hamiltonian():
    h = [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]  # H22 != -H11^H
    with pytest.raises(NotHamiltonian, match="lower-right"):
        parse_input_dict({"n": 1, "H": h})


def test_parse_text_reports_json_position():
    with pytest.raises(InputFormatError, match="JSON parse error at line 1 column"):
        parse_input_text("{bad json")


def test_parse_text_rejects_nonfinite_literals():
    text = '{"n": 1, "A": [[[NaN, 0]]], "B": [[[1, 0]]], "C": [[[1, 0]]]}'
    with pytest.raises(InputFormatError, match="non-finite JSON literal"):
        parse_input_text(text)


def test_tolerance_validation():
    with pytest.raises(InputFormatError, match="unknown key"):
        parse_input_dict({**VALID_1X1, "tolerances": {"bogus": 0.5}})
    with pytest.raises(InputFormatError, match=r"in \(0, 1\)"):
        parse_input_dict({**VALID_1X1, "tolerances": {"rel_tol": 0.0}})
    with pytest.raises(InputFormatError, match="expected a number"):
        parse_input_dict({**VALID_1X1, "tolerances": {"rel_tol": "tight"}})
    with pytest.raises(InputFormatError, match="expected an object"):
        parse_input_dict({**VALID_1X1, "tolerances": [1]})


def test_tolerances_flow_into_kwargs_and_effective_view():
    doc = parse_input_dict({**VALID_1X1, "tolerances": {"rel_tol": 1e-6, "schur_tol": 1e-7}})
    kwargs = doc.certify_kwargs()
    assert kwargs == {"rel_tol": 1e-6, "schur_tol": 1e-7}
    eff = doc.effective_tolerances()
    assert eff["rel_tol"] == 1e-6
    assert eff["schur_tol"] == 1e-7
    assert eff["shift_tol"] == 1e-10
    assert eff["psd_tol"] == 1e-10
    assert eff["htol_base"] == 1e-12
    assert eff["rank_rel_tol"] is None
    assert set(eff) == set(TOLERANCE_KEYS)


def test_emit_round_trip():
    blocks = make_blocks(np.diag([1.0, 2.0]), np.eye(2), np.eye(2))
    doc = parse_input_dict(emit_input_document(blocks))
    assert np.array_equal(doc.hblocks.A, blocks.A)
    assert np.array_equal(doc.hblocks.B, blocks.B)
    assert np.array_equal(doc.hblocks.C, blocks.C)


def test_encode_value_covers_report_payloads():
    wit = ApproxSpectrumWitness(vector=np.array([1.0, 0.0]), residual=0.5)
    encoded = encode_value({
        "flag": True,
        "count": np.int64(3),
        "value": np.float64(1.5),
        "z": 1 + 1j,
        "vec": np.array([1j]),
        "mat": np.eye(1),
        "wit": wit,
        "seq": (1, 2.0),
        "nothing": None,
    })
    assert encoded == {
        "flag": True,
        "count": 3,
        "value": 1.5,
        "z": [1.0, 1.0],
        "vec": [[0.0, 1.0]],
        "mat": [[[1.0, 0.0]]],
        "wit": {"vector": [[1.0, 0.0], [0.0, 0.0]], "residual": 0.5},
        "seq": [1, 2.0],
        "nothing": None,
    }


def test_encode_value_nonfinite_float_becomes_repr():
    assert encode_value(math.inf) == "inf"
    assert encode_value(math.nan) == "nan"


def test_encode_value_rejects_unknown_types():
    with pytest.raises(TypeError, match="cannot encode"):
        encode_value(object())
    with pytest.raises(TypeError, match="ndim"):
        encode_value(np.zeros((1, 1, 1)))


def test_certificate_to_dict_shape(diag_invertible_blocks):
    cert = certify_direct(diag_invertible_blocks)
    d = certificate_to_dict(cert)
    assert list(d) == ["criterion", "verdict", "detail", "tolerances", "witnesses"]
    assert d["criterion"] == "direct_sigma_min"
    assert d["verdict"] == "invertible"
    assert isinstance(d["witnesses"]["sigma_min"], float)


def test_report_header_fields():
    assert report_header("check") == {"tool": "hamcert", "tool_version": "0.1.0", "kind": "check"}
    h = report_header("sweep", seed=3)
    assert h["seed"] == 3
    h = report_header("check", input_digest="ab")
    assert h["input_digest"] == "ab"


def test_dumps_canonical_is_stable_and_rejects_nan():
    text = dumps_canonical({"b": 1, "a": [1.5, None, True]})
    assert text == '{\n  "b": 1,\n  "a": [\n    1.5,\n    null,\n    true\n  ]\n}'
    with pytest.raises(ValueError):
        dumps_canonical({"x": float("nan")})
