import json

import numpy as np
import pytest

from cohfilt import io
from cohfilt.errors import ParseError


def test_matrix_roundtrip():
    M = np.array([[0.5, 0.25 - 0.1j], [0.25 + 0.1j, 0.5]])
    obj = json.loads(json.dumps(io.matrix_to_json(M)))
    assert obj["dim"] == 2
    np.testing.assert_array_equal(io.parse_matrix(obj), M)


def test_im_defaults_to_zero():
    np.testing.assert_array_equal(io.parse_matrix({"dim": 1, "re": [[1]]}), [[1 + 0j]])


@pytest.mark.parametrize(
    "obj",
    [
        {"dim": 2, "re": [[1, 0], [0]]},
        {"dim": 2, "re": [[1, 0]]},
        {"dim": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0, 0]]},
        {"dim": 0, "re": []},
        {"dim": True, "re": [[1]]},
        {"dim": 1, "re": [["x"]]},
        {"re": [[1]]},
        [[1]],
    ],
)
def test_parse_matrix_rejects(obj):
    with pytest.raises(ParseError):
        io.parse_matrix(obj)


def test_instrument_roundtrip():
    mats = [np.diag([1, 0]), np.array([[0, 1j], [0, 0]])]
    obj = json.loads(json.dumps(io.instrument_to_json(mats)))
    parsed = io.parse_instrument(obj)
    for a, b in zip(mats, parsed):
        np.testing.assert_array_equal(a, b)
    with pytest.raises(ParseError):
        io.parse_instrument({"dim": 2, "kraus": []})
    with pytest.raises(ParseError):
        io.parse_instrument({"dim": 2, "kraus": [{"re": [[1, 0], [0]]}]})


def test_loads_and_read_errors(tmp_path):
    with pytest.raises(ParseError):
        io.loads("{not json")
    with pytest.raises(ParseError):
        io.read_json(tmp_path / "missing.json")


def test_normalize_rounds_to_15_digits():
    out = io.normalize({"x": np.float64(2 / 3), "n": np.int64(3), "b": np.bool_(True), "v": np.array([0.1])})
    assert out == {"x": 0.666666666666667, "n": 3, "b": True, "v": [0.1]}
    assert io.digest({"a": 1.0}) == io.digest({"a": 1.0000000000000002})
