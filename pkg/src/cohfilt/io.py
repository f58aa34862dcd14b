"""JSON wire formats for matrices, instruments and reports.

Matrix:     {"dim": d, "re": [[...]], "im": [[...]]}
Instrument: {"dim": d, "kraus": [{"re": [[...]], "im": [[...]]}, ...]}
"""
import hashlib
import json
import math

import numpy as np

from cohfilt.errors import ParseError

SIG_DIGITS = 15


def _real_grid(rows, name, d):
    if not isinstance(rows, list) or len(rows) != d:
        raise ParseError(f"'{name}' must be a list of {d} rows")
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != d:
            raise ParseError(f"'{name}' row {i} must have {d} entries (ragged or wrong size)")
        for x in row:
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise ParseError(f"'{name}' row {i} holds a non-numeric entry {x!r}")
    return np.array(rows, dtype=float)


def _complex_grid(obj, d, where):
    if not isinstance(obj, dict) or "re" not in obj:
        raise ParseError(f"{where}: expected an object with 're' (and optional 'im')")
    re = _real_grid(obj["re"], "re", d)
    im = _real_grid(obj["im"], "im", d) if "im" in obj else np.zeros_like(re)
    return re + 1j * im


def _dim(obj):
    d = obj.get("dim") if isinstance(obj, dict) else None
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise ParseError(f"'dim' must be a positive integer, got {d!r}")
    return d


def parse_matrix(obj):
    return _complex_grid(obj, _dim(obj), "matrix")


def parse_instrument(obj):
    d = _dim(obj)
    kraus = obj.get("kraus")
    if not isinstance(kraus, list) or not kraus:
        raise ParseError("'kraus' must be a nonempty list")
    return [_complex_grid(k, d, f"kraus[{i}]") for i, k in enumerate(kraus)]


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


def read_json(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return loads(text)


def matrix_to_json(M):
    M = np.asarray(M, dtype=np.complex128)
    return {
        "dim": int(M.shape[0]),
        "re": [[round_sig(x) for x in row] for row in M.real.tolist()],
        "im": [[round_sig(x) for x in row] for row in M.imag.tolist()],
    }


def instrument_to_json(kraus_mats):
    mats = [np.asarray(K, dtype=np.complex128) for K in kraus_mats]
    return {
        "dim": int(mats[0].shape[0]),
        "kraus": [{k: v for k, v in matrix_to_json(K).items() if k != "dim"} for K in mats],
    }


def round_sig(x, digits=SIG_DIGITS):
    x = float(x)
    if x == 0.0 or not math.isfinite(x):
        return 0.0 if x == 0.0 else x
    return float(f"{x:.{digits}g}")


def normalize(obj):
    """Round floats to 15 significant digits and turn numpy scalars into Python ones."""
    if isinstance(obj, dict):
        return {str(k): normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [normalize(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round_sig(obj)
    if isinstance(obj, np.ndarray):
        return normalize(obj.tolist())
    return obj


def canonical_dumps(obj):
    return json.dumps(normalize(obj), sort_keys=True, separators=(",", ":"))


def digest(obj):
    return hashlib.sha256(canonical_dumps(obj).encode()).hexdigest()
