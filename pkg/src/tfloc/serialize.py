"""JSON schemas for signals, grids, operators and singular systems.

Complex numbers are stored as ``[re, im]`` pairs. Python's ``json`` writes
floats with ``repr``, which round-trips IEEE doubles exactly.
"""

import json

import numpy as np

from .exceptions import DimensionError, TFLocError


class SchemaError(TFLocError, ValueError):
    """A JSON document does not follow the expected schema."""


def _pairs(values):
    return [[float(v.real), float(v.imag)] for v in np.asarray(values, dtype=complex).ravel()]


def _complex(node, shape, what):
    try:
        arr = np.asarray(node, dtype=float)
    except (TypeError, ValueError):
        raise SchemaError(f"{what}: entries must be [re, im] number pairs") from None
    if arr.shape != tuple(shape) + (2,):
        raise SchemaError(f"{what}: expected array of shape {tuple(shape) + (2,)}, got {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def _check_keys(doc, required, what):
    if not isinstance(doc, dict):
        raise SchemaError(f"{what}: expected a JSON object")
    missing = set(required) - set(doc)
    extra = set(doc) - set(required)
    if missing or extra:
        raise SchemaError(f"{what}: missing keys {sorted(missing)}, unknown keys {sorted(extra)}")


def _dim(doc, what):
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise SchemaError(f"{what}: n must be an integer >= 2")
    return n


def signal_to_json(f):
    f = np.asarray(f, dtype=complex)
    return {"n": int(f.shape[0]), "data": _pairs(f)}


def signal_from_json(doc):
    _check_keys(doc, ("n", "data"), "signal")
    n = _dim(doc, "signal")
    return _complex(doc["data"], (n,), "signal")


def grid_to_json(F):
    F = np.asarray(F, dtype=complex)
    n = int(F.shape[0])
    return {"n": n, "data": np.asarray(_pairs(F)).reshape(n, n, 2).tolist()}


def grid_from_json(doc):
    _check_keys(doc, ("n", "data"), "grid")
    n = _dim(doc, "grid")
    return _complex(doc["data"], (n, n), "grid")


def operator_to_json(T):
    T = np.asarray(T, dtype=complex)
    n = int(T.shape[0])
    return {"n": n, "rows": np.asarray(_pairs(T)).reshape(n, n, 2).tolist()}


def operator_from_json(doc):
    _check_keys(doc, ("n", "rows"), "operator")
    n = _dim(doc, "operator")
    return _complex(doc["rows"], (n, n), "operator")


def singular_system_to_json(S):
    return {
        "s": [float(v) for v in S.s],
        "g": [signal_to_json(v) for v in S.g],
        "h": [signal_to_json(v) for v in S.h],
    }


def singular_system_from_json(doc):
    from .oper import SingularSystem
    _check_keys(doc, ("s", "g", "h"), "singular system")
    s = np.asarray(doc["s"], dtype=float)
    g = [signal_from_json(v) for v in doc["g"]]
    h = [signal_from_json(v) for v in doc["h"]]
    if not len(s) == len(g) == len(h):
        raise SchemaError("singular system: s, g and h must have equal length")
    if len({v.shape for v in g + h}) > 1:
        raise DimensionError("singular system: vectors have different lengths")
    return SingularSystem(s=s, g=np.array(g), h=np.array(h))


def dumps(doc):
    return json.dumps(doc, sort_keys=True)


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from None


def load_signal(path):
    return signal_from_json(load_json(path))


def load_grid(path):
    return grid_from_json(load_json(path))


def load_operator(path):
    return operator_from_json(load_json(path))
