"""JSON settings/state documents and deterministic number formatting.

Settings::

    {"qubits": 2, "a": [x, y, z], "a_prime": [...], "b": [...], "b_prime": [...]}

with ``"c"`` and ``"c_prime"`` present exactly when ``qubits == 3``. States::

    {"qubits": 2, "amplitudes": [[re, im], ...]}

with amplitudes ordered so qubit 1 is the most significant bit.
"""
import json
import math

import numpy as np

from .bell_ops import settings_class

DOCUMENT_TOL = 1e-9
SITE_KEYS = ("a", "a_prime", "b", "b_prime", "c", "c_prime")


class DocumentError(ValueError):
    pass


def _qubits(doc):
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    n = doc.get("qubits")
    if n not in (2, 3) or isinstance(n, bool):
        raise DocumentError(f'"qubits" must be 2 or 3, got {n!r}')
    return n


def _real(x, what):
    if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
        raise DocumentError(f"{what} must be a finite number, got {x!r}")
    return float(x)


def parse_settings(doc):
    n = _qubits(doc)
    keys = SITE_KEYS[: 2 * n]
    extra = set(SITE_KEYS[2 * n:]) & set(doc)
    if extra:
        raise DocumentError(f"unexpected keys for {n} qubits: {sorted(extra)}")
    vectors = []
    for key in keys:
        if key not in doc:
            raise DocumentError(f"missing settings vector {key!r}")
        raw = doc[key]
        if not isinstance(raw, list) or len(raw) != 3:
            raise DocumentError(f"{key!r} must be a list of three numbers")
        v = np.array([_real(x, key) for x in raw])
        norm = np.linalg.norm(v)
        if abs(norm - 1.0) > DOCUMENT_TOL:
            raise DocumentError(f"{key!r} is not a unit vector (norm {norm!r})")
        vectors.append(v / norm)
    return settings_class(n).from_vectors(*vectors)


def parse_state(doc):
    n = _qubits(doc)
    amps = doc.get("amplitudes")
    if not isinstance(amps, list) or len(amps) != 2 ** n:
        raise DocumentError(f'"amplitudes" must hold {2 ** n} [re, im] pairs')
    psi = np.empty(2 ** n, dtype=complex)
    for k, pair in enumerate(amps):
        if not isinstance(pair, list) or len(pair) != 2:
            raise DocumentError(f"amplitude {k} must be a [re, im] pair")
        psi[k] = complex(_real(pair[0], "amplitude"), _real(pair[1], "amplitude"))
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > DOCUMENT_TOL:
        raise DocumentError(f"state is not normalized (norm {norm!r})")
    return psi / norm


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc


def settings_document(s):
    doc = {"qubits": s.n_qubits}
    doc.update(zip(SITE_KEYS, (list(map(float, v)) for v in s.vectors())))
    return doc


def complex_pairs(values):
    return [[float(z.real) + 0.0, float(z.imag) + 0.0] for z in np.asarray(values).reshape(-1)]


def state_document(psi):
    psi = np.asarray(psi, dtype=complex)
    return {"qubits": int(round(math.log2(len(psi)))), "amplitudes": complex_pairs(psi)}


def dumps(obj, indent=2, _level=0):
    """JSON text with every float written to 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None or isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            raise ValueError(f"cannot serialize {obj!r}")
        return format(float(obj) + 0.0, ".17g")  # + 0.0 drops negative zero
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = (f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items())
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(x, (dict, list, tuple)) for x in obj):
            return "[" + ", ".join(dumps(x, indent, _level + 1) for x in obj) + "]"
        return "[\n" + ",\n".join(pad + dumps(x, indent, _level + 1) for x in obj) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")
