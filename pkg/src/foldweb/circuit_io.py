"""Circuit JSON reading and writing.

Layout::

    {"distance": 3,
     "qubits": [{"id": 0, "role": "data", "row": 0, "col": 0,
                 "open_input": false, "open_output": true}, ...],
     "slices": [[{"gate": "prep_x", "args": [0]}, ...], ...]}

``distance`` is omitted when unknown; ``outcome`` only appears on
measurements.  Parsing checks the schema, not circuit validity.
"""

from __future__ import annotations

import hashlib
import json
import re

from .circuit import GATE_ARITY, MEAS_GATES, ROLES, CliffordCircuit, Gate, QubitDecl
from .errors import SchemaError

_OUTCOME_RE = re.compile(r"^m\d+$")
_QUBIT_FIELDS = ("id", "role", "row", "col", "open_input", "open_output")


def circuit_to_dict(c: CliffordCircuit) -> dict:
    out: dict = {}
    if c.distance is not None:
        out["distance"] = c.distance
    out["qubits"] = [
        {
            "id": q.id,
            "role": q.role,
            "row": q.coord[0],
            "col": q.coord[1],
            "open_input": q.open_input,
            "open_output": q.open_output,
        }
        for q in c.qubits
    ]
    slices = []
    for layer in c.slices:
        gates = []
        for g in layer:
            entry = {"gate": g.name, "args": list(g.qubits)}
            if g.outcome is not None:
                entry["outcome"] = g.outcome
            gates.append(entry)
        slices.append(gates)
    out["slices"] = slices
    return out


def serialize(c: CliffordCircuit) -> str:
    """Canonical text: one qubit or gate per line, fields in schema order."""
    d = circuit_to_dict(c)
    lines = ["{"]
    if "distance" in d:
        lines.append(f' "distance": {d["distance"]},')
    lines.append(' "qubits": [')
    qs = [" " * 2 + json.dumps(q, ensure_ascii=False) for q in d["qubits"]]
    lines.append(",\n".join(qs))
    lines.append(" ],")
    lines.append(' "slices": [')
    blocks = []
    for layer in d["slices"]:
        if not layer:
            blocks.append("  []")
            continue
        body = ",\n".join("   " + json.dumps(g, ensure_ascii=False) for g in layer)
        blocks.append("  [\n" + body + "\n  ]")
    lines.append(",\n".join(blocks))
    lines.append(" ]")
    lines.append("}")
    return "\n".join(x for x in lines if x != "") + "\n"


def circuit_hash(c: CliffordCircuit) -> str:
    return hashlib.sha256(serialize(c).encode("utf-8")).hexdigest()[:16]


def _need(obj, key, kind, where):
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object")
    if key not in obj:
        raise SchemaError(f"{where}.{key}: missing field")
    val = obj[key]
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise SchemaError(f"{where}.{key}: expected an integer, got {val!r}")
    if kind is not int and not isinstance(val, kind):
        raise SchemaError(f"{where}.{key}: expected {kind.__name__}, got {val!r}")
    return val


def parse(text: str) -> CliffordCircuit:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise SchemaError("top level: expected an object")
    unknown = set(data) - {"distance", "qubits", "slices"}
    if unknown:
        raise SchemaError(f"top level: unknown field(s) {sorted(unknown)}")
    distance = data.get("distance")
    if distance is not None and (isinstance(distance, bool) or not isinstance(distance, int)):
        raise SchemaError(f"distance: expected an integer, got {distance!r}")

    qubits = []
    for k, q in enumerate(_need(data, "qubits", list, "top level")):
        where = f"qubits[{k}]"
        if isinstance(q, dict):
            extra = set(q) - set(_QUBIT_FIELDS)
            if extra:
                raise SchemaError(f"{where}: unknown field(s) {sorted(extra)}")
        role = _need(q, "role", str, where)
        if role not in ROLES:
            raise SchemaError(f"{where}.role: {role!r} is not one of {list(ROLES)}")
        qubits.append(
            QubitDecl(
                _need(q, "id", int, where),
                role,
                (_need(q, "row", int, where), _need(q, "col", int, where)),
                _need(q, "open_input", bool, where),
                _need(q, "open_output", bool, where),
            )
        )

    slices = []
    for t, layer in enumerate(_need(data, "slices", list, "top level")):
        if not isinstance(layer, list):
            raise SchemaError(f"slices[{t}]: expected a list of gates")
        gates = []
        for k, g in enumerate(layer):
            where = f"slices[{t}][{k}]"
            name = _need(g, "gate", str, where)
            if name not in GATE_ARITY:
                raise SchemaError(f"{where}.gate: unknown gate {name!r} (Clifford set only)")
            args = _need(g, "args", list, where)
            if len(args) != GATE_ARITY[name] or any(
                isinstance(a, bool) or not isinstance(a, int) for a in args
            ):
                raise SchemaError(f"{where}.args: {name} takes {GATE_ARITY[name]} integer qubit id(s)")
            outcome = g.get("outcome")
            if name in MEAS_GATES:
                if not isinstance(outcome, str) or not _OUTCOME_RE.match(outcome):
                    raise SchemaError(f"{where}.outcome: expected an id like 'm0', got {outcome!r}")
            elif outcome is not None:
                raise SchemaError(f"{where}.outcome: only measurements carry outcomes")
            extra = set(g) - {"gate", "args", "outcome"}
            if extra:
                raise SchemaError(f"{where}: unknown field(s) {sorted(extra)}")
            gates.append(Gate(name, tuple(args), outcome))
        slices.append(gates)
    return CliffordCircuit(qubits, slices, distance)
