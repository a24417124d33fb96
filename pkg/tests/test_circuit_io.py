import json
import random

import pytest

from foldweb.circuit import validate_circuit
from foldweb.circuit_io import circuit_hash, parse, serialize
from foldweb.errors import SchemaError
from foldweb.lattice import cclp_y_init_circuit, encoder_circuit
from foldweb.randomcirc import random_circuit

SMALL = {
    "qubits": [{"id": 0, "role": "data", "row": 0, "col": 0, "open_input": False, "open_output": False}],
    "slices": [[{"gate": "prep_z", "args": [0]}], [{"gate": "meas_z", "args": [0], "outcome": "m0"}]],
}


def test_round_trip_generated():
    for c in (cclp_y_init_circuit(3), encoder_circuit(3)):
        text = serialize(c)
        assert parse(text) == c
        assert serialize(parse(text)) == text


def test_round_trip_random():
    rng = random.Random(9)
    for _ in range(50):
        c = random_circuit(rng.randint(1, 6), rng.randint(0, 6), rng)
        assert parse(serialize(c)) == c


def test_field_order_is_canonical():
    text = serialize(cclp_y_init_circuit(3))
    first_qubit = json.loads(text)["qubits"][0]
    assert list(first_qubit) == ["id", "role", "row", "col", "open_input", "open_output"]
    assert text.startswith('{\n "distance": 3,')


def test_hash_is_stable():
    assert circuit_hash(cclp_y_init_circuit(3)) == circuit_hash(cclp_y_init_circuit(3))
    assert circuit_hash(cclp_y_init_circuit(3)) != circuit_hash(cclp_y_init_circuit(5))


def _bad(mutate):
    data = json.loads(json.dumps(SMALL))
    mutate(data)
    return json.dumps(data)


@pytest.mark.parametrize(
    "mutate, where",
    [
        (lambda d: d["slices"][1][0].update(gate="T"), "slices[1][0].gate"),
        (lambda d: d["slices"][1][0].update(outcome="x7"), "slices[1][0].outcome"),
        (lambda d: d["slices"][0][0].update(args=[0, 1]), "slices[0][0].args"),
        (lambda d: d["qubits"][0].update(role="spare"), "qubits[0].role"),
        (lambda d: d["qubits"][0].pop("row"), "qubits[0].row"),
        (lambda d: d["qubits"][0].update(colour=1), "qubits[0]"),
        (lambda d: d.update(extra=1), "top level"),
        (lambda d: d["slices"][0][0].update(outcome="m1"), "slices[0][0].outcome"),
    ],
)
def test_schema_errors_name_the_field(mutate, where):
    with pytest.raises(SchemaError, match=__import__("re").escape(where)):
        parse(_bad(mutate))


def test_json_syntax_error_has_position():
    with pytest.raises(SchemaError, match=r"line 1, column"):
        parse('{"qubits": [}')


def test_duplicate_in_slice_parses_but_fails_validation():
    text = _bad(lambda d: d["slices"][0].append({"gate": "h", "args": [0]}))
    c = parse(text)
    assert "OverlappingSlice" in [v.kind for v in validate_circuit(c)]
