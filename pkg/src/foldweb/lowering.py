"""Gadget-per-gate lowering of a CliffordCircuit to a ZxDiagram.

No spider fusion happens: every gate keeps its own spiders so the diagram
lines up slice by slice with the circuit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .circuit import CliffordCircuit, require_valid
from .zxgraph import Boundary, Spider, ZxDiagram

# gate -> spider colour of its gadget on each wire
_SINGLE = {"prep_x": "Z", "prep_z": "X", "meas_x": "Z", "meas_z": "X"}
_PHASE = {"s": 1, "sdg": 3}
GADGET_SPIDERS = {
    "prep_x": 1, "prep_z": 1, "meas_x": 1, "meas_z": 1,
    "s": 1, "sdg": 1, "h": 0, "cnot": 2, "cz": 2,
}


@dataclass
class LegMap:
    """Bookkeeping linking a lowered diagram back to its circuit.

    ``wire[(q, t)]`` is the edge carrying qubit ``q`` across the boundary
    just before slice ``t`` (``t == len(slices)`` is the final boundary).
    When a Hadamard sits on that stretch of wire the edge is a hadamard
    edge and the Pauli seen there depends on the side.
    """

    inputs: dict[int, int] = field(default_factory=dict)
    outputs: dict[int, int] = field(default_factory=dict)
    wire: dict[tuple[int, int], int] = field(default_factory=dict)
    outcomes: dict[int, str] = field(default_factory=dict)
    preps: dict[int, str] = field(default_factory=dict)
    prep_qubit: dict[int, int] = field(default_factory=dict)
    gate_nodes: dict[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)

    def outcome_node(self, outcome: str) -> int:
        for nid, oid in self.outcomes.items():
            if oid == outcome:
                return nid
        raise KeyError(outcome)


def lower_to_zx(c: CliffordCircuit) -> tuple[ZxDiagram, LegMap]:
    require_valid(c)
    zx = ZxDiagram()
    legs = LegMap()
    n_slices = len(c.slices)
    # per qubit: (frontier node, slice of that node, pending hadamard)
    front: dict[int, list] = {}
    for q in c.qubits:
        if q.open_input:
            nid = zx.add_node(Boundary("in"), "boundary_leg", (q.id, -1))
            legs.inputs[q.id] = nid
            front[q.id] = [nid, -1, False]

    def attach(q: int, nid: int, t: int) -> None:
        prev, t0, had = front[q]
        eid = zx.add_edge(prev, nid, had)
        for tb in range(t0 + 1, t + 1):
            legs.wire[(q, tb)] = eid
        front[q] = [nid, t, False]

    for t, layer in enumerate(c.slices):
        for k, g in enumerate(layer):
            name = g.name
            if name in ("prep_x", "prep_z"):
                q = g.qubits[0]
                nid = zx.add_node(Spider(_SINGLE[name]), "prep", (q, t))
                legs.preps[nid] = "X" if name == "prep_x" else "Z"
                legs.prep_qubit[nid] = q
                front[q] = [nid, t, False]
                legs.gate_nodes[(t, k)] = (nid,)
            elif name in ("meas_x", "meas_z"):
                q = g.qubits[0]
                nid = zx.add_node(Spider(_SINGLE[name]), "measure", (q, t), outcome=g.outcome)
                legs.outcomes[nid] = g.outcome
                attach(q, nid, t)
                del front[q]
                legs.gate_nodes[(t, k)] = (nid,)
            elif name == "h":
                front[g.qubits[0]][2] ^= True
                legs.gate_nodes[(t, k)] = ()
            elif name in _PHASE:
                q = g.qubits[0]
                nid = zx.add_node(Spider("Z", _PHASE[name]), "internal", (q, t))
                attach(q, nid, t)
                legs.gate_nodes[(t, k)] = (nid,)
            elif name == "cnot":
                ctl, tgt = g.qubits
                a = zx.add_node(Spider("Z"), "internal", (ctl, t))
                b = zx.add_node(Spider("X"), "internal", (tgt, t))
                attach(ctl, a, t)
                attach(tgt, b, t)
                zx.add_edge(a, b, False)
                legs.gate_nodes[(t, k)] = (a, b)
            elif name == "cz":
                qa, qb = g.qubits
                a = zx.add_node(Spider("Z"), "internal", (qa, t))
                b = zx.add_node(Spider("Z"), "internal", (qb, t))
                attach(qa, a, t)
                attach(qb, b, t)
                zx.add_edge(a, b, True)
                legs.gate_nodes[(t, k)] = (a, b)
            else:  # pragma: no cover - require_valid rejects unknown gates
                raise ValueError(name)

    for q in c.qubits:
        if q.open_output:
            nid = zx.add_node(Boundary("out"), "boundary_leg", (q.id, n_slices))
            legs.outputs[q.id] = nid
            attach(q.id, nid, n_slices)
    return zx, legs
