"""Random small Clifford circuits for property tests and the crosscheck corpus."""

from __future__ import annotations

import random

from .circuit import CliffordCircuit, Gate, QubitDecl

UNITARY_1Q = ("h", "s", "sdg")
UNITARY_2Q = ("cnot", "cz")


def random_circuit(
    n: int,
    depth: int,
    rng: random.Random,
    measure_prob: float = 0.15,
    open_inputs: bool = False,
    preps: bool = True,
) -> CliffordCircuit:
    """A valid random circuit on ``n`` qubits.

    Slice 0 prepares every non-input qubit in a random basis.  Each of the
    ``depth`` following slices packs random disjoint gates; a live qubit is
    measured with probability ``measure_prob`` per slice and then retired.
    Qubits still alive at the end are open outputs.
    """
    slices: list[list[Gate]] = []
    if preps and not open_inputs:
        slices.append([Gate(rng.choice(("prep_x", "prep_z")), (q,)) for q in range(n)])
    live = list(range(n))
    k = 0
    for _ in range(depth):
        order = live[:]
        rng.shuffle(order)
        layer: list[Gate] = []
        while order:
            q = order.pop()
            roll = rng.random()
            if roll < measure_prob:
                layer.append(Gate(rng.choice(("meas_x", "meas_z")), (q,), f"m{k}"))
                k += 1
                live.remove(q)
            elif roll < 0.55 and order:
                other = order.pop()
                layer.append(Gate(rng.choice(UNITARY_2Q), (q, other)))
            elif roll < 0.9:
                layer.append(Gate(rng.choice(UNITARY_1Q), (q,)))
        slices.append(layer)
    qubits = [QubitDecl(q, "data", (0, 2 * q), open_inputs, q in live) for q in range(n)]
    return CliffordCircuit(qubits, slices)


def random_unitary_circuit(n: int, depth: int, rng: random.Random) -> CliffordCircuit:
    return random_circuit(n, depth, rng, measure_prob=0.0, open_inputs=True)
