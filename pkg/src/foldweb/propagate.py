"""Heisenberg propagation of a Pauli through a Clifford circuit."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import CliffordCircuit, MEAS_GATES, require_valid
from .errors import AnticommutesWithMeasurement, UnsupportedPlacement
from .pauli import CONJUGATORS_1Q, CONJUGATORS_2Q, LABELS, PauliString

_PREP_PAULI = {"prep_x": (1, 0), "prep_z": (0, 1)}
_MEAS_PAULI = {"meas_x": (1, 0), "meas_z": (0, 1)}


@dataclass
class PropagationResult:
    """Where a Pauli ends up.

    ``final`` is unsigned and indexed like ``outputs`` (the open-output
    qubit ids).  The output state satisfies
    ``sign * prod((-1)**m for m in outcome_support) * final = +1``.
    """

    final: PauliString
    outputs: list[int]
    outcome_support: list[str]
    sign: int

    def to_json(self) -> dict:
        return {
            "final": self.final.label(with_sign=False),
            "outputs": list(self.outputs),
            "outcome_support": list(self.outcome_support),
            "sign": self.sign,
        }


def propagate_pauli(c: CliffordCircuit, p: PauliString) -> PropagationResult:
    """Push ``p`` forward through ``c``.

    ``p`` is indexed like ``c.qubits``.  On an open-input qubit it enters at
    the start; on any other qubit it must be the Pauli its preparation
    stabilizes (X after prep_x, Z after prep_z) and enters right after the
    preparation.  At a measurement the Pauli on that qubit must be I or the
    measured basis; the latter is absorbed and its outcome id recorded.
    """
    require_valid(c)
    idx = c.index()
    if p.n != len(c.qubits):
        raise UnsupportedPlacement(f"Pauli on {p.n} qubits, circuit has {len(c.qubits)}")
    if p.phase % 2:
        raise UnsupportedPlacement("placement must be Hermitian")

    prep_gate = {}
    for _, g in c.gates():
        if g.name in _PREP_PAULI:
            prep_gate[g.qubits[0]] = g.name
    pending: dict[int, tuple[int, int]] = {}
    x = np.zeros((1, p.n), dtype=np.uint8)
    z = np.zeros((1, p.n), dtype=np.uint8)
    r = np.array([p.phase], dtype=np.int64)
    for i, q in enumerate(c.qubits):
        lab = (int(p.x[i]), int(p.z[i]))
        if lab == (0, 0):
            continue
        if q.open_input:
            x[0, i], z[0, i] = lab
        elif prep_gate.get(q.id) and _PREP_PAULI[prep_gate[q.id]] == lab:
            pending[q.id] = lab
        else:
            raise UnsupportedPlacement(
                f"{LABELS[lab]} on qubit {q.id} is not a stabilizer of its preparation"
            )

    support: list[str] = []
    for _, g in c.gates():
        qs = [idx[q] for q in g.qubits]
        if g.name in _PREP_PAULI:
            lab = pending.get(g.qubits[0])
            if lab:
                x[0, qs[0]], z[0, qs[0]] = lab
        elif g.name in MEAS_GATES:
            i = qs[0]
            lab = (int(x[0, i]), int(z[0, i]))
            if lab == (0, 0):
                continue
            if lab != _MEAS_PAULI[g.name]:
                raise AnticommutesWithMeasurement(
                    f"{LABELS[lab]} reaches {g.name} on qubit {g.qubits[0]} ({g.outcome})"
                )
            x[0, i] = z[0, i] = 0
            support.append(g.outcome)
        elif g.name in CONJUGATORS_1Q:
            CONJUGATORS_1Q[g.name](x, z, r, *qs)
        else:
            CONJUGATORS_2Q[g.name](x, z, r, *qs)

    outputs = [q.id for q in c.qubits if q.open_output]
    cols = [idx[q] for q in outputs]
    final = PauliString(x[0, cols], z[0, cols], 0)
    phase = int(r[0]) % 4
    if phase % 2:  # pragma: no cover - Hermitian in, Hermitian out
        raise AssertionError("propagation produced a non-Hermitian phase")
    return PropagationResult(final, outputs, support, 1 if phase == 0 else -1)


def prep_stabilizers(c: CliffordCircuit) -> list[PauliString]:
    """One single-qubit placement per prepared qubit (X for prep_x, Z for prep_z)."""
    idx = c.index()
    out = []
    for _, g in c.gates():
        if g.name in _PREP_PAULI:
            ch = "X" if g.name == "prep_x" else "Z"
            out.append(PauliString.from_sparse(len(c.qubits), {idx[g.qubits[0]]: ch}))
    return out
