"""Time-sliced Clifford circuit IR and its structural validator."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import ValidationError

ROLES = ("data", "ancilla_x", "ancilla_z")

GATE_ARITY = {
    "prep_z": 1,
    "prep_x": 1,
    "h": 1,
    "s": 1,
    "sdg": 1,
    "cnot": 2,
    "cz": 2,
    "meas_x": 1,
    "meas_z": 1,
}
PREP_GATES = ("prep_z", "prep_x")
MEAS_GATES = ("meas_x", "meas_z")


@dataclass(frozen=True)
class QubitDecl:
    """A qubit with its lattice role.

    ``coord`` is in doubled lattice units: data qubit (r, c) sits at
    (2r, 2c) and the ancilla of the plaquette centred at (r+1/2, c+1/2)
    sits at (2r+1, 2c+1), so every coordinate is an integer.
    """

    id: int
    role: str = "data"
    coord: tuple[int, int] = (0, 0)
    open_input: bool = False
    open_output: bool = False


@dataclass(frozen=True)
class Gate:
    name: str
    qubits: tuple[int, ...]
    outcome: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if self.name == "cz" and len(self.qubits) == 2 and self.qubits[0] > self.qubits[1]:
            object.__setattr__(self, "qubits", (self.qubits[1], self.qubits[0]))

    def __str__(self) -> str:
        args = ",".join(str(q) for q in self.qubits)
        tail = f"->{self.outcome}" if self.outcome else ""
        return f"{self.name}({args}){tail}"


def prep_z(q):
    return Gate("prep_z", (q,))


def prep_x(q):
    return Gate("prep_x", (q,))


def h(q):
    return Gate("h", (q,))


def s(q):
    return Gate("s", (q,))


def sdg(q):
    return Gate("sdg", (q,))


def cnot(c, t):
    return Gate("cnot", (c, t))


def cz(a, b):
    return Gate("cz", (a, b))


def meas_x(q, outcome):
    return Gate("meas_x", (q,), outcome)


def meas_z(q, outcome):
    return Gate("meas_z", (q,), outcome)


@dataclass
class CliffordCircuit:
    qubits: list[QubitDecl]
    slices: list[list[Gate]] = field(default_factory=list)
    distance: Optional[int] = None

    def index(self) -> dict[int, int]:
        """Map qubit id to its position in ``qubits``."""
        return {q.id: i for i, q in enumerate(self.qubits)}

    def qubit(self, qid: int) -> QubitDecl:
        for q in self.qubits:
            if q.id == qid:
                return q
        raise KeyError(qid)

    def gates(self):
        """Yield ``(slice index, gate)`` in execution order."""
        for t, layer in enumerate(self.slices):
            for g in layer:
                yield t, g

    def outcomes(self) -> list[str]:
        return [g.outcome for _, g in self.gates() if g.name in MEAS_GATES]

    def measured_qubits(self) -> set[int]:
        return {g.qubits[0] for _, g in self.gates() if g.name in MEAS_GATES}

    def output_qubits(self) -> list[int]:
        return [q.id for q in self.qubits if q.open_output]

    def gate_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for _, g in self.gates():
            counts[g.name] = counts.get(g.name, 0) + 1
        return counts

    def __eq__(self, other) -> bool:
        if not isinstance(other, CliffordCircuit):
            return NotImplemented
        return (
            self.qubits == other.qubits
            and self.distance == other.distance
            and [list(x) for x in self.slices] == [list(x) for x in other.slices]
        )


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    qubit: Optional[int] = None
    slice: Optional[int] = None

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


def validate_circuit(c: CliffordCircuit) -> list[Violation]:
    """Report every structural problem in ``c``; an empty list means valid.

    Besides slice disjointness, prep-before-use and use-after-measure, every
    qubit must be terminated: measured or declared ``open_output``.
    """
    out: list[Violation] = []
    ids = [q.id for q in c.qubits]
    known = set(ids)
    if len(known) != len(ids):
        out.append(Violation("DuplicateQubit", "qubit ids are not unique"))
    for q in c.qubits:
        if q.role not in ROLES:
            out.append(Violation("BadRole", f"qubit {q.id} has role {q.role!r}", q.id))
    live = {q.id for q in c.qubits if q.open_input}
    measured: set[int] = set()
    prepped: set[int] = set()
    seen_outcomes: set[str] = set()

    for t, layer in enumerate(c.slices):
        touched: set[int] = set()
        for g in layer:
            if g.name not in GATE_ARITY:
                out.append(Violation("UnknownGate", f"gate {g.name!r}", None, t))
                continue
            if len(g.qubits) != GATE_ARITY[g.name]:
                out.append(Violation("BadArity", f"{g} has wrong qubit count", None, t))
                continue
            if len(set(g.qubits)) != len(g.qubits):
                out.append(Violation("RepeatedOperand", f"{g} repeats a qubit", g.qubits[0], t))
            for q in g.qubits:
                if q not in known:
                    out.append(Violation("UnknownQubit", f"{g} references qubit {q}", q, t))
                    continue
                if q in touched:
                    out.append(
                        Violation("OverlappingSlice", f"qubit {q} used twice in slice {t}", q, t)
                    )
                touched.add(q)
                if q in measured:
                    out.append(Violation("UseAfterMeasure", f"{g} after measurement", q, t))
                    continue
                if g.name in PREP_GATES:
                    if q in live or q in prepped:
                        out.append(Violation("DoublePrep", f"{g} on a live qubit", q, t))
                    prepped.add(q)
                    live.add(q)
                elif q not in live:
                    out.append(Violation("UseBeforePrep", f"{g} before preparation", q, t))
            if g.name in MEAS_GATES:
                if not g.outcome:
                    out.append(Violation("MissingOutcome", f"{g} has no outcome id", None, t))
                elif g.outcome in seen_outcomes:
                    out.append(Violation("DuplicateOutcome", f"outcome {g.outcome} reused", None, t))
                else:
                    seen_outcomes.add(g.outcome)
                measured.update(q for q in g.qubits if q in known)
            elif g.outcome is not None:
                out.append(Violation("UnexpectedOutcome", f"{g} carries an outcome id", None, t))

    for q in c.qubits:
        if q.open_output and q.id in measured:
            out.append(Violation("UseAfterMeasure", f"qubit {q.id} measured but open_output", q.id))
        elif not q.open_output and q.id not in measured:
            out.append(Violation("UnterminatedQubit", f"qubit {q.id} never measured", q.id))
        if q.open_output and q.id not in live:
            out.append(Violation("UseBeforePrep", f"qubit {q.id} output but never prepared", q.id))
    return out


def require_valid(c: CliffordCircuit) -> None:
    problems = validate_circuit(c)
    if problems:
        raise ValidationError(
            "invalid circuit: " + "; ".join(str(v) for v in problems[:5]), problems
        )
