"""Pauli webs on Clifford ZX diagrams.

A web labels every edge with a Pauli, stored as bits ``(x, z)`` seen from
the edge's lower-id endpoint.  Across a hadamard edge the label seen from
the other endpoint is ``(z, x)``.

Highlight rules per spider, with half-edge labels ``(x_i, z_i)``:

* Z spider of phase ``a``: every ``x_i`` takes the same value ``X_s`` and
  ``sum(z_i) = a * X_s`` (mod 2).
* X spider: the same with x and z exchanged.

Boundary legs carry no constraint.  Only the phase parity enters, so a web
fixes which Pauli flows where but not its sign; signs come from the
tableau oracle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

import numpy as np

from . import gf2
from .errors import NotFound, WebInvalid
from .lowering import LegMap
from .pauli import BITS, LABELS, PauliString
from .zxgraph import Spider, ZxDiagram

Label = tuple[int, int]


def half_columns(zx: ZxDiagram, col_of: Mapping[int, int], eid: int, node: int) -> tuple[int, int]:
    """(x column, z column) of edge ``eid`` as seen from ``node``."""
    e = zx.edges[eid]
    k = col_of[eid]
    if e.hadamard and node == max(e.u, e.v):
        return 2 * k + 1, 2 * k
    return 2 * k, 2 * k + 1


@dataclass
class Gf2System:
    matrix: np.ndarray
    rhs: np.ndarray
    rows: list[tuple[int, str]]
    edge_ids: list[int]
    zx: ZxDiagram = field(repr=False)

    @property
    def col_of(self) -> dict[int, int]:
        return {e: k for k, e in enumerate(self.edge_ids)}

    @property
    def nvars(self) -> int:
        return self.matrix.shape[1]


@dataclass
class PauliWeb:
    labels: dict[int, Label]
    diagram_hash: Optional[str] = None

    def label(self, eid: int) -> Label:
        return self.labels.get(eid, (0, 0))

    def support(self) -> list[int]:
        return sorted(e for e, lab in self.labels.items() if lab != (0, 0))

    def __xor__(self, other: "PauliWeb") -> "PauliWeb":
        keys = set(self.labels) | set(other.labels)
        out = {}
        for e in keys:
            a, b = self.label(e), other.label(e)
            lab = (a[0] ^ b[0], a[1] ^ b[1])
            if lab != (0, 0):
                out[e] = lab
        return PauliWeb(out, self.diagram_hash)

    def to_json(self, signature: Optional["BoundarySignature"] = None) -> dict:
        return {
            "diagram_hash": self.diagram_hash,
            "labels": {str(e): LABELS[self.labels[e]] for e in sorted(self.labels)},
            "signature": signature.to_json() if signature else {},
        }

    @classmethod
    def from_json(cls, data: Union[str, dict]) -> "PauliWeb":
        if isinstance(data, str):
            data = json.loads(data)
        labels = {}
        for k, v in data["labels"].items():
            lab = BITS[v]
            if lab != (0, 0):
                labels[int(k)] = lab
        return cls(labels, data.get("diagram_hash"))


@dataclass
class BoundarySignature:
    inputs: dict[int, str]
    outputs: dict[int, str]
    measurement_support: list[str]
    prep_anchors: list[int]

    def output_pauli(self, qubits) -> PauliString:
        return PauliString.from_sparse(
            len(qubits), {i: self.outputs[q] for i, q in enumerate(qubits) if self.outputs[q] != "I"}
        )

    def input_pauli(self, qubits) -> PauliString:
        return PauliString.from_sparse(
            len(qubits), {i: self.inputs[q] for i, q in enumerate(qubits) if self.inputs[q] != "I"}
        )

    def to_json(self) -> dict:
        return {
            "inputs": {str(q): p for q, p in sorted(self.inputs.items())},
            "outputs": {str(q): p for q, p in sorted(self.outputs.items())},
            "measurement_support": list(self.measurement_support),
            "prep_anchors": list(self.prep_anchors),
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoundarySignature):
            return NotImplemented
        return self.to_json() == other.to_json()


class Infeasible(Exception):
    """No web satisfies the constraints together with the pins."""


def build_system(zx: ZxDiagram) -> Gf2System:
    zx.require_valid()
    edge_ids = sorted(zx.edges)
    col_of = {e: k for k, e in enumerate(edge_ids)}
    nvars = 2 * len(edge_ids)
    rows: list[np.ndarray] = []
    info: list[tuple[int, str]] = []
    for node in sorted(zx.nodes):
        kind = zx.nodes[node].kind
        if not isinstance(kind, Spider):
            continue
        halves = [half_columns(zx, col_of, e, node) for e in zx.incident(node)]
        if not halves:
            continue
        # "same" is the colour the spider copies, "odd" the one it sums
        same, odd = (0, 1) if kind.color == "Z" else (1, 0)
        first = halves[0][same]
        for h in halves[1:]:
            row = np.zeros(nvars, dtype=np.uint8)
            row[first] ^= 1
            row[h[same]] ^= 1
            rows.append(row)
            info.append((node, "equal"))
        row = np.zeros(nvars, dtype=np.uint8)
        for h in halves:
            row[h[odd]] ^= 1
        if kind.phase % 2:
            row[first] ^= 1
        rows.append(row)
        info.append((node, "parity"))
    matrix = np.array(rows, dtype=np.uint8).reshape(len(rows), nvars)
    return Gf2System(matrix, np.zeros(len(rows), dtype=np.uint8), info, edge_ids, zx)


def _to_bits(p) -> Label:
    if isinstance(p, str):
        return BITS[p]
    return (int(p[0]) & 1, int(p[1]) & 1)


def _web_from_vector(system: Gf2System, v: np.ndarray) -> PauliWeb:
    labels = {}
    for k, e in enumerate(system.edge_ids):
        lab = (int(v[2 * k]), int(v[2 * k + 1]))
        if lab != (0, 0):
            labels[e] = lab
    return PauliWeb(labels)


def solve(system: Gf2System, pins: Mapping[int, object]) -> PauliWeb:
    """Find the canonical web agreeing with ``pins``.

    ``pins`` maps a degree-1 node (boundary leg, measure or prep node) to
    the Pauli on its single half-edge, seen from that node.  Pinned
    variables are substituted before elimination and free variables are set
    to 0.  Raises :class:`Infeasible` when no web exists.
    """
    zx = system.zx
    col_of = system.col_of
    fixed: dict[int, int] = {}
    for node, p in pins.items():
        if node not in zx.nodes or zx.nodes[node].role == "internal":
            raise NotFound(f"node {node} is not a leg of the diagram")
        (eid,) = zx.incident(node)
        xc, zc = half_columns(zx, col_of, eid, node)
        bx, bz = _to_bits(p)
        for col, bit in ((xc, bx), (zc, bz)):
            if fixed.get(col, bit) != bit:
                raise Infeasible(f"conflicting pins on edge {eid}")
            fixed[col] = bit
    n = system.nvars
    free_cols = [c for c in range(n) if c not in fixed]
    a = system.matrix
    rhs = system.rhs.copy()
    for col, bit in fixed.items():
        if bit:
            rhs ^= a[:, col]
    sol = gf2.solve(a[:, free_cols], rhs) if free_cols else (
        np.zeros(0, np.uint8) if not rhs.any() else None
    )
    if sol is None:
        raise Infeasible("no web matches the pins")
    v = np.zeros(n, dtype=np.uint8)
    v[free_cols] = sol
    for col, bit in fixed.items():
        v[col] = bit
    web = _web_from_vector(system, v)
    web.diagram_hash = zx.diagram_hash()
    return web


def web_basis(zx: ZxDiagram, system: Optional[Gf2System] = None) -> list[PauliWeb]:
    """Canonical basis of all webs: the reduced echelon nullspace, pivots ascending."""
    system = system or build_system(zx)
    h = zx.diagram_hash()
    out = []
    for row in gf2.nullspace(system.matrix):
        w = _web_from_vector(system, row)
        w.diagram_hash = h
        out.append(w)
    return out


def check_web(zx: ZxDiagram, web: PauliWeb) -> list[tuple[Optional[int], str]]:
    """Re-evaluate every spider rule directly on the labels.

    Returns violated ``(spider id, "equal" | "parity")`` pairs; edges that do
    not exist are reported as ``(None, "unknown edge <id>")``.
    """
    bad: list[tuple[Optional[int], str]] = [
        (None, f"unknown edge {e}") for e in sorted(web.labels) if e not in zx.edges
    ]
    for node in sorted(zx.nodes):
        kind = zx.nodes[node].kind
        if not isinstance(kind, Spider):
            continue
        seen = []
        for eid in zx.incident(node):
            e = zx.edges[eid]
            x, z = web.label(eid)
            if e.hadamard and node == max(e.u, e.v):
                x, z = z, x
            seen.append((x, z) if kind.color == "Z" else (z, x))
        if not seen:
            continue
        copied = {s[0] for s in seen}
        if len(copied) > 1:
            bad.append((node, "equal"))
            continue
        if (sum(s[1] for s in seen) + kind.phase * seen[0][0]) % 2:
            bad.append((node, "parity"))
    return bad


def leg_label(zx: ZxDiagram, web: PauliWeb, node: int) -> str:
    """Pauli on the single half-edge of a degree-1 node, seen from that node."""
    (eid,) = zx.incident(node)
    e = zx.edges[eid]
    x, z = web.label(eid)
    if e.hadamard and node == max(e.u, e.v):
        x, z = z, x
    return LABELS[(x, z)]


def boundary_signature(zx: ZxDiagram, legmap: LegMap, web: PauliWeb) -> BoundarySignature:
    problems = check_web(zx, web)
    if problems:
        raise WebInvalid(f"web violates {len(problems)} spider rule(s), first: {problems[0]}")
    inputs = {q: leg_label(zx, web, n) for q, n in legmap.inputs.items()}
    outputs = {q: leg_label(zx, web, n) for q, n in legmap.outputs.items()}
    meas = sorted(
        (legmap.outcomes[n] for n in legmap.outcomes if leg_label(zx, web, n) != "I"),
        key=_outcome_key,
    )
    anchors = sorted(n for n in legmap.preps if leg_label(zx, web, n) != "I")
    return BoundarySignature(inputs, outputs, meas, anchors)


def _outcome_key(oid: str):
    digits = oid[1:]
    return (0, int(digits)) if oid.startswith("m") and digits.isdigit() else (1, oid)


def output_pins(legmap: LegMap, qubits, pauli: PauliString) -> dict[int, str]:
    """Pins placing ``pauli`` (indexed like ``qubits``) on the output legs."""
    return {
        legmap.outputs[q]: LABELS[(int(pauli.x[i]), int(pauli.z[i]))] for i, q in enumerate(qubits)
    }


def input_pins(legmap: LegMap, qubits, pauli: PauliString) -> dict[int, str]:
    return {
        legmap.inputs[q]: LABELS[(int(pauli.x[i]), int(pauli.z[i]))] for i, q in enumerate(qubits)
    }
