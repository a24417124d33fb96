"""Stabilizer-tableau simulation: the independent ground truth for webs.

The simulator keeps a full Aaronson-Gottesman tableau (destabilizers and
stabilizers) over every declared qubit.  Gate updates go through the
conjugation table in :mod:`foldweb.pauli`, the same one the propagation
engine uses.  After the run, measured qubits are retired: the returned
:class:`StabTableau` only covers qubits that are still alive.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from . import gf2
from .circuit import CliffordCircuit, MEAS_GATES, require_valid
from .errors import ForcedContradiction, ShapeError, UnsupportedPlacement
from .pauli import CONJUGATORS_1Q, CONJUGATORS_2Q, PauliString, product_phase


@dataclass
class StabTableau:
    """Stabilizer generators over ``qubits`` (circuit qubit ids, in order)."""

    qubits: list[int]
    x: np.ndarray
    z: np.ndarray
    phase: np.ndarray

    @property
    def n(self) -> int:
        return len(self.qubits)

    def generators(self) -> list[PauliString]:
        return [
            PauliString(self.x[i], self.z[i], int(self.phase[i])) for i in range(len(self.phase))
        ]

    def check_invariants(self) -> None:
        """Assert the generators commute pairwise and are independent."""
        sym = (self.x.astype(np.int64) @ self.z.T.astype(np.int64)) + (
            self.z.astype(np.int64) @ self.x.T.astype(np.int64)
        )
        if np.any(sym % 2):
            raise AssertionError("stabilizer generators do not commute")
        k = len(self.phase)
        if k and gf2.rank(np.hstack([self.x, self.z])) != k:
            raise AssertionError("stabilizer generators are dependent")
        if np.any(self.phase % 2):
            raise AssertionError("non-Hermitian stabilizer generator")

    def __str__(self) -> str:
        return "\n".join(str(g) for g in self.generators())


@dataclass
class OutcomeRecord:
    bits: dict[str, int] = field(default_factory=dict)
    deterministic: dict[str, bool] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "bits": dict(self.bits),
            "deterministic": {k: bool(v) for k, v in self.deterministic.items()},
        }


@dataclass(frozen=True)
class Membership:
    """Result of :func:`contains_pauli`.

    ``kind`` is ``"in_group"`` (with ``sign`` such that ``sign * p`` is in the
    group), ``"anticommutes"`` or ``"independent"``.
    """

    kind: str
    sign: Optional[int] = None

    @property
    def in_group(self) -> bool:
        return self.kind == "in_group"


class TableauSimulator:
    """CHP-style simulator over ``n`` qubits, all starting in |0>."""

    def __init__(self, n: int, rng: Optional[random.Random] = None):
        self.n = n
        self.x = np.zeros((2 * n, n), dtype=np.uint8)
        self.z = np.zeros((2 * n, n), dtype=np.uint8)
        self.r = np.zeros(2 * n, dtype=np.int64)
        for i in range(n):
            self.x[i, i] = 1
            self.z[n + i, i] = 1
        self.rng = rng or random.Random(0)

    def apply(self, name: str, *qubits: int) -> None:
        if name in CONJUGATORS_1Q:
            CONJUGATORS_1Q[name](self.x, self.z, self.r, *qubits)
        else:
            CONJUGATORS_2Q[name](self.x, self.z, self.r, *qubits)

    def _rowmul(self, targets: np.ndarray, src: int) -> None:
        # row[t] <- row[src] * row[t] for every t in targets
        if targets.size == 0:
            return
        g = product_phase(self.x[src], self.z[src], self.x[targets], self.z[targets]).sum(axis=1)
        self.r[targets] = (self.r[targets] + self.r[src] + g) % 4
        self.x[targets] ^= self.x[src]
        self.z[targets] ^= self.z[src]

    def measure_z(self, q: int, forced: Optional[int] = None, strict: bool = False):
        """Measure qubit ``q`` in Z; returns ``(bit, deterministic)``."""
        n = self.n
        stab_hits = np.flatnonzero(self.x[n:, q])
        if stab_hits.size:
            p = n + int(stab_hits[0])
            others = np.flatnonzero(self.x[:, q])
            others = others[others != p]
            self._rowmul(others, p)
            d = p - n
            self.x[d], self.z[d], self.r[d] = self.x[p], self.z[p], self.r[p]
            bit = self.rng.randrange(2) if forced is None else int(forced) & 1
            self.x[p] = 0
            self.z[p] = 0
            self.z[p, q] = 1
            self.r[p] = 2 * bit
            return bit, False
        acc_x = np.zeros(n, dtype=np.uint8)
        acc_z = np.zeros(n, dtype=np.uint8)
        acc_r = 0
        for i in np.flatnonzero(self.x[:n, q]):
            row = n + int(i)
            acc_r += self.r[row] + int(product_phase(self.x[row], self.z[row], acc_x, acc_z).sum())
            acc_x ^= self.x[row]
            acc_z ^= self.z[row]
        bit = int(acc_r % 4) // 2
        if strict and forced is not None and (int(forced) & 1) != bit:
            raise ForcedContradiction(f"qubit {q}: deterministic outcome {bit}, forced {forced}")
        return bit, True

    def measure(self, basis: str, q: int, forced=None, strict=False):
        if basis == "x":
            self.apply("h", q)
            out = self.measure_z(q, forced, strict)
            self.apply("h", q)
            return out
        return self.measure_z(q, forced, strict)

    def stabilizers(self) -> StabTableau:
        n = self.n
        return StabTableau(
            list(range(n)), self.x[n:].copy(), self.z[n:].copy(), self.r[n:].copy()
        )


def _retire(x, z, r, keep: list[int], drop: list[int]):
    """Eliminate ``drop`` columns from a pure product-state generator set."""
    x = x.copy()
    z = z.copy()
    r = r.copy()
    rows = x.shape[0]
    used = np.zeros(rows, dtype=bool)
    for q in drop:
        for bits in (x, z):
            cand = np.flatnonzero(bits[:, q] & ~used)
            if cand.size == 0:
                continue
            p = int(cand[0])
            used[p] = True
            tgt = np.flatnonzero(bits[:, q])
            tgt = tgt[tgt != p]
            if tgt.size:
                g = product_phase(x[p], z[p], x[tgt], z[tgt]).sum(axis=1)
                r[tgt] = (r[tgt] + r[p] + g) % 4
                x[tgt] ^= x[p]
                z[tgt] ^= z[p]
    rest = np.flatnonzero(~used)
    if drop and (x[np.ix_(rest, drop)].any() or z[np.ix_(rest, drop)].any()):
        raise AssertionError("measured qubits are still entangled")
    return x[np.ix_(rest, keep)], z[np.ix_(rest, keep)], r[rest]


def run(
    c: CliffordCircuit,
    forcing: Optional[Mapping[str, int]] = None,
    seed: Optional[int] = None,
    strict: bool = False,
    simulator: Optional[list] = None,
):
    """Simulate ``c`` and return ``(final tableau, outcome record)``.

    Random outcomes take the forced bit when ``forcing`` names them and are
    drawn from ``seed`` otherwise.  Deterministic outcomes always record the
    computed bit; with ``strict=True`` a conflicting forced bit raises
    :class:`ForcedContradiction` instead of being ignored.

    The returned tableau covers the unmeasured qubits only, in declaration
    order.  Pass a list as ``simulator`` to receive the raw simulator.
    """
    require_valid(c)
    if any(q.open_input for q in c.qubits):
        raise UnsupportedPlacement("tableau runs need closed inputs; see choi_closure()")
    forcing = dict(forcing or {})
    idx = c.index()
    sim = TableauSimulator(len(c.qubits), random.Random(seed))
    rec = OutcomeRecord()
    for _, g in c.gates():
        qs = [idx[q] for q in g.qubits]
        if g.name == "prep_z":
            continue  # fresh qubits already sit in |0>
        if g.name == "prep_x":
            sim.apply("h", qs[0])
        elif g.name in MEAS_GATES:
            bit, det = sim.measure(g.name[-1], qs[0], forcing.get(g.outcome), strict)
            rec.bits[g.outcome] = bit
            rec.deterministic[g.outcome] = det
        else:
            sim.apply(g.name, *qs)
    if simulator is not None:
        simulator.append(sim)
    measured = c.measured_qubits()
    keep = [i for i, q in enumerate(c.qubits) if q.id not in measured]
    drop = [i for i, q in enumerate(c.qubits) if q.id in measured]
    n = sim.n
    x, z, r = _retire(sim.x[n:], sim.z[n:], sim.r[n:], keep, drop)
    return StabTableau([c.qubits[i].id for i in keep], x, z, r), rec


def contains_pauli(t: StabTableau, p: PauliString) -> Membership:
    """Decide whether ``p`` (over ``t.qubits``) lies in the stabilizer group."""
    if p.n != t.n:
        raise ShapeError(f"Pauli on {p.n} qubits, tableau on {t.n}")
    gens = t.generators()
    if any(not g.commutes(p) for g in gens):
        return Membership("anticommutes")
    if not gens:
        return Membership("in_group", 1) if p.weight() == 0 else Membership("independent")
    a = np.hstack([t.x, t.z]).T
    coeffs = gf2.solve(a, np.concatenate([p.x, p.z]))
    if coeffs is None:
        return Membership("independent")
    acc = PauliString.identity(t.n)
    for i in np.flatnonzero(coeffs):
        acc = acc * gens[int(i)]
    diff = (acc.phase - p.phase) % 4
    if diff % 2:
        raise ValueError(f"{p} has a non-Hermitian phase relative to the group")
    return Membership("in_group", 1 if diff == 0 else -1)


def choi_closure(c: CliffordCircuit) -> tuple[CliffordCircuit, dict[int, int]]:
    """Close every open input with a Bell pair to a fresh reference qubit.

    Returns the closed circuit and a map from input qubit id to reference
    qubit id.  A correlator ``P_in -> P_out`` of ``c`` becomes the
    stabilizer ``P_in^T (refs) ⊗ P_out`` of the closed circuit; transposition
    only flips the sign of Y, which callers handle by comparing unsigned.
    """
    from .circuit import QubitDecl, cnot, prep_x, prep_z

    next_id = max((q.id for q in c.qubits), default=-1) + 1
    refs: dict[int, int] = {}
    qubits = []
    extra = []
    for q in c.qubits:
        if q.open_input:
            refs[q.id] = next_id
            extra.append(QubitDecl(next_id, "data", q.coord, False, True))
            next_id += 1
            qubits.append(QubitDecl(q.id, q.role, q.coord, False, q.open_output))
        else:
            qubits.append(q)
    prep_layer = [prep_z(q) for q in refs] + [prep_x(r) for r in refs.values()]
    bell_layer = [cnot(r, q) for q, r in refs.items()]
    closed = CliffordCircuit(
        qubits + extra,
        [prep_layer, bell_layer] + [list(s) for s in c.slices],
        c.distance,
    )
    return closed, refs


def conjugation_rows(c: CliffordCircuit) -> tuple[list[PauliString], list[PauliString]]:
    """Images ``U X_i U^dagger`` and ``U Z_i U^dagger`` for a unitary circuit.

    Every qubit must be an open input and open output and the circuit must
    contain no preparations or measurements.
    """
    require_valid(c)
    if not all(q.open_input and q.open_output for q in c.qubits):
        raise UnsupportedPlacement("conjugation needs every qubit open at both ends")
    idx = c.index()
    sim = TableauSimulator(len(c.qubits))
    for _, g in c.gates():
        if g.name not in CONJUGATORS_1Q and g.name not in CONJUGATORS_2Q:
            raise UnsupportedPlacement(f"{g} is not unitary")
        sim.apply(g.name, *(idx[q] for q in g.qubits))
    n = sim.n
    rows = [PauliString(sim.x[i], sim.z[i], int(sim.r[i])) for i in range(2 * n)]
    return rows[:n], rows[n:]


def group_signs(sim: TableauSimulator, x: np.ndarray, z: np.ndarray):
    """Batch membership of unsigned Paulis (rows of ``x``/``z``) in ``sim``'s group.

    Uses the destabilizers to read off which stabilizers compose each row,
    so no elimination is needed.  Returns ``(member, sign)`` arrays; ``sign``
    is only meaningful where ``member`` is true, and ``sign * p`` is then in
    the group.  Rows range over every simulator qubit (measured ones too).
    """
    n = sim.n
    x = np.atleast_2d(x).astype(np.uint8)
    z = np.atleast_2d(z).astype(np.uint8)
    dx = sim.x[:n].astype(np.int64)
    dz = sim.z[:n].astype(np.int64)
    coeff = (x.astype(np.int64) @ dz.T + z.astype(np.int64) @ dx.T) % 2
    ax = np.zeros_like(x)
    az = np.zeros_like(z)
    ar = np.zeros(x.shape[0], dtype=np.int64)
    for i in range(n):
        sel = np.flatnonzero(coeff[:, i])
        if sel.size == 0:
            continue
        sx, sz = sim.x[n + i], sim.z[n + i]
        ar[sel] += sim.r[n + i] + product_phase(ax[sel], az[sel], sx, sz).sum(axis=1)
        ax[sel] ^= sx
        az[sel] ^= sz
    member = np.all(ax == x, axis=1) & np.all(az == z, axis=1)
    sign = np.where(ar % 4 == 0, 1, -1)
    return member, sign
