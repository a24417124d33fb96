"""Rotated surface code layout and the circuits built on it.

Frame: data qubit (r, c) with 0 <= r, c < d, r growing upward and c
rightward.  Plaquette (i, j) has lower-left data corner (i, j), centre
(i + 1/2, j + 1/2) and type Z when i + j is even, X otherwise.  Interior
plaquettes have 0 <= i, j <= d-2; weight-2 X plaquettes sit on the left and
right edges, weight-2 Z plaquettes on the top and bottom edges.

Qubit ids: data (r, c) is ``r*d + c``; ancillas follow in plaquette order
(sorted by centre, row-major), starting at ``d*d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .circuit import (
    CliffordCircuit,
    Gate,
    QubitDecl,
    cnot,
    cz,
    meas_x,
    meas_z,
    prep_x,
    prep_z,
    s,
    sdg,
)
from .errors import NotFound, OddDistanceRequired
from .pauli import PauliString

Coord = tuple[int, int]

# Corner offsets (di, dj) from a plaquette's lower-left data qubit.
SW, SE, NW, NE = (0, 0), (0, 1), (1, 0), (1, 1)

# Interaction order per ancilla type: step t touches corner ORDER[t].
# At every step the X and Z corners coincide or are diagonally opposite,
# which keeps each slice qubit-disjoint.  X ancillas do their west pair in
# the first half and east pair in the second; Z ancillas do north then
# south.  Under the diagonal fold one half-round maps onto the other with
# X and Z roles exchanged, which is what lets the fold layer sit between
# the halves.  Of the 24 x 24 corner orders only four have this property.
X_ORDER = (NW, SW, NE, SE)
Z_ORDER = (NW, NE, SW, SE)


@dataclass(frozen=True)
class Plaquette:
    ptype: str
    corner: Coord
    support: tuple[Coord, ...]
    ancilla: int

    @property
    def center(self) -> tuple[float, float]:
        return (self.corner[0] + 0.5, self.corner[1] + 0.5)

    @property
    def weight(self) -> int:
        return len(self.support)


def _check_distance(d) -> None:
    if not isinstance(d, int) or isinstance(d, bool) or d < 3 or d % 2 == 0:
        raise OddDistanceRequired(f"distance must be an odd integer >= 3, got {d!r}")


def _plaquette_type(i: int, j: int) -> str:
    return "Z" if (i + j) % 2 == 0 else "X"


@dataclass(frozen=True)
class Lattice:
    d: int
    plaquettes: tuple[Plaquette, ...]

    @property
    def data(self) -> list[Coord]:
        return [(r, c) for r in range(self.d) for c in range(self.d)]

    def data_id(self, coord: Coord) -> int:
        r, c = coord
        if not (0 <= r < self.d and 0 <= c < self.d):
            raise NotFound(f"{coord} is not a data coordinate of the d={self.d} lattice")
        return r * self.d + c

    @cached_property
    def by_corner(self) -> dict[Coord, Plaquette]:
        return {p.corner: p for p in self.plaquettes}

    @cached_property
    def by_ancilla(self) -> dict[int, Plaquette]:
        return {p.ancilla: p for p in self.plaquettes}

    def is_interior(self, p: Plaquette) -> bool:
        return p.weight == 4

    def qubits(self, data_input=False, data_output=True) -> list[QubitDecl]:
        decls = [
            QubitDecl(self.data_id(rc), "data", (2 * rc[0], 2 * rc[1]), data_input, data_output)
            for rc in self.data
        ]
        for p in self.plaquettes:
            role = "ancilla_x" if p.ptype == "X" else "ancilla_z"
            i, j = p.corner
            decls.append(QubitDecl(p.ancilla, role, (2 * i + 1, 2 * j + 1)))
        return decls

    def plaquette_operator(self, p: Plaquette) -> PauliString:
        """The plaquette's stabilizer as a Pauli string over the d*d data qubits."""
        return PauliString.from_sparse(
            self.d * self.d, {self.data_id(rc): p.ptype for rc in p.support}
        )


def build_lattice(d: int) -> Lattice:
    _check_distance(d)
    plaqs = []
    for i in range(-1, d):
        for j in range(-1, d):
            support = tuple(
                (i + di, j + dj)
                for di, dj in (SW, SE, NW, NE)
                if 0 <= i + di < d and 0 <= j + dj < d
            )
            if len(support) < 2:
                continue
            ptype = _plaquette_type(i, j)
            interior = len(support) == 4
            side_lr = j in (-1, d - 1)
            if not interior and ptype != ("X" if side_lr else "Z"):
                continue
            plaqs.append((ptype, (i, j), support))
    plaqs.sort(key=lambda t: t[1])
    return Lattice(
        d,
        tuple(
            Plaquette(ptype, corner, support, d * d + k)
            for k, (ptype, corner, support) in enumerate(plaqs)
        ),
    )


def mirror(lattice: Lattice, coord: Coord) -> Coord:
    """Reflect a data coordinate across the r = c diagonal."""
    lattice.data_id(coord)
    return (coord[1], coord[0])


def mirror_plaquette(lattice: Lattice, p: Plaquette):
    """The plaquette at the transposed position, or None if that site is empty."""
    return lattice.by_corner.get((p.corner[1], p.corner[0]))


def fold_layer(lattice: Lattice) -> list[Gate]:
    """CZs between mirror pairs plus S / S-dagger on the fold line."""
    gates: list[Gate] = []
    for r, c in lattice.data:
        if r < c:
            gates.append(cz(lattice.data_id((r, c)), lattice.data_id((c, r))))
        elif r == c:
            gates.append(s(lattice.data_id((r, c))))
    for p in lattice.plaquettes:
        if not lattice.is_interior(p):
            continue
        i, j = p.corner
        if i < j:
            gates.append(cz(p.ancilla, mirror_plaquette(lattice, p).ancilla))
        elif i == j:
            gates.append(sdg(p.ancilla))
    return gates


def _cnot_step(lattice: Lattice, step: int, ptypes=("X", "Z")) -> list[Gate]:
    gates = []
    for p in lattice.plaquettes:
        if p.ptype not in ptypes:
            continue
        di, dj = (X_ORDER if p.ptype == "X" else Z_ORDER)[step]
        target = (p.corner[0] + di, p.corner[1] + dj)
        if target not in p.support:
            continue
        q = lattice.data_id(target)
        gates.append(cnot(p.ancilla, q) if p.ptype == "X" else cnot(q, p.ancilla))
    return gates


def syndrome_round_slices(lattice: Lattice, phase: str = "full") -> list[list[Gate]]:
    """CNOT slices of one interleaved syndrome round.

    ``phase`` is ``"first"`` (steps 0-1), ``"second"`` (steps 2-3) or
    ``"full"``.  X ancillas control their data qubits; Z ancillas are
    targets.
    """
    steps = {"first": (0, 1), "second": (2, 3), "full": (0, 1, 2, 3)}[phase.lower()]
    return [_cnot_step(lattice, t) for t in steps]


def _ancilla_preps(lattice: Lattice, ptypes=("X", "Z")) -> list[Gate]:
    return [
        prep_x(p.ancilla) if p.ptype == "X" else prep_z(p.ancilla)
        for p in lattice.plaquettes
        if p.ptype in ptypes
    ]


def _ancilla_measures(lattice: Lattice, ptypes=("X", "Z"), offset: int = 0, remap=None):
    gates = []
    for k, p in enumerate(lattice.plaquettes):
        if p.ptype not in ptypes:
            continue
        q = remap[p.ancilla] if remap else p.ancilla
        outcome = f"m{offset + k}"
        gates.append(meas_x(q, outcome) if p.ptype == "X" else meas_z(q, outcome))
    return gates


def cclp_y_init_circuit(d: int) -> CliffordCircuit:
    """Seven-slice fold-transversal |Y> initialisation.

    Slice 0 resets (data in |+>), slices 1-2 run the first half of a
    syndrome round, slice 3 is the fold layer, slices 4-5 finish the round
    and slice 6 measures every ancilla.
    """
    lat = build_lattice(d)
    slices = [[prep_x(lat.data_id(rc)) for rc in lat.data] + _ancilla_preps(lat)]
    slices += syndrome_round_slices(lat, "first")
    slices.append(fold_layer(lat))
    slices += syndrome_round_slices(lat, "second")
    slices.append(_ancilla_measures(lat))
    return CliffordCircuit(lat.qubits(), slices, d)


def _rounds(lat: Lattice, rounds: int, first_slice: list[Gate]):
    """Z-type then X-type parity measurements, fresh ancillas every round."""
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    base = lat.qubits(data_input=False)
    n_anc = len(lat.plaquettes)
    extra: list[QubitDecl] = []
    slices: list[list[Gate]] = []
    for k in range(rounds):
        remap = {p.ancilla: p.ancilla + k * n_anc for p in lat.plaquettes}
        if k:
            for decl in base[lat.d * lat.d:]:
                extra.append(QubitDecl(remap[decl.id], decl.role, decl.coord))

        def moved(gates):
            return [Gate(g.name, tuple(remap.get(q, q) for q in g.qubits), g.outcome) for g in gates]

        zprep = moved(_ancilla_preps(lat, ("Z",)))
        slices.append((first_slice if k == 0 else []) + zprep)
        slices += [moved(_cnot_step(lat, t, ("Z",))) for t in range(4)]
        slices.append(
            _ancilla_measures(lat, ("Z",), k * n_anc, remap) + moved(_ancilla_preps(lat, ("X",)))
        )
        slices += [moved(_cnot_step(lat, t, ("X",))) for t in range(4)]
        slices.append(_ancilla_measures(lat, ("X",), k * n_anc, remap))
    return extra, slices


def encoder_circuit(d: int, rounds: int = 1) -> CliffordCircuit:
    """Open-input encoder: ``rounds`` rounds of plaquette measurements."""
    lat = build_lattice(d)
    extra, slices = _rounds(lat, rounds, [])
    return CliffordCircuit(lat.qubits(data_input=True) + extra, slices, d)


def transversal_init_circuit(d: int, basis: str = "Z", rounds: int = 1) -> CliffordCircuit:
    """Data prepared in |0> (basis Z) or |+> (basis X), then syndrome rounds."""
    lat = build_lattice(d)
    basis = basis.upper()
    if basis not in ("Z", "X"):
        raise ValueError(f"basis must be Z or X, got {basis!r}")
    prep = prep_z if basis == "Z" else prep_x
    extra, slices = _rounds(lat, rounds, [prep(lat.data_id(rc)) for rc in lat.data])
    return CliffordCircuit(lat.qubits() + extra, slices, d)


def logical_rep(lattice: Lattice, which: str) -> PauliString:
    """Logical operator on the d*d data qubits.

    X lives on the top row, Z on the rightmost column, and Y is their
    product with Y on the shared top-right corner (phase 0 throughout).
    """
    d = lattice.d
    which = which.upper()
    ops: dict[int, str] = {}
    if which in ("X", "Y"):
        for c in range(d):
            ops[lattice.data_id((d - 1, c))] = "X"
    if which in ("Z", "Y"):
        for r in range(d):
            q = lattice.data_id((r, d - 1))
            ops[q] = "Y" if ops.get(q) == "X" else "Z"
    if not ops:
        raise ValueError(f"unknown logical {which!r}")
    return PauliString.from_sparse(d * d, ops)
