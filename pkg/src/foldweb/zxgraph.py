"""ZX diagrams restricted to the Clifford fragment.

Spiders carry a colour (``"Z"`` green, ``"X"`` red) and a phase in units of
pi/2, stored mod 4.  Hadamards are an edge attribute rather than nodes.
Degree-1 spiders with role ``prep``/``measure`` stand for state preparations
and basis measurements; boundary nodes are the open legs.  The graph is a
multigraph: parallel edges are allowed, self-loops are not.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from numbers import Integral
from typing import Optional, Union
from xml.sax.saxutils import escape

from .errors import DegreeViolation, NotFound, RegistryError, ValidationError

ROLES = ("internal", "prep", "measure", "boundary_leg")
TERMINAL_ROLES = ("prep", "measure", "boundary_leg")

PHASE_TEXT = {0: "", 1: "π/2", 2: "π", 3: "-π/2"}
FILL = {"Z": "#ccffcc", "X": "#ff8888"}
WEB_COLORS = {"X": "red", "Z": "green", "Y": "red:green"}


@dataclass(frozen=True)
class Spider:
    color: str
    phase: int = 0

    def __post_init__(self):
        if self.color not in ("Z", "X"):
            raise ValueError(f"spider colour must be 'Z' or 'X', got {self.color!r}")
        if not isinstance(self.phase, Integral):
            raise ValueError(f"non-Clifford phase {self.phase!r}: phases are integers (units of pi/2)")
        object.__setattr__(self, "phase", int(self.phase) % 4)


@dataclass(frozen=True)
class Boundary:
    direction: str

    def __post_init__(self):
        if self.direction not in ("in", "out"):
            raise ValueError(f"boundary direction must be 'in' or 'out', got {self.direction!r}")


NodeKind = Union[Spider, Boundary]


@dataclass(frozen=True)
class Node:
    id: int
    kind: NodeKind
    role: str = "internal"
    tag: Optional[tuple[int, int]] = None


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int
    hadamard: bool = False

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.u, self.v)

    def other(self, n: int) -> int:
        return self.v if n == self.u else self.u


@dataclass(frozen=True)
class Violation:
    node: Optional[int]
    message: str

    def __str__(self) -> str:
        where = f"node {self.node}: " if self.node is not None else ""
        return where + self.message


class ZxDiagram:
    """Mutable builder; treat as read-only once construction is finished."""

    def __init__(self):
        self.nodes: dict[int, Node] = {}
        self.edges: dict[int, Edge] = {}
        self.outcomes: dict[int, str] = {}
        self.preps: list[int] = []
        self._incident: dict[int, list[int]] = {}
        self._next_node = 0
        self._next_edge = 0

    # -- construction -----------------------------------------------------

    def add_node(self, kind: NodeKind, role: str = "internal", tag=None, outcome=None) -> int:
        if role not in ROLES:
            raise ValueError(f"unknown role {role!r}")
        if role == "measure":
            if not outcome:
                raise RegistryError("a measure node needs an outcome id")
            if outcome in self.outcomes.values():
                raise RegistryError(f"outcome id {outcome!r} already registered")
        elif outcome is not None:
            raise RegistryError("only measure nodes carry outcome ids")
        nid = self._next_node
        self._next_node += 1
        self.nodes[nid] = Node(nid, kind, role, tuple(tag) if tag is not None else None)
        self._incident[nid] = []
        if role == "measure":
            self.outcomes[nid] = outcome
        elif role == "prep":
            self.preps.append(nid)
        return nid

    def add_edge(self, u: int, v: int, hadamard: bool = False) -> int:
        for n in (u, v):
            if n not in self.nodes:
                raise NotFound(f"node {n} does not exist")
        if u == v:
            raise DegreeViolation(f"self-loop on node {u}")
        for n in (u, v):
            if self.nodes[n].role in TERMINAL_ROLES and self._incident[n]:
                raise DegreeViolation(f"node {n} ({self.nodes[n].role}) already has its edge")
        eid = self._next_edge
        self._next_edge += 1
        self.edges[eid] = Edge(eid, u, v, bool(hadamard))
        self._incident[u].append(eid)
        self._incident[v].append(eid)
        return eid

    # -- queries ----------------------------------------------------------

    def degree(self, n: int) -> int:
        return len(self._incident[n])

    def incident(self, n: int) -> list[int]:
        return list(self._incident[n])

    def spiders(self) -> list[Node]:
        return [n for n in self.nodes.values() if isinstance(n.kind, Spider)]

    def boundary_legs(self, direction: Optional[str] = None) -> list[Node]:
        return [
            n
            for n in self.nodes.values()
            if isinstance(n.kind, Boundary) and (direction is None or n.kind.direction == direction)
        ]

    def validate(self) -> list[Violation]:
        out: list[Violation] = []
        for n in self.nodes.values():
            deg = self.degree(n.id)
            if n.role in ("prep", "measure"):
                if not isinstance(n.kind, Spider):
                    out.append(Violation(n.id, f"{n.role} node must be a spider"))
                if deg != 1:
                    out.append(Violation(n.id, f"{n.role} node has degree {deg}, expected 1"))
            elif n.role == "boundary_leg":
                if not isinstance(n.kind, Boundary):
                    out.append(Violation(n.id, "boundary_leg node must be a Boundary"))
                if deg != 1:
                    out.append(Violation(n.id, f"boundary leg has degree {deg}, expected 1"))
            elif isinstance(n.kind, Boundary):
                out.append(Violation(n.id, "Boundary node must have role boundary_leg"))
            if n.role == "measure" and n.id not in self.outcomes:
                out.append(Violation(n.id, "measure node without outcome id"))
        seen: dict[str, int] = {}
        for nid, oid in self.outcomes.items():
            if self.nodes[nid].role != "measure":
                out.append(Violation(nid, "outcome registered on a non-measure node"))
            if oid in seen:
                out.append(Violation(nid, f"outcome id {oid!r} shared with node {seen[oid]}"))
            seen[oid] = nid
        for e in self.edges.values():
            if e.u == e.v:
                out.append(Violation(e.u, f"edge {e.id} is a self-loop"))
        return out

    def require_valid(self) -> None:
        problems = self.validate()
        if problems:
            raise ValidationError(
                "invalid diagram: " + "; ".join(str(p) for p in problems[:5]), problems
            )

    # -- export -----------------------------------------------------------

    def _node_attrs(self, n: Node) -> str:
        if isinstance(n.kind, Spider):
            attrs = [
                f"kind={n.kind.color}",
                f"phase={n.kind.phase}",
                f"role={n.role}",
                'shape=circle, style=filled',
                f'fillcolor="{FILL[n.kind.color]}"',
                f'label="{PHASE_TEXT[n.kind.phase]}"',
            ]
        else:
            attrs = [
                f"kind=boundary_{n.kind.direction}",
                f"role={n.role}",
                "shape=point",
            ]
        if n.id in self.outcomes:
            attrs.append(f'outcome="{self.outcomes[n.id]}"')
        if n.tag is not None:
            attrs.append(f'tag="{n.tag[0]},{n.tag[1]}"')
        return ", ".join(attrs)

    def to_dot(self, web: Optional[dict] = None, name: str = "zx") -> str:
        """Deterministic Graphviz text, nodes then edges, both by id.

        ``web`` optionally maps edge id to an ``(x, z)`` label seen from the
        lower-id endpoint; labelled edges are coloured X=red, Z=green,
        Y=both.
        """
        self.require_valid()
        lines = [f"graph {name} {{"]
        for nid in sorted(self.nodes):
            lines.append(f"  n{nid} [{self._node_attrs(self.nodes[nid])}];")
        for eid in sorted(self.edges):
            e = self.edges[eid]
            a, b = sorted(e.endpoints)
            attrs = [f"id=e{eid}"]
            if e.hadamard:
                attrs += ["hadamard=true", "style=dashed", "color=blue"]
            if web is not None:
                lab = web.get(eid, (0, 0))
                near = _pauli_name(lab)
                far = _pauli_name((lab[1], lab[0]) if e.hadamard else lab)
                if near != "I" or far != "I":
                    attrs = [x for x in attrs if not x.startswith("color=")]
                    attrs.append(f'web="{near}"' if near == far else f'web="{near}|{far}"')
                    attrs.append(f'color="{WEB_COLORS.get(near) or WEB_COLORS[far]}"')
                    attrs.append("penwidth=3")
            lines.append(f"  n{a} -- n{b} [{', '.join(attrs)}];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_svg(self, web: Optional[dict] = None) -> str:
        """Minimal SVG render; tag (space, time) maps to (x, y), time upward."""
        self.require_valid()
        pos = self._layout()
        width = max((p[0] for p in pos.values()), default=0) + 40
        height = max((p[1] for p in pos.values()), default=0) + 40
        out = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">'
        ]
        for eid in sorted(self.edges):
            e = self.edges[eid]
            (x1, y1), (x2, y2) = pos[e.u], pos[e.v]
            color, dash = "black", ""
            if e.hadamard:
                color, dash = "blue", ' stroke-dasharray="4,3"'
            lab = web.get(eid, (0, 0)) if web else (0, 0)
            name = _pauli_name(lab)
            if name != "I":
                color = {"X": "red", "Z": "green", "Y": "purple"}[name]
            out.append(
                f'<line id="e{eid}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                f'stroke="{color}" stroke-width="{3 if name != "I" else 1}"{dash}/>'
            )
            if e.hadamard:
                mx, my = (x1 + x2) / 2, (y1 + y2) / 2
                out.append(
                    f'<rect x="{mx - 4}" y="{my - 4}" width="8" height="8" fill="yellow" stroke="black"/>'
                )
        for nid in sorted(self.nodes):
            n = self.nodes[nid]
            x, y = pos[nid]
            if isinstance(n.kind, Spider):
                out.append(
                    f'<circle id="n{nid}" cx="{x}" cy="{y}" r="7" fill="{FILL[n.kind.color]}" '
                    f'stroke="black"><title>{escape(n.role)}</title></circle>'
                )
                if n.kind.phase:
                    out.append(
                        f'<text x="{x + 9}" y="{y - 6}" font-size="9">{PHASE_TEXT[n.kind.phase]}</text>'
                    )
            else:
                out.append(f'<circle id="n{nid}" cx="{x}" cy="{y}" r="2" fill="black"/>')
        out.append("</svg>")
        return "\n".join(out) + "\n"

    def _layout(self) -> dict[int, tuple[float, float]]:
        tagged = [n.tag for n in self.nodes.values() if n.tag is not None]
        tmax = max((t for _, t in tagged), default=0)
        spaces = sorted({s for s, _ in tagged})
        col = {s: k for k, s in enumerate(spaces)}
        pos = {}
        loose = 0
        for nid in sorted(self.nodes):
            tag = self.nodes[nid].tag
            if tag is None:
                pos[nid] = (20 + 30 * loose, 20)
                loose += 1
            else:
                pos[nid] = (20 + 30 * col[tag[0]], 20 + 50 * (tmax - tag[1] + 1))
        return pos

    def diagram_hash(self) -> str:
        return hashlib.sha256(self.to_dot().encode()).hexdigest()[:16]


def _pauli_name(label) -> str:
    return {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}[(int(label[0]), int(label[1]))]
