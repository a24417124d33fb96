"""foldweb: Pauli webs on lowered Clifford circuits, checked against a tableau oracle.

The usual path is circuit -> :func:`lower_to_zx` -> :func:`build_system` /
:func:`solve` -> :func:`boundary_signature`, with :func:`run` and
:func:`contains_pauli` as the independent ground truth.
"""

__version__ = "0.1.0"

from .circuit import CliffordCircuit, Gate, QubitDecl, validate_circuit
from .circuit_io import parse, serialize
from .errors import *  # noqa: F401,F403
from .gf2 import BACKEND as GF2_BACKEND
from .lattice import (
    build_lattice,
    cclp_y_init_circuit,
    encoder_circuit,
    fold_layer,
    logical_rep,
    transversal_init_circuit,
)
from .lowering import LegMap, lower_to_zx
from .pauli import PauliString
from .pauliweb import (
    BoundarySignature,
    Infeasible,
    PauliWeb,
    boundary_signature,
    build_system,
    check_web,
    solve,
    web_basis,
)
from .propagate import PropagationResult, propagate_pauli
from .statevector import statevector_check
from .tableau import StabTableau, choi_closure, contains_pauli, run
from .zxgraph import Boundary, Spider, ZxDiagram

__all__ = [
    "Boundary",
    "BoundarySignature",
    "CliffordCircuit",
    "GF2_BACKEND",
    "Gate",
    "Infeasible",
    "LegMap",
    "PauliString",
    "PauliWeb",
    "PropagationResult",
    "QubitDecl",
    "Spider",
    "StabTableau",
    "ZxDiagram",
    "boundary_signature",
    "build_lattice",
    "build_system",
    "cclp_y_init_circuit",
    "check_web",
    "choi_closure",
    "contains_pauli",
    "encoder_circuit",
    "fold_layer",
    "logical_rep",
    "lower_to_zx",
    "parse",
    "propagate_pauli",
    "run",
    "serialize",
    "solve",
    "statevector_check",
    "transversal_init_circuit",
    "validate_circuit",
    "web_basis",
]
