"""Dense state-vector simulation, used to cross-check the tableau on small circuits.

Nothing here goes through the conjugation table: gates are applied as
explicit matrices and measurements as projectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from .circuit import CliffordCircuit, require_valid
from .errors import TooLarge, UnsupportedPlacement
from .pauli import PauliString

MAX_QUBITS = 8

_I2 = np.eye(2, dtype=complex)
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_S = np.diag([1, 1j])
_SDG = np.diag([1, -1j])
_PAULI = {
    (0, 0): _I2,
    (1, 0): np.array([[0, 1], [1, 0]], dtype=complex),
    (0, 1): np.diag([1, -1]).astype(complex),
    (1, 1): np.array([[0, -1j], [1j, 0]], dtype=complex),
}
_CNOT = np.eye(4, dtype=complex)[[0, 1, 3, 2]].reshape(2, 2, 2, 2)
_CZ = np.diag([1, 1, 1, -1]).astype(complex).reshape(2, 2, 2, 2)
_SINGLE = {"h": _H, "s": _S, "sdg": _SDG}


def apply_1q(psi: np.ndarray, u: np.ndarray, q: int) -> np.ndarray:
    psi = np.tensordot(u, psi, axes=([1], [q]))
    return np.moveaxis(psi, 0, q)


def apply_2q(psi: np.ndarray, u4: np.ndarray, a: int, b: int) -> np.ndarray:
    psi = np.tensordot(u4, psi, axes=([2, 3], [a, b]))
    return np.moveaxis(psi, [0, 1], [a, b])


def apply_pauli(psi: np.ndarray, p: PauliString, qubits) -> np.ndarray:
    out = psi
    for k, q in enumerate(qubits):
        lab = (int(p.x[k]), int(p.z[k]))
        if lab != (0, 0):
            out = apply_1q(out, _PAULI[lab], q)
    return out * (1j ** p.phase)


def simulate(c: CliffordCircuit, forcing: Mapping[str, int]):
    """Run ``c`` on a dense vector; random outcomes take their forced bit.

    Returns ``(psi, bits)`` where ``psi`` has one axis per declared qubit.
    A forced bit with zero probability is replaced by the other outcome.
    """
    require_valid(c)
    n = len(c.qubits)
    if n > MAX_QUBITS:
        raise TooLarge(f"{n} qubits exceeds the dense-simulation cap of {MAX_QUBITS}")
    if any(q.open_input for q in c.qubits):
        raise UnsupportedPlacement("dense simulation needs closed inputs")
    idx = c.index()
    psi = np.zeros((2,) * n, dtype=complex)
    psi[(0,) * n] = 1.0
    bits: dict[str, int] = {}
    for _, g in c.gates():
        qs = [idx[q] for q in g.qubits]
        if g.name == "prep_z":
            continue
        if g.name == "prep_x":
            psi = apply_1q(psi, _H, qs[0])
        elif g.name in _SINGLE:
            psi = apply_1q(psi, _SINGLE[g.name], qs[0])
        elif g.name == "cnot":
            psi = apply_2q(psi, _CNOT, *qs)
        elif g.name == "cz":
            psi = apply_2q(psi, _CZ, *qs)
        else:
            q = qs[0]
            if g.name == "meas_x":
                psi = apply_1q(psi, _H, q)
            probs = [np.sum(np.abs(np.take(psi, b, axis=q)) ** 2) for b in (0, 1)]
            bit = int(forcing.get(g.outcome, 0)) & 1
            if probs[bit] < 1e-12:
                bit ^= 1
            proj = np.zeros((2, 2), dtype=complex)
            proj[bit, bit] = 1
            psi = apply_1q(psi, proj, q) / np.sqrt(probs[bit])
            if g.name == "meas_x":
                psi = apply_1q(psi, _H, q)
            bits[g.outcome] = bit
    return psi, bits


@dataclass
class AgreementReport:
    ok: bool
    max_residual: float
    generators_checked: int
    bits_match: bool
    state: np.ndarray = field(repr=False)
    failures: list[str] = field(default_factory=list)


def statevector_check(
    c: CliffordCircuit, forcing: Optional[Mapping[str, int]] = None, tol: float = 1e-9
) -> AgreementReport:
    """Check that the tableau's final generators stabilize the dense state.

    Both simulators see the same forced outcomes; the tableau ignores forcing
    on deterministic outcomes, and the dense simulator does the equivalent
    by refusing zero-probability branches.
    """
    from .tableau import run

    forcing = dict(forcing or {})
    sims: list = []
    tab, rec = run(c, forcing, simulator=sims)
    psi, bits = simulate(c, {**forcing, **rec.bits})
    idx = c.index()
    checks = [(g, [idx[q] for q in tab.qubits]) for g in tab.generators()]
    full = sims[0].stabilizers()
    checks += [(g, full.qubits) for g in full.generators()]
    worst = 0.0
    failures = []
    for g, cols in checks:
        res = float(np.max(np.abs(apply_pauli(psi, g, cols) - psi)))
        worst = max(worst, res)
        if res > tol:
            failures.append(f"{g} residual {res:.3g}")
    bits_match = bits == rec.bits
    if not bits_match:
        failures.append(f"outcomes differ: tableau {rec.bits}, dense {bits}")
    return AgreementReport(
        not failures, worst, len(checks), bits_match, psi, failures
    )
