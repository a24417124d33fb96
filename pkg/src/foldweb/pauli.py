"""Pauli strings and the Clifford conjugation table.

A Pauli string is stored as two bit vectors plus a phase exponent; the
operator it denotes is ``i**phase * P_0 ⊗ P_1 ⊗ ...`` where each ``P_j`` is
I, X, Z or Y for the bit pair (x, z) = (0,0), (1,0), (0,1), (1,1).  Y is the
Hermitian Y, not X·Z.

The ``conjugate_*`` functions are the single conjugation table used by both the
Heisenberg propagation engine and the stabilizer tableau.  They operate on
2-D bit arrays (one row per Pauli) in place, so a tableau and a lone Pauli
string are updated by literally the same code.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

LABELS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
BITS = {v: k for k, v in LABELS.items()}


def product_phase(x1, z1, x2, z2):
    """Exponent ``g`` with ``P(x1,z1) P(x2,z2) = i**g P(x1^x2, z1^z2)``.

    Works elementwise on integer arrays; the result lies in {-1, 0, 1}.
    """
    x1 = np.asarray(x1, dtype=np.int64)
    z1 = np.asarray(z1, dtype=np.int64)
    x2 = np.asarray(x2, dtype=np.int64)
    z2 = np.asarray(z2, dtype=np.int64)
    return np.where(
        x1 & z1,
        z2 - x2,
        np.where(x1, z2 * (2 * x2 - 1), np.where(z1, x2 * (1 - 2 * z2), 0)),
    )


# -- conjugation table: P -> U P U^dagger ---------------------------------


def conjugate_h(x, z, r, q):
    r += 2 * (x[:, q] & z[:, q])
    x[:, q], z[:, q] = z[:, q].copy(), x[:, q].copy()
    r %= 4


def conjugate_s(x, z, r, q):
    # X -> Y, Y -> -X, Z -> Z
    r += 2 * (x[:, q] & z[:, q])
    z[:, q] ^= x[:, q]
    r %= 4


def conjugate_sdg(x, z, r, q):
    # X -> -Y, Y -> X, Z -> Z
    r += 2 * (x[:, q] & (z[:, q] ^ 1))
    z[:, q] ^= x[:, q]
    r %= 4


def conjugate_cnot(x, z, r, c, t):
    r += 2 * (x[:, c] & z[:, t] & (x[:, t] ^ z[:, c] ^ 1))
    x[:, t] ^= x[:, c]
    z[:, c] ^= z[:, t]
    r %= 4


def conjugate_cz(x, z, r, a, b):
    r += 2 * (x[:, a] & x[:, b] & (z[:, a] ^ z[:, b]))
    z[:, a] ^= x[:, b]
    z[:, b] ^= x[:, a]
    r %= 4


CONJUGATORS_1Q = {"h": conjugate_h, "s": conjugate_s, "sdg": conjugate_sdg}
CONJUGATORS_2Q = {"cnot": conjugate_cnot, "cz": conjugate_cz}


@dataclass
class PauliString:
    """A Pauli operator on ``n`` qubits with a power-of-i phase."""

    x: np.ndarray
    z: np.ndarray
    phase: int = 0

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=np.uint8) & 1
        self.z = np.asarray(self.z, dtype=np.uint8) & 1
        if self.x.shape != self.z.shape or self.x.ndim != 1:
            raise ValueError("x and z must be 1-D arrays of equal length")
        self.phase = int(self.phase) % 4

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(np.zeros(n, np.uint8), np.zeros(n, np.uint8))

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse strings like ``"XIZY"``, ``"-XX"`` or ``"+iZ"``."""
        phase = 0
        body = label
        if body.startswith(("+", "-")):
            phase = 0 if body[0] == "+" else 2
            body = body[1:]
        if body.startswith("i"):
            phase += 1
            body = body[1:]
        bits = [BITS[ch] for ch in body]
        return cls(
            np.array([b[0] for b in bits], np.uint8),
            np.array([b[1] for b in bits], np.uint8),
            phase,
        )

    @classmethod
    def from_sparse(cls, n: int, ops: dict[int, str], phase: int = 0) -> "PauliString":
        p = cls.identity(n)
        for q, ch in ops.items():
            p.x[q], p.z[q] = BITS[ch]
        p.phase = phase % 4
        return p

    @property
    def n(self) -> int:
        return len(self.x)

    def label(self, with_sign: bool = True) -> str:
        body = "".join(LABELS[(int(a), int(b))] for a, b in zip(self.x, self.z))
        if not with_sign:
            return body
        return ["+", "+i", "-", "-i"][self.phase] + body

    def __str__(self) -> str:
        return self.label()

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliString):
            return NotImplemented
        return (
            self.phase == other.phase
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.z, other.z)
        )

    def __hash__(self):
        return hash((self.phase, self.x.tobytes(), self.z.tobytes()))

    def copy(self) -> "PauliString":
        return PauliString(self.x.copy(), self.z.copy(), self.phase)

    def __mul__(self, other: "PauliString") -> "PauliString":
        if self.n != other.n:
            raise ValueError("qubit count mismatch")
        g = int(product_phase(self.x, self.z, other.x, other.z).sum())
        return PauliString(self.x ^ other.x, self.z ^ other.z, self.phase + other.phase + g)

    def commutes(self, other: "PauliString") -> bool:
        s = int(np.sum(self.x & other.z) + np.sum(self.z & other.x))
        return s % 2 == 0

    def weight(self) -> int:
        return int(np.count_nonzero(self.x | self.z))

    def support(self) -> list[int]:
        return [int(q) for q in np.flatnonzero(self.x | self.z)]

    def sign(self) -> int:
        """+1 or -1 for Hermitian strings; raises for ±i phases."""
        if self.phase % 2:
            raise ValueError(f"{self} is not Hermitian")
        return 1 if self.phase == 0 else -1

    def unsigned(self) -> "PauliString":
        return PauliString(self.x.copy(), self.z.copy(), 0)

    def conjugate(self, gate: str, *qubits: int) -> "PauliString":
        """Return ``U P U^dagger`` for a named Clifford gate acting on ``qubits``."""
        x = self.x[None, :].copy()
        z = self.z[None, :].copy()
        r = np.array([self.phase], dtype=np.int64)
        if gate in CONJUGATORS_1Q:
            CONJUGATORS_1Q[gate](x, z, r, *qubits)
        else:
            CONJUGATORS_2Q[gate](x, z, r, *qubits)
        return PauliString(x[0], z[0], int(r[0]))

    def restrict(self, qubits) -> "PauliString":
        idx = list(qubits)
        return PauliString(self.x[idx].copy(), self.z[idx].copy(), self.phase)
