import numpy as np
import pytest

PAULI_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.diag([1, -1]).astype(complex),
}


def pauli_matrix(p):
    """Dense matrix of a PauliString, qubit 0 as the most significant factor."""
    out = np.eye(1, dtype=complex)
    for ch in p.label(with_sign=False):
        out = np.kron(out, PAULI_MATS[ch])
    return out * (1j ** p.phase)


@pytest.fixture
def rng():
    import random

    return random.Random(1234)
