import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from foldweb import gf2

BACKENDS = sorted(gf2.KERNELS)


def brute_solvable(a, b):
    n = a.shape[1]
    for bits in itertools.product((0, 1), repeat=n):
        if not ((a @ np.array(bits)) % 2 != b).any():
            return True
    return False


@pytest.mark.parametrize("backend", BACKENDS)
def test_identity_and_rank_one(backend):
    red, r, piv = gf2.rref(np.eye(4, dtype=np.uint8), backend=backend)
    assert r == 4 and piv == [0, 1, 2, 3]
    assert np.array_equal(red, np.eye(4))
    red, r, piv = gf2.rref([[1, 1], [1, 1]], backend=backend)
    assert red.tolist() == [[1, 1], [0, 0]] and r == 1 and piv == [0]


def test_backend_is_reported():
    assert gf2.BACKEND in ("cython", "python")
    assert "python" in gf2.KERNELS


@pytest.mark.parametrize("backend", BACKENDS)
def test_rref_is_reduced(backend):
    rng = np.random.default_rng(3)
    for _ in range(30):
        m = rng.integers(0, 2, (rng.integers(1, 40), rng.integers(1, 90)), dtype=np.uint8)
        red, r, piv = gf2.rref(m, backend=backend)
        assert piv == sorted(piv)
        for i, c in enumerate(piv):
            assert red[i, c] == 1 and red[:, c].sum() == 1
            assert not red[i, :c].any()
        assert not red[r:].any()
        # same row space both ways
        assert gf2.rank(np.vstack([m, red])) == r


def test_backends_agree_bit_for_bit():
    if len(BACKENDS) < 2:
        pytest.skip("compiled kernel not built")
    rng = np.random.default_rng(11)
    for shape in ((5, 7), (63, 65), (64, 64), (130, 200), (17, 300)):
        m = rng.integers(0, 2, shape, dtype=np.uint8)
        outs = [gf2.rref(m, backend=b) for b in BACKENDS]
        assert all(np.array_equal(o[0], outs[0][0]) and o[2] == outs[0][2] for o in outs)


def test_solvability_matches_brute_force():
    # random 20x30 systems, judged on 12-variable subproblems
    rng = np.random.default_rng(5)
    for _ in range(40):
        a = rng.integers(0, 2, (20, 30), dtype=np.uint8)
        cols = rng.choice(30, 12, replace=False)
        sub = a[:, cols]
        sub[rng.integers(0, 20, 10)] = 0  # thin it so both verdicts occur
        b = (sub @ rng.integers(0, 2, 12) % 2).astype(np.uint8)
        if rng.random() < 0.5:
            b[rng.integers(0, 20)] ^= 1
        x = gf2.solve(sub, b)
        assert (x is not None) == brute_solvable(sub, b)
        if x is not None:
            assert np.array_equal(sub @ x % 2, b)


def test_solve_sets_free_variables_to_zero():
    a = np.array([[1, 1, 0], [0, 0, 1]], dtype=np.uint8)
    assert gf2.solve(a, [1, 1]).tolist() == [1, 0, 1]
    assert gf2.solve(np.array([[1, 1], [1, 1]]), [1, 0]) is None


@settings(max_examples=50, deadline=None)
@given(hnp.arrays(np.uint8, st.tuples(st.integers(1, 12), st.integers(1, 12)), elements=st.integers(0, 1)))
def test_nullspace_properties(a):
    basis = gf2.nullspace(a)
    n = a.shape[1]
    assert basis.shape == (n - gf2.rank(a), n)
    assert not (a.astype(int) @ basis.T.astype(int) % 2).any()
    if len(basis):
        assert gf2.rank(basis) == len(basis)
        red, _, _ = gf2.rref(basis)
        assert np.array_equal(red, basis)  # already canonical


def test_in_rowspace():
    rows = np.array([[1, 0, 1], [0, 1, 1]])
    assert gf2.in_rowspace([1, 1, 0], rows)
    assert not gf2.in_rowspace([1, 0, 0], rows)
