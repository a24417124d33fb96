"""Pure-numpy GF(2) elimination kernel (fallback when the extension is absent)."""

import numpy as np


def rref_inplace(m: np.ndarray, ncols: int) -> list:
    """Reduce ``m`` (uint8, 0/1) to RREF in place, pivoting on its first ``ncols`` columns.

    Leftmost pivot column first; the pivot row is the topmost remaining row
    with a 1.  Returns the pivot columns in order.
    """
    rows = m.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= rows:
            break
        hits = np.flatnonzero(m[r:, c])
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        ones = np.flatnonzero(m[:, c])
        ones = ones[ones != r]
        if ones.size:
            m[ones, c:] ^= m[r, c:]
        pivots.append(c)
        r += 1
    return pivots
