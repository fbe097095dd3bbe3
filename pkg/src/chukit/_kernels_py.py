"""Pure-Python versions of the adjointness kernels.

Both backends take int64 arrays holding canonical class representatives:
``lhs`` is the (already post-composed) source pairing, shape (A, B);
``g`` is the target pairing, shape (C, D); forward tables index rows of
``g``.
"""

import numpy as np


def allowed_matrix(lhs, g, fwd):
    """out[k, d, b] is True iff lhs[a, b] == g[fwd[k, a], d] for all a."""
    A, B = lhs.shape
    K = fwd.shape[0]
    D = g.shape[1]
    out = np.zeros((K, D, B), dtype=bool)
    L = lhs.tolist()
    G = g.tolist()
    columns = {}
    for b in range(B):
        columns.setdefault(tuple(L[a][b] for a in range(A)), []).append(b)
    for k, row in enumerate(fwd.tolist()):
        rows = [G[c] for c in row]
        for d in range(D):
            hit = columns.get(tuple(r[d] for r in rows))
            if hit:
                out[k, d, hit] = True
    return out


def first_violation(lhs, g, fwd, bwd):
    """First (a, d) with lhs[a, bwd[d]] != g[fwd[a], d], or None."""
    L = lhs.tolist()
    G = g.tolist()
    bt = bwd.tolist()
    for a, c in enumerate(fwd.tolist()):
        row, grow = L[a], G[c]
        for d, b in enumerate(bt):
            if row[b] != grow[d]:
                return (a, d)
    return None
