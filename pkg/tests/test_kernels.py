import numpy as np
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from chukit import _kernels_py, kernels

try:
    from chukit import _kernels as compiled
except ImportError:
    compiled = None


@st.composite
def kernel_inputs(draw):
    A, B, C, D, K = (draw(st.integers(0, 4)) for _ in range(5))
    C = max(C, 1) if A else C
    lhs = draw(arrays(np.int64, (A, B), elements=st.integers(0, 2)))
    g = draw(arrays(np.int64, (C, D), elements=st.integers(0, 2)))
    fwd = draw(arrays(np.int64, (K, A), elements=st.integers(0, max(C - 1, 0))))
    bwd = draw(arrays(np.int64, (D,), elements=st.integers(0, max(B - 1, 0)))) if B else None
    return lhs, g, fwd, bwd


def reference_allowed(lhs, g, fwd):
    A, B = lhs.shape
    out = np.zeros((fwd.shape[0], g.shape[1], B), dtype=bool)
    for k in range(fwd.shape[0]):
        for d in range(g.shape[1]):
            for b in range(B):
                out[k, d, b] = all(lhs[a, b] == g[fwd[k, a], d] for a in range(A))
    return out


@given(kernel_inputs())
def test_backends_agree_with_the_definition(x):
    lhs, g, fwd, bwd = x
    expected = reference_allowed(lhs, g, fwd)
    assert (_kernels_py.allowed_matrix(lhs, g, fwd) == expected).all()
    if compiled is not None:
        assert (compiled.allowed_matrix(lhs, g, fwd) == expected).all()
    if bwd is not None and fwd.shape[0]:
        row = np.ascontiguousarray(fwd[0])
        w = _kernels_py.first_violation(lhs, g, row, bwd)
        if compiled is not None:
            assert compiled.first_violation(lhs, g, row, bwd) == w
        ok = all(lhs[a, bwd[d]] == g[row[a], d] for a in range(lhs.shape[0]) for d in range(len(bwd)))
        assert (w is None) == ok


def test_backend_is_reported():
    assert kernels.BACKEND in {"python", "compiled"}
