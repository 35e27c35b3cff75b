"""Exponential sums ``S(ω) = Σ_j v_j e^{iω t_j}`` over a uniform node set.

Two evaluators: a chunked direct sum for arbitrary frequencies (O(N) per
point) and a chirp-z path for uniformly spaced frequencies.
"""

from __future__ import annotations

import numpy as np
from scipy.signal import czt

# bounds the temporary (chunk x N) complex matrix to roughly 32 MB
_CHUNK_ELEMS = 1 << 21


def exp_sum_direct(values: np.ndarray, nodes: np.ndarray, freqs: np.ndarray) -> np.ndarray:
    """Evaluate ``Σ_j values_j exp(i freqs_k nodes_j)`` for every ``k``."""
    values = np.asarray(values, dtype=np.complex128)
    nodes = np.asarray(nodes, dtype=float)
    freqs = np.atleast_1d(np.asarray(freqs, dtype=float))
    out = np.empty(freqs.shape[0], dtype=np.complex128)
    nz = np.nonzero(values)[0]
    if nz.size == 0:
        out[:] = 0.0
        return out
    v = values[nz[0]: nz[-1] + 1]
    x = nodes[nz[0]: nz[-1] + 1]
    step = max(1, _CHUNK_ELEMS // v.size)
    for i in range(0, freqs.shape[0], step):
        w = freqs[i: i + step]
        out[i: i + step] = np.exp(1j * np.outer(w, x)) @ v
    return out


def exp_sum_uniform(values: np.ndarray, t0: float, dt: float,
                    w0: float, dw: float, m: int) -> np.ndarray:
    """Chirp-z evaluation of ``Σ_j values_j e^{iω_k t_j}``.

    Nodes are ``t_j = t0 + j·dt`` and frequencies ``ω_k = w0 + k·dw`` for
    ``k = 0..m-1``.  Leading and trailing zeros of ``values`` are trimmed
    before the transform.
    """
    values = np.asarray(values, dtype=np.complex128)
    nz = np.nonzero(values)[0]
    if nz.size == 0:
        return np.zeros(m, dtype=np.complex128)
    v = values[nz[0]: nz[-1] + 1]
    t_start = t0 + nz[0] * dt
    X = czt(v, m, w=np.exp(1j * dw * dt), a=np.exp(-1j * w0 * dt))
    wk = w0 + dw * np.arange(m)
    return X * np.exp(1j * wk * t_start)


def is_uniform(x: np.ndarray, rtol: float = 1e-12) -> bool:
    """True when ``x`` has at least two points with constant spacing."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size < 2:
        return False
    d = np.diff(x)
    h = (x[-1] - x[0]) / (x.size - 1)
    return h != 0 and bool(np.all(np.abs(d - h) <= rtol * max(abs(h), np.max(np.abs(x)))))
