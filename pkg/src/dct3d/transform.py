"""Orthonormal DCT-II in one, two and three dimensions.

All transforms are computed separably from a single basis matrix ``C`` with
``C[i, j] = alpha(i) * cos(pi * (2j + 1) * i / (2n))``.  The 2D transform is
``C @ X @ C.T``; the 3D transform applies the 2D transform to every layer
(constant third index) and then the 1D transform along the third index.

Block arrays may carry leading batch axes: a ``(k, 8, 8, 8)`` array is
transformed as ``k`` independent cubes.  Samples are *not* level-shifted, so
a constant block of value ``L`` has DC ``L * n`` in 2D and ``L * n**1.5`` in
3D.
"""

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from .errors import InvalidArgumentError


@dataclass(frozen=True, eq=False)
class DctBasis:
    """The ``n x n`` orthonormal DCT-II matrix (rows are basis vectors)."""

    n: int
    c: np.ndarray

    def __post_init__(self):
        self.c.setflags(write=False)


def alpha(k, n):
    return 1.0 / math.sqrt(n) if k == 0 else math.sqrt(2.0 / n)


@lru_cache(maxsize=None)
def dct_basis(n=8):
    if n < 1:
        raise InvalidArgumentError(f"block size must be >= 1, got {n}")
    i = np.arange(n, dtype=np.float64)[:, None]
    j = np.arange(n, dtype=np.float64)[None, :]
    c = np.cos(np.pi * (2 * j + 1) * i / (2 * n))
    c[0, :] *= 1.0 / math.sqrt(n)
    c[1:, :] *= math.sqrt(2.0 / n)
    return DctBasis(n, c)


def _check(a, basis, ndim):
    a = np.asarray(a, dtype=np.float64)
    if a.ndim < ndim or any(s != basis.n for s in a.shape[-ndim:]):
        raise InvalidArgumentError(
            f"expected trailing shape {(basis.n,) * ndim}, got {a.shape}"
        )
    return a


def dct1d_forward(v, basis):
    v = _check(v, basis, 1)
    return v @ basis.c.T


def dct1d_inverse(s, basis):
    s = _check(s, basis, 1)
    return s @ basis.c


def dct2d_forward(b, basis):
    """Return ``C @ B @ C.T`` for every trailing ``n x n`` block of *b*."""
    b = _check(b, basis, 2)
    c = basis.c
    return c @ b @ c.T


def dct2d_inverse(s, basis):
    s = _check(s, basis, 2)
    c = basis.c
    return c.T @ s @ c


def dct3d_forward(b, basis):
    """3D DCT of trailing ``(row, col, layer)`` cubes.

    Layers are indexed by the last axis, which is time for video and slice
    position for volumes.
    """
    b = _check(b, basis, 3)
    c = basis.c
    # per-layer 2D transform over (row, col), then 1D along the layer axis
    t2 = np.einsum("um,...mnp,vn->...uvp", c, b, c, optimize=True)
    return t2 @ c.T


def dct3d_inverse(t, basis):
    t = _check(t, basis, 3)
    c = basis.c
    x2 = t @ c
    return np.einsum("um,...uvp,vn->...mnp", c, x2, c, optimize=True)


@lru_cache(maxsize=8)
def _direct_kernel(n, ndim):
    # kernel[u..., m...] built elementwise from the cosine formula, without
    # going through dct_basis
    k = np.empty((n, n))
    for u in range(n):
        for m in range(n):
            k[u, m] = alpha(u, n) * math.cos(math.pi / (2 * n) * (2 * m + 1) * u)
    if ndim == 2:
        full = np.einsum("um,vn->uvmn", k, k)
    else:
        full = np.einsum("um,vn,wp->uvwmnp", k, k, k)
    full.setflags(write=False)
    return full


def dct_direct_oracle(b, ndim=None):
    """Reference DCT by literal summation over every sample, for tests only.

    Each output coefficient is the full sum of ``x[m, n(, p)]`` times the
    product of cosine kernels; no factorisation into 1D passes is used.
    ``ndim`` defaults to ``b.ndim`` (2 or 3); pass it explicitly when *b*
    carries leading batch axes.
    """
    b = np.asarray(b, dtype=np.float64)
    if ndim is None:
        ndim = b.ndim
    if ndim not in (2, 3) or b.ndim < ndim:
        raise InvalidArgumentError(f"unsupported oracle dimensionality {ndim}")
    n = b.shape[-1]
    if any(s != n for s in b.shape[-ndim:]):
        raise InvalidArgumentError(f"not a square or cubic block: {b.shape}")
    if n > 8:
        raise InvalidArgumentError("direct oracle limited to n <= 8")
    flat_k = _direct_kernel(n, ndim).reshape(n**ndim, n**ndim)
    lead = b.shape[: b.ndim - ndim]
    return (b.reshape(lead + (n**ndim,)) @ flat_k.T).reshape(b.shape)
