"""Coefficient scan orders: JPEG zig-zag and the layer-by-layer cube scan."""

from functools import lru_cache

import numpy as np

from .errors import InvalidArgumentError


@lru_cache(maxsize=None)
def zigzag_order(n=8):
    """``(n*n, 2)`` array of ``(row, col)`` pairs in zig-zag order.

    Anti-diagonals ``row + col = d`` are walked in turn with alternating
    direction, starting ``(0,0), (0,1), (1,0), (2,0), (1,1), (0,2)``.
    """
    if n < 1:
        raise InvalidArgumentError(f"block size must be >= 1, got {n}")
    order = []
    for d in range(2 * n - 1):
        cells = [(r, d - r) for r in range(max(0, d - n + 1), min(d, n - 1) + 1)]
        # odd diagonals run top-right to bottom-left, even ones the reverse
        if d % 2 == 0:
            cells.reverse()
        order.extend(cells)
    out = np.array(order, dtype=np.intp)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def layered_order(n=8):
    """``(n**3, 3)`` array of ``(row, col, layer)`` triples.

    The 2D zig-zag of layer 0, then of layer 1, and so on.
    """
    zz = zigzag_order(n)
    out = np.array(
        [(r, c, k) for k in range(n) for r, c in zz], dtype=np.intp
    ).reshape(-1, 3)
    out.setflags(write=False)
    return out


def _flat_index(order):
    order = np.asarray(order)
    ndim = order.shape[1]
    n = int(round(len(order) ** (1.0 / ndim)))
    return np.ravel_multi_index(tuple(order.T), (n,) * ndim), n, ndim


def serialize(block, order):
    """Flatten the trailing block axes of *block* following *order*."""
    block = np.asarray(block)
    flat, n, ndim = _flat_index(order)
    if block.ndim < ndim or block.shape[block.ndim - ndim :] != (n,) * ndim:
        raise InvalidArgumentError(
            f"block shape {block.shape} does not match a {ndim}D order of size {n}"
        )
    lead = block.shape[: block.ndim - ndim]
    return block.reshape(lead + (n**ndim,))[..., flat]


def deserialize(v, order):
    v = np.asarray(v)
    flat, n, ndim = _flat_index(order)
    if v.ndim < 1 or v.shape[-1] != n**ndim:
        raise InvalidArgumentError(f"vector length {v.shape[-1:]} != {n**ndim}")
    out = np.empty_like(v)
    out[..., flat] = v
    return out.reshape(v.shape[:-1] + (n,) * ndim)
