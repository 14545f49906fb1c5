"""Quantization tables, quality scaling and the 8x8x8 quantization cube."""

import io

import numpy as np

from .errors import InvalidArgumentError, UnsupportedSizeError

WATSON = np.array(
    [
        [16, 11, 10, 16, 24, 40, 51, 61],
        [12, 12, 14, 19, 26, 58, 60, 55],
        [14, 13, 16, 24, 40, 57, 69, 56],
        [14, 17, 22, 29, 51, 87, 80, 62],
        [18, 22, 37, 56, 68, 109, 103, 77],
        [24, 35, 55, 64, 81, 104, 113, 92],
        [49, 64, 78, 87, 103, 121, 120, 101],
        [72, 92, 95, 98, 112, 100, 103, 99],
    ],
    dtype=np.int64,
)
WATSON.setflags(write=False)

CHROMA = np.full((8, 8), 99, dtype=np.int64)
CHROMA[:4, :4] = [
    [17, 18, 24, 47],
    [18, 21, 26, 66],
    [24, 26, 56, 99],
    [47, 66, 99, 99],
]
CHROMA.setflags(write=False)

HF_STEP = 100


def watson_table():
    """8x8 luminance steps used for average quality (q=50)."""
    return WATSON.copy()


def chroma_table():
    return CHROMA.copy()


def quality_scale(q):
    """Step multiplier for quality *q* in 1..100.

    ``2 - q/50`` from 50 upward, ``50/q`` below, so q=50 leaves the table
    unchanged and q=100 gives 0 (every step then clamps to 1).
    """
    if isinstance(q, bool) or int(q) != q or not 1 <= q <= 100:
        raise InvalidArgumentError(f"quality must be an integer in 1..100, got {q!r}")
    q = int(q)
    if q >= 50:
        return 2.0 - q / 50.0
    return 50.0 / q


def _round_half_up(x):
    return np.floor(np.asarray(x, dtype=np.float64) + 0.5).astype(np.int64)


def scale_table(steps, factor):
    """Multiply every step by *factor*, round, and clamp to >= 1.

    A factor of 0 (q=100) is accepted and yields all-ones steps.
    """
    if factor < 0:
        raise InvalidArgumentError(f"scale factor must be >= 0, got {factor}")
    scaled = _round_half_up(np.asarray(steps, dtype=np.float64) * factor)
    return np.maximum(scaled, 1)


def _face_value(table, i, j, k):
    # 0-based cell; the spatial face (k == 0) wins over the two temporal
    # faces because the source table is not symmetric
    if k == 0:
        return int(table[i, j])
    if j == 0:
        return int(table[i, k])
    if i == 0:
        return int(table[j, k])
    return None


def build_q3(table=WATSON, scale=1.0, hf_step=HF_STEP):
    """Build the 8x8x8 quantization cube from an 8x8 table.

    Cells on the three coordinate faces copy the table.  Every other cell
    takes the rounded mean of the face cells that share its 1-based index
    sum ``i + j + k``; each face cell counts once even when it sits on two
    faces.  Sums of 18 and above have no face cells and get *hf_step*.
    The finished cube is multiplied by *scale*, rounded, and clamped to >= 1.

    Axis order is ``(row, col, layer)`` matching the cube layout used by the
    3D transform.
    """
    table = np.asarray(table)
    if table.shape != (8, 8):
        raise UnsupportedSizeError(f"quantization cube needs an 8x8 table, got {table.shape}")
    if scale < 0:
        raise InvalidArgumentError(f"scale must be >= 0, got {scale}")
    n = 8
    cube = np.zeros((n, n, n), dtype=np.int64)
    sums = {}
    counts = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                v = _face_value(table, i, j, k)
                if v is None:
                    continue
                cube[i, j, k] = v
                c0 = i + j + k + 3
                sums[c0] = sums.get(c0, 0) + v
                counts[c0] = counts.get(c0, 0) + 1
    for i in range(1, n):
        for j in range(1, n):
            for k in range(1, n):
                c0 = i + j + k + 3
                if c0 in counts:
                    # exact round-half-up of sums[c0] / counts[c0]
                    cube[i, j, k] = (2 * sums[c0] + counts[c0]) // (2 * counts[c0])
                else:
                    cube[i, j, k] = hf_step
    if scale != 1.0:
        cube = scale_table(cube, scale)
    return np.maximum(cube, 1)


def round_half_away(x):
    x = np.asarray(x, dtype=np.float64)
    return (np.sign(x) * np.floor(np.abs(x) + 0.5)).astype(np.int64)


def quantize(coeffs, steps):
    """``round(coeffs / steps)`` with halves rounded away from zero.

    *coeffs* may carry leading batch axes; *steps* matches its trailing axes.
    Quotients are snapped to 9 decimals first so that ties which are exact in
    real arithmetic (2040 / 16) stay ties after a floating-point transform.
    """
    coeffs = np.asarray(coeffs, dtype=np.float64)
    steps = np.asarray(steps)
    if coeffs.shape[coeffs.ndim - steps.ndim :] != steps.shape:
        raise InvalidArgumentError(
            f"coefficient shape {coeffs.shape} does not match steps {steps.shape}"
        )
    return round_half_away(np.round(coeffs / steps, 9))


def dequantize(levels, steps):
    levels = np.asarray(levels)
    steps = np.asarray(steps)
    if levels.shape[levels.ndim - steps.ndim :] != steps.shape:
        raise InvalidArgumentError(
            f"level shape {levels.shape} does not match steps {steps.shape}"
        )
    return levels.astype(np.float64) * steps


def table_to_csv(steps):
    """8 rows of 8 for a table; for a cube, 64 rows layer-major.

    Cube rows run over layer first, then row: line ``8 * k + i`` holds
    ``steps[i, :, k]``.
    """
    steps = np.asarray(steps)
    if steps.ndim == 3:
        rows = np.transpose(steps, (2, 0, 1)).reshape(-1, steps.shape[1])
    elif steps.ndim == 2:
        rows = steps
    else:
        raise InvalidArgumentError(f"cannot export array of shape {steps.shape}")
    buf = io.StringIO()
    np.savetxt(buf, rows, fmt="%d", delimiter=",")
    return buf.getvalue()


def table_from_csv(text):
    rows = np.loadtxt(io.StringIO(text), delimiter=",", dtype=np.int64, ndmin=2)
    n = rows.shape[1]
    if rows.shape[0] == n:
        return rows
    if rows.shape[0] == n * n:
        return np.transpose(rows.reshape(n, n, n), (1, 2, 0))
    raise InvalidArgumentError(f"CSV of shape {rows.shape} is neither a table nor a cube")
