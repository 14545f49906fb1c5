import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from dct3d.errors import InvalidArgumentError
from dct3d.scan import deserialize, layered_order, serialize, zigzag_order

# JPEG zig-zag: position of each (row, col) in the scan, written out row by row
JPEG_ZIGZAG_POSITIONS = [
    [0, 1, 5, 6, 14, 15, 27, 28],
    [2, 4, 7, 13, 16, 26, 29, 42],
    [3, 8, 12, 17, 25, 30, 41, 43],
    [9, 11, 18, 24, 31, 40, 44, 53],
    [10, 19, 23, 32, 39, 45, 52, 54],
    [20, 22, 33, 38, 46, 51, 55, 60],
    [21, 34, 37, 47, 50, 56, 59, 61],
    [35, 36, 48, 49, 57, 58, 62, 63],
]


def test_zigzag_first_cells():
    zz = zigzag_order(8)
    assert [tuple(p) for p in zz[:6]] == [(0, 0), (0, 1), (1, 0), (2, 0), (1, 1), (0, 2)]
    assert tuple(zz[63]) == (7, 7)


def test_zigzag_matches_jpeg_table():
    zz = zigzag_order(8)
    for pos, (r, c) in enumerate(zz):
        assert JPEG_ZIGZAG_POSITIONS[r][c] == pos


def test_zigzag_n1():
    assert [tuple(p) for p in zigzag_order(1)] == [(0, 0)]


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 11])
def test_zigzag_is_bijection_on_adjacent_diagonals(n):
    zz = zigzag_order(n)
    assert sorted(map(tuple, zz)) == [(r, c) for r in range(n) for c in range(n)]
    d = zz.sum(axis=1)
    assert ((np.diff(d) == 0) | (np.diff(d) == 1)).all()


def test_layered_order_examples():
    lo = layered_order(8)
    assert tuple(lo[0]) == (0, 0, 0)
    assert tuple(lo[64]) == (0, 0, 1)
    assert tuple(lo[511]) == (7, 7, 7)
    assert [tuple(p) for p in layered_order(2)] == [
        (0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 0),
        (0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1),
    ]


@pytest.mark.parametrize("n", [1, 2, 4, 8])
def test_layered_order_properties(n):
    lo = layered_order(n)
    assert len({tuple(p) for p in lo}) == n**3
    assert (np.diff(lo[:, 2]) >= 0).all()
    zz = zigzag_order(n)
    for k in range(n):
        assert (lo[k * n * n : (k + 1) * n * n, :2] == zz).all()


def test_serialize_examples():
    b = np.zeros((8, 8), int)
    b[0, 0] = 9
    v = serialize(b, zigzag_order(8))
    assert v[0] == 9 and not v[1:].any()
    b = np.zeros((8, 8), int)
    b[1, 0] = 4
    assert np.flatnonzero(serialize(b, zigzag_order(8))).tolist() == [2]


def test_serialize_cube_layer_positions():
    c = np.zeros((8, 8, 8), int)
    c[0, 0, 1] = 5
    c[1, 0, 3] = 6
    v = serialize(c, layered_order(8))
    assert v[64] == 5 and v[3 * 64 + 2] == 6


def test_shape_errors():
    with pytest.raises(InvalidArgumentError):
        serialize(np.zeros((4, 4)), zigzag_order(8))
    with pytest.raises(InvalidArgumentError):
        deserialize(np.zeros(63), zigzag_order(8))
    with pytest.raises(InvalidArgumentError):
        deserialize(np.zeros(64), layered_order(8))


@given(arrays(np.int64, (8, 8), elements=st.integers(-1000, 1000)))
def test_roundtrip_2d(b):
    order = zigzag_order(8)
    assert (deserialize(serialize(b, order), order) == b).all()


@given(arrays(np.int64, (512,), elements=st.integers(-1000, 1000)))
def test_roundtrip_3d(v):
    order = layered_order(8)
    assert (serialize(deserialize(v, order), order) == v).all()


def test_batched():
    rng = np.random.default_rng(0)
    b = rng.integers(-5, 5, (3, 4, 8, 8, 8))
    order = layered_order(8)
    v = serialize(b, order)
    assert v.shape == (3, 4, 512)
    assert (v[2, 1] == serialize(b[2, 1], order)).all()
    assert (deserialize(v, order) == b).all()
