"""In-memory sample containers passed between readers, codec and metrics."""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DataRangeError, InvalidArgumentError


def _checked(samples, bit_depth, ndim):
    a = np.asarray(samples)
    if a.ndim != ndim or 0 in a.shape:
        raise InvalidArgumentError(f"expected a non-empty {ndim}D sample array, got {a.shape}")
    if bit_depth not in (8, 12, 16):
        raise InvalidArgumentError(f"unsupported bit depth {bit_depth}")
    if a.dtype.kind == "f":
        raise InvalidArgumentError("samples must be integers")
    if a.min() < 0 or a.max() > (1 << bit_depth) - 1:
        raise DataRangeError(f"samples outside [0, {(1 << bit_depth) - 1}]")
    return a.astype(np.uint16, copy=False)


def _same(a, b, fields):
    if type(a) is not type(b):
        return NotImplemented
    return all(
        np.array_equal(x, y) if isinstance(x, np.ndarray) else x == y
        for x, y in ((getattr(a, f), getattr(b, f)) for f in fields)
    )


@dataclass(eq=False)
class Frame:
    """A single plane, ``samples[row, col]``."""

    samples: np.ndarray
    bit_depth: int = 8

    def __post_init__(self):
        self.samples = _checked(self.samples, self.bit_depth, 2)

    def __eq__(self, other):
        return _same(self, other, ("samples", "bit_depth"))

    @property
    def height(self):
        return self.samples.shape[0]

    @property
    def width(self):
        return self.samples.shape[1]


@dataclass(eq=False)
class VideoCube:
    """One plane of a video, ``frames[t, row, col]``."""

    frames: np.ndarray
    fps: Fraction = Fraction(30)
    bit_depth: int = 8

    def __post_init__(self):
        self.frames = _checked(self.frames, self.bit_depth, 3)
        self.fps = Fraction(self.fps)

    def __eq__(self, other):
        return _same(self, other, ("frames", "fps", "bit_depth"))

    @property
    def frame_count(self):
        return self.frames.shape[0]

    @property
    def height(self):
        return self.frames.shape[1]

    @property
    def width(self):
        return self.frames.shape[2]


@dataclass(eq=False)
class Volume:
    """Stack of parallel slices, ``slices[s, row, col]``."""

    slices: np.ndarray
    bit_depth: int = 12

    def __post_init__(self):
        self.slices = _checked(self.slices, self.bit_depth, 3)

    def __eq__(self, other):
        return _same(self, other, ("slices", "bit_depth"))

    @property
    def slice_count(self):
        return self.slices.shape[0]

    @property
    def height(self):
        return self.slices.shape[1]

    @property
    def width(self):
        return self.slices.shape[2]
