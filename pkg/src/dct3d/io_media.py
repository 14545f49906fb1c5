"""Readers and writers for YUV4MPEG2 video, binary PGM and raw volumes."""

from dataclasses import dataclass, field
from fractions import Fraction
import json
import os

import numpy as np

from .errors import (
    DataRangeError,
    InvalidArgumentError,
    TruncatedInputError,
    UnsupportedFormatError,
)
from .media import Frame, VideoCube, Volume

Y4M_MAGIC = b"YUV4MPEG2"
CHROMA_420 = ("420", "420jpeg", "420mpeg2", "420paldv")


@dataclass
class Y4mHeader:
    width: int
    height: int
    fps: Fraction = Fraction(30)
    interlace: str = "p"
    aspect: str = "1:1"
    chroma: str = "420jpeg"
    extra: list = field(default_factory=list)

    @property
    def mono(self):
        return self.chroma == "mono"

    @property
    def chroma_dims(self):
        return (self.height + 1) // 2, (self.width + 1) // 2

    def to_line(self):
        fps = Fraction(self.fps)
        parts = [
            Y4M_MAGIC.decode(),
            f"W{self.width}",
            f"H{self.height}",
            f"F{fps.numerator}:{fps.denominator}",
            f"I{self.interlace}",
            f"A{self.aspect}",
            f"C{self.chroma}",
        ] + list(self.extra)
        return (" ".join(parts) + "\n").encode("ascii")


def parse_y4m_header(line):
    tokens = line.decode("ascii", errors="replace").split()
    if not tokens or tokens[0] != "YUV4MPEG2":
        raise UnsupportedFormatError("missing YUV4MPEG2 signature")
    width = height = None
    fps = Fraction(30)
    interlace, aspect, chroma = "p", "1:1", "420jpeg"
    extra = []
    for tok in tokens[1:]:
        tag, val = tok[0], tok[1:]
        try:
            if tag == "W":
                width = int(val)
            elif tag == "H":
                height = int(val)
            elif tag == "F":
                num, den = val.split(":")
                fps = Fraction(int(num), int(den))
            elif tag == "I":
                interlace = val
            elif tag == "A":
                aspect = val
            elif tag == "C":
                chroma = val
            else:
                extra.append(tok)
        except (ValueError, ZeroDivisionError):
            raise UnsupportedFormatError(f"malformed header parameter {tok!r}") from None
    if not width or not height or width <= 0 or height <= 0:
        raise UnsupportedFormatError("header lacks positive W and H")
    if chroma not in CHROMA_420 and chroma != "mono":
        raise UnsupportedFormatError(f"unsupported chroma format C{chroma}")
    return Y4mHeader(width, height, fps, interlace, aspect, chroma, extra)


def read_y4m(source):
    """Parse a YUV4MPEG2 stream.

    *source* is a path, bytes, or a binary file object.  Returns the header
    and a tuple of ``VideoCube`` planes: ``(Y,)`` for mono streams, else
    ``(Y, Cb, Cr)`` with chroma at its native 4:2:0 size.  Chroma siting
    variants are all treated alike.
    """
    data = _read_all(source)
    if not data:
        raise TruncatedInputError("empty stream")
    if not data.startswith(Y4M_MAGIC):
        raise UnsupportedFormatError("missing YUV4MPEG2 signature")
    nl = data.find(b"\n")
    if nl < 0:
        raise TruncatedInputError("header line not terminated")
    header = parse_y4m_header(data[:nl])
    pos = nl + 1
    h, w = header.height, header.width
    ch, cw = header.chroma_dims
    sizes = [h * w] if header.mono else [h * w, ch * cw, ch * cw]
    shapes = [(h, w)] if header.mono else [(h, w), (ch, cw), (ch, cw)]
    frame_bytes = sum(sizes)
    planes = [[] for _ in sizes]
    while pos < len(data):
        nl = data.find(b"\n", pos)
        if nl < 0:
            raise TruncatedInputError("frame header not terminated")
        if not data[pos:nl].startswith(b"FRAME"):
            raise UnsupportedFormatError(f"expected FRAME marker at byte {pos}")
        pos = nl + 1
        if pos + frame_bytes > len(data):
            raise TruncatedInputError(f"frame {len(planes[0])} is cut short")
        for plane, size, shape in zip(planes, sizes, shapes):
            plane.append(np.frombuffer(data, np.uint8, size, pos).reshape(shape))
            pos += size
    if not planes[0]:
        raise TruncatedInputError("stream contains no frames")
    cubes = tuple(VideoCube(np.stack(p), header.fps, 8) for p in planes)
    return header, cubes


def write_y4m(planes, header):
    """Serialize ``(Y,)`` or ``(Y, Cb, Cr)`` planes to YUV4MPEG2 bytes."""
    planes = [p.frames if isinstance(p, VideoCube) else np.asarray(p) for p in planes]
    expected = 1 if header.mono else 3
    if len(planes) != expected:
        raise InvalidArgumentError(f"C{header.chroma} needs {expected} planes, got {len(planes)}")
    dims = [(header.height, header.width)] + [header.chroma_dims] * (expected - 1)
    count = planes[0].shape[0]
    for p, d in zip(planes, dims):
        if p.ndim != 3 or p.shape[1:] != d or p.shape[0] != count:
            raise InvalidArgumentError(f"plane shape {p.shape} inconsistent with header {d}")
        if p.size and p.max() > 255:
            raise DataRangeError("YUV4MPEG2 output is 8-bit")
    out = [header.to_line()]
    for t in range(count):
        out.append(b"FRAME\n")
        out.extend(p[t].astype(np.uint8).tobytes() for p in planes)
    return b"".join(out)


def _read_all(source):
    if isinstance(source, (bytes, bytearray, memoryview)):
        return bytes(source)
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            return fh.read()
    return source.read()


def _pgm_tokens(data, count):
    # whitespace-separated header fields with '#' comments
    tokens = []
    pos = 0
    while len(tokens) < count:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise UnsupportedFormatError("PGM header is incomplete")
        tokens.append(data[start:pos])
    return tokens, pos


def read_pgm(source):
    """Read a binary (P5) PGM with maxval 255 (8-bit) or 4095 (12-bit)."""
    data = _read_all(source)
    if data[:2] != b"P5":
        raise UnsupportedFormatError("only binary P5 PGM is supported")
    tokens, pos = _pgm_tokens(data, 4)
    try:
        width, height, maxval = (int(t) for t in tokens[1:4])
    except ValueError:
        raise UnsupportedFormatError("malformed PGM header") from None
    if width <= 0 or height <= 0 or maxval not in (255, 4095):
        raise UnsupportedFormatError(f"unsupported PGM geometry/maxval {width}x{height}/{maxval}")
    pos += 1  # single whitespace byte before the raster
    if maxval == 255:
        need, dtype, depth = width * height, np.uint8, 8
    else:
        need, dtype, depth = 2 * width * height, ">u2", 12
    if len(data) - pos < need:
        raise TruncatedInputError("PGM raster is cut short")
    samples = np.frombuffer(data, dtype, width * height, pos).reshape(height, width)
    if samples.max() > maxval:
        raise DataRangeError("PGM sample exceeds maxval")
    return Frame(samples.astype(np.uint16), depth)


def write_pgm(frame):
    maxval = (1 << frame.bit_depth) - 1
    if maxval not in (255, 4095):
        raise InvalidArgumentError(f"PGM output supports 8 or 12 bits, not {frame.bit_depth}")
    header = f"P5\n{frame.width} {frame.height}\n{maxval}\n".encode("ascii")
    if maxval == 255:
        raster = frame.samples.astype(np.uint8).tobytes()
    else:
        raster = frame.samples.astype(">u2").tobytes()
    return header + raster


@dataclass
class RawVolumeSpec:
    """Sidecar description of a raw slice stack.

    ``files`` lists one file per slice or a single blob holding all slices,
    resolved relative to ``base_dir``.  Samples wider than 8 bits occupy
    16-bit words.
    """

    width: int
    height: int
    slices: int
    bit_depth: int = 12
    byte_order: str = "little"
    files: list = field(default_factory=list)
    base_dir: str = "."

    def __post_init__(self):
        if self.byte_order not in ("little", "big"):
            raise InvalidArgumentError(f"byte order must be little or big, not {self.byte_order!r}")
        if self.width <= 0 or self.height <= 0 or self.slices <= 0:
            raise InvalidArgumentError("volume dimensions must be positive")
        if self.bit_depth not in (8, 12, 16):
            raise InvalidArgumentError(f"unsupported bit depth {self.bit_depth}")

    @property
    def dtype(self):
        if self.bit_depth <= 8:
            return np.dtype(np.uint8)
        return np.dtype("<u2" if self.byte_order == "little" else ">u2")

    @property
    def slice_bytes(self):
        return self.width * self.height * self.dtype.itemsize

    def to_json(self):
        return json.dumps(
            {
                "width": self.width,
                "height": self.height,
                "slices": self.slices,
                "bit_depth": self.bit_depth,
                "byte_order": self.byte_order,
                "files": list(self.files),
            },
            indent=2,
        ) + "\n"

    @classmethod
    def from_json(cls, text, base_dir="."):
        try:
            d = json.loads(text)
            return cls(
                int(d["width"]), int(d["height"]), int(d["slices"]),
                int(d.get("bit_depth", 12)), d.get("byte_order", "little"),
                list(d.get("files", [])), base_dir,
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidArgumentError):
                raise
            raise UnsupportedFormatError(f"bad raw volume sidecar: {exc}") from None

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(fh.read(), os.path.dirname(os.path.abspath(path)))


def read_raw_volume(spec, blobs=None):
    """Load the slices described by *spec*.

    *blobs* optionally supplies the file contents in memory (same order as
    ``spec.files``) instead of reading from disk.
    """
    if blobs is None:
        blobs = []
        for name in spec.files:
            with open(os.path.join(spec.base_dir, name), "rb") as fh:
                blobs.append(fh.read())
    if not blobs:
        raise InvalidArgumentError("raw volume lists no files")
    total = spec.slice_bytes * spec.slices
    if len(blobs) == 1:
        if len(blobs[0]) != total:
            raise InvalidArgumentError(f"blob holds {len(blobs[0])} bytes, expected {total}")
        data = blobs[0]
    else:
        if len(blobs) != spec.slices:
            raise InvalidArgumentError(f"{len(blobs)} slice files for {spec.slices} slices")
        for i, b in enumerate(blobs):
            if len(b) != spec.slice_bytes:
                raise InvalidArgumentError(f"slice {i} holds {len(b)} bytes, expected {spec.slice_bytes}")
        data = b"".join(blobs)
    samples = np.frombuffer(data, spec.dtype).reshape(spec.slices, spec.height, spec.width)
    if samples.max() > (1 << spec.bit_depth) - 1:
        raise DataRangeError(f"sample exceeds {spec.bit_depth}-bit range")
    return Volume(samples.astype(np.uint16), spec.bit_depth)


def write_raw_volume(volume, byte_order="little", blob_name="volume.raw"):
    """Return ``(spec, blob)`` for a single-blob raw volume."""
    spec = RawVolumeSpec(volume.width, volume.height, volume.slice_count,
                         volume.bit_depth, byte_order, [blob_name])
    return spec, volume.slices.astype(spec.dtype).tobytes()
