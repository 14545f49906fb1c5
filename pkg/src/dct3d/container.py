"""The '3DCT' stream container.

Layout, all integers little-endian::

    magic      4s   b"3DCT"
    version    B
    mode       B    0 still, 1 video-mono, 2 video-color, 3 volume
    width      I    original (unpadded) luma width
    height     I
    frames     I    frame / slice count (1 for stills)
    fps_num    H    0 when there is no frame rate
    fps_den    H
    q          B
    q3_scale   f    float32
    bit_depth  B
    rescale    B    1 if samples were mapped to 8 bits before coding
    map_lo     f    float32 sample value mapped to 0
    map_hi     f    float32 sample value mapped to 255

followed by one section per GOP (a single section for stills)::

    components B
    per component: length I, then ``length`` payload bytes
"""

from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
import struct

from .errors import CorruptStreamError, TruncatedStreamError

MAGIC = b"3DCT"
VERSION = 1
BLOCK = 8

_HEADER = struct.Struct("<4sBBIIIHHBfBBff")


class Mode(IntEnum):
    STILL = 0
    VIDEO_MONO = 1
    VIDEO_COLOR = 2
    VOLUME = 3

    @property
    def label(self):
        return self.name.lower().replace("_", "-")

    @classmethod
    def from_label(cls, label):
        return cls[label.upper().replace("-", "_")]


def f32(x):
    return struct.unpack("<f", struct.pack("<f", x))[0]


@dataclass
class StreamHeader:
    mode: Mode
    width: int
    height: int
    frames: int = 1
    fps_num: int = 0
    fps_den: int = 1
    q: int = 50
    q3_scale: float = 1.0
    bit_depth: int = 8
    rescale: bool = False
    map_lo: float = 0.0
    map_hi: float = 255.0
    version: int = VERSION

    def __post_init__(self):
        self.mode = Mode(self.mode)
        self.q3_scale = f32(self.q3_scale)
        self.map_lo = f32(self.map_lo)
        self.map_hi = f32(self.map_hi)

    @property
    def fps(self):
        return Fraction(self.fps_num, self.fps_den) if self.fps_num else None

    @property
    def gop_count(self):
        if self.mode is Mode.STILL:
            return 1
        return -(-self.frames // BLOCK)

    @property
    def components(self):
        return 3 if self.mode is Mode.VIDEO_COLOR else 1

    @property
    def padded_dims(self):
        """``(frames, height, width)`` after padding to whole blocks."""
        pad = lambda v: -(-v // BLOCK) * BLOCK  # noqa: E731
        frames = 1 if self.mode is Mode.STILL else pad(self.frames)
        return frames, pad(self.height), pad(self.width)

    def pack(self):
        return _HEADER.pack(
            MAGIC, self.version, int(self.mode), self.width, self.height, self.frames,
            self.fps_num, self.fps_den, self.q, self.q3_scale, self.bit_depth,
            int(self.rescale), self.map_lo, self.map_hi,
        )

    @classmethod
    def unpack(cls, data):
        if len(data) < _HEADER.size:
            raise TruncatedStreamError("stream shorter than its header")
        (magic, version, mode, width, height, frames, fps_num, fps_den, q, q3_scale,
         bit_depth, rescale, lo, hi) = _HEADER.unpack_from(data)
        if magic != MAGIC:
            raise CorruptStreamError(f"bad magic {magic!r}")
        if version != VERSION:
            raise CorruptStreamError(f"unsupported stream version {version}")
        try:
            mode = Mode(mode)
        except ValueError:
            raise CorruptStreamError(f"unknown mode byte {mode}") from None
        if width == 0 or height == 0 or frames == 0 or fps_den == 0 or not 1 <= q <= 100:
            raise CorruptStreamError("header fields out of range")
        return cls(mode, width, height, frames, fps_num, fps_den, q, q3_scale,
                   bit_depth, bool(rescale), lo, hi, version)


HEADER_SIZE = _HEADER.size


@dataclass
class EncodedStream:
    """Header plus ``gops[g][component]`` payload byte strings."""

    header: StreamHeader
    gops: list = field(default_factory=list)

    def to_bytes(self):
        out = [self.header.pack()]
        for gop in self.gops:
            out.append(struct.pack("<B", len(gop)))
            for payload in gop:
                out.append(struct.pack("<I", len(payload)))
                out.append(payload)
        return b"".join(out)

    @classmethod
    def from_bytes(cls, data):
        data = bytes(data)
        header = StreamHeader.unpack(data)
        pos = HEADER_SIZE
        gops = []
        for g in range(header.gop_count):
            if pos + 1 > len(data):
                raise TruncatedStreamError(f"stream ends before GOP {g}")
            count = data[pos]
            pos += 1
            if count != header.components:
                raise CorruptStreamError(
                    f"GOP {g} has {count} components, header implies {header.components}"
                )
            payloads = []
            for c in range(count):
                if pos + 4 > len(data):
                    raise TruncatedStreamError(f"stream ends in GOP {g} component {c}")
                (length,) = struct.unpack_from("<I", data, pos)
                pos += 4
                if pos + length > len(data):
                    raise TruncatedStreamError(f"payload of GOP {g} component {c} is cut short")
                payloads.append(data[pos : pos + length])
                pos += length
            gops.append(payloads)
        if pos != len(data):
            raise CorruptStreamError(f"{len(data) - pos} trailing bytes after last GOP")
        return cls(header, gops)

    @property
    def payload_bytes(self):
        return sum(len(p) for gop in self.gops for p in gop)
