"""PSNR, rate and coefficient statistics for coded media."""

from dataclasses import dataclass, field
from fractions import Fraction
import math

import numpy as np

from . import codec, transform
from .container import BLOCK, Mode
from .errors import InvalidArgumentError
from .media import Frame, VideoCube, Volume


def _samples(x):
    if isinstance(x, Frame):
        return x.samples
    if isinstance(x, VideoCube):
        return x.frames
    if isinstance(x, Volume):
        return x.slices
    return np.asarray(x)


def mse(a, b):
    a, b = _samples(a), _samples(b)
    if a.shape != b.shape:
        raise InvalidArgumentError(f"shape mismatch {a.shape} vs {b.shape}")
    d = a.astype(np.float64) - b.astype(np.float64)
    return float(np.mean(d * d))


def psnr(a, b, peak=255):
    """``10 log10(peak^2 / MSE)`` over all samples; ``inf`` when identical."""
    m = mse(a, b)
    if m == 0:
        return math.inf
    return 10.0 * math.log10(peak * peak / m)


def bytes_per_sample(bit_depth):
    return 1 if bit_depth <= 8 else 2


def bitrate_mbps(stream_bytes, frames, fps):
    """Megabits (10^6) per second of a stream covering *frames* at *fps*."""
    if not fps:
        return None
    return stream_bytes * 8 * float(fps) / frames / 1e6


@dataclass
class MetricsReport:
    mode: str
    q: int
    q3_scale: float
    width: int
    height: int
    frames: int
    stream_bytes: int
    original_bytes: int
    samples: int
    psnr_db: dict = field(default_factory=dict)
    bitrate_mbps: float = None
    zero_fraction: float = None
    first_layer_nonzero_fraction: float = None

    @property
    def compression_ratio(self):
        return Fraction(self.original_bytes, self.stream_bytes)

    @property
    def psnr_mean(self):
        if not self.psnr_db:
            return None
        return sum(self.psnr_db.values()) / len(self.psnr_db)

    def lines(self):
        def fmt(v):
            if v is None:
                return "none"
            if isinstance(v, float):
                return "inf" if math.isinf(v) else f"{v:.4f}"
            return str(v)

        items = [
            ("mode", self.mode),
            ("q", self.q),
            ("q3_scale", float(self.q3_scale)),
            ("width", self.width),
            ("height", self.height),
            ("frames", self.frames),
            ("stream_bytes", self.stream_bytes),
            ("original_bytes", self.original_bytes),
            ("compression_ratio", float(self.compression_ratio)),
            ("bits_per_sample", 8 * self.stream_bytes / self.samples),
            ("bitrate_mbps", self.bitrate_mbps),
        ]
        items += [(f"psnr_{name}", v) for name, v in self.psnr_db.items()]
        items += [
            ("psnr_mean", self.psnr_mean),
            ("zero_fraction", self.zero_fraction),
            ("first_layer_nonzero_fraction", self.first_layer_nonzero_fraction),
        ]
        return [f"{k}={fmt(v)}" for k, v in items]

    def format(self):
        return "\n".join(self.lines()) + "\n"


def parse_report(text):
    """Inverse of ``MetricsReport.format`` into a plain ``{key: str}`` dict."""
    out = {}
    for line in text.splitlines():
        if "=" in line:
            k, v = line.split("=", 1)
            out[k.strip()] = v.strip()
    return out


@dataclass
class ComponentStats:
    name: str
    coefficients: int
    zeros: int
    layer_nonzeros: list = None
    diagonal_energy: list = None

    @property
    def zero_fraction(self):
        return self.zeros / self.coefficients

    @property
    def first_layer_nonzero_fraction(self):
        if self.layer_nonzeros is None:
            return None
        total = sum(self.layer_nonzeros)
        return self.layer_nonzeros[0] / total if total else None


def still_stats(frame, q=50, name="y"):
    samples = _samples(frame)
    vectors = codec.levels_for_still(samples, codec.still_steps(q))
    padded = codec._pad_to_block(samples.astype(np.float64), (0, 1))
    coeffs = transform.dct2d_forward(codec._split_blocks(padded), transform.dct_basis(BLOCK))
    diag = np.add.outer(np.arange(BLOCK), np.arange(BLOCK))
    energy = np.bincount(diag.ravel(), weights=(coeffs**2).sum(axis=(0, 1)).ravel())
    total = energy.sum()
    shares = (energy / total).tolist() if total else [0.0] * len(energy)
    return ComponentStats(name, vectors.size, int(np.count_nonzero(vectors == 0)),
                          diagonal_energy=shares)


def cube_stats(frames, steps, name="y"):
    coefficients = zeros = 0
    layers = np.zeros(BLOCK, dtype=np.int64)
    for _, vectors in codec.levels_for_gops(_samples(frames), steps):
        coefficients += vectors.size
        nz = vectors != 0
        zeros += vectors.size - int(nz.sum())
        # layered scan: each consecutive run of 64 positions is one layer
        layers += nz.reshape(-1, BLOCK, BLOCK * BLOCK).sum(axis=(0, 2))
    return ComponentStats(name, coefficients, zeros, layer_nonzeros=layers.tolist())


def media_stats(mode, planes, q=50, q3_scale=1.0, rescale_to_8bit=False):
    """Statistics per component for *planes* as the encoder would see them."""
    mode = Mode(mode)
    if mode is Mode.STILL:
        return [still_stats(planes[0], q)]
    if mode is Mode.VOLUME and rescale_to_8bit:
        data = _samples(planes[0])
        lo, hi = codec._rescale_map(data)
        planes = [codec.to_8bit(data, lo, hi)]
    names = ("y", "cb", "cr")
    out = []
    for c, plane in enumerate(planes):
        steps = codec.cube_steps(q, q3_scale, chroma=c > 0)
        out.append(cube_stats(plane, steps, names[c]))
    return out


def combined_fractions(stats):
    coeffs = sum(s.coefficients for s in stats)
    zeros = sum(s.zeros for s in stats)
    layered = [s.layer_nonzeros for s in stats if s.layer_nonzeros is not None]
    first = None
    if layered:
        total = sum(sum(x) for x in layered)
        first = sum(x[0] for x in layered) / total if total else None
    return zeros / coeffs, first


def format_stats(stats):
    lines = []
    for s in stats:
        lines.append(f"{s.name}.coefficients={s.coefficients}")
        lines.append(f"{s.name}.zero_fraction={s.zero_fraction:.6f}")
        if s.layer_nonzeros is not None:
            total = sum(s.layer_nonzeros)
            for k, count in enumerate(s.layer_nonzeros):
                share = count / total if total else 0.0
                lines.append(f"{s.name}.layer{k}_nonzero_fraction={share:.6f}")
            first = s.first_layer_nonzero_fraction
            lines.append(
                f"{s.name}.first_layer_nonzero_fraction="
                + ("none" if first is None else f"{first:.6f}")
            )
        if s.diagonal_energy is not None:
            for d, share in enumerate(s.diagonal_energy):
                lines.append(f"{s.name}.diagonal{d}_energy_fraction={share:.6f}")
    return "\n".join(lines) + "\n"
