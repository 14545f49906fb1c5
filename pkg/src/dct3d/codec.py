"""Still-image, video and volume pipelines plus their decoders.

Stills are cut into 8x8 blocks and coded with the 2D DCT.  Videos and
volumes are cut into 8x8x8 cubes, eight consecutive frames (one GOP) deep,
and coded with the 3D DCT.  Blocks are visited in row-major order within a
GOP; each GOP/component payload is padded with 1-bits to a whole byte.

Dimensions that are not multiples of 8 are padded by edge replication
(spatially) and by repeating the last frame (temporally); the original
dimensions travel in the header and are cropped back on decode.
"""

from fractions import Fraction
import logging

import numpy as np

from . import entropy, quant, scan, transform
from .container import BLOCK, EncodedStream, Mode, StreamHeader, f32
from .errors import CorruptStreamError, CoverageError, InvalidArgumentError
from .media import Frame, VideoCube, Volume

log = logging.getLogger(__name__)

_BASIS = transform.dct_basis(BLOCK)


def still_steps(q):
    return quant.scale_table(quant.WATSON, quant.quality_scale(q))


def cube_steps(q, q3_scale=1.0, chroma=False):
    table = quant.CHROMA if chroma else quant.WATSON
    return quant.build_q3(table, f32(q3_scale) * quant.quality_scale(q))


def _pad_to_block(a, axes):
    pad = [(0, 0)] * a.ndim
    for ax in axes:
        pad[ax] = (0, -a.shape[ax] % BLOCK)
    return np.pad(a, pad, mode="edge")


def _split_blocks(plane):
    # (H, W) -> (by, bx, 8, 8)
    h, w = plane.shape
    return plane.reshape(h // BLOCK, BLOCK, w // BLOCK, BLOCK).transpose(0, 2, 1, 3)


def _join_blocks(blocks):
    by, bx = blocks.shape[:2]
    return blocks.transpose(0, 2, 1, 3).reshape(by * BLOCK, bx * BLOCK)


def _split_cubes(gop):
    # (8, H, W) frames -> (by, bx, row, col, layer) cubes
    t, h, w = gop.shape
    c = gop.reshape(t, h // BLOCK, BLOCK, w // BLOCK, BLOCK)
    return c.transpose(1, 3, 2, 4, 0)


def _join_cubes(cubes):
    by, bx = cubes.shape[:2]
    return cubes.transpose(4, 0, 2, 1, 3).reshape(BLOCK, by * BLOCK, bx * BLOCK)


def _reconstruct(x, bit_depth):
    return np.clip(quant.round_half_away(x), 0, (1 << bit_depth) - 1)


def _encode_levels(vectors, where):
    """Entropy-code serialized level vectors into one byte payload."""
    writer = entropy.BitWriter()
    tables = entropy.STANDARD_TABLES
    for idx, v in enumerate(vectors):
        try:
            writer.write(entropy.encode_block(entropy.tokenize(v), tables))
        except CoverageError as exc:
            raise CoverageError(str(exc), block=(*where, idx)) from None
    return writer.getvalue()


def _decode_levels(payload, count, block_len, where):
    reader = entropy.BitReader(payload)
    tables = entropy.STANDARD_TABLES
    out = np.empty((count, block_len), dtype=np.int64)
    for idx in range(count):
        try:
            out[idx] = entropy.detokenize(entropy.decode_block(reader, tables, block_len), block_len)
        except CorruptStreamError as exc:
            raise type(exc)(str(exc), block=(*where, idx)) from None
    rest = reader.bits[reader.pos :]
    if len(rest) >= 8 or rest.count("0"):
        raise CorruptStreamError(f"unexpected data after last block of payload {where}")
    return out


def levels_for_still(plane, steps):
    """Quantized zig-zag vectors of every block, shape ``(by*bx, 64)``."""
    blocks = _split_blocks(_pad_to_block(np.asarray(plane, dtype=np.float64), (0, 1)))
    coeffs = transform.dct2d_forward(blocks, _BASIS)
    levels = quant.quantize(coeffs, steps)
    return scan.serialize(levels, scan.zigzag_order(BLOCK)).reshape(-1, BLOCK * BLOCK)


def levels_for_gops(frames, steps):
    """Yield ``(gop_index, (ncubes, 512) level vectors)`` for a frame stack."""
    padded = _pad_to_block(np.asarray(frames, dtype=np.float64), (0, 1, 2))
    order = scan.layered_order(BLOCK)
    for g in range(padded.shape[0] // BLOCK):
        cubes = _split_cubes(padded[g * BLOCK : (g + 1) * BLOCK])
        levels = quant.quantize(transform.dct3d_forward(cubes, _BASIS), steps)
        yield g, scan.serialize(levels, order).reshape(-1, BLOCK**3)


def encode_still(frame, q=50):
    if not isinstance(frame, Frame):
        frame = Frame(frame)
    header = StreamHeader(Mode.STILL, frame.width, frame.height, 1, q=q,
                          bit_depth=frame.bit_depth)
    vectors = levels_for_still(frame.samples, still_steps(q))
    return EncodedStream(header, [[_encode_levels(vectors, (0, 0))]])


def _decode_still_plane(payload, header, steps):
    _, h, w = header.padded_dims
    count = (h // BLOCK) * (w // BLOCK)
    vectors = _decode_levels(payload, count, BLOCK * BLOCK, (0, 0))
    levels = scan.deserialize(vectors, scan.zigzag_order(BLOCK))
    blocks = transform.dct2d_inverse(quant.dequantize(levels, steps), _BASIS)
    plane = _join_blocks(blocks.reshape(h // BLOCK, w // BLOCK, BLOCK, BLOCK))
    return plane[: header.height, : header.width]


def decode_still(stream):
    stream = _as_stream(stream)
    header = _expect(stream, Mode.STILL)
    plane = _decode_still_plane(stream.gops[0][0], header, still_steps(header.q))
    return Frame(_reconstruct(plane, header.bit_depth), header.bit_depth)


def _encode_planes(planes, steps_list, header):
    """Code parallel frame stacks (one per component) GOP by GOP."""
    gens = [levels_for_gops(p, s) for p, s in zip(planes, steps_list)]
    gops = []
    for per_comp in zip(*gens):
        g = per_comp[0][0]
        gops.append([_encode_levels(v, (g, c)) for c, (_, v) in enumerate(per_comp)])
    return EncodedStream(header, gops)


def _decode_planes(stream, dims_list, steps_list, bit_depth):
    """Inverse of ``_encode_planes``; returns reconstructed real-valued stacks."""
    order = scan.layered_order(BLOCK)
    frames = stream.header.frames
    outs = []
    for c, ((h, w), steps) in enumerate(zip(dims_list, steps_list)):
        ph, pw = -(-h // BLOCK) * BLOCK, -(-w // BLOCK) * BLOCK
        by, bx = ph // BLOCK, pw // BLOCK
        out = np.empty((len(stream.gops) * BLOCK, ph, pw))
        for g, gop in enumerate(stream.gops):
            vectors = _decode_levels(gop[c], by * bx, BLOCK**3, (g, c))
            levels = scan.deserialize(vectors, order)
            cubes = transform.dct3d_inverse(quant.dequantize(levels, steps), _BASIS)
            out[g * BLOCK : (g + 1) * BLOCK] = _join_cubes(cubes.reshape(by, bx, BLOCK, BLOCK, BLOCK))
        outs.append(_reconstruct(out[:frames, :h, :w], bit_depth))
    return outs


def _fps_fields(fps):
    fps = Fraction(fps).limit_denominator(0xFFFF)
    if fps.numerator > 0xFFFF:
        raise InvalidArgumentError(f"frame rate {fps} does not fit the header")
    return fps.numerator, fps.denominator


def encode_video_mono(video, q=50, q3_scale=1.0):
    if not isinstance(video, VideoCube):
        video = VideoCube(video)
    num, den = _fps_fields(video.fps)
    header = StreamHeader(Mode.VIDEO_MONO, video.width, video.height, video.frame_count,
                          num, den, q, q3_scale, video.bit_depth)
    return _encode_planes([video.frames], [cube_steps(q, header.q3_scale)], header)


def decode_video_mono(stream):
    stream = _as_stream(stream)
    header = _expect(stream, Mode.VIDEO_MONO)
    (frames,) = _decode_planes(stream, [(header.height, header.width)],
                               [cube_steps(header.q, header.q3_scale)], header.bit_depth)
    return VideoCube(frames, header.fps, header.bit_depth)


def chroma_dims(height, width):
    return (height + 1) // 2, (width + 1) // 2


def subsample_420(frame):
    """Halve both dimensions by averaging 2x2 quads (edge-replicated if odd)."""
    samples = frame.samples if isinstance(frame, Frame) else np.asarray(frame)
    lead = samples.shape[:-2]
    h, w = samples.shape[-2:]
    pad = [(0, 0)] * len(lead) + [(0, h % 2), (0, w % 2)]
    p = np.pad(samples.astype(np.float64), pad, mode="edge")
    quads = p.reshape(lead + (p.shape[-2] // 2, 2, p.shape[-1] // 2, 2))
    out = quant.round_half_away(quads.mean(axis=(-3, -1)))
    if isinstance(frame, Frame):
        return Frame(out, frame.bit_depth)
    return out


def upsample_420(frame, height, width):
    """Pixel replication back to ``height x width``."""
    samples = frame.samples if isinstance(frame, Frame) else np.asarray(frame)
    up = samples.repeat(2, axis=-2).repeat(2, axis=-1)[..., :height, :width]
    if isinstance(frame, Frame):
        return Frame(up, frame.bit_depth)
    return up


def encode_video_color(y, cb, cr, q=50, q3_scale=1.0):
    """Code Y with the luminance cube and Cb/Cr with the chroma cube.

    *cb* and *cr* must already be 4:2:0 subsampled.
    """
    ch = chroma_dims(y.height, y.width)
    for plane in (cb, cr):
        if (plane.height, plane.width) != ch or plane.frame_count != y.frame_count:
            raise InvalidArgumentError(
                f"chroma plane {plane.frame_count}x{plane.height}x{plane.width} does not "
                f"match 4:2:0 of luma {y.frame_count}x{y.height}x{y.width}"
            )
    num, den = _fps_fields(y.fps)
    header = StreamHeader(Mode.VIDEO_COLOR, y.width, y.height, y.frame_count,
                          num, den, q, q3_scale, y.bit_depth)
    luma = cube_steps(q, header.q3_scale)
    chroma = cube_steps(q, header.q3_scale, chroma=True)
    return _encode_planes([y.frames, cb.frames, cr.frames], [luma, chroma, chroma], header)


def decode_video_color(stream):
    stream = _as_stream(stream)
    header = _expect(stream, Mode.VIDEO_COLOR)
    luma = cube_steps(header.q, header.q3_scale)
    chroma = cube_steps(header.q, header.q3_scale, chroma=True)
    ch = chroma_dims(header.height, header.width)
    planes = _decode_planes(stream, [(header.height, header.width), ch, ch],
                            [luma, chroma, chroma], header.bit_depth)
    return tuple(VideoCube(p, header.fps, header.bit_depth) for p in planes)


def _rescale_map(slices):
    lo = f32(float(slices.min()))
    hi = f32(float(slices.max()))
    if hi <= lo:
        hi = f32(lo + 1.0)
    return lo, hi


def encode_volume(volume, q=50, q3_scale=1.0, rescale_to_8bit=False):
    """Code a slice stack with the video pipeline along the slice axis.

    With *rescale_to_8bit*, samples are mapped linearly from their
    ``[min, max]`` range onto ``[0, 255]`` and coded as 8-bit data.
    """
    if not isinstance(volume, Volume):
        raise InvalidArgumentError("encode_volume expects a Volume")
    header = StreamHeader(Mode.VOLUME, volume.width, volume.height, volume.slice_count,
                          q=q, q3_scale=q3_scale, bit_depth=volume.bit_depth,
                          rescale=rescale_to_8bit)
    data = volume.slices
    if rescale_to_8bit:
        header.map_lo, header.map_hi = _rescale_map(data)
        data = to_8bit(data, header.map_lo, header.map_hi)
    try:
        return _encode_planes([data], [cube_steps(q, header.q3_scale)], header)
    except CoverageError as exc:
        raise CoverageError(
            f"{exc}; enable 8-bit rescaling or raise q3_scale"
        ) from None


def to_8bit(samples, lo, hi):
    mapped = (np.asarray(samples, dtype=np.float64) - lo) * (255.0 / (hi - lo))
    return np.clip(quant.round_half_away(mapped), 0, 255)


def from_8bit(samples, lo, hi, bit_depth):
    back = np.asarray(samples, dtype=np.float64) * ((hi - lo) / 255.0) + lo
    return np.clip(quant.round_half_away(back), 0, (1 << bit_depth) - 1)


def decode_volume(stream):
    stream = _as_stream(stream)
    header = _expect(stream, Mode.VOLUME)
    depth = 8 if header.rescale else header.bit_depth
    (slices,) = _decode_planes(stream, [(header.height, header.width)],
                               [cube_steps(header.q, header.q3_scale)], depth)
    if header.rescale:
        slices = from_8bit(slices, header.map_lo, header.map_hi, header.bit_depth)
    return Volume(slices, header.bit_depth)


def _as_stream(stream):
    if isinstance(stream, (bytes, bytearray, memoryview)):
        return EncodedStream.from_bytes(stream)
    return stream


def _expect(stream, mode):
    if stream.header.mode is not mode:
        raise InvalidArgumentError(
            f"stream is {stream.header.mode.label}, expected {mode.label}"
        )
    if len(stream.gops) != stream.header.gop_count:
        raise CorruptStreamError("GOP count does not match header")
    return stream.header


def decode(stream):
    """Decode any '3DCT' stream according to its header mode."""
    stream = _as_stream(stream)
    return {
        Mode.STILL: decode_still,
        Mode.VIDEO_MONO: decode_video_mono,
        Mode.VIDEO_COLOR: decode_video_color,
        Mode.VOLUME: decode_volume,
    }[stream.header.mode](stream)
