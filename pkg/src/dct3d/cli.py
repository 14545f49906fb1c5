"""Command-line front end: ``dct3d encode|decode|stats|tables``.

Exit codes: 0 success, 2 usage, 3 I/O failure, 4 unreadable or invalid
input media, 5 corrupt or truncated stream, 6 coefficient outside the
Huffman tables (quantization too fine for the sample range).
"""

import argparse
import logging
import os
import sys

from . import codec, entropy, io_media, metrics, quant
from .container import EncodedStream, Mode
from .errors import (
    CodecError,
    CorruptStreamError,
    CoverageError,
    DataRangeError,
    InvalidArgumentError,
    UnsupportedFormatError,
)
from .media import Frame, Volume

log = logging.getLogger("dct3d")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_INPUT = 4
EXIT_CORRUPT = 5
EXIT_RANGE = 6

MODES = [m.label for m in Mode]


def load_media(mode, path):
    """Read *path* as the input for *mode*; returns ``(planes, fps)``."""
    mode = Mode(mode)
    if mode is Mode.STILL:
        return [io_media.read_pgm(path)], None
    if mode is Mode.VOLUME:
        spec = io_media.RawVolumeSpec.load(path)
        return [io_media.read_raw_volume(spec)], None
    header, planes = io_media.read_y4m(path)
    if mode is Mode.VIDEO_MONO:
        return [planes[0]], header.fps
    if header.mono:
        raise UnsupportedFormatError("video-color needs a 4:2:0 stream, got Cmono")
    return list(planes), header.fps


def encode_planes(mode, planes, q, q3_scale, rescale):
    mode = Mode(mode)
    if mode is Mode.STILL:
        return codec.encode_still(planes[0], q)
    if mode is Mode.VIDEO_MONO:
        return codec.encode_video_mono(planes[0], q, q3_scale)
    if mode is Mode.VIDEO_COLOR:
        return codec.encode_video_color(*planes, q=q, q3_scale=q3_scale)
    return codec.encode_volume(planes[0], q, q3_scale, rescale)


def _as_list(decoded):
    return list(decoded) if isinstance(decoded, tuple) else [decoded]


def build_report(mode, planes, stream_bytes, decoded=None, q=50, q3_scale=1.0,
                 rescale=False, fps=None, with_stats=True):
    """Assemble a ``MetricsReport`` for coded *planes*."""
    mode = Mode(mode)
    first = planes[0]
    depth = first.bit_depth
    samples = sum(metrics._samples(p).size for p in planes)
    original = samples * metrics.bytes_per_sample(depth)
    frames = 1 if isinstance(first, Frame) else metrics._samples(first).shape[0]
    height, width = metrics._samples(first).shape[-2:]
    report = metrics.MetricsReport(
        mode=mode.label, q=q, q3_scale=q3_scale, width=width, height=height,
        frames=frames, stream_bytes=stream_bytes, original_bytes=original, samples=samples,
        bitrate_mbps=metrics.bitrate_mbps(stream_bytes, frames, fps),
    )
    if decoded is not None:
        names = ("y", "cb", "cr") if len(planes) == 3 else ("y",)
        peak = (1 << depth) - 1
        for name, a, b in zip(names, planes, _as_list(decoded)):
            report.psnr_db[name] = metrics.psnr(a, b, peak)
    if with_stats:
        stats = metrics.media_stats(mode, planes, q, q3_scale, rescale)
        report.zero_fraction, report.first_layer_nonzero_fraction = metrics.combined_fractions(stats)
    return report


def write_decoded(mode, decoded, path, header):
    mode = Mode(mode)
    if mode is Mode.STILL:
        data = {path: io_media.write_pgm(decoded)}
    elif mode is Mode.VOLUME:
        blob = os.path.splitext(os.path.basename(path))[0] + ".raw"
        spec, raw = io_media.write_raw_volume(decoded, blob_name=blob)
        data = {path: spec.to_json().encode(), os.path.join(os.path.dirname(path), blob): raw}
    else:
        planes = _as_list(decoded)
        y4m = io_media.Y4mHeader(header.width, header.height, header.fps or 30,
                                 chroma="mono" if len(planes) == 1 else "420jpeg")
        data = {path: io_media.write_y4m(planes, y4m)}
    for p, content in data.items():
        with open(p, "wb") as fh:
            fh.write(content)


def cmd_encode(args):
    mode = Mode.from_label(args.mode)
    planes, fps = load_media(mode, args.input)
    stream = encode_planes(mode, planes, args.q, args.q3_scale, args.rescale_12bit)
    data = stream.to_bytes()
    with open(args.output, "wb") as fh:
        fh.write(data)
    if args.report or args.stats:
        decoded = codec.decode(stream) if args.report else None
        report = build_report(mode, planes, len(data), decoded, args.q, stream.header.q3_scale,
                              args.rescale_12bit, fps)
        sys.stdout.write(report.format())
    if args.stats:
        stats = metrics.media_stats(mode, planes, args.q, args.q3_scale, args.rescale_12bit)
        sys.stdout.write(metrics.format_stats(stats))
    return EXIT_OK


def cmd_decode(args):
    with open(args.input, "rb") as fh:
        stream = EncodedStream.from_bytes(fh.read())
    mode = stream.header.mode
    if args.mode and Mode.from_label(args.mode) is not mode:
        log.warning("stream header says %s, ignoring --mode %s", mode.label, args.mode)
    decoded = codec.decode(stream)
    write_decoded(mode, decoded, args.output, stream.header)
    return EXIT_OK


def cmd_stats(args):
    mode = Mode.from_label(args.mode)
    planes, _ = load_media(mode, args.input)
    stats = metrics.media_stats(mode, planes, args.q, args.q3_scale, args.rescale_12bit)
    sys.stdout.write(metrics.format_stats(stats))
    return EXIT_OK


def cmd_tables(args):
    scale = quant.quality_scale(args.q)
    if args.which == "watson":
        text = quant.table_to_csv(quant.scale_table(quant.WATSON, scale))
    elif args.which == "chroma":
        text = quant.table_to_csv(quant.scale_table(quant.CHROMA, scale))
    elif args.which == "q3":
        text = quant.table_to_csv(codec.cube_steps(args.q, args.q3_scale))
    elif args.which == "q3c":
        text = quant.table_to_csv(codec.cube_steps(args.q, args.q3_scale, chroma=True))
    else:
        text = entropy.STANDARD_TABLES.dump()
    sys.stdout.write(text)
    return EXIT_OK


def quality(text):
    q = int(text)
    if not 1 <= q <= 100:
        raise argparse.ArgumentTypeError("quality must be in 1..100")
    return q


def positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def make_parser():
    parser = argparse.ArgumentParser(prog="dct3d", description="2D/3D DCT image, video and volume codec")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def coding_options(p):
        p.add_argument("--mode", choices=MODES, required=True)
        p.add_argument("--q", type=quality, default=50, help="quality 1..100 (default 50)")
        p.add_argument("--q3-scale", type=positive_float, default=1.0,
                       help="extra multiplier on the quantization cube")
        p.add_argument("--rescale-12bit", action="store_true",
                       help="map volume samples to 8 bits before coding")

    p = sub.add_parser("encode", help="encode media into a .3dct stream")
    coding_options(p)
    p.add_argument("--report", action="store_true", help="decode back and print metrics")
    p.add_argument("--stats", action="store_true", help="print coefficient statistics")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode a .3dct stream")
    p.add_argument("--mode", choices=MODES, help="expected mode (the header wins)")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("stats", help="coefficient statistics without writing a stream")
    coding_options(p)
    p.add_argument("input")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("tables", help="print quantization or Huffman tables")
    p.add_argument("which", choices=["watson", "chroma", "q3", "q3c", "huffman"])
    p.add_argument("--q", type=quality, default=50)
    p.add_argument("--q3-scale", type=positive_float, default=1.0)
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except OSError as exc:
        log.error("%s", exc)
        return EXIT_IO
    except CoverageError as exc:
        log.error("%s", exc)
        return EXIT_RANGE
    except CorruptStreamError as exc:
        log.error("corrupt stream: %s", exc)
        return EXIT_CORRUPT
    except (UnsupportedFormatError, DataRangeError, InvalidArgumentError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    except CodecError as exc:
        log.error("%s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
