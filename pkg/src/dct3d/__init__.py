"""2D/3D DCT transform codec for still images, video and volumes."""

from .codec import (
    decode,
    decode_still,
    decode_video_color,
    decode_video_mono,
    decode_volume,
    encode_still,
    encode_video_color,
    encode_video_mono,
    encode_volume,
    subsample_420,
    upsample_420,
)
from .container import EncodedStream, Mode, StreamHeader
from .errors import CodecError
from .media import Frame, VideoCube, Volume

__version__ = "0.1.0"
