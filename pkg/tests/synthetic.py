"""Deterministic synthetic media used as test fixtures."""

from fractions import Fraction

import numpy as np

from dct3d.media import Frame, VideoCube, Volume


def _smooth_texture(rng, h, w, scale):
    # band-limited texture: random low-resolution field, bilinearly enlarged
    gh, gw = h // scale + 2, w // scale + 2
    grid = rng.standard_normal((gh, gw))
    ys = np.linspace(0, gh - 2, h)
    xs = np.linspace(0, gw - 2, w)
    y0, x0 = ys.astype(int), xs.astype(int)
    fy, fx = (ys - y0)[:, None], (xs - x0)[None, :]
    g = grid
    return ((1 - fy) * (1 - fx) * g[y0][:, x0] + (1 - fy) * fx * g[y0][:, x0 + 1]
            + fy * (1 - fx) * g[y0 + 1][:, x0] + fy * fx * g[y0 + 1][:, x0 + 1])


def _soft_ellipse(yy, xx, cy, cx, ry, rx, softness=1.5):
    d = np.sqrt(((yy - cy) / ry) ** 2 + ((xx - cx) / rx) ** 2)
    return 1.0 / (1.0 + np.exp((d - 1.0) * min(ry, rx) / softness))


def talking_head(frames=32, height=288, width=352, seed=7):
    """Low-motion presenter scene: static textured set, slowly swaying head.

    Motion is sub-pixel per frame and the mouth opens and closes, roughly the
    activity level of a news-reader sequence.
    """
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:height, 0:width].astype(np.float64)
    bg = 90 + 60 * (xx / width) + 25 * np.sin(yy / height * np.pi)
    bg += 12 * _smooth_texture(rng, height, width, 6)
    bg += 5 * _smooth_texture(rng, height, width, 2)
    # a bright panel and a desk edge
    bg += 50 * _soft_ellipse(yy, xx, 0.25 * height, 0.8 * width, 0.12 * height, 0.1 * width, 3)
    bg = np.where(yy > 0.82 * height, 60 + 8 * _smooth_texture(rng, height, width, 3), bg)
    skin = 12 * _smooth_texture(rng, height, width, 4)
    hair = 8 * _smooth_texture(rng, height, width, 2)
    out = np.empty((frames, height, width))
    for t in range(frames):
        cx = 0.45 * width + 3.0 * np.sin(2 * np.pi * t / 48)
        cy = 0.42 * height + 1.0 * np.sin(2 * np.pi * t / 36)
        body = _soft_ellipse(yy, xx, cy + 0.5 * height, cx, 0.3 * height, 0.28 * width, 2)
        head = _soft_ellipse(yy, xx, cy, cx, 0.2 * height, 0.14 * width, 1.5)
        hair_m = _soft_ellipse(yy, xx, cy - 0.08 * height, cx, 0.14 * height, 0.15 * width, 1.5)
        mouth_open = 0.3 + 0.7 * abs(np.sin(2 * np.pi * t / 10))
        mouth = _soft_ellipse(yy, xx, cy + 0.1 * height, cx, 0.015 * height * mouth_open + 0.5,
                              0.035 * width, 1.0)
        eyes = (_soft_ellipse(yy, xx, cy - 0.02 * height, cx - 0.05 * width, 3, 5, 1.0)
                + _soft_ellipse(yy, xx, cy - 0.02 * height, cx + 0.05 * width, 3, 5, 1.0))
        img = bg * (1 - body) + (40 + hair) * body
        img = img * (1 - head) + (170 + skin - 0.15 * (yy - cy)) * head
        img = img * (1 - hair_m * (yy < cy - 0.05 * height)) + (35 + hair) * hair_m * (yy < cy - 0.05 * height)
        img = img * (1 - mouth) + 70 * mouth
        img = img * (1 - eyes) + 30 * eyes
        out[t] = img
    return VideoCube(np.clip(np.rint(out), 0, 255).astype(np.uint16), Fraction(30))


def ct_phantom(slices=64, size=512, bit_depth=12, seed=3):
    """Smooth 12-bit CT-like phantom: body ellipse, organs, bone ring."""
    rng = np.random.default_rng(seed)
    zz, yy, xx = np.meshgrid(
        np.linspace(-1, 1, slices), np.linspace(-1, 1, size), np.linspace(-1, 1, size),
        indexing="ij", sparse=True,
    )
    vol = np.zeros((slices, size, size))
    body = ((yy / 0.8) ** 2 + (xx / 0.9) ** 2) < 1.0
    vol += np.where(body, 1000.0, 0.0)
    ring = np.abs(np.sqrt((yy / 0.7) ** 2 + (xx / 0.8) ** 2) - 0.9) < 0.04
    vol = np.where(ring & body, 2600.0, vol)
    for _ in range(6):
        cz, cy, cx = rng.uniform(-0.5, 0.5, 3)
        rz, ry, rx = rng.uniform(0.2, 0.5), rng.uniform(0.08, 0.25), rng.uniform(0.08, 0.25)
        inside = ((zz - cz) / rz) ** 2 + ((yy - cy) / ry) ** 2 + ((xx - cx) / rx) ** 2 < 1
        vol = np.where(inside, rng.uniform(1100, 1600), vol)
    # soften edges slightly along the in-plane axes
    k = np.array([1, 4, 6, 4, 1], dtype=np.float64) / 16
    for ax in (1, 2):
        vol = np.apply_along_axis(lambda v: np.convolve(v, k, mode="same"), ax, vol)
    vol = np.clip(np.rint(vol), 0, (1 << bit_depth) - 1)
    return Volume(vol.astype(np.uint16), bit_depth)


def natural_image(height=256, width=256, seed=11):
    """Smooth scene with edges and mild texture, a stand-in for photographs."""
    v = talking_head(frames=1, height=height, width=width, seed=seed)
    return Frame(v.frames[0])
