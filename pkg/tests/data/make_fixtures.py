"""Regenerate the small format fixtures in this directory.

The files are committed; rerun only if the fixture set changes.
Samples come from a fixed integer recurrence, so no writer under test is
involved in producing them.
"""

import json
import os

HERE = os.path.dirname(os.path.abspath(__file__))


def samples(count, modulus, seed):
    x = seed
    out = []
    for _ in range(count):
        x = (x * 1103515245 + 12345) % 2**31
        out.append(x % modulus)
    return out


def write(name, data):
    with open(os.path.join(HERE, name), "wb") as fh:
        fh.write(data)


def main():
    w, h, t = 10, 6, 3
    cw, ch = 5, 3
    body = b""
    for f in range(t):
        body += b"FRAME\n"
        body += bytes(samples(w * h, 256, 10 + f))
        body += bytes(samples(cw * ch, 256, 20 + f))
        body += bytes(samples(cw * ch, 256, 30 + f))
    write("fixture_420.y4m", b"YUV4MPEG2 W10 H6 F25:1 Ip A1:1 C420jpeg\n" + body)

    body = b"".join(b"FRAME\n" + bytes(samples(9 * 7, 256, 40 + f)) for f in range(2))
    write("fixture_mono.y4m", b"YUV4MPEG2 W9 H7 F30000:1001 Ip A1:1 Cmono\n" + body)

    write("fixture8.pgm", b"P5\n11 5\n255\n" + bytes(samples(55, 256, 50)))
    words = samples(7 * 3, 4096, 60)
    write("fixture12.pgm", b"P5\n7 3\n4095\n" + b"".join(v.to_bytes(2, "big") for v in words))

    words = samples(3 * 4 * 5, 4096, 70)
    write("fixture_vol.raw", b"".join(v.to_bytes(2, "little") for v in words))
    spec = {"width": 5, "height": 4, "slices": 3, "bit_depth": 12,
            "byte_order": "little", "files": ["fixture_vol.raw"]}
    with open(os.path.join(HERE, "fixture_vol.json"), "w") as fh:
        json.dump(spec, fh, indent=2)
        fh.write("\n")


if __name__ == "__main__":
    main()
