"""Baseline-JPEG Huffman coding of serialized coefficient blocks.

Each block is coded as a DC category codeword plus magnitude bits, then
``(run, category)`` codewords plus magnitude bits for the nonzero AC values,
with ZRL standing for 16 zeros and EOB closing a block whose tail is zero.
The DC value is coded directly (no prediction from the previous block).
Magnitudes use one's complement: a leading 0 bit marks a negative value.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import CorruptStreamError, CoverageError, InvalidArgumentError, TruncatedStreamError

# Luminance tables of the JPEG baseline (ITU-T T.81 Annex K.3): code counts
# per length 1..16 followed by symbols in code order.
DC_BITS = (0, 1, 5, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0)
DC_VALS = tuple(range(12))

AC_BITS = (0, 2, 1, 3, 3, 2, 4, 3, 5, 5, 4, 4, 0, 0, 1, 0x7D)
AC_VALS = (
    0x01, 0x02, 0x03, 0x00, 0x04, 0x11, 0x05, 0x12, 0x21, 0x31, 0x41, 0x06, 0x13, 0x51, 0x61, 0x07,
    0x22, 0x71, 0x14, 0x32, 0x81, 0x91, 0xA1, 0x08, 0x23, 0x42, 0xB1, 0xC1, 0x15, 0x52, 0xD1, 0xF0,
    0x24, 0x33, 0x62, 0x72, 0x82, 0x09, 0x0A, 0x16, 0x17, 0x18, 0x19, 0x1A, 0x25, 0x26, 0x27, 0x28,
    0x29, 0x2A, 0x34, 0x35, 0x36, 0x37, 0x38, 0x39, 0x3A, 0x43, 0x44, 0x45, 0x46, 0x47, 0x48, 0x49,
    0x4A, 0x53, 0x54, 0x55, 0x56, 0x57, 0x58, 0x59, 0x5A, 0x63, 0x64, 0x65, 0x66, 0x67, 0x68, 0x69,
    0x6A, 0x73, 0x74, 0x75, 0x76, 0x77, 0x78, 0x79, 0x7A, 0x83, 0x84, 0x85, 0x86, 0x87, 0x88, 0x89,
    0x8A, 0x92, 0x93, 0x94, 0x95, 0x96, 0x97, 0x98, 0x99, 0x9A, 0xA2, 0xA3, 0xA4, 0xA5, 0xA6, 0xA7,
    0xA8, 0xA9, 0xAA, 0xB2, 0xB3, 0xB4, 0xB5, 0xB6, 0xB7, 0xB8, 0xB9, 0xBA, 0xC2, 0xC3, 0xC4, 0xC5,
    0xC6, 0xC7, 0xC8, 0xC9, 0xCA, 0xD2, 0xD3, 0xD4, 0xD5, 0xD6, 0xD7, 0xD8, 0xD9, 0xDA, 0xE1, 0xE2,
    0xE3, 0xE4, 0xE5, 0xE6, 0xE7, 0xE8, 0xE9, 0xEA, 0xF1, 0xF2, 0xF3, 0xF4, 0xF5, 0xF6, 0xF7, 0xF8,
    0xF9, 0xFA,
)

MAX_DC_CATEGORY = 11
MAX_AC_CATEGORY = 10


def canonical_codes(bits, values):
    """Map each symbol to its codeword string, assigned in canonical order."""
    codes = {}
    code = 0
    it = iter(values)
    for length, count in enumerate(bits, start=1):
        for _ in range(count):
            codes[next(it)] = format(code, f"0{length}b")
            code += 1
        code <<= 1
    return codes


def _is_prefix_free(codewords):
    words = sorted(codewords)
    return all(not b.startswith(a) for a, b in zip(words, words[1:]))


@dataclass(frozen=True)
class HuffmanTables:
    """DC codes keyed by category, AC codes keyed by ``(run, category)``.

    EOB is AC symbol ``(0, 0)`` and ZRL is ``(15, 0)``.
    """

    dc: dict
    ac: dict
    dc_lookup: dict = field(init=False, repr=False)
    ac_lookup: dict = field(init=False, repr=False)

    def __post_init__(self):
        for name, table in (("DC", self.dc), ("AC", self.ac)):
            if not _is_prefix_free(table.values()):
                raise InvalidArgumentError(f"{name} Huffman table is not prefix-free")
        object.__setattr__(self, "dc_lookup", {v: k for k, v in self.dc.items()})
        object.__setattr__(self, "ac_lookup", {v: k for k, v in self.ac.items()})

    @property
    def eob(self):
        return self.ac[(0, 0)]

    @property
    def zrl(self):
        return self.ac[(15, 0)]

    def dump(self):
        """One ``kind symbol codeword`` line per entry, in symbol order."""
        lines = [f"DC {cat} {code}" for cat, code in sorted(self.dc.items())]
        lines += [f"AC {run},{cat} {code}" for (run, cat), code in sorted(self.ac.items())]
        return "\n".join(lines) + "\n"


def standard_tables():
    dc = canonical_codes(DC_BITS, DC_VALS)
    ac = {(sym >> 4, sym & 0xF): code for sym, code in canonical_codes(AC_BITS, AC_VALS).items()}
    return HuffmanTables(dc=dc, ac=ac)


STANDARD_TABLES = standard_tables()


def category(v):
    """Bit length of ``|v|`` (0 for 0)."""
    return abs(int(v)).bit_length()


def magnitude_bits(v):
    """Category-length bit string for nonzero *v*, one's complement if negative."""
    v = int(v)
    if v == 0:
        raise InvalidArgumentError("zero has no magnitude bits")
    cat = abs(v).bit_length()
    if v < 0:
        v += (1 << cat) - 1
    return format(v, f"0{cat}b")


def magnitude_value(bits):
    cat = len(bits)
    raw = int(bits, 2)
    if bits[0] == "1":
        return raw
    return raw - (1 << cat) + 1


@dataclass
class TokenStream:
    """One serialized block: DC value, ``(run, value)`` AC tokens, EOB flag.

    ``run`` counts the zeros before ``value``; runs longer than 15 are split
    into ZRL symbols only at coding time.
    """

    dc_value: int
    ac_tokens: list
    terminated: bool


def tokenize(v):
    v = np.asarray(v)
    nz = np.flatnonzero(v[1:]) + 1
    tokens = []
    prev = 0
    for pos in nz.tolist():
        tokens.append((pos - prev - 1, int(v[pos])))
        prev = pos
    terminated = prev < len(v) - 1
    return TokenStream(int(v[0]) if len(v) else 0, tokens, terminated)


def detokenize(t, block_len):
    out = np.zeros(block_len, dtype=np.int64)
    out[0] = t.dc_value
    pos = 0
    for run, value in t.ac_tokens:
        pos += run + 1
        if pos >= block_len:
            raise CorruptStreamError(f"tokens overrun a block of {block_len} coefficients")
        out[pos] = value
    return out


def encode_block(tokens, tables=STANDARD_TABLES):
    """Huffman-code one token stream and return it as a '0'/'1' string."""
    parts = []
    dc = tokens.dc_value
    cat = abs(dc).bit_length()
    if cat > MAX_DC_CATEGORY:
        raise CoverageError(f"DC level {dc} exceeds the DC table (|v| <= 2047)")
    parts.append(tables.dc[cat])
    if cat:
        parts.append(magnitude_bits(dc))
    ac = tables.ac
    zrl = tables.zrl
    for run, value in tokens.ac_tokens:
        cat = abs(value).bit_length()
        if cat > MAX_AC_CATEGORY:
            raise CoverageError(f"AC level {value} exceeds the AC table (|v| <= 1023)")
        if cat == 0:
            raise InvalidArgumentError("AC tokens must carry nonzero values")
        while run > 15:
            parts.append(zrl)
            run -= 16
        parts.append(ac[(run, cat)])
        parts.append(magnitude_bits(value))
    if tokens.terminated:
        parts.append(tables.eob)
    return "".join(parts)


class BitWriter:
    """Accumulates bit strings; ``getvalue`` pads with 1-bits to a byte."""

    def __init__(self):
        self._parts = []
        self.bit_length = 0

    def write(self, bits):
        self._parts.append(bits)
        self.bit_length += len(bits)

    def getvalue(self):
        bits = "".join(self._parts)
        pad = -len(bits) % 8
        bits += "1" * pad
        if not bits:
            return b""
        return int(bits, 2).to_bytes(len(bits) // 8, "big")


class BitReader:
    """Bit cursor over a byte string."""

    def __init__(self, data):
        data = bytes(data)
        self.bits = format(int.from_bytes(data, "big"), f"0{8 * len(data)}b") if data else ""
        self.pos = 0

    def read(self, count):
        end = self.pos + count
        if end > len(self.bits):
            raise TruncatedStreamError("bitstream ended inside a block")
        out = self.bits[self.pos : end]
        self.pos = end
        return out

    def read_symbol(self, lookup, max_len=16):
        bits = self.bits
        start = self.pos
        avail = len(bits) - start
        for length in range(1, min(max_len, avail) + 1):
            sym = lookup.get(bits[start : start + length])
            if sym is not None:
                self.pos = start + length
                return sym
        if avail < max_len:
            raise TruncatedStreamError("bitstream ended inside a codeword")
        raise CorruptStreamError(f"invalid codeword at bit {start}")


def decode_block(reader, tables=STANDARD_TABLES, block_len=64):
    """Read one block's tokens; the reader is left just past the block."""
    cat = reader.read_symbol(tables.dc_lookup)
    dc = magnitude_value(reader.read(cat)) if cat else 0
    tokens = []
    pos = 0
    pending = 0
    ac_lookup = tables.ac_lookup
    while pos < block_len - 1:
        run, cat = reader.read_symbol(ac_lookup)
        if cat == 0:
            if run == 0:
                return TokenStream(dc, tokens, True)
            if run != 15:
                raise CorruptStreamError(f"undefined AC symbol ({run}, 0)")
            pending += 16
            pos += 16
            if pos >= block_len:
                raise CorruptStreamError("zero run overruns the block")
            continue
        value = magnitude_value(reader.read(cat))
        pos += run + 1
        if pos >= block_len:
            raise CorruptStreamError("coefficients overrun the block")
        tokens.append((pending + run, value))
        pending = 0
    if pending:
        raise CorruptStreamError("block ends in a zero run without EOB")
    return TokenStream(dc, tokens, False)
