import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dct3d import entropy
from dct3d.entropy import (
    STANDARD_TABLES,
    BitReader,
    BitWriter,
    TokenStream,
    category,
    decode_block,
    detokenize,
    encode_block,
    magnitude_bits,
    tokenize,
)
from dct3d.errors import CorruptStreamError, CoverageError, InvalidArgumentError, TruncatedStreamError

# Excerpt of the baseline luminance DC and AC tables.
EXCERPT_DC = {0: "00", 1: "010", 2: "011", 3: "100", 4: "101", 5: "110", 6: "1110"}
EXCERPT_AC = {
    (0, 0): "1010", (0, 1): "00", (0, 2): "01", (0, 3): "100", (0, 4): "1011",
    (0, 5): "11010", (0, 6): "1111000", (0, 7): "11111000", (0, 8): "1111110110",
    (1, 1): "1100", (1, 2): "11011",
}


def packed(bits):
    w = BitWriter()
    w.write(bits)
    return w.getvalue()


def test_tables_match_excerpt():
    for cat, code in EXCERPT_DC.items():
        assert STANDARD_TABLES.dc[cat] == code
    for sym, code in EXCERPT_AC.items():
        assert STANDARD_TABLES.ac[sym] == code


def test_long_codes_are_standard_16_bit():
    assert STANDARD_TABLES.ac[(0, 9)] == "1111111110000010"
    assert STANDARD_TABLES.ac[(0, 10)] == "1111111110000011"
    assert STANDARD_TABLES.zrl == "11111111001"


def test_table_coverage():
    assert sorted(STANDARD_TABLES.dc) == list(range(12))
    ac = STANDARD_TABLES.ac
    assert len(ac) == 162
    for run in range(16):
        for cat in range(1, 11):
            assert (run, cat) in ac


def test_prefix_free_checked():
    with pytest.raises(InvalidArgumentError):
        entropy.HuffmanTables(dc={0: "0", 1: "01"}, ac={(0, 0): "1", (15, 0): "0"})


def test_dump_lists_every_code():
    lines = STANDARD_TABLES.dump().splitlines()
    assert len(lines) == 12 + 162
    assert "AC 0,0 1010" in lines
    assert "DC 5 110" in lines


@pytest.mark.parametrize("v, cat", [(-10, 4), (3, 2), (0, 0), (1, 1), (-1, 1), (2047, 11), (-1024, 11)])
def test_category(v, cat):
    assert category(v) == cat


@pytest.mark.parametrize("v, bits", [(-10, "0101"), (3, "11"), (1, "1"), (-1, "0"), (-3, "00"), (10, "1010")])
def test_magnitude_bits(v, bits):
    assert magnitude_bits(v) == bits
    assert entropy.magnitude_value(bits) == v


def test_magnitude_bits_zero():
    with pytest.raises(InvalidArgumentError):
        magnitude_bits(0)


def test_worked_example_dc_category_5():
    bits = encode_block(TokenStream(17, [], True))
    assert bits.startswith("110")
    assert bits == "110" + "10001" + "1010"


def test_worked_example_minus_10():
    bits = encode_block(TokenStream(0, [(0, -10)], True))
    assert bits == "00" + "1011" + "0101" + "1010"


def test_worked_example_zero_then_3():
    bits = encode_block(TokenStream(0, [(1, 3)], True))
    assert bits == "00" + "11011" + "11" + "1010"


def test_eob_after_dc_decodes_to_zeros():
    r = BitReader(packed("00" "1010" "0000" "11"))
    t = decode_block(r, block_len=64)
    assert t.dc_value == 0 and t.ac_tokens == [] and t.terminated
    assert r.pos == 6
    assert not detokenize(t, 64).any()


def test_dc_category_zero_consumes_no_magnitude_bits():
    r = BitReader(bytes([0b00101000]))
    t = decode_block(r, block_len=64)
    assert t.dc_value == 0 and r.pos == 6


def test_tokenize_examples():
    v = np.zeros(64, int)
    v[0], v[3] = 5, 3
    t = tokenize(v)
    assert (t.dc_value, t.ac_tokens, t.terminated) == (5, [(2, 3)], True)
    t = tokenize(np.zeros(64, int))
    assert (t.dc_value, t.ac_tokens, t.terminated) == (0, [], True)
    v = np.zeros(64, int)
    v[63] = -2
    t = tokenize(v)
    assert t.ac_tokens == [(62, -2)] and not t.terminated
    bits = encode_block(t)
    r = BitReader(packed(bits))
    assert decode_block(r, block_len=64) == t
    assert r.pos == len(bits)  # no EOB after a final nonzero coefficient


def test_long_run_uses_zrl():
    t = TokenStream(0, [(40, 1)], True)
    bits = encode_block(t)
    zrl = STANDARD_TABLES.zrl
    assert bits == "00" + zrl + zrl + STANDARD_TABLES.ac[(8, 1)] + "1" + "1010"
    assert decode_block(BitReader(packed(bits)), block_len=512) == t


def test_exact_multiple_of_16_run():
    t = TokenStream(0, [(32, -1)], False)
    v = detokenize(t, 34)
    assert v[33] == -1
    bits = encode_block(tokenize(v))
    assert decode_block(BitReader(packed(bits)), block_len=34) == t


def test_bitwriter_pads_with_ones():
    w = BitWriter()
    w.write("0")
    w.write("10")
    assert w.getvalue() == bytes([0b01011111])
    assert BitWriter().getvalue() == b""


def test_coverage_errors():
    with pytest.raises(CoverageError):
        encode_block(TokenStream(2048, [], True))
    with pytest.raises(CoverageError):
        encode_block(TokenStream(0, [(0, 1024)], True))
    encode_block(TokenStream(-2047, [(0, -1023)], True))


def test_corrupt_codeword():
    # DC '00' followed by sixteen 1-bits, which is not an AC codeword
    bits = "00" + "1" * 16 + "0" * 6
    with pytest.raises(CorruptStreamError):
        decode_block(BitReader(int(bits, 2).to_bytes(3, "big")), block_len=64)


def test_truncated_block():
    bits = encode_block(TokenStream(100, [(0, 50), (3, -7)], True))
    data = packed(bits[:9])
    with pytest.raises(TruncatedStreamError):
        r = BitReader(data)
        r.bits = r.bits[:9]
        decode_block(r, block_len=64)


def test_overrun_detected():
    # a run of 3 zeros then a value cannot fit after the DC of a 4-coefficient block
    bits = "00" + STANDARD_TABLES.ac[(3, 1)] + "1"
    r = BitReader(packed(bits))
    with pytest.raises(CorruptStreamError):
        decode_block(r, block_len=4)


def test_detokenize_overrun():
    with pytest.raises(CorruptStreamError):
        detokenize(TokenStream(0, [(10, 1)], False), 8)


sparse_vectors = st.integers(2, 512).flatmap(
    lambda n: st.lists(
        st.one_of(st.just(0), st.just(0), st.just(0), st.integers(-1023, 1023)),
        min_size=n, max_size=n,
    )
)


@settings(max_examples=300, deadline=None)
@given(sparse_vectors, st.integers(-2047, 2047))
def test_roundtrip_property(values, dc):
    v = np.array(values, dtype=np.int64)
    v[0] = dc
    bits = encode_block(tokenize(v))
    r = BitReader(packed(bits + "0101"))
    out = detokenize(decode_block(r, block_len=len(v)), len(v))
    assert (out == v).all()
    assert r.pos == len(bits)


def test_consecutive_blocks_share_a_buffer():
    rng = np.random.default_rng(0)
    vecs = [np.where(rng.random(512) < 0.05, rng.integers(-50, 50, 512), 0) for _ in range(20)]
    w = BitWriter()
    for v in vecs:
        w.write(encode_block(tokenize(v)))
    r = BitReader(w.getvalue())
    for v in vecs:
        assert (detokenize(decode_block(r, block_len=512), 512) == v).all()
