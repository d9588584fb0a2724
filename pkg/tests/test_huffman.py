import math
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from optalpha.bitio import BitReader, BitString
from optalpha.codebook import ENGLISH_LETTER_CODEWORDS, ENGLISH_LETTER_FREQUENCIES
from optalpha.errors import CorruptStreamError, TruncatedStreamError, UnknownSymbolError
from optalpha.huffman import (
    CanonicalCode,
    FrequencyTable,
    build_canonical_code,
    count_frequencies,
    decode_stream,
    encode_stream,
    encoded_length,
    entropy,
    huffman_lengths,
    kraft_sum,
)

from oracles import min_code_cost

tokens_st = st.lists(st.sampled_from(["a", "b", "c", "d", "e", "th", "ing", "x", "yy"]), min_size=1, max_size=200)


def test_count_examples():
    f = count_frequencies("abab")
    assert dict(f.counts) == {"a": 2, "b": 2} and f.total == 4
    assert dict(count_frequencies("aabc").counts) == {"a": 2, "b": 1, "c": 1}
    f = count_frequencies("abracadabra")
    assert dict(f.counts) == {"a": 5, "b": 2, "r": 2, "c": 1, "d": 1} and f.total == 11
    with pytest.raises(ValueError):
        count_frequencies([])
    with pytest.raises(ValueError):
        FrequencyTable({"a": 0}, 0)


def test_entropy_examples():
    assert entropy(count_frequencies("ab")) == 1.0
    assert entropy(count_frequencies("aabc")) == 1.5
    assert entropy(count_frequencies("aaaaa")) == 0.0


@given(tokens_st)
def test_entropy_bounds(tokens):
    f = count_frequencies(tokens)
    s = entropy(f)
    assert 0 <= s <= math.log2(f.size) + 1e-12
    if len(set(f.counts.values())) == 1:
        assert s == pytest.approx(math.log2(f.size))


def test_build_examples():
    code = build_canonical_code(count_frequencies("aabc"))
    assert dict(code.lengths) == {"a": 1, "b": 2, "c": 2}
    assert code.codewords == {"a": BitString("0"), "b": BitString("10"), "c": BitString("11")}
    code = build_canonical_code(count_frequencies("ab"))
    assert code.codewords == {"a": BitString("0"), "b": BitString("1")}


def test_single_symbol_gets_one_bit():
    code = build_canonical_code(count_frequencies("aaaa"))
    assert code.codewords == {"a": BitString("0")}
    assert encode_stream("aaaa", code) == "0000"


def test_abracadabra_cost_is_minimal():
    f = count_frequencies("abracadabra")
    code = build_canonical_code(f)
    assert encoded_length(f, code.lengths) == 23 == min_code_cost(tuple(f.counts.values()))
    assert len(encode_stream("abracadabra", code)) == 23


def test_tie_break_prefers_smaller_symbol():
    # weights 1,1,1,1: (a,b) merge first, then (c,d) -> all length 2
    code = build_canonical_code(FrequencyTable.from_counts({"d": 1, "c": 1, "b": 1, "a": 1}))
    assert code.symbol_order == ("a", "b", "c", "d")
    # a and b tie at weight 1 with c; the smaller symbols pair first
    lengths = huffman_lengths(FrequencyTable.from_counts({"a": 1, "b": 1, "c": 1}))
    assert lengths == {"a": 2, "b": 2, "c": 1}


def test_letter_frequencies_reproduce_table_lengths_except_z():
    # the letter table leaves the sibling of z's codeword unused, so z is one
    # bit longer there than in a full Huffman tree
    f = FrequencyTable.from_counts({k: round(v * 10**6) for k, v in ENGLISH_LETTER_FREQUENCIES.items()})
    lengths = huffman_lengths(f)
    diff = {k for k in lengths if lengths[k] != len(ENGLISH_LETTER_CODEWORDS[k])}
    assert diff == {"z"}
    assert len(ENGLISH_LETTER_CODEWORDS["z"]) == lengths["z"] + 1


@given(tokens_st)
def test_code_invariants(tokens):
    f = count_frequencies(tokens)
    code = build_canonical_code(f)
    if f.size >= 2:
        assert kraft_sum(code.lengths.values()) == 1
    # prefix-free
    cws = sorted(str(c) for c in code.codewords.values())
    assert all(not b.startswith(a) for a, b in zip(cws, cws[1:]))
    # more frequent never gets longer
    for a in f.counts:
        for b in f.counts:
            if f.counts[a] > f.counts[b]:
                assert code.lengths[a] <= code.lengths[b]
    # consecutive integers within a length, in symbol order
    for z, syms in code.blocks():
        values = [code.codewords[s].to_int() for s in syms]
        assert values == list(range(values[0], values[0] + len(values)))
        assert syms == sorted(syms)
    # rebuilt from lengths alone
    assert CanonicalCode(dict(code.lengths)) == code
    assert encoded_length(f, code.lengths) == min_code_cost(tuple(f.counts.values())) or f.size > 6


@settings(max_examples=300)
@given(tokens_st)
def test_roundtrip(tokens):
    code = build_canonical_code(count_frequencies(tokens))
    bits = encode_stream(tokens, code)
    r = BitReader(bits)
    assert decode_stream(r, code, len(tokens)) == tokens
    assert r.at_end()


def test_decode_examples():
    code = CanonicalCode({"a": 1, "b": 1})
    assert decode_stream(BitReader("0101"), code, 4) == ["a", "b", "a", "b"]
    code3 = CanonicalCode({"a": 1, "b": 2, "c": 2})
    assert decode_stream(BitReader("01011"), code3, 3) == ["a", "b", "c"]
    with pytest.raises(TruncatedStreamError):
        decode_stream(BitReader("0101"), code, 5)
    with pytest.raises(TruncatedStreamError):
        decode_stream(BitReader("01"), code3, 2)


def test_decode_corrupt_with_incomplete_code():
    table = {"a": BitString("0"), "b": BitString("10")}
    with pytest.raises(CorruptStreamError):
        decode_stream(BitReader("0110"), table, 3)


def test_decode_with_letter_table():
    table = {k: BitString(v) for k, v in ENGLISH_LETTER_CODEWORDS.items()}
    bits = encode_stream("quizzical", table)
    assert "".join(decode_stream(BitReader(bits), table, 9)) == "quizzical"


def test_unknown_symbol():
    code = CanonicalCode({"a": 1, "b": 1})
    with pytest.raises(UnknownSymbolError, match="'c'"):
        encode_stream(["a", "c"], code)


def test_canonical_code_validation():
    with pytest.raises(ValueError):
        CanonicalCode({})
    with pytest.raises(ValueError):
        CanonicalCode({"a": 1, "b": 1, "c": 1})
    with pytest.raises(ValueError):
        CanonicalCode({"a": 1, "b": 2}, ["b", "a"])
    assert kraft_sum([1, 2, 2]) == Fraction(1)


def test_optimality_multisets_small():
    # every multiset of counts up to 5 symbols, counts up to 6
    from itertools import combinations_with_replacement

    for m in range(1, 6):
        for counts in combinations_with_replacement(range(1, 7), m):
            f = FrequencyTable.from_counts({chr(97 + i): c for i, c in enumerate(counts)})
            lengths = huffman_lengths(f)
            assert encoded_length(f, lengths) == (min_code_cost(counts) if m > 1 else sum(counts))
