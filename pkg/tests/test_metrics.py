import dataclasses
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from optalpha.codebook import ReprKind
from optalpha.container import ContainerConfig, compress
from optalpha.metrics import (
    CompressionReport,
    FailedReport,
    analyze_text,
    build_report,
    compressibility,
    concat_check_from_decomposition,
    concat_inequality_check,
    default_configs,
    default_denominator,
    entropy_product,
    h2,
    zipf_estimates,
)
from optalpha.text import AlphabetSpec, normalize, tokenize

from conftest import random_texts
from oracles import padded_joint_bound, shannon_entropy


def _report(**kw):
    base = dict(
        text_id="t", alphabet="words", repr="l8", format="blocks", N=1, M=1, entropy_bits=0.0,
        code_only_bits=0, codebook_bits=0, total_bits=0, eta=0.0, letters_count=1, words_count=1,
        kolmogorov_bound_bits=0, denominator_l=8,
    )
    base.update(kw)
    return CompressionReport(**base)


def test_compressibility_examples():
    assert compressibility(_report(code_only_bits=30000, codebook_bits=10000, letters_count=10000), 8) == 0.5
    assert compressibility(_report(code_only_bits=80000, codebook_bits=10000, letters_count=10000), 8) == 1.125
    with pytest.raises(ValueError):
        compressibility(_report(letters_count=0))


def test_default_denominator():
    assert default_denominator("l8") == 8
    assert default_denominator("l5") == 5
    assert default_denominator("lvar") == 8


def test_zipf_estimates():
    z = zipf_estimates(10**4, 1.8e5, 8)
    assert z.codebook_est_bits == pytest.approx(376000)
    assert z.code_est_bits == pytest.approx(1.7725e6, rel=1e-4)
    assert 4.70 <= z.ratio_bound < 4.72
    assert zipf_estimates(2, 2, 8).codebook_est_bits == pytest.approx(75.2)
    with pytest.raises(ValueError):
        zipf_estimates(1, 5, 8)
    with pytest.raises(ValueError):
        zipf_estimates(10, 5, 8)


def test_h2():
    assert h2(0.5) == 1.0
    assert h2(0) == h2(1) == 0
    assert h2(0.11) == pytest.approx(h2(0.89))
    with pytest.raises(ValueError):
        h2(1.5)


def test_concat_degenerate_text():
    c = concat_inequality_check(["the", "the", "the"])
    assert c.S_words == c.S_syllab == 0
    assert c.z == 1 and c.z_bar == 1 and c.g_theta == 0
    assert c.slack == 0 and c.holds
    assert c.swapped_form_defined and c.entropy_product_holds


def _check_against_oracle(words):
    c = concat_check_from_decomposition(words)
    o = padded_joint_bound(words)
    assert c.z == o["z"]
    assert c.z_bar == pytest.approx(o["z_bar"])
    assert c.g_theta == pytest.approx(o["g_theta"])
    assert c.S_words == pytest.approx(o["S_words"])
    assert c.S_syllab == pytest.approx(o["S_syllab"])
    # chain: words are a function of the padded tuple, joint entropy is at most
    # the sum of marginals, and the marginals average to the pooled slot law
    assert o["S_words"] <= o["S_joint"] + 1e-9
    assert o["S_joint"] <= o["sum_marginals"] + 1e-9
    assert o["sum_marginals"] <= c.z * o["S_pooled"] + 1e-9
    # pooled slot entropy splits into the empty-syllable part and the rest
    assert c.z * o["S_pooled"] == pytest.approx(c.z * h2(c.z_bar / c.z) + c.z_bar * c.S_syllab)
    assert c.rhs - c.lhs == pytest.approx(c.z * o["S_pooled"] - o["S_words"])
    return c


def test_concat_hap_pen_cat():
    c = _check_against_oracle([["hap", "pen"], ["cat"]])
    assert c.z == 2 and c.z_bar == 1.5 and c.g_theta == 0.25
    assert c.holds
    assert not c.swapped_form_defined


syll_st = st.sampled_from(["a", "b", "ab", "ba", "c", "abc", "ca"])
decomp_st = st.lists(st.lists(syll_st, min_size=1, max_size=3), min_size=1, max_size=4)


@settings(max_examples=300)
@given(decomp_st)
def test_concat_matches_padded_construction(words):
    c = _check_against_oracle(words)
    assert c.holds


def test_concat_with_syllabifier_on_book(books):
    words = tokenize(normalize(books["alice29.txt"]), AlphabetSpec.words())
    c = concat_inequality_check(words)
    assert c.holds and 1 <= c.z_bar <= c.z
    assert c.g_theta == pytest.approx(1 - c.z_bar / c.z)
    assert c.entropy_product_holds


def test_entropy_product_exact_concatenation():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.choice([1, 2, 3])
        letters = "".join(rng.choice("aabcde") for _ in range(2 * n * rng.randint(1, 40)))
        fine = [letters[i:i + n] for i in range(0, len(letters), n)]
        coarse = [letters[i:i + 2 * n] for i in range(0, len(letters), 2 * n)]
        assert entropy_product(coarse) <= entropy_product(fine) + 1e-9
    assert entropy_product("abab") == 4.0


def test_analyze_letters_vs_words():
    raw = random_texts(1, seed=9)[0] * 5
    reps = analyze_text(raw, [ContainerConfig(AlphabetSpec.letters(), "l8"), ContainerConfig(AlphabetSpec.words(), "l8")])
    assert len(reps) == 2
    assert reps[1].codebook_bits > reps[0].codebook_bits


def test_analyze_periodic_text():
    (rep,) = analyze_text("ab" * 300, [ContainerConfig(AlphabetSpec.letters(), "l8")])
    assert rep.entropy_bits == 1.0
    assert rep.code_only_bits == 600


def test_analyze_reports_failures_per_row(tmp_path):
    configs = [
        ContainerConfig(AlphabetSpec.words(), "l8"),
        ContainerConfig(AlphabetSpec.syllables(f"patterns:{tmp_path}/missing.pat"), "l8"),
        ContainerConfig(AlphabetSpec.letters(), "l5"),
    ]
    reps = analyze_text("hello world", configs)
    assert isinstance(reps[0], CompressionReport)
    assert isinstance(reps[1], FailedReport) and "PatternFileError" in reps[1].error
    assert isinstance(reps[2], CompressionReport)
    assert all(isinstance(r, FailedReport) for r in analyze_text("123", configs))


def _check_report(rep, letters):
    assert rep.total_bits == rep.code_only_bits + rep.codebook_bits
    ns = rep.N * rep.entropy_bits
    assert ns - 1e-9 <= rep.code_only_bits <= ns + rep.N + 1e-9
    recomputed = (rep.code_only_bits + rep.codebook_bits) / (rep.denominator_l * rep.letters_count)
    assert abs(recomputed - rep.eta) <= 1e-12
    assert rep.letters_count == len(letters)


def test_reports_match_serialized_sizes():
    for raw in random_texts(10, seed=21):
        letters = normalize(raw).letters
        for rep, cfg in zip(analyze_text(raw, default_configs()), default_configs()):
            _check_report(rep, letters)
            c = compress(raw, cfg)
            assert (rep.code_only_bits, rep.codebook_bits) == (c.code_only_bits, c.codebook_bits)


def test_default_configs_cover_all_alphabets():
    cfgs = default_configs()
    assert len(cfgs) == 21
    assert {c.alphabet.label for c in cfgs} == {
        "letters", "letter2gram", "letter3gram", "letter4gram", "syllables", "words", "word_pairs"}


def test_book_claims(books):
    for name, raw in books.items():
        text = normalize(raw)
        rep = {c.alphabet.label: build_report(text, c) for c in default_configs() if c.repr is ReprKind.L8}
        assert rep["words"].code_only_bits < rep["syllables"].code_only_bits, name
        assert rep["letter3gram"].total_bits > rep["letter2gram"].total_bits, name
        assert 0.3 <= rep["syllables"].eta < 1.0, name
        # the code-only length falls as symbols get longer
        order = ["letters", "letter2gram", "letter3gram", "letter4gram"]
        assert [rep[a].code_only_bits for a in order] == sorted((rep[a].code_only_bits for a in order), reverse=True)
        assert rep["word_pairs"].code_only_bits < rep["words"].code_only_bits
