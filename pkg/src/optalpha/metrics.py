"""Per-text measurements: code lengths, compressibility, Zipf estimates and
the entropy bound for concatenating syllables into words."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields
from typing import Callable, Iterable, Sequence

from .codebook import CodebookFormat, ReprKind, codebook_length, get_repr
from .container import ContainerConfig, kolmogorov_bound
from .errors import OptAlphaError
from .huffman import build_canonical_code, count_frequencies, encoded_length, entropy
from .text import AlphabetSpec, NormalizedText, TokenStream, normalize, tokenize

__all__ = [
    "CompressionReport",
    "FailedReport",
    "default_denominator",
    "compressibility",
    "build_report",
    "analyze_text",
    "default_configs",
    "ZipfEstimate",
    "zipf_estimates",
    "h2",
    "entropy_product",
    "ConcatCheck",
    "concat_check_from_decomposition",
    "concat_inequality_check",
]


def default_denominator(repr: ReprKind | str) -> int:
    """Bits per letter of the uncompressed text: the letter width, 8 for lvar."""
    width = get_repr(repr).width
    return width if width is not None else 8


@dataclass(frozen=True)
class CompressionReport:
    text_id: str
    alphabet: str
    repr: str
    format: str
    N: int
    M: int
    entropy_bits: float
    code_only_bits: int
    codebook_bits: int
    total_bits: int
    eta: float
    letters_count: int
    words_count: int
    kolmogorov_bound_bits: int
    denominator_l: int

    @property
    def bits_per_word(self) -> float:
        return self.total_bits / self.words_count if self.words_count else math.nan

    @property
    def enc_to_codebook_ratio(self) -> float:
        return self.code_only_bits / self.codebook_bits

    def as_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def field_names(cls) -> list[str]:
        return [f.name for f in fields(cls)]


@dataclass(frozen=True)
class FailedReport:
    """A configuration that could not be analyzed, kept as its own row."""

    text_id: str
    alphabet: str
    repr: str
    format: str
    error: str


def compressibility(report: CompressionReport, denominator_L: int = 8) -> float:
    if report.letters_count < 1:
        raise ValueError("letters_count must be >= 1")
    return (report.code_only_bits + report.codebook_bits) / (denominator_L * report.letters_count)


def build_report(
    text: NormalizedText,
    cfg: ContainerConfig,
    text_id: str = "",
    denominator_l: int | None = None,
    tokens: TokenStream | None = None,
) -> CompressionReport:
    """Measure ``cfg`` on ``text`` from code lengths alone (nothing is serialized)."""
    if tokens is None:
        tokens = tokenize(text, cfg.alphabet)
    freqs = count_frequencies(tokens)
    code = build_canonical_code(freqs)
    return _report_from_code(text, cfg, text_id, denominator_l, freqs, code)


def _report_from_code(text, cfg, text_id, denominator_l, freqs, code) -> CompressionReport:
    code_only = encoded_length(freqs, code.lengths)
    cb = codebook_length(code, cfg.repr, cfg.codebook_format)
    den = denominator_l if denominator_l is not None else default_denominator(cfg.repr)
    total = code_only + cb
    return CompressionReport(
        text_id=text_id,
        alphabet=cfg.alphabet.label,
        repr=cfg.repr.value,
        format=cfg.codebook_format.value,
        N=freqs.total,
        M=freqs.size,
        entropy_bits=entropy(freqs),
        code_only_bits=code_only,
        codebook_bits=cb,
        total_bits=total,
        eta=total / (den * len(text.letters)),
        letters_count=len(text.letters),
        words_count=len(text.word_spans),
        kolmogorov_bound_bits=kolmogorov_bound(cb, code_only),
        denominator_l=den,
    )


def default_configs(syllabifier: str = "ssp", ngram_sizes: Sequence[int] = (2, 3, 4)) -> list[ContainerConfig]:
    """Every alphabet at every letter representation, block codebooks."""
    alphabets = [AlphabetSpec.letters()]
    alphabets += [AlphabetSpec.ngram(n) for n in ngram_sizes]
    alphabets += [AlphabetSpec.syllables(syllabifier), AlphabetSpec.words(), AlphabetSpec.word_pairs()]
    return [ContainerConfig(a, r, CodebookFormat.BLOCKS) for a in alphabets for r in ReprKind]


def analyze_text(
    raw: str | NormalizedText,
    configs: Iterable[ContainerConfig] | None = None,
    text_id: str = "",
    denominator_l: int | None = None,
) -> list[CompressionReport | FailedReport]:
    """One report per config.  A failing config yields a FailedReport row
    instead of aborting the others; an empty text fails every row."""
    configs = list(default_configs() if configs is None else configs)
    try:
        text = raw if isinstance(raw, NormalizedText) else normalize(raw)
    except OptAlphaError as exc:
        return [_failed(text_id, cfg, exc) for cfg in configs]
    # tokenization and Huffman construction depend on the alphabet only
    built: dict[AlphabetSpec, tuple | Exception] = {}
    out: list[CompressionReport | FailedReport] = []
    for cfg in configs:
        try:
            if cfg.alphabet not in built:
                try:
                    freqs = count_frequencies(tokenize(text, cfg.alphabet))
                    built[cfg.alphabet] = (freqs, build_canonical_code(freqs))
                except (OptAlphaError, ValueError) as exc:
                    built[cfg.alphabet] = exc
            entry = built[cfg.alphabet]
            if isinstance(entry, Exception):
                raise entry
            out.append(_report_from_code(text, cfg, text_id, denominator_l, *entry))
        except (OptAlphaError, ValueError) as exc:
            out.append(_failed(text_id, cfg, exc))
    return out


def _failed(text_id: str, cfg: ContainerConfig, exc: Exception) -> FailedReport:
    return FailedReport(
        text_id, cfg.alphabet.label, cfg.repr.value, cfg.codebook_format.value,
        f"{type(exc).__name__}: {exc}",
    )


@dataclass(frozen=True)
class ZipfEstimate:
    codebook_est_bits: float
    code_est_bits: float
    ratio_bound: float


def zipf_estimates(M_words: int, N_words: float, L: int) -> ZipfEstimate:
    """Codebook and code length of a word alphabet whose rank frequencies
    follow Zipf's law: 4.7*L*M and N*log2(sqrt(M)*ln M)."""
    if M_words < 2:
        raise ValueError("M_words must be >= 2")
    if N_words < M_words:
        raise ValueError("N_words must be >= M_words")
    codebook = 4.7 * L * M_words
    code = N_words * math.log2(math.sqrt(M_words) * math.log(M_words))
    return ZipfEstimate(codebook, code, code / codebook)


def h2(x: float) -> float:
    """Binary entropy in bits; defined on [0, 1]."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"binary entropy is undefined at {x}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def entropy_product(tokens: Iterable[str]) -> float:
    """N * S: the entropy lower bound on the code-only length, in bits."""
    freqs = count_frequencies(tokens)
    return freqs.total * entropy(freqs)


@dataclass(frozen=True)
class ConcatCheck:
    """Entropy of words versus the syllables they are built from.

    With z the largest syllable count of a word and z_bar the mean, padding
    every word to z syllables with an empty syllable gives that syllable the
    frequency ``g_theta = 1 - z_bar/z`` and the bound

        S_words - z*h2(z_bar/z) <= z_bar * S_syllab
    """

    z: int
    z_bar: float
    g_theta: float
    S_words: float
    S_syllab: float
    N_words: int
    N_syllab: int
    h2_value: float
    lhs: float
    rhs: float
    slack: float
    # the same bound written with h2(z/z_bar) only makes sense when z == z_bar
    swapped_form_defined: bool
    # N_words*S_words <= N_syllab*S_syllab
    entropy_product_holds: bool

    @property
    def holds(self) -> bool:
        return self.slack >= -1e-9


def concat_check_from_decomposition(words: Sequence[Sequence[str]]) -> ConcatCheck:
    """``words`` lists the syllables of every word token in reading order.
    A word is identified with the concatenation of its syllables."""
    if not words:
        raise ValueError("need at least one word")
    if any(len(w) == 0 for w in words):
        raise ValueError("every word needs at least one syllable")
    word_tokens = ["".join(w) for w in words]
    syl_tokens = [s for w in words for s in w]
    z = max(len(w) for w in words)
    n_w, n_s = len(word_tokens), len(syl_tokens)
    z_bar = n_s / n_w
    s_w = entropy(count_frequencies(word_tokens))
    s_s = entropy(count_frequencies(syl_tokens))
    hv = h2(z_bar / z)
    lhs = s_w - z * hv
    rhs = z_bar * s_s
    return ConcatCheck(
        z=z,
        z_bar=z_bar,
        g_theta=1 - z_bar / z,
        S_words=s_w,
        S_syllab=s_s,
        N_words=n_w,
        N_syllab=n_s,
        h2_value=hv,
        lhs=lhs,
        rhs=rhs,
        slack=rhs - lhs,
        swapped_form_defined=n_s == z * n_w,
        entropy_product_holds=n_w * s_w <= n_s * s_s + 1e-9,
    )


def concat_inequality_check(
    word_tokens: TokenStream | Sequence[str],
    syllabifier: Callable[[str], Sequence[str]] | str = "ssp",
) -> ConcatCheck:
    if isinstance(syllabifier, str):
        from .syllables import get_syllabifier

        syllabifier = get_syllabifier(syllabifier)
    cache: dict[str, Sequence[str]] = {}
    words = []
    for w in word_tokens:
        if w not in cache:
            cache[w] = tuple(syllabifier(w))
        words.append(cache[w])
    return concat_check_from_decomposition(words)
