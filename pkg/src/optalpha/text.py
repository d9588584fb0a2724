"""Text normalization and tokenization into the five alphabet kinds.

Normalization lowercases, keeps ASCII letters only and records where each
word starts and ends in the resulting letter sequence.  Spaces are never
coded, so every tokenizer produces a sequence of letter strings whose
concatenation is exactly the normalized letter sequence.
"""

from __future__ import annotations

import enum
import math
import unicodedata
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import ConfigurationError, EmptyTextError

__all__ = [
    "AlphabetKind",
    "AlphabetSpec",
    "NormalizedText",
    "TokenStream",
    "normalize",
    "tokenize",
    "expected_token_count",
]

_APOSTROPHES = frozenset("'’ʼ")


@dataclass(frozen=True)
class NormalizedText:
    """Lowercase a-z letters plus the (start, end) span of every word."""

    letters: str
    word_spans: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "word_spans", tuple(tuple(s) for s in self.word_spans))

    @property
    def words(self) -> list[str]:
        return [self.letters[a:b] for a, b in self.word_spans]

    def __len__(self) -> int:
        return len(self.letters)

    def render(self) -> str:
        """Words joined by single spaces; ``normalize(t.render()) == t``."""
        return " ".join(self.words)


def _is_word_char(ch: str) -> bool:
    # non-ASCII letters and combining marks stay inside the word but are dropped
    return ch.isalpha() or ch in _APOSTROPHES or unicodedata.category(ch).startswith("M")


class _CharClasses(dict):
    """``str.translate`` table: ASCII letters to lowercase, other word
    characters deleted, everything else to a space.  Filled lazily."""

    def __missing__(self, cp: int):
        ch = chr(cp)
        if ch.isascii() and ch.isalpha():
            out = ch.lower()
        elif _is_word_char(ch):
            out = None
        else:
            out = " "
        self[cp] = out
        return out


_CLASSES = _CharClasses()


def normalize(raw: str) -> NormalizedText:
    """Lowercase, drop everything but a-z and find word boundaries.

    A word is a maximal run of letters and apostrophes; digits, whitespace,
    punctuation and symbols end it.  Apostrophes and non-ASCII letters are
    removed without splitting the word (``"Don't"`` becomes ``"dont"``).
    Runs that keep no ASCII letter (``"9"``, ``"éé"``) vanish.
    """
    words = raw.translate(_CLASSES).split()
    if not words:
        raise EmptyTextError("empty text: no letters a-z after normalization")
    spans = []
    pos = 0
    for w in words:
        spans.append((pos, pos + len(w)))
        pos += len(w)
    return NormalizedText("".join(words), tuple(spans))


class AlphabetKind(str, enum.Enum):
    LETTERS = "letters"
    LETTER_NGRAM = "letter_ngram"
    SYLLABLES = "syllables"
    WORDS = "words"
    WORD_PAIRS = "word_pairs"


@dataclass(frozen=True)
class AlphabetSpec:
    """Which alphabet to segment a text into.

    ``n`` is required for (and only for) letter n-grams.  ``syllabifier`` is an
    identifier understood by :func:`optalpha.syllables.get_syllabifier`:
    ``"ssp"`` (default) or ``"patterns:<path>"``.
    """

    kind: AlphabetKind
    n: int | None = None
    syllabifier: str = "ssp"

    def __post_init__(self):
        try:
            kind = AlphabetKind(self.kind)
        except ValueError:
            raise ConfigurationError(f"unknown alphabet kind {self.kind!r}") from None
        object.__setattr__(self, "kind", kind)
        if kind is AlphabetKind.LETTER_NGRAM:
            if self.n is None or int(self.n) < 2:
                raise ConfigurationError("letter n-grams need n >= 2")
            object.__setattr__(self, "n", int(self.n))
        elif self.n is not None:
            raise ConfigurationError(f"n is only meaningful for letter n-grams, not {kind.value}")

    @classmethod
    def letters(cls) -> "AlphabetSpec":
        return cls(AlphabetKind.LETTERS)

    @classmethod
    def ngram(cls, n: int) -> "AlphabetSpec":
        return cls(AlphabetKind.LETTER_NGRAM, n)

    @classmethod
    def syllables(cls, syllabifier: str = "ssp") -> "AlphabetSpec":
        return cls(AlphabetKind.SYLLABLES, syllabifier=syllabifier)

    @classmethod
    def words(cls) -> "AlphabetSpec":
        return cls(AlphabetKind.WORDS)

    @classmethod
    def word_pairs(cls) -> "AlphabetSpec":
        return cls(AlphabetKind.WORD_PAIRS)

    @property
    def label(self) -> str:
        if self.kind is AlphabetKind.LETTER_NGRAM:
            return f"letter{self.n}gram"
        if self.kind is AlphabetKind.SYLLABLES and self.syllabifier != "ssp":
            return "syllables[" + self.syllabifier + "]"
        return self.kind.value


@dataclass(frozen=True)
class TokenStream:
    tokens: tuple[str, ...]
    alphabet: AlphabetSpec = field(default_factory=AlphabetSpec.letters)

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __getitem__(self, i):
        return self.tokens[i]

    def joined(self) -> str:
        return "".join(self.tokens)


def _partition(letters: str, n: int) -> list[str]:
    return [letters[i:i + n] for i in range(0, len(letters), n)]


def tokenize(
    text: NormalizedText,
    spec: AlphabetSpec,
    syllabifier: Callable[[str], Sequence[str]] | None = None,
) -> TokenStream:
    """Segment ``text`` into the tokens of ``spec``.

    N-grams are non-overlapping blocks with a possibly shorter last block;
    word pairs are non-overlapping with an odd last word on its own.  For
    syllables an explicit ``syllabifier`` callable overrides ``spec.syllabifier``.
    """
    if not text.letters:
        raise EmptyTextError("empty text")
    kind = spec.kind
    if kind is AlphabetKind.LETTERS:
        tokens = list(text.letters)
    elif kind is AlphabetKind.LETTER_NGRAM:
        tokens = _partition(text.letters, spec.n)
    elif kind is AlphabetKind.WORDS:
        tokens = text.words
    elif kind is AlphabetKind.WORD_PAIRS:
        words = text.words
        tokens = ["".join(words[i:i + 2]) for i in range(0, len(words), 2)]
    elif kind is AlphabetKind.SYLLABLES:
        if syllabifier is None:
            from .syllables import get_syllabifier

            syllabifier = get_syllabifier(spec.syllabifier)
        tokens = []
        cache: dict[str, Sequence[str]] = {}
        for w in text.words:
            parts = cache.get(w)
            if parts is None:
                parts = cache[w] = tuple(syllabifier(w))
            tokens.extend(parts)
    else:  # pragma: no cover - enum is closed
        raise ConfigurationError(f"unsupported alphabet {kind}")
    return TokenStream(tuple(tokens), spec)


def expected_token_count(text: NormalizedText, spec: AlphabetSpec) -> int | None:
    """Token count implied by the partition rules (None for syllables)."""
    kind = spec.kind
    if kind is AlphabetKind.LETTERS:
        return len(text.letters)
    if kind is AlphabetKind.LETTER_NGRAM:
        return math.ceil(len(text.letters) / spec.n)
    if kind is AlphabetKind.WORDS:
        return len(text.word_spans)
    if kind is AlphabetKind.WORD_PAIRS:
        return math.ceil(len(text.word_spans) / 2)
    return None
