"""Syllabifiers: a letter-level sonority-sequencing splitter and a
TeX-style hyphenation pattern loader.

Both are plain callables ``word -> list[str]`` whose output concatenates
back to the input word.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping, Sequence

from .errors import ConfigurationError, PatternFileError

__all__ = [
    "SonorityScale",
    "DEFAULT_SCALE",
    "SSPSyllabifier",
    "syllabify_ssp",
    "HyphenationPatterns",
    "load_hyphenation_patterns",
    "get_syllabifier",
]

Syllabifier = Callable[[str], Sequence[str]]

VOWELS = frozenset("aeiou")


def _default_ranks() -> dict[str, int]:
    # Higher is more sonorous.  Vowel letters keep the relative order
    # a > e,o > i,u and sit above every consonant; the consonant classes
    # then follow glides > liquids > nasals > voiced fricatives >
    # voiceless fricatives > voiced stops > voiceless stops.
    ranks: dict[str, int] = {"a": 10, "e": 9, "o": 9, "i": 8, "u": 8}
    classes = [
        (7, "wy"),
        (6, "lr"),
        (5, "mn"),
        (4, "zv"),
        (3, "fsh"),
        (2, "bdgj"),
        (1, "ptkcqx"),
    ]
    for rank, letters in classes:
        for ch in letters:
            ranks[ch] = rank
    return ranks


@dataclass(frozen=True)
class SonorityScale:
    """Sonority rank per letter, plus ranks for multi-letter units.

    ``y`` is ranked as a glide; when it acts as a vowel it gets
    ``vowel_y_rank`` instead.
    """

    rank: Mapping[str, int] = field(default_factory=_default_ranks)
    unit_rank: Mapping[str, int] = field(default_factory=lambda: {
        "th": 3, "sh": 3, "ph": 3, "ch": 2, "wh": 7, "ss": 3, "ll": 6, "qu": 1,
    })
    vowel_y_rank: int = 8

    def __post_init__(self):
        lowest_vowel = min(self.rank[v] for v in VOWELS)
        for ch, r in self.rank.items():
            if ch not in VOWELS and r >= lowest_vowel:
                raise ValueError(f"consonant {ch!r} must rank below every vowel")

    def of(self, unit: str) -> int:
        if unit in self.unit_rank:
            return self.unit_rank[unit]
        return self.rank.get(unit, 1)


DEFAULT_SCALE = SonorityScale()

# never split; the first five may open a syllable
_DIGRAPHS = ("th", "sh", "ph", "ch", "wh", "ss", "ll", "qu")
# single-unit clusters that stay with the preceding nucleus: bless-ing, fall-en, ex-am
_CODA_UNITS = frozenset({"ss", "ll", "x"})

# rising onsets of two or more units that can start an English word
LEGAL_ONSETS = frozenset({
    "bl", "br", "cl", "cr", "dr", "dw", "fl", "fr", "gl", "gr", "kl", "kr", "kn",
    "pl", "pr", "sl", "sm", "sn", "sw", "tr", "tw",
    "thr", "thw", "shr", "phr", "phl", "chr", "chl",
})


def _units(word: str) -> list[str]:
    units = []
    i = 0
    while i < len(word):
        pair = word[i:i + 2]
        if pair in _DIGRAPHS:
            units.append(pair)
            i += 2
        else:
            units.append(word[i])
            i += 1
    return units


class SSPSyllabifier:
    """Letter-level syllabifier driven by the sonority sequencing principle.

    Vowel runs form nuclei (a crude stand-in for diphthongs).  Between two
    nuclei the consonant cluster is split so the next syllable gets the
    longest onset whose sonority strictly rises and that could begin an
    English word; everything else becomes coda.  A word-final silent ``e``
    is not a nucleus, except in ``-Cle`` endings (``ta-ble``).

    ``y_as_vowel``: ``"fallback"`` (default) treats y as a vowel only in
    words with no a/e/i/o/u, ``"always"`` everywhere, ``"never"`` nowhere.
    """

    def __init__(self, scale: SonorityScale = DEFAULT_SCALE, y_as_vowel: str = "fallback"):
        if y_as_vowel not in ("fallback", "always", "never"):
            raise ConfigurationError(f"bad y_as_vowel {y_as_vowel!r}")
        self.scale = scale
        self.y_as_vowel = y_as_vowel

    def _vowel_mask(self, word: str, units: list[str]) -> list[bool]:
        if self.y_as_vowel == "always":
            y_vowel = True
        elif self.y_as_vowel == "never":
            y_vowel = False
        else:
            y_vowel = not any(c in VOWELS for c in word)
        mask = [u in VOWELS or (y_vowel and u == "y") for u in units]
        if self.y_as_vowel == "always" and units and units[0] == "y" and len(units) > 1 and mask[1]:
            mask[0] = False  # word-initial consonant y: yes, you
        # silent final e
        n = len(units)
        if n >= 3 and units[-1] == "e" and not mask[-2] and any(mask[:-2]):
            cle = units[-2] == "l" and n >= 4 and not mask[-3]
            if not cle:
                mask[-1] = False
        return mask

    def _rank(self, unit: str, is_vowel: bool) -> int:
        if is_vowel and unit == "y":
            return self.scale.vowel_y_rank
        return self.scale.of(unit)

    def _onset_start(self, cluster: list[str]) -> int:
        """Index in ``cluster`` where the next syllable's onset begins."""
        k = len(cluster)
        if k == 1:
            return 1 if cluster[0] in _CODA_UNITS else 0
        best = k - 1
        if cluster[best] in _CODA_UNITS:
            return k
        for j in range(k - 2, -1, -1):
            onset = cluster[j:]
            if onset[0] in _CODA_UNITS:
                break
            ranks = [self.scale.of(u) for u in onset]
            if any(a >= b for a, b in zip(ranks, ranks[1:])):
                break
            if "".join(onset) in LEGAL_ONSETS:
                best = j
        return best

    def __call__(self, word: str) -> list[str]:
        if not word:
            raise ValueError("cannot syllabify an empty word")
        units = _units(word)
        mask = self._vowel_mask(word, units)
        # nuclei as (first, last) unit indices of maximal vowel runs
        nuclei = []
        i = 0
        while i < len(units):
            if mask[i]:
                j = i
                while j + 1 < len(units) and mask[j + 1]:
                    j += 1
                nuclei.append((i, j))
                i = j + 1
            else:
                i += 1
        if len(nuclei) <= 1:
            return [word]
        cuts = []
        for (_, end), (nxt, _) in zip(nuclei, nuclei[1:]):
            cluster = units[end + 1:nxt]
            cuts.append(end + 1 + self._onset_start(cluster))
        out = []
        prev = 0
        for c in cuts + [len(units)]:
            out.append("".join(units[prev:c]))
            prev = c
        return out


_default_ssp = SSPSyllabifier()


def syllabify_ssp(word: str, scale: SonorityScale = DEFAULT_SCALE) -> list[str]:
    if scale is DEFAULT_SCALE:
        return _default_ssp(word)
    return SSPSyllabifier(scale)(word)


_PATTERN_RE = re.compile(r"^[.\w]+$")


class HyphenationPatterns:
    """Liang-style hyphenation with TeX patterns: an odd score between two
    letters marks a break.  ``left_min``/``right_min`` bound the size of the
    first and last piece."""

    def __init__(self, patterns: Mapping[str, Sequence[int]], left_min: int = 1, right_min: int = 1):
        self.patterns = dict(patterns)
        self.left_min = left_min
        self.right_min = right_min
        self._maxlen = max((len(k) for k in self.patterns), default=0)

    @staticmethod
    def parse_pattern(token: str) -> tuple[str, list[int]]:
        letters = re.sub(r"\d", "", token)
        points = [int(d) if d else 0 for d in re.split(r"[^\d]", token)]
        return letters, points

    def breakpoints(self, word: str) -> list[int]:
        """Positions ``i`` (0 < i < len(word)) where the word may be split."""
        work = "." + word + "."
        scores = [0] * (len(work) + 1)
        for i in range(len(work)):
            for j in range(i + 1, min(len(work), i + self._maxlen) + 1):
                points = self.patterns.get(work[i:j])
                if points is not None:
                    for k, p in enumerate(points):
                        if p > scores[i + k]:
                            scores[i + k] = p
        # scores[i + 1] sits before word[i]
        return [
            i for i in range(max(1, self.left_min), len(word) - max(1, self.right_min) + 1)
            if scores[i + 1] % 2 == 1
        ]

    def __call__(self, word: str) -> list[str]:
        out = []
        prev = 0
        for b in self.breakpoints(word):
            out.append(word[prev:b])
            prev = b
        out.append(word[prev:])
        return out


def load_hyphenation_patterns(path, left_min: int = 1, right_min: int = 1) -> HyphenationPatterns:
    """Read a UTF-8 pattern file: whitespace-separated patterns such as
    ``1na`` or ``.ab3c``; lines starting with ``%`` are comments."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise PatternFileError(f"cannot read pattern file: {exc}", path) from exc
    patterns: dict[str, list[int]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            continue
        for token in stripped.split():
            if not _PATTERN_RE.match(token) or not any(c.isdigit() for c in token):
                raise PatternFileError(f"malformed pattern {token!r}", path, lineno)
            letters, points = HyphenationPatterns.parse_pattern(token.lower())
            if not letters.strip("."):
                raise PatternFileError(f"pattern {token!r} has no letters", path, lineno)
            patterns[letters] = points
    return HyphenationPatterns(patterns, left_min, right_min)


@functools.lru_cache(maxsize=None)
def _cached_patterns(path: str) -> HyphenationPatterns:
    return load_hyphenation_patterns(path)


_BUILTIN: dict[str, Syllabifier] = {
    "ssp": _default_ssp,
    "ssp-y-always": SSPSyllabifier(y_as_vowel="always"),
    "ssp-y-never": SSPSyllabifier(y_as_vowel="never"),
}


def get_syllabifier(ident: str) -> Syllabifier:
    """Resolve ``"ssp"``, ``"ssp-y-always"``, ``"ssp-y-never"`` or
    ``"patterns:<path>"`` to a syllabifier."""
    if ident in _BUILTIN:
        return _BUILTIN[ident]
    if ident.startswith("patterns:"):
        return _cached_patterns(ident[len("patterns:"):])
    raise ConfigurationError(f"unknown syllabifier {ident!r}")
