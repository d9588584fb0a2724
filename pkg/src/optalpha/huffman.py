"""Frequency counting, entropy, canonical Huffman codes and stream coding."""

from __future__ import annotations

import heapq
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .bitio import BitReader, BitString
from .errors import CorruptStreamError, TruncatedStreamError, UnknownSymbolError
from .text import TokenStream

__all__ = [
    "FrequencyTable",
    "CanonicalCode",
    "count_frequencies",
    "entropy",
    "huffman_lengths",
    "build_canonical_code",
    "kraft_sum",
    "encoded_length",
    "encode_stream",
    "decode_stream",
]


@dataclass(frozen=True)
class FrequencyTable:
    counts: Mapping[str, int]
    total: int

    def __post_init__(self):
        counts = dict(self.counts)
        if any(c < 1 for c in counts.values()):
            raise ValueError("all counts must be >= 1")
        if sum(counts.values()) != self.total:
            raise ValueError("total does not match the counts")
        object.__setattr__(self, "counts", MappingProxyType(counts))

    @classmethod
    def from_counts(cls, counts: Mapping[str, int]) -> "FrequencyTable":
        return cls(dict(counts), sum(counts.values()))

    @property
    def size(self) -> int:
        """Number of distinct symbols M."""
        return len(self.counts)

    def frequency(self, symbol: str) -> float:
        return self.counts[symbol] / self.total


def count_frequencies(tokens: TokenStream | Iterable[str]) -> FrequencyTable:
    counts = Counter(tokens)
    if not counts:
        raise ValueError("cannot count frequencies of an empty token stream")
    return FrequencyTable(counts, sum(counts.values()))


def entropy(freqs: FrequencyTable) -> float:
    """Shannon entropy in bits per symbol."""
    n = freqs.total
    return sum(c * math.log2(n / c) for c in freqs.counts.values()) / n


def huffman_lengths(freqs: FrequencyTable) -> dict[str, int]:
    """Optimal codeword lengths.

    Ties between equal weights go to the node whose smallest symbol sorts
    first.  A single symbol gets length 1.
    """
    items = list(freqs.counts.items())
    if len(items) == 1:
        return {items[0][0]: 1}
    # heap entries: (weight, min_symbol, symbols under this node)
    heap = [(c, s, [s]) for s, c in items]
    heapq.heapify(heap)
    depth = {s: 0 for s, _ in items}
    while len(heap) > 1:
        w1, m1, s1 = heapq.heappop(heap)
        w2, m2, s2 = heapq.heappop(heap)
        for s in s1:
            depth[s] += 1
        for s in s2:
            depth[s] += 1
        # merge smaller list into larger to keep this O(M log M) overall
        merged = s1 + s2 if len(s1) >= len(s2) else s2 + s1
        heapq.heappush(heap, (w1 + w2, min(m1, m2), merged))
    return depth


def kraft_sum(lengths: Iterable[int]) -> Fraction:
    return sum((Fraction(1, 2 ** l) for l in lengths), Fraction(0))


class CanonicalCode:
    """Prefix code whose codewords follow from (lengths, symbol order).

    Symbols are taken in ``symbol_order``; codewords of equal length are
    consecutive integers and the running value is left-shifted whenever the
    length grows.  The default order is (length, symbol).
    """

    def __init__(self, lengths: Mapping[str, int], symbol_order: Sequence[str] | None = None):
        if not lengths:
            raise ValueError("a code needs at least one symbol")
        if any(l < 1 for l in lengths.values()):
            raise ValueError("codeword lengths must be >= 1")
        if symbol_order is None:
            symbol_order = sorted(lengths, key=lambda s: (lengths[s], s))
        else:
            symbol_order = list(symbol_order)
            if sorted(symbol_order) != sorted(lengths):
                raise ValueError("symbol_order must list every symbol exactly once")
            if any(lengths[a] > lengths[b] for a, b in zip(symbol_order, symbol_order[1:])):
                raise ValueError("symbol_order must be non-decreasing in codeword length")
        if kraft_sum(lengths.values()) > 1:
            raise ValueError("lengths violate the Kraft inequality")
        self.lengths: Mapping[str, int] = MappingProxyType(dict(lengths))
        self.symbol_order: tuple[str, ...] = tuple(symbol_order)
        codewords = {}
        code = 0
        prev_len = lengths[self.symbol_order[0]]
        for sym in self.symbol_order:
            l = lengths[sym]
            code <<= l - prev_len
            prev_len = l
            codewords[sym] = BitString.from_int(code, l)
            code += 1
        self.codewords: Mapping[str, BitString] = MappingProxyType(codewords)

    def __len__(self) -> int:
        return len(self.lengths)

    def __contains__(self, symbol) -> bool:
        return symbol in self.lengths

    def __eq__(self, other) -> bool:
        if not isinstance(other, CanonicalCode):
            return NotImplemented
        return self.symbol_order == other.symbol_order and dict(self.codewords) == dict(other.codewords)

    def __repr__(self) -> str:
        return f"CanonicalCode(M={len(self)}, lengths {min(self.lengths.values())}..{max(self.lengths.values())})"

    def blocks(self) -> list[tuple[int, list[str]]]:
        """Symbols grouped by codeword length, in canonical order."""
        out: list[tuple[int, list[str]]] = []
        for sym in self.symbol_order:
            l = self.lengths[sym]
            if out and out[-1][0] == l:
                out[-1][1].append(sym)
            else:
                out.append((l, [sym]))
        return out


def build_canonical_code(freqs: FrequencyTable) -> CanonicalCode:
    return CanonicalCode(huffman_lengths(freqs))


def encoded_length(freqs: FrequencyTable, lengths: Mapping[str, int]) -> int:
    """Code-only length: sum of count times codeword length."""
    return sum(c * lengths[s] for s, c in freqs.counts.items())


def _codeword_table(code) -> dict[str, str]:
    if isinstance(code, CanonicalCode):
        code = code.codewords
    return {s: str(cw) for s, cw in code.items()}


def encode_stream(tokens: TokenStream | Iterable[str], code: CanonicalCode | Mapping[str, BitString]) -> BitString:
    table = _codeword_table(code)
    try:
        return BitString._trusted("".join([table[t] for t in tokens]))
    except KeyError as exc:
        raise UnknownSymbolError(f"token {exc.args[0]!r} has no codeword") from None


def decode_stream(
    bits: BitReader,
    code: CanonicalCode | Mapping[str, BitString],
    count: int,
) -> list[str]:
    """Read exactly ``count`` codewords.  Works for any prefix code."""
    table = {cw: s for s, cw in _codeword_table(code).items()}
    lengths = sorted({len(cw) for cw in table})
    raw = str(bits.source)
    pos = bits.cursor
    end = len(raw)
    out = []
    append = out.append
    get = table.get
    for _ in range(count):
        for l in lengths:
            sym = get(raw[pos:pos + l])
            if sym is not None and pos + l <= end:
                append(sym)
                pos += l
                break
        else:
            bits.cursor = pos
            tail = raw[pos:]
            if any(len(cw) > len(tail) and cw.startswith(tail) for cw in table):
                raise TruncatedStreamError(
                    f"stream ended inside codeword {len(out) + 1} of {count} at offset {pos}"
                )
            raise CorruptStreamError(f"no codeword matches at offset {pos}")
    bits.cursor = pos
    return out
