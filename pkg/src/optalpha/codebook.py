"""Letter representations and the two codebook wire formats.

Block format (lengths only, canonical codewords are regenerated)::

    gamma(B)  then per block, ascending codeword length z:
        gamma(z) gamma(k_z) gamma(alpha(a_1)) ... gamma(alpha(a_k_z))

where B is the number of non-empty blocks, k_z the number of symbols in
the block and alpha(a) the spelling of symbol a in the letter
representation.  Symbols inside a block are in lexicographic order.

Flat format (explicit codewords, fixed-width letters only)::

    per symbol: ("1" + L-bit letter) for each letter, then gamma(codeword)

The gamma codeword always begins with a 0, which ends the letter run.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, Sequence

from .bitio import (
    BitReader,
    BitString,
    BitWriter,
    gamma_decode,
    gamma_encode,
    gamma_int_length,
    gamma_length,
)
from .errors import (
    BitstreamError,
    CodebookIntegrityError,
    ConfigurationError,
    CorruptStreamError,
    UnknownSymbolError,
)
from .huffman import CanonicalCode, kraft_sum

__all__ = [
    "ReprKind",
    "LetterRepr",
    "L8",
    "L5",
    "LVAR",
    "get_repr",
    "ENGLISH_LETTER_CODEWORDS",
    "PRINTED_LETTER_FREQUENCIES",
    "ENGLISH_LETTER_FREQUENCIES",
    "letter_code_constant",
    "LETTER_CODE_CONSTANT",
    "CodebookFormat",
    "CodebookBlocks",
    "encode_symbol_letters",
    "decode_symbol_letters",
    "serialize_blocks",
    "deserialize_blocks",
    "serialize_flat",
    "deserialize_flat",
    "codebook_length",
]


class ReprKind(str, enum.Enum):
    L8 = "l8"
    L5 = "l5"
    LVAR = "lvar"


# Prefix code for a-z built from standard English letter frequencies.
ENGLISH_LETTER_CODEWORDS: Mapping[str, str] = MappingProxyType({
    "a": "1110", "b": "110000", "c": "01001", "d": "11111", "e": "100",
    "f": "00100", "g": "111100", "h": "0110", "i": "1011", "j": "001011011",
    "k": "0010111", "l": "11001", "m": "00110", "n": "1010", "o": "1101",
    "p": "110001", "q": "001011000", "r": "0101", "s": "0111", "t": "000",
    "u": "01000", "v": "001010", "w": "00111", "x": "001011010", "y": "111101",
    "z": "0010110011",
})

# The frequency list as commonly printed next to that code.  Two entries are
# off by a factor of ten (u and z), so the list sums to 0.98565.
PRINTED_LETTER_FREQUENCIES: Mapping[str, float] = MappingProxyType({
    "a": 0.082, "b": 0.015, "c": 0.028, "d": 0.043, "e": 0.13, "f": 0.022,
    "g": 0.02, "h": 0.061, "i": 0.07, "j": 0.0015, "k": 0.0077, "l": 0.04,
    "m": 0.024, "n": 0.067, "o": 0.075, "p": 0.019, "q": 0.00095, "r": 0.06,
    "s": 0.063, "t": 0.091, "u": 0.0028, "v": 0.0098, "w": 0.024, "x": 0.0015,
    "y": 0.02, "z": 0.0074,
})


def _corrected_frequencies() -> dict[str, float]:
    raw = dict(PRINTED_LETTER_FREQUENCIES, u=0.028, z=0.00074)
    total = sum(raw.values())
    return {k: v / total for k, v in raw.items()}


# u and z restored to their usual magnitudes, then normalized to sum 1.
# The 5-bit codeword for u only makes sense with the larger value.
ENGLISH_LETTER_FREQUENCIES: Mapping[str, float] = MappingProxyType(_corrected_frequencies())


def letter_code_constant(freqs: Mapping[str, float] = ENGLISH_LETTER_FREQUENCIES) -> float:
    """Expected bits per letter of a Shannon code: sum of theta * ceil(log2(1/theta))."""
    return sum(t * math.ceil(-math.log2(t)) for t in freqs.values())


LETTER_CODE_CONSTANT = letter_code_constant()


@dataclass(frozen=True)
class LetterRepr:
    """How the letters of a symbol are spelled inside the codebook."""

    kind: ReprKind
    table: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "table", MappingProxyType(dict(self.table)))
        object.__setattr__(self, "_inverse", {cw: ch for ch, cw in self.table.items()})
        object.__setattr__(self, "_lengths", sorted({len(cw) for cw in self.table.values()}))

    @property
    def width(self) -> int | None:
        """Bits per letter, or None for the variable-length code."""
        if len(self._lengths) == 1:
            return self._lengths[0]
        return None

    def letter_bits(self, symbol: str) -> int:
        try:
            return sum(len(self.table[ch]) for ch in symbol)
        except KeyError as exc:
            raise UnknownSymbolError(
                f"character {exc.args[0]!r} in symbol {symbol!r} has no {self.kind.value} code"
            ) from None


L8 = LetterRepr(ReprKind.L8, {chr(c): format(c, "08b") for c in range(ord("a"), ord("z") + 1)})
L5 = LetterRepr(ReprKind.L5, {chr(ord("a") + i): format(i, "05b") for i in range(26)})
LVAR = LetterRepr(ReprKind.LVAR, ENGLISH_LETTER_CODEWORDS)

_REPRS = {ReprKind.L8: L8, ReprKind.L5: L5, ReprKind.LVAR: LVAR}


def get_repr(kind: ReprKind | str | LetterRepr) -> LetterRepr:
    if isinstance(kind, LetterRepr):
        return kind
    try:
        return _REPRS[ReprKind(kind)]
    except ValueError:
        raise ConfigurationError(f"unknown letter representation {kind!r}") from None


class CodebookFormat(str, enum.Enum):
    BLOCKS = "blocks"
    FLAT = "flat"


def encode_symbol_letters(symbol: str, repr: LetterRepr | str) -> BitString:
    rep = get_repr(repr)
    table = rep.table
    try:
        return BitString._trusted("".join([table[ch] for ch in symbol]))
    except KeyError as exc:
        raise UnknownSymbolError(
            f"character {exc.args[0]!r} in symbol {symbol!r} has no {rep.kind.value} code"
        ) from None


def decode_symbol_letters(bits: BitString | str, repr: LetterRepr | str) -> str:
    """Inverse of :func:`encode_symbol_letters`; the bits must parse completely."""
    rep = get_repr(repr)
    s = str(bits)
    inv = rep._inverse
    out = []
    pos = 0
    while pos < len(s):
        for l in rep._lengths:
            ch = inv.get(s[pos:pos + l])
            if ch is not None and pos + l <= len(s):
                out.append(ch)
                pos += l
                break
        else:
            raise CorruptStreamError(
                f"bits {s[pos:pos + 16]!r} at offset {pos} spell no {rep.kind.value} letter"
            )
    return "".join(out)


@dataclass(frozen=True)
class CodebookBlocks:
    """Symbols grouped by codeword length: ``((z, (a_1, ..., a_k)), ...)``."""

    blocks: tuple[tuple[int, tuple[str, ...]], ...]

    def __post_init__(self):
        blocks = tuple((int(z), tuple(syms)) for z, syms in self.blocks)
        if not blocks:
            raise ValueError("a codebook needs at least one block")
        for (z1, _), (z2, _) in zip(blocks, blocks[1:]):
            if z1 >= z2:
                raise ValueError("blocks must be in strictly ascending codeword length")
        for z, syms in blocks:
            if z < 1 or not syms:
                raise ValueError("every block needs a length >= 1 and at least one symbol")
            if list(syms) != sorted(syms):
                raise ValueError(f"symbols of the length-{z} block are not in lexicographic order")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_code(cls, code: CanonicalCode) -> "CodebookBlocks":
        return cls(tuple((z, tuple(syms)) for z, syms in code.blocks()))

    @property
    def t(self) -> int:
        return self.blocks[0][0]

    @property
    def T(self) -> int:
        return self.blocks[-1][0]

    @property
    def symbol_count(self) -> int:
        return sum(len(s) for _, s in self.blocks)

    def to_code(self) -> CanonicalCode:
        lengths = {}
        order = []
        for z, syms in self.blocks:
            for s in syms:
                lengths[s] = z
                order.append(s)
        return CanonicalCode(lengths, order)


def serialize_blocks(code: CanonicalCode, repr: LetterRepr | str) -> BitString:
    rep = get_repr(repr)
    blocks = CodebookBlocks.from_code(code)
    w = BitWriter()
    w.write_gamma_int(len(blocks.blocks))
    for z, syms in blocks.blocks:
        w.write_gamma_int(z)
        w.write_gamma_int(len(syms))
        for s in syms:
            w.write_gamma(encode_symbol_letters(s, rep))
    return w.getvalue()


def deserialize_blocks(r: BitReader, repr: LetterRepr | str) -> CanonicalCode:
    """Read a block codebook.  On any error the reader position is undefined
    and no code is returned."""
    rep = get_repr(repr)
    try:
        nblocks = r.read_gamma_int()
        blocks = []
        seen: set[str] = set()
        for _ in range(nblocks):
            z = r.read_gamma_int()
            k = r.read_gamma_int()
            if k > 2 ** z:
                raise CodebookIntegrityError(f"{k} symbols cannot share codeword length {z}")
            syms = []
            for _ in range(k):
                sym = decode_symbol_letters(gamma_decode(r), rep)
                if sym in seen:
                    raise CodebookIntegrityError(f"symbol {sym!r} appears twice")
                seen.add(sym)
                syms.append(sym)
            blocks.append((z, tuple(syms)))
        cb = CodebookBlocks(tuple(blocks))
    except ValueError as exc:
        # CodebookBlocks validation (block order, symbol order)
        raise CodebookIntegrityError(f"malformed block codebook: {exc}") from exc
    except BitstreamError as exc:
        if isinstance(exc, CorruptStreamError):
            raise
        raise CorruptStreamError(f"block codebook is damaged: {exc}") from exc
    lengths = [z for z, syms in cb.blocks for _ in syms]
    if len(lengths) == 1:
        if lengths[0] != 1:
            raise CodebookIntegrityError("a one-symbol codebook must use a 1-bit codeword")
    elif kraft_sum(lengths) != 1:
        raise CodebookIntegrityError(
            f"codeword lengths have Kraft sum {kraft_sum(lengths)}, expected 1"
        )
    return cb.to_code()


def _fixed_width(repr: LetterRepr | str) -> LetterRepr:
    rep = get_repr(repr)
    if rep.width is None:
        raise ConfigurationError(
            "the flat codebook needs fixed-width letters (l8 or l5), not lvar"
        )
    return rep


def serialize_flat(code: CanonicalCode | Mapping[str, BitString], repr: LetterRepr | str) -> BitString:
    """Flat codebook.  A CanonicalCode is written in its symbol order, a
    plain mapping in iteration order."""
    rep = _fixed_width(repr)
    if isinstance(code, CanonicalCode):
        items = [(s, code.codewords[s]) for s in code.symbol_order]
    else:
        items = list(code.items())
    table = rep.table
    parts = []
    for sym, cw in items:
        if not sym:
            raise ValueError("cannot write an empty symbol")
        try:
            parts.extend("1" + table[ch] for ch in sym)
        except KeyError as exc:
            raise UnknownSymbolError(
                f"character {exc.args[0]!r} in symbol {sym!r} has no {rep.kind.value} code"
            ) from None
        parts.append(str(gamma_encode(cw)))
    return BitString._trusted("".join(parts))


def deserialize_flat(r: BitReader, repr: LetterRepr | str, count: int) -> dict[str, BitString]:
    """Read ``count`` (symbol, codeword) lines of a flat codebook."""
    rep = _fixed_width(repr)
    width = rep.width
    inv = rep._inverse
    out: dict[str, BitString] = {}
    try:
        for i in range(count):
            letters = []
            while r.peek_bit() == 1:
                r.read_bit()
                chunk = r.read_str(width)
                ch = inv.get(chunk)
                if ch is None:
                    raise CorruptStreamError(
                        f"flat codebook line {i + 1}: {chunk!r} is not a {rep.kind.value} letter"
                    )
                letters.append(ch)
            if not letters:
                raise CorruptStreamError(f"flat codebook line {i + 1} has no letters")
            sym = "".join(letters)
            if sym in out:
                raise CodebookIntegrityError(f"symbol {sym!r} appears twice")
            out[sym] = gamma_decode(r)
    except BitstreamError as exc:
        if isinstance(exc, CorruptStreamError):
            raise
        raise CorruptStreamError(f"flat codebook is damaged: {exc}") from exc
    _check_prefix_free(out)
    return out


def _check_prefix_free(codewords: Mapping[str, BitString]) -> None:
    # after sorting, a prefix sits directly before some word it prefixes
    items = sorted((str(cw), s) for s, cw in codewords.items())
    for (a, sa), (b, sb) in zip(items, items[1:]):
        if b.startswith(a):
            raise CodebookIntegrityError(
                f"codeword of {sa!r} ({a}) is a prefix of the codeword of {sb!r} ({b})"
            )


def codebook_length(
    code: CanonicalCode,
    repr: LetterRepr | str,
    format: CodebookFormat | str = CodebookFormat.BLOCKS,
) -> int:
    """Bit length of the serialized codebook, computed from lengths only."""
    rep = get_repr(repr)
    fmt = CodebookFormat(format)
    if fmt is CodebookFormat.FLAT:
        rep = _fixed_width(rep)
        return sum(
            (rep.width + 1) * len(s) + gamma_length(code.lengths[s]) for s in code.symbol_order
        )
    blocks = code.blocks()
    total = gamma_int_length(len(blocks))
    for z, syms in blocks:
        total += gamma_int_length(z) + gamma_int_length(len(syms))
        total += sum(gamma_length(rep.letter_bits(s)) for s in syms)
    return total
