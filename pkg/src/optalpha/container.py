"""Compressed file format and end-to-end compress/decompress.

Byte layout::

    b"ALPHC" | version | alphabet kind | n | repr | codebook format
    then a bitstream, zero-padded to a whole byte at the very end:
    gamma(N) [gamma(M) for flat codebooks] codebook gamma(enc)

N is the token count and enc the Huffman-coded token stream.  Reported
lengths never include the 10 header bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bitio import BitReader, BitString, BitWriter, gamma_decode, gamma_int_length, gamma_length
from .codebook import (
    CodebookFormat,
    ReprKind,
    deserialize_blocks,
    deserialize_flat,
    serialize_blocks,
    serialize_flat,
)
from .errors import BitstreamError, ConfigurationError, ContainerFormatError, CorruptStreamError
from .huffman import CanonicalCode, build_canonical_code, count_frequencies, decode_stream, encode_stream
from .text import AlphabetKind, AlphabetSpec, NormalizedText, TokenStream, normalize, tokenize

__all__ = [
    "MAGIC",
    "VERSION",
    "HEADER_BYTES",
    "ContainerConfig",
    "CompressedContainer",
    "DecodedText",
    "compress",
    "compress_normalized",
    "decompress",
    "kolmogorov_bound",
]

MAGIC = b"ALPHC"
VERSION = 1
HEADER_BYTES = len(MAGIC) + 5

_KIND_CODES = {
    AlphabetKind.LETTERS: 0,
    AlphabetKind.LETTER_NGRAM: 1,
    AlphabetKind.SYLLABLES: 2,
    AlphabetKind.WORDS: 3,
    AlphabetKind.WORD_PAIRS: 4,
}
_REPR_CODES = {ReprKind.L8: 0, ReprKind.L5: 1, ReprKind.LVAR: 2}
_FORMAT_CODES = {CodebookFormat.BLOCKS: 0, CodebookFormat.FLAT: 1}


def _invert(d):
    return {v: k for k, v in d.items()}


@dataclass(frozen=True)
class ContainerConfig:
    alphabet: AlphabetSpec = field(default_factory=AlphabetSpec.letters)
    repr: ReprKind = ReprKind.L8
    codebook_format: CodebookFormat = CodebookFormat.BLOCKS

    def __post_init__(self):
        try:
            object.__setattr__(self, "repr", ReprKind(self.repr))
            object.__setattr__(self, "codebook_format", CodebookFormat(self.codebook_format))
        except ValueError as exc:
            raise ConfigurationError(str(exc)) from None
        if self.codebook_format is CodebookFormat.FLAT and self.repr is ReprKind.LVAR:
            raise ConfigurationError(
                "unsupported combination: the flat codebook needs fixed-width letters (l8 or l5)"
            )
        if self.alphabet.n is not None and self.alphabet.n > 255:
            raise ConfigurationError("n-gram size must fit in one byte")

    @property
    def label(self) -> str:
        return f"{self.alphabet.label}/{self.repr.value}/{self.codebook_format.value}"


@dataclass(frozen=True)
class CompressedContainer:
    config: ContainerConfig
    token_count: int
    symbol_count: int
    codebook: BitString
    payload: BitString
    version: int = VERSION

    @property
    def code_only_bits(self) -> int:
        """Length of the Huffman-coded token stream, without its gamma wrapper."""
        return len(self.payload)

    @property
    def codebook_bits(self) -> int:
        return len(self.codebook)

    @property
    def body_bits(self) -> int:
        """Bits after the byte header, before end padding."""
        n = gamma_int_length(self.token_count)
        if self.config.codebook_format is CodebookFormat.FLAT:
            n += gamma_int_length(self.symbol_count)
        return n + len(self.codebook) + gamma_length(len(self.payload))

    def to_bytes(self) -> bytes:
        cfg = self.config
        header = MAGIC + bytes([
            self.version,
            _KIND_CODES[cfg.alphabet.kind],
            cfg.alphabet.n or 0,
            _REPR_CODES[cfg.repr],
            _FORMAT_CODES[cfg.codebook_format],
        ])
        w = BitWriter()
        w.write_gamma_int(self.token_count)
        if cfg.codebook_format is CodebookFormat.FLAT:
            w.write_gamma_int(self.symbol_count)
        w.write(self.codebook)
        w.write_gamma(self.payload)
        return header + w.getvalue().to_bytes()

    @classmethod
    def from_bytes(cls, data: bytes, syllabifier: str = "ssp") -> "CompressedContainer":
        """Parse a container; the codebook is validated but the payload is not decoded."""
        cfg, body = _parse_header(data, syllabifier)
        r = BitReader(body)
        try:
            count = r.read_gamma_int()
            m, start, code = _read_code(r, cfg)
            codebook = BitString._trusted(body[start:r.cursor])
            payload = gamma_decode(r)
        except BitstreamError as exc:
            if isinstance(exc, CorruptStreamError):
                raise
            raise CorruptStreamError(f"container body is damaged: {exc}") from exc
        _check_padding(r)
        return cls(cfg, count, m, codebook, payload, data[len(MAGIC)])


def _parse_header(data: bytes, syllabifier: str) -> tuple[ContainerConfig, str]:
    if len(data) < HEADER_BYTES:
        raise ContainerFormatError(f"file too short for a header ({len(data)} bytes)")
    if data[:len(MAGIC)] != MAGIC:
        raise ContainerFormatError(f"bad magic {data[:len(MAGIC)]!r}, expected {MAGIC!r}")
    version, kind, n, rep, fmt = data[len(MAGIC):HEADER_BYTES]
    if version != VERSION:
        raise ContainerFormatError(f"unsupported container version {version}")
    try:
        kind = _invert(_KIND_CODES)[kind]
        rep = _invert(_REPR_CODES)[rep]
        fmt = _invert(_FORMAT_CODES)[fmt]
    except KeyError as exc:
        raise ContainerFormatError(f"unknown header value {exc.args[0]}") from None
    try:
        spec = AlphabetSpec(
            kind,
            n if kind is AlphabetKind.LETTER_NGRAM else None,
            syllabifier=syllabifier,
        )
        cfg = ContainerConfig(spec, rep, fmt)
    except ConfigurationError as exc:
        raise ContainerFormatError(f"invalid header: {exc}") from None
    if n and kind is not AlphabetKind.LETTER_NGRAM:
        raise ContainerFormatError("header sets n for an alphabet without n")
    body = BitString.from_bytes(data[HEADER_BYTES:])
    return cfg, str(body)


def _check_padding(r: BitReader) -> None:
    rest = r.peek_window(r.remaining)
    if len(rest) >= 8 or "1" in rest:
        raise CorruptStreamError(
            f"{len(rest)} unexpected trailing bits after the payload"
        )


def _read_code(r: BitReader, cfg: ContainerConfig):
    """Returns (symbol count, codebook start offset, code)."""
    if cfg.codebook_format is CodebookFormat.FLAT:
        m = r.read_gamma_int()
        start = r.cursor
        return m, start, deserialize_flat(r, cfg.repr, m)
    start = r.cursor
    code = deserialize_blocks(r, cfg.repr)
    return len(code), start, code


@dataclass(frozen=True)
class DecodedText:
    """Recovered letters plus the token boundaries that produced them."""

    letters: str
    tokens: tuple[str, ...]
    config: ContainerConfig


def compress_normalized(text: NormalizedText, cfg: ContainerConfig) -> tuple[CompressedContainer, TokenStream, CanonicalCode]:
    tokens = tokenize(text, cfg.alphabet)
    code = build_canonical_code(count_frequencies(tokens))
    if cfg.codebook_format is CodebookFormat.FLAT:
        codebook = serialize_flat(code, cfg.repr)
    else:
        codebook = serialize_blocks(code, cfg.repr)
    payload = encode_stream(tokens, code)
    if not payload:  # pragma: no cover - every codeword has >= 1 bit
        raise AssertionError("empty payload")
    return CompressedContainer(cfg, len(tokens), len(code), codebook, payload), tokens, code


def compress(raw: str, cfg: ContainerConfig) -> CompressedContainer:
    return compress_normalized(normalize(raw), cfg)[0]


def decompress(c: CompressedContainer | bytes, syllabifier: str = "ssp") -> DecodedText:
    """Decode a container (object or raw bytes) back to its letter sequence.

    Only the container contents are used; the syllabifier name is never
    needed for decoding and only labels the returned config.
    """
    if isinstance(c, (bytes, bytearray, memoryview)):
        data = bytes(c)
    else:
        data = c.to_bytes()
    cfg, body = _parse_header(data, syllabifier)
    r = BitReader(body)
    try:
        count = r.read_gamma_int()
        _, _, code = _read_code(r, cfg)
        payload = gamma_decode(r)
        pr = BitReader(payload)
        tokens = decode_stream(pr, code, count)
    except BitstreamError as exc:
        if isinstance(exc, CorruptStreamError):
            raise
        raise CorruptStreamError(f"container is damaged: {exc}") from exc
    if not pr.at_end():
        raise CorruptStreamError(
            f"{pr.remaining} payload bits left over after {count} tokens"
        )
    _check_padding(r)
    return DecodedText("".join(tokens), tuple(tokens), cfg)


def kolmogorov_bound(len_codebook: int, len_payload: int) -> int:
    """Upper bound on the description length: codebook + payload + 2*ceil(log2 payload)."""
    if len_payload < 1:
        raise ValueError("payload length must be >= 1")
    if len_codebook < 0:
        raise ValueError("codebook length must be >= 0")
    # ceil(log2 x) == (x - 1).bit_length(), exact for big integers
    return len_codebook + len_payload + 2 * (len_payload - 1).bit_length()
