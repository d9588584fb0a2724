"""Bit strings, a cursor-based reader, and the self-delimiting gamma code.

Bits are kept as Python ``str`` objects over ``"0"``/``"1"``.  Slicing,
joining and ``int(s, 2)`` are all implemented in C, which makes this
representation faster in practice than shifting big integers around.
Byte packing is MSB-first with zero padding in the last byte.
"""

from __future__ import annotations

from typing import Iterable, Union

from .errors import BitstreamError, TruncatedStreamError

__all__ = [
    "BitString",
    "BitReader",
    "BitWriter",
    "bitlen",
    "gamma_encode",
    "gamma_decode",
    "gamma_encode_int",
    "gamma_decode_int",
    "gamma_length",
    "gamma_int_length",
]

_BINARY = frozenset("01")


class BitString:
    """Immutable sequence of binary digits."""

    __slots__ = ("_bits",)

    def __init__(self, bits: Union[str, "BitString", Iterable[int]] = "") -> None:
        if isinstance(bits, BitString):
            s = bits._bits
        elif isinstance(bits, str):
            s = bits.replace(" ", "")
            if not _BINARY.issuperset(s):
                raise ValueError(f"not a binary string: {bits!r}")
        else:
            s = "".join("1" if b else "0" for b in bits)
        object.__setattr__(self, "_bits", s)

    def __setattr__(self, name, value):
        raise AttributeError("BitString is immutable")

    @classmethod
    def _trusted(cls, s: str) -> "BitString":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "_bits", s)
        return obj

    @classmethod
    def from_int(cls, value: int, width: int | None = None) -> "BitString":
        """Binary form of ``value``; without ``width`` there are no leading zeros."""
        if value < 0:
            raise ValueError("negative value")
        if width is None:
            if value == 0:
                raise ValueError("0 has no binary form without a width")
            return cls._trusted(format(value, "b"))
        if value >> width:
            raise ValueError(f"{value} does not fit in {width} bits")
        return cls._trusted(format(value, "b").zfill(width) if width else "")

    @classmethod
    def concat(cls, parts: Iterable["BitString"]) -> "BitString":
        return cls._trusted("".join(p._bits for p in parts))

    @classmethod
    def from_bytes(cls, data: bytes, length: int | None = None) -> "BitString":
        """Unpack MSB-first bytes; ``length`` truncates trailing padding."""
        s = format(int.from_bytes(data, "big"), "b").zfill(8 * len(data)) if data else ""
        if length is not None:
            if length > len(s):
                raise ValueError("length exceeds available bits")
            s = s[:length]
        return cls._trusted(s)

    def to_bytes(self) -> bytes:
        """Pack MSB-first, zero-padding the final byte."""
        n = len(self._bits)
        if n == 0:
            return b""
        nbytes = (n + 7) // 8
        padded = self._bits + "0" * (8 * nbytes - n)
        return int(padded, 2).to_bytes(nbytes, "big")

    def to_int(self) -> int:
        if not self._bits:
            raise ValueError("empty BitString has no integer value")
        return int(self._bits, 2)

    @property
    def length(self) -> int:
        return len(self._bits)

    def __len__(self) -> int:
        return len(self._bits)

    def __str__(self) -> str:
        return self._bits

    def __repr__(self) -> str:
        if len(self._bits) > 64:
            return f"BitString('{self._bits[:64]}...', length={len(self._bits)})"
        return f"BitString('{self._bits}')"

    def __eq__(self, other) -> bool:
        if isinstance(other, BitString):
            return self._bits == other._bits
        if isinstance(other, str):
            return self._bits == other.replace(" ", "")
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._bits)

    def __lt__(self, other: "BitString") -> bool:
        return self._bits < other._bits

    def __add__(self, other: "BitString") -> "BitString":
        if not isinstance(other, BitString):
            return NotImplemented
        return BitString._trusted(self._bits + other._bits)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return BitString._trusted(self._bits[idx])
        return int(self._bits[idx])

    def __iter__(self):
        return (int(c) for c in self._bits)

    def startswith(self, prefix: "BitString") -> bool:
        return self._bits.startswith(str(prefix))


class BitWriter:
    """Accumulates bits; call :meth:`getvalue` for the finished BitString."""

    def __init__(self) -> None:
        self._parts: list[str] = []
        self._length = 0

    def write(self, bits: BitString) -> None:
        s = str(bits)
        self._parts.append(s)
        self._length += len(s)

    def write_uint(self, value: int, width: int) -> None:
        self.write(BitString.from_int(value, width))

    def write_gamma(self, bits: BitString) -> None:
        self.write(gamma_encode(bits))

    def write_gamma_int(self, n: int) -> None:
        self.write(gamma_encode_int(n))

    def __len__(self) -> int:
        return self._length

    def getvalue(self) -> BitString:
        return BitString._trusted("".join(self._parts))


class BitReader:
    """Sequential reader over a BitString.  Reading past the end raises."""

    def __init__(self, source: BitString | str, cursor: int = 0) -> None:
        self.source = source if isinstance(source, BitString) else BitString(source)
        self._bits = str(self.source)
        if not 0 <= cursor <= len(self._bits):
            raise ValueError("cursor out of range")
        self.cursor = cursor

    @property
    def remaining(self) -> int:
        return len(self._bits) - self.cursor

    def at_end(self) -> bool:
        return self.cursor == len(self._bits)

    def read(self, n: int) -> BitString:
        return BitString._trusted(self.read_str(n))

    def read_str(self, n: int) -> str:
        if n < 0:
            raise ValueError("negative read")
        end = self.cursor + n
        if end > len(self._bits):
            raise TruncatedStreamError(
                f"need {n} bits at offset {self.cursor}, only {self.remaining} left"
            )
        s = self._bits[self.cursor:end]
        self.cursor = end
        return s

    def read_bit(self) -> int:
        if self.cursor >= len(self._bits):
            raise TruncatedStreamError(f"stream exhausted at offset {self.cursor}")
        bit = self._bits[self.cursor]
        self.cursor += 1
        return 1 if bit == "1" else 0

    def peek_bit(self) -> int:
        if self.cursor >= len(self._bits):
            raise TruncatedStreamError(f"stream exhausted at offset {self.cursor}")
        return 1 if self._bits[self.cursor] == "1" else 0

    def read_uint(self, width: int) -> int:
        return int(self.read_str(width), 2) if width else 0

    def read_gamma(self) -> BitString:
        return gamma_decode(self)

    def read_gamma_int(self) -> int:
        return gamma_decode_int(self)

    def peek_window(self, n: int) -> str:
        """Up to ``n`` upcoming bits without advancing (shorter near the end)."""
        return self._bits[self.cursor:self.cursor + n]


def bitlen(n: int) -> int:
    """Number of digits in the binary form of ``n`` (``n >= 1``)."""
    if n < 1:
        raise ValueError("bitlen is defined for n >= 1")
    return n.bit_length()


def gamma_length(payload_len: int) -> int:
    """Exact length of the gamma codeword for a payload of ``payload_len`` bits."""
    if payload_len < 1:
        raise ValueError("gamma code needs a non-empty payload")
    return payload_len + 2 * payload_len.bit_length()


def gamma_int_length(n: int) -> int:
    """Length of ``gamma_encode_int(n)``."""
    if n < 1:
        raise ValueError("gamma code of an integer needs n >= 1")
    return gamma_length(n.bit_length())


def gamma_encode(b: BitString | str) -> BitString:
    """Zero run of length bitlen(len(b)), then len(b) in binary, then ``b``."""
    s = str(b) if isinstance(b, BitString) else str(BitString(b))
    n = len(s)
    if n == 0:
        raise ValueError("gamma code of the empty bit string is undefined")
    nbin = format(n, "b")
    return BitString._trusted("0" * len(nbin) + nbin + s)


def gamma_encode_int(n: int) -> BitString:
    if n < 1:
        raise ValueError(f"gamma code of an integer needs n >= 1, got {n}")
    return gamma_encode(BitString._trusted(format(n, "b")))


def gamma_decode(r: BitReader) -> BitString:
    zeros = 0
    while r.read_bit() == 0:
        zeros += 1
    if zeros == 0:
        raise BitstreamError(f"malformed gamma codeword at offset {r.cursor - 1}: length field is 0")
    # the 1 just consumed is the leading digit of the length field
    n = int("1" + r.read_str(zeros - 1), 2) if zeros > 1 else 1
    return r.read(n)


def gamma_decode_int(r: BitReader) -> int:
    payload = gamma_decode(r)
    s = str(payload)
    if s[0] != "1":
        raise BitstreamError("gamma-coded integer has a leading zero")
    return int(s, 2)
