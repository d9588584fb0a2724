"""Exception hierarchy shared by all modules."""


class OptAlphaError(Exception):
    """Base class for every error raised by this package."""


class BitstreamError(OptAlphaError):
    """A bit stream does not follow the expected format."""


class TruncatedStreamError(BitstreamError):
    """The stream ended in the middle of a codeword or field."""


class CorruptStreamError(BitstreamError):
    """Bits were read but do not decode to anything valid."""


class CodebookIntegrityError(CorruptStreamError):
    """A deserialized codebook is not a complete prefix code."""


class ContainerFormatError(BitstreamError):
    """Bad magic, unsupported version or unknown header values."""


class ConfigurationError(OptAlphaError, ValueError):
    """Unsupported option or option combination."""


class EmptyTextError(OptAlphaError, ValueError):
    """The input contains no letters after normalization."""


class UnknownSymbolError(OptAlphaError, KeyError):
    """A token or character has no code in the active table."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class PatternFileError(OptAlphaError):
    """A hyphenation pattern file could not be read or parsed."""

    def __init__(self, message: str, path=None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
            if line is not None:
                where += f"{line}:"
            where += " "
        super().__init__(where + message)
