"""Huffman compression of a text over interchangeable alphabets (letters,
letter n-grams, syllables, words, word pairs), with the codebook stored
alongside the payload so total code lengths can be compared."""

from .bitio import BitReader, BitString, BitWriter, gamma_decode, gamma_encode
from .codebook import CodebookFormat, LetterRepr, ReprKind, codebook_length, get_repr
from .container import CompressedContainer, ContainerConfig, compress, decompress, kolmogorov_bound
from .errors import OptAlphaError
from .huffman import CanonicalCode, build_canonical_code, count_frequencies, entropy
from .metrics import CompressionReport, analyze_text, compressibility, concat_inequality_check, zipf_estimates
from .text import AlphabetKind, AlphabetSpec, NormalizedText, TokenStream, normalize, tokenize

__version__ = "0.1.0"
