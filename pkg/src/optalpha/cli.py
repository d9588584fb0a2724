"""Command-line entry point: compress, decompress, analyze, corpus."""

from __future__ import annotations

import argparse
import csv
import logging
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .codebook import CodebookFormat, ReprKind
from .container import ContainerConfig, compress_normalized, decompress
from .errors import OptAlphaError
from .metrics import CompressionReport, FailedReport, analyze_text, build_report, default_denominator
from .text import AlphabetSpec, normalize

log = logging.getLogger("optalpha")

CSV_VERSION = 1

_ALPHABET_CHOICES = ("letters", "ngram", "syllables", "words", "wordpairs")

REPORT_COLUMNS = CompressionReport.field_names() + ["bits_per_word", "enc_to_codebook_ratio", "error"]

# alphabets compared in the corpus study, with their column abbreviations
CORPUS_ALPHABETS = {
    "s": AlphabetSpec.syllables,
    "w": AlphabetSpec.words,
    "lett": AlphabetSpec.letters,
    "lett2": lambda: AlphabetSpec.ngram(2),
}
WIN_COLUMNS = ["s<all", "w<all", "lett2<all", "lett<all", "s<w", "lett<w", "lett2<w", "w<lett2"]
TIE_COLUMNS = ["tie<all", "lett2=w"]


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.6f}"
    if value is None:
        return ""
    return str(value)


def _write_csv(fh, table: str, columns: Sequence[str], rows: Iterable[dict]) -> None:
    fh.write(f"# optalpha {table} v{CSV_VERSION}\n")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(row.get(c)) for c in columns])


def _report_row(rep: CompressionReport | FailedReport) -> dict:
    if isinstance(rep, FailedReport):
        return {
            "text_id": rep.text_id, "alphabet": rep.alphabet, "repr": rep.repr,
            "format": rep.format, "error": rep.error,
        }
    row = rep.as_dict()
    row["bits_per_word"] = rep.bits_per_word
    row["enc_to_codebook_ratio"] = rep.enc_to_codebook_ratio
    row["error"] = ""
    return row


# -- argument helpers -------------------------------------------------------

def _alphabet_from_args(args) -> AlphabetSpec:
    name = args.alphabet
    if name == "ngram":
        if args.n is None:
            raise OptAlphaError("--alphabet ngram needs --n")
        return AlphabetSpec.ngram(args.n)
    if args.n is not None:
        raise OptAlphaError("--n only applies to --alphabet ngram")
    if name == "letters":
        return AlphabetSpec.letters()
    if name == "syllables":
        return AlphabetSpec.syllables(args.syllabifier)
    if name == "words":
        return AlphabetSpec.words()
    return AlphabetSpec.word_pairs()


def _alphabets_for_analysis(args) -> list[AlphabetSpec]:
    if args.alphabet is not None:
        return [_alphabet_from_args(args)]
    if args.n is not None:
        raise OptAlphaError("--n only applies to --alphabet ngram")
    return [
        AlphabetSpec.letters(),
        AlphabetSpec.ngram(2), AlphabetSpec.ngram(3), AlphabetSpec.ngram(4),
        AlphabetSpec.syllables(args.syllabifier),
        AlphabetSpec.words(),
        AlphabetSpec.word_pairs(),
    ]


def _reprs(args) -> list[ReprKind]:
    if args.repr is not None:
        return [ReprKind(args.repr)]
    reprs = list(ReprKind)
    if args.codebook == "flat":
        reprs.remove(ReprKind.LVAR)
    return reprs


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.buffer.read().decode("utf-8")
    return Path(path).read_text(encoding="utf-8")


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _write_bytes(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(path).write_bytes(data)


# -- subcommands ------------------------------------------------------------

def cmd_compress(args) -> int:
    cfg = ContainerConfig(_alphabet_from_args(args), ReprKind(args.repr or "l8"), CodebookFormat(args.codebook))
    text = normalize(_read_text(args.input))
    container, _, _ = compress_normalized(text, cfg)
    _write_bytes(args.output, container.to_bytes())
    den = args.denominator_l or default_denominator(cfg.repr)
    total = container.code_only_bits + container.codebook_bits
    print(
        f"{cfg.label}: total_bits={total} code_only_bits={container.code_only_bits} "
        f"codebook_bits={container.codebook_bits} eta={total / (den * len(text.letters)):.6f}",
        file=sys.stderr,
    )
    return 0


def cmd_decompress(args) -> int:
    decoded = decompress(_read_bytes(args.input))
    if args.tokens:
        out = "\n".join(decoded.tokens) + "\n"
    else:
        out = decoded.letters + "\n"
    _write_bytes(args.output, out.encode("ascii"))
    return 0


def cmd_analyze(args) -> int:
    raw = _read_text(args.input)
    configs = []
    for a in _alphabets_for_analysis(args):
        for r in _reprs(args):
            configs.append(ContainerConfig(a, r, CodebookFormat(args.codebook)))
    text_id = "<stdin>" if args.input == "-" else args.input
    reports = analyze_text(raw, configs, text_id, args.denominator_l)
    _write_csv(sys.stdout, "report", REPORT_COLUMNS, (_report_row(r) for r in reports))
    return 1 if all(isinstance(r, FailedReport) for r in reports) else 0


# -- corpus study -----------------------------------------------------------

@dataclass(frozen=True)
class IndexEntry:
    path: str
    letters_count: int
    words_count: int
    rank: int = 0


def _index_book(path: str) -> tuple[str, int, int] | tuple[str, str]:
    try:
        text = normalize(Path(path).read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, OptAlphaError) as exc:
        return path, f"{type(exc).__name__}: {exc}"
    return path, len(text.letters), len(text.word_spans)


def build_corpus_index(paths: Sequence[str], jobs: int = 1) -> tuple[list[IndexEntry], list[tuple[str, str]]]:
    """Rank readable books by word count (ascending, ties by path)."""
    results = _map(_index_book, sorted(paths), jobs)
    skipped = [r for r in results if len(r) == 2]
    good = [r for r in results if len(r) == 3]
    good.sort(key=lambda r: (r[2], r[0]))
    entries = [IndexEntry(p, lc, wc, i + 1) for i, (p, lc, wc) in enumerate(good)]
    return entries, skipped


def select_books(
    entries: Sequence[IndexEntry], sample: float = 1.0, seed: int = 0, drop_extremes: int = 0
) -> list[IndexEntry]:
    """Drop the ``drop_extremes`` shortest and longest books, then draw a
    seeded random fraction.  Books keep their original ranks."""
    if not 0 < sample <= 1:
        raise OptAlphaError("--sample must be in (0, 1]")
    if drop_extremes < 0:
        raise OptAlphaError("--drop-extremes must be >= 0")
    k = len(entries)
    pool = [e for e in entries if drop_extremes < e.rank <= k - drop_extremes]
    if sample < 1 and pool:
        n = max(1, round(sample * len(pool)))
        pool = random.Random(seed).sample(pool, n)
    return sorted(pool, key=lambda e: e.rank)


def _book_reports(job: tuple[str, str, tuple[str, ...], str, int | None]) -> list:
    path, syllabifier, reprs, fmt, den = job
    text = normalize(Path(path).read_text(encoding="utf-8"))
    out = []
    for short, make in CORPUS_ALPHABETS.items():
        spec = make() if short != "s" else AlphabetSpec.syllables(syllabifier)
        for r in reprs:
            out.append(build_report(text, ContainerConfig(spec, r, fmt), path, den))
    return out


def _map(fn, items, jobs: int):
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        # map keeps input order regardless of completion order
        return list(ex.map(fn, items, chunksize=1))


def _short(alphabet_label: str) -> str | None:
    for short, make in CORPUS_ALPHABETS.items():
        if make().label == alphabet_label or (short == "s" and alphabet_label.startswith("syllables")):
            return short
    return None


def book_outcomes(totals: dict[str, int]) -> dict[str, int]:
    """0/1 indicators for every win and tie column given one book's totals
    keyed by ``s``, ``w``, ``lett``, ``lett2``."""
    best = min(totals.values())
    winners = [a for a, t in totals.items() if t == best]
    out = {f"{a}<all": int(winners == [a]) for a in ("s", "w", "lett2", "lett")}
    out["tie<all"] = int(len(winners) > 1)
    out["s<w"] = int(totals["s"] < totals["w"])
    out["lett<w"] = int(totals["lett"] < totals["w"])
    out["lett2<w"] = int(totals["lett2"] < totals["w"])
    out["w<lett2"] = int(totals["w"] < totals["lett2"])
    out["lett2=w"] = int(totals["w"] == totals["lett2"])
    return out


def win_fractions(per_book: Sequence[dict[str, int]]) -> dict[str, float]:
    n = len(per_book)
    return {c: sum(b[c] for b in per_book) / n for c in WIN_COLUMNS + TIE_COLUMNS}


def rank_curves(ranked: Sequence[tuple[int, dict[str, int]]]) -> list[dict]:
    """Cumulative fractions over books with rank <= x, one row per book rank."""
    sums = dict.fromkeys(WIN_COLUMNS + TIE_COLUMNS, 0)
    rows = []
    for i, (rank, outcome) in enumerate(sorted(ranked, key=lambda t: t[0]), 1):
        for c in sums:
            sums[c] += outcome[c]
        row = {"rank": rank, "books": i}
        row.update({c: sums[c] / i for c in sums})
        rows.append(row)
    return rows


def corpus_tables(reports: Sequence[CompressionReport], ranks: dict[str, int]) -> tuple[list[dict], list[dict]]:
    """Win-fraction rows and rank-curve rows, per representation, from a
    per-book report dump."""
    totals: dict[tuple[str, str], dict[str, int]] = {}
    for rep in reports:
        short = _short(rep.alphabet)
        if short is None:
            continue
        totals.setdefault((rep.repr, rep.text_id), {})[short] = rep.total_bits
    win_rows, curve_rows = [], []
    for r in ReprKind:
        books = [
            (ranks[tid], book_outcomes(t))
            for (rk, tid), t in totals.items()
            if rk == r.value and len(t) == len(CORPUS_ALPHABETS)
        ]
        if not books:
            continue
        row = {"repr": r.value, "books": len(books)}
        row.update(win_fractions([o for _, o in books]))
        win_rows.append(row)
        for c in rank_curves(books):
            curve_rows.append({"repr": r.value, **c})
    return win_rows, curve_rows


def cmd_corpus(args) -> int:
    root = Path(args.input)
    if not root.is_dir():
        raise OptAlphaError(f"{root} is not a directory")
    paths = [str(p) for p in root.rglob("*") if p.is_file()]
    jobs = args.jobs or os.cpu_count() or 1
    entries, skipped = build_corpus_index(paths, jobs)
    for path, why in skipped:
        log.warning("skipping %s: %s", path, why)
    if skipped:
        log.warning("skipped %d unreadable or empty file(s)", len(skipped))
    if not entries:
        raise OptAlphaError(f"no readable texts under {root}")
    chosen = select_books(entries, args.sample, args.seed, args.drop_extremes)
    chosen_paths = {e.path for e in chosen}
    reprs = tuple(r.value for r in _reprs(args))
    jobs_in = [(e.path, args.syllabifier, reprs, args.codebook, args.denominator_l) for e in chosen]
    reports = [rep for batch in _map(_book_reports, jobs_in, jobs) for rep in batch]
    ranks = {e.path: e.rank for e in entries}
    win_rows, curve_rows = corpus_tables(reports, ranks)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "corpus_index.csv", "w", encoding="utf-8", newline="") as fh:
        _write_csv(fh, "corpus_index", ["rank", "path", "letters_count", "words_count", "analyzed"], (
            {"rank": e.rank, "path": e.path, "letters_count": e.letters_count,
             "words_count": e.words_count, "analyzed": int(e.path in chosen_paths)}
            for e in entries
        ))
    with open(out / "books.csv", "w", encoding="utf-8", newline="") as fh:
        _write_csv(fh, "books", ["rank"] + REPORT_COLUMNS, (
            {"rank": ranks[r.text_id], **_report_row(r)} for r in reports
        ))
    with open(out / "win_fractions.csv", "w", encoding="utf-8", newline="") as fh:
        _write_csv(fh, "win_fractions", ["repr", "books"] + WIN_COLUMNS + TIE_COLUMNS, win_rows)
    with open(out / "rank_curves.csv", "w", encoding="utf-8", newline="") as fh:
        _write_csv(fh, "rank_curves", ["repr", "rank", "books"] + WIN_COLUMNS + TIE_COLUMNS, curve_rows)
    print(f"analyzed {len(chosen)} of {len(entries)} books; tables written to {out}", file=sys.stderr)
    return 0


# -- parser -----------------------------------------------------------------

def _add_alphabet_flags(p, alphabet_default):
    p.add_argument("--alphabet", choices=_ALPHABET_CHOICES, default=alphabet_default)
    p.add_argument("--n", type=int, help="n-gram size for --alphabet ngram")
    p.add_argument("--syllabifier", default="ssp", help="ssp or patterns:<path>")


def _add_coding_flags(p):
    p.add_argument("--repr", choices=[r.value for r in ReprKind], help="letter representation in the codebook")
    p.add_argument("--codebook", choices=[f.value for f in CodebookFormat], default="blocks")
    p.add_argument("--denominator-l", type=int, help="bits per letter of the uncompressed text for eta")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="optalpha", description="Huffman compression over letter, syllable and word alphabets.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compress", help="compress a text file into a container")
    _add_alphabet_flags(p, "words")
    _add_coding_flags(p)
    p.add_argument("input", help="UTF-8 text, or - for stdin")
    p.add_argument("output", help="container path, or - for stdout")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("decompress", help="recover the letter sequence from a container")
    p.add_argument("--tokens", action="store_true", help="write one token per line")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_decompress)

    p = sub.add_parser("analyze", help="CSV report over alphabets and letter representations")
    _add_alphabet_flags(p, None)
    _add_coding_flags(p)
    p.add_argument("input")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("corpus", help="win fractions and rank curves over a directory of texts")
    p.add_argument("--syllabifier", default="ssp")
    _add_coding_flags(p)
    p.add_argument("--sample", type=float, default=1.0, help="fraction of books to analyze")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--drop-extremes", type=int, default=0, help="drop the k shortest and k longest books")
    p.add_argument("--jobs", type=int, default=0, help="worker processes (default: all CPUs)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("input", help="directory of UTF-8 texts")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (OptAlphaError, OSError, UnicodeDecodeError) as exc:
        print(f"optalpha: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
