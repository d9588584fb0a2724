import random
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

# wall-clock deadlines flake on a loaded machine
settings.register_profile("default", deadline=None)
settings.load_profile("default")

BOOK_DIR = Path(__file__).parent / "data" / "books"
BOOKS = sorted(BOOK_DIR.glob("*.txt"))

_SYLLABLES = ["the", "ca", "ro", "li", "na", "hap", "pen", "let", "ter", "bless", "ing",
              "str", "ough", "qu", "x", "y", "rhythm", "a", "e", "io", "spl", "ash"]
_NOISE = [" ", "  ", ", ", ". ", "\n", "! ", " 42 ", "'", "-", " — ", "\t", " é "]


def random_text(rng: random.Random, words: int | None = None) -> str:
    """English-ish noise: random syllable words, mixed case, digits and punctuation."""
    if words is None:
        words = rng.randint(1, 80)
    out = []
    for _ in range(words):
        w = "".join(rng.choice(_SYLLABLES) for _ in range(rng.randint(1, 4)))
        if rng.random() < 0.2:
            w = w.capitalize()
        out.append(w)
        out.append(rng.choice(_NOISE))
    return "".join(out)


def random_texts(count: int, seed: int) -> list[str]:
    rng = random.Random(seed)
    return [random_text(rng) for _ in range(count)]


def read_book(path: Path) -> str:
    return path.read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def books():
    assert len(BOOKS) >= 3, "test books missing"
    return {p.name: read_book(p) for p in BOOKS}


words_st = st.text(alphabet="abcdefghijklmnopqrstuvwxyz", min_size=1, max_size=12)
raw_text_st = st.lists(
    st.tuples(words_st, st.sampled_from(_NOISE)), min_size=1, max_size=40
).map(lambda pairs: "".join(w + sep for w, sep in pairs))


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for crit, status, detail in sorted(RESULTS, key=lambda r: int(r[0][1:])):
        terminalreporter.write_line(f"{crit:<4} {status:<16} {detail}")
