import random

import pytest
from hypothesis import strategies as st

from braidorder.braid import BraidWord, parse_braid
from braidorder.certify import Verdict, certify_braid
from braidorder.errors import NoFixedPoint
from braidorder.words import Word

MAGIC = "s1^2 s2^-1"

ACCEPTANCE_RESULTS = []


def words(rank, max_len=12):
    letter = st.tuples(st.integers(1, rank), st.sampled_from((1, -1)))
    return st.lists(letter, max_size=max_len).map(Word.from_runs)


def braids(n, max_len=8, max_gen=None):
    top = n - 1 if max_gen is None else max_gen
    letter = st.integers(1, top).flatmap(lambda k: st.sampled_from((k, -k)))
    return st.lists(letter, max_size=max_len).map(lambda ls: BraidWord(n, tuple(ls)))


def random_word(rng, rank, max_len):
    return Word.from_runs((rng.randint(1, rank), rng.choice((1, -1))) for _ in range(rng.randint(0, max_len)))


def random_braid(rng, n, max_len, max_gen=None):
    top = n - 1 if max_gen is None else max_gen
    length = rng.randint(0, max_len)
    return BraidWord(n, tuple(rng.choice((1, -1)) * rng.randint(1, top) for _ in range(length)))


def certified_braids(count, seed=7, max_strands=5, max_len=6):
    """Deterministic sample of non-pure braids whose certificate is BI."""
    rng = random.Random(seed)
    found = []
    while len(found) < count:
        n = rng.randint(3, max_strands)
        b = random_braid(rng, n, max_len)
        try:
            cert = certify_braid(b)
        except NoFixedPoint:
            continue
        if cert.verdict is Verdict.BI_ORDER_PRESERVING and any(len(r.orbit) > 1 for r in cert.reports):
            found.append(b)
    return found


@pytest.fixture
def magic():
    return parse_braid(MAGIC, 3)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, text in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {text}")
