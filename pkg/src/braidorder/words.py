"""
Free-group words.

A :class:`Word` is a freely reduced word stored run-length: a tuple of
``(letter, exponent)`` pairs where adjacent letters differ and no exponent is
zero. Letters are usually generator indices ``1..n`` of a free group ``F_n``,
but any hashable letter works; the order module reuses the same class for
words over the free basis of a subgroup.

The rank ``n`` lives in a :class:`FreeGroup` context rather than in each word.
Context methods validate their inputs, so a word mentioning ``x5`` handed to a
rank-3 context fails loudly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import IndexOutOfRange, MissingImage, ParseError, RankMismatch

Run = tuple  # (letter, nonzero exponent)


def _push(stack: list, letter, exp: int) -> None:
    if exp == 0:
        return
    if stack and stack[-1][0] == letter:
        total = stack[-1][1] + exp
        if total:
            stack[-1] = (letter, total)
        else:
            stack.pop()
    else:
        stack.append((letter, exp))


@dataclass(frozen=True)
class Word:
    runs: tuple = ()

    @classmethod
    def from_runs(cls, runs: Iterable[tuple]) -> Word:
        """Freely reduce an arbitrary sequence of ``(letter, exponent)`` pairs."""
        stack: list = []
        for letter, exp in runs:
            _push(stack, letter, exp)
        return cls(tuple(stack))

    @classmethod
    def gen(cls, letter: Hashable, exp: int = 1) -> Word:
        return cls(((letter, exp),)) if exp else cls()

    @classmethod
    def product(cls, words: Iterable[Word]) -> Word:
        stack: list = []
        for w in words:
            for letter, exp in w.runs:
                _push(stack, letter, exp)
        return cls(tuple(stack))

    def __mul__(self, other: Word) -> Word:
        if not other.runs:
            return self
        if not self.runs:
            return other
        return Word.product((self, other))

    def inverse(self) -> Word:
        return Word(tuple((g, -e) for g, e in reversed(self.runs)))

    def __pow__(self, k: int) -> Word:
        if k < 0:
            return self.inverse() ** (-k)
        return Word.product([self] * k)

    def conjugate_by(self, c: Word) -> Word:
        """Return ``c * self * c^-1``."""
        return Word.product((c, self, c.inverse()))

    def is_identity(self) -> bool:
        return not self.runs

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.runs)

    def letters(self) -> list[tuple]:
        """Expanded letters as ``(letter, +1 | -1)`` pairs."""
        out = []
        for g, e in self.runs:
            s = 1 if e > 0 else -1
            out.extend([(g, s)] * abs(e))
        return out

    def exponent_sum(self, letter) -> int:
        return sum(e for g, e in self.runs if g == letter)

    def support(self) -> set:
        return {g for g, _ in self.runs}

    def __str__(self) -> str:
        return format_word(self)


IDENTITY = Word()


def _letter_name(letter) -> str:
    if isinstance(letter, int):
        return f"x{letter}"
    return str(letter)


def format_word(w: Word) -> str:
    if not w.runs:
        return "1"
    parts = []
    for g, e in w.runs:
        name = _letter_name(g)
        parts.append(name if e == 1 else f"{name}^{e}")
    return " ".join(parts)


_TOKEN = re.compile(r"x(\d+)(?:\^(-?\d+))?|1(?![\d^])")
_SEP = re.compile(r"[\s*]+")


def parse_word(text: str, line: int = 1, column_offset: int = 0) -> Word:
    """Parse ``x1 x3^-1 x2^2`` style text. ``1`` is the identity.

    Tokens may be separated by whitespace or ``*``; they may also abut
    (``x1x2``), which is unambiguous in this grammar.
    """
    pos = 0
    runs = []
    seen_token = False
    while pos < len(text):
        m = _SEP.match(text, pos)
        if m:
            pos = m.end()
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected {text[pos]!r}", line, column_offset + pos + 1)
        seen_token = True
        if m.group(1) is not None:
            exp = int(m.group(2)) if m.group(2) is not None else 1
            if exp == 0:
                raise ParseError("exponent 0 is not allowed", line, column_offset + m.start(2) + 1)
            runs.append((int(m.group(1)), exp))
        pos = m.end()
    if not seen_token:
        raise ParseError("empty word (write 1 for the identity)", line, column_offset + 1)
    return Word.from_runs(runs)


class FreeGroup:
    """Rank context for words over generators ``x1..xn``."""

    def __init__(self, rank: int):
        if rank < 1:
            raise ValueError(f"rank must be positive, got {rank}")
        self.rank = rank

    def __repr__(self) -> str:
        return f"FreeGroup({self.rank})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FreeGroup) and other.rank == self.rank

    def __hash__(self) -> int:
        return hash(("FreeGroup", self.rank))

    def generators(self) -> range:
        return range(1, self.rank + 1)

    def x(self, i: int, exp: int = 1) -> Word:
        self._check_index(i)
        return Word.gen(i, exp)

    def _check_index(self, i) -> None:
        if not isinstance(i, int) or not 1 <= i <= self.rank:
            raise IndexOutOfRange(f"generator index {i!r} outside 1..{self.rank}")

    def check(self, w: Word) -> Word:
        for g, _ in w.runs:
            if not isinstance(g, int) or not 1 <= g <= self.rank:
                raise RankMismatch(f"word {w} does not live in F_{self.rank}")
        return w

    def reduce(self, raw: Sequence[int]) -> Word:
        """Reduce signed letters, ``k`` for ``x_k`` and ``-k`` for its inverse."""
        stack: list = []
        for s in raw:
            self._check_index(abs(s))
            _push(stack, abs(s), 1 if s > 0 else -1)
        return Word(tuple(stack))

    def multiply(self, a: Word, b: Word) -> Word:
        return self.check(a) * self.check(b)

    def invert(self, a: Word) -> Word:
        return self.check(a).inverse()

    def exponent_sum(self, w: Word, i: int) -> int:
        self._check_index(i)
        return self.check(w).exponent_sum(i)

    def abelianize(self, w: Word) -> tuple[int, ...]:
        self.check(w)
        return tuple(w.exponent_sum(i) for i in self.generators())

    def apply_endomorphism(self, images: Mapping[int, Word], w: Word) -> Word:
        for i in self.generators():
            if i not in images:
                raise MissingImage(f"no image given for x{i}")
        return apply_images(images, self.check(w))

    def identity_images(self) -> dict[int, Word]:
        return {i: Word.gen(i) for i in self.generators()}

    def parse(self, text: str) -> Word:
        return self.check_parsed(parse_word(text))

    def check_parsed(self, w: Word) -> Word:
        for g, _ in w.runs:
            if not 1 <= g <= self.rank:
                raise ParseError(f"generator x{g} outside x1..x{self.rank}")
        return w

    def format(self, w: Word) -> str:
        return format_word(self.check(w))


def apply_images(images: Mapping, w: Word) -> Word:
    """Substitute ``images[g]`` for each letter ``g`` of ``w`` (no rank checks)."""
    stack: list = []
    inverses: dict = {}
    for g, e in w.runs:
        try:
            img = images[g]
        except KeyError:
            raise MissingImage(f"no image given for {_letter_name(g)}") from None
        if e < 0:
            if g not in inverses:
                inverses[g] = img.inverse()
            img = inverses[g]
        for _ in range(abs(e)):
            for letter, exp in img.runs:
                _push(stack, letter, exp)
    return Word(tuple(stack))


@dataclass(frozen=True)
class ExponentHom:
    """Homomorphism ``F -> Z`` sending ``x_{i0}`` to 1 and other generators to 0."""

    distinguished: int

    def __call__(self, w: Word) -> int:
        return w.exponent_sum(self.distinguished)
