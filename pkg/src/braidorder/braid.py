"""
Braid words, underlying permutations and the Artin action on free groups.

Conventions: braids act on the right of ``F_n`` and products are read
leftmost first, so ``x^(ab) = (x^a)^b``. Permutations compose the same way:
``i^(st) = (i^s)^t``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import IndexOutOfRange, ParseError, StrandMismatch
from .words import Word, apply_images


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``1..n``; ``images[i - 1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.images}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        images = list(range(1, n + 1))
        for c in cycles:
            for a, b in zip(c, tuple(c[1:]) + (c[0],)):
                images[a - 1] = b
        return cls(tuple(images))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> Permutation:
        return cls.from_cycles(n, [(a, b)])

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        """Leftmost first: ``(self * other)(i) = other(self(i))``."""
        if self.n != other.n:
            raise StrandMismatch(f"cannot compose permutations of {self.n} and {other.n} points")
        return Permutation(tuple(other(self(i)) for i in range(1, self.n + 1)))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(j == i for i, j in enumerate(self.images, start=1))

    def fixed_points(self) -> list[int]:
        return [i for i, j in enumerate(self.images, start=1) if i == j]

    def cycles(self) -> list[tuple[int, ...]]:
        """All cycles, fixed points included, each starting at its minimum."""
        seen = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles()))

    def __str__(self) -> str:
        nontrivial = [c for c in self.cycles() if len(c) > 1]
        if not nontrivial:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in nontrivial)


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 2:
            raise ValueError(f"a braid needs at least 2 strands, got {self.strands}")
        for s in self.letters:
            if s == 0 or abs(s) > self.strands - 1:
                raise IndexOutOfRange(f"braid letter {s} outside ±1..±{self.strands - 1}")

    def __mul__(self, other: BraidWord) -> BraidWord:
        return compose(self, other)

    def __len__(self) -> int:
        return len(self.letters)

    def __pow__(self, k: int) -> BraidWord:
        base = self if k >= 0 else invert_braid(self)
        return BraidWord(self.strands, base.letters * abs(k))

    def embed(self, strands: int) -> BraidWord:
        """The same word viewed in ``B_strands`` (adds strands on the right)."""
        if strands < self.strands:
            raise StrandMismatch(f"cannot embed B_{self.strands} into B_{strands}")
        return BraidWord(strands, self.letters)

    def max_generator(self) -> int:
        return max((abs(s) for s in self.letters), default=0)

    def __str__(self) -> str:
        return format_braid(self)


def sigma(n: int, i: int, exp: int = 1) -> BraidWord:
    sign = 1 if exp > 0 else -1
    return BraidWord(n, (sign * i,) * abs(exp))


def compose(a: BraidWord, b: BraidWord) -> BraidWord:
    if a.strands != b.strands:
        raise StrandMismatch(f"cannot compose braids on {a.strands} and {b.strands} strands")
    return BraidWord(a.strands, a.letters + b.letters)


def invert_braid(a: BraidWord) -> BraidWord:
    return BraidWord(a.strands, tuple(-s for s in reversed(a.letters)))


def format_braid(b: BraidWord) -> str:
    if not b.letters:
        return ""
    parts = []
    prev, count = b.letters[0], 0
    for s in b.letters + (0,):
        if s == prev:
            count += 1
            continue
        exp = count if prev > 0 else -count
        parts.append(f"s{abs(prev)}" if exp == 1 else f"s{abs(prev)}^{exp}")
        prev, count = s, 1
    return " ".join(parts)


_BTOKEN = re.compile(r"s(\d+)(?:\^(-?\d+))?")
_INT = re.compile(r"-?\d+")


def parse_braid(text: str, strands: int) -> BraidWord:
    """Parse ``s1^2 s2^-1`` or a signed-integer list ``1 1 -2``; blank means identity."""
    letters: list[int] = []
    pos = 0
    int_mode = bool(re.fullmatch(r"[\s,]*(-?\d+[\s,]*)*", text))
    while pos < len(text):
        if text[pos] in " \t\n,*":
            pos += 1
            continue
        m = (_INT if int_mode else _BTOKEN).match(text, pos)
        if not m:
            raise ParseError(f"unexpected {text[pos]!r} in braid", 1, pos + 1)
        if int_mode:
            k, exp = abs(int(m.group(0))), (1 if int(m.group(0)) > 0 else -1)
            if k == 0:
                raise ParseError("braid letter 0 is not allowed", 1, pos + 1)
        else:
            k = int(m.group(1))
            exp = int(m.group(2)) if m.group(2) is not None else 1
            if exp == 0:
                raise ParseError("exponent 0 is not allowed", 1, m.start(2) + 1)
        if not 1 <= k <= strands - 1:
            raise ParseError(f"generator s{k} outside s1..s{strands - 1}", 1, pos + 1)
        letters.extend([k if exp > 0 else -k] * abs(exp))
        pos = m.end()
    return BraidWord(strands, tuple(letters))


@lru_cache(maxsize=None)
def generator_images(n: int, letter: int) -> dict[int, Word]:
    """Images of ``x_1..x_n`` under ``sigma_i`` (letter ``i``) or its inverse (``-i``)."""
    i = abs(letter)
    images = {j: Word.gen(j) for j in range(1, n + 1)}
    xi, xi1 = Word.gen(i), Word.gen(i + 1)
    if letter > 0:
        images[i] = Word.product((xi, xi1, xi.inverse()))
        images[i + 1] = xi
    else:
        images[i] = xi1
        images[i + 1] = Word.product((xi1.inverse(), xi, xi1))
    return images


def artin_action(b: BraidWord) -> dict[int, Word]:
    """Images ``x_j^b`` for ``j = 1..n``."""
    images = {j: Word.gen(j) for j in range(1, b.strands + 1)}
    for s in b.letters:
        step = generator_images(b.strands, s)
        images = {j: apply_images(step, w) for j, w in images.items()}
    return images


def underlying_permutation(b: BraidWord) -> Permutation:
    # position[p - 1] is the current position of the strand that started at p
    position = list(range(1, b.strands + 1))
    for s in b.letters:
        i = abs(s)
        for p in range(b.strands):
            if position[p] == i:
                position[p] = i + 1
            elif position[p] == i + 1:
                position[p] = i
    return Permutation(tuple(position))


def pure_braid_generator(i: int, j: int, n: int) -> BraidWord:
    """``A_{i,j} = s_{j-1} ... s_{i+1} s_i^2 s_{i+1}^-1 ... s_{j-1}^-1``."""
    if not 1 <= i < j <= n:
        raise IndexOutOfRange(f"A_{{{i},{j}}} needs 1 <= i < j <= n = {n}")
    down = tuple(range(j - 1, i, -1))
    return BraidWord(n, down + (i, i) + tuple(-k for k in reversed(down)))


def aij_images(i: int, j: int, n: int) -> dict[int, Word]:
    """Closed-form action of ``A_{i,j}`` on ``x_1..x_n``."""
    if not 1 <= i < j <= n:
        raise IndexOutOfRange(f"A_{{{i},{j}}} needs 1 <= i < j <= n = {n}")
    xi, xj = Word.gen(i), Word.gen(j)
    xi_, xj_ = xi.inverse(), xj.inverse()
    images = {k: Word.gen(k) for k in range(1, n + 1)}
    images[i] = Word.product((xi, xj, xi, xj_, xi_))
    left = Word.product((xi, xj, xi_, xj_))
    for k in range(i + 1, j):
        images[k] = Word.product((left, Word.gen(k), left.inverse()))
    images[j] = Word.product((xi, xj, xi_))
    return images


def lift_permutation(perm: Permutation) -> BraidWord:
    """A positive braid word whose underlying permutation is ``perm``.

    Bubble-sorts the arrangement of strands; a permutation fixing ``n`` never
    needs the last generator, so its lift lives in ``B_{n-1}``.
    """
    n = perm.n
    # arrangement[p - 1] is the strand that must end at position p
    arrangement = list(perm.inverse().images)
    swaps = []
    changed = True
    while changed:
        changed = False
        for p in range(n - 1):
            if arrangement[p] > arrangement[p + 1]:
                arrangement[p], arrangement[p + 1] = arrangement[p + 1], arrangement[p]
                swaps.append(p + 1)
                changed = True
    return BraidWord(max(n, 2), tuple(reversed(swaps)))
