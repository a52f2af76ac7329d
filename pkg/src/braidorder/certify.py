"""
Permutation-conjugacy form of a free-group endomorphism and its order certificates.

An endomorphism in conjugacy form sends every ``x_i`` to ``w_i x_{sigma(i)} w_i^-1``.
Given a fixed point ``i0`` of ``sigma`` and the exponent-sum map ``h`` at ``i0``,
every other orbit ``O`` of ``sigma`` gets the number ``h_O = sum h(w_i)``.
If ``gcd(|O|, h_O) = 1`` for all of them the automorphism preserves a
bi-ordering; if merely ``h_O != 0`` for every orbit of size at least two it
preserves a left-ordering. Neither condition is necessary, so failing both
yields ``INCONCLUSIVE`` rather than a negative claim.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Mapping

from .braid import BraidWord, Permutation, artin_action
from .errors import I0NotFixed, NoFixedPoint, NotConjugacyForm, SigmaNotBijective
from .words import ExponentHom, FreeGroup, Word, format_word


class Verdict(enum.Enum):
    BI_ORDER_PRESERVING = "BI_ORDER_PRESERVING"
    LEFT_ORDER_PRESERVING = "LEFT_ORDER_PRESERVING"
    INCONCLUSIVE = "INCONCLUSIVE"

    @property
    def strength(self) -> int:
        return {"BI_ORDER_PRESERVING": 2, "LEFT_ORDER_PRESERVING": 1, "INCONCLUSIVE": 0}[self.value]


@dataclass(frozen=True)
class ConjugacyForm:
    rank: int
    sigma: Permutation
    conjugators: tuple[Word, ...]  # conjugators[i - 1] is w_i

    def w(self, i: int) -> Word:
        return self.conjugators[i - 1]

    def image(self, i: int) -> Word:
        return Word.gen(self.sigma(i)).conjugate_by(self.w(i))

    def images(self) -> dict[int, Word]:
        return {i: self.image(i) for i in range(1, self.rank + 1)}

    def apply(self, w: Word) -> Word:
        return FreeGroup(self.rank).apply_endomorphism(self.images(), w)


def extract_conjugacy_form(images: Mapping[int, Word]) -> ConjugacyForm:
    """Read off ``sigma`` and the shortest conjugators from reduced images.

    The reduced form of a conjugate of ``x_j`` is ``v x_j v^-1`` with ``v``
    reduced, so the middle letter names ``sigma(i)`` and the prefix is ``w_i``.
    """
    n = len(images)
    targets = []
    conjugators = []
    for i in range(1, n + 1):
        img = images[i]
        letters = img.letters()
        if len(letters) % 2 == 0:
            raise NotConjugacyForm(i, format_word(img))
        mid = len(letters) // 2
        j, sign = letters[mid]
        if sign != 1:
            raise NotConjugacyForm(i, format_word(img))
        w = Word.from_runs(letters[:mid])
        if Word.gen(j).conjugate_by(w) != img:
            raise NotConjugacyForm(i, format_word(img))
        targets.append(j)
        conjugators.append(w)
    if sorted(targets) != list(range(1, n + 1)):
        raise SigmaNotBijective(f"generator targets {targets} are not a permutation of 1..{n}")
    return ConjugacyForm(n, Permutation(tuple(targets)), tuple(conjugators))


def braid_form(b: BraidWord) -> ConjugacyForm:
    return extract_conjugacy_form(artin_action(b))


@dataclass(frozen=True)
class OrbitReport:
    orbit: tuple[int, ...]
    h_values: tuple[int, ...]
    h_O: int
    gcd_value: int
    passes_gcd: bool
    passes_nonvanishing: bool

    def to_json(self) -> dict:
        return {
            "orbit": list(self.orbit),
            "h_values": list(self.h_values),
            "h_O": self.h_O,
            "gcd": self.gcd_value,
        }


@dataclass(frozen=True)
class Certificate:
    i0: int
    reports: tuple[OrbitReport, ...]
    verdict: Verdict

    def to_json(self) -> dict:
        return {
            "i0": self.i0,
            "verdict": self.verdict.value,
            "orbits": [r.to_json() for r in self.reports],
        }


def orbit_tuples(sigma: Permutation, i0: int) -> list[tuple[int, ...]]:
    """Orbits other than ``{i0}``, each following sigma from its minimum, sorted by minimum."""
    return [c for c in sigma.cycles() if c != (i0,)]


def orbit_report(form: ConjugacyForm, orbit: tuple[int, ...], i0: int) -> OrbitReport:
    h = ExponentHom(i0)
    values = tuple(h(form.w(k)) for k in orbit)
    r = len(orbit)
    h_o = sum(values)
    g = math.gcd(r, abs(h_o))
    return OrbitReport(
        orbit=orbit,
        h_values=values,
        h_O=h_o,
        gcd_value=g,
        passes_gcd=g == 1,
        passes_nonvanishing=r == 1 or h_o != 0,
    )


def _certify(form: ConjugacyForm, i0: int) -> Certificate:
    if not 1 <= i0 <= form.rank or form.sigma(i0) != i0:
        raise I0NotFixed(f"sigma does not fix {i0}")
    reports = tuple(orbit_report(form, o, i0) for o in orbit_tuples(form.sigma, i0))
    if all(r.passes_gcd for r in reports):
        verdict = Verdict.BI_ORDER_PRESERVING
    elif all(r.passes_nonvanishing for r in reports):
        verdict = Verdict.LEFT_ORDER_PRESERVING
    else:
        verdict = Verdict.INCONCLUSIVE
    return Certificate(i0, reports, verdict)


def certify_biorder(form: ConjugacyForm, i0: int) -> Certificate:
    """Evaluate the gcd criterion at the fixed point ``i0``.

    The returned certificate carries the full three-way verdict, so a
    failing gcd test that still passes the non-vanishing test reports
    ``LEFT_ORDER_PRESERVING``.
    """
    return _certify(form, i0)


def certify_left(form: ConjugacyForm, i0: int) -> Certificate:
    """Evaluate the non-vanishing criterion; a passing gcd test still wins."""
    return _certify(form, i0)


def certify_all(form: ConjugacyForm) -> Certificate:
    fixed = form.sigma.fixed_points()
    if not fixed:
        raise NoFixedPoint(f"sigma = {form.sigma} has no fixed point")
    best = None
    for i0 in fixed:
        cert = _certify(form, i0)
        if best is None or cert.verdict.strength > best.verdict.strength:
            best = cert
    return best


def certify_braid(b: BraidWord, i0: int | None = None) -> Certificate:
    form = braid_form(b)
    return certify_all(form) if i0 is None else certify_biorder(form, i0)
