"""
An explicit bi-ordering of ``F_n`` invariant under a certified automorphism.

Let ``h`` be the exponent sum of ``x_{i0}`` and ``K`` its kernel. ``K`` is free
on ``y_{i,j} = x_{i0}^j x_i x_{i0}^-j`` (``i != i0``), and the automorphism
permutes the images ``A_{i,j}`` of these letters in ``K_ab`` by
``A_{i,j} -> A_{sigma(i), j + h(w_i)}``. Each orbit ``O`` of ``sigma`` with
``gcd(|O|, h_O) = 1`` has its letters enumerated by a single integer ``t`` so
that the automorphism acts as ``t -> t + h_O`` and conjugation by ``x_{i0}``
as ``t -> t + |O|``. Ordering letters by (orbit, t) therefore makes both maps
order-preserving on every lower-central quotient of ``K``, and the Magnus
leading-term ordering of ``K`` built on that letter order is invariant
under both. An element of ``F`` is positive when ``h`` is positive, or when
``h`` vanishes and its rewrite in ``K`` is positive.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .braid import BraidWord, Permutation
from .certify import ConjugacyForm, Verdict, braid_form, certify_all, certify_biorder, orbit_tuples
from .errors import GcdViolation, HNonzero, PreconditionError
from .magnus import DEFAULT_CAP, leading_tensor
from .words import ExponentHom, Word


class Relation(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class KIndex(NamedTuple):
    generator: int
    shift: int

    def __str__(self) -> str:
        return f"y{self.generator}_{self.shift}"

    def word(self, i0: int) -> Word:
        """This basis letter written in ``F``."""
        return Word.gen(self.generator).conjugate_by(Word.gen(i0, self.shift))


@dataclass(frozen=True)
class OrbitData:
    orbit: tuple[int, ...]
    h_values: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.orbit)

    @property
    def h_O(self) -> int:
        return sum(self.h_values)

    @property
    def partial_sums(self) -> tuple[int, ...]:
        """``y_m = -(h_1 + ... + h_{m-1})``."""
        out, acc = [], 0
        for v in self.h_values:
            out.append(acc)
            acc -= v
        return tuple(out)

    def coprime(self) -> bool:
        from math import gcd

        return gcd(self.rank, abs(self.h_O)) == 1


def vindex_decode(orbit: OrbitData, t: int) -> tuple[int, int]:
    """Solve ``t = r (y_i + j) + i h_O`` for ``i in 1..r`` and return ``(k_i, j)``."""
    r, h_o = orbit.rank, orbit.h_O
    if not orbit.coprime():
        raise GcdViolation(f"gcd({r}, {h_o}) != 1 for orbit {orbit.orbit}")
    i = (t * pow(h_o, -1, r)) % r if r > 1 else 0
    if i == 0:
        i = r
    rem = t - i * h_o
    assert rem % r == 0
    j = rem // r - orbit.partial_sums[i - 1]
    return orbit.orbit[i - 1], j


def vindex_encode(orbit: OrbitData, generator: int, shift: int) -> int:
    if generator not in orbit.orbit:
        raise ValueError(f"x{generator} is not in orbit {orbit.orbit}")
    if not orbit.coprime():
        raise GcdViolation(f"gcd({orbit.rank}, {orbit.h_O}) != 1 for orbit {orbit.orbit}")
    i = orbit.orbit.index(generator) + 1
    return orbit.rank * (orbit.partial_sums[i - 1] + shift) + i * orbit.h_O


def left_vindex_decode(orbit: OrbitData, t: int) -> tuple[int, int]:
    """Letter enumeration used for the left-ordering variant (requires ``h_O != 0``).

    ``t = (m r + j) h_O + i`` with ``0 <= i < |h_O|`` and ``1 <= j <= r``
    gives the letter ``(k_j, m h_O + h_j + i)``, ``h_j`` the sum of the first
    ``j - 1`` h-values. Singleton orbits use ``(k_1, t)``.
    """
    r, h_o = orbit.rank, orbit.h_O
    if r == 1:
        return orbit.orbit[0], t
    if h_o == 0:
        raise GcdViolation(f"h_O = 0 for orbit {orbit.orbit}")
    i = t % abs(h_o)
    q = (t - i) // h_o
    j = (q - 1) % r + 1
    m = (q - j) // r
    h_j = -orbit.partial_sums[j - 1]
    return orbit.orbit[j - 1], m * h_o + h_j + i


class OrderContext:
    """Everything needed to compare elements of ``F_n`` under a fixed ``(form, i0)``.

    Orbits failing the gcd test fall back to a plain enumeration of their
    letters so that comparisons stay total; invariance is then not claimed.
    """

    def __init__(self, form: ConjugacyForm, i0: int, cap: int = DEFAULT_CAP):
        self.certificate = certify_biorder(form, i0)
        self.form = form
        self.rank = form.rank
        self.i0 = i0
        self.cap = cap
        self.h = ExponentHom(i0)
        self.orbits = tuple(
            OrbitData(r.orbit, r.h_values) for r in self.certificate.reports
        )
        self._orbit_of = {k: o for o in self.orbits for k in o.orbit}

    @classmethod
    def from_braid(cls, b: BraidWord, cap: int = DEFAULT_CAP, i0: int | None = None) -> OrderContext:
        form = braid_form(b)
        if i0 is None:
            i0 = certify_all(form).i0
        return cls(form, i0, cap)

    def with_cap(self, cap: int) -> OrderContext:
        return OrderContext(self.form, self.i0, cap)

    @property
    def sigma(self) -> Permutation:
        return self.form.sigma

    @property
    def certified(self) -> bool:
        return self.certificate.verdict is Verdict.BI_ORDER_PRESERVING

    def orbit_of(self, generator: int) -> OrbitData:
        return self._orbit_of[generator]

    def kindex_key(self, a: KIndex) -> tuple[int, int]:
        o = self._orbit_of[a.generator]
        if o.coprime():
            return o.orbit[0], vindex_encode(o, a.generator, a.shift)
        return o.orbit[0], a.shift * o.rank + o.orbit.index(a.generator)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "i0": self.i0,
            "sigma": list(self.sigma.images),
            "conjugators": {f"x{i}": str(self.form.w(i)) for i in range(1, self.rank + 1)},
            "cap": self.cap,
            "certificate": self.certificate.to_json(),
        }


def kindex_compare(a: KIndex, b: KIndex, ctx: OrderContext) -> Relation:
    ka, kb = ctx.kindex_key(a), ctx.kindex_key(b)
    return Relation((ka > kb) - (ka < kb))


def schreier_rewrite(w: Word, ctx: OrderContext) -> Word:
    """Rewrite ``w`` (with ``h(w) = 0``) over the letters ``y_{i,j}`` of ``K``."""
    runs = []
    m = 0
    for g, e in w.runs:
        if g == ctx.i0:
            m += e
        else:
            runs.append((KIndex(g, m), e))
    if m != 0:
        raise HNonzero(f"h({w}) = {m}, not in the kernel")
    return Word.from_runs(runs)


def evaluate_kword(kw: Word, i0: int) -> Word:
    """Substitute the definitions of the ``y_{i,j}`` back into ``F``."""
    return Word.product(KIndex(*g).word(i0) ** e for g, e in kw.runs)


def abelianize_kword(kw: Word) -> dict:
    out: dict = {}
    for g, e in kw.runs:
        out[g] = out.get(g, 0) + e
    return {g: c for g, c in sorted(out.items()) if c}


@dataclass(frozen=True)
class Comparison:
    """A decided comparison and the data that decided it."""

    relation: Relation
    h_difference: int
    depth: int | None = None
    index: tuple | None = None
    coefficient: int | None = None

    def explain(self) -> str:
        if self.relation is Relation.EQUAL:
            return "equal elements"
        if self.h_difference:
            return f"h(a^-1 b) = {self.h_difference}"
        idx = " ".join(str(KIndex(*g)) for g in self.index)
        return (
            f"h(a^-1 b) = 0; in K: depth {self.depth}, minimal index ({idx}), "
            f"coefficient {self.coefficient:+d}"
        )


def _k_sign(w: Word, ctx: OrderContext) -> tuple[int, tuple, int]:
    """Depth, minimal index tuple and its coefficient for a nontrivial ``w`` in ``K``."""
    tensor = leading_tensor(w, ctx.cap)
    best = min(tensor.coords, key=lambda mono: tuple(ctx.kindex_key(KIndex(*g)) for g in mono))
    return tensor.degree, best, tensor.coords[best]


def compare_in_K(u: Word, v: Word, ctx: OrderContext) -> Relation:
    return _compare_k(u, v, ctx).relation


def _compare_k(u: Word, v: Word, ctx: OrderContext) -> Comparison:
    w = u.inverse() * v
    if w.is_identity():
        return Comparison(Relation.EQUAL, 0)
    depth, idx, coef = _k_sign(w, ctx)
    rel = Relation.LESS if coef > 0 else Relation.GREATER
    return Comparison(rel, 0, depth, idx, coef)


def explain_compare_in_F(a: Word, b: Word, ctx: OrderContext) -> Comparison:
    d = a.inverse() * b
    if d.is_identity():
        return Comparison(Relation.EQUAL, 0)
    hd = ctx.h(d)
    if hd:
        return Comparison(Relation.LESS if hd > 0 else Relation.GREATER, hd)
    return _compare_k(Word(), schreier_rewrite(d, ctx), ctx)


def compare_in_F(a: Word, b: Word, ctx: OrderContext) -> Relation:
    """``LESS`` when ``a < b``; raises ``DepthExceedsCap`` when undecided at the cap."""
    return explain_compare_in_F(a, b, ctx).relation


def is_positive(a: Word, ctx: OrderContext) -> bool:
    return compare_in_F(Word(), a, ctx) is Relation.LESS


# ---------------------------------------------------------------------------
# translation formulas


@dataclass
class TranslationReport:
    checks: int = 0
    mismatches: list = None

    def __post_init__(self):
        if self.mismatches is None:
            self.mismatches = []

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _single_letter(ab: dict):
    if len(ab) == 1:
        (g, c), = ab.items()
        if c == 1:
            return KIndex(*g)
    return None


def translation_maps_check(ctx: OrderContext, window: Sequence[int] = range(-20, 21)) -> TranslationReport:
    """Recompute the induced maps on ``K_ab`` in ``F`` and compare with the closed formulas.

    For each orbit and each ``t`` in ``window``: the automorphism sends
    ``V_t = A_{i,j}`` to ``A_{sigma(i), j + h(w_i)} = V_{t + h_O}``, and
    conjugation by ``x_{i0}`` sends it to ``A_{i, j+1} = V_{t + |O|}``. Both
    index maps must also be monotone in the letter order.
    """
    if not ctx.certified:
        raise PreconditionError("translation formulas need a passing bi-order certificate")
    report = TranslationReport()
    images = ctx.form.images()
    x0 = Word.gen(ctx.i0)

    def note(kind, orbit, t, got, want):
        report.checks += 1
        if got != want:
            report.mismatches.append((kind, orbit.orbit, t, got, want))

    for orbit in ctx.orbits:
        prev = None
        for t in window:
            i, j = vindex_decode(orbit, t)
            letter = KIndex(i, j)
            note("encode", orbit, t, vindex_encode(orbit, i, j), t)
            y = letter.word(ctx.i0)
            phi_y = Word.product(images[g] ** e for g, e in y.runs)
            phi_ab = _single_letter(abelianize_kword(schreier_rewrite(phi_y, ctx)))
            note("phi_generator", orbit, t, phi_ab, KIndex(ctx.sigma(i), j + ctx.h(ctx.form.w(i))))
            note("phi_translation", orbit, t, phi_ab, KIndex(*vindex_decode(orbit, t + orbit.h_O)))
            psi_ab = _single_letter(abelianize_kword(schreier_rewrite(y.conjugate_by(x0), ctx)))
            note("psi_generator", orbit, t, psi_ab, KIndex(i, j + 1))
            note("psi_translation", orbit, t, psi_ab, KIndex(*vindex_decode(orbit, t + orbit.rank)))
            if prev is not None:
                p_letter, p_phi, p_psi = prev
                note("order", orbit, t, kindex_compare(p_letter, letter, ctx), Relation.LESS)
                if p_phi is not None and phi_ab is not None:
                    note("phi_monotone", orbit, t, kindex_compare(p_phi, phi_ab, ctx), Relation.LESS)
                if p_psi is not None and psi_ab is not None:
                    note("psi_monotone", orbit, t, kindex_compare(p_psi, psi_ab, ctx), Relation.LESS)
            prev = (letter, phi_ab, psi_ab)
    return report


def matrix_is_positively_triangular(matrix: Sequence[Sequence[int]], basis_order: Sequence[int] | None = None) -> bool:
    """Upper triangular with positive diagonal once rows and columns follow ``basis_order``.

    Column ``c`` holds the coordinates of the image of basis vector ``c``.
    ``basis_order`` lists 0-based basis positions from smallest to largest.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    order = list(range(n)) if basis_order is None else list(basis_order)
    if sorted(order) != list(range(n)):
        raise ValueError(f"basis order {basis_order} is not a permutation of 0..{n - 1}")
    for a, r in enumerate(order):
        for b, c in enumerate(order):
            v = matrix[r][c]
            if a == b and v <= 0:
                return False
            if a > b and v != 0:
                return False
    return True
