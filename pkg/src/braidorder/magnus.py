"""
Fox calculus and truncated Magnus expansions.

The Magnus map sends a generator ``x`` to ``1 + X`` in the ring of
noncommutative power series with integer coefficients; ``x^e`` becomes the
binomial series ``(1 + X)^e``. An element lies in the ``k``-th term of the
lower central series exactly when its expansion has no terms of degree
``1..k-1``, and the degree-``k`` homogeneous part is then its image in
``F_k / F_{k+1}`` written in tensor coordinates.

Letters may be any hashable, orderable objects, so the same code expands
words over ``x_1..x_n`` and over the free basis of a subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Hashable, Mapping

from .errors import DepthExceedsCap
from .words import Word, format_word

DEFAULT_CAP = 8

Monomial = tuple


def _clean(terms: Mapping) -> dict:
    return {m: c for m, c in sorted(terms.items()) if c}


# ---------------------------------------------------------------------------
# group ring and Fox derivatives


@dataclass(frozen=True, eq=False)
class GroupRingElement:
    """Finite integer combination of group elements."""

    terms: dict = field(default_factory=dict)  # Word -> nonzero int

    @classmethod
    def of(cls, terms: Mapping[Word, int]) -> GroupRingElement:
        return cls({w: c for w, c in terms.items() if c})

    @classmethod
    def one(cls) -> GroupRingElement:
        return cls({Word(): 1})

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: GroupRingElement) -> GroupRingElement:
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElement.of(out)

    def __neg__(self) -> GroupRingElement:
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: GroupRingElement) -> GroupRingElement:
        return self + (-other)

    def __mul__(self, other: GroupRingElement) -> GroupRingElement:
        out: dict = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                uv = u * v
                out[uv] = out.get(uv, 0) + a * b
        return GroupRingElement.of(out)

    def left_mul(self, g: Word) -> GroupRingElement:
        out: dict = {}
        for w, c in self.terms.items():
            gw = g * w
            out[gw] = out.get(gw, 0) + c
        return GroupRingElement.of(out)

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0].runs))
        return " + ".join(f"{c}*[{format_word(w)}]" for w, c in items)


def fox_derivative(w: Word, j: Hashable) -> GroupRingElement:
    """``D_j(w)`` by the rules ``D_j(uv) = D_j(u) + u D_j(v)``, ``D_j(x_i) = delta_ij``."""
    out: dict = {}
    prefix: list = []
    for g, s in w.letters():
        if g == j:
            if s > 0:
                key = Word(tuple(prefix))
                out[key] = out.get(key, 0) + 1
                _append(prefix, g, 1)
            else:
                _append(prefix, g, -1)
                key = Word(tuple(prefix))
                out[key] = out.get(key, 0) - 1
        else:
            _append(prefix, g, s)
    return GroupRingElement.of(out)


def _append(stack: list, g, s: int) -> None:
    if stack and stack[-1][0] == g:
        e = stack[-1][1] + s
        if e:
            stack[-1] = (g, e)
        else:
            stack.pop()
    else:
        stack.append((g, s))


def fox_eval0(w: Word, j: Hashable) -> int:
    """Augmentation of ``D_j(w)``; equals the exponent sum of ``x_j`` in ``w``."""
    return fox_derivative(w, j).augmentation()


# ---------------------------------------------------------------------------
# truncated noncommutative polynomials


class NcPolynomial:
    """Integer polynomial in noncommuting variables, truncated above ``degree_cap``.

    Monomials are tuples of letters; terms are kept with sorted keys so that
    iteration order is deterministic.
    """

    __slots__ = ("degree_cap", "terms")

    def __init__(self, degree_cap: int, terms: Mapping[Monomial, int] | None = None):
        if degree_cap < 1:
            raise ValueError(f"degree cap must be at least 1, got {degree_cap}")
        self.degree_cap = degree_cap
        self.terms = _clean({m: c for m, c in (terms or {}).items() if len(m) <= degree_cap})

    @classmethod
    def one(cls, cap: int) -> NcPolynomial:
        return cls(cap, {(): 1})

    @classmethod
    def variable(cls, letter, cap: int) -> NcPolynomial:
        return cls(cap, {(letter,): 1})

    def __eq__(self, other) -> bool:
        if not isinstance(other, NcPolynomial):
            return NotImplemented
        return self.degree_cap == other.degree_cap and self.terms == other.terms

    def __repr__(self) -> str:
        return f"NcPolynomial({self.degree_cap}, {self.terms!r})"

    def __add__(self, other: NcPolynomial) -> NcPolynomial:
        cap = min(self.degree_cap, other.degree_cap)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return NcPolynomial(cap, out)

    def __sub__(self, other: NcPolynomial) -> NcPolynomial:
        return self + other.scale(-1)

    def scale(self, k: int) -> NcPolynomial:
        return NcPolynomial(self.degree_cap, {m: k * c for m, c in self.terms.items()})

    def __mul__(self, other: NcPolynomial) -> NcPolynomial:
        cap = min(self.degree_cap, other.degree_cap)
        out: dict = {}
        for m1, c1 in self.terms.items():
            room = cap - len(m1)
            for m2, c2 in other.terms.items():
                if len(m2) <= room:
                    m = m1 + m2
                    out[m] = out.get(m, 0) + c1 * c2
        return NcPolynomial(cap, out)

    def homogeneous(self, degree: int) -> dict:
        return {m: c for m, c in self.terms.items() if len(m) == degree}

    def constant(self) -> int:
        return self.terms.get((), 0)

    def lines(self) -> list[str]:
        """``coef * X1.X2`` lines, for debugging dumps."""
        out = []
        for m, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            name = ".".join(_var_name(g) for g in m) if m else "1"
            out.append(f"{c} * {name}")
        return out


def _var_name(g) -> str:
    return f"X{g}" if isinstance(g, int) else f"X[{g}]"


def _power_series_coeffs(e: int, cap: int) -> list[int]:
    """Coefficients of ``(1 + X)^e`` up to degree ``cap``."""
    if e >= 0:
        return [comb(e, t) for t in range(min(e, cap) + 1)]
    m = -e
    return [(-1) ** t * comb(m + t - 1, t) for t in range(cap + 1)]


def magnus_expansion(w: Word, cap: int = DEFAULT_CAP) -> NcPolynomial:
    if cap < 1:
        raise ValueError(f"degree cap must be at least 1, got {cap}")
    terms: dict = {(): 1}
    for g, e in w.runs:
        coeffs = _power_series_coeffs(e, cap)
        out: dict = {}
        for m, c in terms.items():
            room = cap - len(m)
            for t, a in enumerate(coeffs):
                if t > room:
                    break
                key = m + (g,) * t if t else m
                out[key] = out.get(key, 0) + c * a
        terms = {m: c for m, c in out.items() if c}
    return NcPolynomial(cap, terms)


def _degree_one(w: Word) -> dict:
    out: dict = {}
    for g, e in w.runs:
        out[(g,)] = out.get((g,), 0) + e
    return {m: c for m, c in out.items() if c}


def _leading(w: Word, cap: int) -> tuple[int, dict]:
    if w.is_identity():
        raise ValueError("the identity has no lower central series depth")
    first = _degree_one(w)
    if first:
        return 1, _clean(first)
    for d in range(2, cap + 1):
        part = magnus_expansion(w, d).homogeneous(d)
        if part:
            return d, part
    raise DepthExceedsCap(cap)


def lcs_depth(w: Word, cap: int = DEFAULT_CAP) -> int:
    """Largest ``k`` with ``w`` in the ``k``-th lower central series term."""
    return _leading(w, cap)[0]


@dataclass(frozen=True)
class LeadingTensor:
    degree: int
    coords: dict  # k-tuple of letters -> nonzero int


def leading_tensor(w: Word, cap: int = DEFAULT_CAP) -> LeadingTensor:
    degree, coords = _leading(w, cap)
    return LeadingTensor(degree, coords)


def substitute_linear(tensor: LeadingTensor, images: Mapping) -> LeadingTensor:
    """Apply a degree-one substitution to each tensor factor and expand multilinearly.

    ``images[letter]`` maps each letter to ``{letter: coefficient}``, e.g. the
    abelianised image of a generator under an automorphism.
    """
    out: dict = {}
    for mono, c in tensor.coords.items():
        partial = {(): c}
        for g in mono:
            nxt: dict = {}
            for prefix, a in partial.items():
                for h, b in images[g].items():
                    key = prefix + (h,)
                    nxt[key] = nxt.get(key, 0) + a * b
            partial = nxt
        for key, a in partial.items():
            out[key] = out.get(key, 0) + a
    return LeadingTensor(tensor.degree, _clean(out))
