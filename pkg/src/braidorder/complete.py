"""
Constructive completions: right-multiply a braid until its Artin action is certified.

Three routes are provided, each tied to a different kind of factor:

* ``complete_with_axis_conjugates``: for a braid not touching the last strand,
  append powers of ``A_{i,n}``; each copy of ``A_{i,n}`` raises ``h_c`` by one
  for the cycle ``c`` containing ``i`` and leaves the other cycles alone.
* ``b3_stabilize``: in ``B_3``, some ``beta s1^k`` with ``0 <= k <= 3`` works.
* ``stabilize_in_lower_braid``: in ``B_n``, a factor from ``B_{n-1}`` reshapes
  the permutation into a fixed point plus an ``(n-1)``-cycle, then even powers
  of one generator fix the remaining gcd.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .braid import (
    BraidWord,
    Permutation,
    compose,
    format_braid,
    lift_permutation,
    pure_braid_generator,
    sigma,
    underlying_permutation,
)
from .certify import Certificate, Verdict, braid_form, certify_all, certify_biorder, orbit_report
from .errors import NoFixedPoint, PreconditionError


@dataclass(frozen=True)
class CompletionResult:
    beta: BraidWord
    alpha: BraidWord
    product: BraidWord
    certificate: Certificate
    steps: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "strands": self.product.strands,
            "beta": format_braid(self.beta),
            "alpha": format_braid(self.alpha),
            "product": format_braid(self.product),
            "certificate": self.certificate.to_json(),
            "steps": list(self.steps),
        }


def _result(beta: BraidWord, alpha: BraidWord, cert: Certificate, steps: list[str]) -> CompletionResult:
    product = compose(beta, alpha)
    if cert.verdict is not Verdict.BI_ORDER_PRESERVING:
        raise AssertionError(f"completion of {format_braid(beta)} did not certify: {cert.to_json()}")
    return CompletionResult(beta, alpha, product, cert, tuple(steps))


def _smallest_coprime_shift(r: int, h: int) -> int:
    k = 0
    while math.gcd(r, abs(h + k)) != 1:
        k += 1
    return k


def complete_with_axis_conjugates(beta: BraidWord) -> CompletionResult:
    """Append ``A_{min(c),n}^k`` per failing cycle ``c`` (``k`` smallest making it coprime)."""
    n = beta.strands
    if n < 3:
        raise PreconditionError("axis completion needs at least 3 strands")
    if beta.max_generator() >= n - 1:
        raise PreconditionError(f"beta must avoid s{n - 1} so that strand {n} is fixed")
    form = braid_form(beta)
    letters: list[int] = []
    steps = []
    for report in certify_biorder(form, n).reports:
        c = report.orbit
        k = _smallest_coprime_shift(len(c), report.h_O)
        if k:
            a = pure_braid_generator(min(c), n, n)
            letters.extend(a.letters * k)
            steps.append(f"cycle {c}: h_c = {report.h_O}, append A_{min(c)},{n}^{k}")
        else:
            steps.append(f"cycle {c}: h_c = {report.h_O}, already coprime to {len(c)}")
    alpha = BraidWord(n, tuple(letters))
    cert = certify_biorder(braid_form(compose(beta, alpha)), n)
    return _result(beta, alpha, cert, steps)


def b3_stabilize(beta: BraidWord) -> tuple[int, CompletionResult]:
    if beta.strands != 3:
        raise PreconditionError("b3_stabilize works in B_3")
    for k in range(4):
        alpha = sigma(3, 1, k)
        try:
            cert = certify_all(braid_form(compose(beta, alpha)))
        except NoFixedPoint:
            continue
        if cert.verdict is Verdict.BI_ORDER_PRESERVING:
            steps = [f"beta s1^{k} certifies with i0 = {cert.i0}"]
            return k, _result(beta, alpha, cert, steps)
    raise AssertionError(f"no k in 0..3 certifies {format_braid(beta)}")


@dataclass(frozen=True)
class PermutationCompletion:
    tau: Permutation
    fixed_point: int
    long_cycle: tuple[int, ...]


def permutation_completion(perm: Permutation) -> PermutationCompletion:
    """``tau`` fixing ``n`` such that ``perm * tau`` is ``(i)(c2)`` with ``i <= n-2``."""
    n = perm.n
    if n < 4:
        raise PreconditionError("permutation completion needs n >= 4")
    if perm(n) == n:
        raise PreconditionError(f"perm must move {n}")
    j = perm.inverse()(n)
    rest = [k for k in range(1, n + 1) if k not in (j, n)]
    if rest[-1] == n - 1:
        rest[-1], rest[-2] = rest[-2], rest[-1]
    fixed = rest[-1]
    c2 = (j, n) + tuple(rest[:-1])
    c1c2 = Permutation.from_cycles(n, [c2])
    tau = perm.inverse() * c1c2
    return PermutationCompletion(tau, fixed, c2)


def stabilize_in_lower_braid(beta: BraidWord) -> CompletionResult:
    """A factor ``alpha`` in ``B_{n-1}`` (times ``s_{i0}^{2l}``) making ``beta alpha`` certified."""
    n = beta.strands
    if n < 3:
        raise PreconditionError("needs at least 3 strands")
    if n == 3:
        return b3_stabilize(beta)[1]
    perm = underlying_permutation(beta)
    if perm(n) == n:
        alpha = lift_permutation(perm.inverse())
        cert = certify_all(braid_form(compose(beta, alpha)))
        return _result(beta, alpha, cert, [f"permutation {perm} fixes {n}; undo it with a pure product"])
    pc = permutation_completion(perm)
    lift = lift_permutation(pc.tau)
    i0 = pc.fixed_point
    steps = [f"tau = {pc.tau}: product permutation ({i0}){_cycle_str(pc.long_cycle)}"]
    form = braid_form(compose(beta, lift))
    report = orbit_report(form, _canonical(pc.long_cycle), i0)
    ell = _smallest_coprime_shift(n - 1, report.h_O)
    steps.append(f"h over the {n - 1}-cycle = {report.h_O}; append s{i0}^{2 * ell}")
    alpha = compose(lift, sigma(n, i0, 2 * ell))
    cert = certify_biorder(braid_form(compose(beta, alpha)), i0)
    return _result(beta, alpha, cert, steps)


def _canonical(cycle: tuple[int, ...]) -> tuple[int, ...]:
    k = cycle.index(min(cycle))
    return cycle[k:] + cycle[:k]


def _cycle_str(c) -> str:
    return "(" + " ".join(map(str, c)) + ")"


def two_more_components(beta: BraidWord) -> CompletionResult:
    """Add one strand (the new last strand is untouched) and complete with axis conjugates."""
    return complete_with_axis_conjugates(beta.embed(beta.strands + 1))
