"""Randomised checks that the ordering of an ``OrderContext`` behaves as claimed."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import DepthExceedsCap
from .order import OrderContext, Relation, compare_in_F
from .words import Word, apply_images

PROPERTIES = (
    "totality",
    "antisymmetry",
    "transitivity",
    "left_invariance",
    "right_invariance",
    "phi_invariance",
)


def random_word(rng: random.Random, rank: int, maxlen: int) -> Word:
    length = rng.randint(0, maxlen)
    return Word.from_runs((rng.randint(1, rank), rng.choice((1, -1))) for _ in range(length))


def random_kernel_word(rng: random.Random, rank: int, i0: int, maxlen: int) -> Word:
    w = random_word(rng, rank, maxlen)
    return w * Word.gen(i0, -w.exponent_sum(i0))


def commutator(u: Word, v: Word) -> Word:
    return Word.product((u, v, u.inverse(), v.inverse()))


@dataclass
class VerifyReport:
    samples: int
    seed: int
    maxlen: int
    cap: int
    retry_cap: int
    comparisons: int = 0
    abstentions: int = 0
    resolved_on_retry: int = 0
    unresolved: int = 0
    checks: dict = field(default_factory=lambda: {p: 0 for p in PROPERTIES})
    violations: dict = field(default_factory=lambda: {p: 0 for p in PROPERTIES})

    @property
    def total_violations(self) -> int:
        return sum(self.violations.values())

    @property
    def abstention_rate(self) -> float:
        return self.abstentions / self.comparisons if self.comparisons else 0.0

    def to_json(self) -> dict:
        return {
            "samples": self.samples,
            "seed": self.seed,
            "maxlen": self.maxlen,
            "cap": self.cap,
            "retry_cap": self.retry_cap,
            "comparisons": self.comparisons,
            "abstentions": self.abstentions,
            "resolved_on_retry": self.resolved_on_retry,
            "unresolved": self.unresolved,
            "checks": dict(self.checks),
            "violations": dict(self.violations),
        }


class _Comparer:
    def __init__(self, ctx: OrderContext, retry_cap: int, report: VerifyReport):
        self.ctx = ctx
        self.retry = ctx.with_cap(retry_cap) if retry_cap > ctx.cap else None
        self.report = report

    def __call__(self, a: Word, b: Word) -> Relation | None:
        self.report.comparisons += 1
        try:
            return compare_in_F(a, b, self.ctx)
        except DepthExceedsCap:
            self.report.abstentions += 1
        if self.retry is not None:
            try:
                rel = compare_in_F(a, b, self.retry)
                self.report.resolved_on_retry += 1
                return rel
            except DepthExceedsCap:
                pass
        self.report.unresolved += 1
        return None


def run_verification(
    ctx: OrderContext,
    samples: int = 500,
    seed: int = 42,
    maxlen: int = 12,
    retry_cap: int = 12,
) -> VerifyReport:
    """Sample triples ``a, b, c`` and check the ordering axioms and invariance under ``phi``.

    Every other sample draws ``b = a z`` with ``z`` a commutator in the kernel
    of ``h``, so that comparisons are also decided past the first quotient.
    Samples run in index order; the report depends only on the arguments.
    """
    rng = random.Random(seed)
    report = VerifyReport(samples, seed, maxlen, ctx.cap, retry_cap)
    cmp = _Comparer(ctx, retry_cap, report)
    images = ctx.form.images()
    n, i0 = ctx.rank, ctx.i0

    def check(prop: str, ok: bool) -> None:
        report.checks[prop] += 1
        if not ok:
            report.violations[prop] += 1

    for s in range(samples):
        a = random_word(rng, n, maxlen)
        if s % 2:
            half = max(1, maxlen // 4)
            z = commutator(random_kernel_word(rng, n, i0, half), random_kernel_word(rng, n, i0, half))
            b = a * z
        else:
            b = random_word(rng, n, maxlen)
        c = random_word(rng, n, maxlen)

        ab, ba = cmp(a, b), cmp(b, a)
        if ab is not None:
            check("totality", (ab is Relation.EQUAL) == (a == b))
        if ab is not None and ba is not None:
            check("antisymmetry", ba == -ab)

        bc, ac = cmp(b, c), cmp(a, c)
        if None not in (ab, bc, ac):
            ok = True
            if ab <= 0 and bc <= 0:
                ok = ac <= 0 and (ac == 0) == (ab == 0 and bc == 0)
            elif ab >= 0 and bc >= 0:
                ok = ac >= 0 and (ac == 0) == (ab == 0 and bc == 0)
            check("transitivity", ok)

        if ab is None:
            continue
        left = cmp(c * a, c * b)
        if left is not None:
            check("left_invariance", left == ab)
        right = cmp(a * c, b * c)
        if right is not None:
            check("right_invariance", right == ab)
        phi = cmp(apply_images(images, a), apply_images(images, b))
        if phi is not None:
            check("phi_invariance", phi == ab)
    return report
