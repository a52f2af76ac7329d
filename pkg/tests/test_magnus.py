import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidorder.braid import artin_action
from braidorder.errors import DepthExceedsCap
from braidorder.magnus import (
    GroupRingElement,
    NcPolynomial,
    fox_derivative,
    fox_eval0,
    lcs_depth,
    leading_tensor,
    magnus_expansion,
    substitute_linear,
)
from braidorder.words import FreeGroup, Word, apply_images, parse_word

from conftest import random_word, words
from oracles import commutator, left_nested, naive_magnus


def w(text):
    return parse_word(text)


def test_fox_examples():
    assert fox_derivative(w("x1 x2"), 1) == GroupRingElement.one()
    assert fox_derivative(w("x1^-1"), 1) == GroupRingElement.of({w("x1^-1"): -1})
    assert fox_derivative(w("x1 x2 x1^-1"), 1) == GroupRingElement.of({Word(): 1, w("x1 x2 x1^-1"): -1})
    assert fox_derivative(w("x1 x2"), 2) == GroupRingElement.of({w("x1"): 1})
    assert fox_derivative(w("x2^3"), 2) == GroupRingElement.of({Word(): 1, w("x2"): 1, w("x2^2"): 1})
    assert fox_derivative(Word(), 1) == GroupRingElement.of({})


def test_fox_eval0_examples():
    assert fox_eval0(w("x1 x2 x1^-1"), 1) == 0
    assert fox_eval0(w("x1^3 x2^-1"), 1) == 3
    assert fox_eval0(w("x1^3 x2^-1"), 2) == -1


def test_fox_product_rule_random():
    rng = random.Random(1)
    for _ in range(500):
        u, v = random_word(rng, 3, 10), random_word(rng, 3, 10)
        for j in (1, 2, 3):
            lhs = fox_derivative(u * v, j)
            rhs = fox_derivative(u, j) + fox_derivative(v, j).left_mul(u)
            assert lhs == rhs


@given(words(4, max_len=20))
def test_fox_eval0_is_exponent_sum(u):
    for j in range(1, 5):
        assert fox_eval0(u, j) == FreeGroup(4).exponent_sum(u, j)


@given(words(3, max_len=8))
def test_fundamental_formula(u):
    # u - 1 = sum_j D_j(u) (x_j - 1)
    total = GroupRingElement.of({})
    for j in (1, 2, 3):
        total = total + fox_derivative(u, j) * (GroupRingElement.of({Word.gen(j): 1}) - GroupRingElement.one())
    assert total == GroupRingElement.of({u: 1}) - GroupRingElement.one()


def test_group_ring_axioms_spot():
    a = GroupRingElement.of({w("x1"): 2, Word(): -1})
    b = GroupRingElement.of({w("x2^-1"): 1})
    c = GroupRingElement.of({w("x1 x2"): 3})
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).terms == {}
    assert (a * b).augmentation() == a.augmentation() * b.augmentation()


def test_magnus_examples():
    assert magnus_expansion(w("x1"), 2) == NcPolynomial(2, {(): 1, (1,): 1})
    assert magnus_expansion(w("x1^-1"), 2) == NcPolynomial(2, {(): 1, (1,): -1, (1, 1): 1})
    assert magnus_expansion(commutator(w("x1"), w("x2")), 2) == NcPolynomial(2, {(): 1, (1, 2): 1, (2, 1): -1})
    assert magnus_expansion(Word(), 5) == NcPolynomial.one(5)


def test_magnus_dump_lines():
    lines = magnus_expansion(commutator(w("x1"), w("x2")), 2).lines()
    assert lines == ["1 * 1", "1 * X1.X2", "-1 * X2.X1"]


@given(words(3, max_len=10), st.integers(1, 6))
def test_magnus_agrees_with_naive_oracle(u, cap):
    assert magnus_expansion(u, cap).terms == naive_magnus(u, cap)


@settings(max_examples=200)
@given(words(3, max_len=8), words(3, max_len=8), st.integers(1, 6))
def test_magnus_multiplicative(u, v, cap):
    assert magnus_expansion(u * v, cap) == magnus_expansion(u, cap) * magnus_expansion(v, cap)
    assert magnus_expansion(u, cap).constant() == 1


def test_depth_examples():
    assert lcs_depth(w("x1")) == 1
    assert lcs_depth(commutator(w("x1"), w("x2"))) == 2
    assert lcs_depth(commutator(commutator(w("x1"), w("x2")), w("x1"))) == 3
    with pytest.raises(ValueError):
        lcs_depth(Word())


@pytest.mark.parametrize("weight", [2, 3, 4, 5])
def test_nested_commutator_depth(weight):
    u = left_nested(list(range(1, weight + 1)))
    full = naive_magnus(u, cap=weight)
    # nothing below degree `weight`, and the leftmost-nested monomial has coefficient +1
    assert all(len(m) in (0, weight) for m in full)
    assert full[tuple(range(1, weight + 1))] == 1
    assert lcs_depth(u) == weight
    tensor = leading_tensor(u)
    assert tensor.coords == {m: c for m, c in full.items() if len(m) == weight}


def test_depth_exceeds_cap():
    u = left_nested([1, 2, 1, 2, 1])
    with pytest.raises(DepthExceedsCap) as err:
        lcs_depth(u, cap=3)
    assert err.value.cap == 3
    assert lcs_depth(u, cap=8) == 5


def test_leading_tensor_examples():
    assert leading_tensor(w("x1 x2")).coords == {(1,): 1, (2,): 1}
    t = leading_tensor(commutator(w("x1"), w("x2")))
    assert (t.degree, t.coords) == (2, {(1, 2): 1, (2, 1): -1})
    # tensors of equal depth add when the sum does not cancel
    a, b = commutator(w("x1"), w("x2")), commutator(w("x1"), w("x3"))
    assert leading_tensor(a * b).coords == {(1, 2): 1, (2, 1): -1, (1, 3): 1, (3, 1): -1}


def _depth_le_3_word(rng):
    kind = rng.randrange(3)
    x = lambda: random_word(rng, 3, 4) or Word.gen(rng.randint(1, 3))
    if kind == 0:
        u = x()
    elif kind == 1:
        u = commutator(x(), x())
    else:
        u = commutator(commutator(x(), x()), x())
    return u if not u.is_identity() else Word.gen(1)


def test_leading_tensor_equivariance_under_magic(magic):
    images = artin_action(magic)
    ab = {g: {h: c for h, c in enumerate(FreeGroup(3).abelianize(img), start=1) if c} for g, img in images.items()}
    rng = random.Random(9)
    tested = 0
    while tested < 200:
        u = _depth_le_3_word(rng)
        try:
            t = leading_tensor(u, cap=3)
        except DepthExceedsCap:
            continue
        image = leading_tensor(apply_images(images, u))
        assert image == substitute_linear(t, ab)
        tested += 1
