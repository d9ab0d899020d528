import random

import pytest
from hypothesis import given, strategies as st

from conftest import random_triple
from d4ext.errors import DomainError
from d4ext.numerics import is_perfect_square
from d4ext.tuples import (
    QuadrupleKind, TripleContext, as_dtuple, classify_quadruple, d_minus, d_plus,
    quadruple_witness, verify_tuple,
)


def square_check(elements, n):
    """Independent oracle: every pairwise product plus n is a square."""
    es = list(elements)
    return all(is_perfect_square(es[i] * es[j] + n) is not None
               for i in range(len(es)) for j in range(i + 1, len(es)))


def test_verify_examples():
    res = verify_tuple([1, 5, 12, 96], 4)
    assert res and res.witnesses == {(1, 5): 3, (1, 12): 4, (1, 96): 10, (5, 12): 8, (5, 96): 22, (12, 96): 34}
    bad = verify_tuple([1, 2, 3], 4)
    assert not bad and bad.failing_pair == (1, 2)
    assert verify_tuple([1, 3, 8, 120], 1)


@pytest.mark.parametrize("cand", [[1, 1, 5], [0, 5, 12], [-1, 5, 12]])
def test_verify_invalid(cand):
    with pytest.raises(DomainError):
        verify_tuple(cand, 4)


def test_as_dtuple():
    t = as_dtuple([96, 1, 12, 5], 4)
    assert t.elements == (1, 5, 12, 96) and t.n == 4
    with pytest.raises(DomainError):
        as_dtuple([1, 2, 3], 4)


def test_triple_context_sorts_and_rejects():
    ctx = TripleContext.of(12, 1, 5)
    assert (ctx.a, ctx.b, ctx.c, ctx.r, ctx.s, ctx.t) == (1, 5, 12, 3, 4, 8)
    with pytest.raises(DomainError):
        TripleContext.of(1, 2, 3)


def test_d_plus_minus_examples():
    assert d_plus((1, 5, 12)) == 96
    assert d_plus((2, 6, 16)) == 240
    assert d_minus((1, 5, 12)) == 0
    assert d_minus((2, 6, 16)) == 0
    assert d_minus((1, 5, 96)) == 12
    d = d_plus((1, 5, 96))
    assert d == 672 and verify_tuple([1, 5, 96, d], 4)


def test_quadruple_witness():
    w = quadruple_witness((1, 5, 12), 96)
    assert (w.x, w.y, w.z) == (10, 22, 34)
    with pytest.raises(DomainError):
        quadruple_witness((1, 5, 12), 97)


def test_classify():
    assert classify_quadruple(1, 5, 12, 96) is QuadrupleKind.REGULAR
    assert classify_quadruple(2, 6, 16, 240) is QuadrupleKind.REGULAR
    assert classify_quadruple(1, 5, 96, d_plus((1, 5, 96))) is QuadrupleKind.REGULAR
    with pytest.raises(DomainError):
        classify_quadruple(1, 5, 12, 97)


def test_small_quadruples_are_regular():
    # exhaustive over a small box: every D(4)-quadruple found is regular
    seen = 0
    for a in range(1, 8):
        for b in range(a + 1, 60):
            if not is_perfect_square(a * b + 4):
                continue
            for c in range(b + 1, 400):
                if not square_check([a, b, c], 4):
                    continue
                for d in range(c + 1, 3000):
                    if square_check([a, b, c, d], 4):
                        seen += 1
                        assert d == d_plus((a, b, c))
                        assert classify_quadruple(a, b, c, d) is QuadrupleKind.REGULAR
    assert seen >= 5


triples = st.builds(lambda seed: random_triple(random.Random(seed)), st.integers(0, 10**9))


@given(triples)
def test_integrality(tr):
    a, b, c = tr
    ctx = TripleContext.of(a, b, c)
    assert is_perfect_square((a * b + 4) * (a * c + 4) * (b * c + 4)) == ctx.r * ctx.s * ctx.t
    assert (a * b * c + ctx.r * ctx.s * ctx.t) % 2 == 0
    assert (a * b * c - ctx.r * ctx.s * ctx.t) % 2 == 0


@given(triples)
def test_extension_closure(tr):
    d = d_plus(tr)
    assert verify_tuple(list(tr) + [d], 4)
    assert square_check(list(tr) + [d], 4)


@given(triples)
def test_round_trip(tr):
    a, b, c = tr
    dm = d_minus(tr)
    if dm > 0:
        assert square_check([a, b, c, dm], 4)
        assert d_plus(tuple(sorted((a, b, dm)))) == c


@given(triples)
def test_ordering(tr):
    assert d_plus(tr) > tr[2] > d_minus(tr) >= 0
