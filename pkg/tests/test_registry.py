from fractions import Fraction

import pytest

from d4ext.bounds.registry import (
    REGISTRY, IneqId, _largest_true, entry, holds, iterate_a2_bound, max_a2_satisfying, refinable_ids,
    refine_k,
)
from d4ext.errors import DomainError

# (id, k, reported cutoff); reproduced within +-1
CUTOFFS = [
    (IneqId.THM51_CASE1, 1, 7401),
    (IneqId.THM51_CASE2, 1, 32499),
    (IneqId.PROP_4A1, 1, 15917),
    (IneqId.SEC6_LARGE_A1, 3, 533),
    (IneqId.SEC6_LARGE_A1, 1, 1140),
    (IneqId.A2_01_CASE1, 1, 552),
    (IneqId.A2_01_CASE2, 1, 162),
    (IneqId.A2_0251_CASE1, 1, 682),
    (IneqId.A2_0251_CASE2, 1, 64),
]


def test_registry_total():
    assert set(REGISTRY) == set(IneqId)
    assert set(refinable_ids()) == {IneqId.THM51_CASE1, IneqId.THM51_CASE2, IneqId.PROP_4A1}


@pytest.mark.parametrize("ident,k,cutoff", CUTOFFS, ids=[f"{c[0].value}-k{c[1]}" for c in CUTOFFS])
def test_boundary_faithful(ident, k, cutoff):
    got = max_a2_satisfying(ident, Fraction(k))
    assert abs(got - cutoff) <= 1
    ineq = entry(ident)
    assert holds(ineq, got, Fraction(k))
    assert not holds(ineq, got + 1, Fraction(k))


def test_thm51_case1_quoted_boundary():
    ineq = entry(IneqId.THM51_CASE1)
    assert holds(ineq, 7401) and not holds(ineq, 7402)


def test_iterations():
    s1 = iterate_a2_bound(IneqId.THM51_CASE1)
    assert s1[:2] == [7401, 2860] and s1[-1] <= 1976 and len(s1) - 1 <= 8
    s2 = iterate_a2_bound(IneqId.THM51_CASE2)
    assert abs(s2[0] - 32499) <= 1 and abs(s2[1] - 10741) <= 1 and s2[-1] <= 2050 and len(s2) - 1 <= 12
    s3 = iterate_a2_bound(IneqId.PROP_4A1)
    assert s3[:2] == [15917, 7478] and s3[-1] <= 5179 and len(s3) - 1 <= 10
    for seq in (s1, s2, s3):
        assert all(x > y for x, y in zip(seq, seq[1:]))


def test_fixpoint_is_stable():
    seq = iterate_a2_bound(IneqId.THM51_CASE1)
    assert max_a2_satisfying(IneqId.THM51_CASE1, refine_k(seq[-1])) == seq[-1]


def test_printed_variant_of_case2_differs():
    # the constants as printed give a much smaller first bound than the quoted one
    printed = iterate_a2_bound(IneqId.THM51_CASE2, "printed")
    assert printed[0] < 10000


def test_sec6_small_a1():
    assert max_a2_satisfying(IneqId.SEC6_SMALL_A1) == 1845278772
    assert max_a2_satisfying(IneqId.LEMMA31_CONTRADICTION) < 3


def test_refine_k():
    assert refine_k(7401) == Fraction(10**5, 7401)
    assert refine_k(10**6) == 1


def test_errors():
    with pytest.raises(DomainError):
        IneqId.parse("no-such")
    assert IneqId.parse("THM51_CASE1") is IneqId.THM51_CASE1
    with pytest.raises(DomainError):
        max_a2_satisfying(IneqId.THM51_CASE1, Fraction(1, 2))
    with pytest.raises(DomainError):
        max_a2_satisfying(IneqId.THM51_CASE1, 1, {"bogus": 1})
    with pytest.raises(DomainError):
        iterate_a2_bound(IneqId.SEC6_LARGE_A1)
    with pytest.raises(DomainError):
        entry(IneqId.THM51_CASE1, "other")


def test_largest_true_search():
    assert _largest_true(lambda x: x <= 1234567, 3, 10**9) == 1234567
    assert _largest_true(lambda x: False, 3, 100) == 2
    # a wobble just past the bisection point is found by the window scan
    assert _largest_true(lambda x: x <= 1000 or x == 1020, 3, 10**9) == 1020
    with pytest.raises(DomainError):
        _largest_true(lambda x: True, 3, 100)
