import random

import pytest
from hypothesis import given, strategies as st

from conftest import random_triple
from d4ext.errors import DomainError
from d4ext.numerics import is_perfect_square
from d4ext.sequences import (
    CaseId, Kind, RecurrenceSpec, admissible_inits, build_sequence, find_intersections,
)
from d4ext.tuples import TripleContext, d_plus, verify_tuple


def test_build_sequence_examples():
    v = RecurrenceSpec.from_initial(Kind.V, 4, -2, 12, 2)
    w = RecurrenceSpec.from_initial(Kind.W, 8, -2, 12, 2)
    assert v.first == 8 and w.first == 4
    assert build_sequence(v, 4) == [-2, 8, 34, 128]
    assert build_sequence(w, 4) == [-2, 4, 34, 268]
    assert build_sequence(v, 1) == [-2]
    with pytest.raises(DomainError):
        build_sequence(v, 0)


def test_odd_half_sum_rejected():
    with pytest.raises(DomainError):
        RecurrenceSpec.from_initial(Kind.V, 3, 1, 2, 2)


def test_admissible_inits():
    cases = admissible_inits(1, 5, 12)
    even = [c for c in cases if c.case_id is CaseId.EVEN_EVEN]
    odd = [c for c in cases if c.case_id is CaseId.ODD_ODD]
    assert sorted((c.z0, c.z1) for c in even) == [(-2, -2), (2, 2)]
    assert all(c.x0 == c.y1 == 2 for c in even)
    assert sorted((c.z0, c.z1) for c in odd) == [(-8, -4), (8, 4)]
    assert all(c.z0 * c.z1 > 0 for c in cases)
    with pytest.raises(DomainError):
        admissible_inits(1, 2, 3)


def test_intersections_examples():
    got = find_intersections(1, 5, 12, 4, 4)
    assert (2, 2, 34, 96) in got
    assert verify_tuple([1, 5, 12, 96], 4)
    assert (2, 2, 62, 240) in find_intersections(2, 6, 16, 4, 4)
    # odd case z0 = t, z1 = s: v_1 = (4*8 + 12*3)/2 = 34 = (8*4 + 12*3)/2 = w_1
    assert find_intersections(1, 5, 12, 1, 1) == [(1, 1, 34, 96)]
    assert find_intersections(1, 5, 12, 0, 0) == []


triples = st.builds(lambda seed: random_triple(random.Random(seed)), st.integers(0, 10**9))


@given(triples)
def test_regularity_recovery(tr):
    rows = find_intersections(*tr, 2, 2)
    assert d_plus(tr) in {d for _m, _n, _z, d in rows}


@given(triples)
def test_intersections_are_extensions_with_parity(tr):
    for m, n, z, d in find_intersections(*tr, 5, 5):
        assert m % 2 == n % 2
        assert z * z == tr[2] * d + 4
        assert verify_tuple(list(tr) + [d], 4)


@given(triples)
def test_membership_and_growth(tr):
    a, b, c = tr
    ctx = TripleContext.of(a, b, c)
    for case in admissible_inits(a, b, c):
        try:
            vs = build_sequence(case.v_spec(ctx), 6)
            ws = build_sequence(case.w_spec(ctx), 6)
        except DomainError:
            continue
        for z in vs:
            num = a * z * z - 4 * (a - c)
            assert num % c == 0 and is_perfect_square(num // c) is not None
        for z in ws:
            num = b * z * z - 4 * (b - c)
            assert num % c == 0 and is_perfect_square(num // c) is not None
        for seq in (vs, ws):
            pos = [i for i, z in enumerate(seq) if z > 0]
            if pos:
                tail = seq[max(pos[0], 1):]
                assert all(x < y for x, y in zip(tail, tail[1:]))
