from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st
from mpmath import mp, mpf

from d4ext.bounds import constants as K
from d4ext.bounds.analyses import (
    analysis_a2_001, analysis_a2_00251, analysis_b_vs_a2, d_bound_chain, m_max_bound, solve_m_bound,
    _m_holds,
)
from d4ext.bounds.lemmas import (
    BoundParams, Parity, approximation_gap, b_upper_lemma31, lambda_value, m_upper_epsilon, n_lower,
    n_upper, phi, phi_decreasing_condition, phi_decreasing_threshold, rickert_hypotheses,
)
from d4ext.errors import DomainError, HypothesisError
from d4ext.numerics import Ordering, guarded_compare

B = 10**5 + 1  # smallest b with b > 10^5


def near(g, value, rel=Fraction(1, 10**4)):
    """Interval g lies within rel of value."""
    lo, hi = g.fraction_bounds()
    v = Fraction(value)
    return abs(lo - v) <= rel * abs(v) and abs(hi - v) <= rel * abs(v)


def oracle(expr):
    with mp.workdps(200):
        return Fraction(mp.nstr(expr(), 60))


def test_constants_exact():
    assert K.NU_LOG1 == Fraction(84034, 1000) * 10**12
    assert K.NL_EVEN == Fraction(340134, 10**6)
    assert K.RICKERT_N_FACTOR == Fraction(39659, 100)
    assert all(isinstance(v, (Fraction, int)) for k, v in vars(K).items() if k.isupper() and not k.startswith("_"))


def test_params_validation():
    p = BoundParams(2, 9, B, 10**15)
    assert p.a1_prime == 28 and p.N == 18 * 10**15
    with pytest.raises(DomainError):
        BoundParams(2, 9, B, 10**15, a1_prime=27)
    with pytest.raises(DomainError):
        BoundParams(2, 9, B, 10**15, N=5)
    with pytest.raises(DomainError):
        BoundParams(9, 2, B, 10**15)
    with pytest.raises(DomainError):
        BoundParams(2, 9, B, 10**15, k=Fraction(1, 2))
    with pytest.raises(DomainError):
        BoundParams(2, 9, B, 10**15, epsilon=12)


def test_rickert_hypotheses():
    assert rickert_hypotheses(BoundParams(2, 9, B, 10**15))
    assert not rickert_hypotheses(BoundParams(1, 2, B, 10**15))
    assert not rickert_hypotheses(BoundParams(3, 4, B, 10**15))
    # magnitude condition: 396.59 * 28 * 81 * 49 ~ 4.4e7 > N = 18 c for c = 10^6
    assert not rickert_hypotheses(BoundParams(2, 9, B, 10**6))


def test_lambda():
    lam = lambda_value(BoundParams(2, 9, B, 10**15))
    want = oracle(lambda: 1 + mp.log(mpf("2.500788") / 2 * 28 * 9 * 18 * 10**15)
                  / mp.log(mpf("0.04216") / 2 / 9 / 49 * (18 * mpf(10) ** 15) ** 2))
    assert near(lam.value, want) and near(lam.value, Fraction("1.66526"), Fraction(1, 10**5))
    assert "4*a2/N" in lam.theta1_def and "4*a1/N" in lam.theta2_def
    big = lambda_value(BoundParams(2, 9, B, 10**100)).value
    assert Fraction(3, 2) < big.fraction_bounds()[0] and big.fraction_bounds()[1] < Fraction(155, 100)
    with pytest.raises(HypothesisError):
        lambda_value(BoundParams(1, 2, B, 10**15))


@settings(max_examples=80)
@given(st.integers(1, 200), st.integers(2, 400), st.integers(0, 60))
def test_lambda_below_two(a1, gap, extra_digits):
    a2 = a1 + gap
    ap = max(4 * (a2 - a1), 4 * a1)
    need = K.RICKERT_N_FACTOR * ap * a2 * a2 * (a2 - a1) ** 2 / (a1 * a2)
    c = int(need) + 1 + 10**extra_digits
    p = BoundParams(a1, a2, B, c)
    assume(rickert_hypotheses(p))
    lam = lambda_value(p).value
    assert guarded_compare(lam, lam * 0 + 2) is Ordering.LESS
    assert lam.fraction_bounds()[0] > 1


def test_n_upper():
    p = BoundParams(2, 9, B, 10**15)
    v = n_upper(p)
    assert near(v, Fraction("18.9448"), Fraction(1, 10**5))
    assert phi(10**15, p).fraction_bounds() == v.fraction_bounds()
    later = n_upper(p.with_c(10**18))
    assert guarded_compare(later, v) is Ordering.LESS
    with pytest.raises(HypothesisError) as err:
        n_upper(BoundParams(2, 9, 10**5, 10**15))
    assert "10^5" in err.value.condition
    with pytest.raises(HypothesisError):
        n_upper(BoundParams(2, 9, B, 10**6))  # theorem hypotheses fail
    with pytest.raises(HypothesisError) as err:
        n_upper(BoundParams(2, 9, 10**7, 10**15))  # c below 4.1e-5 a2 b^3
    assert "4.1e-5" in err.value.condition


def test_phi_threshold():
    p = BoundParams(2, 9, B, 10**15)
    assert phi_decreasing_threshold(p) == Fraction(28 * 9 * 49, 2) / Fraction("0.01685")
    assert abs(float(phi_decreasing_threshold(p)) - 3.66e5) < 1e3
    assert phi_decreasing_condition(p)
    assert not phi_decreasing_condition(p.with_c(3 * 10**5))


@settings(max_examples=60)
@given(st.integers(1, 50), st.integers(2, 100), st.integers(6, 40), st.integers(1, 40))
def test_phi_nonincreasing(a1, gap, e1, de):
    a2 = a1 + gap
    c1 = 10**e1
    c2 = c1 * 10**de
    p = BoundParams(a1, a2, B, c1)
    assume(phi_decreasing_condition(p))
    try:
        lo, hi = phi(c1, p), phi(c2, p)
    except DomainError:
        assume(False)
    assert guarded_compare(hi, lo) is not Ordering.GREATER


def test_n_lower():
    c = 10**15
    odd = n_lower(B, c, Parity.ODD, 9)
    even = n_lower(B, c, Parity.EVEN, 9)
    assert near(odd, Fraction("1.64063"), Fraction(1, 10**5))
    # 0.340134 * 10^7.5 / 100001^0.5
    assert near(even, oracle(lambda: mpf("0.340134") * mp.sqrt(mpf(10) ** 15) / mp.sqrt(B)))
    with pytest.raises(HypothesisError):
        n_lower(B, B**3 // 2, Parity.ODD, 9)
    with pytest.raises(HypothesisError):
        n_lower(10**5, c, Parity.ODD, 9)
    with pytest.raises(HypothesisError):
        n_lower(B, 10**15 + 1, Parity.ODD, 10**6)


@settings(max_examples=80)
@given(st.integers(10**5 + 1, 10**9), st.integers(1, 10**4), st.integers(0, 10**30))
def test_n_lower_even_exceeds_odd(b, a2, extra):
    c = max(int(K.NL_C_CUBE * b**3), int(K.NL_C_SQUARE * a2 * a2 * b * b)) + 1 + extra
    assert guarded_compare(n_lower(b, c, Parity.EVEN, a2), n_lower(b, c, Parity.ODD, a2)) is Ordering.GREATER


def test_m_upper_epsilon():
    assert near(m_upper_epsilon(8, Fraction("2.94")), Fraction("11.6952"), Fraction(1, 10**5))
    assert abs(1.3415 * 8 + 0.97 - float(m_upper_epsilon(8, Fraction("2.94")))) < 0.01
    want = Fraction(2, Fraction("0.999")) * 10 + Fraction(3, 2) - Fraction(8, 10) / Fraction("0.999")
    assert m_upper_epsilon(10, 1).contains(want)
    assert m_upper_epsilon(0, 1).contains(Fraction(3, 2) - Fraction(8, 10) / Fraction("0.999"))
    with pytest.raises(DomainError):
        m_upper_epsilon(3, 12)


def test_b_upper_lemma31():
    assert near(b_upper_lemma31(1, 3), oracle(lambda: mpf("8.4034e13") * mp.sqrt(8) * 9))
    assert near(b_upper_lemma31(2, 9), oracle(lambda: mpf("8.4034e13") * mp.sqrt(2 * 28) * 81))
    assert abs(float(b_upper_lemma31(1, 3)) / 2.138e15 - 1) < 1e-3
    assert abs(float(b_upper_lemma31(2, 9)) / 5.09e16 - 1) < 1e-3
    vals = [b_upper_lemma31(3, a2) for a2 in range(4, 60)]
    assert all(guarded_compare(x, y) is Ordering.LESS for x, y in zip(vals, vals[1:]))


def test_approximation_gap():
    # {1, 5, 12} + 96 with a1 = 1, a2 = 5: z = 34, x1 = 10, x2 = 22
    small = approximation_gap(1, 5, 12, 34, 10, 22)
    assert small.bound == Fraction(24, 34**2)
    assert small.gap1.is_positive() and small.gap2.is_positive()
    # for c this small the estimate does not hold for the first gap
    assert not small.within_bound
    swapped = approximation_gap(5, 1, 12, 34, 22, 10)
    assert swapped.gap1.fraction_bounds() == small.gap2.fraction_bounds()
    big = approximation_gap(2, 6, 16, 62, 22, 38)
    assert big.within_bound
    with pytest.raises(DomainError):
        approximation_gap(1, 5, 12, 0, 10, 22)
    with pytest.raises(DomainError):
        approximation_gap(1, 5, 12, 34, 11, 22)


def test_analyses_small_a2():
    a = analysis_a2_001()
    assert (a.a1_min, a.a1_max, a.case2_b_max) == (401, 552, 162)
    assert abs(float(a.c_max.hi) / 2.2666e24 - 1) < 0.01
    b = analysis_a2_00251()
    assert (b.a1_min, b.a1_max, b.case2_b_max) == (160, 682, 64)
    assert abs(float(b.c_max.hi) / 3.06e24 - 1) < 0.01
    printed = analysis_a2_00251("printed")
    assert abs(float(printed.c_max.hi) / 1.126e24 - 1) < 0.01


def test_analysis_b_vs_a2():
    s = analysis_b_vs_a2()
    assert abs(s.large_a1_k3_a2_max - 533) <= 1
    assert abs(s.large_a1_k1_a2_max - 1140) <= 1
    assert s.b_ceiling == 3 * s.large_a1_k1_a2_max**2 == 3898800
    assert s.small_a1_a2_max == 42956


def test_m_bound():
    res = solve_m_bound()
    assert abs(res.m_max / 3.65e21 - 1) < 0.01
    assert res.c_log10_max <= 2157
    assert res.d_log10_log10 == 26
    assert _m_holds(res.m_max) and not _m_holds(res.m_max + 1)
    # predicate is monotone past its maximum: sampled points beyond all fail
    assert not any(_m_holds(res.m_max * f) for f in (2, 10, 10**3, 10**9))
    assert d_bound_chain(res.m_max, res.c_log10_max)[1] == 26
