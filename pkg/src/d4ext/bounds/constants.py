"""Decimal constants of the bound inequalities, held as exact rationals.

Keeping them as :class:`fractions.Fraction` parsed from their decimal
spelling means every guarded evaluation starts from the exact printed value.
"""
from fractions import Fraction as _F


def _q(text: str) -> _F:
    return _F(text)


# simultaneous-approximation theorem: hypothesis and exponent lambda
RICKERT_N_FACTOR = _q("396.59")
LAMBDA_NUM = _q("2.500788")
LAMBDA_DEN = _q("0.04216")

# upper bound for n: the four logarithm coefficients
NU_LOG1 = _q("8.4034e13")
NU_LOG2 = _q("0.20533")
NU_LOG4 = _q("0.01685")
NU_FACTOR = 8

# preconditions of the log z lower bound
GROWTH_C_FACTOR = _q("4.1e-5")
B_FLOOR = 10**5

# lower bound for n
NL_ODD = _q("0.09226")
NL_EVEN = _q("0.340134")
NL_C_CUBE = _q("0.56")
NL_C_SQUARE = _q("0.001")

# m in terms of n
EPS_SCALE = _q("0.999")
EPS_SHIFT = _q("1.5")
EPS_SLOPE = _q("0.4")

# c window used by the searches
C_LOWER = _q("0.25")
C_CEILING_B4 = 39247

# k-refinement: b > 10^5 >= (10^5 / a2) a2
K_REFINE_NUMERATOR = 10**5

# large-m argument
M_LOG_COEFF = _q("38.92")
M_RHS = _q("2.7717e16")
V_LEAD = _q("1.00317")
V_C_POWER = _q("0.64")
V_M_POWER = _q("0.7")

# n > 0.2465 c^(1/12) in the b >= a1^2 case
N_C_TWELFTH = _q("0.2465")
