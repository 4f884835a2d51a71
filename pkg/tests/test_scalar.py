import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from defring import DvrScalar, NotDivisibleError, NotIntegralError
from defring.scalar import residue, unit_part, valuation


@pytest.mark.parametrize(
    "l, x, v",
    [(3, "3", 1), (3, "-3/2", 1), (5, "50", 2), (3, "7/2", 0)],
)
def test_valuation(l, x, v):
    assert valuation(DvrScalar(x, l)) == v


def test_valuation_of_zero_is_infinite():
    assert valuation(DvrScalar(0, 3)) == math.inf


@pytest.mark.parametrize("l, x, u", [(3, "12", "4"), (3, "-3/2", "-1/2"), (5, "7", "7")])
def test_unit_part(l, x, u):
    assert unit_part(DvrScalar(x, l)) == DvrScalar(u, l)


@pytest.mark.parametrize("l, x, r", [(3, "-3/2", 0), (3, "1/2", 2), (5, "4", 4)])
def test_residue(l, x, r):
    assert residue(DvrScalar(x, l)) == r


def test_rejects_non_integral():
    with pytest.raises(NotIntegralError):
        DvrScalar("1/3", 3)


def test_division_by_non_unit():
    a, b = DvrScalar(1, 3), DvrScalar(3, 3)
    assert b.divides(DvrScalar(6, 3))
    assert not b.divides(a)
    with pytest.raises(NotDivisibleError):
        a / b


def test_zero_is_canonical():
    z = DvrScalar("0/5", 3)
    assert (z.numerator, z.denominator) == (0, 1)


fractions = st.tuples(st.integers(-500, 500), st.integers(1, 500).filter(lambda d: d % 3))


@given(fractions, fractions)
def test_ring_axioms_and_normal_form(a, b):
    x, y = DvrScalar(f"{a[0]}/{a[1]}", 3), DvrScalar(f"{b[0]}/{b[1]}", 3)
    s = x * y
    assert s.denominator % 3 and math.gcd(s.numerator, s.denominator) == 1
    assert x * (y + x) == x * y + x * x
    if x and y:
        assert valuation(s) == valuation(x) + valuation(y)
    if x:
        assert x == unit_part(x) * DvrScalar(3 ** valuation(x), 3)
        assert valuation(unit_part(x)) == 0
