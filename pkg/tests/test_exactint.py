import math
from functools import reduce

import pytest
from hypothesis import given, strategies as st

from cpalg.errors import DomainError
from cpalg.exactint import (ResidueConstraint, crt_merge, crt_merge_all, euler_phi, gcd,
                            inv_mod, is_prime, lcm, lcm_upto, primes_upto, valuation)

RC = ResidueConstraint


@pytest.mark.parametrize("a, b, g", [(12, 18, 6), (0, 5, 5), (2 ** 40, 3 ** 20, 1)])
def test_gcd(a, b, g):
    assert gcd(a, b) == g


@pytest.mark.parametrize("x, v", [(1, 1), (6, 60), (10, 2520)])
def test_lcm_upto(x, v):
    assert lcm_upto(x) == v


def test_lcm_upto_matches_fold():
    for x in range(1, 60):
        assert lcm_upto(x) == reduce(math.lcm, range(1, x + 1))


def test_lcm_upto_rejects_zero():
    with pytest.raises(DomainError):
        lcm_upto(0)


def test_crt_examples():
    assert crt_merge(RC(2, 3), RC(3, 5)) == RC(8, 15)
    assert crt_merge(RC(1, 2), RC(0, 2)) is None
    assert crt_merge(RC(0, 1), RC(4, 7)) == RC(4, 7)


def test_crt_merge_non_coprime():
    assert crt_merge(RC(2, 4), RC(0, 6)) == RC(6, 12)
    assert crt_merge(RC(1, 4), RC(0, 6)) is None


@pytest.mark.parametrize("k, phi", [(1, 1), (12, 4), (7, 6), (36, 12)])
def test_euler_phi(k, phi):
    assert euler_phi(k) == phi


def test_euler_phi_counts_coprimes():
    for k in range(1, 80):
        assert euler_phi(k) == sum(1 for x in range(1, k + 1) if math.gcd(x, k) == 1)


@pytest.mark.parametrize("x, p, v", [(8, 2, 3), (12, 2, 2), (7, 3, 0), (-27, 3, 3)])
def test_valuation(x, p, v):
    assert valuation(x, p) == v


def test_valuation_domain():
    with pytest.raises(DomainError):
        valuation(0, 2)
    with pytest.raises(DomainError):
        valuation(8, 4)


def test_primes_and_inverse():
    assert primes_upto(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert [p for p in range(50) if is_prime(p)] == primes_upto(49)
    assert inv_mod(3, 16) == 11
    assert lcm(4, 6) == 12


constraints = st.builds(lambda r, m: RC(r, m), st.integers(-50, 50), st.integers(1, 40))


@given(constraints, constraints)
def test_crt_commutative_and_sound(c1, c2):
    m = crt_merge(c1, c2)
    assert m == crt_merge(c2, c1)
    sols = [x for x in range(math.lcm(c1.m, c2.m)) if c1.holds(x) and c2.holds(x)]
    if m is None:
        assert sols == []
    else:
        assert m.m == math.lcm(c1.m, c2.m) and sols == [m.r]


@given(constraints, constraints, constraints)
def test_crt_associative(a, b, c):
    ab = crt_merge(a, b)
    bc = crt_merge(b, c)
    left = None if ab is None else crt_merge(ab, c)
    right = None if bc is None else crt_merge(a, bc)
    assert left == right == crt_merge_all([a, b, c])


@given(constraints)
def test_crt_idempotent(c):
    assert crt_merge(c, c) == c


@given(st.integers(2, 400))
def test_lcm_upto_recursion(x):
    assert lcm_upto(x) == math.lcm(lcm_upto(x - 1), x)


@given(st.integers(1, 10 ** 6), st.integers(1, 10 ** 6), st.sampled_from([2, 3, 5, 7]))
def test_valuation_additive(x, y, p):
    assert valuation(x * y, p) == valuation(x, p) + valuation(y, p)
