import json

import pytest
from hypothesis import given, strategies as st

from cpalg.errors import DomainError, WindowError
from cpalg.exotic import appendix_F_mod
from cpalg.natint import FnTable
from cpalg.padic import (AtLeast, Inconclusive, PAdicApprox, RecSetZp, add_digits,
                         check_cp_Zp, cp_extend, divides, finv_in_lattice, inverse,
                         padic_lattice, valuation_p)

P = PAdicApprox


def test_arithmetic():
    assert (P(2, 4, 3) + P(2, 4, 13)).value == 0
    x = P(5, 3, 17)
    assert x + P(5, 3, 0) == x
    assert (x - x).value == 0 and (-x).value == 125 - 17
    with pytest.raises(DomainError):
        P(2, 4, 1) + P(2, 5, 1)
    with pytest.raises(DomainError):
        P(4, 2, 1)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@pytest.mark.parametrize("n", range(1, 9))
def test_digit_tails_sum_to_zero(p, n):
    x = P.from_digits([1, 0, 0, 1, 1, 0], p, n)
    y = P.from_digits([p - 1, p - 1, p - 1, p - 2, p - 2], p, n, tail=p - 1)
    assert (x + y).value == 0 and add_digits(x, y).value == 0


def test_digits_least_significant_first():
    x = P(2, 6, 12)
    assert x.digits() == [0, 0, 1, 1, 0, 0] and x.render() == "001100"
    assert P.from_digits(x.digits(), 2, 6) == x


def test_valuation():
    assert valuation_p(P(2, 6, 12)) == 2
    assert valuation_p(P(2, 6, 0)) == AtLeast(6)
    assert valuation_p(P(3, 4, 1)) == 0


def test_inverse():
    assert inverse(P(2, 4, 3)).value == 11
    assert inverse(P(2, 4, 1)).value == 1
    with pytest.raises(DomainError, match="valuation 1"):
        inverse(P(2, 4, 2))


def test_divides():
    assert divides(P(2, 6, 4), P(2, 6, 12)) is True
    assert divides(P(2, 6, 8), P(2, 6, 12)) is False
    assert all(divides(P(2, 6, 3), P(2, 6, y)) is True for y in range(64))
    r = divides(P(2, 6, 0), P(2, 6, 5))
    assert isinstance(r, Inconclusive)
    with pytest.raises(TypeError):
        bool(r)


def test_check_cp_Zp():
    assert check_cp_Zp(lambda x: x * x, 2, 6)
    assert check_cp_Zp(lambda x: 5, 2, 6)
    perm = [(7 * x + 3) ** 3 % 64 for x in range(64)]
    assert check_cp_Zp(perm, 2, 6)  # polynomials are CP
    v = check_cp_Zp([0, 2, 1, 3, 4, 6, 5, 7], 2, 3)
    assert not v and v.witness == (2, 0)


def test_cp_extend():
    sq = FnTable.from_function(lambda x: x * x, 0, 40)
    assert cp_extend(sq, P(2, 5, 31)).value == 1
    ident = FnTable.from_function(lambda x: x, 0, 100)
    assert all(cp_extend(ident, P(3, 4, v)).value == v for v in range(81))
    with pytest.raises(WindowError) as info:
        cp_extend(sq, P(2, 6, -1))
    assert info.value.required == (0, 63)


def test_cp_extend_appendix_at_minus_one():
    table = appendix_F_mod(1023, 1 << 10)
    assert [cp_extend(table, P(2, n, -1)).value for n in range(1, 11)] == [0] * 10
    with pytest.raises(DomainError):
        cp_extend(table, P(3, 2, -1))


def test_recset_ops():
    L = RecSetZp(2, 3, [6])
    assert 14 in L and P(2, 5, 14) in L and 7 not in L
    assert L.translate_preimage(2).residues() == [4]
    inv3 = inverse(P(2, 3, 3)).value
    assert L.homothety_preimage(3).residues() == [6 * inv3 % 8]
    assert L.homothety_preimage(2).residues() == [3, 7]
    assert L.union(L.complement()).residues() == list(range(8))
    assert L.inter(L.complement()).residues() == []
    with pytest.raises(DomainError):
        P(2, 2, 1) in L
    with pytest.raises(DomainError):
        L.union(RecSetZp(3, 2, [0]))


def test_lattice_and_monomial_closure():
    assert len(padic_lattice(RecSetZp(2, 3, [6]))) == 2 ** 8
    for F in ([6], [1, 3], [0], [2, 5, 7]):
        for c in (1, 2, 3):
            for d in (1, 2, 3):
                assert finv_in_lattice(RecSetZp(2, 3, F), lambda x: c * x ** d)


def test_json():
    x = P(3, 4, 50)
    d = x.to_json()
    assert d["schema"] == 1 and d["digits"] == "2121"
    assert P.from_json(json.dumps(d)) == x


towers = st.tuples(st.sampled_from([2, 3, 5]), st.integers(1, 6)).flatmap(
    lambda pn: st.tuples(st.just(pn[0]), st.just(pn[1]),
                         st.integers(0, pn[0] ** pn[1] - 1), st.integers(0, pn[0] ** pn[1] - 1),
                         st.integers(1, pn[1])))


@given(towers)
def test_projection_commutes(t):
    p, n, a, b, m = t
    x, y = P(p, n, a), P(p, n, b)
    assert (x + y).reduce(m) == x.reduce(m) + y.reduce(m)
    assert (x * y).reduce(m) == x.reduce(m) * y.reduce(m)
    assert add_digits(x, y) == x + y


@given(towers)
def test_cp_extend_consistent_across_precisions(t):
    p, n, a, _, m = t
    f = FnTable.from_function(lambda x: 3 * x ** 3 + x, 0, p ** n)
    assert cp_extend(f, P(p, n, a)).reduce(m) == cp_extend(f, P(p, m, a))


@given(towers, st.integers(1, 10 ** 4))
def test_divides_is_compatible_with_mul(t, c):
    p, n, a, b, _ = t
    x, y, z = P(p, n, a), P(p, n, b), P(p, n, c)
    if a and b and divides(x, y) is True and (x * z).value:
        assert divides(x * z, y * z) is True
    assert a == 0 or divides(x, x) is True
