import pytest
from hypothesis import given, settings, strategies as st

from cpalg.errors import DomainError
from cpalg.exactint import lcm_upto
from cpalg.exotic import (appendix_F, appendix_F_mod, appendix_F_values, cp_window_lift,
                          divisibility_witness, extend_divisible, floor_e_factorial,
                          lift_constraint, zigzag_f)
from cpalg.natint import FnTable, check_cp_additive, check_spp_additive


@pytest.mark.parametrize("x, v", [(0, 1), (1, 2), (3, 16), (4, 65)])
def test_floor_e_factorial(x, v):
    assert floor_e_factorial(x) == v


def test_floor_e_factorial_is_cp():
    t = FnTable.from_function(floor_e_factorial, 0, 25)
    assert check_cp_additive(t)
    assert all(v >= x for x, v in t.items())


@pytest.mark.parametrize("x, v", [(0, 8), (1, 6), (2, 198)])
def test_zigzag_f(x, v):
    assert zigzag_f(x) == v


def test_zigzag_lift():
    w = cp_window_lift(FnTable.from_function(zigzag_f, 0, 12))
    assert w.certified
    g = w.table
    assert all(v > x for x, v in g.items())
    assert not check_spp_additive(g) and check_cp_additive(g)
    for x in range(1, 13):
        d = g(x) - g(x - 1)
        assert d > 0 if x % 2 == 0 else d < 0


def test_lift_of_identity():
    w = cp_window_lift(FnTable.from_function(lambda x: x, 0, 10))
    assert divisibility_witness(w.table.values) is None
    for x, v in w.table.items():
        assert v <= x <= v + (lcm_upto(x) if x else 1)


def test_lift_trivial_and_deterministic():
    assert cp_window_lift(FnTable("N", 0, 0, (0,))).table.values == (0,)
    t = FnTable.from_function(zigzag_f, 0, 10)
    assert cp_window_lift(t) == cp_window_lift(t)


def test_appendix_values():
    F = appendix_F(64)
    assert F.table.values[:8] == (0, 2, 2, 12, 8, 50, 42, 392)
    assert F(3) == 12 and F(4) == 8
    assert F.certified
    assert divisibility_witness(F.table.values) is None


def test_appendix_zero_at_mersenne_points():
    vals = appendix_F_values(300)
    n = 1
    while (1 << n) - 1 <= 300:
        assert vals[(1 << n) - 1] % (1 << n) == 0
        n += 1


def test_appendix_domain():
    with pytest.raises(DomainError):
        appendix_F(2)


def test_residue_route_matches_exact():
    exact = appendix_F_values(700)
    for m in (1 << 10, 3 ** 5, 1000):
        r = appendix_F_mod(700, m)
        assert list(r.values) == [v % m for v in exact]


def test_extend_divisible():
    f = extend_divisible([0, 0, 2], 8)
    assert f.values[:3] == (0, 0, 2) and divisibility_witness(f.values) is None
    with pytest.raises(DomainError):
        extend_divisible([0, 1, 3], 5)


@settings(max_examples=40)
@given(st.lists(st.integers(0, 10 ** 6), min_size=1, max_size=14))
def test_lift_is_largest_below_target(target):
    t = FnTable("N", 0, len(target) - 1, tuple(target))
    g = cp_window_lift(t).table.values
    assert divisibility_witness(g) is None
    for x in range(len(g)):
        c = lift_constraint(g, x)
        assert g[x] <= target[x] < g[x] + c.m
