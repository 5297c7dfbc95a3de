import itertools

import pytest
from hypothesis import given, strategies as st

from cpalg.errors import DomainError
from cpalg.exactint import euler_phi
from cpalg.finalg import FiniteAlgebra, Operation, cyclic_group
from cpalg.fryingpan import (FryingPan, as_algebra, classify_monogenic, generators,
                             generators_bruteforce, morphism_count_bruteforce, op_ak, phi_ak,
                             semiring_check, surjective_morphism_count, to_dot)


@pytest.mark.parametrize("a, k, x, v", [(2, 3, 1, 1), (2, 3, 9, 3), (0, 5, 12, 2)])
def test_phi(a, k, x, v):
    assert phi_ak(FryingPan(a, k), x) == v


def test_ops():
    assert op_ak(FryingPan(2, 8), "add", 7, 9) == 8
    assert op_ak(FryingPan(0, 6), "mul", 4, 5) == 2
    assert op_ak(FryingPan(3, 1), "suc", 3) == 3


def test_op_validation():
    fp = FryingPan(2, 3)
    with pytest.raises(DomainError):
        op_ak(fp, "add", 5, 0)
    with pytest.raises(DomainError):
        op_ak(fp, "suc", 1, 1)
    with pytest.raises(DomainError):
        FryingPan(0, 0)
    with pytest.raises(DomainError):
        phi_ak(fp, -1)


@pytest.mark.parametrize("a, k, gens", [(2, 8, {1}), (0, 4, {1, 3}), (1, 6, {1, 5})])
def test_generators(a, k, gens):
    assert generators(FryingPan(a, k)) == gens


def test_trivial_monoid_generated_by_zero():
    # the empty sum generates the one-element monoid
    assert generators(FryingPan(0, 1)) == {0} == generators_bruteforce(FryingPan(0, 1))


@pytest.mark.parametrize("a, k, n", [(2, 8, 1), (0, 2, 1), (1, 5, 4)])
def test_surjective_morphism_count(a, k, n):
    assert surjective_morphism_count(FryingPan(a, k)) == n


def test_morphism_counts_match_bruteforce():
    for a in range(7):
        for k in range(1, 8 - a):
            fp = FryingPan(a, k)
            assert surjective_morphism_count(fp) == morphism_count_bruteforce(fp)
            assert surjective_morphism_count(fp) == len(generators(fp))


def test_classify():
    a, k, iso = classify_monogenic(cyclic_group(5), 2)
    assert (a, k) == (0, 5) and iso == tuple(2 * x % 5 for x in range(5))
    fp = FryingPan(2, 3)
    assert classify_monogenic(as_algebra(fp), 1) == (2, 3, (0, 1, 2, 3, 4))
    semilattice = FiniteAlgebra(2, (Operation(2, (0, 1, 1, 1)),))
    assert classify_monogenic(semilattice, 1)[:2] == (1, 1)
    assert classify_monogenic(cyclic_group(4), 2) is None


def test_classify_rejects_non_monoid():
    left_zero = FiniteAlgebra(2, (Operation(2, (0, 0, 1, 1)),))
    with pytest.raises(DomainError):
        classify_monogenic(left_zero, 0)


@pytest.mark.parametrize("a, k", [(0, 1), (2, 3), (5, 4)])
def test_semiring(a, k):
    assert semiring_check(FryingPan(a, k)) is None


def test_dot_has_tail_and_cycle():
    dot = to_dot(FryingPan(2, 8))
    assert dot.startswith("digraph") and "n9 -> n2;" in dot and "n1 -> n2;" in dot
    assert dot.count("fillcolor") == 8


pans = st.tuples(st.integers(0, 8), st.integers(1, 8)).map(lambda t: FryingPan(*t))


@given(pans, st.integers(0, 200), st.integers(0, 200))
def test_morphism_law(fp, x, y):
    assert fp.phi(x + y) == fp.add(fp.phi(x), fp.phi(y))
    assert fp.phi(x * y) == fp.mul(fp.phi(x), fp.phi(y))
    assert fp.phi(x + 1) == fp.suc(fp.phi(x))


@given(pans)
def test_canonical_representatives(fp):
    assert [fp.phi(x) for x in range(fp.size)] == list(range(fp.size))


@given(pans)
def test_add_is_commutative_monoid(fp):
    n = fp.size
    for x, y, z in itertools.product(range(n), repeat=3):
        assert fp.add(fp.add(x, y), z) == fp.add(x, fp.add(y, z))
    assert all(fp.add(0, x) == x and fp.add(x, 1) == fp.add(1, x) for x in range(n))


def test_generator_count_small_tails():
    for k in range(1, 12):
        for a in (0, 1):
            assert len(generators(FryingPan(a, k))) == euler_phi(k)
