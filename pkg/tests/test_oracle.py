import pytest

import numpy as np

from purindex.arith import prime_divisors
from purindex.poly import IntPoly
from purindex.ore import ore_index, dedekind_test, splitting_shape
from purindex.newton import principal_polygon, is_p_regular
from purindex.second_order import (
    OutOfScopeError, order2_data, order2_census, ind2
)
from purindex.pure import (
    PureField, is_irreducible_pure, index_val_p_divides_m,
    integral_closedness_test, pure_field_primes, NotApplicableError
)
from purindex.oracle import (
    OrderBasis, ScaleLimitError, NotMaximalError, hnf, rank_mod_p,
    left_kernel_mod_p, p_maximal_order, residue_census, disc_valuation
)

from test_utils import pure_field_factory


def test_hnf():
    assert hnf([[2, 1], [0, 3], [4, 5]], 2) == [[2, 1], [0, 3]]
    assert hnf([[0, 5], [3, 7]], 2) == [[3, 2], [0, 5]]
    with pytest.raises(ValueError):
        hnf([[1, 1], [2, 2]], 2)


def test_linear_algebra_mod_p():
    A = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert rank_mod_p(A, 7) == 2
    kernel = left_kernel_mod_p(A, 7)
    assert len(kernel) == 1
    for v in kernel:
        assert not np.any(v @ A % 7)


@pytest.mark.parametrize("n,m,p,index",
                         [(10, 1000, 5, 9), (2, 17, 2, 1), (2, 5, 2, 1),
                          (10, 10, 5, 0), (2, -1, 2, 0), (4, 17, 2, 3),
                          (3, 2, 3, 0), (3, 10, 3, 1), (3, 28, 3, 1)])
def test_p_maximal_order(n, m, p, index):
    order, val = p_maximal_order(IntPoly.pure(n, m), p)
    assert val == index
    assert order.index_val(p) == index
    assert order.maximal_at == p


def test_strict_instances():
    for n, m, p in [(4, 12, 2), (6, 180, 2), (9, 54, 3)]:
        _, val = p_maximal_order(IntPoly.pure(n, m), p)
        assert val > ore_index(IntPoly.pure(n, m), p).lower_bound


@pytest.mark.parametrize("n,m,p,census",
                         [(2, 17, 2, {1: 2}), (2, 5, 2, {2: 1}),
                          (10, 1000, 5, {1: 1}), (3, 2, 5, {1: 1, 2: 1}),
                          (3, 10, 7, {3: 1})])
def test_residue_census(n, m, p, census):
    order, _ = p_maximal_order(IntPoly.pure(n, m), p)
    assert residue_census(order, p).as_dict() == census


def test_residue_census_requires_maximal_order():
    f = IntPoly.pure(2, 17)
    order = OrderBasis(f, ((1, 0), (0, 1)), 1)
    with pytest.raises(NotMaximalError):
        residue_census(order, 2)


def test_scale_limits():
    with pytest.raises(ScaleLimitError):
        p_maximal_order(IntPoly.pure(61, 2), 2)
    with pytest.raises(ScaleLimitError):
        p_maximal_order(IntPoly.pure(2, 3), 53)
    order, _ = p_maximal_order(IntPoly.pure(2, 3), 53, max_prime=60)
    assert order.index_val(53) == 0


@pytest.mark.parametrize("n,m,p,expected",
                         [(10, 1000, 5, 37), (2, 17, 2, 2), (3, 2, 3, 3)])
def test_disc_valuation(n, m, p, expected):
    assert disc_valuation(IntPoly.pure(n, m), p) == expected


def test_disc_valuation_general():
    assert disc_valuation(IntPoly.from_string("x^2 + x + 1"), 3) == 1


@pytest.mark.parametrize("f", ["x^2", "x^3 - x^2", "x^4 - 2*x^2 + 1"])
def test_p_maximal_order_rejects_repeated_factors(f):
    with pytest.raises(ValueError) as excinfo:
        p_maximal_order(IntPoly.from_string(f), 3)
    assert 'squarefree' in str(excinfo.value)


@pytest.mark.parametrize("m", [41, 73, 105, 113, 137, 201, 233])
def test_x14_family(m):
    f = IntPoly.pure(14, m)
    phi = IntPoly.from_string("x^3 + x + 1")
    polygon = principal_polygon(f, phi, 2)
    assert polygon.vertices != [(0, 3), (1, 1), (4, 0)]
    bound = ore_index(f, 2)
    assert bound.lower_bound == 7
    _, val = p_maximal_order(f, 2)
    assert val == bound.lower_bound


def _second_order_total(f, p):
    data = order2_data(f, p)
    _, unresolved = order2_census(f, data)
    return ore_index(f, p).lower_bound + ind2(f, data), not unresolved


@pytest.mark.parametrize("n,m,p", [(4, 12, 2), (6, 180, 2), (9, 54, 3)])
def test_second_order_total_matches_oracle(n, m, p):
    f = IntPoly.pure(n, m)
    total, resolved = _second_order_total(f, p)
    assert resolved
    _, val = p_maximal_order(f, p)
    assert val == total


def test_residue_census_matches_splitting_shape():
    rng = np.random.RandomState(1)
    checked = 0
    for _ in range(60):
        field = pure_field_factory(10, 50, rng)
        for p in pure_field_primes(field):
            if not is_p_regular(field.poly, p)[0]:
                continue
            order, _ = p_maximal_order(field.poly, p)
            shape = splitting_shape(field.poly, p)
            assert residue_census(order, p).as_dict() == dict(shape.counts())
            checked += 1
    assert checked > 0


@pytest.mark.slow
def test_index_formula_sweep():
    for n in range(2, 11):
        for m in range(-50, 51):
            if m in (0, 1) or not is_irreducible_pure(n, m):
                continue
            field = PureField(n, m)
            for p in prime_divisors(abs(m)):
                try:
                    expected = index_val_p_divides_m(field, p)
                except NotApplicableError:
                    continue
                _, val = p_maximal_order(field.poly, p)
                assert val == expected, (n, m, p)


@pytest.mark.slow
def test_integral_closedness_sweep():
    for n in range(2, 9):
        for m in range(-60, 61):
            if m in (0, 1) or not is_irreducible_pure(n, m):
                continue
            field = PureField(n, m)
            closed, _ = integral_closedness_test(field)
            primes = prime_divisors(abs(n * m))
            dedekind = all(not dedekind_test(field.poly, p).divides_index
                           for p in primes)
            vals = [p_maximal_order(field.poly, p)[1] for p in primes]
            assert closed == dedekind, (n, m)
            assert closed == all(v == 0 for v in vals), (n, m)


@pytest.mark.slow
def test_regular_polygon_index_sweep():
    for n in range(2, 13):
        for m in range(-50, 51):
            if m in (0, 1) or not is_irreducible_pure(n, m):
                continue
            f = IntPoly.pure(n, m)
            for p in (2, 3):
                if n % p or m % p == 0:
                    continue
                bound = ore_index(f, p)
                _, val = p_maximal_order(f, p)
                assert val >= bound.lower_bound
                if bound.exact:
                    assert val == bound.lower_bound, (n, m, p)
                    continue
                try:
                    total, resolved = _second_order_total(f, p)
                except OutOfScopeError:
                    continue
                assert val >= total, (n, m, p)
                if resolved:
                    assert val == total, (n, m, p)
