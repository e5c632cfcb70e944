import pytest

import numpy as np
from scipy.special import comb

from purindex.arith import (
    INF, NotPrimeError, is_prime, integer_root, p_adic_val, unit_part,
    factorize, prime_divisors, divisors, mobius, binom_val,
    count_monic_irreducibles, totient, check_prime
)


def test_infinity_ordering():
    assert INF > 10 ** 30
    assert 5 < INF
    assert INF >= INF
    assert INF + 3 is INF
    assert 3 + INF is INF
    assert min(INF, 7) == 7
    assert str(INF) == 'inf'


@pytest.mark.parametrize("n,expected",
                         [(2, True), (1, False), (0, False), (91, False),
                          (97, True), (561, False), (7919, True),
                          (2 ** 61 - 1, True), (2 ** 64 + 13, True),
                          (3215031751, False), (2 ** 89 - 1, True),
                          ((2 ** 61 - 1) * (2 ** 31 - 1), False)])
def test_is_prime(n, expected):
    assert is_prime(n) == expected


def test_is_prime_matches_sieve():
    sieve = np.ones(2000, dtype=bool)
    sieve[:2] = False
    for i in range(2, 45):
        sieve[i * i::i] = False
    for n in range(2000):
        assert is_prime(n) == bool(sieve[n])


@pytest.mark.parametrize("a,k,expected",
                         [(0, 3, 0), (1, 5, 1), (80, 2, 8), (81, 2, 9),
                          (10 ** 40, 4, 10 ** 10), (10 ** 40 - 1, 4,
                                                    10 ** 10 - 1)])
def test_integer_root(a, k, expected):
    assert integer_root(a, k) == expected


def test_integer_root_negative():
    with pytest.raises(ValueError):
        integer_root(-8, 3)


@pytest.mark.parametrize("a,p,expected",
                         [(90, 2, 1), (99990, 5, 1), (1000, 5, 3),
                          (-2214, 3, 3), (528, 2, 4), (0, 7, INF)])
def test_p_adic_val(a, p, expected):
    assert p_adic_val(a, p) == expected


def test_p_adic_val_axioms():
    rng = np.random.RandomState(1)
    for _ in range(200):
        a, b = (int(x) for x in rng.randint(1, 10 ** 6, size=2))
        for p in (2, 3, 5, 7):
            assert p_adic_val(a * b, p) == p_adic_val(a, p) + p_adic_val(b, p)
            assert p_adic_val(a + b, p) >= min(p_adic_val(a, p),
                                               p_adic_val(b, p))


def test_p_adic_val_requires_prime():
    with pytest.raises(NotPrimeError):
        p_adic_val(12, 4)


@pytest.mark.parametrize("a,p,expected",
                         [(528, 2, 33), (-2214, 3, -82), (7, 7, 1)])
def test_unit_part(a, p, expected):
    assert unit_part(a, p) == expected


@pytest.mark.parametrize("n", [1, 2, 360, 2 ** 10 * 3 ** 5, 1000003 * 999983,
                               (2 ** 31 - 1) ** 2 * 1000003, 2 ** 64 + 1])
def test_factorize(n):
    fac = factorize(n)
    prod = 1
    for p, e in fac:
        assert is_prime(p)
        prod *= p ** e
    assert prod == n
    assert [p for p, _ in fac] == sorted(p for p, _ in fac)


def test_divisors_and_mobius():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert prime_divisors(-2214) == [2, 3, 41]
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0,
                                                 0, 1]
    for n in range(1, 60):
        expected = 1 if n == 1 else 0
        assert sum(mobius(d) for d in divisors(n)) == expected


def test_binom_val():
    for p in (2, 3, 5, 7):
        for n in range(201):
            for k in range(n + 1):
                c = int(comb(n, k, exact=True))
                assert binom_val(p, n, k) == p_adic_val(c, p)


@pytest.mark.parametrize("p,n,k,expected",
                         [(2, 4, 2, 1), (3, 27, 9, 1), (5, 25, 25, 0)])
def test_binom_val_examples(p, n, k, expected):
    assert binom_val(p, n, k) == expected


def test_binom_val_prime_power():
    for p in (2, 3, 5):
        for r in range(1, 5):
            for j in range(1, p ** r + 1):
                assert binom_val(p, p ** r, j) == r - p_adic_val(j, p)


def test_binom_val_out_of_range():
    with pytest.raises(ValueError):
        binom_val(3, 4, 5)


@pytest.mark.parametrize("p,f,expected",
                         [(2, 1, 2), (2, 2, 1), (2, 3, 2), (2, 4, 3),
                          (3, 1, 3), (3, 2, 3), (5, 1, 5), (2, 8, 30)])
def test_count_monic_irreducibles(p, f, expected):
    assert count_monic_irreducibles(p, f) == expected


def test_count_monic_irreducibles_sum():
    for p in (2, 3, 5, 7):
        for f in range(1, 13):
            assert sum(d * count_monic_irreducibles(p, d)
                       for d in divisors(f)) == p ** f


@pytest.mark.parametrize("n,expected",
                         [(48, [(2, 4), (3, 1)]), (135, [(3, 3), (5, 1)]),
                          (1, []), (-2214, [(2, 1), (3, 3), (41, 1)])])
def test_factorize_examples(n, expected):
    assert factorize(n) == expected


def test_factorize_zero():
    with pytest.raises(ValueError):
        factorize(0)


@pytest.mark.parametrize("bound", [20000,
                                   pytest.param(10 ** 6,
                                                marks=pytest.mark.slow)])
def test_factorize_round_trip(bound):
    # smallest prime factor sieve
    spf = np.arange(bound + 1)
    for i in range(2, int(bound ** 0.5) + 1):
        if spf[i] == i:
            block = spf[i * i::i]
            block[block == np.arange(i * i, bound + 1, i)] = i
    for n in range(1, bound + 1):
        fac = factorize(n)
        prod = 1
        for p, e in fac:
            assert e >= 1 and spf[p] == p
            prod *= p ** e
        assert prod == n
        assert [p for p, _ in fac] == sorted({p for p, _ in fac})
        if n > 1:
            assert fac[0].p == spf[n]


def test_totient_and_check_prime():
    assert [totient(n) for n in range(1, 11)] == [1, 1, 2, 2, 4, 2, 6, 4, 6,
                                                  4]
    check_prime(2 ** 61 - 1)
    for bad in (1, 9, -3, 2.0):
        with pytest.raises(NotPrimeError):
            check_prime(bad)
