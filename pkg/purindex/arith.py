from enum import Enum
from typing import List, NamedTuple, Union

import sympy
from sympy.ntheory import digits


class NotPrimeError(ValueError):
    pass


class Infinity(Enum):
    """Valuation of zero. Absorbs under addition, wins under min."""
    INF = 'inf'

    def __repr__(self) -> str:
        return 'INF'

    def __str__(self) -> str:
        return 'inf'

    def __lt__(self, other):
        if isinstance(other, (int, Infinity)):
            return False
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, Infinity):
            return True
        if isinstance(other, int):
            return False
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, Infinity):
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, (int, Infinity)):
            return True
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, (int, Infinity)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, int) and other > 0:
            return self
        return NotImplemented

    __rmul__ = __mul__

    def __hash__(self) -> int:
        return hash('inf')


INF = Infinity.INF

Valuation = Union[int, Infinity]


class PrimePower(NamedTuple):
    p: int
    e: int


def is_prime(n: int) -> bool:
    return bool(sympy.isprime(n))


def check_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrimeError("Not a prime: {}".format(p))


def integer_root(a: int, k: int) -> int:
    """Largest integer r >= 0 with r^k <= a, for a >= 0."""
    if a < 0:
        raise ValueError("Negative radicand: {}".format(a))
    return int(sympy.integer_nthroot(a, k)[0])


def p_adic_val(a: int, p: int) -> Valuation:
    check_prime(p)
    if a == 0:
        return INF
    return int(sympy.multiplicity(p, abs(a)))


def unit_part(a: int, p: int) -> int:
    """a / p^{v_p(a)}, keeping the sign."""
    if a == 0:
        raise ValueError("Zero has no unit part")
    return a // p ** p_adic_val(a, p)


def factorize(n: int) -> List[PrimePower]:
    if n == 0:
        raise ValueError("Cannot factor zero")
    return [PrimePower(int(q), int(e))
            for q, e in sorted(sympy.factorint(abs(n)).items())]


def prime_divisors(n: int) -> List[int]:
    return [int(q) for q in sympy.primefactors(n)]


def divisors(n: int) -> List[int]:
    return [int(d) for d in sympy.divisors(abs(n))]


def mobius(n: int) -> int:
    return int(sympy.mobius(n))


def totient(n: int) -> int:
    return int(sympy.totient(n))


def binom_val(p: int, n: int, k: int) -> Valuation:
    """v_p(C(n, k)) as the number of carries adding k and n - k in base p."""
    check_prime(p)
    if k < 0 or k > n:
        raise ValueError("Need 0 <= k <= n, got n={}, k={}".format(n, k))

    def digit_sum(a):
        return sum(digits(a, p)[1:])

    return (digit_sum(k) + digit_sum(n - k) - digit_sum(n)) // (p - 1)


def count_monic_irreducibles(p: int, f: int) -> int:
    """Number of monic irreducible polynomials of degree f over F_p."""
    check_prime(p)
    if f < 1:
        raise ValueError("Degree must be positive, got {}".format(f))
    total = sum(mobius(d) * p ** (f // d) for d in divisors(f))
    return total // f
