import hashlib
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np
import sympy
from sympy.parsing.sympy_parser import (
    parse_expr, standard_transformations, implicit_multiplication_application,
    convert_xor
)

from .arith import INF, Valuation, p_adic_val, prime_divisors, is_prime

_transformations = standard_transformations + (
    implicit_multiplication_application, convert_xor
)


class NotMonicError(ValueError):
    pass


class NotIrreducibleError(ValueError):
    pass


def _seed_base() -> int:
    return int(os.environ.get('PURINDEX_SEED', '0'))


def _format_terms(coeffs: Sequence[Any], var: str, fmt=str) -> str:
    if not coeffs:
        return '0'
    out = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        s = fmt(c)
        if s == '0':
            continue
        neg = s.startswith('-') and ' ' not in s
        if neg:
            s = s[1:]
        if i == 0:
            term = s
        else:
            mono = var if i == 1 else '{}^{}'.format(var, i)
            if s == '1':
                term = mono
            else:
                term = '{}*{}'.format(s, mono)
        if not out:
            out.append('-' + term if neg else term)
        else:
            out.append(('- ' if neg else '+ ') + term)
    return ' '.join(out) if out else '0'


@dataclass(frozen=True)
class IntPoly:
    """Dense polynomial over the integers; coeffs[i] multiplies x^i."""
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        c = [int(a) for a in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, 'coeffs', tuple(c))

    @classmethod
    def x(cls) -> 'IntPoly':
        return cls((0, 1))

    @classmethod
    def monomial(cls, n: int, c: int = 1) -> 'IntPoly':
        return cls((0,) * n + (c,))

    @classmethod
    def constant(cls, c: int) -> 'IntPoly':
        return cls((c,))

    @classmethod
    def pure(cls, n: int, m: int) -> 'IntPoly':
        """x^n - m"""
        return cls((-m,) + (0,) * (n - 1) + (1,))

    @classmethod
    def from_string(cls, text: str) -> 'IntPoly':
        if '−' in text:
            raise ValueError("Unicode minus sign is not accepted: {!r}"
                             .format(text))
        x = sympy.Symbol('x')
        try:
            expr = parse_expr(text, local_dict={'x': x},
                              transformations=_transformations)
            poly = sympy.Poly(expr, x)
        except Exception as err:
            raise ValueError("Cannot parse polynomial {!r}: {}"
                             .format(text, err))
        if not poly.free_symbols <= {x}:
            raise ValueError("Polynomial must be in x only: {!r}"
                             .format(text))
        coeffs = poly.all_coeffs()[::-1]
        if not all(c.is_Integer for c in coeffs):
            raise ValueError("Coefficients must be integers: {!r}"
                             .format(text))
        return cls(tuple(int(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other: 'IntPoly') -> 'IntPoly':
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(tuple(self[i] + other[i] for i in range(n)))

    def __neg__(self) -> 'IntPoly':
        return IntPoly(tuple(-a for a in self.coeffs))

    def __sub__(self, other: 'IntPoly') -> 'IntPoly':
        return self + (-other)

    def __mul__(self, other) -> 'IntPoly':
        if isinstance(other, int):
            return IntPoly(tuple(other * a for a in self.coeffs))
        if self.is_zero() or other.is_zero():
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> 'IntPoly':
        result = IntPoly((1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: 'IntPoly') -> Tuple['IntPoly', 'IntPoly']:
        if not other.is_monic():
            raise NotMonicError(
                "Euclidean division over Z needs a monic divisor, got {}"
                .format(other)
            )
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return IntPoly(()), self
        quo = [0] * (len(rem) - dq)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if c:
                quo[i - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= c * b
        return IntPoly(tuple(quo)), IntPoly(tuple(rem[:dq]))

    def __floordiv__(self, other: 'IntPoly') -> 'IntPoly':
        return divmod(self, other)[0]

    def __mod__(self, other: 'IntPoly') -> 'IntPoly':
        return divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def derivative(self) -> 'IntPoly':
        return IntPoly(tuple(i * a for i, a in enumerate(self.coeffs)
                             if i > 0))

    def exact_div_int(self, k: int) -> 'IntPoly':
        if any(a % k for a in self.coeffs):
            raise ValueError("{} is not divisible by {}".format(self, k))
        return IntPoly(tuple(a // k for a in self.coeffs))

    def shift(self, c: int) -> 'IntPoly':
        """f(x + c)"""
        result = IntPoly(())
        lin = IntPoly((c, 1))
        for a in reversed(self.coeffs):
            result = result * lin + IntPoly((a,))
        return result

    def __str__(self) -> str:
        return _format_terms(self.coeffs, 'x')


@dataclass(frozen=True)
class PrimeField:
    p: int

    @property
    def degree(self) -> int:
        return 1

    @property
    def order(self) -> int:
        return self.p

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def from_int(self, a: int) -> int:
        return a % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("Zero has no inverse")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a) -> bool:
        return a == 0

    def pth_root(self, a):
        return a

    def random(self, rng):
        return _randbelow(rng, self.p)

    def key(self, a):
        return (a,)

    def format(self, a) -> str:
        return str(a)


def _randbelow(rng: np.random.RandomState, n: int) -> int:
    if n < (1 << 62):
        return int(rng.randint(0, n))
    chunks = n.bit_length() // 30 + 2
    return sum(int(rng.randint(0, 1 << 30)) << (30 * i)
               for i in range(chunks)) % n


@lru_cache(maxsize=None)
def _prime_field(p: int) -> PrimeField:
    return PrimeField(p)


class _FieldPoly:
    """Dense univariate polynomial over a finite field ``self.field``."""
    var = 'x'

    def __init__(self, field_, coeffs: Sequence[Any]) -> None:
        F = field_
        c = [F.from_int(a) if isinstance(a, int) else a for a in coeffs]
        while c and F.is_zero(c[-1]):
            c.pop()
        self.field = F
        self.coeffs = tuple(c)

    def _wrap(self, coeffs) -> '_FieldPoly':
        raise NotImplementedError  # pragma: no cover

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.degree == 0 and self.coeffs[0] == self.field.one

    def key(self) -> tuple:
        return tuple(self.field.key(a) for a in self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, self.__class__):
            return NotImplemented
        return self.field == other.field and self.key() == other.key()

    def __hash__(self) -> int:
        return hash((self.__class__.__name__, self.field, self.key()))

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def __add__(self, other: '_FieldPoly') -> '_FieldPoly':
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return self._wrap([F.add(self[i], other[i]) for i in range(n)])

    def __neg__(self) -> '_FieldPoly':
        return self._wrap([self.field.neg(a) for a in self.coeffs])

    def __sub__(self, other: '_FieldPoly') -> '_FieldPoly':
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return self._wrap([F.sub(self[i], other[i]) for i in range(n)])

    def scale(self, c) -> '_FieldPoly':
        return self._wrap([self.field.mul(c, a) for a in self.coeffs])

    def __mul__(self, other: '_FieldPoly') -> '_FieldPoly':
        F = self.field
        if self.is_zero() or other.is_zero():
            return self._wrap([])
        out = [F.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if F.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return self._wrap(out)

    def __divmod__(self, other: '_FieldPoly'):
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("Polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return self._wrap([]), self
        inv = F.inv(other.lead)
        quo = [F.zero] * (len(rem) - dq)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if F.is_zero(c):
                continue
            c = F.mul(c, inv)
            quo[i - dq] = c
            for j, b in enumerate(other.coeffs):
                rem[i - dq + j] = F.sub(rem[i - dq + j], F.mul(c, b))
        return self._wrap(quo), self._wrap(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> '_FieldPoly':
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead))

    def derivative(self) -> '_FieldPoly':
        F = self.field
        return self._wrap([F.mul(F.from_int(i), a)
                           for i, a in enumerate(self.coeffs) if i > 0])

    def gcd(self, other: '_FieldPoly') -> '_FieldPoly':
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def powmod(self, e: int, modulus: '_FieldPoly') -> '_FieldPoly':
        result = self._wrap([self.field.one]) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def x(self) -> '_FieldPoly':
        return self._wrap([self.field.zero, self.field.one])

    def one(self) -> '_FieldPoly':
        return self._wrap([self.field.one])

    def is_irreducible(self) -> bool:
        """Rabin's test."""
        k = self.degree
        if k < 1:
            return False
        if k == 1:
            return True
        f = self.monic()
        q = self.field.order
        x = f.x()
        xq = [x]
        for _ in range(k):
            xq.append(xq[-1].powmod(q, f))
        if xq[k] != x % f:
            return False
        for r in prime_divisors(k):
            if not f.gcd(xq[k // r] - x).is_one():
                return False
        return True

    def factor(self) -> List[Tuple['_FieldPoly', int]]:
        return _factor(self)

    def __repr__(self) -> str:
        return "{}({})".format(self.__class__.__name__, str(self))

    def __str__(self) -> str:
        return _format_terms(self.coeffs, self.var, self.field.format)


class ModPoly(_FieldPoly):
    """Polynomial over F_p with coefficients in [0, p)."""

    def __init__(self, p: int, coeffs: Sequence[int]) -> None:
        _FieldPoly.__init__(self, _prime_field(p), coeffs)

    def _wrap(self, coeffs) -> 'ModPoly':
        return ModPoly(self.field.p, coeffs)

    def lift(self) -> IntPoly:
        return IntPoly(self.coeffs)


@dataclass(frozen=True)
class ExtField:
    """F_p[x]/(modulus); elements are ModPoly of degree below k."""
    p: int
    modulus: ModPoly

    def __post_init__(self):
        if self.modulus.p != self.p:
            raise ValueError("Modulus {} is not over F_{}"
                             .format(self.modulus, self.p))
        if not self.modulus.is_irreducible():
            raise NotIrreducibleError(
                "Modulus {} is not irreducible over F_{}"
                .format(self.modulus, self.p)
            )
        object.__setattr__(self, 'modulus', self.modulus.monic())

    @property
    def degree(self) -> int:
        return self.modulus.degree

    @property
    def order(self) -> int:
        return self.p ** self.degree

    @property
    def zero(self) -> ModPoly:
        return ModPoly(self.p, [])

    @property
    def one(self) -> ModPoly:
        return ModPoly(self.p, [1])

    def from_int(self, a: int) -> ModPoly:
        return ModPoly(self.p, [a])

    def element(self, g) -> ModPoly:
        if isinstance(g, IntPoly):
            g = reduce_mod_p(g, self.p)
        return g % self.modulus

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return (a * b) % self.modulus

    def inv(self, a):
        if a.is_zero():
            raise ZeroDivisionError("Zero has no inverse")
        r0, r1 = self.modulus, a
        s0, s1 = self.zero, self.one
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        # r0 is a nonzero constant
        return (s0.scale(pow(r0.lead, self.p - 2, self.p))) % self.modulus

    def pow(self, a, e: int):
        return a.powmod(e, self.modulus)

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def pth_root(self, a):
        return self.pow(a, self.order // self.p)

    def frobenius(self, a):
        return self.pow(a, self.p)

    def random(self, rng):
        return ModPoly(self.p, [_randbelow(rng, self.p)
                                for _ in range(self.degree)])

    def key(self, a):
        return a.coeffs + (0,) * (self.degree - len(a.coeffs))

    def format(self, a) -> str:
        if a.is_zero():
            return '0'
        if a.degree == 0:
            return str(a.coeffs[0])
        return '({})'.format(a)

    def elements(self):
        for k in range(self.order):
            digits = []
            for _ in range(self.degree):
                k, r = divmod(k, self.p)
                digits.append(r)
            yield ModPoly(self.p, digits)


class ExtPoly(_FieldPoly):
    """Polynomial in y over an extension field F_phi."""
    var = 'y'

    def __init__(self, field_: ExtField, coeffs) -> None:
        _FieldPoly.__init__(self, field_, [
            field_.element(a) if isinstance(a, ModPoly) else a
            for a in coeffs
        ])

    def _wrap(self, coeffs) -> 'ExtPoly':
        return ExtPoly(self.field, coeffs)


@dataclass(frozen=True)
class PhiExpansion:
    """f = sum(terms[i] * phi^i)."""
    phi: IntPoly
    terms: Tuple[IntPoly, ...]
    admissible: bool = True

    def reconstruct(self) -> IntPoly:
        acc = IntPoly(())
        for a in reversed(self.terms):
            acc = acc * self.phi + a
        return acc

    def is_canonical(self) -> bool:
        return all(a.degree < self.phi.degree for a in self.terms)

    def __len__(self) -> int:
        return len(self.terms)


def phi_expansion(f: IntPoly, phi: IntPoly) -> PhiExpansion:
    if not phi.is_monic() or phi.degree < 1:
        raise NotMonicError("phi must be monic of degree >= 1, got {}"
                            .format(phi))
    nterms = f.degree // phi.degree + 1 if not f.is_zero() else 1
    terms = []
    q = f
    for _ in range(nterms):
        q, r = divmod(q, phi)
        terms.append(r)
    return PhiExpansion(phi, tuple(terms), True)


def reduce_mod_p(f: IntPoly, p: int) -> ModPoly:
    return ModPoly(p, f.coeffs)


def gauss_valuation(g: IntPoly, p: int) -> Valuation:
    if g.is_zero():
        return INF
    return min(p_adic_val(a, p) for a in g.coeffs if a)


def _rng_for(g: _FieldPoly) -> np.random.RandomState:
    modulus = getattr(g.field, 'modulus', None)
    text = repr((g.p, modulus.coeffs if modulus else None, g.key(),
                 _seed_base()))
    digest = hashlib.sha256(text.encode()).hexdigest()
    return np.random.RandomState(int(digest[:8], 16))


def _pth_root_poly(g: _FieldPoly) -> _FieldPoly:
    F = g.field
    p = F.p
    return g._wrap([F.pth_root(g.coeffs[i])
                    for i in range(0, len(g.coeffs), p)])


def _squarefree_decomposition(f: _FieldPoly) -> List[Tuple[_FieldPoly, int]]:
    out = []
    c = f.gcd(f.derivative())
    w = f // c
    i = 1
    while w.degree > 0:
        y = w.gcd(c)
        fac = w // y
        if fac.degree > 0:
            out.append((fac.monic(), i))
        w, c = y, c // y
        i += 1
    if c.degree > 0:
        p = f.field.p
        out.extend((g, j * p)
                   for g, j in _squarefree_decomposition(_pth_root_poly(c)))
    return out


def _distinct_degree(f: _FieldPoly) -> List[Tuple[_FieldPoly, int]]:
    q = f.field.order
    out = []
    x = f.x()
    h = x % f
    fstar = f
    i = 1
    while fstar.degree >= 2 * i:
        h = h.powmod(q, fstar)
        g = fstar.gcd(h - x)
        if not g.is_one():
            out.append((g, i))
            fstar = fstar // g
            h = h % fstar
        i += 1
    if fstar.degree > 0:
        out.append((fstar.monic(), fstar.degree))
    return out


def _equal_degree(f: _FieldPoly, d: int,
                  rng: np.random.RandomState) -> List[_FieldPoly]:
    if f.degree == d:
        return [f.monic()]
    F = f.field
    q = F.order
    while True:
        a = f._wrap([F.random(rng) for _ in range(f.degree)])
        if a.degree < 1:
            continue
        if q % 2:
            b = a.powmod((q ** d - 1) // 2, f) - f.one()
        else:
            k = F.degree * d
            b = t = a % f
            for _ in range(k - 1):
                t = (t * t) % f
                b = b + t
        g = f.gcd(b)
        if 0 < g.degree < f.degree:
            return (_equal_degree(g, d, rng)
                    + _equal_degree((f // g).monic(), d, rng))


def _canonical_key(g: _FieldPoly):
    return (g.degree, g.key())


def _factor(g: _FieldPoly) -> List[Tuple[_FieldPoly, int]]:
    if g.is_zero():
        raise ValueError("Cannot factor the zero polynomial")
    f = g.monic()
    rng = _rng_for(f)
    found: Dict[_FieldPoly, int] = {}
    for part, mult in _squarefree_decomposition(f):
        for block, d in _distinct_degree(part):
            for fac in _equal_degree(block, d, rng):
                found[fac] = found.get(fac, 0) + mult
    return sorted(found.items(), key=lambda item: _canonical_key(item[0]))


def factor_mod_p(g: ModPoly) -> List[Tuple[ModPoly, int]]:
    return _factor(g)


def is_squarefree(g: _FieldPoly) -> bool:
    if g.is_zero():
        raise ValueError("The zero polynomial has no squarefree test")
    return g.gcd(g.derivative()).degree == 0


def prime_field_as_ext(p: int) -> ExtField:
    """F_p presented as F_p[x]/(x)."""
    if not is_prime(p):
        raise ValueError("Not a prime: {}".format(p))
    return ExtField(p, ModPoly(p, [0, 1]))
