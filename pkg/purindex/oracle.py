"""p-maximal orders by radical/multiplier-ring iteration.

Shares no code with the Newton polygon modules: only the integer
polynomial arithmetic of :mod:`purindex.poly` is used.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy
from sympy.matrices.normalforms import hermite_normal_form

from .arith import p_adic_val, divisors, mobius, totient, is_prime
from .poly import IntPoly

logger = logging.getLogger(__name__)

_default_limits = dict(max_degree=60, max_prime=50)

Matrix = List[List[int]]


class ScaleLimitError(ValueError):
    pass


class NotMaximalError(ValueError):
    pass


@dataclass(frozen=True)
class OrderBasis:
    """Order with basis rows basis[i] / denominator in the power basis."""
    f: IntPoly
    basis: Tuple[Tuple[int, ...], ...]
    denominator: int
    maximal_at: Optional[int] = None

    @property
    def n(self) -> int:
        return self.f.degree

    def index_val(self, p: int) -> int:
        """v_p of (O : Z[alpha])."""
        det = 1
        for i, row in enumerate(self.basis):
            det *= row[i]
        return self.n * p_adic_val(self.denominator, p) - p_adic_val(det, p)

    def element(self, i: int) -> Tuple[Fraction, ...]:
        return tuple(Fraction(a, self.denominator) for a in self.basis[i])


@dataclass(frozen=True)
class ResidueCensus:
    p: int
    counts: Tuple[Tuple[int, int], ...]

    def as_dict(self) -> Dict[int, int]:
        return dict(self.counts)

    def __getitem__(self, f: int) -> int:
        return self.as_dict().get(f, 0)


def hnf(rows: Sequence[Sequence[int]], n: int,
        modulus: Optional[int] = None) -> Matrix:
    """Upper triangular Hermite normal form of a full-rank row lattice.

    When the lattice is known to contain ``modulus * Z^n`` the reduction
    runs modulo ``modulus ** n``.
    """
    rows = [list(r) for r in rows]
    if len(rows) < n:
        raise ValueError("Lattice is not of full rank")
    # sympy puts the lattice in the columns with pivots at the bottom right
    A = sympy.Matrix([[int(r[n - 1 - i]) for r in rows] for i in range(n)])
    D = None if modulus is None else modulus ** n
    H = hermite_normal_form(A, D=D)
    if H.shape != (n, n) or any(H[i, i] == 0 for i in range(n)):
        raise ValueError("Lattice is not of full rank")
    return [[int(H[n - 1 - c, n - 1 - r]) for c in range(n)]
            for r in range(n)]


def _solve_upper_int(M: Matrix, v: Sequence[int]) -> List[int]:
    """Integer row vector c with c M = v, M upper triangular."""
    c = []
    for j in range(len(M)):
        acc = v[j] - sum(c[i] * M[i][j] for i in range(j))
        q, r = divmod(acc, M[j][j])
        if r:
            raise ArithmeticError("Vector is not in the lattice")
        c.append(q)
    return c


def _rref_mod_p(A: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    A = A.copy() % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), p - 2, p) % p
        col = A[:, c].copy()
        col[r] = 0
        A = (A - np.outer(col, A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank_mod_p(A: np.ndarray, p: int) -> int:
    if A.size == 0:
        return 0
    return len(_rref_mod_p(np.asarray(A, dtype=np.int64), p)[1])


def left_kernel_mod_p(A: np.ndarray, p: int) -> List[np.ndarray]:
    """Basis of {v : v A = 0} over F_p."""
    At = np.asarray(A, dtype=np.int64).T
    R, pivots = _rref_mod_p(At, p)
    n = At.shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = np.zeros(n, dtype=np.int64)
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -R[i, fc] % p
        basis.append(v)
    return basis


def _reduction_table(f: IntPoly) -> np.ndarray:
    """Row s holds x^s mod f, 0 <= s < 2n - 1."""
    n = f.degree
    R = np.zeros((2 * n - 1, n), dtype=object)
    for s in range(n):
        R[s, s] = 1
    tail = np.array([-c for c in f.coeffs[:n]], dtype=object)
    for s in range(n, 2 * n - 1):
        R[s, 1:] = R[s - 1, :-1]
        R[s] += R[s - 1, -1] * tail
    return R


class _Algebra:
    """Structure constants of an order in its own basis, exact integers."""

    def __init__(self, f: IntPoly, basis: Sequence[Sequence[int]],
                 denominator: int) -> None:
        self.f = f
        self.n = n = f.degree
        self.basis = [list(row) for row in basis]
        self.denominator = denominator

        B = np.array(self.basis, dtype=object)
        full = np.zeros((n, n, 2 * n - 1), dtype=object)
        for a in range(n):
            full[:, :, a:a + n] += np.multiply.outer(B[:, a], B)
        R = _reduction_table(f)
        full = full.reshape(n * n, 2 * n - 1)
        prod = full[:, :n] + full[:, n:].dot(R[n:]) if n > 1 else full

        # C B = prod, B upper triangular
        C = np.zeros((n * n, n), dtype=object)
        for j in range(n):
            acc = prod[:, j].copy()
            if j:
                acc -= C[:, :j].dot(B[:j, j])
            if any(acc % B[j, j]):
                raise ArithmeticError("Basis is not closed under "
                                      "multiplication")
            C[:, j] = acc // B[j, j]
        if any((C % denominator).ravel()):
            raise ArithmeticError("Basis is not closed under multiplication")
        self.table = (C // denominator).reshape(n, n, n)

    def table_mod(self, q: int) -> np.ndarray:
        return (self.table % q).astype(np.int64)

    def unit_vector(self) -> List[int]:
        """Coordinates of 1 in the order basis."""
        target = [self.denominator] + [0] * (self.n - 1)
        return _solve_upper_int(self.basis, target)


def _mul_mod(x: np.ndarray, y: np.ndarray, T: np.ndarray, p: int):
    return np.einsum('i,j,ijk->k', x, y, T) % p


def _pow_mod(x: np.ndarray, e: int, T: np.ndarray, p: int, one):
    result = one.copy()
    base = x.copy()
    while e:
        if e & 1:
            result = _mul_mod(result, base, T, p)
        base = _mul_mod(base, base, T, p)
        e >>= 1
    return result


def _frobenius_matrix(alg: _Algebra, p: int) -> np.ndarray:
    """Rows are the coordinates of b_i^p modulo p."""
    n = alg.n
    T = alg.table_mod(p)
    one = np.array(alg.unit_vector(), dtype=np.int64) % p
    return np.array([_pow_mod(row, p, T, p, one)
                     for row in np.eye(n, dtype=np.int64)], dtype=np.int64)


def _matrix_power_mod(S: np.ndarray, k: int, p: int) -> np.ndarray:
    result = np.eye(len(S), dtype=np.int64)
    for _ in range(k):
        result = result @ S % p
    return result


def _radical(S: np.ndarray, p: int) -> List[np.ndarray]:
    """F_p-basis of the radical of O/pO: the kernel of x -> x^(p^k)."""
    n = len(S)
    k = 1
    while p ** k < n:
        k += 1
    return left_kernel_mod_p(_matrix_power_mod(S, k, p), p)


def _multiplier_kernel(alg: _Algebra, G: Matrix, p: int) -> List[np.ndarray]:
    """u in O with u I inside p I, modulo p O; G is the HNF of I."""
    n = alg.n
    q = p * p
    T = alg.table_mod(q)
    # p G^-1 is integral because p O lies in I
    G_inv = np.array([_solve_upper_int(G, [p if i == k else 0
                                           for i in range(n)])
                      for k in range(n)], dtype=object)
    G_q = np.array(G, dtype=object) % q
    products = np.einsum('jl,ulk->ujk', G_q.astype(np.int64), T) % q
    coords = np.einsum('ujk,kl->ujl', products,
                       (G_inv % q).astype(np.int64)) % q
    assert not (coords % p).any()
    return left_kernel_mod_p((coords // p).reshape(n, n * n), p)


def _enlarge(alg: _Algebra, p: int) -> Tuple[Matrix, int, int]:
    """Multiplier ring of the p-radical: (basis, denominator, index gain)."""
    n = alg.n
    scaled = [[p if i == j else 0 for j in range(n)] for i in range(n)]
    radical = _radical(_frobenius_matrix(alg, p), p)
    G = hnf(scaled + [[int(a) for a in v] for v in radical], n, modulus=p)
    kernel = _multiplier_kernel(alg, G, p)
    if not kernel:
        return alg.basis, alg.denominator, 0

    W = hnf(scaled + [[int(a) for a in v] for v in kernel], n, modulus=p)
    rows = np.array(W, dtype=object).dot(np.array(alg.basis, dtype=object))
    new_basis = hnf(rows.tolist(), n)
    denominator = alg.denominator * p
    g = reduce(gcd, (a for row in new_basis for a in row), denominator)
    new_basis = [[a // g for a in row] for row in new_basis]
    return new_basis, denominator // g, len(kernel)


def _check_input(f: IntPoly, p: int, limits: dict) -> None:
    if not is_prime(p):
        raise ValueError("Not a prime: {}".format(p))
    if f.degree < 1 or not f.is_monic():
        raise ValueError("f must be monic of positive degree, got {}"
                         .format(f))
    if f.degree > limits['max_degree'] or p > limits['max_prime']:
        raise ScaleLimitError(
            "Oracle limited to degree <= {max_degree} and p <= {max_prime}"
            .format(**limits)
        )
    x = sympy.Symbol('x')
    if not sympy.Poly(list(reversed(f.coeffs)), x).is_sqf:
        raise ValueError("{} is not squarefree".format(f))


def p_maximal_order(f: IntPoly, p: int,
                    **kwargs) -> Tuple[OrderBasis, int]:
    limits = dict(_default_limits, **kwargs)
    _check_input(f, p, limits)
    n = f.degree
    basis = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    denominator = 1
    index = 0
    while True:
        alg = _Algebra(f, basis, denominator)
        basis, denominator, gained = _enlarge(alg, p)
        if not gained:
            break
        index += gained
        logger.debug("oracle %s at %d: index %d (+%d)",
                     f, p, index, gained)
    order = OrderBasis(f, tuple(map(tuple, basis)), denominator,
                       maximal_at=p)
    assert order.index_val(p) == index, (f, p, index)
    return order, index


def residue_census(order: OrderBasis, p: int) -> ResidueCensus:
    if order.maximal_at != p:
        raise NotMaximalError("Order is not known to be {}-maximal"
                              .format(p))
    alg = _Algebra(order.f, order.basis, order.denominator)
    n = alg.n
    S = _frobenius_matrix(alg, p)
    radical = _radical(S, p)
    V = (np.array(radical, dtype=np.int64) if radical
         else np.zeros((0, n), dtype=np.int64))
    identity = np.eye(n, dtype=np.int64)

    # fixed[k] = dim of the fixed space of Frobenius^k on O / rad
    fixed = {}
    Sk = identity.copy()
    for k in range(1, n + 1):
        Sk = Sk @ S % p
        stacked = np.vstack([(Sk - identity) % p, V])
        fixed[k] = n - rank_mod_p(stacked, p)

    # fixed[k] = sum_{g | k} phi(g) C(g), C(g) = #{primes : g | f}
    C = {}
    for k in range(1, n + 1):
        total = sum(mobius(k // g) * fixed[g] for g in divisors(k))
        C[k] = total // totient(k)
    counts = []
    for f in range(1, n + 1):
        P = sum(mobius(j) * C[f * j] for j in range(1, n // f + 1))
        if P:
            counts.append((f, P))
    return ResidueCensus(p, tuple(counts))


def discriminant(f: IntPoly) -> int:
    x = sympy.Symbol('x')
    disc = int(sympy.discriminant(sympy.Poly(list(reversed(f.coeffs)), x)))
    if disc == 0:
        raise ValueError("{} is not squarefree".format(f))
    return disc


def disc_valuation(f: IntPoly, p: int) -> int:
    val = p_adic_val(discriminant(f), p)
    m = -f[0]
    if f.degree >= 2 and f == IntPoly.pure(f.degree, m):
        n = f.degree
        assert val == n * p_adic_val(n, p) + (n - 1) * p_adic_val(m, p)
    return val
