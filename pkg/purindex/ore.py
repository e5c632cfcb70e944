from collections import Counter
from dataclasses import dataclass
from typing import List, Tuple

from .poly import IntPoly, reduce_mod_p
from .newton import (
    factor_lifts, principal_polygon, polygon_index, residual_poly,
    is_p_regular
)


class NotRegularError(ValueError):
    pass


@dataclass(frozen=True)
class DedekindReport:
    p: int
    factors: Tuple[Tuple[IntPoly, int], ...]
    M: IntPoly
    divides_index: bool
    failing_factors: Tuple[Tuple[IntPoly, int], ...]


@dataclass(frozen=True)
class IndexBound:
    p: int
    lower_bound: int
    exact: bool
    per_phi: Tuple[Tuple[IntPoly, int], ...]


@dataclass(frozen=True)
class SplittingShape:
    p: int
    primes: Tuple[Tuple[int, int], ...]

    def counts(self) -> Counter:
        """Residue degree -> number of primes."""
        return Counter(f for _, f in self.primes)

    def total(self) -> int:
        return sum(e * f for e, f in self.primes)


def dedekind_test(f: IntPoly, p: int) -> DedekindReport:
    factors = tuple(factor_lifts(f, p))
    prod = IntPoly((1,))
    for phi, l in factors:
        prod = prod * phi ** l
    M = (f - prod).exact_div_int(p)
    Mbar = reduce_mod_p(M, p)
    failing = tuple(
        (phi, l) for phi, l in factors
        if l >= 2 and (Mbar % reduce_mod_p(phi, p)).is_zero()
    )
    return DedekindReport(p, factors, M, bool(failing), failing)


def ore_index(f: IntPoly, p: int) -> IndexBound:
    per_phi = []
    for phi, l in factor_lifts(f, p):
        if l == 1:
            per_phi.append((phi, 0))
            continue
        polygon = principal_polygon(f, phi, p)
        per_phi.append((phi, phi.degree * polygon_index(polygon)))
    regular, _ = is_p_regular(f, p)
    return IndexBound(p, sum(v for _, v in per_phi), regular, tuple(per_phi))


def splitting_shape(f: IntPoly, p: int) -> SplittingShape:
    regular, _ = is_p_regular(f, p)
    if not regular:
        raise NotRegularError("{} is not {}-regular".format(f, p))
    primes: List[Tuple[int, int]] = []
    for phi, l in factor_lifts(f, p):
        if l == 1:
            primes.append((1, phi.degree))
            continue
        polygon = principal_polygon(f, phi, p)
        for side in polygon.sides:
            residual = residual_poly(f, polygon, side).poly
            for psi, _ in residual.factor():
                primes.append((side.e, phi.degree * psi.degree))
    shape = SplittingShape(p, tuple(primes))
    assert shape.total() == f.degree, shape
    return shape
