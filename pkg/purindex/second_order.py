import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, NamedTuple, Tuple

from .arith import INF, Valuation, p_adic_val, unit_part
from .poly import (
    IntPoly, ExtPoly, ModPoly, PhiExpansion, phi_expansion, is_squarefree,
    factor_mod_p
)
from .newton import (
    Point, Side, factor_lifts, principal_polygon, residual_poly,
    principal_sides, lattice_index
)

logger = logging.getLogger(__name__)


class OutOfScopeError(ValueError):
    pass


@dataclass(frozen=True)
class Order2Data:
    p: int
    lambda1: Fraction
    psi1: ExtPoly
    phi2: IntPoly
    multiplicity: int

    @property
    def e1(self) -> int:
        return self.lambda1.denominator

    @property
    def h1(self) -> int:
        return self.lambda1.numerator

    @property
    def phi2_value(self) -> int:
        """omega_2(phi_2), in units where omega_2(p) = e1."""
        return self.e1 * self.h1


@dataclass(frozen=True)
class Order2Polygon:
    data: Order2Data
    points: Tuple[Tuple[int, Valuation], ...]
    sides: Tuple[Side, ...]
    expansion: PhiExpansion = field(compare=False, repr=False)

    @property
    def vertices(self) -> List[Point]:
        if not self.sides:
            return []
        return [self.sides[0].start] + [side.end for side in self.sides]


class CensusEntry(NamedTuple):
    count: int
    degree: int
    e: int
    f_res: int


def order2_data(f: IntPoly, p: int) -> Order2Data:
    """Order-2 data over phi = x when f = x^n mod p, the x-polygon is one
    side and its residual polynomial is a power of a linear factor."""
    x = IntPoly.x()
    if [(phi, l) for phi, l in factor_lifts(f, p)] != [(x, f.degree)]:
        raise OutOfScopeError("{} is not a power of x modulo {}"
                              .format(f, p))
    polygon = principal_polygon(f, x, p)
    if len(polygon.sides) != 1:
        raise OutOfScopeError("x-polygon of {} has {} sides"
                              .format(f, len(polygon.sides)))
    side = polygon.sides[0]
    residual = residual_poly(f, polygon, side).poly
    factors = residual.factor()
    if len(factors) != 1 or factors[0][0].degree != 1:
        raise OutOfScopeError(
            "residual polynomial {} is not a power of a linear factor"
            .format(residual)
        )
    psi, k = factors[0]
    root = psi.field.neg(psi.coeffs[0])
    c = root.coeffs[0] if root.coeffs else 0
    m = -f[0]
    if f == IntPoly.pure(f.degree, m) and (unit_part(m, p) - c) % p == 0:
        c = unit_part(m, p)
    lam = Fraction(side.height, side.length)
    phi2 = (IntPoly.monomial(lam.denominator)
            - IntPoly.constant(p ** lam.numerator * c))
    return Order2Data(p, lam, psi, phi2, k)


def omega2_val(g: IntPoly, data: Order2Data) -> Valuation:
    if g.is_zero():
        return INF
    return min(data.e1 * p_adic_val(b, data.p) + j * data.h1
               for j, b in enumerate(g.coeffs) if b)


def n2_polygon(f: IntPoly, data: Order2Data) -> Order2Polygon:
    expansion = phi_expansion(f, data.phi2)
    points = tuple(
        (i, omega2_val(a, data) + i * data.phi2_value)
        for i, a in enumerate(expansion.terms)
    )
    finite = [pt for pt in points if pt[1] is not INF]
    if finite[0][0] != 0:
        raise OutOfScopeError("{} divides {}".format(data.phi2, f))
    sides = principal_sides(finite)
    return Order2Polygon(data, points, sides, expansion)


def ind2(f: IntPoly, data: Order2Data) -> int:
    polygon = n2_polygon(f, data)
    # deg(phi) * deg(psi) == 1 for phi = x and linear psi
    return lattice_index(polygon.vertices)


def _dominant_unit(a: IntPoly, target: int, data: Order2Data) -> int:
    for j, b in enumerate(a.coeffs):
        if b and data.e1 * p_adic_val(b, data.p) + j * data.h1 == target:
            return unit_part(b, data.p) % data.p
    return 0


def residual_poly2(polygon: Order2Polygon, side: Side) -> ModPoly:
    data = polygon.data
    coeffs = []
    for i, y in side.lattice_points():
        a = polygon.expansion.terms[i]
        if a.is_zero():
            coeffs.append(0)
            continue
        coeffs.append(_dominant_unit(a, y - i * data.phi2_value, data))
    return ModPoly(data.p, coeffs)


def order2_census(
    f: IntPoly, data: Order2Data
) -> Tuple[List[CensusEntry], List[Side]]:
    """Primes certified by N_2 sides, and the sides left unresolved
    because their residual polynomial is not squarefree."""
    polygon = n2_polygon(f, data)
    entries = []
    unresolved = []
    for side in polygon.sides:
        residual = residual_poly2(polygon, side)
        if not is_squarefree(residual):
            unresolved.append(side)
            continue
        degrees = Counter(rho.degree for rho, _ in factor_mod_p(residual))
        for deg, count in sorted(degrees.items()):
            entries.append(CensusEntry(count, side.degree,
                                       data.e1 * side.e, deg))
    logger.debug("order-2 census of %s at %d: %s, unresolved %s",
                 f, data.p, entries, unresolved)
    return entries, unresolved


def order2_side_census(f: IntPoly, data: Order2Data) -> List[CensusEntry]:
    entries, unresolved = order2_census(f, data)
    if unresolved:
        raise OutOfScopeError(
            "residual polynomial of {} side(s) is not squarefree"
            .format(len(unresolved))
        )
    return entries


def certain_primes(entries: List[CensusEntry]) -> Counter:
    """Residue degree -> number of primes known to exist."""
    counts = Counter()
    for entry in entries:
        counts[entry.f_res] += entry.count
    return counts
