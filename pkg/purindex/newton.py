from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .arith import INF, Valuation
from .poly import (
    IntPoly, ModPoly, ExtField, ExtPoly, PhiExpansion, NotIrreducibleError,
    phi_expansion, reduce_mod_p, factor_mod_p, gauss_valuation, is_squarefree
)

Point = Tuple[int, int]


class PolygonPoint(NamedTuple):
    abscissa: int
    ordinate: Valuation


@dataclass(frozen=True)
class Side:
    start: Point
    length: int
    height: int

    @property
    def end(self) -> Point:
        return (self.start[0] + self.length, self.start[1] - self.height)

    @property
    def slope(self) -> Fraction:
        return Fraction(-self.height, self.length)

    @property
    def e(self) -> int:
        """Ramification index e_red, the reduced slope denominator."""
        return self.slope.denominator

    @property
    def h(self) -> int:
        return -self.slope.numerator

    @property
    def degree(self) -> int:
        return self.length // self.e

    def lattice_points(self) -> List[Point]:
        s, u = self.start
        return [(s + i * self.e, u - i * self.h)
                for i in range(self.degree + 1)]


@dataclass(frozen=True)
class NewtonPolygon:
    phi: Optional[IntPoly]
    p: int
    sides: Tuple[Side, ...]
    all_points: Tuple[PolygonPoint, ...]
    expansion: Optional[PhiExpansion] = field(default=None, compare=False,
                                              repr=False)

    @property
    def vertices(self) -> List[Point]:
        if not self.sides:
            return []
        return [self.sides[0].start] + [side.end for side in self.sides]

    @property
    def length(self) -> int:
        return sum(side.length for side in self.sides)

    def slopes(self) -> List[Fraction]:
        return [side.slope for side in self.sides]


@dataclass(frozen=True)
class ResidualPoly:
    side: Side
    coefficients: Tuple[ModPoly, ...]
    field: ExtField

    @property
    def poly(self) -> ExtPoly:
        return ExtPoly(self.field, self.coefficients)

    @property
    def degree(self) -> int:
        return self.poly.degree


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: Sequence[Point]) -> List[Point]:
    """Monotone chain; collinear interior points are dropped."""
    hull = []
    for pt in sorted(points):
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return hull


def principal_sides(points: Sequence[Point]) -> Tuple[Side, ...]:
    """Negative-slope part of the lower hull, starting at the leftmost point."""
    hull = lower_hull(points)
    sides = []
    for a, b in zip(hull, hull[1:]):
        if b[1] >= a[1]:
            break
        sides.append(Side(a, b[0] - a[0], a[1] - b[1]))
    return tuple(sides)


def lattice_index(vertices: Sequence[Point]) -> int:
    """Lattice points (x, y) with x >= 1, on or below the polygon and
    strictly above the horizontal line through its last vertex."""
    if len(vertices) < 2:
        return 0
    base = vertices[-1][1]
    total = 0
    for (x0, y0), (x1, y1) in zip(vertices, vertices[1:]):
        l = x1 - x0
        for x in range(max(x0 + 1, 1), x1 + 1):
            total += (y0 * l - (x - x0) * (y0 - y1)) // l - base
    return total


def _points_of(expansion: PhiExpansion, p: int) -> List[PolygonPoint]:
    return [PolygonPoint(i, gauss_valuation(a, p))
            for i, a in enumerate(expansion.terms)]


def _polygon_of(expansion: PhiExpansion, p: int) -> NewtonPolygon:
    points = _points_of(expansion, p)
    finite = [(pt.abscissa, pt.ordinate) for pt in points
              if pt.ordinate is not INF]
    return NewtonPolygon(expansion.phi, p, principal_sides(finite),
                         tuple(points), expansion)


def _check_phi(f: IntPoly, phi: IntPoly, p: int) -> ModPoly:
    if not f.is_monic():
        raise ValueError("f must be monic, got {}".format(f))
    phibar = reduce_mod_p(phi, p)
    if not phi.is_monic() or not phibar.is_irreducible():
        raise NotIrreducibleError(
            "{} is not irreducible modulo {}".format(phi, p)
        )
    if not (reduce_mod_p(f, p) % phibar).is_zero():
        raise ValueError("{} does not divide {} modulo {}"
                         .format(phi, f, p))
    return phibar


def principal_polygon(f: IntPoly, phi: IntPoly, p: int) -> NewtonPolygon:
    _check_phi(f, phi, p)
    expansion = phi_expansion(f, phi)
    if expansion.terms[0].is_zero():
        raise ValueError("{} divides {} over Z".format(phi, f))
    return _polygon_of(expansion, p)


def _residual_coefficient(a: IntPoly, y: int, p: int, F: ExtField):
    if a.is_zero() or gauss_valuation(a, p) != y:
        return F.zero
    return F.element(a.exact_div_int(p ** y))


def residual_poly(f: IntPoly, polygon: NewtonPolygon,
                  side: Side) -> ResidualPoly:
    if side not in polygon.sides:
        raise ValueError("{} is not a side of this polygon".format(side))
    expansion = polygon.expansion
    if expansion is None:
        expansion = phi_expansion(f, polygon.phi)
    p = polygon.p
    F = ExtField(p, reduce_mod_p(polygon.phi, p))
    coeffs = tuple(
        _residual_coefficient(expansion.terms[j], y, p, F)
        for j, y in side.lattice_points()
    )
    return ResidualPoly(side, coeffs, F)


def polygon_index(polygon: NewtonPolygon) -> int:
    return lattice_index(polygon.vertices)


def phi_index(f: IntPoly, phi: IntPoly, p: int) -> int:
    return phi.degree * polygon_index(principal_polygon(f, phi, p))


def is_admissible(expansion: PhiExpansion, p: int) -> bool:
    """Every vertex coefficient is nonzero modulo (p, phi)."""
    polygon = _polygon_of(expansion, p)
    phibar = reduce_mod_p(expansion.phi, p)
    for i, u in polygon.vertices:
        a = expansion.terms[i]
        if a.is_zero():
            return False
        c = reduce_mod_p(a.exact_div_int(p ** u), p) % phibar
        if c.is_zero():
            return False
    return True


def factor_lifts(f: IntPoly, p: int) -> List[Tuple[IntPoly, int]]:
    """Irreducible factors of f mod p, lifted with coefficients in [0, p)."""
    return [(phibar.lift(), l)
            for phibar, l in factor_mod_p(reduce_mod_p(f, p))]


class RegularityDetail(NamedTuple):
    phi: IntPoly
    multiplicity: int
    squarefree: Tuple[bool, ...]

    @property
    def regular(self) -> bool:
        return all(self.squarefree)


def is_p_regular(f: IntPoly,
                 p: int) -> Tuple[bool, List[RegularityDetail]]:
    details = []
    for phi, l in factor_lifts(f, p):
        if l == 1:
            details.append(RegularityDetail(phi, l, ()))
            continue
        polygon = principal_polygon(f, phi, p)
        flags = tuple(
            is_squarefree(residual_poly(f, polygon, side).poly)
            for side in polygon.sides
        )
        details.append(RegularityDetail(phi, l, flags))
    return all(d.regular for d in details), details
