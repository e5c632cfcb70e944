"""Pure number fields Q(m^(1/n)): irreducibility, integral closedness of
Z[alpha], p-adic index formulas and monogeneity verdicts."""
import logging
import warnings
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .arith import (
    INF, Valuation, p_adic_val, unit_part, prime_divisors, factorize,
    integer_root, count_monic_irreducibles, check_prime, divisors
)
from .poly import IntPoly, reduce_mod_p
from .newton import (
    NewtonPolygon, Side, principal_polygon, polygon_index, principal_sides,
    factor_lifts, is_p_regular, residual_poly
)
from .ore import (
    DedekindReport, IndexBound, dedekind_test, ore_index, splitting_shape
)
from .second_order import (
    OutOfScopeError, order2_data, order2_census, ind2, certain_primes
)
from . import oracle

logger = logging.getLogger(__name__)


class ReducibleError(ValueError):
    def __init__(self, message: str, witness: Optional[IntPoly] = None):
        ValueError.__init__(self, message)
        self.witness = witness


class NotApplicableError(ValueError):
    pass


def _reducible_witness(n: int, m: int) -> Optional[IntPoly]:
    """A proper factor of x^n - m, or None when it is irreducible."""
    for q, _ in factorize(n):
        if m > 0 or q % 2:
            b = integer_root(abs(m), q)
            if b ** q == abs(m):
                return IntPoly.pure(n // q, b if m > 0 else -b)
    if n % 4 == 0 and m < 0 and m % 4 == 0:
        k = integer_root(-m // 4, 4)
        if 4 * k ** 4 == -m:
            d = n // 4
            # x^4 + 4k^4 = (x^2 - 2kx + 2k^2)(x^2 + 2kx + 2k^2)
            return (IntPoly.monomial(2 * d) - IntPoly.monomial(d, 2 * k)
                    + IntPoly.constant(2 * k * k))
    return None


def is_irreducible_pure(n: int, m: int) -> bool:
    if n < 2:
        raise ValueError("Degree must be at least 2, got {}".format(n))
    if m in (0, 1):
        raise ValueError("m must not be 0 or 1, got {}".format(m))
    return _reducible_witness(n, m) is None


@dataclass(frozen=True)
class PureField:
    n: int
    m: int

    def __post_init__(self):
        is_irreducible_pure(self.n, self.m)
        witness = _reducible_witness(self.n, self.m)
        if witness is not None:
            raise ReducibleError(
                "{} is reducible: divisible by {}".format(self.poly, witness),
                witness
            )

    @property
    def poly(self) -> IntPoly:
        return IntPoly.pure(self.n, self.m)

    def profile(self, p: int) -> 'PrimeProfile':
        return prime_profile(self, p)

    def __str__(self) -> str:
        return str(self.poly)


def frobenius_defect(m: int, p: int) -> Valuation:
    """v_p(m^p - m)."""
    s = p_adic_val(m, p)
    if s:
        return s
    if m == 1 or (m == -1 and p != 2):
        return INF
    K = 8
    while True:
        mod = p ** K
        r = (pow(m, p - 1, mod) - 1) % mod
        if r:
            return p_adic_val(r, p)
        K *= 2


class PrimeProfile(NamedTuple):
    p: int
    r: int
    t: int
    s: Valuation
    u: int
    m_p: int
    v_closed: Valuation


def prime_profile(field: PureField, p: int) -> PrimeProfile:
    check_prime(p)
    r = p_adic_val(field.n, p)
    s = p_adic_val(field.m, p)
    u = unit_part(field.m, p)
    return PrimeProfile(p, r, field.n // p ** r, s, u, u,
                        frobenius_defect(field.m, p))


def eisenstein_shift(f: IntPoly, p: int) -> Optional[int]:
    """Smallest 0 <= c < p with f(x + c) p-Eisenstein."""
    check_prime(p)
    if not f.is_monic():
        raise ValueError("f must be monic, got {}".format(f))
    for c in range(p):
        g = f.shift(c)
        if (all(a % p == 0 for a in g.coeffs[:-1])
                and p_adic_val(g[0], p) == 1):
            return c
    return None


def pure_field_primes(field: PureField) -> List[int]:
    return prime_divisors(abs(field.n * field.m))


def integral_closedness_test(
    field: PureField
) -> Tuple[bool, List[Tuple[int, Valuation]]]:
    """Z[alpha] is integrally closed iff v_p(m^p - m) = 1 for all p | nm."""
    failing = []
    for p in pure_field_primes(field):
        v = frobenius_defect(field.m, p)
        if v != 1:
            failing.append((p, v))
    return not failing, failing


def _half_index(n: int, v: int) -> int:
    d = gcd(n, v)
    return ((n - 1) * (v - 1) + d - 1) // 2


def index_val_p_divides_m(field: PureField, p: int) -> int:
    profile = prime_profile(field, p)
    v = profile.s
    if v == 0:
        raise NotApplicableError("{} does not divide {}".format(p, field.m))
    if v >= field.n:
        raise NotApplicableError(
            "v_{}({}) = {} is not below n = {}".format(p, field.m, v, field.n)
        )
    if profile.r and v % p == 0:
        raise NotApplicableError(
            "gcd(n, p, v_p(m)) = {}: use strict_inequality_case".format(p)
        )
    value = _half_index(field.n, v)
    bound = ore_index(field.poly, p)
    assert bound.exact and bound.lower_bound == value, (field, p, bound)
    return value


class PurePolygonReport(NamedTuple):
    polygon: NewtonPolygon
    index: int
    expected_sides: Tuple[Side, ...]
    expected_index: int

    @property
    def agrees(self) -> bool:
        return self.index == self.expected_index


def _expected_sides(p: int, r: int, v: Valuation) -> Tuple[Side, ...]:
    points = [(p ** j, r - j) for j in range(r + 1)]
    if v is not INF:
        points.append((0, v))
    return principal_sides(points)


def pure_polygon_p_divides_n(field: PureField, p: int,
                             phi: IntPoly) -> PurePolygonReport:
    profile = prime_profile(field, p)
    if not profile.r or profile.s:
        raise NotApplicableError(
            "Need {} | n and {} not dividing m".format(p, p)
        )
    # (x^t - m) = phi Q + R with v_p(R) >= 1
    quotient_target = reduce_mod_p(IntPoly.pure(profile.t, field.m), p)
    if not (quotient_target % reduce_mod_p(phi, p)).is_zero():
        raise NotApplicableError(
            "{} does not divide x^{} - {} modulo {}"
            .format(phi, profile.t, field.m, p)
        )
    polygon = principal_polygon(field.poly, phi, p)
    index = phi.degree * polygon_index(polygon)
    v = profile.v_closed
    top = profile.r if v is INF else min(profile.r, v - 1)
    expected = phi.degree * sum(p ** (profile.r - j) for j in range(1, top + 1))
    report = PurePolygonReport(polygon, index,
                               _expected_sides(p, profile.r, v), expected)
    if not report.agrees:
        warnings.warn("phi-index of {} at {} for {} is {}, closed form gives "
                      "{}".format(field, p, phi, index, expected))
    return report


class StrictBound(NamedTuple):
    """strict is None when the second-order data needed to show
    v_p(ind) > lower is out of reach."""
    lower: int
    strict: Optional[bool]
    ind2: Optional[int]


def strict_inequality_case(field: PureField, p: int) -> StrictBound:
    profile = prime_profile(field, p)
    v = profile.s
    if v == 0 or not profile.r or v % p:
        raise NotApplicableError(
            "Need {0} | m and {0} | gcd(n, v_p(m))".format(p)
        )
    if v >= field.n:
        raise NotApplicableError(
            "v_{}({}) = {} is not below n = {}".format(p, field.m, v, field.n)
        )
    lower = _half_index(field.n, v)
    try:
        extra = ind2(field.poly, order2_data(field.poly, p))
    except OutOfScopeError as err:
        logger.debug("second order unavailable for %s at %d: %s",
                     field, p, err)
        return StrictBound(lower, None, None)
    assert extra >= 1, (field, p, extra)
    return StrictBound(lower, True, extra)


@dataclass(frozen=True)
class CommonIndexEvidence:
    p: int
    f_res: int
    P_f: int
    N_f: int


def _evidence_from_counts(p: int,
                          counts: Dict[int, int]) -> Optional[CommonIndexEvidence]:
    for f in sorted(counts):
        N = count_monic_irreducibles(p, f)
        if counts[f] > N:
            return CommonIndexEvidence(p, f, counts[f], N)
    return None


def common_index_divisor(
    p: int, census: Sequence[Tuple[int, int]], n: int
) -> Optional[CommonIndexEvidence]:
    """census lists (e, f_res) for every prime above p."""
    total = sum(e * f for e, f in census)
    if total != n:
        raise ValueError("Incomplete census at {}: sum e*f = {} != {}"
                         .format(p, total, n))
    return _evidence_from_counts(p, Counter(f for _, f in census))


class ConditionHit(NamedTuple):
    condition: int
    p: int


class ConditionCheck(NamedTuple):
    condition: int
    p: int
    failed: Tuple[str, ...]

    @property
    def holds(self) -> bool:
        return not self.failed


def _checks_at(profile: PrimeProfile, m: int) -> List[ConditionCheck]:
    p, r, t, s, m_p = profile.p, profile.r, profile.t, profile.s, profile.m_p
    if p != 2:
        table = [
            (1, [("v_p(1-m) >= p+1", p_adic_val(1 - m, p) >= p + 1),
                 ("r >= p", r >= p)]),
            (2, [("t odd", t % 2 == 1),
                 ("v_p(1+m) >= p+1", p_adic_val(1 + m, p) >= p + 1)]),
        ]
        if p == 3:
            table.append((3, [("t even", t % 2 == 0),
                              ("v_3(1+m) >= 4", p_adic_val(1 + m, 3) >= 4)]))
        table.append((6, [("r = s", r == s),
                          ("t > 1", t > 1),
                          ("gcd(t, p-1) = 1", gcd(t, p - 1) == 1),
                          ("r >= p", r >= p),
                          ("v_p(m_p^p - m_p) >= p+1",
                           frobenius_defect(m_p, p) >= p + 1)]))
    else:
        table = [
            (4, [("m odd", m % 2 == 1), ("r = 2", r == 2),
                 ("v_2(m-1) >= 4", p_adic_val(m - 1, 2) >= 4)]),
            (5, [("m odd", m % 2 == 1), ("r >= 3", r >= 3),
                 ("v_2(m-1) >= 5", p_adic_val(m - 1, 2) >= 5)]),
            (7, [("r = s = 2", r == s == 2),
                 ("v_2(m_2-1) >= 4", p_adic_val(m_p - 1, 2) >= 4)]),
            (8, [("r = s >= 3", r == s and r >= 3),
                 ("v_2(m_2-1) >= 5", p_adic_val(m_p - 1, 2) >= 5)]),
        ]
    return [ConditionCheck(cond, p,
                           tuple(label for label, ok in hyps if not ok))
            for cond, hyps in table]


def condition_checks(field: PureField) -> List[ConditionCheck]:
    """Every non-monogeneity condition at every p | n, with the
    hypotheses it fails."""
    checks = []
    for p in prime_divisors(field.n):
        checks.extend(_checks_at(prime_profile(field, p), field.m))
    return checks


def theorem_conditions(field: PureField) -> List[ConditionHit]:
    """Arithmetic non-monogeneity conditions satisfied at primes p | n."""
    return [ConditionHit(check.condition, check.p)
            for check in condition_checks(field) if check.holds]


class Certificate(NamedTuple):
    condition: int
    p: int
    evidence: CommonIndexEvidence
    source: str
    # c > 1 when the census was taken in Q(alpha^c)
    subfield: int = 1


def _certain_counts(f: IntPoly, p: int) -> Counter:
    """Residue degrees of primes above p that certainly exist."""
    try:
        entries, _ = order2_census(f, order2_data(f, p))
    except OutOfScopeError:
        pass
    else:
        return certain_primes(entries)
    counts = Counter()
    for phi, l in factor_lifts(f, p):
        if l == 1:
            counts[phi.degree] += 1
            continue
        polygon = principal_polygon(f, phi, p)
        for side in polygon.sides:
            for psi, a in residual_poly(f, polygon, side).poly.factor():
                if a == 1:
                    counts[phi.degree * psi.degree] += 1
    return counts


def census_evidence(f: IntPoly, p: int,
                    **kwargs) -> Tuple[Optional[CommonIndexEvidence], str]:
    """Evidence that p is a common index divisor of Q[x]/(f)."""
    regular, _ = is_p_regular(f, p)
    if regular:
        shape = splitting_shape(f, p)
        return common_index_divisor(p, shape.primes, f.degree), 'ore'
    evidence = _evidence_from_counts(p, _certain_counts(f, p))
    if evidence is not None:
        return evidence, 'polygon'
    try:
        order, _ = oracle.p_maximal_order(f, p, **kwargs)
    except oracle.ScaleLimitError as err:
        warnings.warn("Census of {} at {} is incomplete and the oracle is "
                      "out of scale: {}".format(f, p, err))
        return None, 'none'
    census = oracle.residue_census(order, p)
    return _evidence_from_counts(p, census.as_dict()), 'oracle'


def residue_degree_budget(field: PureField, p: int) -> Optional[int]:
    """gcd(n, v_p(m)) when p | m, else None.

    Every prime above p divides alpha to the order e*v_p(m)/n, so its
    ramification index is a multiple of n/d and the residue degrees of
    the primes above p add up to at most d."""
    s = p_adic_val(field.m, p)
    if not s:
        return None
    return gcd(field.n, s)


def census_cannot_certify(field: PureField, p: int) -> bool:
    d = residue_degree_budget(field, p)
    if d is None:
        return False
    return all(d // f <= count_monic_irreducibles(p, f)
               for f in range(1, d + 1))


def _complete_counts(f: IntPoly, p: int, **kwargs) -> Counter:
    regular, _ = is_p_regular(f, p)
    if regular:
        return Counter(f_res for _, f_res in splitting_shape(f, p).primes)
    order, _ = oracle.p_maximal_order(f, p, **kwargs)
    return Counter(oracle.residue_census(order, p).as_dict())


def subfield_evidence(
    field: PureField, p: int, **kwargs
) -> Tuple[Optional[CommonIndexEvidence], int]:
    """Evidence from a subfield M = Q(alpha^c) with p not dividing c.

    A prime of M above p with residue degree f and gcd(c, p^f - 1) = 1
    has a prime of K above it with the same residue degree, so
    P_f(K) >= P_f(M). Subfields are tried smallest first."""
    for c in sorted(divisors(field.n), reverse=True):
        if c in (1, field.n) or c % p == 0:
            continue
        sub = PureField(field.n // c, field.m)
        if census_cannot_certify(sub, p):
            continue
        try:
            counts = _complete_counts(sub.poly, p, **kwargs)
        except oracle.ScaleLimitError as err:
            logger.debug("subfield %s out of scale at %d: %s", sub, p, err)
            continue
        usable = Counter({f: P for f, P in counts.items()
                          if gcd(c, p ** f - 1) == 1})
        evidence = _evidence_from_counts(p, usable)
        logger.debug("subfield %s at %d: %s", sub, p, evidence)
        if evidence is not None:
            return evidence, c
    return None, 1


def field_census_evidence(
    field: PureField, p: int, **kwargs
) -> Tuple[Optional[CommonIndexEvidence], str, int]:
    """census_evidence for a pure field, with the residue-degree budget
    and subfield descent tried before the oracle on K."""
    if census_cannot_certify(field, p):
        logger.debug("at most %d residue degrees above %d in %s",
                     residue_degree_budget(field, p), p, field)
        return None, 'bound', 1
    f = field.poly
    regular, _ = is_p_regular(f, p)
    if regular:
        shape = splitting_shape(f, p)
        return common_index_divisor(p, shape.primes, f.degree), 'ore', 1
    evidence = _evidence_from_counts(p, _certain_counts(f, p))
    if evidence is not None:
        return evidence, 'polygon', 1
    evidence, c = subfield_evidence(field, p, **kwargs)
    if evidence is not None:
        return evidence, 'subfield', c
    evidence, source = census_evidence(f, p, **kwargs)
    return evidence, source, 1


def non_monogenic_certificate(field: PureField,
                              **kwargs) -> Optional[Certificate]:
    tried = set()
    for hit in theorem_conditions(field):
        if hit.p in tried:
            continue
        tried.add(hit.p)
        evidence, source, c = field_census_evidence(field, hit.p, **kwargs)
        logger.debug("condition %d at %d for %s: %s (%s)",
                     hit.condition, hit.p, field, evidence, source)
        if evidence is not None:
            return Certificate(hit.condition, hit.p, evidence, source, c)
    return None


def verify_certificate(field: PureField, certificate: Certificate,
                       **kwargs) -> bool:
    """Recompute the certificate census with the maximal-order oracle,
    in the subfield the census was taken from."""
    source = PureField(field.n // certificate.subfield, field.m)
    order, _ = oracle.p_maximal_order(source.poly, certificate.p, **kwargs)
    census = oracle.residue_census(order, certificate.p)
    f = certificate.evidence.f_res
    return census[f] > count_monic_irreducibles(certificate.p, f)


class SubstitutionWitness(NamedTuple):
    i: int
    j: int
    g: IntPoly
    integrally_closed: bool


def _is_squarefree_int(a: int) -> bool:
    return all(e == 1 for _, e in factorize(abs(a)))


def monogenic_via_substitution(n: int, a: int,
                               v: int) -> SubstitutionWitness:
    """theta = alpha^i / a^j with v*i - n*j = 1 satisfies theta^n = a."""
    if a in (0, 1, -1) or not _is_squarefree_int(a):
        raise NotApplicableError("{} is not a squarefree integer other "
                                 "than 0, 1, -1".format(a))
    if gcd(v, n) != 1:
        raise NotApplicableError("gcd({}, {}) != 1".format(v, n))
    i = pow(v, -1, n)
    j = (v * i - 1) // n
    closed, _ = integral_closedness_test(PureField(n, a))
    return SubstitutionWitness(i, j, IntPoly.pure(n, a), closed)


def power_decomposition(m: int) -> Optional[Tuple[int, int]]:
    """(a, v) with m = a^v and a squarefree, when such a pair exists."""
    fac = factorize(abs(m))
    exps = {e for _, e in fac}
    if len(exps) != 1:
        return None
    v = exps.pop()
    a = 1
    for q, _ in fac:
        a *= q
    if m < 0:
        if v % 2 == 0:
            return None
        a = -a
    return a, v


class Status(Enum):
    MONOGENIC = 'Monogenic'
    NOT_MONOGENIC = 'NotMonogenic'
    UNDETERMINED = 'Undetermined'


class PrimeReport(NamedTuple):
    p: int
    profile: PrimeProfile
    dedekind: DedekindReport
    index: IndexBound


@dataclass(frozen=True)
class MonogeneityVerdict:
    field: PureField
    status: Status
    witness: Optional[SubstitutionWitness]
    certificate: Optional[Certificate]
    evidence: Tuple[PrimeReport, ...]
    conditions: Tuple[ConditionHit, ...] = ()
    checks: Tuple[ConditionCheck, ...] = ()

    def __post_init__(self):
        assert not (self.witness is not None
                    and self.certificate is not None), self


def prime_report(field: PureField, p: int) -> PrimeReport:
    f = field.poly
    return PrimeReport(p, prime_profile(field, p), dedekind_test(f, p),
                       ore_index(f, p))


def analyze(field: PureField, **kwargs) -> MonogeneityVerdict:
    reports = tuple(prime_report(field, p) for p in pure_field_primes(field))
    closed, failing = integral_closedness_test(field)
    if closed:
        witness = SubstitutionWitness(1, 0, field.poly, True)
        return MonogeneityVerdict(field, Status.MONOGENIC, witness, None,
                                  reports)
    logger.debug("Z[alpha] not integrally closed for %s at %s",
                 field, failing)

    decomposition = power_decomposition(field.m)
    if decomposition is not None and decomposition[1] > 1:
        a, v = decomposition
        try:
            witness = monogenic_via_substitution(field.n, a, v)
        except NotApplicableError as err:
            logger.debug("no substitution for %s: %s", field, err)
        else:
            if witness.integrally_closed:
                return MonogeneityVerdict(field, Status.MONOGENIC, witness,
                                          None, reports)

    checks = tuple(condition_checks(field))
    hits = tuple(ConditionHit(c.condition, c.p) for c in checks if c.holds)
    certificate = non_monogenic_certificate(field, **kwargs)
    status = Status.NOT_MONOGENIC if certificate else Status.UNDETERMINED
    return MonogeneityVerdict(field, status, None, certificate, reports, hits,
                              checks)
