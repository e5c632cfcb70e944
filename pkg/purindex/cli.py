import argparse
import json
import logging
import numbers
import sys
from fractions import Fraction
from multiprocessing import Pool
from typing import Any, Dict, List, Optional, Tuple

from .arith import Infinity, prime_divisors, factorize
from .poly import IntPoly, is_squarefree
from .newton import (
    factor_lifts, principal_polygon, polygon_index, residual_poly
)
from .ore import dedekind_test, ore_index, splitting_shape
from .second_order import (
    OutOfScopeError, order2_data, order2_census, ind2, n2_polygon
)
from .pure import (
    PureField, Status, analyze, integral_closedness_test, pure_field_primes,
    verify_certificate, is_irreducible_pure
)
from . import oracle

logger = logging.getLogger(__name__)

_default_sweep = dict(n_min=2, n_max=8, m_max=60, jobs=1)
_family_m_max = 30


def _jsonable(obj: Any) -> Any:
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, numbers.Integral):
        return int(obj)
    if isinstance(obj, (Fraction, IntPoly, Infinity)):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return str(obj)


def _text(obj: Any, indent: int = 0) -> List[str]:
    pad = '  ' * indent
    lines = []
    if isinstance(obj, dict):
        for key, value in obj.items():
            if isinstance(value, (dict, list)) and value:
                lines.append('{}{}:'.format(pad, key))
                lines.extend(_text(value, indent + 1))
            else:
                lines.append('{}{}: {}'.format(pad, key, value))
    elif isinstance(obj, list):
        for value in obj:
            if isinstance(value, dict):
                lines.append('{}-'.format(pad))
                lines.extend(_text(value, indent + 1))
            else:
                lines.append('{}- {}'.format(pad, value))
    else:
        lines.append('{}{}'.format(pad, obj))
    return lines


def render(report: Dict[str, Any], fmt: str = 'json') -> str:
    data = _jsonable(report)
    if fmt == 'json':
        return json.dumps(data, indent=2)
    return '\n'.join(_text(data))


def _input_poly(args) -> Tuple[IntPoly, Optional[Tuple[int, int]]]:
    """The polynomial of the request and, if it is x^n - m, (n, m)."""
    pure_given = args.n is not None or args.m is not None
    if pure_given == (args.poly is not None):
        raise ValueError("Give either --n and --m, or --poly")
    if pure_given:
        if args.n is None or args.m is None:
            raise ValueError("--n and --m must be given together")
        return IntPoly.pure(args.n, args.m), (args.n, args.m)
    f = IntPoly.from_string(args.poly)
    if not f.is_monic():
        raise ValueError("Polynomial must be monic: {}".format(f))
    if f.degree >= 2 and all(a == 0 for a in f.coeffs[1:-1]):
        return f, (f.degree, -f[0])
    return f, None


def _require_p(args) -> int:
    if args.p is None:
        raise ValueError("--p is required for this command")
    return args.p


def _prime_report(report) -> Dict[str, Any]:
    profile = report.profile
    return {
        'p': report.p,
        'r': profile.r,
        't': profile.t,
        's': profile.s,
        'v_closed': profile.v_closed,
        'dedekind': {
            'divides_index': report.dedekind.divides_index,
            'failing': [phi for phi, _ in report.dedekind.failing_factors],
        },
        'index': {
            'lower_bound': report.index.lower_bound,
            'exact': report.index.exact,
        },
    }


def _oracle_index_zero(f: IntPoly, primes: List[int]) -> bool:
    return all(oracle.p_maximal_order(f, p)[1] == 0 for p in primes)


class Command:
    synonyms = None

    @classmethod
    def match(cls, name: str) -> bool:
        return name in cls.synonyms

    @staticmethod
    def add_arguments(parser: argparse.ArgumentParser) -> None:
        parser.add_argument('--n', type=int)
        parser.add_argument('--m', type=int)
        parser.add_argument('--poly')
        parser.add_argument('--p', type=int)

    @classmethod
    def run(cls, args) -> Dict[str, Any]:
        raise NotImplementedError  # pragma: no cover


class Analyze(Command):
    synonyms = ['analyze', 'analyse', 'verdict']

    @staticmethod
    def add_arguments(parser):
        Command.add_arguments(parser)
        parser.add_argument('--verify', choices=['oracle'])

    @classmethod
    def run(cls, args):
        _, nm = _input_poly(args)
        if nm is None:
            raise ValueError("analyze needs a pure polynomial x^n - m")
        field = PureField(*nm)
        verdict = analyze(field)
        witness = None
        if verdict.witness is not None:
            w = verdict.witness
            witness = {'i': w.i, 'j': w.j, 'g': w.g}
        certificate = None
        if verdict.certificate is not None:
            c = verdict.certificate
            certificate = {
                'condition': c.condition,
                'p': c.p,
                'f_res': c.evidence.f_res,
                'P_f': c.evidence.P_f,
                'N_f': c.evidence.N_f,
                'source': c.source,
                'subfield': c.subfield,
            }
        report = {
            'n': field.n,
            'm': field.m,
            'status': verdict.status.value,
            'witness': witness,
            'certificate': certificate,
            'primes': [_prime_report(r) for r in verdict.evidence],
            'conditions': [{'condition': h.condition, 'p': h.p}
                           for h in verdict.conditions],
            'checks': [{'condition': c.condition, 'p': c.p,
                        'holds': c.holds, 'failed': list(c.failed)}
                       for c in verdict.checks],
        }
        if args.verify == 'oracle':
            report['verified'] = cls._verify(verdict)
        return report

    @staticmethod
    def _verify(verdict) -> Optional[bool]:
        if verdict.status is Status.NOT_MONOGENIC:
            return verify_certificate(verdict.field, verdict.certificate)
        if verdict.status is Status.MONOGENIC:
            g = verdict.witness.g
            primes = prime_divisors(abs(g.degree * g[0]))
            return _oracle_index_zero(g, primes)
        return None


class Polygon(Command):
    synonyms = ['polygon', 'newton', 'newton-polygon']

    @staticmethod
    def add_arguments(parser):
        Command.add_arguments(parser)
        parser.add_argument('--phi')

    @classmethod
    def run(cls, args):
        f, _ = _input_poly(args)
        p = _require_p(args)
        if args.phi is not None:
            phis = [IntPoly.from_string(args.phi)]
        else:
            phis = [phi for phi, l in factor_lifts(f, p) if l > 1]
        polygons = []
        for phi in phis:
            polygon = principal_polygon(f, phi, p)
            sides = []
            for side in polygon.sides:
                residual = residual_poly(f, polygon, side).poly
                sides.append({
                    'slope': [side.h, side.e],
                    'length': side.length,
                    'height': side.height,
                    'degree': side.degree,
                    'residual': str(residual),
                    'squarefree': is_squarefree(residual),
                })
            polygons.append({
                'phi': phi,
                'p': p,
                'vertices': [list(v) for v in polygon.vertices],
                'sides': sides,
                'index': phi.degree * polygon_index(polygon),
            })
        return {'f': f, 'p': p, 'polygons': polygons}


class Dedekind(Command):
    synonyms = ['dedekind']

    @classmethod
    def run(cls, args):
        f, _ = _input_poly(args)
        report = dedekind_test(f, _require_p(args))
        return {
            'f': f,
            'p': report.p,
            'factors': [{'phi': phi, 'multiplicity': l}
                        for phi, l in report.factors],
            'M': report.M,
            'divides_index': report.divides_index,
            'failing': [phi for phi, _ in report.failing_factors],
        }


class Index(Command):
    synonyms = ['index', 'ore']

    @classmethod
    def run(cls, args):
        f, nm = _input_poly(args)
        if args.p is not None:
            primes = [args.p]
        elif nm is not None:
            primes = prime_divisors(abs(nm[0] * nm[1]))
        else:
            primes = [q for q, _ in factorize(abs(oracle.discriminant(f)))]
        return {'f': f, 'primes': [_index_report(f, p) for p in primes]}


def _order2_report(f: IntPoly, p: int) -> Optional[Dict[str, Any]]:
    try:
        data = order2_data(f, p)
        entries, unresolved = order2_census(f, data)
        extra = ind2(f, data)
    except OutOfScopeError as err:
        logger.debug("no order-2 block for %s at %d: %s", f, p, err)
        return None
    return {
        'e1': data.e1,
        'phi2': data.phi2,
        'vertices': [list(v) for v in n2_polygon(f, data).vertices],
        'ind2': extra,
        'census': [{'count': c.count, 'degree': c.degree, 'e': c.e,
                    'f_res': c.f_res} for c in entries],
        'unresolved': len(unresolved),
    }


def _index_report(f: IntPoly, p: int) -> Dict[str, Any]:
    bound = ore_index(f, p)
    shapes = None
    if bound.exact:
        shapes = [list(ef) for ef in splitting_shape(f, p).primes]
    report = {
        'p': p,
        'dedekind': dedekind_test(f, p).divides_index,
        'index_lower': bound.lower_bound,
        'index_exact': bound.exact,
        'shapes': shapes,
        'per_phi': [{'phi': phi, 'index': v} for phi, v in bound.per_phi],
    }
    if not bound.exact:
        block = _order2_report(f, p)
        if block is not None:
            report['order2'] = block
    return report


class Oracle(Command):
    synonyms = ['oracle', 'round2', 'maximal-order']

    @classmethod
    def run(cls, args):
        f, _ = _input_poly(args)
        p = _require_p(args)
        order, index = oracle.p_maximal_order(f, p)
        census = oracle.residue_census(order, p)
        return {
            'p': p,
            'index_val': index,
            'census': [{'f_res': k, 'P_f': v} for k, v in census.counts],
            'f': f,
            'disc_val': oracle.disc_valuation(f, p),
        }


def _sweep_item(task: Tuple[int, int, bool]) -> List[Dict[str, Any]]:
    """Disagreements between polygon data and the oracle for x^n - m."""
    n, m, check = task
    if m in (0, 1) or not is_irreducible_pure(n, m):
        return []
    field = PureField(n, m)
    f = field.poly
    mismatches = []
    indices = {}
    for p in pure_field_primes(field):
        bound = ore_index(f, p)
        if not check:
            continue
        try:
            order, val = oracle.p_maximal_order(f, p)
        except oracle.ScaleLimitError:
            continue
        indices[p] = val
        if val < bound.lower_bound or (bound.exact
                                       and val != bound.lower_bound):
            mismatches.append({'n': n, 'm': m, 'p': p,
                               'polygon': bound.lower_bound,
                               'exact': bound.exact, 'oracle': val})
        if bound.exact:
            census = oracle.residue_census(order, p).as_dict()
            shape = dict(splitting_shape(f, p).counts())
            if census != shape:
                mismatches.append({'n': n, 'm': m, 'p': p,
                                   'shape': shape, 'census': census})
        else:
            second = _second_order_total(f, p, bound.lower_bound)
            if second is not None and (second[0] > val or
                                       (second[1] and second[0] != val)):
                mismatches.append({'n': n, 'm': m, 'p': p,
                                   'ind1+ind2': second[0], 'oracle': val})
    if check and len(indices) == len(pure_field_primes(field)):
        closed, _ = integral_closedness_test(field)
        if closed != all(v == 0 for v in indices.values()):
            mismatches.append({'n': n, 'm': m, 'closed': closed,
                               'oracle': indices})
    if check:
        verdict = analyze(field)
        if verdict.witness is not None and verdict.certificate is not None:
            mismatches.append({'n': n, 'm': m, 'verdict': 'both'})
        if (verdict.certificate is not None
                and not verify_certificate(field, verdict.certificate)):
            mismatches.append({'n': n, 'm': m, 'verdict': 'unsound',
                               'p': verdict.certificate.p})
    return mismatches


def _second_order_total(f: IntPoly, p: int,
                        ind1: int) -> Optional[Tuple[int, bool]]:
    """ind1 + ind2, and whether every R_2 is squarefree."""
    try:
        data = order2_data(f, p)
        _, unresolved = order2_census(f, data)
        return ind1 + ind2(f, data), not unresolved
    except OutOfScopeError:
        return None


def _family_item(task: Tuple[int, int]) -> Optional[Dict[str, Any]]:
    n, m = task
    if not is_irreducible_pure(n, m):
        return None
    f = IntPoly.pure(n, m)
    row = {'m': m}
    for p in (2, 3):
        bound = ore_index(f, p)
        row['v{}'.format(p)] = bound.lower_bound
        row['exact{}'.format(p)] = bound.exact
    return row


def _pool_map(func, tasks, jobs: int) -> list:
    if jobs <= 1:
        return list(map(func, tasks))
    with Pool(jobs) as pool:
        return pool.map(func, tasks)


class Sweep(Command):
    synonyms = ['sweep']

    @staticmethod
    def add_arguments(parser):
        parser.add_argument('--n-min', type=int,
                            default=_default_sweep['n_min'])
        parser.add_argument('--n-max', type=int,
                            default=_default_sweep['n_max'])
        parser.add_argument('--m-max', type=int,
                            default=_default_sweep['m_max'])
        parser.add_argument('--check', choices=['oracle'])
        parser.add_argument('--jobs', type=int,
                            default=_default_sweep['jobs'])
        parser.add_argument('--family', type=int)

    @classmethod
    def run(cls, args):
        if args.family is not None:
            m_max = min(args.m_max, _family_m_max)
            tasks = [(args.family, m) for m in range(-m_max, m_max + 1)
                     if m not in (0, 1, -1)]
            rows = [row for row in _pool_map(_family_item, tasks, args.jobs)
                    if row is not None]
            return {'n': args.family, 'rows': rows}
        if args.n_min < 2 or args.n_max < args.n_min:
            raise ValueError("Need 2 <= n-min <= n-max")
        check = args.check == 'oracle'
        tasks = [(n, m, check)
                 for n in range(args.n_min, args.n_max + 1)
                 for m in range(-args.m_max, args.m_max + 1)]
        mismatches = [item for items in _pool_map(_sweep_item, tasks,
                                                  args.jobs)
                      for item in items]
        return {'checked': len(tasks), 'mismatches': mismatches}


_all_commands = [Analyze, Polygon, Dedekind, Index, Oracle, Sweep]


def get_command(name: str):
    for command in _all_commands:
        if command.match(name):
            return command
    raise ValueError("Unknown command name: {}".format(name))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='purindex',
        description="Index and monogeneity of pure number fields."
    )
    sub = parser.add_subparsers(dest='command')
    sub.required = True
    for command in _all_commands:
        name, aliases = command.synonyms[0], command.synonyms[1:]
        cmd_parser = sub.add_parser(name, aliases=aliases)
        command.add_arguments(cmd_parser)
        cmd_parser.add_argument('--format', choices=['json', 'text'],
                                default='json')
        cmd_parser.add_argument('-v', '--verbose', action='store_true')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, stream=sys.stderr)
    try:
        report = get_command(args.command).run(args)
    except ValueError as err:
        print("purindex: error: {}".format(err), file=sys.stderr)
        return 2
    print(render(report, args.format))
    return 0
