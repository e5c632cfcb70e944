import json

import pytest

from fractions import Fraction

from purindex.cli import main, get_command, render, Analyze, Sweep


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_json(capsys):
    code, out, _ = _run(capsys, 'analyze', '--n', '10', '--m', '1000')
    assert code == 0
    report = json.loads(out)
    assert report['status'] == 'Monogenic'
    assert report['witness'] == {'i': 7, 'j': 2, 'g': 'x^10 - 10'}
    assert report['certificate'] is None
    assert [p['p'] for p in report['primes']] == [2, 5]
    assert list(report) == ['n', 'm', 'status', 'witness', 'certificate',
                            'primes', 'conditions', 'checks']


def test_analyze_is_byte_stable(capsys):
    _, first, _ = _run(capsys, 'analyze', '--n', '6', '--m', '-5')
    _, second, _ = _run(capsys, 'analyze', '--poly', 'x^6 + 5')
    assert first == second


def test_analyze_reducible(capsys):
    code, out, err = _run(capsys, 'analyze', '--n', '4', '--m', '4')
    assert code == 2
    assert out == ''
    assert 'x^2 - 2' in err


def test_analyze_verify(capsys):
    code, out, _ = _run(capsys, 'analyze', '--n', '10', '--m', '1000',
                        '--verify', 'oracle')
    assert code == 0
    assert json.loads(out)['verified'] is True


def test_analyze_certificate_json(capsys):
    code, out, _ = _run(capsys, 'analyze', '--n', '48', '--m', '528')
    assert code == 0
    report = json.loads(out)
    assert report['status'] == 'NotMonogenic'
    certificate = report['certificate']
    assert list(certificate)[:5] == ['condition', 'p', 'f_res', 'P_f', 'N_f']
    assert (certificate['condition'], certificate['p']) == (8, 2)
    assert certificate['P_f'] > certificate['N_f'] == 2
    assert certificate['subfield'] == 3


def test_analyze_records_failed_hypotheses(capsys):
    code, out, _ = _run(capsys, 'analyze', '--poly', 'x^135 + 2214')
    assert code == 0
    report = json.loads(out)
    assert report['status'] == 'Undetermined'
    assert {'condition': 6, 'p': 3} in report['conditions']
    assert {'condition': 3, 'p': 3, 'holds': False,
            'failed': ['t even', 'v_3(1+m) >= 4']} in report['checks']


def test_analyze_needs_pure_input(capsys):
    code, _, err = _run(capsys, 'analyze', '--poly', 'x^3 + x + 1')
    assert code == 2
    assert 'pure' in err


@pytest.mark.parametrize("argv",
                         [['dedekind', '--n', '4', '--poly', 'x^4 - 2',
                           '--p', '2'],
                          ['dedekind', '--n', '4', '--p', '2'],
                          ['polygon', '--n', '4', '--m', '2'],
                          ['oracle', '--poly', 'x^2', '--p', '2'],
                          ['oracle', '--poly', 'x^3 - x^2', '--p', '3']])
def test_bad_requests(capsys, argv):
    code, out, err = _run(capsys, *argv)
    assert code == 2
    assert out == ''
    assert err.startswith('purindex: error:')


def test_oracle_rejects_repeated_factor(capsys):
    _, _, err = _run(capsys, 'oracle', '--poly', 'x^3 - x^2', '--p', '3')
    assert 'squarefree' in err


def test_unknown_format_exits_2():
    with pytest.raises(SystemExit) as excinfo:
        main(['analyze', '--n', '4', '--m', '3', '--format', 'xml'])
    assert excinfo.value.code == 2


def test_polygon(capsys):
    code, out, _ = _run(capsys, 'polygon', '--poly', 'x^14 - 41', '--p', '2',
                        '--phi', 'x^3+x+1')
    assert code == 0
    report = json.loads(out)
    [polygon] = report['polygons']
    assert list(polygon) == ['phi', 'p', 'vertices', 'sides', 'index']
    assert polygon['p'] == 2
    assert polygon['vertices'] == [[0, 2], [2, 0]]
    assert polygon['index'] == 3
    [side] = polygon['sides']
    assert list(side) == ['slope', 'length', 'height', 'degree', 'residual',
                          'squarefree']
    assert side['slope'] == [1, 1]
    assert (side['length'], side['height'], side['degree']) == (2, 2, 2)


def test_polygon_all_factors(capsys):
    code, out, _ = _run(capsys, 'polygon', '--n', '10', '--m', '1000',
                        '--p', '5')
    report = json.loads(out)
    assert [p['phi'] for p in report['polygons']] == ['x']
    side = report['polygons'][0]['sides'][0]
    assert side['slope'] == [3, 10]
    assert (side['length'], side['height']) == (10, 3)
    assert side['residual'] == 'y + 2'
    assert side['squarefree'] is True


def test_dedekind(capsys):
    code, out, _ = _run(capsys, 'dedekind', '--n', '10', '--m', '10',
                        '--p', '2')
    report = json.loads(out)
    assert report['divides_index'] is False
    assert report['factors'] == [{'phi': 'x', 'multiplicity': 10}]


def test_index(capsys):
    code, out, _ = _run(capsys, 'index', '--n', '10', '--m', '1000')
    report = json.loads(out)
    primes = report['primes']
    assert [(r['p'], r['index_lower'], r['index_exact'])
            for r in primes] == [(2, 9, True), (5, 9, True)]
    for r in primes:
        assert list(r)[:5] == ['p', 'dedekind', 'index_lower', 'index_exact',
                               'shapes']
        assert r['dedekind'] is True
        assert r['shapes'] == [[10, 1]]
        assert 'order2' not in r


def test_index_order2_block(capsys):
    code, out, _ = _run(capsys, 'index', '--n', '4', '--m', '12', '--p', '2')
    assert code == 0
    [r] = json.loads(out)['primes']
    assert r['index_exact'] is False
    assert r['shapes'] is None
    block = r['order2']
    assert list(block)[:5] == ['e1', 'phi2', 'vertices', 'ind2', 'census']
    assert block['e1'] == 2
    assert block['phi2'] == 'x^2 - 6'
    assert block['ind2'] == 1
    assert r['index_lower'] == 2


def test_index_general_polynomial(capsys):
    code, out, _ = _run(capsys, 'index', '--poly', 'x^2 + x + 1')
    report = json.loads(out)
    assert [r['p'] for r in report['primes']] == [3]
    assert report['primes'][0]['shapes'] == [[2, 1]]


def test_oracle(capsys):
    code, out, _ = _run(capsys, 'oracle', '--poly', 'x^2 - 17', '--p', '2')
    report = json.loads(out)
    assert list(report)[:3] == ['p', 'index_val', 'census']
    assert report['index_val'] == 1
    assert report['disc_val'] == 2
    assert report['census'] == [{'f_res': 1, 'P_f': 2}]


def test_text_format(capsys):
    code, out, _ = _run(capsys, 'dedekind', '--n', '10', '--m', '1000',
                        '--p', '5', '--format', 'text')
    assert code == 0
    assert 'divides_index: True' in out.splitlines()


def test_sweep(capsys):
    code, out, _ = _run(capsys, 'sweep', '--n-max', '4', '--m-max', '12',
                        '--check', 'oracle')
    assert code == 0
    report = json.loads(out)
    assert report['mismatches'] == []
    assert report['checked'] == 3 * 25


def test_sweep_second_order_instances(capsys):
    code, out, _ = _run(capsys, 'sweep', '--n-min', '4', '--n-max', '6',
                        '--m-max', '200', '--check', 'oracle')
    assert code == 0
    assert json.loads(out)['mismatches'] == []


def test_sweep_family(capsys):
    code, out, _ = _run(capsys, 'sweep', '--family', '12', '--m-max', '5')
    report = json.loads(out)
    assert report['n'] == 12
    ms = [row['m'] for row in report['rows']]
    assert 4 not in ms and -4 not in ms
    assert 2 in ms


@pytest.mark.slow
def test_sweep_parallel_matches_serial(capsys):
    _, serial, _ = _run(capsys, 'sweep', '--n-max', '5', '--m-max', '20',
                        '--check', 'oracle')
    _, parallel, _ = _run(capsys, 'sweep', '--n-max', '5', '--m-max', '20',
                          '--check', 'oracle', '--jobs', '2')
    assert serial == parallel
    assert json.loads(serial)['mismatches'] == []


def test_get_command():
    assert get_command('analyse') is Analyze
    assert get_command('sweep') is Sweep
    with pytest.raises(ValueError):
        get_command('plot')


def test_render_keeps_integers():
    data = json.loads(render({'big': 2 ** 80, 'flag': False, 'none': None,
                              'slope': Fraction(-3, 10)}))
    assert data == {'big': 2 ** 80, 'flag': False, 'none': None,
                    'slope': '-3/10'}
