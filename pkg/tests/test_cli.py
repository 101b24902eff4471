import csv
import io
import json
import os

import pytest
from hypothesis import given
from hypothesis import strategies as st

import szilardsim
from szilardsim import cli
from szilardsim.cli import BernoulliTerm
from szilardsim.cli import DetTerm
from szilardsim.cli import ExplicitTerm
from szilardsim.cli import MixSpec
from szilardsim.cli import UniformTerm
from szilardsim.cli import format_spec
from szilardsim.cli import make_parser
from szilardsim.cli import parse_spec
from szilardsim.cli import run
from szilardsim.cli import to_distribution
from szilardsim.errors import ArityMismatch
from szilardsim.errors import DuplicateOutcome
from szilardsim.errors import InvariantViolation
from szilardsim.errors import ParseError
from szilardsim.errors import ProbabilityOutOfRange
from szilardsim.errors import WeightSumError
from szilardsim.probdist import ExplicitDistribution
from szilardsim.probdist import MixtureOfProducts

CASES = os.path.join(os.path.dirname(szilardsim.__file__), 'cases')


def basic_run(*argv):
    stdout = io.StringIO()
    stderr = io.StringIO()
    code = run(list(argv), stdout=stdout, stderr=stderr)
    return code, stdout.getvalue(), stderr.getvalue()


def csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_parse_terms():
    assert parse_spec('bernoulli(0.7)^1000') == BernoulliTerm(q=0.7, n=1000)
    assert parse_spec('det(LRRL)') == DetTerm(bits='LRRL')
    assert parse_spec('uniform^3') == UniformTerm(n=3)
    assert parse_spec('explicit{LL: 0.5, RR: 0.5}') == ExplicitTerm(
        pairs=[('LL', 0.5), ('RR', 0.5)])


def test_parse_mixture():
    spec = parse_spec('mix(0.5: bernoulli(1)^4, 0.5: uniform^4)')
    assert spec == MixSpec(weighted=[(0.5, BernoulliTerm(q=1.0, n=4)),
                                     (0.5, UniformTerm(n=4))])


def test_parse_whitespace_and_exponents():
    spec = parse_spec('  explicit{ L : 1e-1 ,R:.9 }')
    assert spec == ExplicitTerm(pairs=[('L', 0.1), ('R', 0.9)])


@pytest.mark.parametrize('text', [
    'bernoulli(0.7)^',
    'mix(1.0: uniform^2)',
    'det(LXR)',
    'uniform^3 uniform^3',
    'explicit{}',
    '',
])
def test_parse_errors(text):
    with pytest.raises(ParseError) as info:
        parse_spec(text)
    assert info.value.line == 1
    assert info.value.col >= 1


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_spec('mix(0.5: uniform^2,\n 0.5: bogus^2)')
    assert info.value.line == 2


def test_semantic_errors():
    with pytest.raises(ProbabilityOutOfRange):
        parse_spec('bernoulli(1.5)^3')
    with pytest.raises(WeightSumError):
        parse_spec('mix(0.5: uniform^2, 0.4: det(LL))')
    with pytest.raises(ArityMismatch):
        parse_spec('mix(0.5: uniform^2, 0.5: uniform^3)')
    with pytest.raises(DuplicateOutcome):
        parse_spec('explicit{LL: 0.5, LL: 0.5}')


def bits(n):
    return st.text(alphabet='LR', min_size=n, max_size=n)


@st.composite
def specs(draw):
    n = draw(st.integers(min_value=1, max_value=6))
    probability = st.floats(min_value=0.0, max_value=1.0)
    term = st.one_of(
        st.builds(BernoulliTerm, q=probability, n=st.just(n)),
        st.builds(DetTerm, bits=bits(n)),
        st.builds(UniformTerm, n=st.just(n)),
        st.builds(ExplicitTerm,
                  pairs=st.lists(st.tuples(bits(n), probability), min_size=1,
                                 max_size=4, unique_by=lambda pair: pair[0])))
    if not draw(st.booleans()):
        return draw(term)
    weight = draw(st.floats(min_value=0.01, max_value=0.99))
    return MixSpec(weighted=[(weight, draw(term)), (1.0 - weight, draw(term))])


@given(specs())
def test_format_round_trip(spec):
    assert parse_spec(format_spec(spec)) == spec


def test_to_distribution_keeps_products_structured():
    half_known = to_distribution(parse_spec(
        'mix(0.5: bernoulli(1.0)^1000, 0.5: uniform^1000)'))
    assert isinstance(half_known, MixtureOfProducts)
    assert half_known.n == 1000
    assert isinstance(to_distribution(parse_spec('det(LRL)')), ExplicitDistribution)


def test_to_distribution_tabulates_mixed_terms():
    distribution = to_distribution(parse_spec(
        'mix(0.5: det(LR), 0.5: explicit{LR: 0.5, RL: 0.5})'))
    assert isinstance(distribution, ExplicitDistribution)
    assert distribution.probability('LR') == pytest.approx(0.75)
    assert distribution.probability('RL') == pytest.approx(0.25)


def test_entropy_worked_example_file():
    code, out, _ = basic_run('entropy', '--spec-file',
                             os.path.join(CASES, 'worked_example.txt'),
                             '--epsilon', '0.00002')
    assert code == 0
    document = json.loads(out)
    assert document['h_max'] == 2.0
    assert document['h_min'] == 1.0
    assert document['h_max_smooth'] == 1.0


def test_spec_file_comments(tmp_path):
    case = tmp_path / 'pair.txt'
    case.write_text('// perfectly correlated pair\nexplicit{LL: 0.5,\n RR: 0.5}\n')
    code, out, _ = basic_run('entropy', '--spec-file', str(case))
    assert code == 0
    assert json.loads(out)['h_max'] == 1.0


def test_missing_spec_file(tmp_path):
    code, _, err = basic_run('entropy', '--spec-file',
                             str(tmp_path / 'absent.txt'))
    assert code == 1
    assert json.loads(err)['error']['code'] == 'io'


def test_work_point_mass():
    code, out, _ = basic_run('work', '--spec', 'det(LLLL)')
    assert code == 0
    document = json.loads(out)
    assert document['min_work']['bits'] == 4.0
    assert document['bennett']['bits'] == 4.0
    assert document['max_work']['bits'] > 4.0
    assert len(document['temperature_sensitivity']) == 3


def test_work_zero_epsilon():
    code, out, _ = basic_run('work', '--spec', 'explicit{LL: 0.5, RR: 0.5}',
                             '--epsilon', '0')
    assert code == 0
    document = json.loads(out)
    assert document['min_work']['bits'] == 1.0
    assert document['max_work'] is None
    assert all(row['max_work_eV'] is None
               for row in document['temperature_sensitivity'])
    assert basic_run('table1', '--epsilon', '0')[0] == 1


def test_work_csv_is_one_row():
    code, out, _ = basic_run('work', '--spec', 'det(LLLL)', '--format', 'csv')
    assert code == 0
    rows = csv_rows(out)
    assert len(rows) == 1
    assert rows[0]['min_work.bits'] == '4'


def test_error_envelope():
    code, out, err = basic_run('work', '--spec', 'bernoulli(1.5)^3')
    assert code == 1
    assert out == ''
    error = json.loads(err)['error']
    assert error['code'] == 'probability_out_of_range'
    assert error['kind'] == 'ProbabilityOutOfRange'


def test_parse_error_envelope():
    code, _, err = basic_run('entropy', '--spec', 'uniform^')
    assert code == 1
    error = json.loads(err)['error']
    assert error['code'] == 'parse_error'
    assert error['line'] == 1


def test_usage_errors():
    assert basic_run('work')[0] == 1
    assert basic_run('game', '--spec', 'uniform^2', '--strategy', 'psychic')[0] == 1
    assert basic_run('entropy', '--spec', 'uniform^2', '--epsilon', '1.5')[0] == 1
    code, _, err = basic_run('game', '--spec', 'uniform^2', '--strategy',
                             'gambler')
    assert code == 1
    assert json.loads(err)['error']['code'] == 'configuration'


def test_invariant_violation_exit_code(monkeypatch):
    def broken(distribution, epsilon):
        raise InvariantViolation('h_min exceeds h_max')
    monkeypatch.setattr(cli, 'cmd_entropy', broken)
    code, _, err = basic_run('entropy', '--spec', 'uniform^2')
    assert code == 2
    assert json.loads(err[err.index('{'):])['error']['code'] == 'invariant_violation'


def test_unexpected_error_exit_code(monkeypatch):
    def broken(distribution, epsilon):
        raise ZeroDivisionError('division by zero')
    monkeypatch.setattr(cli, 'cmd_entropy', broken)
    code, out, err = basic_run('entropy', '--spec', 'uniform^2')
    assert code == 2
    assert out == ''
    error = json.loads(err[err.index('{\n  "error"'):])['error']
    assert error['code'] == 'internal'
    assert error['kind'] == 'ZeroDivisionError'


def test_game_riskfree():
    code, out, _ = basic_run('game', '--spec', 'explicit{LL: 0.5, RR: 0.5}',
                             '--samples', '2000', '--epsilon', '0.01')
    assert code == 0
    document = json.loads(out)
    assert document['strategy']['committed_bits'] == 1
    assert document['exact']['success_prob'] == 1.0
    assert document['monte_carlo']['success_rate'] == 1.0
    assert document['violations'] == []
    assert document['theorem_bounds']['n'] == 2


def test_game_gambler_zero_epsilon():
    code, out, _ = basic_run('game', '--spec', 'uniform^3', '--strategy',
                             'gambler', '--bets', '2', '--epsilon', '0',
                             '--samples', '4000', '--seed', '3')
    assert code == 0
    document = json.loads(out)
    assert document['exact']['success_prob'] == 0.25
    assert document['theorem_bounds'] is None
    assert abs(document['monte_carlo']['success_rate'] - 0.25) < 0.05


def test_game_replays_seed():
    argv = ('game', '--spec-file', os.path.join(CASES, 'worked_example.txt'),
            '--strategy', 'thermodynamic', '--samples', '3000', '--seed', '42')
    assert basic_run(*argv) == basic_run(*argv)


def test_table1():
    code, out, _ = basic_run('table1')
    assert code == 0
    rows = csv_rows(out)
    assert [row['row'] for row in rows] == ['1', '2', '3', '4']
    assert rows[0]['min_work_bits'] == rows[0]['max_work_bits']
    assert 1.1 <= float(rows[1]['min_work_eV']) <= 1.35
    assert float(rows[1]['max_work_eV']) == pytest.approx(3.5, abs=0.35)
    assert float(rows[2]['min_work_bits']) <= 2.0
    assert rows[3]['min_work_bits'] == '999'


def test_table1_json():
    code, out, _ = basic_run('table1', '--boxes', '50', '--format', 'json')
    assert code == 0
    document = json.loads(out)
    assert len(document) == 4
    assert document[3]['min_work_bits'] == 49.0


def test_figure3_is_reproducible():
    argv = ('figure3', '--sizes', '100,200')
    first = basic_run(*argv)
    assert first[0] == 0
    assert first == basic_run(*argv)
    assert first[1].startswith('n,h_min_smooth,shannon,h_max_smooth,epsilon,p\n')
    rows = csv_rows(first[1])
    assert [row['n'] for row in rows] == ['100', '200']
    for row in rows:
        assert (float(row['h_min_smooth']) < float(row['shannon'])
                < float(row['h_max_smooth']))


def test_figure3_bad_sizes():
    assert basic_run('figure3', '--sizes', '100,many')[0] == 1


def test_scan_epsilon():
    code, out, _ = basic_run('scan-epsilon', '--spec', 'bernoulli(0.7)^200')
    assert code == 0
    rows = csv_rows(out)
    assert len(rows) == 10
    assert float(rows[0]['epsilon']) == pytest.approx(5e-5)


def test_oracle_is_hidden():
    assert 'oracle' not in make_parser().format_help()
    code, out, _ = basic_run('oracle', '--spec', 'explicit{LL: 0.5, RR: 0.5}',
                             '--epsilon', '0')
    assert code == 0
    document = json.loads(out)
    assert document['brute_hmax_smooth'] == 1.0
    assert document['strategy_search']['work']['bits'] == 1.0
