"""This module contains the command-line front end.

Distributions are given in a small spec language::

    spec   := term | "mix(" wterm ("," wterm)+ ")"
    wterm  := number ":" term
    term   := "bernoulli(" number ")" "^" integer | "det(" [LR]+ ")"
            | "uniform" "^" integer | "explicit{" pair ("," pair)* "}"
    pair   := [LR]+ ":" number

Every command writes JSON (sorted keys) or CSV (comma separated, Unix
newlines) to stdout, with numbers rendered to
:data:`~szilardsim.constants.SIGNIFICANT_DIGITS` significant digits. Errors
go to stderr as a JSON envelope; the exit code is 1 for bad input and 2 for
an internal invariant violation.

.. autosummary::

    SpecNode
    BernoulliTerm
    DetTerm
    UniformTerm
    ExplicitTerm
    MixSpec
    CommandParser
"""
import argparse
import csv
import json
import logging
import sys

import numpy as np
from pyparsing import Group
from pyparsing import Keyword
from pyparsing import OneOrMore
from pyparsing import ParseBaseException
from pyparsing import Regex
from pyparsing import StringEnd
from pyparsing import Suppress
from pyparsing import Word
from pyparsing import ZeroOrMore
from pyparsing import nums

from szilardsim import __version__
from szilardsim.constants import DEFAULT_EPSILON
from szilardsim.constants import DEFAULT_SAMPLES
from szilardsim.constants import DEFAULT_SEED
from szilardsim.constants import EXPLICIT_SUPPORT_CAP
from szilardsim.constants import FIGURE3_BIAS
from szilardsim.constants import FIGURE3_SIZES
from szilardsim.constants import NORMALIZATION_TOLERANCE
from szilardsim.constants import ROOM_TEMPERATURE
from szilardsim.constants import SIGNIFICANT_DIGITS
from szilardsim.constants import STRATEGY_SEARCH_MAX_N
from szilardsim.constants import TABLE1_BOXES
from szilardsim.constants import TABLE1_EPSILON
from szilardsim.entropy import smooth_report
from szilardsim.errors import ArityMismatch
from szilardsim.errors import BadOutcomeLength
from szilardsim.errors import ConfigurationError
from szilardsim.errors import DuplicateOutcome
from szilardsim.errors import InvariantViolation
from szilardsim.errors import ParseError
from szilardsim.errors import ProbabilityOutOfRange
from szilardsim.errors import SzilardSimError
from szilardsim.errors import WeightSumError
from szilardsim.game import GameConfig
from szilardsim.game import build_gambler_strategy
from szilardsim.game import build_riskfree_strategy
from szilardsim.game import epsilon_scan
from szilardsim.game import exact_evaluate
from szilardsim.game import monte_carlo
from szilardsim.game import table1_rows
from szilardsim.game import temperature_sensitivity
from szilardsim.game import theorem_violations
from szilardsim.game import thermodynamic_strategy
from szilardsim.game import work_bounds
from szilardsim.game import work_unit
from szilardsim.oracle import brute_hmax_smooth
from szilardsim.oracle import brute_hmin_smooth
from szilardsim.oracle import exhaustive_strategy_search
from szilardsim.probdist import ExplicitDistribution
from szilardsim.probdist import explicit_of
from szilardsim.probdist import iid
from szilardsim.probdist import make_deterministic
from szilardsim.probdist import make_explicit
from szilardsim.probdist import mixture

logger = logging.getLogger(__name__)

STRATEGIES = ('riskfree', 'gambler', 'thermodynamic')
"""Strategies the ``game`` command can build"""


class SpecNode(object):
    """Base of the spec AST: nodes compare equal when their fields do"""
    def key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.key() == other.key()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((type(self).__name__, self.key()))

    def __repr__(self):
        return '%s(%s)' % (type(self).__name__, self.format())


class BernoulliTerm(SpecNode):
    """``bernoulli(q)^n``: n i.i.d. boxes, each L with probability q"""
    def __init__(self, q, n):
        self.q = q
        self.n = n

    def key(self):
        return (self.q, self.n)

    def validate(self):
        if not 0 <= self.q <= 1:
            raise ProbabilityOutOfRange('bernoulli(%r): q is not in [0, 1]'
                                        % self.q)
        if self.n < 1:
            raise BadOutcomeLength('bernoulli needs at least one box')

    def product(self):
        return iid(self.q, self.n)

    def format(self):
        return 'bernoulli(%r)^%d' % (self.q, self.n)


class DetTerm(SpecNode):
    """``det(bits)``: the point mass on one microstate"""
    def __init__(self, bits):
        self.bits = bits

    @property
    def n(self):
        return len(self.bits)

    def key(self):
        return (self.bits,)

    def validate(self):
        pass

    def product(self):
        if len(set(self.bits)) == 1:
            return iid(1.0 if self.bits[0] == 'L' else 0.0, self.n)
        return None

    def format(self):
        return 'det(%s)' % self.bits


class UniformTerm(SpecNode):
    """``uniform^n``: n fair boxes"""
    def __init__(self, n):
        self.n = n

    def key(self):
        return (self.n,)

    def validate(self):
        if self.n < 1:
            raise BadOutcomeLength('uniform needs at least one box')

    def product(self):
        return iid(0.5, self.n)

    def format(self):
        return 'uniform^%d' % self.n


class ExplicitTerm(SpecNode):
    """``explicit{outcome: p, ...}``: a listed table"""
    def __init__(self, pairs):
        self.pairs = tuple(pairs)

    @property
    def n(self):
        return len(self.pairs[0][0])

    def key(self):
        return self.pairs

    def validate(self):
        outcomes = [outcome for outcome, _ in self.pairs]
        if len(set(len(outcome) for outcome in outcomes)) != 1:
            raise BadOutcomeLength('outcomes %s differ in length' % outcomes)
        if len(set(outcomes)) != len(outcomes):
            raise DuplicateOutcome('an outcome is listed twice in %s'
                                   % outcomes)

    def product(self):
        return None

    def format(self):
        return 'explicit{%s}' % ', '.join('%s: %r' % pair for pair in self.pairs)


class MixSpec(SpecNode):
    """``mix(w: term, ...)``: a weighted mixture of terms"""
    def __init__(self, weighted):
        self.weighted = tuple(weighted)

    @property
    def n(self):
        return self.weighted[0][1].n

    def key(self):
        return tuple((weight, type(term), term.key())
                     for weight, term in self.weighted)

    def validate(self):
        for weight, term in self.weighted:
            if weight <= 0:
                raise WeightSumError('weight %r is not positive' % weight)
            term.validate()
        arities = sorted(set(term.n for _, term in self.weighted))
        if len(arities) != 1:
            raise ArityMismatch('mixed terms have box counts %s' % arities)
        total = sum(weight for weight, _ in self.weighted)
        if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
            raise WeightSumError('weights sum to %r, not 1' % total)

    def format(self):
        return 'mix(%s)' % ', '.join('%r: %s' % (weight, term.format())
                                     for weight, term in self.weighted)


def make_grammar():
    number = Regex(r'[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?')
    number.set_parse_action(lambda toks: float(toks[0]))
    integer = Word(nums).set_parse_action(lambda toks: int(toks[0]))
    outcome = Word('LR')

    lparen = Suppress('(')
    rparen = Suppress(')')
    colon = Suppress(':')
    comma = Suppress(',')
    caret = Suppress('^')

    bernoulli = Keyword('bernoulli').suppress() + lparen + number + rparen + caret + integer
    bernoulli.set_parse_action(lambda toks: BernoulliTerm(q=toks[0], n=toks[1]))
    det = Keyword('det').suppress() + lparen + outcome + rparen
    det.set_parse_action(lambda toks: DetTerm(bits=toks[0]))
    uniform = Keyword('uniform').suppress() + caret + integer
    uniform.set_parse_action(lambda toks: UniformTerm(n=toks[0]))
    pair = Group(outcome + colon + number)
    explicit = (Keyword('explicit').suppress() + Suppress('{') + pair
                + ZeroOrMore(comma + pair) + Suppress('}'))
    explicit.set_parse_action(
        lambda toks: ExplicitTerm(pairs=[(str(o), p) for o, p in toks]))
    term = bernoulli | det | uniform | explicit

    wterm = Group(number + colon + term)
    mix = Keyword('mix').suppress() + lparen + wterm + OneOrMore(comma + wterm) + rparen
    mix.set_parse_action(
        lambda toks: MixSpec(weighted=[(w, t) for w, t in toks]))
    return (mix | term) + StringEnd()


GRAMMAR = make_grammar()


def parse_spec(text):
    """Parse a distribution spec into its AST and check its semantics

    :raise ParseError: with the 1-based line and column of the failure
    """
    try:
        spec = GRAMMAR.parse_string(text, parse_all=True)[0]
    except ParseBaseException as exc:
        raise ParseError(line=exc.lineno, col=exc.col, expected=exc.msg)
    spec.validate()
    return spec


def format_spec(spec):
    """Pretty-print an AST back into spec text"""
    return spec.format()


def read_spec_file(path):
    """Read a case file: ``//`` lines are comments, the rest is one spec"""
    with open(path, encoding='utf-8') as spec_file:
        lines = [line.strip() for line in spec_file]
    return ' '.join(line for line in lines if line and not line.startswith('//'))


def _fits(n, cap):
    return n <= 62 and 2 ** n <= cap


def to_distribution(spec, cap=EXPLICIT_SUPPORT_CAP):
    """Build the distribution an AST describes

    Product terms and mixtures of them stay structured; anything else is
    tabulated explicitly.
    """
    if isinstance(spec, MixSpec):
        products = [term.product() for _, term in spec.weighted]
        if all(product is not None for product in products):
            return mixture([weight for weight, _ in spec.weighted], products,
                           tolerance=NORMALIZATION_TOLERANCE)
        total = sum(weight for weight, _ in spec.weighted)
        probs = sum(weight / total
                    * explicit_of(to_distribution(term, cap), cap=cap).probs
                    for weight, term in spec.weighted)
        return ExplicitDistribution(n=spec.n, probs=probs, cap=cap)
    if isinstance(spec, ExplicitTerm):
        return make_explicit(spec.n, spec.pairs, cap=cap)
    if isinstance(spec, DetTerm) and (_fits(spec.n, cap) or spec.product() is None):
        return make_deterministic(spec.bits, cap=cap)
    return spec.product()


def cmd_entropy(distribution, epsilon):
    return smooth_report(distribution, epsilon).to_dict()


def cmd_work(distribution, epsilon, temperature, cap=EXPLICIT_SUPPORT_CAP):
    document = work_bounds(distribution, epsilon, work_unit(temperature),
                           cap=cap).to_dict()
    document['temperature_sensitivity'] = [
        {'temperature_kelvin': kelvin,
         'min_work_eV': bounds.min_work.electron_volts,
         'max_work_eV': (bounds.max_work.electron_volts
                         if bounds.max_work is not None else None)}
        for kelvin, bounds in temperature_sensitivity(distribution, epsilon)]
    return document


def cmd_game(distribution, strategy_name, config, bet_size=None,
             cap=EXPLICIT_SUPPORT_CAP):
    distribution = explicit_of(distribution, cap=cap)
    if strategy_name == 'riskfree':
        strategy = build_riskfree_strategy(distribution, config.epsilon, cap=cap)
    elif strategy_name == 'gambler':
        if bet_size is None:
            raise ConfigurationError('the gambler strategy needs --bets')
        strategy = build_gambler_strategy(distribution, bet_size, cap=cap)
    else:
        strategy = thermodynamic_strategy(distribution, cap=cap)
    unit = config.unit
    exact = exact_evaluate(distribution, strategy, unit, cap=cap)
    estimate = monte_carlo(distribution, strategy, config, unit=unit, cap=cap)
    bounds = None
    if config.epsilon > 0:
        bounds = work_bounds(distribution, config.epsilon, unit, cap=cap).to_dict()
    return {'strategy': strategy.to_dict(),
            'exact': exact.to_dict(),
            'monte_carlo': estimate.to_dict(),
            'theorem_bounds': bounds,
            'violations': theorem_violations(distribution, strategy, exact,
                                             config.epsilon,
                                             risk_free=strategy_name == 'riskfree')}


TABLE1_COLUMNS = ('row', 'distribution', 'min_work_bits', 'max_work_bits',
                  'min_work_eV', 'max_work_eV')


def cmd_table1(epsilon, temperature, n):
    rows = [[row.row, row.distribution, row.min_work.bits, row.max_work.bits,
             row.min_work.electron_volts, row.max_work.electron_volts]
            for row in table1_rows(epsilon, temperature, n)]
    return TABLE1_COLUMNS, rows


FIGURE3_COLUMNS = ('n', 'h_min_smooth', 'shannon', 'h_max_smooth', 'epsilon',
                   'p')


def cmd_figure3(p, epsilon, sizes):
    rows = []
    for n in sizes:
        report = smooth_report(iid(p, n), epsilon)
        rows.append([n, report.h_min_smooth, report.shannon,
                     report.h_max_smooth, epsilon, p])
    return FIGURE3_COLUMNS, rows


SCAN_COLUMNS = ('epsilon', 'min_work_bits', 'max_work_bits', 'min_work_eV',
                'max_work_eV')


def cmd_scan_epsilon(distribution, temperature):
    rows = [[epsilon, bounds.min_work.bits, bounds.max_work.bits,
             bounds.min_work.electron_volts, bounds.max_work.electron_volts]
            for epsilon, bounds in epsilon_scan(distribution,
                                                work_unit(temperature))]
    return SCAN_COLUMNS, rows


def cmd_oracle(distribution, epsilon, temperature, cap=EXPLICIT_SUPPORT_CAP):
    distribution = explicit_of(distribution, cap=cap)
    document = {'brute_hmax_smooth': brute_hmax_smooth(distribution, epsilon),
                'brute_hmin_smooth': brute_hmin_smooth(distribution, epsilon),
                'strategy_search': None}
    if distribution.n <= STRATEGY_SEARCH_MAX_N:
        strategy, work = exhaustive_strategy_search(distribution, epsilon,
                                                    work_unit(temperature))
        document['strategy_search'] = {'strategy': strategy.to_dict(),
                                       'work': work.to_dict()}
    return document


def format_number(value):
    if isinstance(value, float):
        return '%.*g' % (SIGNIFICANT_DIGITS, value)
    return str(value)


def rounded(document):
    """Round every float of a JSON-ready document to the rendered digits"""
    if isinstance(document, dict):
        return dict((key, rounded(value)) for key, value in document.items())
    if isinstance(document, (list, tuple)):
        return [rounded(value) for value in document]
    if isinstance(document, (float, np.floating)):
        return float(format_number(float(document)))
    if isinstance(document, np.integer):
        return int(document)
    return document


def flatten(document, prefix=''):
    """Flatten nested dictionaries into dotted keys for a one-row CSV"""
    flat = {}
    for key, value in document.items():
        name = prefix + key
        if isinstance(value, dict):
            flat.update(flatten(value, name + '.'))
        elif isinstance(value, list):
            flat[name] = json.dumps(rounded(value), sort_keys=True)
        else:
            flat[name] = value
    return flat


def emit_json(document, stream):
    json.dump(rounded(document), stream, sort_keys=True, indent=2)
    stream.write('\n')


def emit_csv(columns, rows, stream):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_number(value) for value in row])


def emit(result, output_format, stream):
    """Write a document (dict) or a table ((columns, rows)) to `stream`"""
    if isinstance(result, dict):
        if output_format == 'csv':
            flat = flatten(result)
            columns = sorted(flat)
            emit_csv(columns, [[flat[column] for column in columns]], stream)
        else:
            emit_json(result, stream)
        return
    columns, rows = result
    if output_format == 'json':
        emit_json([dict(zip(columns, row)) for row in rows], stream)
    else:
        emit_csv(columns, rows, stream)


class CommandParser(argparse.ArgumentParser):
    """:class:`argparse.ArgumentParser` reporting usage errors as
    :class:`~szilardsim.errors.ConfigurationError`"""
    def error(self, message):
        raise ConfigurationError(message)


def make_parser():
    common = CommandParser(add_help=False)
    common.add_argument('--epsilon', type=float, default=None,
                        help='smoothing parameter (default %r; table1 %r)'
                        % (DEFAULT_EPSILON, TABLE1_EPSILON))
    common.add_argument('--temperature-kelvin', dest='temperature', type=float,
                        default=ROOM_TEMPERATURE, help='bath temperature')
    common.add_argument('--format', dest='output_format',
                        choices=('json', 'csv'), default=None,
                        help='output format')
    common.add_argument('--support-cap', dest='cap', type=int,
                        default=EXPLICIT_SUPPORT_CAP,
                        help='largest explicit table, in outcomes')
    common.add_argument('-v', '--verbose', action='count', default=0,
                        help='log INFO (-v) or DEBUG (-vv) to stderr')

    source = CommandParser(add_help=False)
    group = source.add_mutually_exclusive_group(required=True)
    group.add_argument('--spec', help='distribution spec text')
    group.add_argument('--spec-file', help='case file holding a spec')

    parser = CommandParser(prog='szilardsim',
                           description='Work value of information for Szilard '
                                       'boxes')
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    subparsers = parser.add_subparsers(
        dest='command', metavar='{entropy,work,game,table1,figure3,scan-epsilon}')
    subparsers.required = True
    subparsers.add_parser('entropy', parents=[common, source],
                          help='entropies and smooth entropies')
    subparsers.add_parser('work', parents=[common, source],
                          help='Theorem I and II work values')
    game = subparsers.add_parser('game', parents=[common, source],
                                 help='evaluate and simulate a strategy')
    game.add_argument('--strategy', choices=STRATEGIES, default='riskfree')
    game.add_argument('--bets', type=int, default=None,
                      help='bet size of the gambler strategy')
    game.add_argument('--seed', type=int, default=DEFAULT_SEED)
    game.add_argument('--samples', type=int, default=DEFAULT_SAMPLES)
    table1 = subparsers.add_parser('table1', parents=[common],
                                   help='work-value table as CSV')
    table1.add_argument('--boxes', type=int, default=TABLE1_BOXES)
    figure3 = subparsers.add_parser('figure3', parents=[common],
                                    help='entropies against n as CSV')
    figure3.add_argument('--p', dest='bias', type=float, default=FIGURE3_BIAS)
    figure3.add_argument('--sizes', default=','.join(str(n) for n in FIGURE3_SIZES),
                         help='comma-separated box counts')
    subparsers.add_parser('scan-epsilon', parents=[common, source],
                          help='work values over an epsilon grid')
    subparsers.add_parser('oracle', parents=[common, source])
    return parser


def configure_logging(verbosity, stream):
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(level=level, stream=stream,
                        format='%(levelname)s %(name)s: %(message)s')


def load_distribution(arguments):
    text = arguments.spec
    if text is None:
        text = read_spec_file(arguments.spec_file)
    return to_distribution(parse_spec(text), cap=arguments.cap)


def dispatch(arguments):
    command = arguments.command
    if command == 'table1':
        epsilon = arguments.epsilon if arguments.epsilon is not None else TABLE1_EPSILON
        return cmd_table1(epsilon, arguments.temperature, arguments.boxes), 'csv'
    epsilon = arguments.epsilon if arguments.epsilon is not None else DEFAULT_EPSILON
    if command == 'figure3':
        try:
            sizes = [int(size) for size in arguments.sizes.split(',')]
        except ValueError:
            raise ConfigurationError('--sizes must be comma-separated integers')
        return cmd_figure3(arguments.bias, epsilon, sizes), 'csv'
    distribution = load_distribution(arguments)
    if command == 'entropy':
        return cmd_entropy(distribution, epsilon), 'json'
    if command == 'work':
        return cmd_work(distribution, epsilon, arguments.temperature,
                        cap=arguments.cap), 'json'
    if command == 'game':
        config = GameConfig(temperature=arguments.temperature, epsilon=epsilon,
                            seed=arguments.seed, n_samples=arguments.samples)
        return cmd_game(distribution, arguments.strategy, config,
                        bet_size=arguments.bets, cap=arguments.cap), 'json'
    if command == 'scan-epsilon':
        return cmd_scan_epsilon(distribution, arguments.temperature), 'csv'
    return cmd_oracle(distribution, epsilon, arguments.temperature,
                      cap=arguments.cap), 'json'


def run(argv=None, stdout=None, stderr=None):
    """Run one command and return its exit code"""
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    try:
        arguments = make_parser().parse_args(argv)
        configure_logging(arguments.verbose, stderr)
        result, default_format = dispatch(arguments)
        emit(result, arguments.output_format or default_format, stdout)
    except InvariantViolation as error:
        logger.error('%s', error)
        emit_json({'error': error.to_dict()}, stderr)
        return 2
    except SzilardSimError as error:
        emit_json({'error': error.to_dict()}, stderr)
        return 1
    except (IOError, OSError) as error:
        emit_json({'error': {'code': 'io', 'kind': type(error).__name__,
                             'message': str(error)}}, stderr)
        return 1
    except Exception as error:
        logger.exception('internal error')
        emit_json({'error': {'code': 'internal', 'kind': type(error).__name__,
                             'message': str(error)}}, stderr)
        return 2
    return 0


def main():
    sys.exit(run())
