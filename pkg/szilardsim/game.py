"""This module contains the work-extraction game.

An agent is handed n boxes and their distribution. It presets a permutation
of microstates, presets which boxes to bet on and on which side, and presets
a weight of ``|bets| c``; then it interferes no more. The play succeeds, and
the weight is lifted, iff every bet box is on the guessed side. Failure pays
no work.

Work is carried in units of ``c = k T ln 2`` (the work value of one known
box) and converted to joules and electron volts on demand.

.. autosummary::

    WorkUnit
    WorkAmount
    RiskFreeWork
    WorkBounds
    Strategy
    GameConfig
    ExactResult
    MonteCarloEstimate
    Table1Row
"""
import itertools
import logging
import math

import numpy as np

from szilardsim.compress import bennett_work
from szilardsim.compress import canonical_permutation
from szilardsim.compress import identity_plan
from szilardsim.constants import BOLTZMANN_CONSTANT
from szilardsim.constants import DEFAULT_EPSILON
from szilardsim.constants import DEFAULT_SAMPLES
from szilardsim.constants import DEFAULT_SEED
from szilardsim.constants import ELECTRON_VOLT
from szilardsim.constants import EPSILON_SCAN_HIGH
from szilardsim.constants import EPSILON_SCAN_LOW
from szilardsim.constants import EPSILON_SCAN_POINTS
from szilardsim.constants import EXHAUSTIVE_BET_MAX_N
from szilardsim.constants import EXPLICIT_SUPPORT_CAP
from szilardsim.constants import MONTE_CARLO_BATCH_SIZE
from szilardsim.constants import ROOM_TEMPERATURE
from szilardsim.constants import SENSITIVITY_TEMPERATURES
from szilardsim.entropy import RetainedSupport
from szilardsim.entropy import binary_entropy
from szilardsim.entropy import check_epsilon
from szilardsim.entropy import h_min
from szilardsim.entropy import h_min_smooth
from szilardsim.entropy import max_smoothing
from szilardsim.errors import BadBetSize
from szilardsim.errors import BadEpsilon
from szilardsim.errors import BiasedBitsPresent
from szilardsim.errors import ConfigurationError
from szilardsim.errors import InvalidBets
from szilardsim.errors import InvariantViolation
from szilardsim.errors import NonpositiveTemperature
from szilardsim.errors import SymbolicPlanError
from szilardsim.probdist import ExplicitDistribution
from szilardsim.probdist import explicit_of
from szilardsim.probdist import iid
from szilardsim.probdist import marginal
from szilardsim.probdist import mixture
from szilardsim.simulation import Controller

logger = logging.getLogger(__name__)

BRACKET_TOLERANCE = 1e-9
"""Slack, in bits, of the check that Theorem I work never exceeds the
Theorem II bound"""

INTEGER_SLACK = 1e-9
"""Slack used when rounding a real entropy up to whole boxes"""

BRACKET_MAX_EPSILON = 1.0 / 3.0
"""Largest epsilon at which mass-removal smoothing keeps the Theorem I work
below the Theorem II bound"""


class WorkUnit(object):
    """The work value of one perfectly known box, ``c = k T ln 2``

    :param float temperature: bath temperature, in kelvin
    :ivar float joules: c in joules
    :ivar float electron_volts: c in electron volts
    """
    def __init__(self, temperature):
        if not temperature > 0:
            raise NonpositiveTemperature('temperature %r K is not positive'
                                         % temperature)
        self.temperature = float(temperature)
        self.joules = BOLTZMANN_CONSTANT * self.temperature * math.log(2.0)
        self.electron_volts = self.joules / ELECTRON_VOLT

    def __rmul__(self, bits):
        return WorkAmount(bits=bits, unit=self)

    def __mul__(self, bits):
        return WorkAmount(bits=bits, unit=self)

    def to_dict(self):
        return {'temperature_kelvin': self.temperature, 'joules': self.joules,
                'eV': self.electron_volts}

    def __repr__(self):
        return 'WorkUnit(%r K)' % self.temperature


def work_unit(temperature):
    """Return c = k T ln 2 at `temperature` kelvin as a :class:`.WorkUnit`"""
    return WorkUnit(temperature)


class WorkAmount(object):
    """An amount of work, counted in boxes of work value c

    :param float bits: number of c's
    :param unit: the :class:`.WorkUnit` c
    """
    def __init__(self, bits, unit):
        self.bits = float(bits)
        self.unit = unit

    @property
    def joules(self):
        return self.bits * self.unit.joules

    @property
    def electron_volts(self):
        return self.bits * self.unit.electron_volts

    def to_dict(self):
        return {'bits': self.bits, 'joules': self.joules,
                'eV': self.electron_volts}

    def __repr__(self):
        return 'WorkAmount(%r c at %r K)' % (self.bits, self.unit.temperature)


class RiskFreeWork(object):
    """Theorem I work, real-valued and rounded down to whole boxes

    :ivar real: :class:`.WorkAmount` ``(n - H_max^eps) c``
    :ivar integral: :class:`.WorkAmount` ``(n - ceil(H_max^eps)) c``, the
        work an executable strategy commits to
    :ivar float h_max_smooth: the smooth max-entropy used
    :ivar int uncertain_bits: ceil(H_max^eps)
    """
    def __init__(self, real, integral, h_max_smooth, uncertain_bits):
        self.real = real
        self.integral = integral
        self.h_max_smooth = h_max_smooth
        self.uncertain_bits = uncertain_bits


class WorkBounds(object):
    """Theorem I and Theorem II work values of one distribution

    :ivar min_work: :class:`.WorkAmount`, certain work (Theorem I)
    :ivar max_work: :class:`.WorkAmount`, bound for a gambler (Theorem II),
        or None at epsilon 0
    :ivar float epsilon: smoothing parameter
    :ivar int n: number of boxes
    :ivar shannon_limit: :class:`.WorkAmount` ``n(1 - H_S/n) c`` or None
    :ivar bennett: :class:`.WorkAmount` from Bennett's formula, or None when
        it does not apply
    """
    def __init__(self, min_work, max_work, epsilon, n, integral_min_work=None,
                 shannon_limit=None, bennett=None):
        self.min_work = min_work
        self.max_work = max_work
        self.epsilon = epsilon
        self.n = n
        self.integral_min_work = integral_min_work
        self.shannon_limit = shannon_limit
        self.bennett = bennett

    def to_dict(self):
        result = {'n': self.n, 'epsilon': self.epsilon,
                  'temperature_kelvin': self.min_work.unit.temperature,
                  'min_work': self.min_work.to_dict()}
        for name in ('max_work', 'integral_min_work', 'shannon_limit',
                     'bennett'):
            value = getattr(self, name)
            result[name] = value.to_dict() if value is not None else None
        return result


def uncertain_bits(h_max_smooth_bits, witness):
    """Round a smooth max-entropy up to whole boxes

    Uses the witness's exact retained-support size when it has one.
    """
    if isinstance(witness, ExplicitDistribution):
        size = witness.support_size()
    elif isinstance(witness, RetainedSupport):
        size = witness.size
    else:
        size = None
    if size is not None:
        return (size - 1).bit_length()
    return int(math.ceil(h_max_smooth_bits - INTEGER_SLACK))


def thm1_work(distribution, epsilon, unit):
    """Theorem I: the work extractable except with probability epsilon

    :return: :class:`.RiskFreeWork` holding ``(n - H_max^eps) c`` and the
        whole-box variant ``(n - ceil(H_max^eps)) c``
    """
    bits, witness = max_smoothing(distribution, epsilon)
    uncertain = uncertain_bits(bits, witness)
    n = distribution.n
    return RiskFreeWork(real=(n - bits) * unit,
                        integral=(n - uncertain) * unit,
                        h_max_smooth=bits, uncertain_bits=uncertain)


def thm2_bound(distribution, epsilon, unit):
    """Theorem II: ``(n - H_min^eps + log2(1/eps)) c``, a gambler's ceiling"""
    if not 0 < epsilon < 1:
        raise BadEpsilon(epsilon, '0 < epsilon < 1')
    bits = (distribution.n - h_min_smooth(distribution, epsilon)
            + math.log2(1.0 / epsilon))
    return bits * unit


def shannon_limit_work(p, n, unit):
    """Thermodynamic-limit work ``n (1 - h(p)) c`` of n i.i.d. boxes"""
    return n * (1.0 - binary_entropy(p)) * unit


def work_bounds(distribution, epsilon, unit, cap=EXPLICIT_SUPPORT_CAP):
    """Assemble the :class:`.WorkBounds` of `distribution`

    Bennett's formula is added when the distribution fits in `cap` outcomes
    and its compressed bits are all known or uniform; the Shannon limit is
    added for i.i.d. products. The Theorem II bound needs epsilon > 0 and is
    None otherwise.
    """
    risk_free = thm1_work(distribution, epsilon, unit)
    bound = thm2_bound(distribution, epsilon, unit) if epsilon > 0 else None
    if (bound is not None and epsilon <= BRACKET_MAX_EPSILON
            and risk_free.real.bits > bound.bits + BRACKET_TOLERANCE):
        raise InvariantViolation('Theorem I work %r exceeds Theorem II bound '
                                 '%r' % (risk_free.real.bits, bound.bits))
    bennett = None
    if distribution.n <= 62 and 2 ** distribution.n <= cap:
        bennett = bennett_or_none(explicit_of(distribution, cap=cap), unit,
                                  cap=cap)
    shannon_limit = None
    components = getattr(distribution, 'components', ())
    if len(components) == 1:
        shannon_limit = shannon_limit_work(components[0][1], distribution.n,
                                           unit)
    return WorkBounds(min_work=risk_free.real, max_work=bound,
                      epsilon=epsilon, n=distribution.n,
                      integral_min_work=risk_free.integral,
                      shannon_limit=shannon_limit, bennett=bennett)


class Strategy(object):
    """The agent's preset choices

    :param plan: :class:`~szilardsim.compress.CompressionPlan` to apply
    :param bets: (bit position, guessed value) pairs; 0 guesses L, 1 R
    :ivar tuple bets: validated bets
    :ivar int committed_bits: weight preset, in c's; one c per bet box
    """
    def __init__(self, plan, bets):
        try:
            bets = tuple((int(position), int(value)) for position, value in bets)
        except (TypeError, ValueError):
            raise InvalidBets('bets must be (position, value) pairs')
        positions = [position for position, _ in bets]
        if len(set(positions)) != len(positions):
            raise InvalidBets('bet positions %s repeat' % positions)
        for position, value in bets:
            if not 0 <= position < plan.n:
                raise InvalidBets('bet position %d is not below n=%d'
                                  % (position, plan.n))
            if value not in (0, 1):
                raise InvalidBets('guess %d is neither 0 (L) nor 1 (R)' % value)
        self.plan = plan
        self.bets = bets

    @property
    def positions(self):
        return [position for position, _ in self.bets]

    @property
    def guesses(self):
        return np.array([value for _, value in self.bets], dtype=np.int64)

    @property
    def committed_bits(self):
        return len(self.bets)

    def committed_work(self, unit):
        return self.committed_bits * unit

    def to_dict(self):
        return {'bets': [[position, 'LR'[value]] for position, value in self.bets],
                'committed_bits': self.committed_bits,
                'plan': 'symbolic' if self.plan.symbolic else 'explicit'}

    def __repr__(self):
        return 'Strategy(bets=%s)' % ', '.join(
            '%d=%s' % (position, 'LR'[value]) for position, value in self.bets)


class GameConfig(object):
    """Settings of one game

    :param float temperature: bath temperature, in kelvin
    :param float epsilon: smoothing parameter of the theorem bounds
    :param int seed: 64-bit seed of the Monte Carlo run
    :param int n_samples: number of Monte Carlo plays
    :ivar float boltzmann: Boltzmann constant used, J/K
    """
    def __init__(self, temperature=ROOM_TEMPERATURE, epsilon=DEFAULT_EPSILON,
                 seed=DEFAULT_SEED, n_samples=DEFAULT_SAMPLES,
                 batch_size=MONTE_CARLO_BATCH_SIZE):
        if not temperature > 0:
            raise NonpositiveTemperature('temperature %r K is not positive'
                                         % temperature)
        check_epsilon(epsilon)
        if not 0 <= seed < 2 ** 64:
            raise ConfigurationError('seed %r is not a 64-bit value' % seed)
        if n_samples < 1:
            raise ConfigurationError('n_samples must be positive, got %r'
                                     % n_samples)
        self.temperature = temperature
        self.epsilon = epsilon
        self.boltzmann = BOLTZMANN_CONSTANT
        self.seed = int(seed)
        self.n_samples = int(n_samples)
        self.batch_size = int(batch_size)

    @property
    def unit(self):
        return work_unit(self.temperature)


class ExactResult(object):
    """Exact outcome of a strategy

    :ivar float success_prob: probability that every bet is right
    :ivar expected_work: :class:`.WorkAmount`, success_prob times the weight
    :ivar committed_work: :class:`.WorkAmount` lifted on success
    """
    def __init__(self, success_prob, committed_work):
        self.success_prob = success_prob
        self.committed_work = committed_work
        self.expected_work = (success_prob * committed_work.bits) * committed_work.unit

    def to_dict(self):
        return {'success_prob': self.success_prob,
                'committed_work': self.committed_work.to_dict(),
                'expected_work': self.expected_work.to_dict()}


class MonteCarloEstimate(object):
    """Empirical outcome of a strategy over seeded plays

    :ivar float success_rate: fraction of plays that lifted the weight
    :ivar mean_work: :class:`.WorkAmount` averaged over plays
    :ivar float stderr: binomial standard error of `success_rate`
    :ivar int seed: seed of the run
    :ivar int n_samples: number of plays
    :ivar int successes: number of successful plays
    """
    def __init__(self, successes, n_samples, committed_work, seed):
        self.successes = successes
        self.n_samples = n_samples
        self.seed = seed
        self.success_rate = successes / float(n_samples)
        self.stderr = math.sqrt(self.success_rate * (1.0 - self.success_rate)
                                / n_samples)
        self.mean_work = (self.success_rate * committed_work.bits) * committed_work.unit

    def to_dict(self):
        return {'success_rate': self.success_rate, 'stderr': self.stderr,
                'mean_work': self.mean_work.to_dict(), 'seed': self.seed,
                'n_samples': self.n_samples, 'successes': self.successes}


def as_explicit(distribution, cap=EXPLICIT_SUPPORT_CAP):
    return explicit_of(distribution, cap=cap)


def success_probability(distribution, strategy):
    """Probability that all bets of `strategy` hold on explicit `distribution`"""
    if strategy.plan.n != distribution.n:
        raise InvalidBets('strategy is for %d boxes, distribution has %d'
                          % (strategy.plan.n, distribution.n))
    if not strategy.bets:
        return 1.0
    compressed = strategy.plan.apply(distribution)
    table = marginal(compressed, strategy.positions)
    guess_index = 0
    for value in strategy.guesses:
        guess_index = (guess_index << 1) | int(value)
    return float(table.probs[guess_index])


def exact_evaluate(distribution, strategy, unit, cap=EXPLICIT_SUPPORT_CAP):
    """Evaluate `strategy` exactly on an explicit (or expandable) distribution"""
    distribution = as_explicit(distribution, cap=cap)
    return ExactResult(success_prob=success_probability(distribution, strategy),
                       committed_work=strategy.committed_work(unit))


def build_riskfree_strategy(distribution, epsilon, cap=EXPLICIT_SUPPORT_CAP):
    """Theorem I strategy: compress, then bet L on the leading known bits

    After the canonical permutation the outcomes kept by smoothing occupy
    indices below ``2**ceil(H_max^eps)``, so the leading
    ``n - ceil(H_max^eps)`` bits are L except with probability epsilon.
    """
    distribution = as_explicit(distribution, cap=cap)
    plan = canonical_permutation(distribution, cap=cap)
    bits, witness = max_smoothing(distribution, epsilon)
    uncertain = uncertain_bits(bits, witness)
    bets = [(position, 0) for position in range(distribution.n - uncertain)]
    return Strategy(plan=plan, bets=bets)


def _marginal_peak(distribution, positions):
    table = marginal(distribution, positions).probs
    index = int(np.argmax(table))
    return float(table[index]), index


def build_gambler_strategy(distribution, bet_size, cap=EXPLICIT_SUPPORT_CAP):
    """Bet on `bet_size` compressed boxes with the most likely joint guess

    Position sets are searched exhaustively up to
    :data:`~szilardsim.constants.EXHAUSTIVE_BET_MAX_N` boxes; above that,
    positions are added greedily, each time the one whose best guess keeps
    the joint peak highest.
    """
    distribution = as_explicit(distribution, cap=cap)
    n = distribution.n
    if not 1 <= bet_size <= n:
        raise BadBetSize('bet size %r is not in [1, %d]' % (bet_size, n))
    plan = canonical_permutation(distribution, cap=cap)
    compressed = plan.apply(distribution)
    if n <= EXHAUSTIVE_BET_MAX_N:
        best = None
        for positions in itertools.combinations(range(n), bet_size):
            peak, index = _marginal_peak(compressed, positions)
            if best is None or peak > best[0]:
                best = (peak, positions, index)
        _, positions, index = best
    else:
        positions = []
        for _ in range(bet_size):
            candidates = [(_marginal_peak(compressed, positions + [position])[0],
                           position)
                          for position in range(n) if position not in positions]
            positions.append(max(candidates, key=lambda item: (item[0],
                                                               -item[1]))[1])
        _, index = _marginal_peak(compressed, positions)
    values = [(index >> (len(positions) - 1 - j)) & 1
              for j in range(len(positions))]
    return Strategy(plan=plan, bets=list(zip(positions, values)))


def thermodynamic_strategy(distribution, cap=EXPLICIT_SUPPORT_CAP):
    """The standard heat engine: no permutation, every box bet on its
    more likely side"""
    distribution = as_explicit(distribution, cap=cap)
    bets = []
    for position in range(distribution.n):
        left, right = marginal(distribution, [position]).probs
        bets.append((position, 0 if left >= right else 1))
    return Strategy(plan=identity_plan(distribution.n, cap=cap), bets=bets)


def monte_carlo(distribution, strategy, config, unit=None,
                cap=EXPLICIT_SUPPORT_CAP):
    """Play `strategy` ``config.n_samples`` times and tally the results

    Plays run through a :class:`~szilardsim.simulation.Controller`; the
    result depends only on (seed, n_samples, batch size).
    """
    if strategy.plan.symbolic:
        raise SymbolicPlanError('Monte Carlo needs an explicit permutation')
    distribution = as_explicit(distribution, cap=cap)
    unit = unit if unit is not None else config.unit
    controller = Controller(distribution=distribution, strategy=strategy,
                            seed=config.seed, n_samples=config.n_samples,
                            batch_size=config.batch_size)
    plays, successes = controller.run()
    if plays != config.n_samples:
        raise InvariantViolation('played %d of %d samples'
                                 % (plays, config.n_samples))
    logger.info('monte carlo: %d/%d successes, seed %d', successes, plays,
                config.seed)
    return MonteCarloEstimate(successes=successes, n_samples=plays,
                              committed_work=strategy.committed_work(unit),
                              seed=config.seed)


def theorem_violations(distribution, strategy, exact, epsilon,
                       risk_free=False):
    """Return messages for every theorem the exact result contradicts

    :param bool risk_free: whether `strategy` was built for Theorem I, so
        must succeed except with probability `epsilon`
    """
    violations = []
    if risk_free and exact.success_prob < 1.0 - epsilon - BRACKET_TOLERANCE:
        violations.append('Theorem I: success %r is below 1 - eps = %r'
                          % (exact.success_prob, 1.0 - epsilon))
    n = distribution.n
    if 0 < epsilon < 1 and exact.success_prob > epsilon:
        limit = n - h_min(distribution) + math.log2(1.0 / epsilon)
        if strategy.committed_bits >= limit:
            violations.append('Theorem II: %d bets with success %r > eps but '
                              'limit is %r' % (strategy.committed_bits,
                                               exact.success_prob, limit))
    return violations


def epsilon_scan(distribution, unit, grid=None):
    """Evaluate the work bounds over a log-spaced grid of epsilons

    :return: list of (epsilon, :class:`.WorkBounds`)
    """
    if grid is None:
        grid = np.geomspace(EPSILON_SCAN_LOW, EPSILON_SCAN_HIGH,
                            EPSILON_SCAN_POINTS)
    return [(float(epsilon), work_bounds(distribution, float(epsilon), unit))
            for epsilon in grid]


def temperature_sensitivity(distribution, epsilon,
                            temperatures=SENSITIVITY_TEMPERATURES):
    """Evaluate the work bounds at several bath temperatures

    :return: list of (temperature, :class:`.WorkBounds`)
    """
    return [(temperature, work_bounds(distribution, epsilon,
                                      work_unit(temperature)))
            for temperature in temperatures]


class Table1Row(object):
    """One row of the work-value table

    :ivar int row: 1-based row number
    :ivar str distribution: the row's distribution as CLI spec text
    :ivar min_work: :class:`.WorkAmount` risk-free work
    :ivar max_work: :class:`.WorkAmount` gambler's bound
    """
    def __init__(self, row, distribution, min_work, max_work):
        self.row = row
        self.distribution = distribution
        self.min_work = min_work
        self.max_work = max_work


def table1_distributions(n, bias=0.7):
    """Return the distributions of table rows 2-4 as CLI spec text"""
    all_left = iid(1.0, n)
    return [
        ('bernoulli(%r)^%d' % (bias, n), iid(bias, n)),
        ('mix(0.5: bernoulli(1.0)^%d, 0.5: bernoulli(0.5)^%d)' % (n, n),
         mixture([0.5, 0.5], [all_left, iid(0.5, n)])),
        ('mix(0.5: bernoulli(1.0)^%d, 0.5: bernoulli(0.0)^%d)' % (n, n),
         mixture([0.5, 0.5], [all_left, iid(0.0, n)])),
    ]


def table1_rows(epsilon, temperature, n, bias=0.7):
    """Compute the four rows of the work-value table

    Row 1 is the thermodynamic limit of i.i.d. boxes, where both columns
    equal ``n (1 - h(bias)) c``.
    """
    if not 0 < epsilon < 1:
        raise BadEpsilon(epsilon, '0 < epsilon < 1')
    unit = work_unit(temperature)
    limit = shannon_limit_work(bias, n, unit)
    rows = [Table1Row(row=1, distribution='bernoulli(%r)^%d limit' % (bias, n),
                      min_work=limit, max_work=limit)]
    for row, (label, distribution) in enumerate(table1_distributions(n, bias),
                                                start=2):
        bounds = work_bounds(distribution, epsilon, unit)
        rows.append(Table1Row(row=row, distribution=label,
                              min_work=bounds.min_work,
                              max_work=bounds.max_work))
    return rows


def bennett_or_none(distribution, unit, cap=EXPLICIT_SUPPORT_CAP):
    """Bennett's work of an explicit distribution, or None if bits are biased"""
    try:
        return bennett_work(canonical_permutation(distribution, cap=cap).profile,
                            unit)
    except BiasedBitsPresent:
        return None
