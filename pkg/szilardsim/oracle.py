"""This module contains brute-force reference implementations.

Each oracle enumerates or samples directly instead of reasoning about the
structure of the optimum, and shares nothing with the functionals it checks
beyond the distribution and game types. All oracles take explicit
distributions only and refuse instances beyond their limits.

.. autosummary::

    brute_hmax_smooth
    brute_hmin_smooth
    exhaustive_game_eval
    exhaustive_strategy_search
"""
import itertools
import logging
import math

import numpy as np

from szilardsim.compress import CompressionPlan
from szilardsim.constants import DEFAULT_SEED
from szilardsim.constants import ORACLE_MAX_N
from szilardsim.constants import ORACLE_MAX_SUPPORT
from szilardsim.constants import ORACLE_SAMPLES
from szilardsim.constants import STRATEGY_SEARCH_MAX_N
from szilardsim.errors import BadEpsilon
from szilardsim.errors import SymbolicPlanError
from szilardsim.errors import TooLarge
from szilardsim.game import ExactResult
from szilardsim.game import Strategy
from szilardsim.probdist import make_generator

logger = logging.getLogger(__name__)

SUCCESS_TOLERANCE = 1e-12
"""Slack on ``success >= 1 - epsilon`` absorbing float summation error"""


def _support(distribution):
    support = distribution.probs[distribution.probs > 0]
    if support.size > ORACLE_MAX_SUPPORT:
        raise TooLarge('support of %d outcomes exceeds the oracle limit %d'
                       % (support.size, ORACLE_MAX_SUPPORT))
    return [float(p) for p in support]


def _check_epsilon(epsilon):
    if not 0 <= epsilon < 1:
        raise BadEpsilon(epsilon)


SUBSET_CHUNK = 2 ** 16
"""Subsets of the support examined per vectorized step"""


def brute_hmax_smooth(distribution, epsilon):
    """Smallest log2|S| over support subsets S leaving out at most epsilon

    Every nonempty subset is enumerated as a bit mask over the support.
    """
    _check_epsilon(epsilon)
    probs = np.array(_support(distribution))
    shifts = np.arange(probs.size, dtype=np.int64)
    smallest = probs.size
    for start in range(1, 2 ** probs.size, SUBSET_CHUNK):
        masks = np.arange(start, min(start + SUBSET_CHUNK, 2 ** probs.size),
                          dtype=np.int64)
        kept = (masks[:, None] >> shifts[None, :]) & 1
        left_out = (1 - kept) @ probs
        sizes = kept.sum(axis=1)[left_out <= epsilon]
        if sizes.size:
            smallest = min(smallest, int(sizes.min()))
    return math.log2(smallest)


def brute_hmin_smooth(distribution, epsilon, samples=ORACLE_SAMPLES,
                      seed=DEFAULT_SEED):
    """Largest -log2 max(Q) found over a grid of cut levels and random
    members Q of the mass-removal ball"""
    _check_epsilon(epsilon)
    probs = np.array(_support(distribution))
    best = -math.log2(probs.max())
    if epsilon == 0:
        return best
    low = (1.0 - epsilon) / probs.size
    levels = np.linspace(low, probs.max(), samples)
    removed = np.maximum(probs[None, :] - levels[:, None], 0.0).sum(axis=1)
    feasible = levels[removed <= epsilon]
    if feasible.size:
        best = max(best, -math.log2(float(feasible.min())))
    generator = make_generator(seed)
    budget = epsilon * generator.random(samples)
    shares = generator.dirichlet(np.ones(probs.size), size=samples)
    removals = np.minimum(budget[:, None] * shares, probs[None, :])
    peaks = (probs[None, :] - removals).max(axis=1)
    peaks = peaks[peaks > 0]
    if peaks.size:
        best = max(best, -math.log2(float(peaks.min())))
    return best


def _check_size(n, limit):
    if n > limit:
        raise TooLarge('%d boxes exceed the oracle limit %d' % (n, limit))


def exhaustive_game_eval(distribution, strategy, unit):
    """Sum the probability of every microstate on which all bets hold"""
    n = distribution.n
    _check_size(n, ORACLE_MAX_N)
    if strategy.plan.symbolic:
        raise SymbolicPlanError('plan on %d boxes has no explicit '
                                'permutation' % n)
    permutation = strategy.plan.permutation
    winning = []
    for index in range(2 ** n):
        p = float(distribution.probs[index])
        if p == 0:
            continue
        relabeled = int(permutation[index])
        if all((relabeled >> (n - 1 - position)) & 1 == value
               for position, value in strategy.bets):
            winning.append(p)
    return ExactResult(success_prob=math.fsum(winning),
                       committed_work=strategy.committed_work(unit))


def _bet_choices(n):
    """Every assignment of none, L or R to each of n positions"""
    return list(itertools.product((None, 0, 1), repeat=n))


def exhaustive_strategy_search(distribution, epsilon, unit):
    """Find the heaviest weight liftable with success at least 1 - epsilon

    Searches every permutation of the 2**n microstates against every bet
    set and guess.

    :return: (:class:`~szilardsim.game.Strategy`,
        :class:`~szilardsim.game.WorkAmount`)
    """
    _check_epsilon(epsilon)
    n = distribution.n
    _check_size(n, STRATEGY_SEARCH_MAX_N)
    size = 2 ** n
    permutations = np.array(list(itertools.permutations(range(size))),
                            dtype=np.int64)
    relabeled = np.zeros(permutations.shape)
    np.put_along_axis(relabeled, permutations,
                      np.broadcast_to(distribution.probs, permutations.shape),
                      axis=1)
    choices = _bet_choices(n)
    matches = np.ones((len(choices), size))
    for row, choice in enumerate(choices):
        for index in range(size):
            for position, value in enumerate(choice):
                bit = (index >> (n - 1 - position)) & 1
                if value is not None and bit != value:
                    matches[row, index] = 0.0
    success = relabeled @ matches.T
    weights = np.array([sum(value is not None for value in choice)
                        for choice in choices])
    feasible = success >= 1.0 - epsilon - SUCCESS_TOLERANCE
    scores = np.where(feasible, weights[None, :], -1)
    best_permutation, best_choice = np.unravel_index(np.argmax(scores),
                                                     scores.shape)
    choice = choices[best_choice]
    bets = [(position, value) for position, value in enumerate(choice)
            if value is not None]
    strategy = Strategy(plan=CompressionPlan(n=n,
                                             permutation=permutations[best_permutation]),
                        bets=bets)
    logger.debug('best of %d strategies lifts %d c', scores.size, len(bets))
    return strategy, len(bets) * unit
