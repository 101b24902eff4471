"""This module contains the entropy functionals and their smoothed versions.

Smoothing optimizes over the mass-removal ball
``{Q : 0 <= Q <= P pointwise, sum(P - Q) <= epsilon}``. Over that ball the
smooth max-entropy is attained by deleting the least likely outcomes and
the smooth min-entropy by shaving every entry down to a common cut level,
so both are computed greedily rather than searched for.

Every functional accepts an :class:`~szilardsim.probdist.ExplicitDistribution`,
a :class:`~szilardsim.probdist.MixtureOfProducts` or a
:class:`~szilardsim.probdist.TypeClassView`.

.. autosummary::

    EntropyReport
    CutLevel
    RetainedSupport
"""
import logging
import math

import numpy as np
from scipy.stats import norm

from szilardsim.constants import LAMBDA_MAX_ITERATIONS
from szilardsim.constants import LAMBDA_RELATIVE_TOLERANCE
from szilardsim.errors import BadEpsilon
from szilardsim.errors import InvariantViolation
from szilardsim.errors import ProbabilityOutOfRange
from szilardsim.probdist import LN2
from szilardsim.probdist import ExplicitDistribution
from szilardsim.probdist import log2_sum_exp2
from szilardsim.probdist import to_type_classes

logger = logging.getLogger(__name__)

ORDERING_TOLERANCE = 1e-9
"""Slack, in bits, allowed when checking h_min <= shannon <= h_max"""


class CutLevel(object):
    """Witness of the smooth min-entropy: every entry is cut down to `level`

    :param float level: cut level lambda; log2 is carried too because at
        large n the level underflows a float
    :param float removed_mass: mass shaved off above the level
    :param float log2_level: base-2 log of the level
    """
    def __init__(self, level, removed_mass, log2_level=None):
        self.level = level
        self.removed_mass = removed_mass
        self.log2_level = math.log2(level) if log2_level is None else log2_level

    def __repr__(self):
        return 'CutLevel(log2_level=%r, removed_mass=%r)' % (self.log2_level,
                                                            self.removed_mass)


class RetainedSupport(object):
    """Witness of the smooth max-entropy on a type-class view

    :param float log2_size: log2 of the number of retained outcomes
    :param list deleted_classes: classes deleted entirely
    :param int cut_class: class deleted in part, or None
    :param float log2_deleted_in_cut: log2 of the number of strings deleted
        from `cut_class`
    :param float removed_mass: total deleted mass
    :param int size: exact number of retained outcomes, or None when the
        view carries no exact class sizes
    """
    def __init__(self, log2_size, deleted_classes, cut_class,
                 log2_deleted_in_cut, removed_mass, size=None):
        self.log2_size = log2_size
        self.size = size
        self.deleted_classes = deleted_classes
        self.cut_class = cut_class
        self.log2_deleted_in_cut = log2_deleted_in_cut
        self.removed_mass = removed_mass


class EntropyReport(object):
    """All six entropies of one distribution at one smoothing parameter

    :ivar int n: number of boxes
    :ivar float shannon: Shannon entropy, bits
    :ivar float h_min: min-entropy, bits
    :ivar float h_max: max-entropy, bits
    :ivar float epsilon: smoothing parameter
    :ivar float h_min_smooth: smooth min-entropy, bits
    :ivar float h_max_smooth: smooth max-entropy, bits
    """
    FIELDS = ('n', 'epsilon', 'shannon', 'h_min', 'h_max', 'h_min_smooth',
              'h_max_smooth')

    def __init__(self, n, shannon, h_min, h_max, epsilon, h_min_smooth,
                 h_max_smooth):
        self.n = n
        self.shannon = shannon
        self.h_min = h_min
        self.h_max = h_max
        self.epsilon = epsilon
        self.h_min_smooth = h_min_smooth
        self.h_max_smooth = h_max_smooth
        if not (h_min <= shannon + ORDERING_TOLERANCE
                and shannon <= h_max + ORDERING_TOLERANCE):
            raise InvariantViolation('h_min=%r, shannon=%r, h_max=%r are out '
                                     'of order' % (h_min, shannon, h_max))
        if (h_min_smooth < h_min - ORDERING_TOLERANCE
                or h_max_smooth > h_max + ORDERING_TOLERANCE):
            raise InvariantViolation('smoothing moved an entropy the wrong way')

    def to_dict(self):
        return dict((field, getattr(self, field)) for field in self.FIELDS)

    def __repr__(self):
        return 'EntropyReport(%s)' % ', '.join(
            '%s=%r' % (field, getattr(self, field)) for field in self.FIELDS)


def check_epsilon(epsilon):
    if not 0 <= epsilon < 1:
        raise BadEpsilon(epsilon)


def binary_entropy(p):
    """Return -p log2 p - (1-p) log2 (1-p), with 0 log 0 = 0"""
    if not 0 <= p <= 1:
        raise ProbabilityOutOfRange('p=%r is not in [0, 1]' % p)
    return -sum(x * math.log2(x) for x in (p, 1.0 - p) if x > 0)


def shannon(distribution):
    if isinstance(distribution, ExplicitDistribution):
        p = distribution.probs[distribution.probs > 0]
        return -math.fsum(p * np.log2(p))
    view = to_type_classes(distribution)
    classes = view.nonempty_classes()
    log_prob = view.class_log_prob[classes]
    mass = np.exp2(view.class_log_mass[classes])
    return -math.fsum(mass * log_prob)


def h_min(distribution):
    if isinstance(distribution, ExplicitDistribution):
        return -math.log2(distribution.peak())
    view = to_type_classes(distribution)
    return -float(np.max(view.class_log_prob))


def h_max(distribution):
    if isinstance(distribution, ExplicitDistribution):
        return math.log2(distribution.support_size())
    view = to_type_classes(distribution)
    classes = view.nonempty_classes()
    if view.class_counts is not None:
        return math.log2(sum(view.class_counts[k] for k in classes))
    return log2_sum_exp2(view.class_log_count[classes])


def floor_pow2(exponent):
    """Return floor(2**exponent) as an integer, also beyond float range"""
    if exponent < 0:
        return 0
    if exponent < 1000:
        return int(math.floor(2.0 ** exponent))
    whole = int(math.floor(exponent))
    return int(2.0 ** (exponent - whole + 52)) << (whole - 52)


def max_smoothing(distribution, epsilon):
    """Return the smooth max-entropy and the retained-support witness

    Outcomes are deleted in ascending order of probability (ties: higher
    index first) while the deleted mass stays within `epsilon`. At least one
    outcome is always kept.

    :return: (bits, witness); the witness is a subnormalized
        :class:`~szilardsim.probdist.ExplicitDistribution` on the explicit
        path and a :class:`.RetainedSupport` on the type-class path
    """
    check_epsilon(epsilon)
    if isinstance(distribution, ExplicitDistribution):
        return _max_smoothing_explicit(distribution, epsilon)
    return _max_smoothing_classes(to_type_classes(distribution), epsilon)


def _max_smoothing_explicit(distribution, epsilon):
    probs = distribution.probs
    support = distribution.support_indices()
    order = np.lexsort((-support, probs[support]))
    cumulative = np.cumsum(probs[support][order])
    deleted = int(np.searchsorted(cumulative, epsilon, side='right'))
    deleted = min(deleted, support.size - 1)
    witness_probs = probs.copy()
    witness_probs[support[order[:deleted]]] = 0.0
    witness = ExplicitDistribution(n=distribution.n, probs=witness_probs,
                                   normalized=False)
    return math.log2(support.size - deleted), witness


def _max_smoothing_classes(view, epsilon):
    classes = view.nonempty_classes()
    order = classes[np.argsort(-view.class_log_prob[classes], kind='stable')][::-1]
    class_mass = np.exp2(view.class_log_mass)
    exact = view.class_counts is not None
    removed = 0.0
    deleted_classes = []
    cut_class = None
    deleted_in_cut = 0
    for position, k in enumerate(order):
        last = position == len(order) - 1
        if not last and removed + class_mass[k] <= epsilon:
            removed += class_mass[k]
            deleted_classes.append(int(k))
            continue
        remainder = epsilon - removed
        if remainder > 0:
            log_prob = view.class_log_prob[k]
            if log_prob > -1000:
                deleted_in_cut = int(math.floor(remainder / 2.0 ** log_prob))
            else:
                deleted_in_cut = floor_pow2(math.log2(remainder) - log_prob)
            count = (view.class_counts[k] if exact
                     else floor_pow2(view.class_log_count[k]))
            deleted_in_cut = min(deleted_in_cut, count - 1)
            if deleted_in_cut > 0:
                removed += 2.0 ** (math.log2(deleted_in_cut) + log_prob)
        cut_class = int(k)
        break
    deleted = set(deleted_classes)
    kept = [int(k) for k in classes if k not in deleted]
    size = None
    if exact:
        size = sum(view.class_counts[k] for k in kept) - deleted_in_cut
        log2_size = math.log2(size)
    else:
        log_counts = view.class_log_count.copy()
        if deleted_in_cut > 0:
            fraction = 2.0 ** (math.log2(deleted_in_cut)
                               - view.class_log_count[cut_class])
            log_counts[cut_class] += math.log1p(-fraction) / LN2
        log2_size = log2_sum_exp2(log_counts[kept])
    log2_deleted = math.log2(deleted_in_cut) if deleted_in_cut else float('-inf')
    logger.debug('tail deletion removed %d whole classes and 2**%.3f strings '
                 'of class %s', len(deleted_classes), log2_deleted, cut_class)
    witness = RetainedSupport(log2_size=log2_size,
                              deleted_classes=deleted_classes,
                              cut_class=cut_class,
                              log2_deleted_in_cut=log2_deleted,
                              removed_mass=removed,
                              size=size)
    return log2_size, witness


def h_max_smooth(distribution, epsilon):
    return max_smoothing(distribution, epsilon)[0]


def min_smoothing(distribution, epsilon):
    """Return the smooth min-entropy and its :class:`.CutLevel` witness

    The cut level lambda solves ``sum_i max(p_i - lambda, 0) = epsilon``.
    Explicit tables solve the piecewise-linear equation exactly; type-class
    views bisect log2(lambda).

    :return: (bits, :class:`.CutLevel`); on the explicit path the witness
        also carries ``distribution``, the shaved subnormalized table
    """
    check_epsilon(epsilon)
    if isinstance(distribution, ExplicitDistribution):
        return _min_smoothing_explicit(distribution, epsilon)
    return _min_smoothing_classes(to_type_classes(distribution), epsilon)


def _min_smoothing_explicit(distribution, epsilon):
    probs = distribution.probs
    if epsilon == 0:
        level = distribution.peak()
    else:
        descending = np.sort(probs[probs > 0])[::-1]
        prefix = np.cumsum(descending)
        levels = (prefix - epsilon) / np.arange(1, descending.size + 1)
        following = np.append(descending[1:], 0.0)
        level = float(levels[np.argmax(levels >= following)])
        if level <= 0:
            level = float(np.spacing(epsilon)) / descending.size
    shaved = np.minimum(probs, level)
    cut = CutLevel(level=level,
                   removed_mass=math.fsum(np.maximum(probs - level, 0.0)))
    cut.distribution = ExplicitDistribution(n=distribution.n, probs=shaved,
                                            normalized=False)
    return -math.log2(level), cut


def _removed_above(view, classes, log_level):
    log_prob = view.class_log_prob[classes]
    above = log_prob > log_level
    mass = np.exp2(view.class_log_mass[classes][above])
    return math.fsum(-mass * np.expm1((log_level - log_prob[above]) * LN2))


def _min_smoothing_classes(view, epsilon):
    classes = view.nonempty_classes()
    log_prob = view.class_log_prob[classes]
    high = float(np.max(log_prob))
    if epsilon == 0:
        return -high, CutLevel(level=2.0 ** high, removed_mass=0.0,
                               log2_level=high)
    floor = float(np.min(log_prob))
    if _removed_above(view, classes, floor) < epsilon:
        # the level sits below every outcome: N lambda = total - epsilon
        total = math.fsum(np.exp2(view.class_log_mass[classes]))
        remaining = max(total - epsilon, float(np.spacing(epsilon)))
        log_level = (math.log2(remaining)
                     - log2_sum_exp2(view.class_log_count[classes]))
        logger.debug('cut level 2**%.12f below the least likely class',
                     log_level)
        return -log_level, CutLevel(level=2.0 ** log_level,
                                    removed_mass=total - remaining,
                                    log2_level=log_level)
    gap = 1.0
    while high - gap > floor and _removed_above(view, classes,
                                                high - gap) < epsilon:
        gap *= 2.0
    low = max(high - gap, floor)
    tolerance = LAMBDA_RELATIVE_TOLERANCE / LN2
    iterations = 0
    while high - low > tolerance and iterations < LAMBDA_MAX_ITERATIONS:
        middle = 0.5 * (low + high)
        if _removed_above(view, classes, middle) > epsilon:
            low = middle
        else:
            high = middle
        iterations += 1
    log_level = 0.5 * (low + high)
    logger.debug('cut level 2**%.12f after %d bisections', log_level, iterations)
    cut = CutLevel(level=2.0 ** log_level,
                   removed_mass=_removed_above(view, classes, log_level),
                   log2_level=log_level)
    return -log_level, cut


def h_min_smooth(distribution, epsilon):
    return min_smoothing(distribution, epsilon)[0]


def smooth_report(distribution, epsilon):
    """Assemble the :class:`.EntropyReport` of `distribution` at `epsilon`"""
    check_epsilon(epsilon)
    if not isinstance(distribution, ExplicitDistribution):
        distribution = to_type_classes(distribution)
    return EntropyReport(n=distribution.n,
                         shannon=shannon(distribution),
                         h_min=h_min(distribution),
                         h_max=h_max(distribution),
                         epsilon=epsilon,
                         h_min_smooth=h_min_smooth(distribution, epsilon),
                         h_max_smooth=h_max_smooth(distribution, epsilon))


def surprisal_quantile_estimate(q, n, epsilon):
    """Gaussian estimate of the smooth max-entropy of n i.i.d. boxes

    Returns ``n h(q) + sqrt(n v) z`` where v is the per-box variance of the
    surprisal and z the upper `epsilon` quantile of the standard normal.
    """
    if not 0 < q < 1:
        return 0.0
    variance = q * (1 - q) * math.log2(q / (1 - q)) ** 2
    return n * binary_entropy(q) + math.sqrt(n * variance) * norm.isf(epsilon)
