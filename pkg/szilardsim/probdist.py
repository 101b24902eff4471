"""This module contains the probability distributions over n Szilard boxes.

A microstate of n boxes is a bit string with L encoded as 0 and R as 1. The
index of an outcome is its big-endian bit string read as a binary number, so
bit 0 is the most significant bit and "leading bits" are the low positions.

Explicit tables are dense :mod:`numpy` arrays of length 2**n. Mixtures of
i.i.d. products are instead aggregated into n + 1 Hamming-weight type
classes, which keeps boxes counts up to ~10**5 computable. All log values in
this module are base 2.

.. autosummary::

    Outcome
    LogProb
    ExplicitDistribution
    MixtureOfProducts
    TypeClassView

.. moduleauthor:: szilardsim developers
"""
import functools
import logging
import math

import numpy as np
from scipy.special import gammaln
from scipy.special import logsumexp
from scipy.special import xlogy

from szilardsim.constants import EXACT_COUNT_MAX_N
from szilardsim.constants import EXPLICIT_SUPPORT_CAP
from szilardsim.constants import MIXTURE_WEIGHT_TOLERANCE
from szilardsim.constants import NORMALIZATION_TOLERANCE
from szilardsim.errors import ArityMismatch
from szilardsim.errors import BadOutcomeLength
from szilardsim.errors import DuplicateOutcome
from szilardsim.errors import EmptySubset
from szilardsim.errors import IndexOutOfRange
from szilardsim.errors import InvariantViolation
from szilardsim.errors import MixedArity
from szilardsim.errors import NegativeProbability
from szilardsim.errors import NotBijective
from szilardsim.errors import NotNormalized
from szilardsim.errors import ProbabilityOutOfRange
from szilardsim.errors import SupportOverflow
from szilardsim.errors import WeightSumError

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)
LOG_ZERO = float('-inf')

SIDES = 'LR'
"""Letters of the two sides of a box; position in the string is the bit value"""


def log2_sum_exp2(values):
    """Return log2 of the sum of 2**v over `values`, with max-subtraction

    :param values: base-2 log values; -inf entries contribute nothing
    :return: base-2 log of the sum, -inf for an empty or all-zero sum
    """
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return LOG_ZERO
    maximum = np.max(values)
    if not np.isfinite(maximum):
        return float(maximum)
    return float(logsumexp(values * LN2) / LN2)


def check_explicit_size(n, cap=EXPLICIT_SUPPORT_CAP):
    """Raise :class:`.SupportOverflow` when 2**n outcomes exceed `cap`"""
    if n > 62 or 2 ** n > cap:
        raise SupportOverflow(size=2 ** min(n, 62), cap=cap)


class Outcome(object):
    """Representation of one microstate of n boxes

    :param bits: sequence of 0/1 values, or a string over ``L``/``R``
    :ivar tuple bits: bit values, 0 for L and 1 for R
    """
    __slots__ = ('bits',)

    def __init__(self, bits):
        if isinstance(bits, str):
            try:
                bits = tuple(SIDES.index(side) for side in bits.upper())
            except ValueError:
                raise BadOutcomeLength('outcome %r contains a side other '
                                       'than L or R' % bits)
        bits = tuple(int(bit) for bit in bits)
        if not bits:
            raise BadOutcomeLength('an outcome needs at least one box')
        if any(bit not in (0, 1) for bit in bits):
            raise BadOutcomeLength('bits must be 0 or 1, got %r' % (bits,))
        object.__setattr__(self, 'bits', bits)

    def __setattr__(self, name, value):
        raise AttributeError('Outcome is immutable')

    @classmethod
    def from_index(cls, index, n):
        """Make the outcome whose big-endian index is `index`"""
        if not 0 <= index < 2 ** n:
            raise IndexOutOfRange('index %d is not an outcome of %d boxes'
                                  % (index, n))
        return cls((index >> (n - 1 - position)) & 1 for position in range(n))

    @property
    def n(self):
        return len(self.bits)

    @property
    def index(self):
        index = 0
        for bit in self.bits:
            index = (index << 1) | bit
        return index

    def __eq__(self, other):
        return isinstance(other, Outcome) and self.bits == other.bits

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.bits)

    def __str__(self):
        return ''.join(SIDES[bit] for bit in self.bits)

    def __repr__(self):
        return 'Outcome(%r)' % str(self)


@functools.total_ordering
class LogProb(object):
    """A probability carried as its base-2 logarithm

    :param float log2_value: log2 of the probability; -inf encodes 0
    """
    __slots__ = ('log2_value',)

    def __init__(self, log2_value):
        log2_value = float(log2_value)
        if math.isnan(log2_value) or log2_value > NORMALIZATION_TOLERANCE:
            raise InvariantViolation('log2 probability %r is not <= 0'
                                     % log2_value)
        object.__setattr__(self, 'log2_value', min(log2_value, 0.0))

    def __setattr__(self, name, value):
        raise AttributeError('LogProb is immutable')

    @classmethod
    def from_probability(cls, probability):
        if probability < 0:
            raise NegativeProbability('probability %r < 0' % probability)
        if probability == 0:
            return cls(LOG_ZERO)
        return cls(math.log2(probability))

    def probability(self):
        if self.log2_value == LOG_ZERO:
            return 0.0
        return 2.0 ** self.log2_value

    def is_zero(self):
        return self.log2_value == LOG_ZERO

    def __mul__(self, other):
        return LogProb(self.log2_value + other.log2_value)

    def __add__(self, other):
        return LogProb(float(np.logaddexp2(self.log2_value, other.log2_value)))

    def __eq__(self, other):
        return isinstance(other, LogProb) and self.log2_value == other.log2_value

    def __lt__(self, other):
        return self.log2_value < other.log2_value

    def __hash__(self):
        return hash(self.log2_value)

    def __repr__(self):
        return 'LogProb(%r)' % self.log2_value


class ExplicitDistribution(object):
    """A (sub)probability table over all 2**n outcomes of n boxes

    Entries are indexed by :attr:`Outcome.index`. Outcomes with probability
    exactly 0 are outside the support.

    :param int n: number of boxes
    :param probs: 2**n nonnegative entries
    :param bool normalized: whether the entries must sum to 1; smoothing
        witnesses are built with ``normalized=False`` and may sum to less
    :param int cap: largest allowed number of outcomes
    :ivar int n: number of boxes
    :ivar probs: read-only :class:`numpy.ndarray` of entries
    :ivar bool normalized: whether the entries sum to 1
    """
    def __init__(self, n, probs, normalized=True, cap=EXPLICIT_SUPPORT_CAP):
        if n < 1:
            raise BadOutcomeLength('a distribution needs at least one box')
        check_explicit_size(n, cap)
        probs = np.array(probs, dtype=float)
        if probs.shape != (2 ** n,):
            raise BadOutcomeLength('expected %d entries for %d boxes, got %s'
                                   % (2 ** n, n, probs.shape))
        if np.any(probs < 0) or np.any(np.isnan(probs)):
            raise NegativeProbability('entries must be nonnegative numbers')
        total = math.fsum(probs)
        if normalized and abs(total - 1.0) > NORMALIZATION_TOLERANCE:
            raise NotNormalized(total=total)
        if not normalized and total > 1.0 + NORMALIZATION_TOLERANCE:
            raise NotNormalized(total=total)
        probs.setflags(write=False)
        self.n = n
        self.probs = probs
        self.normalized = normalized

    @property
    def size(self):
        return self.probs.shape[0]

    def support_indices(self):
        return np.flatnonzero(self.probs > 0)

    def support_size(self):
        return int(np.count_nonzero(self.probs > 0))

    def peak(self):
        return float(self.probs.max())

    def total_mass(self):
        return math.fsum(self.probs)

    def probability(self, outcome):
        if isinstance(outcome, str):
            outcome = Outcome(outcome)
        if outcome.n != self.n:
            raise BadOutcomeLength('outcome %s has %d boxes, expected %d'
                                   % (outcome, outcome.n, self.n))
        return float(self.probs[outcome.index])

    def log_prob(self, outcome):
        return LogProb.from_probability(self.probability(outcome))

    def items(self):
        """Iterate over (:class:`.Outcome`, probability) pairs of the support"""
        for index in self.support_indices():
            yield Outcome.from_index(int(index), self.n), float(self.probs[index])

    def to_dict(self):
        return dict((str(outcome), p) for outcome, p in self.items())

    def __repr__(self):
        return 'ExplicitDistribution(n=%d, support=%d)' % (self.n,
                                                           self.support_size())


class MixtureOfProducts(object):
    """A weighted mixture of i.i.d. Bernoulli products over n boxes

    Component ``(w, q)`` contributes ``w * q**(n-k) * (1-q)**k`` to every
    string with k boxes on the R side.

    :param int n: number of boxes
    :param components: sequence of (weight, left-probability) pairs
    :ivar int n: number of boxes
    :ivar tuple components: (weight, left-probability) pairs
    """
    def __init__(self, n, components):
        if n < 1:
            raise BadOutcomeLength('a distribution needs at least one box')
        components = tuple((float(w), float(q)) for w, q in components)
        if not components:
            raise WeightSumError('a mixture needs at least one component')
        for w, q in components:
            if not 0 < w <= 1:
                raise WeightSumError('weight %r is not in (0, 1]' % w)
            if not 0 <= q <= 1:
                raise ProbabilityOutOfRange('left-probability %r is not in '
                                            '[0, 1]' % q)
        total = math.fsum(w for w, _ in components)
        if abs(total - 1.0) > MIXTURE_WEIGHT_TOLERANCE:
            raise WeightSumError('weights sum to %r, not 1' % total)
        self.n = n
        self.components = components

    def __repr__(self):
        return 'MixtureOfProducts(n=%d, components=%r)' % (self.n,
                                                           list(self.components))


class TypeClassView(object):
    """Hamming-weight aggregation of a distribution constant on type classes

    Class k holds the C(n, k) strings with k boxes on the R side; all of
    them share one per-string probability.

    :param int n: number of boxes
    :param class_log_prob: length n + 1 array, log2 per-string probability
    :param class_log_count: length n + 1 array, log2 C(n, k)
    :param class_counts: exact C(n, k) integers, or None above
        :data:`~szilardsim.constants.EXACT_COUNT_MAX_N`
    """
    def __init__(self, n, class_log_prob, class_log_count, class_counts=None):
        self.n = n
        self.class_log_prob = np.asarray(class_log_prob, dtype=float)
        self.class_log_count = np.asarray(class_log_count, dtype=float)
        self.class_counts = class_counts
        self.class_log_prob.setflags(write=False)
        self.class_log_count.setflags(write=False)

    @property
    def class_log_mass(self):
        return self.class_log_prob + self.class_log_count

    def nonempty_classes(self):
        return np.flatnonzero(np.isfinite(self.class_log_prob))

    def string_probability(self, k):
        """Return the :class:`.LogProb` of any single string in class `k`"""
        return LogProb(self.class_log_prob[k])

    def total_log_mass(self):
        return log2_sum_exp2(self.class_log_mass)

    def __repr__(self):
        return 'TypeClassView(n=%d)' % self.n


def make_explicit(n, entries, cap=EXPLICIT_SUPPORT_CAP):
    """Make an :class:`.ExplicitDistribution` from (outcome, probability) pairs

    :param int n: number of boxes
    :param entries: iterable of (:class:`.Outcome` or ``'LR..'`` string,
        probability) pairs with distinct outcomes; unlisted outcomes get 0
    :param int cap: largest allowed number of outcomes
    """
    if n < 1:
        raise BadOutcomeLength('a distribution needs at least one box')
    check_explicit_size(n, cap)
    probs = np.zeros(2 ** n)
    seen = set()
    for outcome, probability in entries:
        if not isinstance(outcome, Outcome):
            outcome = Outcome(outcome)
        if outcome.n != n:
            raise BadOutcomeLength('outcome %s has %d boxes, expected %d'
                                   % (outcome, outcome.n, n))
        if outcome in seen:
            raise DuplicateOutcome('outcome %s listed twice' % outcome)
        if probability < 0:
            raise NegativeProbability('p(%s) = %r < 0' % (outcome, probability))
        seen.add(outcome)
        probs[outcome.index] = probability
    return ExplicitDistribution(n=n, probs=probs, cap=cap)


def make_uniform(n, cap=EXPLICIT_SUPPORT_CAP):
    check_explicit_size(n, cap)
    return ExplicitDistribution(n=n, probs=np.full(2 ** n, 0.5 ** n), cap=cap)


def make_deterministic(bits, cap=EXPLICIT_SUPPORT_CAP):
    """Make the point mass on `bits` (an :class:`.Outcome` or string)"""
    outcome = bits if isinstance(bits, Outcome) else Outcome(bits)
    return make_explicit(outcome.n, [(outcome, 1.0)], cap=cap)


def iid(q, n):
    """Make the i.i.d. product of n boxes each on the L side with probability q"""
    return MixtureOfProducts(n=n, components=[(1.0, q)])


def tensor(first, second, cap=EXPLICIT_SUPPORT_CAP):
    """Combine two independent explicit distributions

    The result lives on n_first + n_second boxes with
    ``p(x || y) = first(x) * second(y)``.
    """
    check_explicit_size(first.n + second.n, cap)
    probs = np.outer(first.probs, second.probs).ravel()
    return ExplicitDistribution(n=first.n + second.n, probs=probs,
                                normalized=first.normalized and second.normalized,
                                cap=cap)


def mixture(weights, components, tolerance=MIXTURE_WEIGHT_TOLERANCE):
    """Mix product distributions

    :param weights: positive weights summing to 1 within `tolerance`
    :param components: :class:`.MixtureOfProducts` sharing one n; nested
        mixtures are flattened
    :param float tolerance: allowed deviation of the weight sum from 1
    """
    weights = [float(w) for w in weights]
    components = list(components)
    if len(weights) != len(components) or not components:
        raise WeightSumError('%d weights for %d components'
                             % (len(weights), len(components)))
    if any(w <= 0 for w in weights):
        raise WeightSumError('weights must be positive, got %r' % weights)
    total = math.fsum(weights)
    if abs(total - 1.0) > tolerance:
        raise WeightSumError('weights sum to %r, not 1' % total)
    arities = set(component.n for component in components)
    if len(arities) != 1:
        raise MixedArity('components have box counts %s' % sorted(arities))
    flat = []
    for weight, component in zip(weights, components):
        for inner_weight, q in component.components:
            flat.append((weight / total * inner_weight, q))
    return MixtureOfProducts(n=components[0].n, components=flat)


def to_type_classes(distribution):
    """Aggregate a :class:`.MixtureOfProducts` into a :class:`.TypeClassView`

    A component with q in {0, 1} puts all its weight on a single class; the
    other classes get log probability -inf from it.
    """
    if isinstance(distribution, TypeClassView):
        return distribution
    n = distribution.n
    k = np.arange(n + 1, dtype=float)
    terms = np.array([math.log2(w) + (xlogy(n - k, q) + xlogy(k, 1.0 - q)) / LN2
                      for w, q in distribution.components])
    with np.errstate(divide='ignore'):
        maximum = np.max(terms, axis=0)
        finite = np.isfinite(maximum)
        shifted = np.where(finite, maximum, 0.0)
        class_log_prob = np.where(
            finite,
            shifted + np.log2(np.sum(np.exp2(terms - shifted), axis=0)),
            LOG_ZERO)
    if n <= EXACT_COUNT_MAX_N:
        class_counts = [math.comb(n, j) for j in range(n + 1)]
        class_log_count = np.array([math.log2(count) for count in class_counts])
    else:
        class_counts = None
        class_log_count = (gammaln(n + 1) - gammaln(k + 1)
                           - gammaln(n - k + 1)) / LN2
    logger.debug('aggregated %d boxes into %d type classes', n, n + 1)
    return TypeClassView(n=n, class_log_prob=class_log_prob,
                         class_log_count=class_log_count,
                         class_counts=class_counts)


def hamming_weights(n):
    """Return the number of R boxes of every outcome index of n boxes"""
    indices = np.arange(2 ** n, dtype=np.int64)
    weights = np.zeros(2 ** n, dtype=np.int64)
    for position in range(n):
        weights += (indices >> position) & 1
    return weights


def explicit_of(distribution, cap=EXPLICIT_SUPPORT_CAP):
    """Expand a mixture or type-class view into an explicit table"""
    if isinstance(distribution, ExplicitDistribution):
        return distribution
    view = to_type_classes(distribution)
    check_explicit_size(view.n, cap)
    per_class = np.exp2(view.class_log_prob)
    probs = per_class[hamming_weights(view.n)]
    return ExplicitDistribution(n=view.n, probs=probs, cap=cap)


def check_positions(n, positions):
    positions = [int(position) for position in positions]
    if not positions:
        raise EmptySubset('a marginal needs at least one bit')
    for position in positions:
        if not 0 <= position < n:
            raise IndexOutOfRange('bit %d is not below n=%d' % (position, n))
    if len(set(positions)) != len(positions):
        raise IndexOutOfRange('bits %s repeat' % positions)
    return positions


def marginal(distribution, positions):
    """Return the marginal distribution on the bits at `positions`

    The result's bit j is the input's bit ``positions[j]``.
    """
    positions = check_positions(distribution.n, positions)
    table = distribution.probs.reshape((2,) * distribution.n)
    dropped = tuple(axis for axis in range(distribution.n)
                    if axis not in positions)
    if dropped:
        table = table.sum(axis=dropped)
    kept = sorted(positions)
    table = np.transpose(table, [kept.index(position) for position in positions])
    return ExplicitDistribution(n=len(positions), probs=table.ravel(),
                                normalized=distribution.normalized)


def check_permutation(permutation, size):
    permutation = np.asarray(permutation, dtype=np.int64)
    if permutation.shape != (size,):
        raise NotBijective('expected %d images, got %s'
                           % (size, permutation.shape))
    if (np.any(permutation < 0) or np.any(permutation >= size)
            or np.any(np.bincount(permutation, minlength=size) != 1)):
        raise NotBijective('images do not cover every outcome exactly once')
    return permutation


def apply_permutation(distribution, permutation):
    """Relabel outcomes: the mass at index x moves to ``permutation[x]``"""
    permutation = check_permutation(permutation, distribution.size)
    probs = np.empty(distribution.size)
    probs[permutation] = distribution.probs
    return ExplicitDistribution(n=distribution.n, probs=probs,
                                normalized=distribution.normalized)


def statistical_distance(first, second):
    """Return the mass removed going from `first` to `second`

    ``d(P, Q) = sum_x max(P(x) - Q(x), 0)``; `second` may be subnormalized.
    """
    if first.n != second.n:
        raise ArityMismatch('distributions on %d and %d boxes'
                            % (first.n, second.n))
    return math.fsum(np.maximum(first.probs - second.probs, 0.0))


def make_generator(seed):
    """Return a counter-based :class:`numpy.random.Generator` for `seed`"""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def spawn_generators(seed, count):
    """Return `count` independent Philox streams derived from `seed`"""
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.Generator(np.random.Philox(child)) for child in children]


def sample_indices(distribution, generator, size):
    """Draw `size` outcome indices of an explicit distribution"""
    cumulative = np.cumsum(distribution.probs)
    draws = generator.random(size) * cumulative[-1]
    indices = np.searchsorted(cumulative, draws, side='right')
    return np.minimum(indices, distribution.support_indices()[-1])


def sample(distribution, generator):
    """Draw one :class:`.Outcome`

    Type-class views and mixtures draw a class, then a uniform member of it.
    """
    if isinstance(distribution, ExplicitDistribution):
        index = int(sample_indices(distribution, generator, 1)[0])
        return Outcome.from_index(index, distribution.n)
    view = to_type_classes(distribution)
    class_mass = np.exp2(view.class_log_mass - view.total_log_mass())
    cumulative = np.cumsum(class_mass)
    k = int(np.searchsorted(cumulative, generator.random() * cumulative[-1],
                            side='right'))
    k = min(k, int(view.nonempty_classes()[-1]))
    bits = np.zeros(view.n, dtype=np.int64)
    bits[generator.choice(view.n, size=k, replace=False)] = 1
    return Outcome(bits)


def bits_at(indices, n, positions):
    """Return the bits at `positions` of every outcome index, one row each"""
    indices = np.asarray(indices, dtype=np.int64)
    shifts = np.array([n - 1 - position for position in positions],
                      dtype=np.int64)
    return (indices[:, None] >> shifts[None, :]) & 1
