"""This module contains the information-compressing reversible interaction.

The agent's unitary is realized as a classical permutation of outcomes: for
diagonal states nothing else is needed. The canonical plan sorts outcomes by
non-increasing probability so the support is packed onto the lowest indices
and the leading bits become known.

.. autosummary::

    BitLabel
    CompressionPlan
"""
import logging
import math

import numpy as np

from szilardsim.constants import EXPLICIT_SUPPORT_CAP
from szilardsim.constants import UNIFORMITY_TOLERANCE
from szilardsim.errors import BiasedBitsPresent
from szilardsim.errors import IndexOutOfRange
from szilardsim.errors import SamePosition
from szilardsim.errors import SymbolicPlanError
from szilardsim.probdist import apply_permutation
from szilardsim.probdist import check_explicit_size
from szilardsim.probdist import check_permutation
from szilardsim.probdist import marginal

logger = logging.getLogger(__name__)

KNOWN = 'known'
BIASED = 'biased'
UNIFORM = 'uniform'


class BitLabel(object):
    """Classification of one bit after compression

    :param str kind: :data:`KNOWN`, :data:`BIASED` or :data:`UNIFORM`
    :param int value: the fixed value of a known bit, else None
    """
    def __init__(self, kind, value=None):
        self.kind = kind
        self.value = value

    def __eq__(self, other):
        return (isinstance(other, BitLabel) and self.kind == other.kind
                and self.value == other.value)

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        if self.kind == KNOWN:
            return 'known(%s)' % 'LR'[self.value]
        return self.kind


class CompressionPlan(object):
    """A preset relabeling of microstates

    :param int n: number of boxes
    :param permutation: images of every outcome index, or None for a
        symbolic plan that is only described, never materialized
    :param list profile: :class:`.BitLabel` per bit after the relabeling,
        or None when symbolic
    :ivar bool symbolic: whether the plan carries no explicit permutation
    """
    def __init__(self, n, permutation=None, profile=None):
        self.n = n
        if permutation is not None:
            permutation = check_permutation(permutation, 2 ** n)
            permutation.setflags(write=False)
        self.permutation = permutation
        self.profile = profile

    @property
    def symbolic(self):
        return self.permutation is None

    def apply(self, distribution):
        if self.symbolic:
            raise SymbolicPlanError('plan on %d boxes has no explicit '
                                    'permutation' % self.n)
        return apply_permutation(distribution, self.permutation)

    def is_identity(self):
        return (not self.symbolic
                and bool(np.array_equal(self.permutation,
                                        np.arange(2 ** self.n))))

    def __repr__(self):
        kind = 'symbolic' if self.symbolic else 'explicit'
        return 'CompressionPlan(n=%d, %s, profile=%r)' % (self.n, kind,
                                                         self.profile)


def identity_plan(n, cap=EXPLICIT_SUPPORT_CAP):
    """The plan of the standard heat engine: no interaction between boxes"""
    check_explicit_size(n, cap)
    return CompressionPlan(n=n, permutation=np.arange(2 ** n))


def symbolic_plan(n):
    """A plan for structured distributions too large to tabulate"""
    return CompressionPlan(n=n)


def canonical_permutation(distribution, cap=EXPLICIT_SUPPORT_CAP):
    """Return the plan sorting outcomes by non-increasing probability

    Ties keep their lexicographic order, so an already sorted distribution
    gets the identity and the support lands on indices 0..|supp|-1.
    """
    check_explicit_size(distribution.n, cap)
    order = np.argsort(-distribution.probs, kind='stable')
    permutation = np.empty(distribution.size, dtype=np.int64)
    permutation[order] = np.arange(distribution.size)
    compressed = apply_permutation(distribution, permutation)
    plan = CompressionPlan(n=distribution.n, permutation=permutation,
                           profile=bit_profile(compressed))
    logger.debug('compressed %d boxes: %r', distribution.n, plan.profile)
    return plan


def bit_profile(distribution):
    """Label each bit known, uniform or biased from its marginal

    A bit is known iff its marginal is a point mass and uniform iff its
    marginal is (1/2, 1/2) within
    :data:`~szilardsim.constants.UNIFORMITY_TOLERANCE`.
    """
    profile = []
    for position in range(distribution.n):
        left, right = marginal(distribution, [position]).probs
        if right == 0:
            profile.append(BitLabel(KNOWN, 0))
        elif left == 0:
            profile.append(BitLabel(KNOWN, 1))
        elif abs(left - 0.5) <= UNIFORMITY_TOLERANCE:
            profile.append(BitLabel(UNIFORM))
        else:
            profile.append(BitLabel(BIASED))
    return profile


def leading_known_bits(distribution):
    """Count the leading bits that are 0 on every support outcome"""
    last = int(distribution.support_indices()[-1])
    return distribution.n - last.bit_length()


def bennett_work(profile, unit):
    """Bennett's ``(n - n_u) c`` for a profile of known and uniform bits only

    :param list profile: :class:`.BitLabel` per bit
    :param unit: work value of one box; anything supporting ``bits * unit``
    """
    biased = [position for position, label in enumerate(profile)
              if label.kind == BIASED]
    if biased:
        raise BiasedBitsPresent(biased)
    uniform = sum(1 for label in profile if label.kind == UNIFORM)
    return (len(profile) - uniform) * unit


def cnot_permutation(n, control, target):
    for position in (control, target):
        if not 0 <= position < n:
            raise IndexOutOfRange('bit %d is not below n=%d' % (position, n))
    if control == target:
        raise SamePosition('control and target are both bit %d' % control)
    indices = np.arange(2 ** n, dtype=np.int64)
    control_mask = 1 << (n - 1 - control)
    target_mask = 1 << (n - 1 - target)
    return np.where(indices & control_mask, indices ^ target_mask, indices)


def apply_cnot(distribution, control, target):
    """Flip bit `target` on every outcome whose bit `control` is R"""
    return apply_permutation(distribution,
                             cnot_permutation(distribution.n, control, target))


def compaction_bound(distribution):
    """Lower bound n - ceil(log2 |supp|) on the leading known bits"""
    return distribution.n - int(math.ceil(math.log2(distribution.support_size())))


def is_compressed(distribution):
    """Whether entries are already in non-increasing order"""
    return bool(np.all(np.diff(distribution.probs) <= 0))


def compress(distribution, cap=EXPLICIT_SUPPORT_CAP):
    """Return (plan, compressed distribution) for an explicit distribution"""
    plan = canonical_permutation(distribution, cap=cap)
    return plan, plan.apply(distribution)

