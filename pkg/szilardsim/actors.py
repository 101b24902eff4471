"""This module contains all actor definitions.

.. autosummary::

    Actor
    BoxArray
    Agent
"""
import logging

from szilardsim.events import WeightCoupled
from szilardsim.probdist import bits_at
from szilardsim.probdist import sample_indices

logger = logging.getLogger(__name__)


class Actor(object):
    """Representation of an actor

    The superclass of all actors defining environment variables.

    :param env: SimPy simulation :class:`~simpy.core.Environment`
    :param str name: name of the actor
    :ivar env: SimPy simulation :class:`~simpy.core.Environment`
    :ivar str name: name of the actor
    """
    def __init__(self, env, name=None):
        self.env = env
        self.name = name


class BoxArray(Actor):
    """The n Szilard boxes, prepared afresh for every play

    Each batch draws from its own random stream, so a batch's microstates
    depend only on the run's seed and the batch index.

    :param distribution: :class:`~szilardsim.probdist.ExplicitDistribution`
        of the microstates
    :param list generators: one :class:`numpy.random.Generator` per batch
    :param agent: :class:`.Agent` playing against these boxes
    :param int batch_size: plays per batch
    :param int n_samples: plays in the whole run
    """
    def __init__(self, env, distribution, generators, agent, batch_size,
                 n_samples, name='boxes'):
        super(BoxArray, self).__init__(env=env, name=name)
        self.distribution = distribution
        self.generators = generators
        self.agent = agent
        self.batch_size = batch_size
        self.n_samples = n_samples

    def react_to_batch_prepared(self, event):
        batch = event.value
        size = min(self.batch_size, self.n_samples - batch * self.batch_size)
        microstates = sample_indices(self.distribution, self.generators[batch],
                                     size)
        WeightCoupled(env=self.env, delay=0, agent=self.agent,
                      microstates=microstates)


class Agent(Actor):
    """The player holding a preset :class:`~szilardsim.game.Strategy`

    A play succeeds, lifting the weight, iff every bet box shows its guessed
    side after the permutation.

    :param strategy: :class:`~szilardsim.game.Strategy` in use
    """
    def __init__(self, env, strategy, name='agent'):
        super(Agent, self).__init__(env=env, name=name)
        self.strategy = strategy

    def react_to_weight_coupled(self, event):
        microstates = self.strategy.plan.permutation[event.value]
        if self.strategy.bets:
            observed = bits_at(microstates, self.strategy.plan.n,
                               self.strategy.positions)
            successes = int((observed == self.strategy.guesses).all(axis=1).sum())
        else:
            successes = len(microstates)
        self.env.controller.record_batch(agent=self, plays=len(microstates),
                                         successes=successes)
