"""This module contains the Monte Carlo setup and execution.

.. autosummary:

    ControlledEnvironment
    Controller
"""
import logging
import math

from simpy.core import Environment

from szilardsim.actors import Agent
from szilardsim.actors import BoxArray
from szilardsim.constants import MONTE_CARLO_BATCH_SIZE
from szilardsim.errors import ConfigurationError
from szilardsim.events import BatchPrepared
from szilardsim.probdist import spawn_generators

logger = logging.getLogger(__name__)


class ControlledEnvironment(Environment):
    """SimPy :class:`~simpy.core.Environment` with a reference to its
    :class:`.Controller`

    :param controller: :class:`.Controller` that created the
        :class:`~simpy.core.Environment`
    """
    def __init__(self, controller):
        super(ControlledEnvironment, self).__init__()
        self.controller = controller


class Controller:
    """Controller that prepares, runs, and tallies a Monte Carlo game

    :param distribution: :class:`~szilardsim.probdist.ExplicitDistribution`
        of the boxes
    :param strategy: :class:`~szilardsim.game.Strategy` with an explicit plan
    :param int seed: seed of the run; batch streams are spawned from it
    :param int n_samples: number of plays
    :param int batch_size: plays per :class:`~szilardsim.events.BatchPrepared`
    :ivar env: SimPy simulation :class:`~simpy.core.Environment`
    :ivar agent: the :class:`~szilardsim.actors.Agent`
    :ivar boxes: the :class:`~szilardsim.actors.BoxArray`
    :ivar dict plays: plays per batch; :class:`Agents <.Agent>` key to lists
        of (time, value) tuples
    :ivar dict successes: successful plays per batch, keyed like `plays`
    """
    def __init__(self, distribution, strategy, seed, n_samples,
                 batch_size=MONTE_CARLO_BATCH_SIZE):
        if n_samples < 1:
            raise ConfigurationError('n_samples must be positive, got %r'
                                     % n_samples)
        self.env = ControlledEnvironment(controller=self)
        self.seed = seed
        self.n_samples = n_samples
        self.plays = {}
        self.successes = {}
        batches = int(math.ceil(n_samples / float(batch_size)))
        self.agent = Agent(env=self.env, strategy=strategy)
        self.boxes = BoxArray(env=self.env, distribution=distribution,
                              generators=spawn_generators(seed, batches),
                              agent=self.agent, batch_size=batch_size,
                              n_samples=n_samples)
        for batch in range(batches):
            BatchPrepared(env=self.env, delay=batch, boxes=self.boxes,
                          batch=batch)
        logger.debug('scheduled %d batches of %d plays, seed %d', batches,
                     batch_size, seed)

    def record(self, recorder, actor, value):
        """Record the time and `value` in the recorder keyed by the `actor`

        :param dict recorder: recorder to record the change
        :param actor: :class:`.Actor` that experienced the change
        :param value: new value of changed quantity
        """
        entry = (self.env.now, value)
        try:
            recorder[actor].append(entry)
        except KeyError:
            recorder[actor] = [entry]

    def record_batch(self, agent, plays, successes):
        """Record the outcome of one batch of plays

        :param agent: :class:`.Agent` that played
        :param int plays: plays in the batch
        :param int successes: plays that lifted the weight
        """
        self.record(recorder=self.plays, actor=agent, value=plays)
        self.record(recorder=self.successes, actor=agent, value=successes)

    def totals(self):
        """Return (plays, successes) recorded so far"""
        plays = sum(value for _, value in self.plays.get(self.agent, []))
        successes = sum(value for _, value in self.successes.get(self.agent, []))
        return plays, successes

    def run(self, until=None):
        """Run the simulation, by default until every batch is played

        :param float until: simulation duration
        """
        self.env.run(until=until)
        return self.totals()
