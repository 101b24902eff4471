"""This module contains all event definitions.

One Monte Carlo run is a SimPy simulation in which every batch of plays is
an event: the boxes are prepared in random microstates, then the agent's
chosen boxes are coupled to the preset weight.

.. autosummary::

    BatchPrepared
    WeightCoupled
"""
from simpy.events import Timeout


class BatchPrepared(Timeout):
    """A :class:`~szilardsim.actors.BoxArray` prepares a batch of microstates

    :param env: SimPy simulation :class:`~simpy.core.Environment`
    :param float delay: time until the batch is prepared
    :param boxes: :class:`~szilardsim.actors.BoxArray` that prepares it
    :param int batch: index of the batch within the run
    """
    def __init__(self, env, delay, boxes, batch):
        super(BatchPrepared, self).__init__(env=env, delay=delay, value=batch)
        self.callbacks.append(boxes.react_to_batch_prepared)


class WeightCoupled(Timeout):
    """An :class:`~szilardsim.actors.Agent` couples its chosen boxes to the
    weight after the preset permutation has acted

    :param env: SimPy simulation :class:`~simpy.core.Environment`
    :param float delay: time until the coupling
    :param agent: :class:`~szilardsim.actors.Agent` that bet on the boxes
    :param microstates: outcome indices of the batch before the permutation
    """
    def __init__(self, env, delay, agent, microstates):
        super(WeightCoupled, self).__init__(env=env, delay=delay,
                                            value=microstates)
        self.callbacks.append(agent.react_to_weight_coupled)
