import pytest

from szilardsim.compress import identity_plan
from szilardsim.errors import ConfigurationError
from szilardsim.game import Strategy
from szilardsim.probdist import make_deterministic
from szilardsim.simulation import Controller
from test_actors import basic_controller
from test_actors import basic_strategy
from test_probdist import basic_p_ex


def test_controller_plays_every_sample():
    controller = basic_controller(n_samples=10)
    plays, successes = controller.run()
    assert plays == 10
    assert [value for _, value in controller.plays[controller.agent]] == [4, 4, 2]
    assert controller.env.now == 2


def test_controller_point_mass():
    controller = Controller(distribution=make_deterministic('LR'),
                            strategy=basic_strategy(), seed=0, n_samples=100)
    assert controller.run() == (100, 100)


def test_controller_run_until():
    controller = basic_controller(n_samples=12)
    plays, _ = controller.run(until=1)
    assert plays == 4


def test_controller_record():
    controller = basic_controller()
    recorder = {}
    for value in range(3):
        controller.record(recorder=recorder, actor='actor', value=value)
    assert recorder == {'actor': [(0, 0), (0, 1), (0, 2)]}


def test_controller_results_depend_on_seed_only():
    strategy = Strategy(identity_plan(3), [(0, 0), (2, 0)])
    first = Controller(distribution=basic_p_ex(), strategy=strategy, seed=9,
                       n_samples=5000, batch_size=512).run()
    second = Controller(distribution=basic_p_ex(), strategy=strategy, seed=9,
                        n_samples=5000, batch_size=512).run()
    assert first == second


def test_controller_rejects_empty_run():
    with pytest.raises(ConfigurationError):
        basic_controller(n_samples=0)
