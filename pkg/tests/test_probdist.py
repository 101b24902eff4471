import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import settings
from hypothesis import strategies as st

from szilardsim.compress import cnot_permutation
from szilardsim.entropy import h_max
from szilardsim.entropy import h_min
from szilardsim.entropy import shannon
from szilardsim.errors import BadOutcomeLength
from szilardsim.errors import DuplicateOutcome
from szilardsim.errors import EmptySubset
from szilardsim.errors import IndexOutOfRange
from szilardsim.errors import InvariantViolation
from szilardsim.errors import MixedArity
from szilardsim.errors import NegativeProbability
from szilardsim.errors import NotBijective
from szilardsim.errors import NotNormalized
from szilardsim.errors import SupportOverflow
from szilardsim.errors import WeightSumError
from szilardsim.probdist import ExplicitDistribution
from szilardsim.probdist import LogProb
from szilardsim.probdist import Outcome
from szilardsim.probdist import apply_permutation
from szilardsim.probdist import bits_at
from szilardsim.probdist import explicit_of
from szilardsim.probdist import iid
from szilardsim.probdist import log2_sum_exp2
from szilardsim.probdist import make_deterministic
from szilardsim.probdist import make_explicit
from szilardsim.probdist import make_generator
from szilardsim.probdist import make_uniform
from szilardsim.probdist import marginal
from szilardsim.probdist import mixture
from szilardsim.probdist import sample
from szilardsim.probdist import sample_indices
from szilardsim.probdist import spawn_generators
from szilardsim.probdist import statistical_distance
from szilardsim.probdist import tensor
from szilardsim.probdist import to_type_classes


def basic_pair():
    return make_explicit(2, [('LL', 0.5), ('RR', 0.5)])


def basic_p_ex():
    return make_explicit(3, [('LLL', 0.5), ('LLR', 0.49998), ('LRL', 0.00001),
                             ('LRR', 0.00001)])


def basic_bit(q=0.7):
    return make_explicit(1, [('L', q), ('R', 1.0 - q)])


def random_explicit(generator, n, zero_fraction=0.3):
    """Draw a random explicit distribution with some zero entries"""
    probs = generator.dirichlet(np.ones(2 ** n))
    probs[generator.random(2 ** n) < zero_fraction] = 0.0
    if probs.sum() == 0:
        probs[generator.integers(2 ** n)] = 1.0
    return ExplicitDistribution(n=n, probs=probs / probs.sum())


@st.composite
def explicit_distributions(draw, max_n=4):
    n = draw(st.integers(min_value=1, max_value=max_n))
    weights = draw(st.lists(st.one_of(st.just(0.0),
                                      st.floats(min_value=1e-6, max_value=1.0)),
                            min_size=2 ** n, max_size=2 ** n))
    probs = np.array(weights)
    if probs.sum() == 0:
        probs[0] = 1.0
    return ExplicitDistribution(n=n, probs=probs / probs.sum())


@st.composite
def product_mixtures(draw, max_n=8):
    n = draw(st.integers(min_value=1, max_value=max_n))
    count = draw(st.integers(min_value=1, max_value=3))
    qs = draw(st.lists(st.one_of(st.sampled_from([0.0, 0.5, 1.0]),
                                 st.floats(min_value=0.01, max_value=0.99)),
                       min_size=count, max_size=count))
    raw = draw(st.lists(st.floats(min_value=0.05, max_value=1.0),
                        min_size=count, max_size=count))
    weights = [w / sum(raw) for w in raw]
    return mixture(weights, [iid(q, n) for q in qs])


def test_outcome_index():
    outcome = Outcome.from_index(5, 3)
    assert outcome.bits == (1, 0, 1)
    assert str(outcome) == 'RLR'
    assert Outcome('LR').index == 1
    assert Outcome('LR') == Outcome([0, 1])


def test_outcome_rejects_other_sides():
    with pytest.raises(BadOutcomeLength):
        Outcome('LX')
    with pytest.raises(BadOutcomeLength):
        Outcome('')


def test_outcome_is_immutable():
    with pytest.raises(AttributeError):
        Outcome('L').bits = (1,)


def test_log_prob():
    quarter = LogProb.from_probability(0.25)
    assert quarter.log2_value == -2.0
    assert (quarter * quarter).probability() == 0.0625
    assert (quarter + quarter).probability() == pytest.approx(0.5, rel=1e-12)
    assert LogProb.from_probability(0).is_zero()
    with pytest.raises(InvariantViolation):
        LogProb(1.0)


@given(st.floats(min_value=1e-300, max_value=1.0))
def test_log_prob_round_trip(p):
    assert LogProb.from_probability(p).probability() == pytest.approx(p, rel=1e-12)


def test_log2_sum_exp2():
    assert log2_sum_exp2([-1.0, -1.0]) == pytest.approx(0.0, abs=1e-15)
    assert log2_sum_exp2([]) == float('-inf')
    assert log2_sum_exp2([-2000.0, -2000.0]) == pytest.approx(-1999.0)


def test_make_explicit():
    pair = basic_pair()
    assert pair.support_size() == 2
    assert pair.probability('RR') == 0.5
    assert pair.to_dict() == {'LL': 0.5, 'RR': 0.5}


def test_make_explicit_point_mass():
    point = make_explicit(1, [('L', 1.0)])
    assert point.support_size() == 1
    assert point.peak() == 1.0


def test_make_explicit_not_normalized():
    with pytest.raises(NotNormalized):
        make_explicit(2, [('LL', 0.6), ('RR', 0.5)])


def test_make_explicit_errors():
    with pytest.raises(BadOutcomeLength):
        make_explicit(2, [('L', 1.0)])
    with pytest.raises(NegativeProbability):
        make_explicit(1, [('L', 1.5), ('R', -0.5)])
    with pytest.raises(DuplicateOutcome):
        make_explicit(1, [('L', 0.5), ('L', 0.5)])


def test_explicit_cap():
    with pytest.raises(SupportOverflow):
        make_uniform(5, cap=16)


def test_tensor_bernoulli():
    product = tensor(basic_bit(), basic_bit())
    assert list(product.probs) == pytest.approx([0.49, 0.21, 0.21, 0.09])


def test_tensor_point_mass():
    product = tensor(basic_pair(), make_deterministic('L'))
    assert product.n == 3
    assert product.support_size() == basic_pair().support_size()


def test_tensor_cap():
    with pytest.raises(SupportOverflow):
        tensor(make_uniform(3), make_uniform(3), cap=32)


@given(explicit_distributions(max_n=3), explicit_distributions(max_n=3))
def test_tensor_additivity(first, second):
    product = tensor(first, second)
    assert h_min(product) == pytest.approx(h_min(first) + h_min(second), abs=1e-9)
    assert h_max(product) == pytest.approx(h_max(first) + h_max(second), abs=1e-9)
    assert shannon(product) == pytest.approx(shannon(first) + shannon(second),
                                             abs=1e-9)


def test_mixture_half_known():
    half_known = mixture([0.5, 0.5], [iid(1.0, 4), iid(0.5, 4)])
    assert explicit_of(half_known).probs[0] == pytest.approx(0.53125)


def test_mixture_single_component():
    single = mixture([1.0], [iid(0.7, 3)])
    assert single.components == ((1.0, 0.7),)


def test_mixture_flattens():
    inner = mixture([0.5, 0.5], [iid(1.0, 2), iid(0.0, 2)])
    outer = mixture([0.5, 0.5], [inner, iid(0.5, 2)])
    assert sorted(w for w, _ in outer.components) == [0.25, 0.25, 0.5]


def test_mixture_errors():
    with pytest.raises(WeightSumError):
        mixture([0.5, 0.4], [iid(1.0, 2), iid(0.5, 2)])
    with pytest.raises(WeightSumError):
        mixture([1.5, -0.5], [iid(1.0, 2), iid(0.5, 2)])
    with pytest.raises(MixedArity):
        mixture([0.5, 0.5], [iid(1.0, 2), iid(0.5, 3)])


def test_type_classes_bernoulli():
    view = to_type_classes(iid(0.7, 1000))
    expected = 700 * math.log2(0.7) + 300 * math.log2(0.3)
    assert view.class_log_prob[300] == pytest.approx(expected, rel=1e-12)
    assert view.total_log_mass() == pytest.approx(0.0, abs=1e-9)


def test_type_classes_deterministic_components():
    view = to_type_classes(mixture([0.5, 0.5], [iid(1.0, 10), iid(0.0, 10)]))
    assert list(view.nonempty_classes()) == [0, 10]
    assert view.string_probability(0).probability() == pytest.approx(0.5)


def test_type_classes_large_n_counts():
    view = to_type_classes(iid(0.5, 20000))
    assert view.class_counts is None
    assert view.total_log_mass() == pytest.approx(0.0, abs=1e-9)


@settings(max_examples=50)
@given(product_mixtures())
def test_explicit_of_matches_mixture(distribution):
    table = explicit_of(distribution)
    assert table.total_mass() == pytest.approx(1.0, abs=1e-9)
    for index in range(table.size):
        outcome = Outcome.from_index(index, distribution.n)
        k = sum(outcome.bits)
        expected = sum(w * q ** (distribution.n - k) * (1 - q) ** k
                       for w, q in distribution.components)
        assert table.probs[index] == pytest.approx(expected, rel=1e-12, abs=1e-300)


def test_explicit_of_cap():
    with pytest.raises(SupportOverflow):
        explicit_of(iid(0.7, 30))


def test_marginal_pair():
    assert list(marginal(basic_pair(), [0]).probs) == [0.5, 0.5]


def test_marginal_all_bits_is_identity():
    p_ex = basic_p_ex()
    assert list(marginal(p_ex, [0, 1, 2]).probs) == list(p_ex.probs)


def test_marginal_reorders_bits():
    table = make_explicit(2, [('LR', 1.0)])
    assert marginal(table, [1, 0]).probability('RL') == 1.0


def test_marginal_errors():
    with pytest.raises(EmptySubset):
        marginal(basic_pair(), [])
    with pytest.raises(IndexOutOfRange):
        marginal(basic_pair(), [2])


@given(explicit_distributions(max_n=4), st.data())
def test_marginal_peak_dominates(distribution, data):
    positions = data.draw(st.lists(st.integers(0, distribution.n - 1),
                                   min_size=1, unique=True))
    table = marginal(distribution, positions)
    assert table.total_mass() == pytest.approx(1.0, abs=1e-9)
    assert table.peak() >= distribution.peak() - 1e-15


def test_apply_permutation_identity():
    p_ex = basic_p_ex()
    same = apply_permutation(p_ex, np.arange(8))
    assert list(same.probs) == list(p_ex.probs)


def test_apply_permutation_cnot():
    shifted = apply_permutation(basic_pair(), cnot_permutation(2, 0, 1))
    assert shifted.to_dict() == {'LL': 0.5, 'RL': 0.5}


def test_apply_permutation_not_bijective():
    with pytest.raises(NotBijective):
        apply_permutation(basic_pair(), [0, 0, 1, 2])
    with pytest.raises(NotBijective):
        apply_permutation(basic_pair(), [0, 1, 2])


@given(explicit_distributions(max_n=4), st.randoms(use_true_random=False))
def test_permutation_invariance(distribution, random):
    permutation = list(range(distribution.size))
    random.shuffle(permutation)
    shuffled = apply_permutation(distribution, permutation)
    assert sorted(shuffled.probs) == sorted(distribution.probs)
    assert h_min(shuffled) == h_min(distribution)
    assert h_max(shuffled) == h_max(distribution)
    assert shannon(shuffled) == pytest.approx(shannon(distribution), abs=1e-12)


def test_statistical_distance_self():
    assert statistical_distance(basic_p_ex(), basic_p_ex()) == 0.0


def test_statistical_distance_p_ex():
    p_ex = basic_p_ex()
    probs = p_ex.probs.copy()
    probs[[2, 3]] = 0.0
    trimmed = ExplicitDistribution(n=3, probs=probs, normalized=False)
    assert statistical_distance(p_ex, trimmed) == pytest.approx(0.00002, rel=1e-12)
    probs[1] = 0.4
    further = ExplicitDistribution(n=3, probs=probs, normalized=False)
    assert statistical_distance(p_ex, further) > statistical_distance(p_ex, trimmed)


def test_statistical_distance_arity():
    from szilardsim.errors import ArityMismatch
    with pytest.raises(ArityMismatch):
        statistical_distance(basic_pair(), basic_p_ex())


def test_sample_point_mass():
    generator = make_generator(1)
    point = make_deterministic('LRL')
    assert all(sample(point, generator) == Outcome('LRL') for _ in range(20))


def test_sample_frequency():
    indices = sample_indices(basic_pair(), make_generator(7), 10 ** 5)
    assert set(np.unique(indices)) == {0, 3}
    assert abs(np.mean(indices == 0) - 0.5) <= 0.01


def test_sample_same_seed():
    first = sample_indices(basic_p_ex(), make_generator(99), 1000)
    second = sample_indices(basic_p_ex(), make_generator(99), 1000)
    assert np.array_equal(first, second)


def test_sample_type_class_view():
    generator = make_generator(3)
    outcome = sample(iid(0.7, 200), generator)
    assert outcome.n == 200
    all_left = sample(mixture([0.5, 0.5], [iid(1.0, 50), iid(0.0, 50)]),
                      generator)
    assert sum(all_left.bits) in (0, 50)


def test_sample_type_class_frequencies():
    generator = make_generator(4)
    structured = mixture([0.3, 0.7], [iid(0.8, 4), iid(0.4, 4)])
    table = explicit_of(structured)
    draws = 10000
    for source in (structured, to_type_classes(structured)):
        counts = np.bincount([sample(source, generator).index
                              for _ in range(draws)], minlength=table.size)
        distance = 0.5 * np.abs(counts / draws - table.probs).sum()
        assert distance <= 2 * math.sqrt(table.support_size() / draws)


def test_sampling_total_variation():
    generator = make_generator(2024)
    inside = 0
    for run in range(100):
        distribution = random_explicit(generator, n=3)
        draws = 4000
        counts = np.bincount(sample_indices(distribution, generator, draws),
                             minlength=distribution.size)
        distance = 0.5 * np.abs(counts / draws - distribution.probs).sum()
        bound = 4 * math.sqrt(distribution.support_size() / draws)
        inside += distance <= bound
    assert inside >= 99


def test_spawn_generators_independent_of_count():
    short = spawn_generators(5, 2)
    long = spawn_generators(5, 4)
    assert np.array_equal(short[1].random(5), long[1].random(5))


def test_bits_at():
    rows = bits_at([0, 5, 7], 3, [0, 2])
    assert rows.tolist() == [[0, 0], [1, 1], [1, 1]]
