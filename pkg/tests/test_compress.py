import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from szilardsim.compress import BIASED
from szilardsim.compress import KNOWN
from szilardsim.compress import UNIFORM
from szilardsim.compress import BitLabel
from szilardsim.compress import apply_cnot
from szilardsim.compress import bennett_work
from szilardsim.compress import bit_profile
from szilardsim.compress import canonical_permutation
from szilardsim.compress import cnot_permutation
from szilardsim.compress import compaction_bound
from szilardsim.compress import compress
from szilardsim.compress import identity_plan
from szilardsim.compress import is_compressed
from szilardsim.compress import leading_known_bits
from szilardsim.compress import symbolic_plan
from szilardsim.entropy import h_max
from szilardsim.entropy import h_min
from szilardsim.entropy import shannon
from szilardsim.errors import BiasedBitsPresent
from szilardsim.errors import IndexOutOfRange
from szilardsim.errors import SamePosition
from szilardsim.errors import SupportOverflow
from szilardsim.errors import SymbolicPlanError
from szilardsim.game import thm1_work
from szilardsim.game import work_unit
from szilardsim.probdist import make_deterministic
from szilardsim.probdist import make_explicit
from szilardsim.probdist import make_uniform
from test_probdist import basic_p_ex
from test_probdist import basic_pair
from test_probdist import explicit_distributions


def known(value):
    return BitLabel(KNOWN, value)


def test_canonical_pair():
    plan, compressed = compress(basic_pair())
    assert list(compressed.probs) == [0.5, 0.5, 0.0, 0.0]
    assert plan.profile == [known(0), BitLabel(UNIFORM)]


def test_canonical_sorted_is_identity():
    distribution = make_explicit(2, [('LL', 0.4), ('LR', 0.3), ('RL', 0.2),
                                     ('RR', 0.1)])
    assert is_compressed(distribution)
    assert canonical_permutation(distribution).is_identity()


def test_canonical_ties_keep_order():
    plan = canonical_permutation(make_uniform(3))
    assert plan.is_identity()
    assert plan.profile == [BitLabel(UNIFORM)] * 3


def test_canonical_p_ex():
    plan, compressed = compress(basic_p_ex())
    assert leading_known_bits(compressed) == 1
    assert plan.profile[0] == known(0)
    assert plan.profile[1].kind == BIASED


def test_point_mass_compresses_to_all_left():
    plan, compressed = compress(make_deterministic('RRL'))
    assert compressed.probs[0] == 1.0
    assert plan.profile == [known(0)] * 3
    assert leading_known_bits(compressed) == 3


def test_bit_profile_right_known():
    profile = bit_profile(make_deterministic('LR'))
    assert profile == [known(0), known(1)]


def test_bennett_pair():
    plan = canonical_permutation(basic_pair())
    assert bennett_work(plan.profile, work_unit(300.0)).bits == 1.0


def test_bennett_rejects_biased_bits():
    plan = canonical_permutation(basic_p_ex())
    with pytest.raises(BiasedBitsPresent):
        bennett_work(plan.profile, work_unit(300.0))


@given(st.integers(min_value=1, max_value=6), st.data())
def test_bennett_matches_theorem1(n, data):
    uniform = data.draw(st.integers(min_value=0, max_value=n))
    distribution = make_explicit(n, [(format(index, '0%db' % n)
                                      .replace('0', 'L').replace('1', 'R'),
                                      2.0 ** -uniform)
                                     for index in range(2 ** uniform)])
    unit = work_unit(300.0)
    profile = canonical_permutation(distribution).profile
    assert (bennett_work(profile, unit).bits
            == thm1_work(distribution, 0.0, unit).real.bits)


def test_cnot():
    distribution = make_explicit(2, [('RL', 0.75), ('LL', 0.25)])
    flipped = apply_cnot(distribution, 0, 1)
    assert flipped.probability('RR') == 0.75
    assert flipped.probability('LL') == 0.25


def test_cnot_is_involution():
    permutation = cnot_permutation(4, 1, 3)
    assert np.array_equal(permutation[permutation], np.arange(16))


def test_cnot_errors():
    with pytest.raises(SamePosition):
        cnot_permutation(3, 1, 1)
    with pytest.raises(IndexOutOfRange):
        cnot_permutation(3, 0, 3)


@given(explicit_distributions(max_n=5))
def test_compaction(distribution):
    plan, compressed = compress(distribution)
    assert leading_known_bits(compressed) >= compaction_bound(distribution)
    assert is_compressed(compressed)
    assert compressed.support_size() == distribution.support_size()


@given(explicit_distributions(max_n=5))
def test_compress_is_idempotent(distribution):
    _, compressed = compress(distribution)
    assert canonical_permutation(compressed).is_identity()


@given(explicit_distributions(max_n=5))
def test_compression_keeps_entropies(distribution):
    _, compressed = compress(distribution)
    assert shannon(compressed) == pytest.approx(shannon(distribution), abs=1e-12)
    assert h_min(compressed) == h_min(distribution)
    assert h_max(compressed) == h_max(distribution)


def test_symbolic_plan():
    plan = symbolic_plan(4)
    assert plan.symbolic
    assert not plan.is_identity()
    with pytest.raises(SymbolicPlanError):
        plan.apply(make_uniform(4))


def test_identity_plan_cap():
    assert identity_plan(3).is_identity()
    with pytest.raises(SupportOverflow):
        identity_plan(30, cap=2 ** 20)
