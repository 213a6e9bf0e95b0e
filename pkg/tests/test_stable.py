import random

import pytest

from pathcount import stable
from pathcount.errors import FormatError, MissingObjective, NotADownset
from pathcount.oracle import enumerate_stable_matchings


def mutual_first(n):
    men = tuple(tuple([i] + [j for j in range(n) if j != i]) for i in range(n))
    return stable.SMInstance(n, men, men)


def test_parse_examples(two_by_two):
    one = stable.parse_sm("1\n1\n1\n")
    assert one.n == 1 and one.men_prefs == ((0,),)
    assert two_by_two.men_prefs == ((0, 1), (1, 0))
    assert two_by_two.women_prefs == ((1, 0), (0, 1))
    with pytest.raises(FormatError) as info:
        stable.parse_sm("2\n1 1\n2 1\n2 1\n1 2\n")
    assert info.value.kind == "permutation"


def test_serialize_round_trip():
    inst = stable.gen_k_range(5, 2, random.Random(3))
    assert stable.parse_sm(stable.serialize_sm(inst)) == inst


def test_gale_shapley_examples(two_by_two):
    assert stable.gale_shapley(mutual_first(4)) == (0, 1, 2, 3)
    assert stable.gale_shapley(two_by_two, "men") == (0, 1)
    assert stable.gale_shapley(two_by_two, "women") == (1, 0)


def test_rotation_digraph_examples(two_by_two):
    rd = stable.build_rotation_digraph(mutual_first(3))
    assert rd.rotations == () or list(rd.rotations) == []
    assert stable.count_stable_matchings(mutual_first(3)) == 1
    rd = stable.build_rotation_digraph(two_by_two)
    assert [tuple(r) for r in rd.rotations] == [((0, 0), (1, 1))]
    assert stable.count_stable_matchings(two_by_two) == 2


def test_downset_to_matching(two_by_two):
    rd = stable.build_rotation_digraph(two_by_two)
    assert stable.downset_to_matching(rd, set()) == rd.man_optimal == (0, 1)
    assert stable.downset_to_matching(rd, {0}) == (1, 0)


def test_non_downset_rejected():
    rng = random.Random(0)
    for _ in range(200):
        rd = stable.build_rotation_digraph(stable.random_instance(6, rng))
        if rd.edges:
            a, b = rd.edges[0]
            with pytest.raises(NotADownset):
                stable.downset_to_matching(rd, {b})
            return
    pytest.fail("no instance with a rotation edge found")


@pytest.mark.parametrize("seed", range(15))
def test_random_6x6_against_oracle(seed):
    inst = stable.random_instance(6, random.Random(seed))
    assert stable.count_stable_matchings(inst) == len(enumerate_stable_matchings(inst))


def test_unique_matching_sampled():
    inst = mutual_first(4)
    assert {stable.sample_stable_matching(inst, random.Random(s)) for s in range(10)} == {(0, 1, 2, 3)}


def test_samples_are_stable():
    inst = stable.random_instance(7, random.Random(11))
    sampler = stable.StableMatchingSampler(inst)
    for s in range(100):
        assert stable.is_stable(inst, sampler.sample(random.Random(s)))


def test_range_examples():
    n = 4
    obj = tuple(range(n))
    inst = stable.SMInstance(n, (obj,) * n, (obj,) * n, obj, obj)
    assert stable.range_of(inst) == 1
    swapped = (1, 0, 2, 3)
    inst = stable.SMInstance(n, (swapped,) + (obj,) * 3, (obj,) * n, obj, obj)
    assert stable.range_of(inst) == 2
    with pytest.raises(MissingObjective):
        stable.range_of(mutual_first(3))


def test_gen_k_range():
    inst = stable.gen_k_range(5, 1, random.Random(0))
    assert all(lst == inst.objective_women for lst in inst.men_prefs)
    assert all(lst == inst.objective_men for lst in inst.women_prefs)
    assert stable.range_of(stable.gen_k_range(6, 2, random.Random(1))) <= 2
    with pytest.raises(ValueError):
        stable.gen_k_range(3, 4, random.Random(0))


def test_blocking_pairs(two_by_two):
    assert stable.is_stable(two_by_two, (0, 1))
    inst = mutual_first(2)
    assert stable.blocking_pairs(inst, (1, 0))
