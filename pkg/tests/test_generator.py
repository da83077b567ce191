import pytest
from hypothesis import given
from hypothesis import strategies as st

from levelfair import GenConfig, InputError, counterexample_instance, gen_leveled, gen_nonleveled, is_leveled, validate
from levelfair.generator import SplitMix64, leveling_shift, mix64, plant_violation
from levelfair.instance import instance_to_json


def test_splitmix64_reference_vectors():
    # reference outputs of the published SplitMix64 algorithm
    rng = SplitMix64(0)
    assert rng.next_u64() == 0xE220A8397B1DCDAF
    rng = SplitMix64(1234567)
    assert [rng.next_u64() for _ in range(3)] == [0x599ED017FB08FC85, 0x2C73F08458540FA5, 0x883EBCE5A3F27C77]


def test_mix64_is_first_output():
    for x in (0, 1, 2**63, 2**64 - 1):
        assert mix64(x) == SplitMix64((x - 0x9E3779B97F4A7C15) % 2**64).next_u64()


def test_randint_range_and_permutation():
    rng = SplitMix64(99)
    draws = [rng.randint(1, 6) for _ in range(600)]
    assert set(draws) == set(range(1, 7))
    assert sorted(SplitMix64(5).permutation(9)) == list(range(9))
    with pytest.raises(ValueError):
        rng.randint(3, 2)


@pytest.mark.parametrize("base, shift", [([9, 1, 1], 8), ([4, 4, 4, 4], 0), ([1], 0), ([2, 1], 0), ([9, 9, 9, 1, 1, 1, 1, 1, 1, 1], 24)])
def test_leveling_shift(base, shift):
    assert leveling_shift(base) == shift
    assert is_leveled([u + shift for u in base])


def test_shift_example_row():
    assert [u + leveling_shift([9, 1, 1]) for u in [9, 1, 1]] == [17, 9, 9]


@given(st.lists(st.integers(1, 40), min_size=1, max_size=15))
def test_shift_is_minimal(base):
    c = leveling_shift(base)
    assert is_leveled([u + c for u in base])
    if c >= 1:
        assert not is_leveled([u + c - 1 for u in base])


def test_gen_leveled_deterministic():
    cfg = GenConfig(n=2, m=6, seed=42)
    a, b = gen_leveled(cfg), gen_leveled(cfg)
    assert instance_to_json(a) == instance_to_json(b)
    assert a.values == ((13, 11, 18, 14, 10, 12), (7, 10, 7, 6, 9, 8))
    assert gen_leveled(GenConfig(n=2, m=6, seed=43)) != a


def test_identical_agents():
    inst = gen_leveled(GenConfig(4, 9, 20, 3, identical_agents=True))
    assert len(set(inst.values)) == 1


def test_gen_leveled_bulk():
    """10^4 seeds over n in 1..6 and m in n..20: every output is valid and leveled."""
    count = 0
    for n in range(1, 7):
        for m in range(n, 21):
            for t in range(10_000 // (6 * 15) + 1):
                seed = (n * 1000 + m) * 1000 + t
                inst = gen_leveled(GenConfig(n, m, 25, seed))
                assert validate(inst).all_leveled, (n, m, seed)
                count += 1
    assert count >= 10_000


def test_gen_nonleveled():
    for seed in range(50):
        inst = gen_nonleveled(GenConfig(1, 3, 10, seed))
        assert not is_leveled(inst.values[0])
    cfg = GenConfig(2, 5, 10, 7)
    assert gen_nonleveled(cfg) == gen_nonleveled(cfg)
    assert not any(validate(gen_nonleveled(cfg)).leveled)


def test_gen_nonleveled_needs_three_items():
    with pytest.raises(InputError):
        gen_nonleveled(GenConfig(1, 2, 10, 0))


def test_plant_violation():
    assert not is_leveled([20, 1, 1, 1])
    planted = plant_violation([5, 5, 4, 4])
    assert planted == [9, 5, 4, 4] and not is_leveled(planted)


def test_gen_config_invariants():
    with pytest.raises(InputError):
        GenConfig(0, 3)
    with pytest.raises(InputError):
        GenConfig(1, 3, base_max=0)
    with pytest.raises(InputError):
        GenConfig(1, 3, seed=-1)


def test_counterexample_instance():
    inst = counterexample_instance(7, 9)
    assert inst.values == ((9, 9, 9, 7, 7, 7, 7, 7, 7, 7),) * 3
    assert validate(inst).all_leveled


@pytest.mark.parametrize("a, b, message", [(7, 10, "4a > 3b"), (9, 9, "b > a"), (0, 5, "positive")])
def test_counterexample_instance_rejects(a, b, message):
    with pytest.raises(InputError, match=message):
        counterexample_instance(a, b)
