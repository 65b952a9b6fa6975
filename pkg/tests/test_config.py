import pytest
from hypothesis import given, settings, strategies as st

from vers.config import VersConfig
from vers.errors import InvalidConfig


def test_defaults_and_derived():
    c = VersConfig.create(97, 3, 10, adversaries=[1], v=2)
    assert c.omegas == (1, 2, 3) and c.alphas == tuple(range(4, 14))
    assert c.beta == 1 and c.d == 2 and c.honest == (2, 3)
    assert c.block_size == 5 and c.num_versions == 2 and c.t_star == 9


@pytest.mark.parametrize("kwargs", [
    dict(p=97, K=4, N=3),
    dict(p=97, K=3, N=3, adversaries=[4]),
    dict(p=97, K=2, N=3, adversaries=[1, 2]),
    dict(p=97, K=2, N=3, v=0),
    dict(p=97, K=2, N=3, omegas=[1, 1]),
    dict(p=97, K=2, N=2, omegas=[1, 2], alphas=[2, 3]),
    dict(p=5, K=3, N=3),
    dict(p=91, K=2, N=2),
    dict(p=97, K=2, N=2, f=(3,)),
])
def test_invalid_configs(kwargs):
    with pytest.raises((InvalidConfig, ValueError)):
        VersConfig.create(**kwargs)


def test_random_points_are_seeded():
    a = VersConfig.create(10007, 3, 5, randomize_points=True, seed=4)
    b = VersConfig.create(10007, 3, 5, randomize_points=True, seed=4)
    assert a.omegas == b.omegas and a.alphas == b.alphas
    assert len(set(a.omegas + a.alphas)) == 8 and 0 not in a.omegas + a.alphas


@settings(max_examples=40)
@given(
    K=st.integers(1, 4),
    extra=st.integers(0, 4),
    v=st.integers(1, 3),
    d=st.integers(1, 3),
    seed=st.integers(0, 1000),
    data=st.data(),
)
def test_json_round_trip(K, extra, v, d, seed, data):
    adv = data.draw(st.sets(st.integers(1, K), max_size=K - 1))
    f = [0] * d + [1]
    c = VersConfig.create(10007, K, K + extra, adversaries=adv, v=v, f=f, randomize_points=True, seed=seed)
    assert VersConfig.from_json(c.to_json()) == c
