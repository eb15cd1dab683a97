import numpy as np
import pytest

from quadnet.errors import PreconditionError
from quadnet.escape import (
    check_dominance,
    default_delta,
    escape_bound,
    max_delta,
    verify_escape,
)
from quadnet.families import self_drive, single
from quadnet.netcore import MultiState, Network


def test_single_node_radius():
    bound = escape_bound(single(0j), 2.0)
    assert bound.M == pytest.approx(4.0)
    assert bound.radius == pytest.approx(2.0)
    assert bound.external_input == (0.0,)


def test_single_node_default_delta_is_two():
    assert max_delta(single(0j)) == float("inf")
    assert default_delta(single(0j)) == 2.0


def test_delta_range():
    net = Network.from_lists([[1, 1], [1, 1]], [[2.0, 0.5], [0.5, 2.0]], 0.3)
    assert check_dominance(net)
    assert max_delta(net) == pytest.approx(4.0)
    assert default_delta(net) == pytest.approx(2.5)
    with pytest.raises(PreconditionError):
        escape_bound(net, 4.5)
    with pytest.raises(PreconditionError):
        escape_bound(net, 1.0)


def test_self_drive_is_not_dominant():
    net = self_drive(-1.0, -1.0, -1.0)
    assert not check_dominance(net)
    with pytest.raises(PreconditionError):
        escape_bound(net)


def test_verify_escape_needs_state_outside_radius():
    bound = escape_bound(single(0j), 2.0)
    with pytest.raises(PreconditionError):
        verify_escape(single(0j), bound, MultiState.of([1.0]), 100)


def _random_dominant(rng: np.random.Generator) -> Network:
    n = int(rng.integers(1, 5))
    adjacency = (rng.random((n, n)) < 0.6).astype(int)
    np.fill_diagonal(adjacency, 1)
    weights = rng.uniform(-1.0, 1.0, (n, n))
    off = np.abs(weights * adjacency).sum(axis=1) - np.abs(np.diag(weights))
    diag = (off * rng.uniform(1.2, 3.0, n) + 0.1) * rng.choice([-1.0, 1.0], n)
    np.fill_diagonal(weights, diag)
    c = rng.uniform(0.0, 2.0, n) * np.exp(1j * rng.uniform(0.0, 2 * np.pi, n))
    return Network(adjacency, weights, c)


def test_states_outside_radius_diverge():
    rng = np.random.default_rng(2024)
    for _ in range(500):
        net = _random_dominant(rng)
        assert check_dominance(net)
        bound = escape_bound(net)
        z = rng.uniform(-1.0, 1.0, net.n) + 1j * rng.uniform(-1.0, 1.0, net.n)
        z *= 1.05 * bound.radius / np.abs(z).max()
        assert verify_escape(net, bound, MultiState.of(z), 500)


def test_threshold_grows_with_the_parameter():
    rng = np.random.default_rng(31)
    for _ in range(200):
        net = _random_dominant(rng)
        delta = default_delta(net)
        base = escape_bound(net, delta)
        scaled = escape_bound(net.with_params(net.params * rng.uniform(1.0, 3.0)), delta)
        assert all(m2 >= m1 for m1, m2 in zip(base.per_node_M, scaled.per_node_M))
        j = int(rng.integers(net.n))
        bumped = net.params.copy()
        bumped[j] = bumped[j] + 0.5 * (bumped[j] / abs(bumped[j]) if bumped[j] else 1.0)
        one = escape_bound(net.with_params(bumped), delta)
        assert one.per_node_M[j] > base.per_node_M[j]
        assert [m for k, m in enumerate(one.per_node_M) if k != j] == [
            m for k, m in enumerate(base.per_node_M) if k != j]
        assert one.radius >= base.radius
