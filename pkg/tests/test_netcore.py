import numpy as np
import pytest

from quadnet.families import self_drive, single
from quadnet.netcore import (
    MultiState,
    Network,
    iterate_orbit,
    node_orbit_bounded,
    step,
)
from quadnet.raster import GridSpec, uni_j_raster


def test_critical_orbit_node_sequences(drive_net):
    rec = iterate_orbit(drive_net, MultiState.zeros(3), 8, 20.0)
    assert not rec.escaped
    assert rec.node_values(1).real.tolist() == [0, -1, 0, -1, 0, -1, 0, -1, 0]
    assert rec.node_values(2).real.tolist() == [0, -1, -1, 0, 0, -1, -1, 0, 0]
    assert rec.node_values(3).real.tolist() == [0, -1, 0, 0, 0, -1, 0, 0, 0]
    assert rec.states[4] == MultiState.zeros(3)


def test_third_node_escapes_while_first_two_stay_put():
    net = self_drive(-1.0, -1.0, -0.75)
    s = MultiState.zeros(3)
    z3 = []
    for _ in range(10_000):
        s = step(net, s)
        assert -0.75 - 1e-12 <= s.values[0].real <= 1e-12
        assert -0.75 - 1e-12 <= s.values[1].real <= 1e-12
        assert not s.overflowed[:2].any()
        z3.append(np.nan if s.overflowed[2] else abs(s.values[2]))
    assert z3[7] > 5  # |z3(8)|
    for t in range(7, len(z3) - 1):
        if np.isnan(z3[t + 1]):
            break
        assert z3[t + 1] >= 2 * z3[t]
    assert np.isnan(z3[-1])


def test_step_rejects_wrong_dimension(drive_net):
    with pytest.raises(ValueError):
        step(drive_net, MultiState.zeros(2))


def test_overflow_propagates_along_edges_only():
    s = MultiState(np.array([np.nan, 0.0]), np.array([True, False]))
    linked = Network.from_lists([[1, 0], [1, 1]], [[1.0, 0.0], [1.0, 1.0]], 0j)
    apart = Network.from_lists([[1, 0], [0, 1]], [[1.0, 0.0], [0.0, 1.0]], 0j)
    assert step(linked, s).overflowed.tolist() == [True, True]
    assert step(apart, s).overflowed.tolist() == [True, False]
    assert np.isnan(step(apart, s).values[0])


def test_guard_flags_huge_values():
    net = Network.from_lists([[1]], [[1.0]], 0j)
    out = step(net, MultiState.of([1e80]))
    assert out.any_overflowed
    assert out.max_norm() == float("inf")


def test_zero_weight_edge_does_not_propagate_overflow():
    net = Network.from_lists([[1, 0], [1, 1]], [[1.0, 0.0], [0.0, 1.0]], 0j)
    s = MultiState(np.array([np.nan, 0.0]), np.array([True, False]))
    assert step(net, s).overflowed.tolist() == [True, False]


def test_orbit_already_outside_escapes_at_zero(drive_net):
    rec = iterate_orbit(drive_net, MultiState.uniform(30.0, 3), 10, 20.0)
    assert rec.escape_iter == 0
    assert len(rec.states) == 1


def test_network_validation():
    with pytest.raises(ValueError):
        Network.from_lists([[1, 0], [0, 1]], [[1.0, 0.0], [0.0, 1.0]], [0j, 0j, 0j])
    with pytest.raises(ValueError):
        Network.from_lists([[2]], [[1.0]], 0j)
    with pytest.raises(ValueError):
        Network(np.array([[1]]), np.array([[1.0 + 1.0j]]), np.array([0j]))
    with pytest.raises(ValueError):
        Network(np.array([[1, 0]]), np.array([[1.0, 0.0]]), np.array([0j]))


def test_network_is_immutable(drive_net):
    with pytest.raises(ValueError):
        drive_net.weights[0, 0] = 5.0
    assert drive_net.with_params(0.25).params.tolist() == [0.25, 0.25, 0.25]
    assert drive_net.params.tolist() == [-1, -1, -1]


def test_equi_parameter_broadcasts():
    net = Network(np.eye(3, dtype=int), np.eye(3), np.array([0.5j]))
    assert net.params.shape == (3,)


def test_upstream(drive_net):
    assert drive_net.upstream(1) == [0]
    assert drive_net.upstream(2) == [0, 1]
    assert drive_net.upstream(3) == [0, 1, 2]
    with pytest.raises(IndexError):
        drive_net.upstream(4)


def test_node_orbit_bounded():
    net = self_drive(-1.0, -1.0, -0.75)
    assert node_orbit_bounded(net, MultiState.zeros(3), 1, 50, 20.0)
    assert node_orbit_bounded(net, MultiState.zeros(3), 2, 50, 20.0)
    assert not node_orbit_bounded(net, MultiState.zeros(3), 3, 50, 20.0)


def test_relabelled_networks_give_identical_rasters():
    g = 1.0 / 3.0
    adjacency = np.array([[1, 1, 1], [0, 1, 0], [1, 0, 1]])
    perm = [2, 0, 1]
    permuted = adjacency[np.ix_(perm, perm)]
    a = Network(adjacency, np.full((3, 3), g), np.array([-0.2 + 0.5j]))
    b = Network(permuted, np.full((3, 3), g), np.array([-0.2 + 0.5j]))
    grid = GridSpec.from_window((-2.0, 2.0, -2.0, 2.0), (40, 40))
    assert np.array_equal(uni_j_raster(a, grid, threads=1).data, uni_j_raster(b, grid, threads=1).data)


def test_first_node_follows_the_single_map():
    rng = np.random.default_rng(17)
    for _ in range(1000):
        c = complex(rng.uniform(-2.0, 1.0), rng.uniform(-1.5, 1.5))
        a, b = rng.uniform(-1.5, 1.5, size=2)
        net = self_drive(float(a), float(b), c)
        alone = iterate_orbit(single(c), MultiState.zeros(1), 50, 20.0)
        assert node_orbit_bounded(net, MultiState.zeros(3), 1, 50, 20.0) == (not alone.escaped)
        rec = iterate_orbit(net, MultiState.zeros(3), 50, 20.0)
        m = min(len(rec.states), len(alone.states))
        assert np.array_equal(rec.node_values(1)[:m], alone.node_values(1)[:m])


def test_escape_iter_is_the_first_state_outside():
    rng = np.random.default_rng(23)
    for _ in range(300):
        net = self_drive(*rng.uniform(-1.5, 1.5, size=2), complex(*rng.uniform(-1.5, 1.5, size=2)))
        rec = iterate_orbit(net, MultiState.zeros(3), 40, 5.0)
        outside = [t for t, s in enumerate(rec.states) if s.max_norm() > 5.0]
        if rec.escaped:
            assert outside == [rec.escape_iter]
            assert rec.escape_iter == len(rec.states) - 1
        else:
            assert outside == []
            assert len(rec.states) == 41
