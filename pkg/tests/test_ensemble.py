import numpy as np
import pytest

from quadnet.ensemble import (
    ConfigurationFamily,
    FractionRaster,
    bitmask_hex,
    class_invariance_experiment,
    core_equi_m,
    core_uni_j,
    cross_classes,
    enumerate_configurations,
    partition_asymptotic,
    partition_frame,
    partition_spectral,
    spectral_key,
)
from quadnet.errors import CapExceededError
from quadnet.raster import GridSpec

CLASS_GRID = GridSpec.from_window((-2.0, 2.0, -2.0, 2.0), (100, 100))
EDGE_C = complex(-1.15, 0.26)
BIPARTITE_C = complex(-0.117, -0.856)


@pytest.fixture(scope="module")
def edge_family():
    return enumerate_configurations(ConfigurationFamily("edge_count", 3, k=7, g=1 / 3))


@pytest.fixture(scope="module")
def bipartite_family():
    return enumerate_configurations(ConfigurationFamily("bipartite", 2, m_xy=1, m_yx=3,
                                                        g_within=0.5, g_between=-0.5))


@pytest.fixture(scope="module")
def edge_classes(edge_family):
    return partition_spectral(edge_family), partition_asymptotic(edge_family, EDGE_C, CLASS_GRID)


def test_family_sizes(edge_family, bipartite_family):
    assert len(edge_family) == 36
    assert len(bipartite_family) == 16
    assert ConfigurationFamily("edge_count", 3, k=7).size() == 36
    assert ConfigurationFamily("bipartite", 2, m_xy=1, m_yx=3).size() == 16
    # self-loops count towards k
    assert all(int(net.adjacency.sum()) == 7 for net in edge_family)
    assert len({bitmask_hex(net) for net in edge_family}) == 36


def test_edge_count_weight_defaults_to_inverse_n():
    fam = ConfigurationFamily("edge-count", 4, k=3)
    assert fam.kind == "edge_count"
    assert fam.weight == pytest.approx(0.25)
    net = enumerate_configurations(fam)[0]
    assert net.coupling[net.adjacency == 1] == pytest.approx(0.25)
    assert not net.coupling[net.adjacency == 0].any()


def test_bipartite_blocks(bipartite_family):
    for net in bipartite_family:
        assert net.n == 4
        assert (net.adjacency[:2, :2] == 1).all() and (net.adjacency[2:, 2:] == 1).all()
        assert int(net.adjacency[:2, 2:].sum()) == 1
        assert int(net.adjacency[2:, :2].sum()) == 3


def test_family_validation():
    with pytest.raises(ValueError):
        ConfigurationFamily("ring", 3)
    with pytest.raises(ValueError):
        ConfigurationFamily("edge_count", 3, k=10)
    with pytest.raises(ValueError):
        ConfigurationFamily("edge_count", 3, k=2, mode="sampled", samples=0)


def test_cap_exceeded():
    fam = ConfigurationFamily("edge_count", 10, k=60)
    with pytest.raises(CapExceededError):
        enumerate_configurations(fam)


def test_sampled_mode_is_seeded():
    fam = ConfigurationFamily("edge_count", 10, k=60, mode="sampled", samples=8, seed=3)
    first = [bitmask_hex(net) for net in enumerate_configurations(fam)]
    second = [bitmask_hex(net) for net in enumerate_configurations(fam)]
    assert first == second
    assert len(set(first)) == 8
    other = ConfigurationFamily("edge_count", 10, k=60, mode="sampled", samples=8, seed=4)
    assert [bitmask_hex(net) for net in enumerate_configurations(other)] != first


def test_sampled_mode_stops_at_family_size():
    fam = ConfigurationFamily("edge_count", 2, k=1, mode="sampled", samples=10, seed=0)
    assert len(enumerate_configurations(fam)) == 4


def test_bitmask_hex():
    full = enumerate_configurations(ConfigurationFamily("edge_count", 3, k=9))[0]
    assert bitmask_hex(full) == "1ff"
    first = enumerate_configurations(ConfigurationFamily("edge_count", 3, k=7))[0]
    # lexicographic order starts with cells 0..6 set
    assert bitmask_hex(first) == "1fc"


def test_spectral_key():
    assert spectral_key(np.array([[0.0, 1.0], [1.0, 0.0]])) == ((-1.0, 0.0), (1.0, 0.0))
    assert spectral_key(np.array([[1e-10, 0.0], [0.0, -1e-12]])) == ((0.0, 0.0), (0.0, 0.0))
    rotation = spectral_key(np.array([[0.0, -1.0], [1.0, 0.0]]))
    assert rotation == ((0.0, -1.0), (0.0, 1.0))


def test_spectral_classes_are_permutation_invariant():
    a = np.array([[1.0, 1.0, 0.0], [0.0, 1.0, 1.0], [1.0, 0.0, 0.0]])
    perm = np.eye(3)[[2, 0, 1]]
    assert spectral_key(a) == spectral_key(perm @ a @ perm.T)


def test_edge_count_class_counts(edge_classes):
    spectral, asymptotic = edge_classes
    assert spectral.n_classes == 6
    assert asymptotic.n_classes == 6
    assert spectral.class_ids[0] == 1 and asymptotic.class_ids[0] == 1


def test_equitable_networks_share_a_class(edge_family, edge_classes):
    # zeros at (1,1)+(2,2), (1,1)+(2,1) and (1,2)+(2,1) give the same two-value dynamics
    _, asymptotic = edge_classes
    index = {bitmask_hex(net): i for i, net in enumerate(edge_family)}
    merged = {asymptotic.class_ids[index[h]] for h in ("0ef", "0df", "15f")}
    assert len(merged) == 1
    assert asymptotic.class_ids[index["07f"]] not in merged


def test_edge_count_cross_relations(edge_classes):
    spectral, asymptotic = edge_classes
    cross = cross_classes(spectral, asymptotic)
    assert int(cross["count"].sum()) == 36
    assert cross.groupby("spectral")["asymptotic"].nunique().max() >= 2
    assert cross.groupby("asymptotic")["spectral"].nunique().max() >= 3


def test_partition_frame(edge_family, edge_classes):
    df = partition_frame(*edge_classes)
    assert list(df.columns) == ["index", "bitmask", "spectral_class", "asymptotic_class"]
    assert len(df) == 36
    assert df["bitmask"].iloc[0] == bitmask_hex(edge_family[0])


def test_bipartite_class_counts(bipartite_family):
    assert partition_spectral(bipartite_family).n_classes == 3
    assert partition_asymptotic(bipartite_family, BIPARTITE_C, CLASS_GRID).n_classes == 4


def test_class_counts_at_full_resolution(edge_family, bipartite_family, edge_classes):
    fine = GridSpec.from_window((-2.0, 2.0, -2.0, 2.0), (200, 200))
    edge = partition_asymptotic(edge_family, EDGE_C, fine, threads=4)
    assert edge.n_classes == 6
    assert edge.class_ids == edge_classes[1].class_ids
    assert partition_asymptotic(bipartite_family, BIPARTITE_C, fine, threads=4).n_classes == 4


def test_duplicate_network_shares_class(small_z_grid):
    nets = enumerate_configurations(ConfigurationFamily("edge_count", 2, k=2))
    part = partition_asymptotic([nets[0], nets[1], nets[0]], -0.5 + 0.1j, small_z_grid)
    assert part.class_ids[0] == part.class_ids[2]
    assert part.groups()[0][0] == 0


def test_class_invariance(edge_family):
    report = class_invariance_experiment(edge_family, [EDGE_C, complex(-0.13, 1.0)], CLASS_GRID)
    assert report.all_identical
    assert report.diffs == ()
    assert report.first_mismatch is None
    assert [p.n_classes for p in report.partitions] == [6, 6]


def test_class_invariance_needs_two_parameters(edge_family):
    with pytest.raises(ValueError):
        class_invariance_experiment(edge_family, [EDGE_C], CLASS_GRID)


def test_core_equi_m_contains_origin():
    grid = GridSpec.from_window((-0.5, 0.5, -0.5, 0.5), (5, 5))
    fam = ConfigurationFamily("edge_count", 3, k=7, g=1 / 3)
    core = core_equi_m(fam, grid)
    assert isinstance(core, FractionRaster)
    assert core.config_count == 36
    assert core.data[2, 2] == 1.0
    assert core.core_mask().mask[2, 2]
    counts = core.data * core.config_count
    assert np.allclose(counts, np.round(counts))


def test_sampled_core_is_steady_near_the_cusp():
    # blocks of the 200x200 grid on [-2, 1] x [-1.5, 1.5], rendered on their own (pixel 0.015)
    fam = ConfigurationFamily("edge_count", 10, k=60, mode="sampled", samples=20, seed=0)
    nets = enumerate_configurations(fam)
    cusp_grid = GridSpec.from_window((0.205, 0.265, -0.015, 0.015), (4, 2))
    tail_grid = GridSpec.from_window((-1.4, -1.205, -0.015, 0.015), (13, 2))
    full = GridSpec.from_window((-2.0, 1.0, -1.5, 1.5), (200, 200))
    assert cusp_grid.re_axis() == pytest.approx(full.re_axis()[147:151])
    assert tail_grid.re_axis() == pytest.approx(full.re_axis()[40:53])
    assert tail_grid.im_axis() == pytest.approx(full.im_axis()[99:101])

    cusp = core_equi_m(nets, cusp_grid, threads=2).data
    tail = core_equi_m(nets, tail_grid, threads=2).data
    assert np.var(cusp) == 0.0
    assert np.var(cusp) <= np.var(tail)
    origin = core_equi_m(nets, GridSpec.from_window((-0.01, 0.01, -0.01, 0.01), (1, 1)))
    assert origin.config_count == 20
    assert origin.data[0, 0] == 1.0


def test_core_uni_j(small_z_grid, edge_family):
    core = core_uni_j(edge_family, EDGE_C, small_z_grid)
    assert core.data.shape == small_z_grid.shape
    assert ((core.data >= 0) & (core.data <= 1)).all()
    # corners of [-2, 2]^2 leave the escape disc for every configuration
    assert core.data[0, 0] == 0.0
    assert core.core_mask().count <= int((core.data > 0).sum())


def test_core_set_from_family_matches_list(small_z_grid):
    fam = ConfigurationFamily("edge_count", 2, k=3)
    a = core_uni_j(fam, -0.4 + 0.2j, small_z_grid)
    b = core_uni_j(enumerate_configurations(fam), -0.4 + 0.2j, small_z_grid)
    assert np.array_equal(a.bounded_counts, b.bounded_counts)


def test_core_set_threads_deterministic(small_z_grid, edge_family):
    a = core_uni_j(edge_family[:8], EDGE_C, small_z_grid, threads=1)
    b = core_uni_j(edge_family[:8], EDGE_C, small_z_grid, threads=4)
    assert np.array_equal(a.bounded_counts, b.bounded_counts)


def test_core_set_of_nothing_raises(small_z_grid):
    with pytest.raises(ValueError):
        core_uni_j([], 0j, small_z_grid)
