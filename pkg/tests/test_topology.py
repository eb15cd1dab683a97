import numpy as np
import pytest
from scipy import ndimage

from quadnet.bifurcation import bounded_windows, get
from quadnet.families import FamilySpec, self_drive, single
from quadnet.netcore import MultiState, iterate_orbit
from quadnet.raster import GridSpec, equi_m_raster, prisoner_mask, uni_j_raster
from quadnet.raster.grid import BinaryRaster
from quadnet.topology import (
    UnionFind,
    ab_connectedness_locus,
    ab_membership_locus,
    component_count_blowup,
    count_components,
    dilate,
    disc_footprint,
    label_mask,
    uni_j_connectedness_locus,
)

from conftest import flood_fill_labels


def _raster(mask: np.ndarray) -> BinaryRaster:
    h, w = mask.shape
    return BinaryRaster(GridSpec.from_window((0.0, 1.0, 0.0, 1.0), (w, h)), mask)


@pytest.mark.parametrize("connectivity", [4, 8])
def test_labels_match_flood_fill(connectivity):
    rng = np.random.default_rng(7)
    for _ in range(1000):
        h, w = (int(v) for v in rng.integers(1, 16, size=2))
        mask = rng.random((h, w)) < rng.uniform(0.2, 0.8)
        labels, count = label_mask(mask, connectivity)
        expected, expected_count = flood_fill_labels(mask, connectivity)
        assert count == expected_count
        assert np.array_equal(labels, expected)


def test_counts_match_scipy():
    rng = np.random.default_rng(11)
    eight = np.ones((3, 3), dtype=bool)
    for _ in range(200):
        mask = rng.random((20, 25)) < 0.45
        assert count_components(mask, 8).count == ndimage.label(mask, structure=eight)[1]
        assert count_components(mask, 4).count == ndimage.label(mask)[1]


def test_trivial_masks():
    assert count_components(np.zeros((5, 5), dtype=bool)).count == 0
    assert count_components(np.ones((5, 5), dtype=bool)).count == 1
    diagonal = np.eye(4, dtype=bool)
    assert count_components(diagonal, 8).count == 1
    assert count_components(diagonal, 4).count == 4


def test_connectivity_is_checked():
    with pytest.raises(ValueError):
        label_mask(np.ones((2, 2), dtype=bool), 6)


def test_union_find():
    uf = UnionFind()
    a, b, c = uf.add(), uf.add(), uf.add()
    uf.union(c, b)
    assert uf.find(b) == uf.find(c)
    assert uf.find(a) != uf.find(b)


def test_disc_footprint():
    assert disc_footprint(0.0).shape == (1, 1)
    assert disc_footprint(1.0).shape == (3, 3) and disc_footprint(1.0).all()
    assert disc_footprint(1.5).sum() == 9
    assert disc_footprint(2.0).sum() == 25
    with pytest.raises(ValueError):
        disc_footprint(-1.0)


def test_single_pixel_grows_to_a_block():
    mask = np.zeros((5, 5), dtype=bool)
    mask[2, 2] = True
    expected = np.zeros((5, 5), dtype=bool)
    expected[1:4, 1:4] = True
    assert np.array_equal(dilate(_raster(mask), 1.0).mask, expected)
    assert np.array_equal(dilate(_raster(mask), 1.5).mask, expected)
    # diagonal neighbours one pixel apart merge at radius 1
    mask[4, 4] = True
    assert count_components(_raster(mask), 4).count == 2
    assert component_count_blowup(_raster(mask), 1.0, 4) == 1


def test_dilation_is_monotone():
    rng = np.random.default_rng(3)
    mask = rng.random((30, 30)) < 0.05
    b = _raster(mask)
    assert np.array_equal(dilate(b, 0.0).mask, mask)
    one = dilate(b, 1.0).mask
    two = dilate(b, 2.0).mask
    assert not (mask & ~one).any()
    assert not (one & ~two).any()


def test_blowup_merges_close_fragments():
    mask = np.zeros((11, 11), dtype=bool)
    mask[5, 5] = mask[5, 7] = True
    b = _raster(mask)
    assert count_components(b).count == 2
    assert component_count_blowup(b, 1.0) == 1
    assert component_count_blowup(b, 0.0) == 2


def test_blowup_never_increases_the_count():
    net = self_drive(-2.0 / 3.0, -1.0 / 3.0, -0.06 - 0.68j)
    grid = GridSpec.from_window((-2.0, 2.0, -2.0, 2.0), (100, 100))
    mask = prisoner_mask(uni_j_raster(net, grid, threads=1))
    plain = count_components(mask).count
    assert component_count_blowup(mask, 1.0) <= plain


def test_blowup_collapses_dust_around_the_uni_j_set():
    net = self_drive(-2.0 / 3.0, -1.0 / 3.0, -0.06 - 0.68j)
    grid = GridSpec.from_window((-1.25, 1.25, -1.25, 1.25), (100, 100))
    mask = prisoner_mask(uni_j_raster(net, grid, threads=1))
    plain = count_components(mask).count
    blown = component_count_blowup(mask, 1.0)
    assert blown >= 1
    assert plain >= 5 * blown


def test_connectedness_locus_inside_the_cardioid():
    c_grid = GridSpec.from_window((-0.3, 0.3, -0.3, 0.3), (3, 3))
    z_grid = GridSpec.from_window((-2.0, 2.0, -2.0, 2.0), (40, 40))
    locus = uni_j_connectedness_locus(single(0j), c_grid, z_grid, threads=2)
    assert locus.data.shape == (3, 3)
    assert (locus.data == 1).all()


def test_ab_membership_locus():
    ab_grid = GridSpec.from_window((-2.75, 0.75, -2.75, 0.75), (141, 141))
    locus = ab_membership_locus(FamilySpec("self_drive"), ab_grid, -1 + 0j)
    assert set(np.unique(locus.data)) <= {0, 1}
    x, y = ab_grid.pixel_of(complex(-1.0, -1.0))
    assert locus.data[y, x] == 1
    # the pixel holding (-2/3, -1/3) is sampled at its centre, not at the point itself
    x, y = ab_grid.pixel_of(complex(-2.0 / 3.0, -1.0 / 3.0))
    centre = ab_grid.point(x, y)
    assert centre != complex(-2.0 / 3.0, -1.0 / 3.0)
    assert abs(centre.real + 2.0 / 3.0) < 0.5 * 3.5 / 141
    assert abs(centre.imag + 1.0 / 3.0) < 0.5 * 3.5 / 141
    assert locus.data[y, x] == 0
    assert iterate_orbit(self_drive(centre.real, centre.imag, -1.0), MultiState.zeros(3), 50, 20.0).escaped


def test_exact_point_escapes_only_after_the_default_budget():
    net = self_drive(-2.0 / 3.0, -1.0 / 3.0, -1.0)
    assert not iterate_orbit(net, MultiState.zeros(3), 50, 20.0).escaped
    assert iterate_orbit(net, MultiState.zeros(3), 500, 20.0).escape_iter == 132


def test_membership_column_matches_bounded_windows():
    ab_grid = GridSpec.from_window((-2.75, 0.75, -2.75, 0.75), (141, 141))
    locus = ab_membership_locus(FamilySpec("self_drive"), ab_grid, -1 + 0j)
    x, _ = ab_grid.pixel_of(complex(-1.0, 0.0))
    assert ab_grid.re_axis()[x] == pytest.approx(-1.0)
    pixel = 3.5 / 141
    b_axis = ab_grid.im_axis()
    bounded_b = b_axis[locus.data[:, x] == 1]
    windows = bounded_windows(get("z3_batch4"), -2.5, 1.0)
    assert len(windows) == 3

    for b in bounded_b:
        assert any(lo - pixel <= b <= hi + pixel for lo, hi in windows)
    for lo, hi in windows[1:]:
        inside = b_axis[(b_axis >= lo) & (b_axis <= hi)]
        assert inside.size >= 1
        assert np.isin(inside[(inside > lo + pixel) & (inside < hi - pixel)], bounded_b).all()
    # the narrow window near b = -2 is thinner than a pixel and holds no pixel centre
    lo, hi = windows[0]
    assert not ((b_axis > lo + 0.005) & (b_axis < hi - 0.005)).any()
    assert bounded_b.min() > -1.1


def test_ab_membership_matches_single_networks():
    ab_grid = GridSpec.from_window((-1.5, 0.5, -1.5, 0.5), (6, 5))
    locus = ab_membership_locus(FamilySpec("self_drive"), ab_grid, -1 + 0j, threads=3)

    for y in range(ab_grid.height):
        for x in range(ab_grid.width):
            ab = ab_grid.point(x, y)
            net = self_drive(ab.real, ab.imag, -1.0)
            rec = iterate_orbit(net, MultiState.zeros(3), 50, 20.0)
            assert locus.data[y, x] == (0 if rec.escaped else 1)


def test_ab_connectedness_locus_shape():
    ab_grid = GridSpec.from_window((-1.2, -0.8, -1.2, -0.8), (2, 2))
    c_grid = GridSpec.from_window((-2.0, 1.0, -1.5, 1.5), (30, 30))
    locus = ab_connectedness_locus(FamilySpec("simple_dual"), ab_grid, c_grid, threads=1)
    assert locus.data.shape == (2, 2)
    assert (locus.data >= 0).all()


def test_ab_connectedness_at_the_corner_points():
    ab_grid = GridSpec.from_window((-1.5, 0.5, -1.5, 0.5), (2, 2))
    c_grid = GridSpec.from_window((-2.0, 1.0, -1.5, 1.5), (100, 100))
    locus = ab_connectedness_locus(FamilySpec("self_drive"), ab_grid, c_grid, threads=2)
    block = np.ones((3, 3), dtype=bool)
    for a, b in ((-1.0, -1.0), (0.0, 0.0)):
        x, y = ab_grid.pixel_of(complex(a, b))
        assert ab_grid.point(x, y) == pytest.approx(complex(a, b))
        mask = equi_m_raster(self_drive(a, b), c_grid, threads=1).data == -1
        expected = ndimage.label(ndimage.binary_dilation(mask, structure=block), structure=block)[1]
        assert locus.data[y, x] == expected
    # at 100x100 the pinch at c = -3/4 is closed by the blow-up; it opens at 400x400
    assert locus.data[ab_grid.pixel_of(complex(-1.0, -1.0))[::-1]] == 1
    # node 3 still sees z1 + z2 at (0, 0), so the set is not the classic one
    assert 1 <= locus.data[ab_grid.pixel_of(0j)[::-1]] <= 3


def test_ab_locus_needs_a_two_parameter_family():
    ab_grid = GridSpec.from_window((-1.0, 1.0, -1.0, 1.0), (2, 2))
    with pytest.raises(KeyError):
        ab_membership_locus(FamilySpec("single"), ab_grid, -1 + 0j)
