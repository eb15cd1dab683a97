import numpy as np
import pytest

from quadnet.bifurcation import (
    OrbitClass,
    all_fixed_points,
    available,
    bounded_windows,
    fixed_point_scan,
    get,
    newton_fixed_point,
    superattracting_check,
    superattracting_parameters,
    sweep,
)
from quadnet.families import self_drive, single


def _fold_and_flip_roots() -> np.ndarray:
    # fixed points of the even map with slope +-1 satisfy 16 xi^3 + 16 xi^2 - 1 = 0
    return np.sort(np.roots([16.0, 16.0, 0.0, -1.0]).real)


def test_registry():
    assert {"z2_even", "z3_batch4", "z3_limit"} <= set(available())
    assert get("z3-batch4").kind == "z3_batch4"
    assert get("z3_limit", xi0=0.5).describe()["xi0"] == 0.5
    with pytest.raises(KeyError):
        get("logistic")


@pytest.mark.parametrize("kind,p", [("z2_even", -1.3), ("z3_batch4", -0.7), ("z3_limit", 0.8)])
def test_derivatives_match_finite_differences(kind, p):
    fam = get(kind)
    h = 1e-6
    for xi in (-0.9, -0.2, 0.35, 1.1):
        numeric = (fam.evaluate(xi + h, p) - fam.evaluate(xi - h, p)) / (2 * h)
        assert fam.derivative(xi, p) == pytest.approx(numeric, rel=1e-5, abs=1e-6)


def test_even_map_values():
    fam = get("z2_even")
    assert fam.evaluate(0.0, 0.0) == 0.0
    assert fam.evaluate(0.0, -1.0) == -1.0
    assert fam.evaluate(-1.0, -1.0) == 0.0
    assert get("z3_batch4").evaluate(0.3, 0.0) == 0.0


def test_sweep_examples():
    fam = get("z2_even")
    sw = sweep(fam, -2.1, 0.0, steps=3, transient=200, samples=10, threads=1)
    assert sw.escaped.tolist() == [True, False, False]
    records = list(sw.records())
    assert records[0].attractor_samples == ()
    # a = 0: the origin is fixed
    assert records[2].attractor_samples == (0.0,) * 10
    df = sw.to_frame()
    assert list(df.columns[:3]) == ["p", "escaped", "s0"]
    assert len(df) == 3
    assert df.loc[0, ["s0", "s9"]].isna().all()


def test_batch_map_bounded_without_coupling():
    sw = sweep(get("z3_batch4"), -0.1, 0.1, steps=3, threads=1)
    assert not sw.escaped[1]


def test_sweep_independent_of_thread_count():
    fam = get("z3_batch4")
    one = sweep(fam, -2.5, 1.0, steps=101, transient=300, samples=20, threads=1)
    many = sweep(fam, -2.5, 1.0, steps=101, transient=300, samples=20, threads=4)
    assert np.array_equal(one.escaped, many.escaped)
    assert np.array_equal(one.samples, many.samples, equal_nan=True)


def test_sweep_argument_checks():
    with pytest.raises(ValueError):
        sweep(get("z2_even"), -1.0, 0.0, steps=1)
    with pytest.raises(ValueError):
        sweep(get("z2_even"), -1.0, 0.0, bound=0.0)


def test_batch_map_windows():
    windows = bounded_windows(get("z3_batch4"), -2.5, 1.0)
    expected = [(-2.016, -1.995), (-1.028, -0.996), (-0.34, 0.611)]
    assert len(windows) == 3
    for (lo, hi), (elo, ehi) in zip(windows, expected):
        assert lo == pytest.approx(elo, abs=0.02)
        assert hi == pytest.approx(ehi, abs=0.02)


def test_even_map_single_window():
    windows = bounded_windows(get("z2_even"), -2.5, 1.0)
    assert len(windows) == 1
    lo, hi = windows[0]
    xi = _fold_and_flip_roots()[-1]
    fold = xi * xi - 1 - 1 / (4 * xi)
    assert lo == pytest.approx(fold, abs=0.02)
    assert 0.6 < hi < 0.75


def test_no_windows_when_everything_escapes():
    assert bounded_windows(get("z2_even"), 3.0, 4.0, coarse_steps=50) == []


def test_fixed_points():
    fam = get("z2_even")
    # a = -1: xi^4 - xi - 1 = 0
    roots = all_fixed_points(fam, -1.0, 1e-12)
    assert len(roots) == 2
    for r in roots:
        assert r**4 - r - 1 == pytest.approx(0.0, abs=1e-9)
    assert newton_fixed_point(fam, 1.2, -1.0, 1e-12) == pytest.approx(roots[-1], abs=1e-9)


def test_even_map_events():
    scan = fixed_point_scan(get("z2_even"), -2.5, 1.0, steps=2000)
    flips = [e.param for e in scan.events("PD")]
    folds = [e.param for e in scan.events("LP")]
    for xi in _fold_and_flip_roots():
        flip = xi * xi - 1 + 1 / (4 * xi)
        assert min(abs(p - flip) for p in flips) < 1e-3
    xi = _fold_and_flip_roots()[-1]
    assert min(abs(p - (xi * xi - 1 - 1 / (4 * xi))) for p in folds) < 1e-3
    df = scan.to_frame()
    assert list(df.columns) == ["p", "xi", "slope", "stability", "event", "branch"]
    assert set(df["stability"]) <= {"stable", "unstable"}


def test_batch_map_events():
    scan = fixed_point_scan(get("z3_batch4"), -2.5, 1.0, steps=2000)
    folds = [e.param for e in scan.events("LP")]
    flips = [e.param for e in scan.events("PD")]
    for target in (-1.995, -0.996, -0.34, 0.58):
        assert min(abs(p - target) for p in folds) < 2e-3
    assert min(abs(p + 1.01) for p in flips) < 3e-3
    # the period doubling at the left window edge sits just outside it
    assert min(abs(p + 2.0097) for p in flips) < 2e-3


def test_critical_orbit_classes(drive_net):
    assert superattracting_check(drive_net) == OrbitClass("periodic", 0, 4)
    assert superattracting_check(drive_net, node=2) == OrbitClass("periodic", 0, 4)
    assert superattracting_check(drive_net, node=1) == OrbitClass("periodic", 0, 2)
    assert superattracting_check(single(0j)) == OrbitClass("periodic", 0, 1)
    assert superattracting_check(single(), point=-2.0) == OrbitClass("preperiodic", 2, 1)
    assert superattracting_check(self_drive(-1.0, -1.0), point=0.25 + 0.5j).kind == "neither"


def test_critical_orbit_of_a_map_family():
    fam = get("z2_even")
    assert superattracting_check(fam, point=-1.0) == OrbitClass("periodic", 0, 2)
    assert superattracting_check(fam, point=0.0) == OrbitClass("periodic", 0, 1)
    with pytest.raises(ValueError):
        superattracting_check(fam)


def test_superattracting_parameters_of_the_even_map():
    marks = superattracting_parameters(get("z2_even"), -2.5, 1.0, max_period=2)
    params = [p for p, _ in marks]
    for target in (-2.0, -1.0, 0.0):
        assert min(abs(p - target) for p in params) < 1e-8
    assert dict((round(p, 6), m) for p, m in marks)[-1.0] == 2
