"""
Job configuration and the work behind each CLI subcommand.

Every job resolves its parameters (flag > config YAML > module constant) into a JobConfig,
runs the compute modules and writes its outputs with JSON sidecars. The returned string is the
one-line summary printed by the CLI.
"""
from __future__ import annotations

import argparse
import logging
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Dict

import numpy as np
import pandas as pd

from quadnet import bifurcation, ensemble, escape, families, raster, topology
from quadnet.errors import ConfigError
from quadnet.io.network_json import read_network_json
from quadnet.io.rasters import PALETTES, write_grid, write_ppm
from quadnet.io.writers import write_csv, write_json, write_sidecar
from quadnet.netcore import MultiState, Network, iterate_orbit
from quadnet.raster import GridSpec
from quadnet.settings import Settings
from quadnet.utils.parsing import format_complex, parse_complex, parse_resolution, parse_window

log = logging.getLogger("quadnet.jobs")


@dataclass
class JobConfig:
    """Everything that determines a job's outputs (thread count is deliberately absent)."""
    command: str
    family: dict = field(default_factory=dict)
    windows: dict = field(default_factory=dict)
    resolutions: dict = field(default_factory=dict)
    max_iter: int | None = None
    escape_radius: float | None = None
    blowup_radius: float | None = None
    connectivity: int | None = None
    enumeration: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    palette: str | None = None
    seed: int | None = None

    def to_dict(self) -> dict:
        return asdict(self)


class Resolver:
    """Flag > settings > built-in default lookups for one parsed command line."""

    def __init__(self, args: argparse.Namespace, settings: Settings):
        self.args = args
        self.settings = settings

    def value(self, dest: str, key: str, default):
        v = getattr(self.args, dest, None)
        if v is not None:
            return v
        return self.settings.p(key, default)

    def grid(self, window_dest: str, window_key: str, window_default: str,
             res_dest: str, res_key: str, res_default: str) -> GridSpec:
        flag_w = "--" + window_dest.replace("_", "-")
        flag_r = "--" + res_dest.replace("_", "-")
        window = parse_window(self.value(window_dest, window_key, window_default), flag_w)
        res = parse_resolution(self.value(res_dest, res_key, res_default), flag_r)
        try:
            return GridSpec.from_window(window, res)
        except ValueError as e:
            raise ConfigError(flag_w, str(e)) from e

    def complex(self, dest: str, default: complex | None = None) -> complex:
        v = getattr(self.args, dest, None)
        if v is None:
            if default is None:
                raise ConfigError("--" + dest.replace("_", "-"), "required")
            return default
        return parse_complex(v, "--" + dest.replace("_", "-"))

    @property
    def max_iter(self) -> int:
        v = int(self.value("max_iter", "raster.max_iter", raster.DEFAULT_MAX_ITER))
        if v < 1:
            raise ConfigError("--max-iter", f"must be >= 1, got {v}")
        return v

    @property
    def escape_radius(self) -> float:
        v = float(self.value("escape_radius", "raster.escape_radius", raster.DEFAULT_ESCAPE_RADIUS))
        if not v > 0:
            raise ConfigError("--escape-radius", f"must be > 0, got {v}")
        return v

    @property
    def palette(self) -> str:
        v = self.value("palette", "raster.palette", "grayscale")
        if v not in PALETTES:
            raise ConfigError("--palette", f"unknown palette {v!r}")
        return v

    def out(self, default_name: str) -> Path:
        v = getattr(self.args, "out", None)
        if v:
            return Path(v)
        return Path(self.settings.p("paths.out_dir", "outputs")) / default_name

    def c_grid(self) -> GridSpec:
        return self.grid("window", "raster.c_window", "-2,1,-1.5,1.5",
                         "res", "raster.resolution", "200x200")

    def z_grid(self) -> GridSpec:
        return self.grid("window", "raster.z_window", "-2,2,-2,2",
                         "res", "raster.resolution", "200x200")


def _cells(text: str | None, flag: str) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return tuple(int(x) for x in str(text).split(",") if x.strip() != "")
    except ValueError as e:
        raise ConfigError(flag, f"expected comma-separated cell indices, got {text!r}") from e


def family_spec(args: argparse.Namespace, res: Resolver) -> families.FamilySpec:
    kind = families.normalize_kind(args.family or "self_drive")
    network = None
    if kind == "explicit":
        if getattr(args, "network", None) is None:
            raise ConfigError("--network", "required for --family explicit")
        network = read_network_json(args.network)
    return families.FamilySpec(
        kind=kind,
        a=float(args.a if args.a is not None else 0.0),
        b=float(args.b if args.b is not None else 0.0),
        c=res.complex("c", 0j),
        n_clique=int(args.n_clique or 2),
        m_xy=int(args.m_xy or 0),
        m_yx=int(args.m_yx or 0),
        g_within=float(args.g_within if args.g_within is not None else 0.5),
        g_between=float(args.g_between if args.g_between is not None else -0.5),
        xy_cells=_cells(args.xy_cells, "--xy-cells"),
        yx_cells=_cells(args.yx_cells, "--yx-cells"),
        network=network,
    )


def build_network(args: argparse.Namespace, res: Resolver) -> tuple[Network, families.FamilySpec]:
    if getattr(args, "network", None) and not args.family:
        args.family = "explicit"
    spec = family_spec(args, res)
    try:
        net = families.build(spec)
    except KeyError as e:
        raise ConfigError("--family", str(e)) from e
    except ValueError as e:
        raise ConfigError("--family", str(e)) from e
    if spec.normalized_kind == "explicit" and args.c is not None:
        net = net.with_params(spec.c)
    return net, spec


def configuration_family(args: argparse.Namespace, res: Resolver) -> ensemble.ConfigurationFamily:
    try:
        return ensemble.ConfigurationFamily(
            kind=args.family or "edge_count",
            n=int(args.n) if args.n is not None else 3,
            k=int(args.k or 0),
            m_xy=int(args.m_xy or 0),
            m_yx=int(args.m_yx or 0),
            g=args.g,
            g_within=float(args.g_within if args.g_within is not None else 0.5),
            g_between=float(args.g_between if args.g_between is not None else -0.5),
            mode="sampled" if args.sampled else "exhaustive",
            samples=int(res.value("samples", "ensemble.samples", 20)),
            seed=int(res.value("seed", "ensemble.seed", 0)),
            cap=int(res.value("cap", "ensemble.cap", ensemble.DEFAULT_CAP)),
        )
    except ValueError as e:
        raise ConfigError("--family", str(e)) from e


def _c_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _window(grid: GridSpec) -> list[float]:
    return [grid.re_min, grid.re_max, grid.im_min, grid.im_max]


def _write_escape_raster(r: raster.EscapeRaster, out: Path, job: JobConfig, palette: str) -> list[Path]:
    ppm = out.with_suffix(".ppm")
    npy = out.with_suffix(".npy")
    write_ppm(r, palette, ppm)
    write_sidecar(ppm, job.to_dict(), r.metadata())
    write_grid(npy, r.data, job.to_dict(), r.metadata())
    return [ppm, npy]


# ---------------------------
# raster commands
# ---------------------------
def run_equi_m(args, settings: Settings) -> str:
    res = Resolver(args, settings)
    net, spec = build_network(args, res)
    grid = res.c_grid()
    job = JobConfig(args.cmd, spec.as_dict(), {"c": _window(grid)}, {"c": [grid.width, grid.height]},
                    res.max_iter, res.escape_radius, palette=res.palette)
    node = getattr(args, "node", None)
    if args.cmd == "node-m":
        if node is None:
            raise ConfigError("--node", "required")
        job.params["node"] = node
        try:
            r = raster.node_m_raster(net, node, grid, job.max_iter, job.escape_radius, threads=args.threads)
        except IndexError as e:
            raise ConfigError("--node", str(e)) from e
    else:
        r = raster.equi_m_raster(net, grid, job.max_iter, job.escape_radius, threads=args.threads)
    out = res.out(args.cmd.replace("-", "_"))
    paths = _write_escape_raster(r, out, job, job.palette)
    return f"{args.cmd}: {grid.width}x{grid.height} bounded={r.bounded_count} -> {paths[0]}"


def run_uni_j(args, settings: Settings) -> str:
    res = Resolver(args, settings)
    net, spec = build_network(args, res)
    grid = res.z_grid()
    job = JobConfig(args.cmd, spec.as_dict(), {"z": _window(grid)},
                    {"z": [grid.width, grid.height]}, res.max_iter, res.escape_radius, palette=res.palette,
                    params={"c": [_c_pair(z) for z in net.params]})
    r = raster.uni_j_raster(net, grid, job.max_iter, job.escape_radius, threads=args.threads)
    paths = _write_escape_raster(r, res.out("uni_j"), job, job.palette)
    return f"uni-j: {grid.width}x{grid.height} bounded={r.bounded_count} -> {paths[0]}"


# ---------------------------
# single-network commands
# ---------------------------
def run_escape_radius(args, settings: Settings) -> str:
    res = Resolver(args, settings)
    net, spec = build_network(args, res)
    if not escape.check_dominance(net):
        raise ConfigError("--network", "network is not diagonally dominant; no escape radius available")
    try:
        bound = escape.escape_bound(net, args.delta)
    except ValueError as e:
        raise ConfigError("--delta", str(e)) from e
    if args.out:
        job = JobConfig(args.cmd, spec.as_dict(), params={"delta": args.delta})
        out = Path(args.out).with_suffix(".json")
        write_json(out, bound.as_dict())
        write_sidecar(out, job.to_dict())
    return f"escape-radius: delta={bound.delta:g} M={bound.M:.10g} radius={bound.radius:.10g}"


def run_orbit(args, settings: Settings) -> str:
    res = Resolver(args, settings)
    net, spec = build_network(args, res)
    z0 = res.complex("z0", 0j)
    s0 = MultiState.uniform(z0, net.n)
    rec = iterate_orbit(net, s0, res.max_iter, res.escape_radius)
    rows = []
    for t, s in enumerate(rec.states):
        for j in range(net.n):
            rows.append((t, j + 1, float(s.values[j].real), float(s.values[j].imag), bool(s.overflowed[j])))
    df = pd.DataFrame(rows, columns=["t", "node", "re", "im", "overflowed"])
    job = JobConfig(args.cmd, spec.as_dict(), max_iter=res.max_iter, escape_radius=res.escape_radius,
                    params={"c": [_c_pair(z) for z in net.params], "z0": _c_pair(z0)})
    out = res.out("orbit").with_suffix(".csv")
    write_csv(out, df)
    write_sidecar(out, job.to_dict(), {"escape_iter": rec.escape_iter})
    status = f"escaped at t={rec.escape_iter}" if rec.escaped else "bounded"
    return f"orbit: {len(rec.states) - 1} steps, {status} -> {out}"


# ---------------------------
# topology commands
# ---------------------------
def _locus_settings(res: Resolver) -> tuple[float, int]:
    radius = float(res.value("blowup_radius", "topology.blowup_radius", topology.DEFAULT_BLOWUP_RADIUS))
    conn = int(res.value("connectivity", "topology.connectivity", topology.DEFAULT_CONNECTIVITY))
    if radius < 0:
        raise ConfigError("--blowup-radius", f"must be >= 0, got {radius}")
    if conn not in (4, 8):
        raise ConfigError("--connectivity", f"must be 4 or 8, got {conn}")
    return radius, conn


def run_connectedness_locus(args, settings: Settings) -> str:
    res = Resolver(args, settings)
    net, spec = build_network(args, res)
    radius, conn = _locus_settings(res)
    c_grid = res.grid("c_window", "raster.c_window", "-2,1,-1.5,1.5", "c_res", "topology.locus_resolution", "100x100")
    z_grid = res.grid("z_window", "raster.z_window", "-2,2,-2,2", "z_res", "topology.locus_resolution", "100x100")
    job = JobConfig(args.cmd, spec.as_dict(),
                    {"c": _window(c_grid),
                     "z": _window(z_grid)},
                    {"c": [c_grid.width, c_grid.height], "z": [z_grid.width, z_grid.height]},
                    res.max_iter, res.escape_radius, radius, conn)
    locus = topology.uni_j_connectedness_locus(net, c_grid, z_grid, job.max_iter, job.escape_radius,
                                               radius, conn, threads=args.threads)
    out = res.out("connectedness_locus").with_suffix(".npy")
    write_grid(out, locus.data, job.to_dict(), {"grid": c_grid.as_dict()})
    connected = int((locus.data == 1).sum())
    return f"connectedness-locus: {c_grid.width}x{c_grid.height} connected={connected} -> {out}"


def run_ab_locus(args, settings: Settings) -> str:
    res = Resolver(args, settings)
    spec = family_spec(args, res)
    ab_grid = res.grid("ab_window", "topology.ab_window", "-2.75,0.75,-2.75,0.75", "res", "topology.ab_resolution", "141x141")
    c0 = res.complex("c0", -1 + 0j)
    job = JobConfig(args.cmd, spec.as_dict(), {"ab": _window(ab_grid)},
                    {"ab": [ab_grid.width, ab_grid.height]}, res.max_iter, res.escape_radius,
                    params={"mode": args.mode, "c0": _c_pair(c0)})
    try:
        if args.mode == "membership":
            locus = topology.ab_membership_locus(spec, ab_grid, c0, job.max_iter, job.escape_radius, threads=args.threads)
        else:
            radius, conn = _locus_settings(res)
            job.blowup_radius, job.connectivity = radius, conn
            c_grid = res.grid("c_window", "raster.c_window", "-2,1,-1.5,1.5", "c_res", "topology.locus_resolution", "100x100")
            job.windows["c"] = _window(c_grid)
            job.resolutions["c"] = [c_grid.width, c_grid.height]
            locus = topology.ab_connectedness_locus(spec, ab_grid, c_grid, job.max_iter, job.escape_radius,
                                                    radius, conn, threads=args.threads)
    except KeyError as e:
        raise ConfigError("--family", str(e)) from e
    out = res.out(f"ab_{args.mode}").with_suffix(".npy")
    write_grid(out, locus.data, job.to_dict(), {"grid": ab_grid.as_dict()})
    return f"ab-locus ({args.mode}): {ab_grid.width}x{ab_grid.height} nonzero={int((locus.data > 0).sum())} -> {out}"


# ---------------------------
# bifurcation commands
# ---------------------------
def _map_family(args) -> bifurcation.RealMapFamily:
    if not args.map:
        raise ConfigError("--map", f"required; available: {', '.join(bifurcation.available())}")
    try:
        if families.normalize_kind(args.map) == "z3_limit":
            return bifurcation.get(args.map, xi0=float(args.xi0 or 0.0))
        return bifurcation.get(args.map)
    except KeyError as e:
        raise ConfigError("--map", f"{e}; available: {', '.join(bifurcation.available())}") from e


def _p_range(args) -> tuple[float, float]:
    if args.p_range is None:
        raise ConfigError("--p-range", "required")
    parts = str(args.p_range).split(",")
    if len(parts) != 2:
        raise ConfigError("--p-range", f"expected p_min,p_max, got {args.p_range!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError as e:
        raise ConfigError("--p-range", f"non-numeric bound in {args.p_range!r}") from e
    if not lo < hi:
        raise ConfigError("--p-range", f"p_min must be < p_max, got {lo}, {hi}")
    return lo, hi


def run_bifurcation(args, settings: Settings) -> str:
    res = Resolver(args, settings)
    fam = _map_family(args)
    lo, hi = _p_range(args)
    steps = int(res.value("steps", "bifurcation.steps", bifurcation.DEFAULT_STEPS))
    transient = int(res.value("transient", "bifurcation.transient", bifurcation.DEFAULT_TRANSIENT))
    samples = int(res.value("samples", "bifurcation.samples", bifurcation.DEFAULT_SAMPLES))
    bound = float(res.value("bound", "bifurcation.bound", bifurcation.DEFAULT_BOUND))
    x0 = float(args.x0 or 0.0)
    job = JobConfig(args.cmd, fam.describe(), params={"p_range": [lo, hi], "steps": steps, "transient": transient,
                                                      "samples": samples, "bound": bound, "x0": x0})
    try:
        sw = bifurcation.sweep(fam, lo, hi, steps, transient, samples, x0, bound, threads=args.threads)
    except ValueError as e:
        raise ConfigError("--steps", str(e)) from e
    out = res.out("bifurcation")
    csv = out.with_suffix(".csv")
    write_csv(csv, sw.to_frame())
    write_sidecar(csv, job.to_dict())
    summary = f"bifurcation: {fam.kind} {steps} params, bounded={int((~sw.escaped).sum())}"
    if args.windows:
        tol = float(res.value("refine_tol", "bifurcation.refine_tol", bifurcation.DEFAULT_REFINE_TOL))
        wins = bifurcation.bounded_windows(fam, lo, hi, steps, tol, x0, transient, bound)
        wpath = out.with_name(out.name + "_windows.csv")
        write_csv(wpath, pd.DataFrame(wins, columns=["p_lo", "p_hi"]))
        write_sidecar(wpath, job.to_dict(), {"refine_tol": tol})
        summary += " windows=" + ",".join(f"[{a:.3f},{b:.3f}]" for a, b in wins)
    if args.landmarks:
        marks = bifurcation.superattracting_parameters(fam, lo, hi, x0=x0)
        mpath = out.with_name(out.name + "_landmarks.csv")
        write_csv(mpath, pd.DataFrame(marks, columns=["p", "period"]))
        write_sidecar(mpath, job.to_dict())
        summary += f" landmarks={len(marks)}"
    return f"{summary} -> {csv}"


def run_fixed_scan(args, settings: Settings) -> str:
    res = Resolver(args, settings)
    fam = _map_family(args)
    lo, hi = _p_range(args)
    steps = int(res.value("steps", "bifurcation.steps", bifurcation.DEFAULT_STEPS))
    tol = float(res.value("newton_tol", "bifurcation.newton_tol", 1e-10))
    job = JobConfig(args.cmd, fam.describe(), params={"p_range": [lo, hi], "steps": steps, "newton_tol": tol})
    scan = bifurcation.fixed_point_scan(fam, lo, hi, steps, tol)
    out = res.out("fixed_scan").with_suffix(".csv")
    write_csv(out, scan.to_frame())
    write_sidecar(out, job.to_dict(), {"terminations": [asdict(t) for t in scan.terminations]})
    events = ", ".join(f"{e.event}@{e.param:.4f}" for e in scan.events())
    return f"fixed-scan: {fam.kind} events: {events or 'none'} -> {out}"


def run_hyperbolic_curves(args, settings: Settings) -> str:
    res = Resolver(args, settings)
    a = float(args.a if args.a is not None else 0.0)
    df = families.sample_curves(a, int(args.points))
    job = JobConfig(args.cmd, {"kind": "simple_dual", "a": a}, params={"points": int(args.points)})
    out = res.out("hyperbolic_curves").with_suffix(".csv")
    write_csv(out, df)
    write_sidecar(out, job.to_dict())
    return f"hyperbolic-curves: a={a:g} {len(df)} points -> {out}"


# ---------------------------
# ensemble commands
# ---------------------------
def _enumerate(fam: ensemble.ConfigurationFamily) -> list[Network]:
    try:
        return ensemble.enumerate_configurations(fam)
    except ValueError as e:
        raise ConfigError("--cap", str(e)) from e


def _ensemble_job(args, res: Resolver, fam: ensemble.ConfigurationFamily, grid: GridSpec, name: str) -> JobConfig:
    return JobConfig(args.cmd, {}, {name: _window(grid)},
                     {name: [grid.width, grid.height]}, res.max_iter, res.escape_radius,
                     enumeration=fam.as_dict(), seed=fam.seed if fam.mode == "sampled" else None)


def run_core(args, settings: Settings) -> str:
    res = Resolver(args, settings)
    fam = configuration_family(args, res)
    nets = _enumerate(fam)
    if args.cmd == "core-uni-j":
        grid = res.z_grid()
        c = res.complex("c")
        job = _ensemble_job(args, res, fam, grid, "z")
        job.params["c"] = _c_pair(c)
        frac = ensemble.core_uni_j(nets, c, grid, job.max_iter, job.escape_radius, threads=args.threads)
    else:
        grid = res.c_grid()
        job = _ensemble_job(args, res, fam, grid, "c")
        frac = ensemble.core_equi_m(nets, grid, job.max_iter, job.escape_radius, threads=args.threads)
    out = res.out(args.cmd.replace("-", "_")).with_suffix(".npy")
    write_grid(out, frac.data, job.to_dict(), {"grid": grid.as_dict(), "config_count": frac.config_count})
    return f"{args.cmd}: {frac.config_count} configurations, core pixels={frac.core_mask().count} -> {out}"


def run_classes(args, settings: Settings) -> str:
    res = Resolver(args, settings)
    fam = configuration_family(args, res)
    nets = _enumerate(fam)
    grid = res.z_grid()
    c = res.complex("c")
    job = _ensemble_job(args, res, fam, grid, "z")
    job.params["c"] = _c_pair(c)
    spectral = ensemble.partition_spectral(nets)
    asym = ensemble.partition_asymptotic(nets, c, grid, job.max_iter, job.escape_radius, threads=args.threads)
    out = res.out("classes").with_suffix(".csv")
    write_csv(out, ensemble.partition_frame(spectral, asym))
    write_sidecar(out, job.to_dict())
    cross = out.with_name(out.stem + "_cross.csv")
    write_csv(cross, ensemble.cross_classes(spectral, asym))
    write_sidecar(cross, job.to_dict())
    return (f"classes: {len(nets)} configurations, {asym.n_classes} asymptotic classes, "
            f"{spectral.n_classes} spectral classes -> {out}")


def run_invariance(args, settings: Settings) -> str:
    res = Resolver(args, settings)
    fam = configuration_family(args, res)
    nets = _enumerate(fam)
    grid = res.z_grid()
    if not args.c or len(args.c) < 2:
        raise ConfigError("--c", "give at least two equi-parameters (repeat --c)")
    c_list = [parse_complex(v, "--c") for v in args.c]
    job = _ensemble_job(args, res, fam, grid, "z")
    job.params["c"] = [_c_pair(c) for c in c_list]
    report = ensemble.class_invariance_experiment(nets, c_list, grid, job.max_iter, job.escape_radius,
                                                  threads=args.threads)
    out = res.out("invariance").with_suffix(".json")
    write_json(out, {
        "all_identical": report.all_identical,
        "classes": {format_complex(c): list(p.class_ids) for c, p in zip(c_list, report.partitions)},
        "diffs": [[format_complex(a), format_complex(b)] for a, b in report.diffs],
    })
    write_sidecar(out, job.to_dict())
    counts = "/".join(str(p.n_classes) for p in report.partitions)
    return f"invariance: {len(c_list)} values of c, classes {counts}, identical={report.all_identical} -> {out}"


COMMANDS: Dict[str, Callable[[argparse.Namespace, Settings], str]] = {
    "equi-m": run_equi_m,
    "node-m": run_equi_m,
    "uni-j": run_uni_j,
    "escape-radius": run_escape_radius,
    "orbit": run_orbit,
    "connectedness-locus": run_connectedness_locus,
    "ab-locus": run_ab_locus,
    "bifurcation": run_bifurcation,
    "fixed-scan": run_fixed_scan,
    "hyperbolic-curves": run_hyperbolic_curves,
    "core-uni-j": run_core,
    "core-equi-m": run_core,
    "classes": run_classes,
    "invariance": run_invariance,
}


def timed(fn: Callable[[], str]) -> str:
    t0 = time.perf_counter()
    summary = fn()
    return f"{summary} ({time.perf_counter() - t0:.2f}s)"
