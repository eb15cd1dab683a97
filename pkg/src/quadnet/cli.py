"""
Command-line interface for coupled quadratic network experiments.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import yaml

from quadnet.errors import ConfigError
from quadnet.jobs import COMMANDS, timed
from quadnet.settings import Settings
from quadnet.utils.logging import setup_logging
from quadnet.utils.parsing import glue_negative_values

log = logging.getLogger("quadnet")

DEFAULT_CONFIG = "configs/default.yaml"


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=str, default=DEFAULT_CONFIG, help="Path to defaults yaml")
    p.add_argument("--logging-config", type=str, default="configs/logging.yaml", help="Path to logging yaml")
    p.add_argument("--preset", type=str, default=None, help="Experiment yaml supplying this command's flags")
    p.add_argument("--out", type=str, default=None, help="Output path prefix")
    p.add_argument("--threads", type=int, default=None, help="Worker threads (default: QUADNET_THREADS or CPU count)")
    p.add_argument("--verbose", action="store_true", help="Debug logging for quadnet loggers")


def _add_escape(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-iter", type=int, default=None, help="Iteration cap K")
    p.add_argument("--escape-radius", type=float, default=None, help="Escape radius R_e")


def _add_raster(p: argparse.ArgumentParser) -> None:
    _add_escape(p)
    p.add_argument("--window", type=str, default=None, help="re_min,re_max,im_min,im_max")
    p.add_argument("--res", type=str, default=None, help="WIDTHxHEIGHT")
    p.add_argument("--palette", type=str, default=None, choices=["grayscale", "banded"])


def _add_family(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", type=str, default=None,
                   help="single | simple-dual | self-drive | bipartite | explicit")
    p.add_argument("--network", type=str, default=None, help="Network JSON (implies --family explicit)")
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--c", type=str, default=None, help="Equi-parameter, e.g. -1.15+0.26i")
    p.add_argument("--n-clique", type=int, default=None)
    p.add_argument("--m-xy", type=int, default=None)
    p.add_argument("--m-yx", type=int, default=None)
    p.add_argument("--g-within", type=float, default=None)
    p.add_argument("--g-between", type=float, default=None)
    p.add_argument("--xy-cells", type=str, default=None, help="Comma-separated cell indices of the xy block")
    p.add_argument("--yx-cells", type=str, default=None, help="Comma-separated cell indices of the yx block")


def _add_locus(p: argparse.ArgumentParser) -> None:
    p.add_argument("--blowup-radius", type=float, default=None, help="Dilation radius in pixels")
    p.add_argument("--connectivity", type=int, default=None, choices=[4, 8])
    p.add_argument("--c-window", type=str, default=None)
    p.add_argument("--c-res", type=str, default=None)


def _add_ensemble(p: argparse.ArgumentParser, c_action: str = "store") -> None:
    _add_raster(p)
    p.add_argument("--family", type=str, default=None, help="edge-count | bipartite")
    p.add_argument("--n", type=int, default=None, help="Nodes (edge-count) or clique size (bipartite)")
    p.add_argument("--k", type=int, default=None, help="Edge count, self-loops included")
    p.add_argument("--g", type=float, default=None, help="Edge weight (default 1/N)")
    p.add_argument("--m-xy", type=int, default=None)
    p.add_argument("--m-yx", type=int, default=None)
    p.add_argument("--g-within", type=float, default=None)
    p.add_argument("--g-between", type=float, default=None)
    p.add_argument("--sampled", action="store_true", help="Seeded sampling instead of exhaustive enumeration")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--cap", type=int, default=None, help="Largest family enumerated exhaustively")
    p.add_argument("--c", type=str, default=None, action=c_action, help="Equi-parameter")


def _add_map(p: argparse.ArgumentParser) -> None:
    p.add_argument("--map", type=str, required=False, default=None, help="z3-batch4 | z2-even | z3-limit")
    p.add_argument("--p-range", type=str, default=None, help="p_min,p_max")
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--x0", type=float, default=None)
    p.add_argument("--xi0", type=float, default=None, help="Frozen node value for z3-limit")


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    """
    Build the argument parser; also returns the subparsers by name so presets can set their defaults.
    """
    parser = argparse.ArgumentParser(
        prog="quadnet",
        description="Asymptotic sets of networks of coupled quadratic maps",
    )
    subparsers = parser.add_subparsers(dest="cmd", required=True)
    subs: dict[str, argparse.ArgumentParser] = {}

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = subparsers.add_parser(name, help=help_text)
        _add_common(p)
        subs[name] = p
        return p

    # ---------------------------
    # escape-time rasters
    # ---------------------------
    p = add("equi-m", help_text="Equi-M raster over the equi-parameter plane")
    _add_raster(p)
    _add_family(p)

    p = add("node-m", help_text="Node-wise equi-M raster")
    _add_raster(p)
    _add_family(p)
    p.add_argument("--node", type=int, default=None, help="1-based node index")

    p = add("uni-j", help_text="Uni-J raster over the initial-value plane")
    _add_raster(p)
    _add_family(p)

    # ---------------------------
    # single network
    # ---------------------------
    p = add("escape-radius", help_text="Escape radius of a diagonally dominant network")
    _add_family(p)
    p.add_argument("--delta", type=float, default=None)

    p = add("orbit", help_text="Multi-orbit of a diagonal initial state, written as CSV")
    _add_escape(p)
    _add_family(p)
    p.add_argument("--z0", type=str, default=None, help="Initial value on every node (default 0)")

    # ---------------------------
    # topology
    # ---------------------------
    p = add("connectedness-locus", help_text="Component count of uni-J prisoner sets per equi-parameter")
    _add_escape(p)
    _add_family(p)
    _add_locus(p)
    p.add_argument("--z-window", type=str, default=None)
    p.add_argument("--z-res", type=str, default=None)

    p = add("ab-locus", help_text="Membership or connectedness over the (a, b) plane")
    _add_escape(p)
    _add_family(p)
    _add_locus(p)
    p.add_argument("--mode", type=str, default="membership", choices=["membership", "connectedness"])
    p.add_argument("--ab-window", type=str, default=None, help="a_min,a_max,b_min,b_max")
    p.add_argument("--res", type=str, default=None, help="(a, b) resolution WIDTHxHEIGHT")
    p.add_argument("--c0", type=str, default=None, help="Equi-parameter for membership (default -1)")

    # ---------------------------
    # bifurcation
    # ---------------------------
    p = add("bifurcation", help_text="Orbit diagram of a real map family")
    _add_map(p)
    p.add_argument("--transient", type=int, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--bound", type=float, default=None)
    p.add_argument("--windows", action="store_true", help="Also write refined bounded windows")
    p.add_argument("--landmarks", action="store_true", help="Also list superattracting parameters")
    p.add_argument("--refine-tol", type=float, default=None)

    p = add("fixed-scan", help_text="Fixed-point continuation with LP / PD events")
    _add_map(p)
    p.add_argument("--newton-tol", type=float, default=None)

    p = add("hyperbolic-curves", help_text="Fixed-point curves of the simple dual network")
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--points", type=int, default=721)

    # ---------------------------
    # ensembles
    # ---------------------------
    p = add("core-uni-j", help_text="Bounded fraction over a configuration family (uni-J)")
    _add_ensemble(p)

    p = add("core-equi-m", help_text="Bounded fraction over a configuration family (equi-M)")
    _add_ensemble(p)

    p = add("classes", help_text="Asymptotic and spectral classes of a configuration family")
    _add_ensemble(p)

    p = add("invariance", help_text="Compare asymptotic classes across equi-parameters")
    _add_ensemble(p, c_action="append")

    return parser, subs


def apply_preset(path: str, cmd: str, sub: argparse.ArgumentParser) -> None:
    """Install the preset's values as the subcommand's defaults; explicit flags still win."""
    try:
        data = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
    except FileNotFoundError as e:
        raise ConfigError("--preset", f"preset not found: {path}") from e
    except yaml.YAMLError as e:
        raise ConfigError("--preset", f"unreadable YAML in {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError("--preset", f"{path} must contain a mapping")
    preset_cmd = data.pop("command", cmd)
    if preset_cmd != cmd:
        raise ConfigError("--preset", f"preset is for {preset_cmd!r}, not {cmd!r}")
    known = {a.dest for a in sub._actions}
    values = {}
    for key, value in data.items():
        dest = str(key).replace("-", "_")
        if dest not in known:
            raise ConfigError(f"--preset/{key}", "unknown option for this command")
        values[dest] = value
    sub.set_defaults(**values)


def run(argv: list[str] | None = None) -> int:
    """Run one subcommand; returns 0 on success, 2 on a configuration error, 1 on a runtime error."""
    argv = glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    parser, subs = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    setup_logging(args.logging_config if Path(args.logging_config).exists() else None,
                  logging.DEBUG if args.verbose else None)

    try:
        if args.preset:
            apply_preset(args.preset, args.cmd, subs[args.cmd])
            args = parser.parse_args(argv)
        settings = (Settings.load_optional(args.config) if args.config == DEFAULT_CONFIG
                    else Settings.load(args.config))
        summary = timed(lambda: COMMANDS[args.cmd](args, settings))
    except ConfigError as e:
        log.error("%s failed: %s", args.cmd, e)
        return 2
    except SystemExit as e:
        return int(e.code or 0)
    except Exception:
        log.exception("%s failed", args.cmd)
        return 1

    print(summary)
    return 0


def main():
    """
    Main function for the quadnet command-line interface.
    """
    raise SystemExit(run())


if __name__ == "__main__":
    main()
