"""Command-line interface: synthesize datasets, invert them, compare profiles.

Commands
--------
forward   evaluate the response of a configured rod on a frequency grid
invert    recover the cross-section area from a dataset CSV
compare   relative error of a recovered profile against the configured rod
example   run one bundled benchmark scenario end to end

Every command takes --config (JSON), --out (output directory), --seed
(noise seed override) and --quiet.  Exit codes: 0 success, 2 configuration
or parse error, 3 forward-solver failure, 4 inverse-pipeline abort.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .errors import IntegrationFailure, PipelineError, RodshapeError
from .files import (
    read_dataset_csv,
    read_profile_csv,
    write_dataset_csv,
    write_error_csv,
    write_json,
    write_profile_csv,
)
from .forward import synthesize_dataset
from .inverse import InversionOptions, run_inverse
from .profiles import RodParams, make_profile
from .scenarios import SCENARIO_NUMBERS, scenario_variants

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_PIPELINE = 4


class ConfigError(ValueError):
    pass


def _load_config(path):
    try:
        with open(path) as handle:
            cfg = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    return cfg


def _parse_params(cfg):
    try:
        block = cfg["params"]
        return RodParams(
            E=float(block["E"]),
            r=float(block["r"]),
            p=float(block["p"]),
            F0=float(block["F0"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad params block: {exc}") from exc


def _parse_profile(cfg):
    try:
        block = cfg["profile"]
        return make_profile(block["kind"], block.get("params"))
    except KeyError as exc:
        raise ConfigError(f"missing profile key: {exc}") from exc
    except (TypeError, ValueError, RodshapeError) as exc:
        raise ConfigError(f"bad profile block: {exc}") from exc


def _parse_grid(cfg):
    block = cfg.get("grid")
    if not isinstance(block, dict):
        raise ConfigError("missing grid block")
    if "omegas" in block:
        omegas = np.asarray(block["omegas"], dtype=float)
        if omegas.ndim != 1 or omegas.size == 0:
            raise ConfigError("grid.omegas must be a nonempty list")
        return omegas
    try:
        count = int(block["count"])
        if count < 1:
            raise ConfigError("grid.count must be positive")
        return np.linspace(float(block["start"]), float(block["stop"]), count)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad grid block: {exc}") from exc


def _parse_noise(cfg, seed_override=None):
    block = cfg.get("noise") or {}
    delta = float(block.get("delta", 0.0))
    seed = int(block.get("seed", 0))
    if seed_override is not None:
        seed = int(seed_override)
    if delta < 0.0:
        raise ConfigError("noise.delta must be nonnegative")
    return delta, seed


def _parse_inversion(cfg):
    block = cfg.get("inversion") or {}
    known = {
        "N_max",
        "alpha",
        "M",
        "x_points",
        "N_cap",
        "tau",
        "resonance_threshold",
        "recover_q",
    }
    unknown = set(block) - known
    if unknown:
        raise ConfigError(f"unknown inversion options: {sorted(unknown)}")
    thr = block.get("resonance_threshold")
    try:
        return InversionOptions(
            N_max=None if block.get("N_max") is None else int(block["N_max"]),
            alpha=float(block.get("alpha", 1e-3)),
            M=int(block.get("M", 999)),
            x_points=int(block.get("x_points", 201)),
            N_cap=int(block.get("N_cap", 40)),
            tau=float(block.get("tau", 1e-2)),
            resonance_threshold=math.inf if thr is None else float(thr),
            recover_q=bool(block.get("recover_q", False)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad inversion block: {exc}") from exc


def _say(quiet, message):
    if not quiet:
        print(message)


def _do_forward(cfg, out_dir, seed_override, quiet):
    params = _parse_params(cfg)
    profile = _parse_profile(cfg)
    omegas = _parse_grid(cfg)
    delta, seed = _parse_noise(cfg, seed_override)
    try:
        samples = synthesize_dataset(profile, params, omegas, delta=delta, seed=seed)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, cfg.get("dataset", "dataset.csv"))
    write_dataset_csv(path, samples)
    _say(quiet, f"wrote {path} ({len(samples)} rows)")
    return path


def _report_from(recovered, config_echo):
    diag = dict(recovered.diagnostics)
    timings = diag.pop("timings", {})
    report = {
        "config": config_echo,
        "n_star": diag["n_star"],
        "endpoint": {
            "qn": diag["endpoint_qn"],
            "rn": diag["endpoint_rn"],
            "g": diag["endpoint_g"],
            "s": diag["endpoint_s"],
        },
        "selection_table": diag["selection_table"],
        "eigendata": {
            "count": diag["eigen_count"],
            "mu_head": diag["mu_head"],
            "beta_head": diag["beta_head"],
        },
        "interior": {
            "max_residual": float(np.max(diag["interior_residuals"])),
            "g0_origin": diag["g0_origin"],
            "rank_g": diag["interior_rank_g"],
            "rank_t": diag["interior_rank_t"],
            "residuals": diag["interior_residuals"],
        },
        "outputs": {"profile_csv": "profile.csv"},
    }
    return report, {"steps": timings, "total": sum(timings.values())}


def _do_invert(cfg, dataset_path, out_dir, quiet):
    params = _parse_params(cfg)
    options = _parse_inversion(cfg)
    try:
        samples = read_dataset_csv(dataset_path)
    except OSError as exc:
        raise ConfigError(f"cannot read dataset: {exc}") from exc
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    recovered = run_inverse(samples, params, options)
    os.makedirs(out_dir, exist_ok=True)
    profile_path = os.path.join(out_dir, "profile.csv")
    write_profile_csv(profile_path, recovered)
    report, timings = _report_from(recovered, cfg)
    report_path = os.path.join(out_dir, "report.json")
    write_json(report_path, report)
    write_json(os.path.join(out_dir, "timings.json"), timings)
    _say(quiet, f"wrote {profile_path} and {report_path} (N* = {report['n_star']})")
    return recovered


def _do_compare(cfg, profile_csv, out_dir, quiet):
    profile = _parse_profile(cfg)
    try:
        table = read_profile_csv(profile_csv)
    except OSError as exc:
        raise ConfigError(f"cannot read profile CSV: {exc}") from exc
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    x = table["x"]
    if x.size == 0 or x.min() < -1e-12 or x.max() > math.pi + 1e-12:
        raise ConfigError("profile grid must lie inside [0, pi]")
    f_true = profile.area(x)
    rel = np.abs(table["F"] - f_true) / np.abs(f_true)
    os.makedirs(out_dir, exist_ok=True)
    write_error_csv(os.path.join(out_dir, "error.csv"), x, rel)
    summary = {
        "sup": float(np.max(rel)),
        "l2_mean": float(np.sqrt(np.mean(rel**2))),
        "n_points": int(x.size),
    }
    write_json(os.path.join(out_dir, "summary.json"), summary)
    _say(quiet, f"sup rel error {summary['sup']:.3e} over {summary['n_points']} points")
    return summary


def cmd_forward(config_path, out_dir, seed=None, quiet=False):
    try:
        cfg = _load_config(config_path)
        _do_forward(cfg, out_dir, seed, quiet)
    except ConfigError as exc:
        print(f"forward: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (IntegrationFailure, RodshapeError) as exc:
        print(f"forward: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


def cmd_invert(config_path, out_dir, quiet=False):
    try:
        cfg = _load_config(config_path)
        dataset = cfg.get("dataset", "dataset.csv")
        _do_invert(cfg, dataset, out_dir, quiet)
    except ConfigError as exc:
        print(f"invert: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PipelineError as exc:
        print(f"invert: pipeline aborted at step '{exc.step}': {exc}", file=sys.stderr)
        return EXIT_PIPELINE
    return EXIT_OK


def cmd_compare(config_path, profile_csv, out_dir, quiet=False):
    try:
        cfg = _load_config(config_path)
        _do_compare(cfg, profile_csv, out_dir, quiet)
    except ConfigError as exc:
        print(f"compare: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


def cmd_example(number, out_dir, seed=None, quiet=False):
    try:
        variants = scenario_variants(number, seed)
    except ValueError as exc:
        print(f"example: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    base = os.path.join(out_dir, f"example{number}")
    for name, cfg in variants.items():
        vdir = os.path.join(base, name)
        _say(quiet, f"--- example {number} / {name}")
        try:
            dataset_path = _do_forward(cfg, vdir, None, quiet)
            _do_invert(cfg, dataset_path, vdir, quiet)
            _do_compare(cfg, os.path.join(vdir, "profile.csv"), vdir, quiet)
        except ConfigError as exc:
            print(f"example {number}/{name}: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        except IntegrationFailure as exc:
            print(f"example {number}/{name}: solver failure: {exc}", file=sys.stderr)
            return EXIT_SOLVER
        except PipelineError as exc:
            print(
                f"example {number}/{name}: pipeline aborted at step '{exc.step}': {exc}",
                file=sys.stderr,
            )
            return EXIT_PIPELINE
    return EXIT_OK


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="rodshape",
        description="Recover the cross-section area of a vibrating rod from "
        "amplitude-frequency response data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_forward = sub.add_parser("forward", help="synthesize a response dataset")
    p_invert = sub.add_parser("invert", help="recover the area from a dataset")
    p_compare = sub.add_parser("compare", help="compare a recovered profile")
    p_example = sub.add_parser("example", help="run a bundled benchmark scenario")

    for p in (p_forward, p_invert, p_compare):
        p.add_argument("--config", required=True, help="JSON run configuration")
    for p in (p_forward, p_invert, p_compare, p_example):
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--quiet", action="store_true", help="suppress progress output")
    for p in (p_forward, p_example):
        p.add_argument("--seed", type=int, default=None, help="noise seed override")
    p_compare.add_argument("--profile-csv", required=True, help="recovered profile CSV")
    p_example.add_argument("number", type=int, choices=SCENARIO_NUMBERS)

    args = parser.parse_args(argv)
    if args.command == "forward":
        return cmd_forward(args.config, args.out, args.seed, args.quiet)
    if args.command == "invert":
        return cmd_invert(args.config, args.out, args.quiet)
    if args.command == "compare":
        return cmd_compare(args.config, args.profile_csv, args.out, args.quiet)
    return cmd_example(args.number, args.out, args.seed, args.quiet)


if __name__ == "__main__":
    sys.exit(main())
