"""
Command-line front end for the hidden-qubit toolkit.

Every subcommand writes one table or document to --out (or stdout) in the
chosen format; diagnostics go to the logger on stderr.
"""

import argparse
import sys
from collections.abc import Callable
from dataclasses import asdict
from pathlib import Path

import numpy as np
import tomli_w

from hidden_qubit import config_constants as cc, reporting
from hidden_qubit.calibration import CalibratedGateSet, CalibrationSettings, full_tuneup
from hidden_qubit.config import AppConfig, ConfigManager
from hidden_qubit.config_validator import ConfigValidator
from hidden_qubit.controllability import (
    FULL_NATIVE,
    HIDDEN_NATIVE,
    hidden_gate_set,
    load_gate_file,
    measurement_reachability,
    run_claim_battery,
)
from hidden_qubit.device import DeviceModel
from hidden_qubit.exceptions import HiddenQubitError, ValidationError
from hidden_qubit.logger import LogLevel, get_logger, setup_logger
from hidden_qubit.qvolume import configs_from_settings, qv_map
from hidden_qubit.routing import layer_cost, sample_pairing, validate_plan
from hidden_qubit.tomography import (
    GATE_NAMES,
    collect_dataset,
    first_round_qpt,
    ground_truth_estimate,
    self_consistent_qpt,
)
from hidden_qubit.topology import GridTopology

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT_ERROR = 2


def _tuneup(config: AppConfig, rng: np.random.Generator) -> tuple[DeviceModel, CalibratedGateSet]:
    model = DeviceModel.from_config(config.device)
    settings = CalibrationSettings.from_config(config.calibration, config.run.shots)
    return model, full_tuneup(model, settings, rng)


def cmd_controllability(config: AppConfig, args: argparse.Namespace) -> int:
    logger = get_logger()
    gate_file = args.gate_file or config.controllability.gate_file
    if gate_file:
        unitaries, names, native, max_depth = load_gate_file(gate_file)
        report = measurement_reachability(unitaries, native, max_depth, names)
        text = (
            reporting.reachability_csv(report)
            if config.run.format == cc.FORMAT_CSV
            else reporting.dump_json(report.to_dict())
        )
        reporting.write_output(text, config.run.out)
        return EXIT_OK

    claims = run_claim_battery(config.controllability.max_depth)
    for claim in claims:
        logger.claim_result(claim.name, claim.passed, claim.observed)
    text = (
        reporting.claims_csv(claims)
        if config.run.format == cc.FORMAT_CSV
        else reporting.claims_json(claims)
    )
    reporting.write_output(text, config.run.out)
    failed = [c.name for c in claims if not c.passed]
    if failed:
        logger.error(f"Failed claims: {', '.join(failed)}", "controllability")
        return EXIT_FAILURE
    logger.success(f"All {len(claims)} claims verified", "controllability")
    return EXIT_OK


def cmd_reachability(config: AppConfig, args: argparse.Namespace) -> int:
    if args.gate_file:
        unitaries, names, native, max_depth = load_gate_file(args.gate_file)
    else:
        unitaries, names = hidden_gate_set(*args.gates)
        native = FULL_NATIVE if args.full_readout else HIDDEN_NATIVE
        max_depth = config.controllability.max_depth
    if args.max_depth is not None:
        max_depth = ConfigValidator().validate_count("max_depth", args.max_depth)
    report = measurement_reachability(unitaries, native, max_depth, names)
    get_logger().info(
        f"Span dimension {report.span_dimension} after depth {report.depth_reached}",
        "controllability",
    )
    text = (
        reporting.reachability_csv(report)
        if config.run.format == cc.FORMAT_CSV
        else reporting.dump_json(report.to_dict())
    )
    reporting.write_output(text, config.run.out)
    return EXIT_OK


def cmd_tuneup(config: AppConfig, args: argparse.Namespace) -> int:
    rng = np.random.default_rng(config.run.seed)
    model, gateset = _tuneup(config, rng)
    if args.scan_dir:
        directory = Path(args.scan_dir)
        directory.mkdir(parents=True, exist_ok=True)
        for index, report in enumerate(gateset.fit_reports):
            name = f"{index:02d}_{report.step}.csv"
            (directory / name).write_text(reporting.scan_csv(report.scan), encoding="utf-8")
    if config.run.format == cc.FORMAT_CSV:
        text = reporting.fit_reports_csv(gateset.fit_reports)
    else:
        text = reporting.dump_json({"device": model.to_dict(), "gateset": gateset.to_dict()})
    reporting.write_output(text, config.run.out)
    return EXIT_OK


def cmd_qpt(config: AppConfig, args: argparse.Namespace) -> int:
    logger = get_logger()
    rng = np.random.default_rng(config.run.seed)
    model, gateset = _tuneup(config, rng)

    shots = config.tomography.shots
    datasets = {
        name: collect_dataset(model, gateset, name, shots=shots, rng=rng, seed=config.run.seed)
        for name in GATE_NAMES
    }
    logger.info("Collected 4 × 240 tomography outcomes", "tomography")
    before = first_round_qpt(datasets)
    after = self_consistent_qpt(
        datasets, config.tomography.damping, config.tomography.max_iterations
    )
    truth = ground_truth_estimate(model, gateset)

    table = {
        name: {
            "before": before.fidelities()[name],
            "after": after.fidelities()[name],
            "ground_truth": truth.fidelities()[name],
        }
        for name in GATE_NAMES
    }
    if args.ptm_dir:
        directory = Path(args.ptm_dir)
        directory.mkdir(parents=True, exist_ok=True)
        for label, estimate in (("before", before), ("after", after), ("truth", truth)):
            for name in GATE_NAMES:
                path = directory / f"{name}_{label}.csv"
                path.write_text(reporting.ptm_csv(estimate[name]), encoding="utf-8")

    if config.run.format == cc.FORMAT_CSV:
        text = reporting.fidelity_csv(table)
    else:
        text = reporting.dump_json(
            {
                "fidelities": table,
                "residual_history": after.residual_history,
                "gauge_phi": after.gauge_phi,
                "gateset": gateset.to_dict(),
            }
        )
    reporting.write_output(text, config.run.out)
    return EXIT_OK


def cmd_qv_map(config: AppConfig, args: argparse.Namespace) -> int:
    settings = config.qvolume
    if args.samples is not None:
        settings.samples = ConfigValidator().validate_count("samples", args.samples)
    cfgs = configs_from_settings(settings, config.run.seed)
    rows = qv_map([tuple(grid) for grid in settings.grids], cfgs)
    text = (
        reporting.qv_table_csv(rows)
        if config.run.format == cc.FORMAT_CSV
        else reporting.qv_table_json(rows)
    )
    reporting.write_output(text, config.run.out)
    get_logger().success(f"{len(rows)} quantum-volume rows", "volume")
    return EXIT_OK


def cmd_route_demo(config: AppConfig, args: argparse.Namespace) -> int:
    k = args.k if args.k is not None else config.qvolume.demo_k
    h = args.h if args.h is not None else config.qvolume.demo_h
    topo = GridTopology(k, h)
    pairing = sample_pairing(topo, np.random.default_rng(config.run.seed), allow_idle=True)
    n_g, n_s, plan = layer_cost(pairing, topo)
    validate_plan(plan, topo, pairing)
    get_logger().info(f"k={k}, h={h}: n_g={n_g}, n_s={n_s}", "routing")
    text = (
        reporting.plan_csv(plan)
        if config.run.format == cc.FORMAT_CSV
        else reporting.dump_json(plan.to_dict())
    )
    reporting.write_output(text, config.run.out)
    return EXIT_OK


def cmd_init_config(config: AppConfig, args: argparse.Namespace) -> int:
    if config.run.out:
        ConfigManager().save_config(config.run.out, AppConfig())
    else:
        sys.stdout.write(tomli_w.dumps(asdict(AppConfig())))
    return EXIT_OK


COMMANDS: dict[str, Callable[[AppConfig, argparse.Namespace], int]] = {
    "controllability": cmd_controllability,
    "reachability": cmd_reachability,
    "tuneup": cmd_tuneup,
    "qpt": cmd_qpt,
    "qv-map": cmd_qv_map,
    "route-demo": cmd_route_demo,
    "init-config": cmd_init_config,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hidden-qubit",
        description="Hidden-qubit toolkit: controllability, tune-up, tomography and quantum volume",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s controllability                  # Verify the controllability claims
  %(prog)s reachability --gates ISWAP       # Operators reachable with one gate type
  %(prog)s --seed 7 tuneup --scan-dir scans # Tune up and export every scan
  %(prog)s --format csv qpt                 # Fidelities before/after self-consistency
  %(prog)s --format csv qv-map --samples 20 # Quantum-volume table
  %(prog)s route-demo --k 2 --h 4           # Routing plan for one random layer
  %(prog)s --out config.toml init-config    # Write the default configuration
        """,
    )
    parser.add_argument("--config", help="TOML or JSON configuration file")
    parser.add_argument("--seed", type=int, help="Random seed (0 ≤ seed < 2^64)")
    parser.add_argument("--out", help="Output file (default: stdout)")
    parser.add_argument(
        "--format", choices=list(cc.OUTPUT_FORMATS), help="Output format (json, csv)"
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="Enable debug output")
    verbosity.add_argument("--quiet", action="store_true", help="Only warnings and errors")

    sub = parser.add_subparsers(dest="command", required=True)

    controllability = sub.add_parser("controllability", help="Run the claim battery")
    controllability.add_argument("--gate-file", help="JSON gate set: report only")

    reachability = sub.add_parser("reachability", help="Reachable measurement operators")
    reachability.add_argument(
        "--gates",
        nargs="+",
        default=["ISWAP", "CPHASE"],
        choices=["ISWAP", "CPHASE", "SWAP", "SQRT_SWAP"],
        help="Two-qubit gates added to the control rotations",
    )
    reachability.add_argument(
        "--full-readout", action="store_true", help="Also measure the hidden qubit"
    )
    reachability.add_argument("--max-depth", type=int, help="Maximum word length")
    reachability.add_argument("--gate-file", help="JSON gate set instead of --gates")

    tuneup = sub.add_parser("tuneup", help="Calibrate iSWAP and cPHASE")
    tuneup.add_argument("--scan-dir", help="Directory for per-scan CSV files")

    qpt = sub.add_parser("qpt", help="Tune up, then self-consistent process tomography")
    qpt.add_argument("--ptm-dir", help="Directory for PTM CSV files")

    qv = sub.add_parser("qv-map", help="Quantum volume of the configured grids")
    qv.add_argument("--samples", type=int, help="Random pairings per grid")

    route = sub.add_parser("route-demo", help="Routing plan for one random layer")
    route.add_argument("--k", type=int, help="Grid side")
    route.add_argument("--h", type=int, help="Hidden qubits per control qubit")

    sub.add_parser("init-config", help="Write the default configuration as TOML")
    return parser


def _apply_overrides(config: AppConfig, args: argparse.Namespace) -> AppConfig:
    validator = ConfigValidator()
    if args.seed is not None:
        config.run.seed = validator.validate_seed(args.seed)
    if args.out is not None:
        config.run.out = args.out
    if args.format is not None:
        config.run.format = validator.validate_format(args.format)
    return config


def main(argv: list[str] | None = None) -> int:
    """
    Main entry point.

    Returns:
        Exit code: 0 on success, 1 for failed claims or a failed stage,
        2 for invalid input
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.verbose:
        level = LogLevel.DEBUG
    elif args.quiet:
        level = LogLevel.WARNING
    else:
        level = LogLevel.INFO
    setup_logger(min_level=level)
    logger = get_logger()

    try:
        config = _apply_overrides(ConfigManager(args.config).load_config(), args)
        return COMMANDS[args.command](config, args)
    except (ValidationError, FileNotFoundError) as e:
        logger.error(f"Input error: {e}", "cli")
        return EXIT_INPUT_ERROR
    except HiddenQubitError as e:
        logger.error(f"{args.command} failed: {e}", "cli")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
