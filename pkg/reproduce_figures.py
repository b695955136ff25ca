#!/usr/bin/env python3
"""
Figure dataset workflow
Runs every golden config in configs/ through the CLI, one step at a time or all at once.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import spintherm_cli
from spintherm import Config, FileOperations

ROOT = Path(__file__).resolve().parent
CONFIG_DIR = ROOT / "configs"

# (config file stem, subcommand, description)
STEPS: List[Tuple[str, str, str]] = [
    ("battery_sweep", "battery", "Battery efficiency against spin-bath size"),
    ("battery_convergence", "converge", "Energy-bath truncation check"),
    ("entropy_distinguishable_n4", "entropy", "Entropy, 4 distinguishable particles, d = 7"),
    ("entropy_boson_n4", "entropy", "Entropy, 4 bosons, d = 7"),
    ("entropy_fermion_n4", "entropy", "Entropy, 4 fermions, d = 7"),
    ("entropy_fermion_n7", "entropy", "Entropy, 7 fermions, d = 7"),
    ("polarization_spins", "polarization", "Polarization to spin temperature"),
    ("response_boson", "response", "Boson waste response, d = 2"),
    ("response_einstein", "response", "Einstein solid response"),
    ("response_debye", "response", "Debye response"),
    ("heat_boson_n6", "entropy", "Finite-N boson entropy and heat"),
]

logger = logging.getLogger("spintherm.workflow")


def run_step(index: int, results_dir: Path, fmt: str = "csv") -> bool:
    """Run one step (1-based); returns True on exit status 0"""
    stem, command, description = STEPS[index - 1]
    config = CONFIG_DIR / f"{stem}.toml"
    out = results_dir / f"{stem}.{fmt}"

    logger.info("=" * 60)
    logger.info("RUNNING %d/%d: %s", index, len(STEPS), description)
    logger.info("Config: %s", config)
    logger.info("=" * 60)

    if not config.exists():
        logger.error("Missing config: %s", config)
        return False

    status = spintherm_cli.main([command, "--config", str(config), "--format", fmt, "--out", str(out)],
                                configure_logging=False)
    if status != 0:
        logger.error("%s failed with exit status %d", description, status)
        return False
    logger.info("%s completed", description)
    return True


def run_all_steps(results_dir: Path, fmt: str = "csv") -> List[str]:
    """Run every step; returns the descriptions of failed steps"""
    failed = []
    for i, (_, _, description) in enumerate(STEPS, 1):
        if not run_step(i, results_dir, fmt):
            failed.append(f"Step {i}: {description}")

    logger.info("=" * 60)
    if failed:
        logger.info("FAILED STEPS:")
        for step in failed:
            logger.info("   - %s", step)
    else:
        logger.info("ALL STEPS COMPLETED")
    logger.info("=" * 60)
    return failed


def show_status(results_dir: Path):
    """Which datasets exist in the results directory"""
    logger.info("Results directory: %s", results_dir)
    counts = FileOperations.count_files(results_dir)
    if not counts:
        logger.info("No results yet")
    for suffix, n in sorted(counts.items()):
        logger.info("  %s: %d files", suffix, n)
    for stem, _, description in STEPS:
        present = any((results_dir / f"{stem}.{fmt}").exists() for fmt in ("csv", "json", "xlsx"))
        logger.info("  [%s] %s", "x" if present else " ", description)


def main(argv: Optional[Sequence[str]] = None) -> int:
    p = argparse.ArgumentParser(description="Regenerate every figure dataset from configs/.")
    p.add_argument("--results", default="results", help="Results directory (default results/)")
    p.add_argument("--format", choices=["csv", "json", "xlsx"], default="csv", help="Output format")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--step", type=int, help=f"Run a single step (1-{len(STEPS)})")
    group.add_argument("--list", action="store_true", help="List the steps")
    group.add_argument("--status", action="store_true", help="Show the results directory status")
    args = p.parse_args(argv)

    results_dir = Path(args.results)
    results_dir.mkdir(parents=True, exist_ok=True)
    spintherm_cli.setup_logging(verbose=False, log_file=str(results_dir / "workflow_log.txt"))
    logging.getLogger("spintherm").info("spintherm figure workflow, threads=%d", Config.thread_count())

    if args.list:
        for i, (stem, command, description) in enumerate(STEPS, 1):
            logger.info("%2d. %-40s %s %s", i, description, command, stem)
        return 0
    if args.status:
        show_status(results_dir)
        return 0
    if args.step is not None:
        if not 1 <= args.step <= len(STEPS):
            logger.error("Choose a step between 1 and %d", len(STEPS))
            return 2
        return 0 if run_step(args.step, results_dir, args.format) else 1
    return 1 if run_all_steps(results_dir, args.format) else 0


if __name__ == "__main__":
    sys.exit(main())
