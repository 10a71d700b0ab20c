#!/usr/bin/env python3
"""
Check and record the reference numbers in tests/golden_values.json.

Each entry carries its inputs, a reference derived independently of the
package and a tolerance (absolute, or in standard errors). This script
reruns every entry, prints the deviation from its reference and stores
the measured numbers under "recorded" so a later run can be compared
number by number.

Usage:
    python scripts/golden_values.py [--path PATH] [--dry-run]

Examples:
    python scripts/golden_values.py              # check and update "recorded"
    python scripts/golden_values.py --dry-run    # check only
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, Tuple

from urbounds import __version__
from urbounds.montecarlo import EnsembleFamily, delta_expectation, mean_angle_stats
from urbounds.onebody import OneBodyProblem, SolverConfig, solve
from urbounds.potentials import parse_potential


def get_project_root() -> Path:
    """Get the project root directory."""
    return Path(__file__).parent.parent


def coulomb_energy(entry: Dict[str, Any]) -> Tuple[bool, Dict[str, Any]]:
    """sqrt(p^2 + 1) - 0.1 / r against its weak-coupling expansion."""
    inputs = entry["inputs"]
    problem = OneBodyProblem(inputs["a"], inputs["mu"], inputs["b"], parse_potential(inputs["potential"]))
    result = solve(problem, SolverConfig(**entry["config"]))
    deviation = abs(result.energy - entry["reference"])
    print(f"coulomb_energy: E = {result.energy:.9f}, |E - ref| = {deviation:.2e} "
          f"(tolerance {entry['tolerance']:g}), n = {result.basis_size}, converged = {result.converged}")
    ok = result.converged and deviation < entry["tolerance"]
    return ok, {
        "energy": result.energy,
        "optimal_scale": result.optimal_scale,
        "basis_size": result.basis_size,
        "convergence": result.convergence,
        "converged": result.converged,
    }


def massive_delta(entry: Dict[str, Any]) -> Tuple[bool, Dict[str, Any]]:
    """<delta(m, N)> on a Gaussian ensemble against zero."""
    inputs = entry["inputs"]
    estimate = delta_expectation(
        EnsembleFamily.from_name(inputs["family"]), inputs["N"], inputs["m"],
        inputs["samples"], inputs["seed"],
    )
    print(f"massive_delta: {estimate.value:.3e} +/- {estimate.stderr:.1e} "
          f"({abs(estimate.value - entry['reference']) / estimate.stderr:.2f} SE)")
    return estimate.within(entry["reference"], entry["n_se"]), {
        "delta": estimate.value,
        "delta_se": estimate.stderr,
    }


def ball_residual(entry: Dict[str, Any]) -> Tuple[bool, Dict[str, Any]]:
    """Uniform-ball k, d and k/d residual; d checked against 36/35."""
    inputs = entry["inputs"]
    report = mean_angle_stats(
        EnsembleFamily.from_name(inputs["family"]), inputs["N"], inputs["samples"], inputs["seed"],
    )
    print(f"ball_residual: residual = {report.residual.value:.4e} +/- {report.residual.stderr:.1e}, "
          f"d = {report.d.value:.6f} (ref {entry['pair_distance']:.6f})")
    return report.d.within(entry["pair_distance"], entry["n_se"]), {
        "k": report.k.value,
        "k_se": report.k.stderr,
        "d": report.d.value,
        "d_se": report.d.stderr,
        "residual": report.residual.value,
        "residual_se": report.residual.stderr,
    }


CHECKS = {
    "coulomb_energy": coulomb_energy,
    "massive_delta": massive_delta,
    "ball_residual": ball_residual,
}


def main() -> int:
    parser = argparse.ArgumentParser(
        description="Check and record urbounds reference numbers",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__
    )
    parser.add_argument(
        "--path",
        default=None,
        help="Reference file (default: tests/golden_values.json in the project root)"
    )
    parser.add_argument(
        "--dry-run",
        action="store_true",
        help="Check the values without writing the file"
    )

    args = parser.parse_args()

    path = Path(args.path) if args.path else get_project_root() / "tests" / "golden_values.json"
    if not path.exists():
        print(f"Error: {path} not found", file=sys.stderr)
        return 2
    golden = json.loads(path.read_text(encoding="utf-8"))

    failed = []
    for name, check in CHECKS.items():
        ok, measured = check(golden[name])
        golden[name]["recorded"] = dict(measured, version=__version__)
        if not ok:
            failed.append(name)

    if failed:
        print(f"✗ Outside tolerance: {', '.join(failed)}", file=sys.stderr)
    else:
        print("✓ All reference values reproduced")

    if args.dry_run:
        print("\n[DRY RUN] No file written.")
        return 1 if failed else 0

    path.write_text(json.dumps(golden, indent=2) + "\n", encoding="utf-8")
    print(f"✓ Saved to: {path}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
