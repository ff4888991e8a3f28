#!/usr/bin/env python3
"""Run the full verification battery and write one report per scenario.

Usage: python scripts/run_verification.py [--out DIR] [--fast]

--fast cuts every Monte Carlo budget by 20x for a quick smoke run.  The exit
code is 0 only if every assertion of every scenario passed.
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from holoext.scenarios import ScenarioConfig, run_scenario  # noqa: E402

CONFIG_DIR = Path(__file__).resolve().parent / "configs"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="reports", help="output directory")
    parser.add_argument(
        "--fast", action="store_true", help="cut sampling budgets for a smoke run"
    )
    args = parser.parse_args()

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    all_passed = True
    for config_path in sorted(CONFIG_DIR.glob("*.json")):
        raw = json.loads(config_path.read_text())
        config = ScenarioConfig.from_mapping(raw)
        if args.fast and config.samples:
            # smaller budgets need matching Monte Carlo tolerances
            config.samples = max(config.samples // 20, 50_000)
            config.tolerances.setdefault("mc", 0.05)
            config.tolerances.setdefault("each_level", 0.03)
        report = run_scenario(config)
        all_passed &= report.passed
        report_path = out_dir / f"{config_path.stem}_report.json"
        report_path.write_text(report.to_json() + "\n")
        status = "PASS" if report.passed else "FAIL"
        print(f"{status}  {config_path.stem:28s} [{report.wall_clock_s:7.2f} s]  -> {report_path}")
        if not report.passed:
            for a in report.assertions:
                if not a.passed:
                    print(f"      failed: {a.name}  lhs={a.lhs!r} rhs={a.rhs!r} tol={a.tol!r}")

    print()
    print("overall:", "PASS" if all_passed else "FAIL")
    return 0 if all_passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
