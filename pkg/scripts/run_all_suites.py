#!/usr/bin/env python3
"""Run every check suite and write reports, mirroring `isospec verify all`.

Useful as a single entry point on a fresh checkout:

    python3 scripts/run_all_suites.py --output-dir reports
"""

import argparse
import sys
import time

from isospec import checks
from isospec.cli import emit_report, render_text
from isospec.config import load_config


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--config", help="key=value configuration file")
    parser.add_argument("--output-dir", default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--skip-pointcloud", action="store_true",
                        help="leave out the slow sampled-manifold suite")
    args = parser.parse_args()

    cfg = load_config(args.config).with_overrides(
        seed=args.seed, output_dir=args.output_dir
    )
    failures = 0
    for suite in checks.SUITE_NAMES:
        if args.skip_pointcloud and suite == "pointcloud":
            continue
        start = time.perf_counter()
        records = checks.run_suite_checks(suite, cfg)
        elapsed = time.perf_counter() - start
        for fmt, ext in (("json", "json"), ("text", "txt")):
            emit_report(records, fmt, cfg.output_dir / f"{suite}.{ext}", suite=suite)
        failures += sum(r.status == "fail" for r in records)
        print(render_text(records, suite=suite))
        print(f"  ({elapsed:.1f}s)\n")
    print(f"total failures: {failures}; reports in {cfg.output_dir}/")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
