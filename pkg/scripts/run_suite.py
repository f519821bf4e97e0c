"""Run the registered verification scenarios and write a JSON report.

    python3 scripts/run_suite.py --out results.json --jobs 4
    python3 scripts/run_suite.py --only product-m+n-2,sharp-general
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from tprod.errors import UsageError
from tprod.verifier.cli import print_table
from tprod.verifier.scenarios import SuiteSummary, run_suite


@dataclass
class SuiteConfig:
    only: str | None = None
    jobs: int = 1
    out: str = "suite_results.json"
    timing: bool = True


def parse_args(argv=None) -> SuiteConfig:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--only", help="comma separated scenario names or prefixes")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default=SuiteConfig.out)
    ap.add_argument("--no-timing", dest="timing", action="store_false",
                    help="omit timings so that reruns are byte identical")
    return SuiteConfig(**vars(ap.parse_args(argv)))


def main(argv=None) -> int:
    cfg = parse_args(argv)
    try:
        reports = run_suite(cfg.only.split(",") if cfg.only else "all", jobs=cfg.jobs)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    print_table(reports)
    with open(cfg.out, "w") as fh:
        json.dump([r.to_dict(timing=cfg.timing) for r in reports], fh, sort_keys=True, indent=1)
        fh.write("\n")
    summary = SuiteSummary(reports)
    print(f"\n{len(reports)} scenarios, {len(summary.mismatches)} mismatches, "
          f"{len(summary.skipped)} skipped; report written to {cfg.out}")
    return summary.exit_code()


if __name__ == "__main__":
    sys.exit(main())
