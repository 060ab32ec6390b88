"""Run every suite on every built-in group and write the JSON report.

    python3 scripts/run_full_suite.py --out reports/full.json --jobs 4

Run it twice and compare the files byte for byte to check determinism.
"""
import argparse
import json
import sys
import time
from pathlib import Path

from dunkl_fueter.report import emit_report
from dunkl_fueter.suites import FULL_SUITE_GROUPS, full_suite_specs, run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("reports/full.json"))
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--rand-seed", type=int, default=0)
    ap.add_argument("--group", action="append", help="restrict to these group specs (repeatable)")
    args = ap.parse_args()

    groups = tuple(args.group) if args.group else FULL_SUITE_GROUPS
    reports = []
    t0 = time.perf_counter()
    for spec in full_suite_specs(groups, rand_seed=args.rand_seed, jobs=args.jobs):
        t = time.perf_counter()
        rep = run_suite(spec)
        reports.append(rep)
        tag = " (negative control)" if spec.negative_control else ""
        print(f"{spec.suite:15s} {spec.group:22s} pass={rep.n_pass:5d} fail={rep.n_fail:3d}  {time.perf_counter() - t:6.1f}s{tag}")
    data = emit_report(reports, "json", args.rand_seed)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_bytes(data)
    summary = json.loads(data)["summary"]
    print(f"total pass={summary['pass']} fail={summary['fail']} in {time.perf_counter() - t0:.1f}s -> {args.out}")
    return 0 if summary["fail"] == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
