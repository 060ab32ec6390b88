"""Dimensions of M(n) and the Fischer rank check for the built-in groups.

    python3 scripts/fischer_dimensions.py --max-n 4
"""
import argparse

from dunkl_fueter.fueter import fischer_rank, monogenic_basis
from dunkl_fueter.suites import FULL_SUITE_GROUPS, context_for


def main() -> None:
    ap = argparse.ArgumentParser(description="dim M(n) and rank of the Fischer generators")
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--group", action="append")
    args = ap.parse_args()
    for g in args.group or FULL_SUITE_GROUPS:
        ctx = context_for(g)
        row = []
        for n in range(args.max_n + 1):
            r, dim_p = fischer_rank(ctx, n)
            row.append(f"n={n}: dim M={len(monogenic_basis(ctx, n))} rank={r}/{dim_p}")
        print(f"{g:22s} mu={ctx.mu}  " + "  ".join(row))


if __name__ == "__main__":
    main()
