"""Tabulate the Dunkl-Fueter map on small seeds.

For each seed zbar^j z^k and order m the script prints the Laplacian
exponent, the number of terms in the result, and whether D kills it.  Seeds
with j > m are included to show where the theorem stops applying.

    python3 scripts/fueter_table.py --group a1:d=2:kappa=1/2,1 --n 1
"""
import argparse

from dunkl_fueter.axial import ComplexSeed, seed_property_holds
from dunkl_fueter.fueter import fueter_theorem31, monogenic_basis
from dunkl_fueter.suites import context_for


def main() -> None:
    ap = argparse.ArgumentParser(description="Dunkl-Fueter map on zbar^j z^k seeds")
    ap.add_argument("--group", default="a1:d=2:kappa=1/2,1")
    ap.add_argument("--n", type=int, default=0, help="degree of the monogenic factor")
    ap.add_argument("--max-m", type=int, default=2)
    ap.add_argument("--max-k", type=int, default=5)
    args = ap.parse_args()

    ctx = context_for(args.group)
    P = monogenic_basis(ctx, args.n)[0]
    print(f"group {ctx.group}  factor P = {P}")
    print(f"{'seed':>12} {'m':>2} {'exp':>3} {'seed ok':>7} {'terms':>5} {'D = 0':>5}")
    for m in range(args.max_m + 1):
        for j in range(m + 2):
            for k in range(args.max_k + 1):
                seed = ComplexSeed(j, k)
                result, report = fueter_theorem31(ctx, seed, m, P, args.n, negative_control=True)
                mono = report.entries[0].passed
                expo = report.entries[0].detail.split()[-1]
                print(f"{str(seed):>12} {m:>2} {expo:>3} {str(seed_property_holds(seed, m)):>7} {result.term_count():>5} {str(mono):>5}")


if __name__ == "__main__":
    main()
