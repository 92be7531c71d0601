"""Print the threshold table together with the margins b2 - b1 near each threshold."""
import argparse

from coxperc.certificate import ESTIMATORS, LEMMA_MIN_K, TABLE_K_MAX, b1_value, b2_value, reproduce_threshold_table
from coxperc.walks import VARIANTS


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-max", type=int, default=TABLE_K_MAX, help="largest k scanned")
    ap.add_argument("--window", type=int, default=3, help="rows shown on each side of a threshold")
    args = ap.parse_args()

    table = reproduce_threshold_table(args.k_max)
    print(f"{'lemma':11s} {'rho':>6s} {'gamma*':>7s}")
    for lemma in VARIANTS:
        print(f"{lemma:11s} {table[lemma]['rho']:>6} {table[lemma]['gamma_star']:>7}")

    for lemma in VARIANTS:
        for est in ESTIMATORS:
            k0 = table[lemma][est]
            if k0 is None:
                continue
            print(f"\n{lemma} / {est}: threshold k >= {k0}")
            for k in range(max(LEMMA_MIN_K[lemma], k0 - args.window), k0 + args.window + 1):
                b1, b2 = b1_value(k, lemma, est), b2_value(k)
                print(f"  k = {k:3d}  b1 = {b1:.10f}  b2 = {b2:.10f}  margin = {b2 - b1:+.3e}")


if __name__ == "__main__":
    main()
