"""Hölder band at the multifractal point versus depth, and the a.e. band.

At the stream a_j = 2^j (j even), a_j = 1 (j odd) the f1 upper bound decays
like 1/n, while the f2 band stays away from zero.
"""
import argparse

from cantorcf.regularity import (
    ae_band,
    band_digits_needed,
    holder_band_f1,
    holder_band_f2,
    multifractal_example,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depths", type=int, nargs="+", default=[25, 50, 100, 200, 400, 800, 1600])
    args = ap.parse_args()

    top = max(band_digits_needed(n, c) for n in args.depths for c in ("f1", "f2"))
    s = multifractal_example(top)
    print("n,f1_lower,f1_upper,n_times_f1_upper,f2_lower,f2_upper")
    for n in args.depths:
        b1, b2 = holder_band_f1(s, n), holder_band_f2(s, n)
        print(f"{n},{b1.lower:.6g},{b1.upper:.6g},{n * b1.upper:.6g},{b2.lower:.6g},{b2.upper:.6g}")
    lo, hi = ae_band()
    print(f"# a.e. band ({lo:.6f}, {hi:.6f}), product {lo * hi:.12f}")


if __name__ == "__main__":
    main()
