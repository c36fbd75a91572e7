"""Write the four figure data series (a1, a2 given a1 = 1, f1, f2) as CSV files."""
import argparse
from pathlib import Path

from cantorcf.harness import PLOT_SERIES, a1_step_law_holds, parse_plot_csv, plot_series


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path, default=Path("figures"))
    ap.add_argument("--points", type=int, default=2000)
    ap.add_argument("--depth", type=int, default=40)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    args.out_dir.mkdir(parents=True, exist_ok=True)
    for which in PLOT_SERIES:
        text = plot_series(which, args.points, args.depth, args.seed).to_csv()
        path = args.out_dir / f"{which}.csv"
        path.write_text(text)
        rows = parse_plot_csv(text)
        note = ""
        if which == "a1":
            bad = sum(not a1_step_law_holds(x, int(y)) for x, y, _ in rows)
            note = f"  step-law failures: {bad}"
        print(f"{path}: {len(rows)} points{note}")


if __name__ == "__main__":
    main()
