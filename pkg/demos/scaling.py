"""Time and memory of the recursive algorithm over a doubling series of random graphs."""

import sys

from planarmcb.cli import run_series


def main(top=2048):
    sizes = []
    n = 128
    while n <= top:
        sizes.append(n)
        n *= 2
    rows, fits = run_series("scaling", sizes, seed=1)
    for r in rows:
        print(f"n={r['n']:>6}  {r['seconds']:7.2f}s  peak {r['peak_bytes'] / 2**20:8.1f} MiB  "
              f"stored ints {r['stored_ints']:>9}")
    for k, v in fits.items():
        print(f"exponent {k}: {v:.2f}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 2048)
