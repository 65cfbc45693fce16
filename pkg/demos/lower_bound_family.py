"""Total weight and explicit length of the minimum cycle basis on the lower-bound family.

The weight stays linear while the explicit length grows quadratically, which
is why the implicit representation matters.
"""

from planarmcb import explicit_mcb, gen_lower_bound, recursive_gmcb


def main():
    print(f"{'n':>5} {'weight':>7} {'length':>8} {'length/n^2':>11} {'stored ints':>12}")
    for n in (5, 10, 50, 100, 200, 400):
        im = recursive_gmcb(gen_lower_bound(n))
        b = explicit_mcb(im)
        print(f"{n:>5} {b.total_weight:>7} {b.total_length:>8} {b.total_length / n**2:>11.3f} {im.storage():>12}")


if __name__ == "__main__":
    main()
