"""Build a Gomory-Hu tree for a random plane graph and answer a few min-cut queries."""

import random

from planarmcb import build_mincut_oracle, gen_random_planar, gomory_hu, maxflow_reference


def main(n=60, seed=4):
    g = gen_random_planar(n, seed=seed)
    gh = gomory_hu(g)
    oracle = build_mincut_oracle(gh)
    rng = random.Random(seed)
    for _ in range(8):
        s, t = rng.sample(sorted(g.vertices), 2)
        cut = oracle.query_cut(s, t)
        print(f"{s:>3} -> {t:>3}: weight {oracle.query_weight(s, t):>3} "
              f"(max-flow {maxflow_reference(g, s, t):>3}), {len(cut)} cut edges")
    print(f"largest number of array reads for one query: {oracle.counter.max_reads}")


if __name__ == "__main__":
    main()
