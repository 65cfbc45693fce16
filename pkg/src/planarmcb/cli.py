"""Command-line entry point.

Exit codes: 0 success, 1 verification mismatch, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import itertools
import math
import sys
import time
import tracemalloc
from typing import List, Optional, Sequence

import numpy as np

from .cuts import (
    build_mincut_oracle,
    cut_separates,
    gomory_hu,
    induced_cut_weight,
    maxflow_reference,
    weight_vector,
)
from .errors import PlanarMcbError
from .formats import ImcbDocument, read_graph, serialize_imcb, write_graph
from .generators import default_seed, gen_grid, gen_lower_bound, gen_random_planar, gen_web
from .gmcb_oracle import check_isometric, check_nested, oracle_basis
from .mcb_recursive import recursive_gmcb


def _out(text: str) -> None:
    sys.stdout.write(text)


# ---------------------------------------------------------------- commands

def cmd_gen(a) -> int:
    seed = default_seed() if a.seed is None else a.seed
    if a.family == "lower-bound":
        g = gen_lower_bound(a.n)
    elif a.family == "random":
        g = gen_random_planar(a.n, seed=seed, max_weight=a.max_weight, thin=a.thin,
                              unweighted=a.unweighted)
    elif a.family == "grid":
        side = max(2, int(round(math.sqrt(a.n))))
        g = gen_grid(side, side)
    else:
        rings = max(1, a.n // 8)
        g = gen_web(rings, max(3, a.n // rings), seed=seed, max_weight=a.max_weight)
    text = write_graph(g)
    if a.output:
        with open(a.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        _out(text)
    return 0


def cmd_mcb(a) -> int:
    g = read_graph(a.file)
    im = recursive_gmcb(g, n0=a.n0)
    if a.explicit:
        basis = im.explicit()
        _out(f"# cycles {len(basis)} total_weight {basis.total_weight} total_length {basis.total_length}\n")
        for c in basis.cycles:
            _out(f"{c.weight} {c.length} : {' '.join(map(str, c.edges))}\n")
    else:
        _out(serialize_imcb(ImcbDocument.from_implicit(im)))
    return 0


def cmd_weight_vector(a) -> int:
    g = read_graph(a.file)
    _out(" ".join(map(str, weight_vector(recursive_gmcb(g, n0=a.n0)))) + "\n")
    return 0


def cmd_gomory_hu(a) -> int:
    g = read_graph(a.file)
    gh = gomory_hu(g, n0=a.n0)
    for u, v, w, link in gh.edges:
        _out(f"{u} {v} {w} {'-' if link is None else link}\n")
    return 0


def cmd_oracle(a) -> int:
    g = read_graph(a.file)
    u, v = a.query
    for x in (u, v):
        if x not in g.rotation:
            raise PlanarMcbError(f"vertex {x} not in graph")
    o = build_mincut_oracle(gomory_hu(g, n0=a.n0))
    _out(f"{o.query_weight(u, v)}\n")
    if a.cut:
        for e in o.query_cut(u, v):
            x, y, w = g.edges[e]
            _out(f"{x} {y} {w}\n")
    return 0


def verify_graph(g, n0: int = 32, pairs_limit: int = 64, log=None) -> List[str]:
    """Cross-check every output against the independent references; returns failures."""
    log = log or (lambda s: None)
    failures = []
    im = recursive_gmcb(g, n0=n0)
    got = im.explicit()
    ref = oracle_basis(g)
    if got.weights() == ref.weights() and got.total_weight == ref.total_weight:
        log("weights match oracle")
    else:
        failures.append("weights differ from oracle")
    if got.edge_sets() == ref.edge_sets():
        log("cycle edge sets match oracle")
    else:
        failures.append("cycle edge sets differ from oracle")
    if check_nested(g, got):
        log("basis is nested")
    else:
        failures.append("basis not nested")
    if all(check_isometric(g, c) for c in got.cycles):
        log("all cycles isometric")
    else:
        failures.append("non-isometric cycle")
    if g.m == 0:
        return failures
    gh = gomory_hu(g, n0=n0)
    o = build_mincut_oracle(gh)
    bad_edges = sum(1 for k in range(len(gh.edges))
                    if induced_cut_weight(g, gh.side_of_edge(k)) != gh.weight(k))
    if bad_edges:
        failures.append(f"{bad_edges} Gomory-Hu edges disagree with their cuts")
    else:
        log("Gomory-Hu edge weights equal their cuts")
    verts = sorted(g.vertices)[:pairs_limit]
    bad_pairs = 0
    for s, t in itertools.combinations(verts, 2):
        f = maxflow_reference(g, s, t)
        q = o.query_weight(s, t)
        cut = o.query_cut(s, t)
        if not (f == q == gh.path_min(s, t) == sum(g.edges[e][2] for e in cut)
                and cut_separates(g, cut, s, t)):
            bad_pairs += 1
    if bad_pairs:
        failures.append(f"{bad_pairs} vertex pairs disagree with max-flow")
    else:
        log(f"all pair queries match max-flow (max {o.counter.max_reads} reads)")
    return failures


def cmd_verify(a) -> int:
    g = read_graph(a.file)
    failures = verify_graph(g, n0=a.n0, pairs_limit=a.pairs, log=lambda s: _out(s + "\n"))
    for f in failures:
        sys.stderr.write(f"MISMATCH: {f}\n")
    return 1 if failures else 0


def fit_exponent(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Slope of the least-squares line through (log x, log y)."""
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def run_series(series: str, sizes: Sequence[int], seed: int, n0: int = 32, memory: bool = True):
    """Rows of measurements plus fitted exponents for one benchmark series.

    With ``memory`` the run is traced by tracemalloc, which roughly doubles
    the wall time; the time exponent is still meaningful but noisier.
    """
    rows = []
    for n in sizes:
        if series == "lower-bound":
            g = gen_lower_bound(n)
        else:
            g = gen_random_planar(n, seed=seed, unweighted=(series == "unweighted"))
        if memory:
            tracemalloc.start()
        t0 = time.perf_counter()
        im = recursive_gmcb(g, n0=n0)
        secs = time.perf_counter() - t0
        peak = 0
        if memory:
            _, peak = tracemalloc.get_traced_memory()
            tracemalloc.stop()
        basis = im.explicit()
        rows.append({
            "n": n, "seconds": secs, "peak_bytes": peak, "stored_ints": im.storage(),
            "total_weight": basis.total_weight, "total_length": basis.total_length,
        })
    fits = {}
    if len(rows) >= 2:
        ns = [r["n"] for r in rows]
        fits["time"] = fit_exponent(ns, [max(r["seconds"], 1e-6) for r in rows])
        if memory:
            fits["memory"] = fit_exponent(ns, [r["peak_bytes"] for r in rows])
        fits["stored_ints"] = fit_exponent(ns, [max(r["stored_ints"], 1) for r in rows])
        fits["length"] = fit_exponent(ns, [max(r["total_length"], 1) for r in rows])
    return rows, fits


def cmd_bench(a) -> int:
    defaults = {"scaling": [2 ** k for k in range(8, 13)],
                "unweighted": [2 ** k for k in range(8, 13)],
                "lower-bound": [5, 10, 50, 200]}
    sizes = a.sizes or defaults[a.series]
    seed = default_seed() if a.seed is None else a.seed
    rows, fits = run_series(a.series, sizes, seed, a.n0, memory=not a.no_memory)
    cols = ["n", "seconds", "peak_bytes", "stored_ints", "total_weight", "total_length"]
    _out(" ".join(cols) + "\n")
    for r in rows:
        _out(" ".join(f"{r[c]:.3f}" if c == "seconds" else str(r[c]) for c in cols) + "\n")
    for k, v in fits.items():
        _out(f"# exponent {k} {v:.3f}\n")
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="planarmcb", description="Planar minimum cycle bases and min cuts")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="write a generated graph as PLG")
    s.add_argument("--family", choices=["random", "lower-bound", "grid", "web"], default="random")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int)
    s.add_argument("--max-weight", type=int, default=16)
    s.add_argument("--thin", type=float, default=0.0)
    s.add_argument("--unweighted", action="store_true")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("mcb", help="minimum cycle basis of a PLG graph")
    s.add_argument("file")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--implicit", action="store_true", help="IMCB document (default)")
    mode.add_argument("--explicit", action="store_true", help="one cycle per line")
    s.set_defaults(func=cmd_mcb)

    s = sub.add_parser("weight-vector", help="sorted cycle weights")
    s.add_argument("file")
    s.set_defaults(func=cmd_weight_vector)

    s = sub.add_parser("gomory-hu", help="Gomory-Hu tree as 'u v w triple' lines")
    s.add_argument("file")
    s.set_defaults(func=cmd_gomory_hu)

    s = sub.add_parser("oracle", help="min cut between two vertices")
    s.add_argument("file")
    s.add_argument("--query", nargs=2, type=int, metavar=("U", "V"), required=True)
    s.add_argument("--cut", action="store_true", help="also print the cut edges")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("verify", help="cross-check all outputs against references")
    s.add_argument("file")
    s.add_argument("--pairs", type=int, default=64, help="vertex limit for pair queries")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("bench", help="timing and size series")
    s.add_argument("--series", choices=["scaling", "unweighted", "lower-bound"], required=True)
    s.add_argument("--sizes", type=int, nargs="+")
    s.add_argument("--seed", type=int)
    s.add_argument("--no-memory", action="store_true", help="skip tracemalloc for cleaner timings")
    s.set_defaults(func=cmd_bench)

    for s in sub.choices.values():
        s.add_argument("--n0", type=int, default=32, help="base-case size")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (PlanarMcbError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
