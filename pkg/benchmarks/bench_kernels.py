"""Compare the compiled and numpy closure kernels on lattice enumeration.

    python benchmarks/bench_kernels.py [--repeat N] [group ...]

Groups are fixture names (default: sym5 alt6 sym6 order400_z4z4_a e125_z31).
Both backends must produce identical lattices; the script exits 1 otherwise.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from psublab import kernels
from psublab.groupdef import build, read_grp
from psublab.lattice import enumerate_lattice

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
DEFAULT = ["sym5", "alt6", "sym6", "order400_z4z4_a", "e125_z31"]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("groups", nargs="*", default=DEFAULT)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    try:
        kernels.use_backend("cython")
    except ImportError:
        print("compiled kernels are not built; nothing to compare", file=sys.stderr)
        return 2

    print(f"{'group':<20} {'order':>6} {'nodes':>6} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    status = 0
    for name in args.groups:
        entry = read_grp(FIXTURES / f"{name}.grp")
        G = build(entry.spec).force()
        results = {}
        for backend in ("cython", "python"):
            kernels.use_backend(backend)
            results[backend] = best_of(lambda: enumerate_lattice(G, cap=entry.lattice_cap), args.repeat)
        (tc, Lc), (tp, Lp) = results["cython"], results["python"]
        if [h.bits for h in Lc.nodes] != [h.bits for h in Lp.nodes]:
            print(f"{name}: backends disagree", file=sys.stderr)
            status = 1
        print(f"{name:<20} {G.order:>6} {len(Lc.nodes):>6} {tc:>10.3f} {tp:>10.3f} {tp / tc:>7.1f}x")
    kernels.use_backend("cython")
    return status


if __name__ == "__main__":
    sys.exit(main())
