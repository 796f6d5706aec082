#!/usr/bin/env python3
"""Generate exhaustive streams of all unlabeled graphs up to a given order.

Every graph on n+1 vertices contains a vertex whose deletion leaves a graph
on n vertices, so attaching a new vertex to every subset of every order-n
class representative and deduplicating canonically yields every order-n+1
class exactly once.  The resulting counts are self-checking against the
known unlabeled graph counts, which makes this a strong end-to-end test of
the canonical labeling as well.

Outputs one gzipped graph6 file per order into the data directory.
"""

from __future__ import annotations

import argparse
import gzip
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from folkman.canon import canonical_form
from folkman.graph import add_vertex, decode_graph6, empty_graph, encode_graph6

KNOWN_COUNTS = {
    1: 1,
    2: 2,
    3: 4,
    4: 11,
    5: 34,
    6: 156,
    7: 1044,
    8: 12346,
    9: 274668,
}


def extend_order(reps, order):
    """Canonical keys of all (order)-vertex classes from (order-1)-reps."""
    keys = set()
    t0 = time.time()
    for i, g in enumerate(reps):
        for nbrs in range(1 << g.n):
            keys.add(canonical_form(add_vertex(g, nbrs)).graph6)
        if (i + 1) % 1000 == 0:
            print(
                f"  order {order}: {i + 1}/{len(reps)} hosts, "
                f"{len(keys)} classes, {time.time() - t0:.0f}s",
                flush=True,
            )
    return sorted(keys)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=9)
    ap.add_argument(
        "--out-dir", type=Path, default=Path(__file__).resolve().parent.parent / "data" / "small_graphs"
    )
    args = ap.parse_args()
    if not 1 <= args.max_order <= max(KNOWN_COUNTS):
        ap.error(f"--max-order must be in 1..{max(KNOWN_COUNTS)}")

    args.out_dir.mkdir(parents=True, exist_ok=True)
    reps = [empty_graph(1)]
    keys = [encode_graph6(reps[0])]
    for order in range(1, args.max_order + 1):
        if order > 1:
            keys = extend_order(reps, order)
            reps = [decode_graph6(k) for k in keys]
        expected = KNOWN_COUNTS[order]
        if len(keys) != expected:
            print(
                f"FATAL: order {order} produced {len(keys)} classes, "
                f"expected {expected}",
                file=sys.stderr,
            )
            return 1
        path = args.out_dir / f"graphs{order}.g6.gz"
        with gzip.open(path, "wb") as fh:
            for key in keys:
                fh.write(key + b"\n")
        print(f"order {order}: {len(keys)} graphs -> {path}", flush=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
