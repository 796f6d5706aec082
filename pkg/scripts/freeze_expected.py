#!/usr/bin/env python3
"""Regenerate tests/data/frozen.json from reference oracles only.

Every value here is computed by subset scans, permutation counting, or the
exhaustive arrowing oracles, never by the fast solvers under test. Tests
then compare solver output against this file, so the expected values stay
pinned even if the solvers change.
"""

import json
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))
sys.path.insert(0, str(REPO / "tests"))

from folkman.arrowing import oracle_edge_33, oracle_vertex  # noqa: E402
from folkman.graph import (  # noqa: E402
    complete_graph,
    cycle_graph,
    encode_graph6,
    join,
    petersen_graph,
)
from helpers import (  # noqa: E402
    brute_alpha,
    brute_aut,
    brute_chi,
    brute_omega,
    brute_triangles,
    stream_order,
)


def named_record(g):
    return {
        "omega": brute_omega(g),
        "alpha": brute_alpha(g),
        "chi": brute_chi(g),
        "aut": brute_aut(g),
        "triangles": brute_triangles(g),
        "edge33": oracle_edge_33(g),
        "vertex33": oracle_vertex(g, (3, 3)),
        "vertex233": oracle_vertex(g, (2, 3, 3)),
    }


def main() -> int:
    frozen = {
        "named": {
            "c5": named_record(cycle_graph(5)),
            "k4": named_record(complete_graph(4)),
            "k5": named_record(complete_graph(5)),
            "k6": named_record(complete_graph(6)),
            "petersen": named_record(petersen_graph()),
            "k3_plus_c5": named_record(join(complete_graph(3), cycle_graph(5))),
        },
        # canonical-stream graphs that edge-arrow (3,3), by order
        "edge33_arrowing": {
            str(n): sorted(encode_graph6(g).decode()
                           for g in stream_order(n) if oracle_edge_33(g))
            for n in range(1, 8)
        },
        # one oracle-checked member apiece for the vertex existence bounds
        "vertex33_cap5_order8_witness": "GLvnf{",
        "vertex233_cap6_order9_witness": "HLvnf~~",
    }
    from folkman.graph import decode_graph6

    w8 = decode_graph6(frozen["vertex33_cap5_order8_witness"].encode())
    assert brute_omega(w8) < 5 and oracle_vertex(w8, (3, 3))
    w9 = decode_graph6(frozen["vertex233_cap6_order9_witness"].encode())
    assert brute_omega(w9) < 6 and oracle_vertex(w9, (2, 3, 3))

    out = REPO / "tests" / "data" / "frozen.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(frozen, indent=2) + "\n")
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
