"""Does every tree shift or flossing move raise the Wiener index?

Exploratory: the answer is reported per move family and n, never asserted.
"""

from __future__ import annotations

import argparse
from collections import Counter

from nestohedra.moves import (
    apply_flossing,
    apply_tree_shift,
    enumerate_flossing,
    enumerate_tree_shifts,
    wiener_change,
)
from nestohedra.verification import connected_graphs, trees


def tally(graphs, enumerate_moves, apply_move) -> Counter:
    c: Counter = Counter()
    for g in graphs:
        for m in enumerate_moves(g):
            delta = wiener_change(g, apply_move(g, m))
            c["up" if delta > 0 else "flat" if delta == 0 else "down"] += 1
    return c


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-tree-n", type=int, default=9)
    ap.add_argument("--max-graph-n", type=int, default=6)
    args = ap.parse_args()

    families = (("shift", enumerate_tree_shifts, apply_tree_shift),
                ("floss", enumerate_flossing, apply_flossing))
    print("family  class   n   up  flat  down")
    for label, source, top in (("trees", trees, args.max_tree_n), ("graphs", connected_graphs, args.max_graph_n)):
        for n in range(3, top + 1):
            gs = source(n)
            if label == "graphs":
                gs = [g for g in gs if not g.is_tree()]
            for name, enum, apply in families:
                c = tally(gs, enum, apply)
                if sum(c.values()):
                    print(f"{name:6s}  {label:6s} {n:2d} {c['up']:4d} {c['flat']:5d} {c['down']:5d}")


if __name__ == "__main__":
    main()
