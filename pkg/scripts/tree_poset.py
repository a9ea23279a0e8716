"""Draw the tree-shift poset on n-vertex trees and tabulate arrows between leaf classes.

    python scripts/tree_poset.py --n 7 --dot trees7.dot
    dot -Tpdf trees7.dot -o trees7.pdf
"""

from __future__ import annotations

import argparse
from pathlib import Path

from nestohedra.poset import build_poset, verify_poset


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=7)
    ap.add_argument("--dot", type=Path, help="write the DOT diagram here")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    p = build_poset(args.n, jobs=args.jobs)
    shifts, floss = p.class_arrows()
    sizes: dict[int, int] = {}
    for t in p.nodes:
        sizes[t.leaf_count] = sizes.get(t.leaf_count, 0) + 1

    print(f"{len(p.nodes)} trees on {args.n} vertices")
    print("leaves  trees  shift arrows down  floss arrows")
    for k in sorted(sizes, reverse=True):
        print(f"{k:6d}  {sizes[k]:5d}  {shifts.get((k, k - 1), 0):17d}  {floss.get(k, 0):12d}")
    print()
    for t in sorted(p.nodes, key=lambda t: (-t.leaf_count, t.code)):
        print(f"  {t.leaf_count}  {t.gamma.to_list()!s:24s} {t.code}")
    print()
    print("\n".join(verify_poset(p, raise_on_failure=False).lines()))
    if args.dot:
        args.dot.write_text(p.to_dot())
        print(f"wrote {args.dot}")


if __name__ == "__main__":
    main()
