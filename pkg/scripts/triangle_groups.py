#!/usr/bin/env python3
"""Doubling construction for triangle groups against the breadth-first systole.

For every hyperbolic (p, q, r) with entries up to --max (plus an ideal
vertex when --ideal is given), prints the doubling case, the construction's
translation length and the BFS minimum.
"""
import argparse
import math
from itertools import combinations_with_replacement

from coxsys.builder import INF, from_coxeter, triangle_spec
from coxsys.search import bfs_systole
from coxsys.verify import theorem42_check, triangle_doubling


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=8)
    ap.add_argument("--max-len", type=int, default=8)
    ap.add_argument("--ideal", action="store_true")
    args = ap.parse_args()

    values = list(range(2, args.max + 1)) + ([INF] if args.ideal else [])
    print("(p,q,r)          case             ell/2       bfs ell/2   bound       verdict")
    for pqr in combinations_with_replacement(values, 3):
        if sum(0 if x == INF else 1 / x for x in pqr) >= 1:
            continue
        tri = from_coxeter(triangle_spec(*pqr))
        rep = theorem42_check(tri, max_len=args.max_len)
        bfs = bfs_systole(tri, args.max_len)
        tag = ",".join("inf" if x == INF else str(x) for x in pqr)
        print(f"{'(' + tag + ')':15s}  {triangle_doubling(tri).case:15s}  {rep.achieved:.8f}  "
              f"{bfs.injrad if bfs else math.nan:.8f}  {rep.bound:.8f}  {'pass' if rep.verdict else 'FAIL'}")


if __name__ == "__main__":
    main()
