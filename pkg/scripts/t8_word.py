#!/usr/bin/env python3
"""Translation length of the T8 word, compared across three methods.

Prints the characteristic-polynomial length, the eigenvalue length and the
displacement-growth estimate for rho3 rho4 rho2 rho1 rho4 rho2, then the
shortest element the breadth-first search finds at each depth.
"""
import argparse
import math

import numpy as np

from coxsys import catalog
from coxsys.search import bfs_systole, classify, displacement_length, word_to_matrix


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-len", type=int, default=10)
    args = ap.parse_args()

    rp = catalog.polyhedron("T8")
    M = word_to_matrix(rp, catalog.T8_WORD)
    print("T8 exponents (n34 = 2):", catalog.T8_EXPONENTS)
    print(f"word (1-based)        : {[x + 1 for x in catalog.T8_WORD]}")
    print(f"char. polynomial      : {classify(M).length:.12f}")
    print(f"log spectral radius   : {math.log(max(abs(np.linalg.eigvals(M)))):.12f}")
    print(f"displacement growth   : {displacement_length(M):.12f}")
    print()
    print("depth  min length      witness (0-based)   visited")
    for L in range(2, args.max_len + 1):
        rep = bfs_systole(rp, L)
        if rep is None:
            print(f"{L:5d}  none")
            continue
        print(f"{L:5d}  {rep.min_translation_length:.10f}  {str(list(rep.witness.word)):18s}  {rep.elements_visited}")


if __name__ == "__main__":
    main()
