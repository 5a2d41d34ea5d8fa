#!/usr/bin/env python3
"""Enumerate compact and finite-volume Coxeter tetrahedra and bound their injectivity radii.

For every class found, prints the canonical exponents, the shortest
orientation-preserving loxodromic from the breadth-first search, and the
verdict against the compact bound acosh(3 + 4cos(2pi/5)) or the
finite-volume bound acosh(7).
"""
import argparse
import time

from coxsys.builder import from_coxeter
from coxsys.verify import (
    canonical_exponents,
    enumerate_compact_tetrahedra,
    enumerate_finite_volume_tetrahedra,
    theorem41_check,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-exp", type=int, default=10, help="largest exponent tried")
    ap.add_argument("--max-len", type=int, default=10, help="breadth-first search depth")
    ap.add_argument("--finite-volume", action="store_true", help="allow ideal vertices")
    args = ap.parse_args()

    t0 = time.perf_counter()
    enum = enumerate_finite_volume_tetrahedra if args.finite_volume else enumerate_compact_tetrahedra
    specs = enum(args.max_exp)
    print(f"{len(specs)} classes with exponents <= {args.max_exp} ({time.perf_counter() - t0:.2f} s)")
    print("exponents (n01 n02 n03 n12 n13 n23)   compact  injrad      bound       verdict")
    for spec in specs:
        rp = from_coxeter(spec)
        rep = theorem41_check(rp, max_len=args.max_len)
        ex = " ".join(f"{x:2d}" for x in canonical_exponents(spec))
        print(f"{ex:38s} {str(rp.is_compact):8s} {rep.achieved:.8f}  {rep.bound:.8f}  "
              f"{'pass' if rep.verdict else 'FAIL'}")
    print(f"total {time.perf_counter() - t0:.2f} s")


if __name__ == "__main__":
    main()
