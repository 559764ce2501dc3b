#!/usr/bin/env python3
"""Compute the graded dimension table and compare with the published one.

Produces the full/primitive dimensions of the trivalent-graph quotient up
to a chosen degree, the symmetric-algebra cross-check, and (optionally)
the extended-space dimensions.
"""
import argparse
import sys
import time

from mws.catalog import connected_catalog, full_catalog
from mws.cli import PAPER_DIMS_FULL, PAPER_DIMS_PRIM
from mws.hopf import sym_prediction
from mws.relations import quotient_dim


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--up-to", type=int, default=12)
    ap.add_argument("--space", choices=("cmc", "ecmc"), default="cmc")
    ap.add_argument("--cache-dir", default=None)
    args = ap.parse_args()

    print(f"degree  classes  conn  rank  dim  dim_conn  sym_pred  paper")
    t0 = time.time()
    for m in range(args.up_to + 1):
        cat = full_catalog(args.space, m, cache_dir=args.cache_dir, limit=None)
        conn = connected_catalog(args.space, m, cache_dir=args.cache_dir, limit=None)
        dim = quotient_dim(m, args.space, cache_dir=args.cache_dir, limit=None)
        dim_conn = quotient_dim(m, args.space, True, cache_dir=args.cache_dir, limit=None)
        sym = sym_prediction(m, args.space, cache_dir=args.cache_dir, limit=None)
        paper = ""
        if args.space == "cmc":
            p = PAPER_DIMS_FULL.get(m)
            q = PAPER_DIMS_PRIM.get(m)
            if p is not None:
                paper = f"{p}/{q}"
        print(
            f"{m:>6}  {len(cat.classes):>7}  {len(conn.classes):>4}  "
            f"{len(cat.classes) - dim:>4}  {dim:>3}  {dim_conn:>8}  {sym:>8}  {paper}"
        )
    print(f"total {time.time() - t0:.1f}s", file=sys.stderr)


if __name__ == "__main__":
    main()
