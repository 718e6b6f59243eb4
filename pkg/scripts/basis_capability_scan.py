#!/usr/bin/env python3
"""Sweep a gate's teleportation success probability over basis families.

Usage: python scripts/basis_capability_scan.py --gate cnot --grid 32
"""
import argparse

import numpy as np

from gateport import bases, teleport as tp
from gateport.cli import resolve_gate


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--gate", default="cnot")
    ap.add_argument("--grid", type=int, default=32)
    args = ap.parse_args()

    g = resolve_gate(args.gate, 1e-9)

    print(f"# {args.gate} over the real two-parameter family")
    hist: dict[float, int] = {}
    for i in range(args.grid):
        t = 2 * np.pi * i / args.grid
        basis = bases.beta_ab_basis(np.cos(t) / np.sqrt(2), np.sin(t) / np.sqrt(2))
        p = tp.analyze_gate_teleport(g, basis).success_probability
        hist[p] = hist.get(p, 0) + 1
    for p in sorted(hist):
        print(f"  success {p:.4f}: {hist[p]} / {args.grid} points")

    print(f"# {args.gate} over the nonlocal-column family (theta3 = 0)")
    hist = {}
    for i in range(args.grid):
        t1 = -np.pi + 2 * np.pi * i / args.grid
        for j in range(args.grid):
            t2 = -np.pi + 2 * np.pi * j / args.grid
            basis = bases.beta_nl_basis(t1, t2, 0.0)
            p = tp.analyze_gate_teleport(g, basis).success_probability
            hist[p] = hist.get(p, 0) + 1
    for p in sorted(hist):
        print(f"  success {p:.4f}: {hist[p]} / {args.grid * args.grid} points")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
