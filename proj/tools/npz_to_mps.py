#!/usr/bin/env python3
"""Convert scipy's linprog benchmark .npz files (min c^T x, A_ub x <= b_ub,
A_eq x = b_eq, bounds) into free-format MPS.

usage: npz_to_mps.py INPUT.npz OUTPUT.mps
"""
import sys

import numpy as np


def fmt(v):
    return repr(float(v))


def main(src, dst):
    d = np.load(src, allow_pickle=True)
    name = src.rsplit("/", 1)[-1].split(".")[0]
    c = d["c"]
    a_ub, b_ub = d["A_ub"], d["b_ub"]
    a_eq, b_eq = d["A_eq"], d["b_eq"]
    bounds = d["bounds"]
    n = c.shape[0]
    rows = [("L", "LE%d" % i) for i in range(a_ub.shape[0])]
    rows += [("E", "EQ%d" % i) for i in range(a_eq.shape[0])]
    out = ["NAME " + name, "ROWS", " N COST"]
    out += [" %s %s" % r for r in rows]
    out.append("COLUMNS")
    for j in range(n):
        col = "X%d" % j
        if c[j] != 0:
            out.append("    %s COST %s" % (col, fmt(c[j])))
        for i in np.nonzero(a_ub[:, j])[0]:
            out.append("    %s LE%d %s" % (col, i, fmt(a_ub[i, j])))
        for i in np.nonzero(a_eq[:, j])[0]:
            out.append("    %s EQ%d %s" % (col, i, fmt(a_eq[i, j])))
    out.append("RHS")
    for i, v in enumerate(b_ub):
        if v != 0:
            out.append("    RHS LE%d %s" % (i, fmt(v)))
    for i, v in enumerate(b_eq):
        if v != 0:
            out.append("    RHS EQ%d %s" % (i, fmt(v)))
    if bounds.size:
        out.append("BOUNDS")
        for j, (lo, hi) in enumerate(bounds):
            col = "X%d" % j
            lo = -np.inf if lo is None else lo
            hi = np.inf if hi is None else hi
            if lo == -np.inf and hi == np.inf:
                out.append(" FR BND %s" % col)
                continue
            if lo == -np.inf:
                out.append(" MI BND %s" % col)
            elif lo != 0:
                out.append(" LO BND %s %s" % (col, fmt(lo)))
            if hi != np.inf:
                out.append(" UP BND %s %s" % (col, fmt(hi)))
    out.append("ENDATA")
    with open(dst, "w") as f:
        f.write("\n".join(out) + "\n")
    print(name, "optimal objective (reference):", float(d["obj"]))


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
