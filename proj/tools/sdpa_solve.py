#!/usr/bin/env python3
"""Solve an SDPA sparse (.dat-s) problem with cvxpy and write a CSDP-style solution.

Primal read from the file:  max F0 . Y  s.t.  Fi . Y = c_i,  Y >= 0 (block diagonal).
Output: first line the equality multipliers, then "2 block i j value" for Y.

usage: sdpa_solve.py problem.dat-s solution.sol [--solver CLARABEL]
"""

import argparse
import sys

import numpy as np
import scipy.sparse as sp
import cvxpy as cp


def read_problem(path):
    tokens = []
    with open(path) as fh:
        for line in fh:
            if not line.strip() or line[0] in '"*':
                continue
            for ch in ",{}()":
                line = line.replace(ch, " ")
            tokens.extend(line.split())
    pos = 0

    def take(n):
        nonlocal pos
        out = tokens[pos:pos + n]
        pos += n
        return out

    m = int(take(1)[0])
    nb = int(take(1)[0])
    sizes = [int(x) for x in take(nb)]
    c = np.array([float(x) for x in take(m)])
    entries = []
    while pos + 5 <= len(tokens):
        mat, blk, i, j, v = take(5)
        entries.append((int(mat), int(blk) - 1, int(i) - 1, int(j) - 1, float(v)))
    return m, sizes, c, entries


def build(m, sizes, c, entries):
    blocks = []
    for n in sizes:
        if n > 0:
            blocks.append(cp.Variable((n, n), PSD=True))
        else:
            blocks.append(cp.Variable(-n, nonneg=True))

    # coefficient of each block's vectorised variable, one matrix per block
    rows = [[] for _ in sizes]
    cols = [[] for _ in sizes]
    vals = [[] for _ in sizes]
    obj = [[] for _ in sizes]
    for mat, b, i, j, v in entries:
        n = sizes[b]
        if n > 0:
            if i == j:
                targets = [(i * n + j, v)]
            else:
                targets = [(i * n + j, v), (j * n + i, v)]
        else:
            if i != j:
                raise ValueError("off-diagonal entry in a diagonal block")
            targets = [(i, v)]
        for col, val in targets:
            if mat == 0:
                obj[b].append((col, val))
            else:
                rows[b].append(mat - 1)
                cols[b].append(col)
                vals[b].append(val)

    lhs = 0
    objective = 0
    for b, n in enumerate(sizes):
        width = n * n if n > 0 else -n
        var = cp.vec(blocks[b], order="C") if n > 0 else blocks[b]
        if rows[b]:
            a = sp.csr_matrix((vals[b], (rows[b], cols[b])), shape=(m, width))
            lhs = lhs + a @ var
        if obj[b]:
            f = np.zeros(width)
            for col, val in obj[b]:
                f[col] += val
            objective = objective + f @ var
    constraint = lhs == c
    problem = cp.Problem(cp.Maximize(objective), [constraint])
    return problem, blocks, constraint


def tolerances(solver, tol):
    if solver == "CLARABEL":
        return {"tol_gap_abs": tol, "tol_gap_rel": tol, "tol_feas": tol, "max_iter": 500}
    if solver == "CVXOPT":
        return {"abstol": tol, "reltol": tol, "feastol": tol}
    if solver == "SCS":
        return {"eps": max(tol, 1e-9), "max_iters": 200000}
    return {}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("problem")
    ap.add_argument("solution")
    ap.add_argument("--solver", default=None, help="cvxpy solver name (default: first of CLARABEL, CVXOPT, SCS)")
    ap.add_argument("--tol", type=float, default=1e-12, help="feasibility and gap tolerance")
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args(argv)

    m, sizes, c, entries = read_problem(args.problem)
    problem, blocks, constraint = build(m, sizes, c, entries)
    order = [args.solver] if args.solver else ["CLARABEL", "CVXOPT", "SCS"]
    status = None
    for name in order:
        if name not in cp.installed_solvers():
            continue
        try:
            problem.solve(solver=name, verbose=args.verbose, **tolerances(name, args.tol))
        except cp.error.SolverError as exc:
            print(f"sdpa_solve: {name} failed: {exc}", file=sys.stderr)
            continue
        status = problem.status
        if status in (cp.OPTIMAL, cp.OPTIMAL_INACCURATE):
            break
    if status not in (cp.OPTIMAL, cp.OPTIMAL_INACCURATE):
        print(f"sdpa_solve: no optimal solution (status {status})", file=sys.stderr)
        return 1

    duals = np.atleast_1d(constraint.dual_value) if constraint.dual_value is not None else np.zeros(m)
    with open(args.solution, "w") as out:
        out.write(" ".join(f"{x:.17g}" for x in duals) + "\n")
        for b, n in enumerate(sizes):
            val = blocks[b].value
            if n > 0:
                val = (val + val.T) / 2
                for i in range(n):
                    for j in range(i, n):
                        if val[i, j] != 0.0:
                            out.write(f"2 {b + 1} {i + 1} {j + 1} {val[i, j]:.17g}\n")
            else:
                for i in range(-n):
                    if val[i] != 0.0:
                        out.write(f"2 {b + 1} {i + 1} {i + 1} {val[i]:.17g}\n")
    print(f"sdpa_solve: status {status}, objective {problem.value:.12g}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
