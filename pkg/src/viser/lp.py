"""Dense two-phase simplex solver.

The solver maximizes ``c @ v`` subject to ``a_ub @ v <= b_ub``,
``a_eq @ v == b_eq`` and ``v >= 0`` except for variables flagged free,
which are internally split into differences of two nonnegatives.

Pivoting uses Dantzig's rule and switches to Bland's rule once the number
of degenerate pivots exceeds ``2 * (vars + constraints)``; the security
LPs solved here are frequently degenerate because the maximin polytope has
ties by construction.  All rules break ties by smallest index, so a fixed
problem always yields a bit-identical solution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

# No improving reduced cost above this at termination.
TOL_OPT = 1e-9
# Entries smaller than this are not eligible pivots.
TOL_PIVOT = 1e-10


class SolverStallError(RuntimeError):
    """Iteration cap (50 * (vars + constraints)) exceeded."""


@dataclass(frozen=True)
class LpProblem:
    c: np.ndarray
    a_ub: np.ndarray
    b_ub: np.ndarray
    a_eq: np.ndarray
    b_eq: np.ndarray
    free: np.ndarray  # bool mask; True -> variable unbounded below

    @classmethod
    def build(cls, c, a_ub=None, b_ub=None, a_eq=None, b_eq=None, free=None):
        c = np.atleast_1d(np.array(c, dtype=float))
        nvar = c.size
        a_ub = np.zeros((0, nvar)) if a_ub is None else np.atleast_2d(np.array(a_ub, dtype=float))
        b_ub = np.zeros(0) if b_ub is None else np.atleast_1d(np.array(b_ub, dtype=float))
        a_eq = np.zeros((0, nvar)) if a_eq is None else np.atleast_2d(np.array(a_eq, dtype=float))
        b_eq = np.zeros(0) if b_eq is None else np.atleast_1d(np.array(b_eq, dtype=float))
        if free is None:
            free = np.zeros(nvar, dtype=bool)
        else:
            free = np.array(free, dtype=bool)
        if a_ub.shape != (b_ub.size, nvar) or a_eq.shape != (b_eq.size, nvar):
            raise ValueError("constraint rows do not match variable count")
        if free.shape != (nvar,):
            raise ValueError("free mask does not match variable count")
        for arr in (c, a_ub, b_ub, a_eq, b_eq):
            if not np.all(np.isfinite(arr)):
                raise ValueError("non-finite coefficient in LP")
        return cls(c, a_ub, b_ub, a_eq, b_eq, free)

    @property
    def var_count(self) -> int:
        return self.c.size

    @property
    def constraint_count(self) -> int:
        return self.b_ub.size + self.b_eq.size


@dataclass(frozen=True)
class LpSolution:
    status: str
    primal: np.ndarray | None
    objective_value: float
    iterations: int


def _simplex_min(T, zrow, basis, max_iter, bland_after):
    """Minimize over the tableau in place; returns (status, iterations)."""
    iters = 0
    degenerate = 0
    nrows = T.shape[0]
    while True:
        reduced = zrow[:-1]
        if degenerate > bland_after:
            eligible = np.flatnonzero(reduced < -TOL_OPT)
            if eligible.size == 0:
                return OPTIMAL, iters
            j = int(eligible[0])
        else:
            j = int(np.argmin(reduced))
            if reduced[j] >= -TOL_OPT:
                return OPTIMAL, iters
        col = T[:, j]
        rows = np.flatnonzero(col > TOL_PIVOT)
        if rows.size == 0:
            return UNBOUNDED, iters
        ratios = T[rows, -1] / col[rows]
        best = np.min(ratios)
        tied = rows[np.flatnonzero(ratios <= best + 1e-12)]
        r = int(tied[np.argmin([basis[i] for i in tied])])
        if best < TOL_PIVOT:
            degenerate += 1
        piv_row = T[r] / T[r, j]
        col_copy = T[:, j].copy()
        T -= np.outer(col_copy, piv_row)
        T[r] = piv_row
        T[:, j] = 0.0
        T[r, j] = 1.0
        zrow -= zrow[j] * piv_row
        zrow[j] = 0.0
        basis[r] = j
        iters += 1
        if iters > max_iter:
            raise SolverStallError(f"simplex exceeded {max_iter} iterations")


def solve_lp(p: LpProblem) -> LpSolution:
    nvar = p.var_count
    free_idx = np.flatnonzero(p.free)
    n_free = free_idx.size

    def extend(rows):
        # Append negated columns for the free variables: x = u - v.
        if rows.shape[0] == 0:
            return np.zeros((0, nvar + n_free))
        return np.hstack([rows, -rows[:, free_idx]])

    c_ext = np.concatenate([p.c, -p.c[free_idx]])
    a_ub = extend(p.a_ub)
    a_eq = extend(p.a_eq)
    n_ub = p.b_ub.size
    n_struct = nvar + n_free
    n_rows = n_ub + p.b_eq.size

    # Rows: all ub rows (with slack identity), then eq rows; make rhs >= 0.
    A = np.zeros((n_rows, n_struct + n_ub))
    b = np.concatenate([p.b_ub, p.b_eq]).astype(float)
    A[:n_ub, :n_struct] = a_ub
    A[:n_ub, n_struct:n_struct + n_ub] = np.eye(n_ub)
    A[n_ub:, :n_struct] = a_eq
    neg = b < 0
    A[neg] *= -1.0
    b[neg] = -b[neg]
    A_orig = A.copy()
    b_orig = b.copy()
    row_ids = np.arange(n_rows)

    # Slack columns with +1 serve as the initial basis; the rest get artificials.
    basis = np.full(n_rows, -1, dtype=int)
    needs_artificial = []
    for i in range(n_rows):
        if i < n_ub and not neg[i]:
            basis[i] = n_struct + i
        else:
            needs_artificial.append(i)
    n_art = len(needs_artificial)
    total = n_struct + n_ub + n_art
    T = np.zeros((n_rows, total + 1))
    T[:, :n_struct + n_ub] = A
    T[:, -1] = b
    for k, i in enumerate(needs_artificial):
        col = n_struct + n_ub + k
        T[i, col] = 1.0
        basis[i] = col

    max_iter = 50 * (nvar + n_rows)
    bland_after = 2 * (nvar + n_rows)
    total_iters = 0

    # Phase 1: minimize the sum of artificials.
    if n_art > 0:
        zrow = np.zeros(total + 1)
        zrow[n_struct + n_ub:total] = 1.0
        for i in np.flatnonzero(basis >= n_struct + n_ub):
            zrow -= T[i]
        status, it = _simplex_min(T, zrow, basis, max_iter, bland_after)
        total_iters += it
        feas_tol = 1e-9 * max(1.0, float(np.max(b, initial=0.0)))
        if -zrow[-1] > feas_tol:
            return LpSolution(INFEASIBLE, None, np.nan, total_iters)
        # Drive leftover artificials out of the basis; drop redundant rows.
        keep = np.ones(n_rows, dtype=bool)
        for i in range(n_rows):
            if basis[i] >= n_struct + n_ub:
                row = T[i, :n_struct + n_ub]
                candidates = np.flatnonzero(np.abs(row) > 1e-7)
                if candidates.size == 0:
                    keep[i] = False
                    continue
                j = int(candidates[0])
                piv_row = T[i] / T[i, j]
                col_copy = T[:, j].copy()
                T -= np.outer(col_copy, piv_row)
                T[i] = piv_row
                T[:, j] = 0.0
                T[i, j] = 1.0
                basis[i] = j
        T = T[keep]
        basis = basis[keep]
        row_ids = row_ids[keep]
        T = np.hstack([T[:, :n_struct + n_ub], T[:, -1:]])
        total = n_struct + n_ub

    # Phase 2: minimize -c_ext.
    zrow = np.zeros(total + 1)
    zrow[:n_struct] = -c_ext
    for i in range(T.shape[0]):
        zrow -= zrow[basis[i]] * T[i]
    status, it = _simplex_min(T, zrow, basis, max_iter, bland_after)
    total_iters += it
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED, None, np.inf, total_iters)

    x_ext = np.zeros(total)
    x_ext[basis] = T[:, -1]
    # Refine against the original data: pivoting drifts the tableau rhs, so
    # re-solve the final basis system directly.
    if basis.size:
        try:
            refined = np.linalg.solve(A_orig[np.ix_(row_ids, basis)],
                                      b_orig[row_ids])
            if np.all(np.isfinite(refined)) and np.min(refined) >= -1e-7:
                x_ext[basis] = np.maximum(refined, 0.0)
        except np.linalg.LinAlgError:
            pass
    x = x_ext[:nvar].copy()
    x[free_idx] -= x_ext[nvar:n_struct]
    objective = float(p.c @ x)

    # Feasibility certificate (active unless running under -O).
    if p.b_ub.size:
        scale = np.abs(p.a_ub) @ np.abs(x) + np.abs(p.b_ub)
        assert np.max(p.a_ub @ x - p.b_ub - 1e-9 * np.maximum(1.0, scale)) <= 0
    if p.b_eq.size:
        scale = np.abs(p.a_eq) @ np.abs(x) + np.abs(p.b_eq)
        assert np.max(np.abs(p.a_eq @ x - p.b_eq) - 1e-9 * np.maximum(1.0, scale)) <= 0
    assert np.min(x[~p.free], initial=0.0) >= -1e-9

    return LpSolution(OPTIMAL, x, objective, total_iters)
