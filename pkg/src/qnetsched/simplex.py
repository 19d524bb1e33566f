"""Dense two-phase simplex for small feasibility/budget LPs.

Minimizes c.x subject to A_ub x <= b_ub, A_eq x = b_eq, x >= 0. Bland's
smallest-index rule throughout, so the solver is deterministic and cannot
cycle. Intended for desk-scale problems (thousands of variables at most).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_PIVOT_TOL = 1e-10
_FEAS_TOL = 1e-9

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
ITERATION_LIMIT = "iteration_limit"


class SolverError(RuntimeError):
    """Numerical failure distinct from infeasibility (e.g. iteration cap)."""


@dataclass
class LpResult:
    status: str
    objective: float
    x: np.ndarray | None


def _pivot(T: np.ndarray, basis: list[int], row: int, col: int) -> None:
    T[row] /= T[row, col]
    for r in range(T.shape[0]):
        if r != row and T[r, col] != 0.0:
            T[r] -= T[r, col] * T[row]
    basis[row] = col


def _run_simplex(T: np.ndarray, basis: list[int], num_cols: int, max_iter: int) -> str:
    """Iterate on tableau T (last row = objective, last col = rhs) until optimal."""
    m = T.shape[0] - 1
    for _ in range(max_iter):
        obj = T[-1, :num_cols]
        entering = -1
        for j in range(num_cols):
            if obj[j] < -_PIVOT_TOL:
                entering = j
                break
        if entering < 0:
            return OPTIMAL
        # minimum ratio, ties by smallest basis index (Bland)
        leaving = -1
        best = np.inf
        for r in range(m):
            a = T[r, entering]
            if a > _PIVOT_TOL:
                ratio = T[r, -1] / a
                if ratio < best - _PIVOT_TOL or (
                    abs(ratio - best) <= _PIVOT_TOL
                    and (leaving < 0 or basis[r] < basis[leaving])
                ):
                    best = ratio
                    leaving = r
        if leaving < 0:
            return UNBOUNDED
        _pivot(T, basis, leaving, entering)
    return ITERATION_LIMIT


def solve_lp(
    c: np.ndarray,
    A_ub: np.ndarray | None = None,
    b_ub: np.ndarray | None = None,
    A_eq: np.ndarray | None = None,
    b_eq: np.ndarray | None = None,
) -> LpResult:
    c = np.asarray(c, dtype=float)
    n = c.size
    rows: list[np.ndarray] = []
    rhs: list[float] = []
    kinds: list[str] = []
    if A_ub is not None:
        A_ub = np.atleast_2d(np.asarray(A_ub, dtype=float))
        for row, b in zip(A_ub, np.atleast_1d(b_ub)):
            rows.append(row)
            rhs.append(float(b))
            kinds.append("ub")
    if A_eq is not None:
        A_eq = np.atleast_2d(np.asarray(A_eq, dtype=float))
        for row, b in zip(A_eq, np.atleast_1d(b_eq)):
            rows.append(row)
            rhs.append(float(b))
            kinds.append("eq")
    m = len(rows)
    if m == 0:
        raise ValueError("empty constraint system")

    num_slack = sum(1 for k in kinds if k == "ub")
    # columns: x | slack | artificial | rhs
    width = n + num_slack + m + 1
    T = np.zeros((m + 1, width))
    basis = [0] * m
    slack_at = n
    art_at = n + num_slack
    needs_artificial = []
    for r in range(m):
        row, b = rows[r], rhs[r]
        sign = 1.0
        if b < 0:
            row, b, sign = -row, -b, -1.0
        T[r, :n] = row
        T[r, -1] = b
        if kinds[r] == "ub":
            T[r, slack_at] = sign
            if sign > 0:
                basis[r] = slack_at
                needs_artificial.append(False)
            else:
                needs_artificial.append(True)
            slack_at += 1
        else:
            needs_artificial.append(True)
        if needs_artificial[r]:
            T[r, art_at] = 1.0
            basis[r] = art_at
            art_at += 1

    max_iter = 10_000 + 50 * (m + width)

    # phase 1: minimize sum of artificials
    for r in range(m):
        if basis[r] >= n + num_slack:
            T[-1] -= T[r]
    status = _run_simplex(T, basis, n + num_slack, max_iter)
    if status == ITERATION_LIMIT:
        raise SolverError("phase-1 iteration cap exceeded")
    if status == UNBOUNDED:
        raise SolverError("phase-1 unbounded (internal error)")
    if -T[-1, -1] > _FEAS_TOL:
        return LpResult(status=INFEASIBLE, objective=np.inf, x=None)

    # drive any leftover artificials out of the basis
    for r in range(m):
        if basis[r] >= n + num_slack:
            for j in range(n + num_slack):
                if abs(T[r, j]) > _PIVOT_TOL:
                    _pivot(T, basis, r, j)
                    break
    keep = [r for r in range(m) if basis[r] < n + num_slack]
    if len(keep) < m:
        # redundant rows whose artificial could not leave the basis
        T = np.vstack([T[keep], T[-1:]])
        basis = [basis[r] for r in keep]
        m = len(keep)

    # phase 2
    T[-1, :] = 0.0
    T[-1, :n] = c
    for r in range(m):
        if T[-1, basis[r]] != 0.0:
            T[-1] -= T[-1, basis[r]] * T[r]
    status = _run_simplex(T, basis, n + num_slack, max_iter)
    if status == ITERATION_LIMIT:
        raise SolverError("phase-2 iteration cap exceeded")
    if status == UNBOUNDED:
        return LpResult(status=UNBOUNDED, objective=-np.inf, x=None)

    x = np.zeros(n + num_slack + (T.shape[1] - 1 - n - num_slack))
    for r in range(m):
        x[basis[r]] = T[r, -1]
    return LpResult(status=OPTIMAL, objective=float(c @ x[:n]), x=x[:n].copy())
