"""
Dense two-phase simplex solver for problems in standard form

    minimize c.x  subject to  A x = b,  x >= 0.

Pricing is Dantzig's rule (most negative reduced cost, lowest index on ties).
After a run of degenerate pivots the solver falls back to Bland's rule until a
pivot makes progress again, which rules out cycling. Every choice is made by
exact comparisons over a fixed scan order, so repeated runs agree bit-for-bit.
"""
from dataclasses import dataclass
from typing import List, Optional
import logging

import numpy as np

logger = logging.getLogger(__name__)

SOLVER_ID = "dense-simplex/dantzig-bland"


class LPNumericError(RuntimeError):
    """The solver could not make numerically sound progress."""


class LPInfeasibleError(RuntimeError):
    """Phase 1 ended with a positive artificial objective."""


class LPUnboundedError(RuntimeError):
    """An entering column has no positive entry; the objective is unbounded below."""


@dataclass
class StandardFormResult:
    """
    Optimal basic solution of a standard-form problem.

    Attributes:
        x: Primal solution vector
        objective: c.x at the solution
        basis: Column index of the basic variable of each remaining row
        iterations: Total pivots over both phases
    """
    x: np.ndarray
    objective: float
    basis: List[int]
    iterations: int


@dataclass
class _Tableau:
    """Simplex tableau; the last row holds reduced costs, the last column the RHS."""
    table: np.ndarray
    basis: List[int]
    pivot_tolerance: float
    optimality_tolerance: float
    iterations: int = 0

    @property
    def m(self) -> int:
        return self.table.shape[0] - 1

    def pivot(self, row: int, col: int) -> None:
        t = self.table
        t[row] /= t[row, col]
        factors = t[:, col].copy()
        factors[row] = 0.0
        t -= np.outer(factors, t[row])
        t[:, col] = 0.0
        t[row, col] = 1.0
        rhs = t[:-1, -1]
        rhs[(rhs < 0) & (rhs > -self.pivot_tolerance)] = 0.0
        self.basis[row] = col
        self.iterations += 1

    def set_costs(self, costs: np.ndarray) -> None:
        """Rebuild the reduced-cost row for a new cost vector over the current basis."""
        width = self.table.shape[1] - 1
        full = np.zeros(width + 1)
        full[:costs.shape[0]] = costs
        basic_costs = full[self.basis]
        self.table[-1] = full - basic_costs @ self.table[:-1]

    def _entering(self, allowed: int, bland: bool) -> Optional[int]:
        reduced = self.table[-1, :allowed]
        candidates = np.flatnonzero(reduced < -self.optimality_tolerance)
        if candidates.size == 0:
            return None
        if bland:
            return int(candidates[0])
        return int(candidates[np.argmin(reduced[candidates])])

    def _leaving(self, col: int) -> Optional[int]:
        column = self.table[:-1, col]
        rows = np.flatnonzero(column > self.pivot_tolerance)
        if rows.size == 0:
            if np.any(column > 0):
                raise LPNumericError(
                    f"pivot magnitudes below {self.pivot_tolerance:g} in column {col}"
                )
            return None
        ratios = self.table[rows, -1] / column[rows]
        best = ratios.min()
        tied = rows[ratios <= best + self.pivot_tolerance * (1.0 + abs(best))]
        # Ties go to the lowest-indexed basic variable
        return int(min(tied, key=lambda r: self.basis[r]))

    def optimize(self, allowed: int, max_pivots: int, degenerate_switch: int) -> None:
        """Run primal simplex over the first `allowed` columns until optimal."""
        bland = False
        degenerate_run = 0
        while True:
            col = self._entering(allowed, bland)
            if col is None:
                return
            row = self._leaving(col)
            if row is None:
                raise LPUnboundedError(f"objective unbounded along column {col}")
            if self.iterations >= max_pivots:
                raise LPNumericError(f"no optimum after {max_pivots} pivots")
            step = self.table[row, -1]
            self.pivot(row, col)
            if step <= self.pivot_tolerance:
                degenerate_run += 1
                if degenerate_run >= degenerate_switch and not bland:
                    logger.debug(f"switching to Bland's rule after {degenerate_run} degenerate pivots")
                    bland = True
            else:
                degenerate_run = 0
                bland = False


def _identity_columns(A: np.ndarray) -> List[Optional[int]]:
    """For each row, the lowest-index column equal to that row's unit vector, if any."""
    m = A.shape[0]
    found: List[Optional[int]] = [None] * m
    ones = np.flatnonzero(np.sum(A != 0, axis=0) == 1)
    for j in ones:
        i = int(np.flatnonzero(A[:, j])[0])
        if A[i, j] == 1.0 and found[i] is None:
            found[i] = int(j)
    return found


def solve_standard_form(
    A: np.ndarray,
    b: np.ndarray,
    c: np.ndarray,
    pivot_tolerance: float = 1e-12,
    optimality_tolerance: float = 1e-10,
    max_pivots: Optional[int] = None,
    degenerate_switch: int = 50
) -> StandardFormResult:
    """
    Solve min c.x s.t. A x = b, x >= 0 with the two-phase simplex method.

    Phase 1 adds artificial columns only for rows that have no unit column
    already; when every row has one, phase 1 is skipped.

    Args:
        A: (m, n) constraint matrix
        b: (m,) right-hand side
        c: (n,) cost vector
        pivot_tolerance: Smallest admissible pivot magnitude
        optimality_tolerance: Reduced costs above -tol count as optimal
        max_pivots: Pivot budget over both phases (default 50 * (m + n))
        degenerate_switch: Consecutive degenerate pivots before Bland's rule

    Returns:
        StandardFormResult: Optimal basic solution

    Raises:
        LPInfeasibleError: If the constraints admit no solution
        LPUnboundedError: If the objective is unbounded below
        LPNumericError: On vanishing pivots or an exhausted pivot budget
    """
    A = np.array(A, dtype=np.float64)
    b = np.array(b, dtype=np.float64)
    c = np.array(c, dtype=np.float64)
    m, n = A.shape
    if b.shape != (m,) or c.shape != (n,):
        raise ValueError(f"Inconsistent shapes: A {A.shape}, b {b.shape}, c {c.shape}")
    if max_pivots is None:
        max_pivots = 50 * (m + n)

    negative = b < 0
    A[negative] *= -1.0
    b[negative] *= -1.0

    units = _identity_columns(A)
    missing = [i for i, j in enumerate(units) if j is None]
    width = n + len(missing)

    table = np.zeros((m + 1, width + 1))
    table[:m, :n] = A
    table[:m, -1] = b
    basis = [0] * m
    for i, j in enumerate(units):
        if j is not None:
            basis[i] = j
    for k, i in enumerate(missing):
        table[i, n + k] = 1.0
        basis[i] = n + k

    tableau = _Tableau(table, basis, pivot_tolerance, optimality_tolerance)

    if missing:
        phase_one = np.zeros(width)
        phase_one[n:] = 1.0
        tableau.set_costs(phase_one)
        tableau.optimize(width, max_pivots, degenerate_switch)
        infeasibility = -tableau.table[-1, -1]
        if infeasibility > optimality_tolerance * (1.0 + np.abs(b).sum()):
            raise LPInfeasibleError(f"phase 1 ended with infeasibility {infeasibility:g}")
        _drive_out_artificials(tableau, n)
        logger.debug(f"phase 1 finished after {tableau.iterations} pivots")

    tableau.table = np.delete(tableau.table, np.s_[n:width], axis=1)
    tableau.set_costs(c)
    tableau.optimize(n, max_pivots, degenerate_switch)

    x = np.zeros(n)
    for row, col in enumerate(tableau.basis):
        x[col] = tableau.table[row, -1]
    return StandardFormResult(
        x=x,
        objective=float(c @ x),
        basis=list(tableau.basis),
        iterations=tableau.iterations
    )


def _drive_out_artificials(tableau: _Tableau, n: int) -> None:
    """Pivot zero-level artificials out of the basis; drop rows that are redundant."""
    redundant = []
    for row in range(tableau.m):
        if tableau.basis[row] < n:
            continue
        entries = np.flatnonzero(np.abs(tableau.table[row, :n]) > tableau.pivot_tolerance)
        if entries.size:
            tableau.pivot(row, int(entries[0]))
        else:
            redundant.append(row)
    if redundant:
        logger.debug(f"dropping {len(redundant)} redundant constraint row(s)")
        tableau.table = np.delete(tableau.table, redundant, axis=0)
        tableau.basis = [col for row, col in enumerate(tableau.basis) if row not in redundant]
