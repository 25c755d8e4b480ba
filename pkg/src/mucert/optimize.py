"""Weight optimization: linear feasibility by phase-1 simplex and bisection on
the level b of the weighted log norm.

Feasibility of  M_k w <= b w  over strictly positive w is a cone condition, so
it is equivalent to feasibility over w >= 1 entrywise.  Substituting
w = 1 + z with z >= 0 turns every level check into a plain phase-1 linear
program, which is solved from scratch here (Bland's rule, dense tableau); the
problems are tiny, completeness matters more than speed.
"""

from dataclasses import dataclass

import numpy as np

from .matrices import as_matrix, is_metzler, metzler_majorant
from .lognorm import L1, LINF
from .spectral import NumericalError

BISECT_TOL = 1e-8
BISECT_MAXITER = 200

_PIVOT_TOL = 1e-11
_FEAS_TOL = 1e-9

STATUS_OPTIMAL = "optimal"
STATUS_TOLERANCE = "tolerance-reached"
STATUS_INFEASIBLE = "infeasible-everywhere"


@dataclass(frozen=True)
class FeasibilityProblem:
    """Constraint matrices (each Metzler) and the level b being tested."""

    matrices: tuple
    b: float

    def __post_init__(self):
        mats = tuple(as_matrix(M) for M in self.matrices)
        if len(mats) == 0:
            raise ValueError("need at least one constraint matrix")
        n = mats[0].shape[0]
        if any(M.shape[0] != n for M in mats):
            raise ValueError("constraint matrices must share one dimension")
        if any(not is_metzler(M) for M in mats):
            raise ValueError("constraint matrices must be Metzler (pass majorants)")
        if not np.isfinite(self.b):
            raise ValueError("level b must be finite")
        object.__setattr__(self, "matrices", mats)


@dataclass(frozen=True)
class BisectResult:
    b_star: float
    eta_star: np.ndarray | None
    iterations: int
    status: str


def _phase1_feasible(G: np.ndarray, h: np.ndarray) -> np.ndarray | None:
    """Find z >= 0 with G z <= h, or None if no such z exists.

    Phase-1 simplex on the equality form G z + s = h with artificials on the
    rows whose right-hand side is negative.  Bland's rule (lowest eligible
    index for both entering and leaving variable) prevents cycling, so the
    method terminates and is complete up to the pivot tolerance.
    """
    m, nv = G.shape
    A = G.copy()
    b = h.copy()
    flip = b < 0
    A[flip] *= -1.0
    b[flip] *= -1.0

    slack = np.eye(m)
    slack[flip] *= -1.0
    art_rows = np.flatnonzero(flip)
    n_art = art_rows.size
    if n_art == 0:
        return np.zeros(nv)

    art = np.zeros((m, n_art))
    art[art_rows, np.arange(n_art)] = 1.0
    # Columns: z (nv) | slack (m) | artificial (n_art) | rhs.
    T = np.hstack([A, slack, art, b[:, None]])
    total = nv + m + n_art
    basis = np.empty(m, dtype=int)
    basis[~flip] = nv + np.flatnonzero(~flip)
    basis[flip] = nv + m + np.arange(n_art)

    # Objective: minimize the sum of artificials, expressed over nonbasics.
    cost = np.zeros(total + 1)
    cost[nv + m : nv + m + n_art] = 1.0
    obj = cost.copy()
    for r in np.flatnonzero(flip):
        obj -= T[r]

    max_pivots = 50 * (m + total) + 200
    for _ in range(max_pivots):
        entering = -1
        for j in range(total):
            if obj[j] < -_PIVOT_TOL:
                entering = j
                break
        if entering < 0:
            break
        col = T[:, entering]
        best = -1
        best_ratio = np.inf
        for i in range(m):
            if col[i] > _PIVOT_TOL:
                ratio = T[i, -1] / col[i]
                if ratio < best_ratio - _PIVOT_TOL or (
                    abs(ratio - best_ratio) <= _PIVOT_TOL
                    and (best < 0 or basis[i] < basis[best])
                ):
                    best = i
                    best_ratio = ratio
        if best < 0:
            # Phase-1 objective is bounded below by 0; an unbounded ray here
            # means the tableau lost numerical meaning.
            raise NumericalError("phase-1 simplex found an unbounded direction")
        piv = T[best, entering]
        T[best] /= piv
        factors = T[:, entering].copy()
        factors[best] = 0.0
        T -= np.outer(factors, T[best])
        obj -= obj[entering] * T[best]
        basis[best] = entering
    else:
        raise NumericalError("phase-1 simplex exceeded its pivot budget")

    scale = 1.0 + float(np.max(np.abs(h)))
    if -obj[-1] > _FEAS_TOL * scale:
        return None
    z = np.zeros(total)
    z[basis] = T[:, -1]
    return np.maximum(z[:nv], 0.0)


def feasible_weights(problem: FeasibilityProblem) -> np.ndarray | None:
    """A vector w >= 1 (entrywise) with M w <= b w for every constraint matrix,
    or None if the system is infeasible.

    Absence genuinely means infeasibility: the cone of feasible positive
    vectors is nonempty iff its w >= 1 slice is.
    """
    mats = problem.matrices
    n = mats[0].shape[0]
    G = np.vstack([M - problem.b * np.eye(n) for M in mats])
    h = -G @ np.ones(n)
    z = _phase1_feasible(G, h)
    if z is None:
        return None
    return 1.0 + z


def bisect_min_mu(
    matrices,
    family: str,
    tol: float = BISECT_TOL,
    max_iter: int = BISECT_MAXITER,
) -> BisectResult:
    """Minimize, over positive diagonal weights, the max weighted log norm of
    the given matrices; the norm level is bisected with one feasibility LP per
    step.

    The matrices are preprocessed internally: Metzler majorants are taken, and
    transposed for the l1 family (the l1 log norm of A at weight w is the
    least b with majorant(A)^T w <= b w).  Returns the least certified level
    b_star together with a weight vector achieving max mu <= b_star.
    """
    if family not in (L1, LINF):
        raise ValueError("weight optimization is defined for l1/linf only")
    mats = [metzler_majorant(M) for M in matrices]
    if family == L1:
        mats = [M.T for M in mats]
    if len(mats) == 0:
        raise ValueError("need at least one matrix")
    n = mats[0].shape[0]
    if any(M.shape[0] != n for M in mats):
        raise ValueError("matrices must share one dimension")

    # mu is sandwiched by the induced norm, so [-m, m] brackets the optimum:
    # the top is feasible at w = 1 and the bottom is infeasible for any w > 0.
    m = max(float(np.max(np.sum(np.abs(M), axis=1))) for M in mats) + 1.0
    hi = m
    lo = -m
    eta_hi = feasible_weights(FeasibilityProblem(tuple(mats), hi))
    if eta_hi is None:
        return BisectResult(np.inf, None, 0, STATUS_INFEASIBLE)

    it = 0
    while hi - lo > tol and it < max_iter:
        mid = 0.5 * (lo + hi)
        eta = feasible_weights(FeasibilityProblem(tuple(mats), mid))
        if eta is not None:
            hi, eta_hi = mid, eta
        else:
            lo = mid
        it += 1
    status = STATUS_OPTIMAL if hi - lo <= tol else STATUS_TOLERANCE
    return BisectResult(b_star=hi, eta_star=eta_hi, iterations=it, status=status)
