"""Membership tests for stability classes of square matrices and the pruning /
edge-removal robustness probes.

Class predicates declare negativity of a spectral abscissa only below a strict
threshold (-1e-12); values inside the +/-1e-12 band are flagged as marginal in
the report instead of being silently classified either way.
"""

from dataclasses import dataclass, field

import numpy as np

from .matrices import (
    as_matrix,
    as_weights,
    metzler_majorant,
    nonempty_subsets,
    principal_submatrix,
)
from .lognorm import mu2
from .spectral import DEFAULT_DELTA, is_irreducible, perron_pair, spectral_abscissa

STRICT_TOL = 1e-12

TOTALLY_HURWITZ_MAX_DIM = 20
PRUNING_MAX_DIM = 12


def _strictly_negative(x: float) -> bool:
    return x < -STRICT_TOL


def is_hurwitz(A) -> bool:
    """True iff the spectral abscissa of A is (strictly) negative."""
    return _strictly_negative(spectral_abscissa(A))


def is_m_hurwitz(A) -> bool:
    """True iff the Metzler majorant of A is Hurwitz."""
    return _strictly_negative(spectral_abscissa(metzler_majorant(A)))


def is_totally_hurwitz(A) -> bool:
    """True iff every nonempty principal submatrix of A is Hurwitz."""
    A = as_matrix(A)
    n = A.shape[0]
    if n > TOTALLY_HURWITZ_MAX_DIM:
        raise ValueError(f"totally-Hurwitz check guarded at n <= {TOTALLY_HURWITZ_MAX_DIM}")
    if np.any(np.diag(A) >= -STRICT_TOL):
        return False  # a 1x1 submatrix already fails
    for idx in nonempty_subsets(n):
        if len(idx) == 1:
            continue
        if not is_hurwitz(A[np.ix_(idx, idx)]):
            return False
    return True


def is_quasidominant(A) -> bool:
    """Row dominance with positive weights; equivalent to -A being M-Hurwitz."""
    return is_m_hurwitz(-as_matrix(A))


def lds_certificate(A, weights) -> bool:
    """One-weight witness check for diagonal Lyapunov stability: true iff the
    weighted l2 log norm of A at the supplied diagonal weight is negative.

    This checks a single candidate weight, it is not a full membership test.
    """
    return _strictly_negative(mu2(A, weights))


def mh_lds_witness(A, delta: float = DEFAULT_DELTA) -> np.ndarray:
    """A diagonal Lyapunov weight that certifies any M-Hurwitz matrix.

    Built as w/v from the dominant left and right eigenvectors of the Metzler
    majorant: with that weight, diag(w/v) M + M^T diag(w/v) is a symmetric
    Metzler matrix whose product with v is 2*alpha*w < 0, hence negative
    definite, and the weighted l2 log norm of A is bounded by the majorant's.
    """
    M = metzler_majorant(A)
    pair = perron_pair(M, 0.0 if is_irreducible(M) else delta)
    return as_weights(pair.left / pair.right)


@dataclass(frozen=True)
class ClassReport:
    hurwitz: bool
    totally_hurwitz: bool
    m_hurwitz: bool
    quasidominant: bool
    lds_certified_at: np.ndarray | None
    alpha: float
    alpha_majorant: float
    marginal: tuple = field(default_factory=tuple)


def classify_matrix(A, lds_weights=None) -> ClassReport:
    """Full class report for A.

    If `lds_weights` is given, it is checked as the diagonal Lyapunov witness;
    otherwise, for M-Hurwitz input the constructive witness from
    :func:`mh_lds_witness` is tried.  `lds_certified_at` carries the weight
    only when the witness check passes.
    """
    A = as_matrix(A)
    alpha = spectral_abscissa(A)
    alpha_maj = spectral_abscissa(metzler_majorant(A))
    mh = _strictly_negative(alpha_maj)

    witness = None
    candidate = None
    if lds_weights is not None:
        candidate = as_weights(lds_weights, A.shape[0])
    elif mh:
        candidate = mh_lds_witness(A)
    if candidate is not None and lds_certificate(A, candidate):
        witness = candidate

    marginal = []
    if abs(alpha) <= STRICT_TOL:
        marginal.append("hurwitz")
    if abs(alpha_maj) <= STRICT_TOL:
        marginal.append("m_hurwitz")

    return ClassReport(
        hurwitz=_strictly_negative(alpha),
        totally_hurwitz=is_totally_hurwitz(A),
        m_hurwitz=mh,
        quasidominant=is_quasidominant(A),
        lds_certified_at=witness,
        alpha=alpha,
        alpha_majorant=alpha_maj,
        marginal=tuple(marginal),
    )


@dataclass(frozen=True)
class PruningEntry:
    indices: tuple
    m_hurwitz: bool
    alpha_majorant: float


@dataclass(frozen=True)
class PruningReport:
    entries: tuple
    all_m_hurwitz: bool


def pruning_robustness(A) -> PruningReport:
    """M-Hurwitz status and majorant abscissa of every nonempty principal
    submatrix (0-based index tuples).  For M-Hurwitz input every entry is true."""
    A = as_matrix(A)
    n = A.shape[0]
    if n > PRUNING_MAX_DIM:
        raise ValueError(f"pruning report guarded at n <= {PRUNING_MAX_DIM}")
    entries = []
    for idx in nonempty_subsets(n):
        a = spectral_abscissa(metzler_majorant(principal_submatrix(A, idx)))
        entries.append(PruningEntry(idx, _strictly_negative(a), a))
    return PruningReport(tuple(entries), all(e.m_hurwitz for e in entries))


def edge_removal_check(A, zeroed, shift: float = 0.0) -> tuple[bool, bool]:
    """Hurwitz status of shift*I + A before and after zeroing the listed
    off-diagonal positions (0-based (row, col) pairs)."""
    A = as_matrix(A)
    n = A.shape[0]
    removed = A.copy()
    for pos in zeroed:
        i, j = int(pos[0]), int(pos[1])
        if i == j:
            raise ValueError(f"only off-diagonal entries may be removed, got ({i}, {j})")
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError(f"position ({i}, {j}) out of range for dimension {n}")
        removed[i, j] = 0.0
    S = shift * np.eye(n)
    return is_hurwitz(S + A), is_hurwitz(S + removed)
