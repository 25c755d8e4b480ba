"""Shared fixtures and random-instance generators for the test suite."""

import numpy as np

from mucert import (
    Activation,
    FiringRate,
    Hopfield,
    Lure,
    MultiLure,
    Persidskii,
    SlopeInterval,
    metzler_majorant,
    spectral_abscissa,
)

# Stable spiral (eigenvalues -1 +/- i*sqrt(2)): negative unweighted l2 log norm
# but an unstable Metzler majorant.
DAMPED_SPIRAL = np.array([[-1.0, -1.0], [2.0, -1.0]])

# Hurwitz (double eigenvalue -1) despite a positive diagonal entry, so its
# 1x1 principal submatrix is unstable.
STABLE_POS_DIAG = np.array([[1.0, 1.0], [-4.0, -3.0]])

# Scaled rotation (eigenvalues 1 +/- i); its majorant is rank-one-plus-shift
# with eigenvalues {2, 0}.
ROTATION_SHIFT = np.array([[1.0, 1.0], [-1.0, 1.0]])

# Skew-symmetric ring coupling: zero symmetric part, but removing one strong
# edge destabilizes the -I-shifted matrix.
SKEW_RING = np.array([[0.0, -1.0, 1.0], [1.0, 0.0, 15.0], [-1.0, -15.0, 0.0]])
SKEW_RING_EDGE = (2, 1)  # 0-based position of the strong edge to remove


def random_matrix(rng, n, scale=1.0):
    return rng.normal(scale=scale, size=(n, n))


def random_weights(rng, n, lo=0.2, hi=3.0):
    return rng.uniform(lo, hi, size=n)


def random_irreducible_metzler(rng, n):
    """Dense positive off-diagonal entries make the digraph complete."""
    M = rng.uniform(0.1, 1.0, size=(n, n))
    np.fill_diagonal(M, rng.normal(size=n))
    return M


def random_metzler(rng, n, density=0.6):
    M = rng.uniform(0.0, 1.0, size=(n, n)) * (rng.random(size=(n, n)) < density)
    np.fill_diagonal(M, rng.normal(size=n))
    return M


def random_mh_matrix(rng, n, gap_lo=0.05, gap_hi=1.0):
    """Random matrix whose Metzler majorant is Hurwitz by a diagonal shift."""
    A = rng.normal(size=(n, n))
    a = spectral_abscissa(metzler_majorant(A))
    return A - (a + rng.uniform(gap_lo, gap_hi)) * np.eye(n)


def random_slope_pair(rng, pattern):
    """d1 < d2 with the requested sign pattern."""
    if pattern == "negative":
        hi = -rng.uniform(0.05, 1.0)
        return hi - rng.uniform(0.1, 2.0), hi
    if pattern == "straddle":
        return -rng.uniform(0.05, 2.0), rng.uniform(0.05, 2.0)
    if pattern == "positive":
        lo = rng.uniform(0.05, 1.0)
        return lo, lo + rng.uniform(0.1, 2.0)
    raise ValueError(pattern)


SLOPE_PATTERNS = ("negative", "straddle", "positive")


def acceptance_fixtures():
    """Certifiably contracting model/activation pairs used by the
    simulation-verification and sampled-bound tests."""
    return [
        (
            "hopfield-tanh",
            Hopfield(np.eye(2), [[0.0, 0.4], [0.3, 0.0]], SlopeInterval(0.0, 1.0)),
            Activation("tanh"),
            "l1",
        ),
        (
            "hopfield-relu",
            Hopfield(
                np.eye(3),
                [[0.0, 0.3, 0.2], [0.1, 0.0, 0.4], [0.25, 0.15, 0.0]],
                SlopeInterval(0.0, 1.0),
                u=[0.3, -0.2, 0.1],
            ),
            Activation("relu"),
            "l1",
        ),
        (
            "firing-rate-relu",
            FiringRate(
                np.diag([1.2, 1.0]),
                [[0.3, -0.5], [0.4, 0.2]],
                SlopeInterval(0.0, 1.0),
                u=[0.4, -0.2],
            ),
            Activation("relu"),
            "linf",
        ),
        (
            "persidskii-leaky",
            Persidskii([[-2.0, 1.0], [1.0, -2.0]], SlopeInterval(0.25, 1.0)),
            Activation("leaky_relu", a=0.25),
            None,
        ),
        (
            "lure-tanh",
            Lure(
                [[-2.0, 1.0], [0.0, -3.0]],
                [1.0, 0.5],
                [0.3, -0.2],
                SlopeInterval(0.0, 1.0),
            ),
            Activation("tanh"),
            "l1",
        ),
        (
            "multilure-tanh",
            MultiLure(
                [[-3.0, 0.5], [0.4, -2.5]],
                [[0.6, -0.3], [0.2, 0.5]],
                [[0.5, 0.3], [-0.4, 0.6]],
                SlopeInterval(0.0, 1.0),
            ),
            Activation("tanh"),
            None,
        ),
    ]
