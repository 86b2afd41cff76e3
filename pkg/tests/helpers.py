"""Shared fixture matrices and small utilities for the test suite."""

from fractions import Fraction

from treexact import DissimilarityMatrix, EXACT


def star_matrix(policy=EXACT):
    """Metric of the star with center 3 and arm weights 1, 2, 4 to 1, 2, 4."""
    return DissimilarityMatrix.from_pairs(
        4,
        {(1, 2): 3, (1, 3): 1, (1, 4): 5, (2, 3): 2, (2, 4): 6, (3, 4): 4},
        policy,
    )


def all_two_matrix(n=4, policy=EXACT):
    """Every off-diagonal dissimilarity equals 2."""
    return DissimilarityMatrix.from_pairs(
        n,
        {(i, j): 2 for i in range(1, n + 1) for j in range(i + 1, n + 1)},
        policy,
    )


def caterpillar_outer_matrix(policy=EXACT):
    """Two unit cherries joined by a unit middle edge, restricted to the four
    outer labels: d(1,2) = d(3,4) = 2, the other four pairs are 3."""
    return DissimilarityMatrix.from_pairs(
        4,
        {(1, 2): 2, (3, 4): 2, (1, 3): 3, (1, 4): 3, (2, 3): 3, (2, 4): 3},
        policy,
    )


def unit_path_matrix(policy=EXACT):
    """Metric of the unit-weight path 1-2-3-4."""
    return DissimilarityMatrix.from_pairs(
        4,
        {(1, 2): 1, (2, 3): 1, (3, 4): 1, (1, 3): 2, (2, 4): 2, (1, 4): 3},
        policy,
    )


def path3_matrix(policy=EXACT):
    """Metric of the path 1-3-2 with weights 1 and 2."""
    return DissimilarityMatrix.from_pairs(
        3, {(1, 3): 1, (2, 3): 2, (1, 2): 3}, policy
    )


def matrices_entrywise_equal(a, b):
    policy = a.policy
    if a.n != b.n:
        return False
    return all(
        policy.eq(a.rows[i][j], b.rows[i][j])
        for i in range(1, a.n + 1)
        for j in range(i + 1, a.n + 1)
    )


def perturb_one_pair(m, i, j, delta=Fraction(1, 2)):
    """Copy of m with d(i, j) bumped by delta (kept symmetric)."""
    pairs = {(u, v): w for u, v, w in m.pairs()}
    key = (min(i, j), max(i, j))
    pairs[key] = pairs[key] + delta
    return DissimilarityMatrix.from_pairs(m.n, pairs, m.policy)
