"""Projective geometry of the nonnegative orthant.

Distances between rays of the cone ``R^n_+`` are measured with the
projective (logarithmic cross-ratio) metric.  A nonnegative matrix maps
rays to rays, and its contraction ratio with respect to that metric is
``tanh(diameter/4)`` where the diameter is taken over the images of the
basis rays.  Everything here treats ``+inf`` as a first-class distance:
vectors whose zero patterns differ are at infinite distance, and a
matrix whose columns do not share a common zero pattern has infinite
projective diameter (contraction ratio 1, i.e. no contraction
certificate).

All ratio work happens in log space so widely scaled entries do not
overflow.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "support",
    "comparable",
    "sup_ratio",
    "hilbert_distance",
    "projective_diameter",
    "cross_ratio_diameter",
    "birkhoff_ratio",
]


def _as_cone_vector(x, zero_tol):
    """Coerce to a 1-D float array in the closed cone, clipping ``zero_tol`` dust."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise ValueError("expected a 1-D vector, got shape %s" % (v.shape,))
    if not np.all(np.isfinite(v)):
        raise ValueError("vector has non-finite entries")
    if np.any(v < -zero_tol):
        raise ValueError("vector has negative entries; the cone is R^n_+")
    return v


def support(x, zero_tol=0.0):
    """Boolean mask of the entries of ``x`` counted as strictly positive.

    Entries at or below ``zero_tol`` are treated as exact zeros.
    """
    v = _as_cone_vector(x, zero_tol)
    return v > zero_tol


def comparable(x, y, zero_tol=0.0):
    """True when ``x`` and ``y`` generate order-bounded rays (same zero pattern)."""
    sx = support(x, zero_tol)
    sy = support(y, zero_tol)
    if sx.shape != sy.shape:
        raise ValueError("dimension mismatch: %d vs %d" % (sx.size, sy.size))
    return bool(np.array_equal(sx, sy))


def sup_ratio(x, y, zero_tol=0.0):
    """Least ``C`` with ``x <= C*y`` entrywise, as an extended real.

    Returns 0.0 when ``x`` is the zero vector (any positive ``C`` works)
    and ``inf`` when no finite ``C`` exists, i.e. ``x`` is positive
    somewhere ``y`` vanishes.
    """
    vx = _as_cone_vector(x, zero_tol)
    vy = _as_cone_vector(y, zero_tol)
    if vx.shape != vy.shape:
        raise ValueError("dimension mismatch: %d vs %d" % (vx.size, vy.size))
    sx = vx > zero_tol
    if not sx.any():
        return 0.0
    if np.any(sx & ~(vy > zero_tol)):
        return math.inf
    return float(np.max(vx[sx] / vy[sx]))


def hilbert_distance(x, y, zero_tol=0.0):
    """Projective distance ``ln(M(x/y) * M(y/x))`` between two cone rays.

    Zero iff the vectors lie on a common ray (both zero counts as the
    same ray); ``inf`` iff their zero patterns differ.  Scale invariant
    in both arguments.  Computed as ``max(ln x - ln y) + max(ln y - ln x)``
    over the common support, which is exact in log space.
    """
    vx = _as_cone_vector(x, zero_tol)
    vy = _as_cone_vector(y, zero_tol)
    if vx.shape != vy.shape:
        raise ValueError("dimension mismatch: %d vs %d" % (vx.size, vy.size))
    sx = vx > zero_tol
    sy = vy > zero_tol
    if not sx.any() and not sy.any():
        return 0.0
    if not np.array_equal(sx, sy):
        return math.inf
    diff = np.log(vx[sx]) - np.log(vy[sx])
    return float(diff.max() - diff.min())


def _column_log_diameter(L):
    """Diameter of a family of log-columns sharing one support.

    ``L`` is (rows, cols) of logarithms.  Pairwise distance between
    columns i and j is ``max_k (L[k,i]-L[k,j]) + max_k (L[k,j]-L[k,i])``.
    """
    ncols = L.shape[1]
    if ncols < 2:
        return 0.0
    # D[k, i, j] = L[k, i] - L[k, j]; fine at desk scale.
    D = L[:, :, None] - L[:, None, :]
    M = D.max(axis=0)
    return float((M + M.T).max())


def projective_diameter(A, zero_tol=0.0):
    """Projective diameter of a nonnegative matrix.

    The maximum ray distance between images of basis vectors, i.e.
    between nonzero columns.  ``inf`` as soon as two nonzero columns
    have different zero patterns; 0.0 when fewer than two columns are
    nonzero.
    """
    M = np.asarray(A, dtype=float)
    if M.ndim != 2:
        raise ValueError("expected a matrix, got shape %s" % (M.shape,))
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    if np.any(M < -zero_tol):
        raise ValueError("matrix has negative entries")
    supp = M > zero_tol
    nonzero_cols = np.flatnonzero(supp.any(axis=0))
    if nonzero_cols.size < 2:
        return 0.0
    first = supp[:, nonzero_cols[0]]
    for j in nonzero_cols[1:]:
        if not np.array_equal(supp[:, j], first):
            return math.inf
    L = np.log(M[np.ix_(first, nonzero_cols)])
    return float(_column_log_diameter(L))


def cross_ratio_diameter(A):
    """Projective diameter of a strictly positive matrix via cross ratios.

    Evaluates ``ln max_{i,j,k,l} a_ki a_lj / (a_kj a_li)`` by direct
    enumeration of the four indices.  Independent route from
    :func:`projective_diameter`; the two agree for positive input.
    Intended for small matrices (cost grows with ``(m*n)^2``).
    """
    M = np.asarray(A, dtype=float)
    if M.ndim != 2:
        raise ValueError("expected a matrix, got shape %s" % (M.shape,))
    if np.any(M <= 0.0):
        raise ValueError("cross-ratio form needs strictly positive entries")
    # ratio[k, i, j] = a_ki / a_kj
    ratio = M[:, :, None] / M[:, None, :]
    # best[i, j] = max_k a_ki / a_kj
    best = ratio.max(axis=0)
    # cross ratio a_ki a_lj / (a_kj a_li) factors as (a_ki/a_kj) * (a_lj/a_li)
    return float(np.log((best * best.T).max()))


def birkhoff_ratio(A, zero_tol=0.0):
    """Contraction ratio of a nonnegative matrix on cone rays.

    Equals ``tanh(projective_diameter(A)/4)``; in particular 1.0 for
    infinite diameter (``tanh(inf) = 1``).  Every pair of comparable
    vectors satisfies ``d(Ax, Ay) <= birkhoff_ratio(A) * d(x, y)``, and
    the ratio is the best such constant.
    """
    return math.tanh(projective_diameter(A, zero_tol=zero_tol) / 4.0)
