"""Independent reference values for testing the fixed-point solver.

Nothing here shares machinery with the certified iteration: norms are
maximized by projected gradient ascent with random restarts, the
unweighted spectral case goes through a dense symmetric eigensolver,
and the two-by-two sharpness family is analyzed by root counting of an
explicit scalar function.  Agreement between these routes and the
solver is what the test suite leans on.
"""

from __future__ import annotations

import math

import numpy as np

from .norms import WeightedPNorm, duality_map
from .power import _own_rep

__all__ = ["brute_force_norm", "gram_l2_norm", "critical_point_census"]


def gram_l2_norm(A):
    """Largest singular value of ``A`` via the Gram matrix spectrum."""
    A = np.asarray(A, dtype=float)
    eigs = np.linalg.eigvalsh(A.T @ A)
    return math.sqrt(max(float(eigs[-1]), 0.0))


def brute_force_norm(A, alpha, beta, restarts=20, iters=500, seed=0):
    """Maximize ``||A x||_alpha / ||x||_beta`` by projected ascent.

    Runs gradient ascent on the unit sphere of ``beta`` inside the
    nonnegative orthant (for nonnegative ``A`` the maximizer can always
    be chosen there), from the all-ones vector, every basis direction,
    and ``restarts`` seeded random starts, with backtracking line
    search.  When both norms are Euclidean with weights, the exact value
    of the equivalent scaled spectral problem is folded in as a floor.
    Returns the best objective value found; a lower bound for the true
    norm in general, and for the modest matrices it is meant to check
    a near-sharp one.
    """
    A = np.asarray(A, dtype=float)
    m, n = A.shape
    alpha_own = _own_rep(alpha)
    beta_own = _own_rep(beta)
    rng = np.random.default_rng(seed)

    starts = [np.ones(n)]
    starts.extend(np.eye(n))
    for _ in range(restarts):
        starts.append(rng.uniform(0.05, 1.0, size=n))

    best = 0.0
    for x0 in starts:
        v = beta_own.value(x0)
        if v <= 0:
            continue
        x = x0 / v
        y = A @ x
        if not np.any(y > 0):
            continue
        f = alpha_own.value(y)
        step = 1.0
        for _ in range(iters):
            y = A @ x
            grad = A.T @ duality_map(alpha_own, y) - f * duality_map(beta_own, x)
            if np.abs(grad).max() <= 1e-15:
                break
            moved = False
            while step > 1e-14:
                cand = np.maximum(x + step * grad, 0.0)
                vc = beta_own.value(cand)
                if vc > 0:
                    cand = cand / vc
                    yc = A @ cand
                    if np.any(yc > 0):
                        fc = alpha_own.value(yc)
                        if fc > f:
                            x, f = cand, fc
                            step *= 1.5
                            moved = True
                            break
                step *= 0.5
            if not moved:
                break
        best = max(best, f)

    if (
        isinstance(alpha, WeightedPNorm)
        and isinstance(beta, WeightedPNorm)
        and alpha.p == 2.0
        and beta.p == 2.0
        and beta.strict
    ):
        scaled = (np.sqrt(alpha.weights)[:, None] * A) / np.sqrt(beta.weights)[None, :]
        best = max(best, gram_l2_norm(scaled))
    return best


def _psi(t, epsilon, p, q):
    return t ** (q - 1.0) * (
        (t * epsilon + 1.0 - t) ** (p - 1.0)
        + epsilon * (epsilon + t - t * epsilon) ** (p - 1.0)
    )


def critical_point_census(epsilon, p, q, grid=2000):
    """Count fixed rays of the iteration for the 2x2 sharpness family.

    The matrix ``[[eps, 1], [1, eps]]`` with unweighted p over q norms
    reduces, after normalizing iterates to the simplex, to a scalar root
    count: critical points away from the symmetric one come in mirror
    pairs parametrized by roots of ``psi(1-t) - psi(t)`` on (0, 1/2).
    The symmetric point always exists, so the census is
    ``1 + 2 * (number of such roots)``.  Roots are bracketed on a
    uniform grid and polished by bisection; brackets closer than 1e-9
    to each other or to the symmetric point are merged away.
    """
    if not (0 < epsilon < 1):
        raise ValueError("epsilon must lie in (0, 1)")
    if p <= 1 or q <= 1:
        raise ValueError("exponents must exceed one")
    ts = np.linspace(0.0, 0.5, int(grid) + 2)[1:-1]
    h = _psi(1.0 - ts, epsilon, p, q) - _psi(ts, epsilon, p, q)
    roots = []
    sign = np.sign(h)
    for i in range(len(ts) - 1):
        if sign[i] == 0.0:
            roots.append(float(ts[i]))
            continue
        if sign[i] * sign[i + 1] < 0:
            lo, hi = float(ts[i]), float(ts[i + 1])
            flo = _psi(1.0 - lo, epsilon, p, q) - _psi(lo, epsilon, p, q)
            while hi - lo > 1e-12:
                mid = 0.5 * (lo + hi)
                fmid = _psi(1.0 - mid, epsilon, p, q) - _psi(mid, epsilon, p, q)
                if fmid == 0.0:
                    lo = hi = mid
                    break
                if (flo < 0) == (fmid < 0):
                    lo, flo = mid, fmid
                else:
                    hi = mid
            roots.append(0.5 * (lo + hi))
    if sign[-1] == 0.0:
        roots.append(float(ts[-1]))
    merged = []
    for root in sorted(roots):
        if abs(root - 0.5) <= 1e-9:
            continue
        if merged and abs(root - merged[-1]) <= 1e-9:
            continue
        merged.append(root)
    return 1 + 2 * len(merged)
