r"""Lower bounds for log-Sobolev constants of finite Markov chains.

The route to the bound is contraction of the heat semigroup in the
projective metric.  For a chain with kernel ``K`` and stationary
distribution ``pi``, let ``R = (K + K^*)/2`` be its additive
reversibilization and ``M_t = exp(-t(I - R))`` the associated continuous
semigroup.  Writing ``rho(t)`` for the projective contraction ratio of
``M_t``, every ``t > 0`` yields a rigorous bound

    ``sigma  >=  -log(rho(t)) / (2 t)``

for the log-Sobolev constant ``sigma`` of ``R``, complemented from above
by half the spectral gap.  The module also exposes the semigroup and
two-state closed forms used to validate it, plus a hypercontractivity
check: for a doubly-regularized kernel ``M`` the operator norm from
``L^2(pi)`` to ``L^q(pi)`` equals one for every ``q`` up to
``1 + 1/kappa(M M^*)``, which the fixed-point iteration can confirm
numerically because the norm problem's maximizer is the constant vector.
"""

from __future__ import annotations

import math
from collections import namedtuple
from dataclasses import dataclass, field

import numpy as np

from .cone import birkhoff_ratio
from .norms import WeightedPNorm, dual_exponent
from .power import PowerResult, ProblemInstance, solve

__all__ = [
    "MarkovChain",
    "stationary_distribution",
    "adjoint",
    "transition_semigroup",
    "rho",
    "two_state_rho",
    "two_state_sigma",
    "spectral_gap",
    "sigma_lower_bound",
    "LscEntry",
    "LscReport",
    "dirichlet_and_entropy",
    "hypercontractive_check",
    "HypercontractivityReport",
]


def stationary_distribution(K, tol=1e-13, max_iters=200000):
    """Stationary distribution of a row-stochastic kernel.

    Power iteration on the lazy transpose ``(K^T + I)/2``; laziness kills
    periodicity, so the iteration converges for every irreducible chain.
    Raises ``ValueError`` if the limit has zero mass somewhere (the chain
    has transient states and no strictly positive stationary law).
    """
    K = np.asarray(K, dtype=float)
    n = K.shape[0]
    v = np.full(n, 1.0 / n)
    for _ in range(max_iters):
        w = 0.5 * (K.T @ v + v)
        w /= w.sum()
        if np.abs(w - v).sum() <= tol:
            v = w
            break
        v = w
    else:
        raise ValueError("stationary distribution did not converge")
    if np.any(v <= 0):
        raise ValueError(
            "stationary distribution has zero entries; the chain has "
            "transient states and the weighted norms below degenerate"
        )
    return v


def adjoint(M, pi):
    """Adjoint of ``M`` in ``L^2(pi)``: ``diag(pi)^-1 M^T diag(pi)``.

    Preserves nonnegativity and, when ``pi`` is stationary for a
    stochastic ``M``, row sums.
    """
    M = np.asarray(M, dtype=float)
    pi = np.asarray(pi, dtype=float)
    return (M.T * pi[None, :]) / pi[:, None]


class MarkovChain:
    """Row-stochastic kernel with a validated stationary distribution.

    Parameters
    ----------
    K : (n, n) array
        Entrywise nonnegative, rows summing to one within ``tol``.
    pi : (n,) array, optional
        Strictly positive stationary distribution.  Computed by power
        iteration when omitted.
    tol : float
        Slack for the stochasticity and stationarity checks.
    """

    def __init__(self, K, pi=None, tol=1e-10):
        K = np.asarray(K, dtype=float)
        if K.ndim != 2 or K.shape[0] != K.shape[1]:
            raise ValueError("K must be square, got shape %s" % (K.shape,))
        if not np.all(np.isfinite(K)) or np.any(K < 0):
            raise ValueError("K must be finite and entrywise nonnegative")
        if np.abs(K.sum(axis=1) - 1.0).max() > tol:
            raise ValueError("K rows must sum to one")
        self.K = K
        self.n = K.shape[0]
        if pi is None:
            pi = stationary_distribution(K)
        else:
            pi = np.asarray(pi, dtype=float)
            if pi.shape != (self.n,):
                raise ValueError("pi has wrong shape %s" % (pi.shape,))
            if np.any(pi <= 0):
                raise ValueError("pi must be strictly positive")
            pi = pi / pi.sum()
        if np.abs(pi @ K - pi).sum() > max(tol, 1e-9):
            raise ValueError("pi is not stationary for K")
        self.pi = pi

    def adjoint_kernel(self):
        """Time reversal ``K^*``, again row-stochastic."""
        return adjoint(self.K, self.pi)

    def reversibilization(self):
        """Additive reversibilization ``(K + K^*)/2``."""
        return 0.5 * (self.K + self.adjoint_kernel())


def transition_semigroup(K, t, tol=1e-14):
    """Heat kernel ``exp(-t(I - K))`` of a substochastic generator.

    Evaluated as the Poisson-weighted power series
    ``e^-t sum_j t^j/j! K^j``, truncated once the Poisson tail mass
    drops below ``tol``.  Truncation only ever underestimates entries,
    and by at most the tail mass, since powers of a stochastic matrix
    have entries in [0, 1].
    """
    K = np.asarray(K, dtype=float)
    if t < 0:
        raise ValueError("t must be nonnegative")
    n = K.shape[0]
    weight = math.exp(-t)
    cdf = weight
    power = np.eye(n)
    out = weight * power
    j = 0
    while cdf < 1.0 - tol:
        j += 1
        weight *= t / j
        power = power @ K
        out += weight * power
        cdf += weight
        if j > 100000:
            raise RuntimeError("Poisson series did not terminate")
    return out


def rho(chain, t, series_tol=1e-14):
    """Projective contraction ratio of the reversibilized heat kernel."""
    if t <= 0:
        raise ValueError("t must be positive")
    M_t = transition_semigroup(chain.reversibilization(), t, tol=series_tol)
    return birkhoff_ratio(M_t)


def two_state_rho(a, b, t):
    """Closed-form contraction ratio for the chain [[1-a, a], [b, 1-b]].

    With ``u = exp(-(a+b)t)`` and ``g = sqrt((1 + u a/b)(1 + u b/a))``
    the ratio is ``(g + u - 1)/(g - u + 1)``; the expression is
    continuous across ``a = b``, where it reduces to ``u``.
    """
    if not (0 < a < 1 and 0 < b < 1):
        raise ValueError("need transition rates strictly inside (0, 1)")
    if t <= 0:
        raise ValueError("t must be positive")
    u = math.exp(-(a + b) * t)
    ratio = a / b
    g = math.sqrt((1.0 + u * ratio) * (1.0 + u / ratio))
    return (g + u - 1.0) / (g - u + 1.0)


def two_state_sigma(a, b):
    """Exact log-Sobolev constant of the two-state chain.

    ``(a - b)/(log a - log b)`` away from the diagonal, with the
    removable singularity filled by its limit ``a`` at ``a = b``.
    """
    if not (0 < a < 1 and 0 < b < 1):
        raise ValueError("need transition rates strictly inside (0, 1)")
    if abs(a - b) <= 1e-12 * max(a, b):
        return 0.5 * (a + b)
    return (a - b) / (math.log(a) - math.log(b))


def spectral_gap(chain):
    """Smallest nonzero eigenvalue of ``I - (K + K^*)/2``.

    The generator is symmetrized by conjugating with ``diag(sqrt(pi))``,
    which makes it a genuine symmetric matrix without moving its
    spectrum.  Raises ``ValueError`` when the zero eigenvalue is not
    simple (a disconnected chain has no positive gap).
    """
    if chain.n < 2:
        raise ValueError("need at least two states")
    R = chain.reversibilization()
    L = np.eye(chain.n) - R
    root = np.sqrt(chain.pi)
    sym = (root[:, None] * L) / root[None, :]
    sym = 0.5 * (sym + sym.T)
    eigs = np.linalg.eigvalsh(sym)
    if abs(eigs[0]) > 1e-8:
        raise ValueError("generator has no zero eigenvalue; kernel invalid")
    gap = float(eigs[1])
    if gap <= 1e-12:
        raise ValueError("zero eigenvalue is not simple; chain is reducible")
    return gap


LscEntry = namedtuple("LscEntry", ["t", "rho", "sigma_lb", "reliable"])


@dataclass
class LscReport:
    """Grid of contraction-based log-Sobolev lower bounds.

    Every entry's ``sigma_lb`` is a rigorous lower bound on its own;
    ``best`` is simply the largest among entries flagged reliable
    (very small ``t`` makes ``-log(rho)/(2t)`` a 0/0 ratio whose
    floating-point value stops being trustworthy).  ``sigma_upper`` is
    half the spectral gap, valid for every chain.
    """

    entries: list = field(default_factory=list)
    best: float = -math.inf
    best_t: float = math.nan
    sigma_upper: float = math.nan
    gap: float = math.nan


def sigma_lower_bound(chain, t_grid=None, reliable_t_min=1e-6):
    """Evaluate the contraction bound on a grid of times.

    The default grid is ``t = 2^-k`` for ``k = 0..20``; smaller times
    give tighter bounds until roundoff takes over, which the
    ``reliable`` flag (``t >= reliable_t_min``) demarcates.
    """
    if t_grid is None:
        t_grid = [2.0 ** (-k) for k in range(21)]
    entries = []
    best = -math.inf
    best_t = math.nan
    for t in t_grid:
        rho_t = rho(chain, t)
        if rho_t <= 0:
            lb = math.inf
        else:
            lb = -math.log(rho_t) / (2.0 * t)
        reliable = t >= reliable_t_min
        entries.append(LscEntry(t=float(t), rho=float(rho_t), sigma_lb=float(lb), reliable=reliable))
        if reliable and lb > best:
            best = lb
            best_t = float(t)
    gap = spectral_gap(chain)
    return LscReport(
        entries=entries,
        best=best,
        best_t=best_t,
        sigma_upper=0.5 * gap,
        gap=gap,
    )


def dirichlet_and_entropy(chain, x):
    """Dirichlet form and entropy of ``x`` for the reversibilized chain.

    Returns ``(E, Ent)`` with ``E = <x, (I - R) x>_pi`` and
    ``Ent = sum_i pi_i x_i^2 log(x_i^2 / ||x||^2_pi)``; any log-Sobolev
    constant ``sigma`` satisfies ``E >= sigma * Ent``.  Zero entries
    contribute zero entropy.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (chain.n,):
        raise ValueError("x has wrong shape %s" % (x.shape,))
    R = chain.reversibilization()
    resid = x - R @ x
    dirichlet = float(np.sum(chain.pi * x * resid))
    sq = x * x
    total = float(np.sum(chain.pi * sq))
    if total <= 0:
        raise ValueError("x must be nonzero")
    mask = sq > 0
    ent = float(np.sum(chain.pi[mask] * sq[mask] * np.log(sq[mask] / total)))
    return dirichlet, ent


@dataclass
class HypercontractivityReport:
    """Numerical confirmation that ``||M||_{2 -> q} = 1`` over ``L(pi)``."""

    q: float
    q_max: float
    kappa: float
    tight_tau: float
    norm_estimate: float
    deviation: float
    result: PowerResult


def hypercontractive_check(chain, M=None, q=None, tol=1e-12, max_iters=10000):
    """Check hypercontractivity of a stochastic kernel at exponent ``q``.

    ``M`` defaults to the chain's kernel and must be row-stochastic with
    the chain's stationary distribution.  With ``kappa`` the projective
    contraction ratio of ``M M^*``, the operator norm from ``L^2(pi)``
    to ``L^q(pi)`` equals one for all ``q`` up to ``1 + 1/kappa``;
    ``q`` defaults to that endpoint.  The equivalent adjoint problem
    (matrix ``M^*``, output norm weighted-2, input norm weighted-``q*``)
    is run through :func:`solve`; its sharp rate is ``(q - 1) kappa``,
    which reaches one exactly at the endpoint, so the solver is run in
    forced mode and convergence there rests on the maximizer being the
    constant vector, the solver's default start.
    """
    if M is None:
        M = chain.K
    M = np.asarray(M, dtype=float)
    if M.shape != (chain.n, chain.n):
        raise ValueError("M has wrong shape %s" % (M.shape,))
    if np.any(M < 0) or np.abs(M.sum(axis=1) - 1.0).max() > 1e-9:
        raise ValueError("M must be row-stochastic")
    if np.abs(chain.pi @ M - chain.pi).sum() > 1e-9:
        raise ValueError("M must preserve the chain's stationary distribution")
    M_star = adjoint(M, chain.pi)
    kappa = birkhoff_ratio(M @ M_star)
    q_max = math.inf if kappa == 0 else 1.0 + 1.0 / kappa
    if q is None:
        q = min(q_max, 1e6)
    q = float(q)
    if not (2.0 <= q <= q_max + 1e-12):
        raise ValueError(
            "q=%g outside the certified hypercontractive range [2, %g]"
            % (q, q_max)
        )
    alpha = WeightedPNorm(chain.pi, 2.0)
    beta = WeightedPNorm(chain.pi, dual_exponent(q))
    inst = ProblemInstance(M_star, alpha, beta)
    res = solve(inst, tol=tol, max_iters=max_iters, force=True)
    return HypercontractivityReport(
        q=q,
        q_max=q_max,
        kappa=float(kappa),
        tight_tau=float((q - 1.0) * kappa),
        norm_estimate=res.norm_estimate,
        deviation=abs(res.norm_estimate - 1.0),
        result=res,
    )
