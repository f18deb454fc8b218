"""Certified fixed-point iteration for mixed subordinate norms.

For a nonnegative matrix ``A`` and a pair of norms (``alpha`` on the
output space, ``beta`` on the input space), the quantity of interest is

    ``max { ||A x||_alpha / ||x||_beta : x != 0 }``,

attained on the positive cone when ``A^T A`` is irreducible.  The
iteration composes four ray maps -- multiply by ``A``, apply the duality
map of ``alpha``, multiply by ``A^T``, apply the duality map of the dual
of ``beta`` -- and each factor contracts (or at least does not expand)
the projective metric of the cone.  The product of the four contraction
ratios is the certificate ``tau``: when ``tau < 1`` the composite map is
a metric contraction, its fixed ray is the unique maximizer, and both an
a-priori geometric error bound and an a-posteriori residual bound come
out of the standard contraction-mapping estimates.  When ``tau >= 1``
nothing is certified and :func:`solve` refuses to iterate unless forced.

The certificate constants:

* ``r``      -- coordinates of unit-sphere vectors of ``beta`` are at
  most ``r``, so projective distance controls sup-norm distance on the
  sphere (``r = max_i 1/||e_i||_beta``, an equality for these monotone
  norms).
* ``gamma``  -- ``||ones||_beta``, converting sup-norm error back into
  ``beta`` error.  The statement-level constant that uses the output
  norm instead can be reconstructed as ``C * max_x ||x||_alpha/||x||_inf``;
  the proof-level ``gamma`` used here is the input-norm variant, and the
  certificate carries it explicitly.  When ``beta`` itself has no closed
  form (its spec is given through ``beta_star``), a feasible-splitting
  upper bound on ``gamma`` is used, which keeps every reported error
  bound valid, merely not tight.
"""

from __future__ import annotations

import math
from collections import namedtuple
from dataclasses import dataclass, field

import numpy as np

from .cone import birkhoff_ratio, hilbert_distance
from .norms import (
    ComposedNorm,
    DualComposedNorm,
    NotEvaluableError,
    WeightedPNorm,
    _outer_combine,
    _weighted_value,
    dual_exponent,
    dual_weights,
    duality_map,
    duality_map_contraction_bound,
    unit_basis_norms,
)

__all__ = [
    "CertificateError",
    "Certificate",
    "PowerResult",
    "ProblemInstance",
    "check_gram_irreducible",
    "apply_S",
    "certificate",
    "solve",
    "corollary_tau",
    "CorollaryTau",
]


class CertificateError(RuntimeError):
    """No contraction certificate: ``tau >= 1`` and the caller did not force."""


def check_gram_irreducible(A, zero_tol=0.0):
    """True when the support graph of ``A^T A`` is connected.

    The graph joins input coordinates i, j whenever some row of ``A`` is
    positive at both.  A zero column is an isolated vertex, so any zero
    column returns False.  Connectivity of this (undirected) graph is
    exactly irreducibility of the Gram matrix.
    """
    S = np.asarray(A, dtype=float) > zero_tol
    if S.ndim != 2:
        raise ValueError("expected a matrix")
    if not S.any(axis=0).all():
        return False
    G = (S.T.astype(np.int64) @ S.astype(np.int64)) > 0
    n = G.shape[0]
    visited = np.zeros(n, dtype=bool)
    visited[0] = True
    frontier = visited.copy()
    while frontier.any():
        reach = G[frontier].any(axis=0) & ~visited
        visited |= reach
        frontier = reach
    return bool(visited.all())


def _evaluable(spec):
    if isinstance(spec, DualComposedNorm):
        return spec.disjoint
    return True


def _own_rep(spec):
    """A WeightedPNorm/ComposedNorm whose value equals the described norm."""
    if isinstance(spec, (WeightedPNorm, ComposedNorm)):
        return spec
    if isinstance(spec, DualComposedNorm):
        if not spec.disjoint:
            raise NotEvaluableError(
                "min-form norm with overlapping supports cannot serve here: "
                "its value and duality map have no closed form"
            )
        return ComposedNorm(spec.terms, spec.t)
    raise TypeError("unknown norm spec %r" % (spec,))


def _dual_rep(spec):
    """A WeightedPNorm/ComposedNorm whose value equals the described dual norm."""
    if isinstance(spec, WeightedPNorm):
        return spec.dual()
    if isinstance(spec, DualComposedNorm):
        return spec.dual()
    if isinstance(spec, ComposedNorm):
        if spec.s == 1.0 or not spec.disjoint:
            raise NotEvaluableError(
                "the dual of this composed norm has no explicit duality map; "
                "pass the problem through a min-form spec instead"
            )
        # disjoint supports collapse the dual's infimal splitting, so the
        # dual is itself an explicit composed norm on conjugate data
        return ComposedNorm([t.dual() for t in spec.terms], dual_exponent(spec.s))
    raise TypeError("unknown norm spec %r" % (spec,))


def _require_norm(spec, label):
    """Reject seminorms: iteration theory needs strictly monotonic norms."""
    if isinstance(spec, WeightedPNorm) and not spec.strict:
        raise ValueError(
            "%s must be a norm with strictly positive weights; zero weights "
            "make it a seminorm and break strict monotonicity" % label
        )
    # composed specs are covered by their construction invariant


class ProblemInstance:
    """A nonnegative matrix together with output and input norm specs.

    ``alpha`` lives on the output space (rows of ``A``), ``beta`` on the
    input space (columns).  Either ``beta`` or ``beta_star`` must be
    given: ``beta_star`` names the *dual* of the input norm directly,
    for input norms that only exist as duals of explicit specs (their
    own min-form would need an infinite outer exponent).

    Construction validates dimensions, nonnegativity, and that both maps
    the iteration applies (duality map of ``alpha``, duality map of the
    dual of ``beta``) are explicit and belong to genuinely monotonic
    norms.  Irreducibility of ``A^T A`` is deliberately not required
    here: certificates of reducible instances are still meaningful (and
    block-diagonal operators appear in the structured families below);
    only :func:`solve` insists on it.
    """

    def __init__(self, A, alpha, beta=None, *, beta_star=None):
        self.A = np.asarray(A, dtype=float)
        if self.A.ndim != 2:
            raise ValueError("A must be a matrix, got shape %s" % (self.A.shape,))
        if not np.all(np.isfinite(self.A)):
            raise ValueError("A has non-finite entries")
        if np.any(self.A < 0):
            raise ValueError("A must be entrywise nonnegative")
        m, n = self.A.shape
        if (beta is None) == (beta_star is None):
            raise ValueError("give exactly one of beta or beta_star")
        self.alpha = alpha
        self.alpha_own = _own_rep(alpha)
        _require_norm(self.alpha_own, "alpha")
        if self.alpha_own.dim != m:
            raise ValueError(
                "alpha lives on R^%d but A has %d rows" % (self.alpha_own.dim, m)
            )
        self.beta = beta
        if beta is not None:
            self.beta_star = _dual_rep(beta)
            beta_dim = beta.dim
        else:
            self.beta_star = _own_rep(beta_star)
            beta_dim = self.beta_star.dim
        _require_norm(self.beta_star, "the dual of beta")
        if beta_dim != n:
            raise ValueError(
                "beta lives on R^%d but A has %d columns" % (beta_dim, n)
            )

    @property
    def shape(self):
        return self.A.shape


def apply_S(inst, x):
    """One step of the fixed-point map: ``J_beta*(A^T J_alpha(A x))``.

    The result lies on the unit sphere of ``beta`` (duality maps land on
    the dual unit sphere), so iterates need no separate normalization.
    Raises ``ValueError`` when ``A x = 0``: such an ``x`` is supported
    entirely on zero columns and the map is undefined there.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size != inst.A.shape[1]:
        raise ValueError("x has wrong shape %s" % (x.shape,))
    if np.any(x < 0) or not np.any(x > 0):
        raise ValueError("x must be nonnegative and nonzero")
    y = inst.A @ x
    if not np.any(y > 0):
        raise ValueError("A x = 0: x is supported on zero columns of A")
    g = duality_map(inst.alpha_own, y)
    z = inst.A.T @ g
    return duality_map(inst.beta_star, z)


@dataclass
class Certificate:
    """Contraction certificate for a problem instance.

    ``tau = kappa_A * kappa_At * bound_J_alpha * bound_J_beta_star`` is
    an upper bound for the projective-metric Lipschitz constant of the
    fixed-point map; ``tau < 1`` certifies global convergence.  ``r``
    and ``gamma`` convert projective error into sup-norm and input-norm
    error; ``gamma_is_exact`` records whether ``gamma`` is the exact
    ``||ones||_beta`` or a feasible-splitting upper bound.
    """

    kappa_A: float
    kappa_At: float
    bound_J_alpha: float
    bound_J_beta_star: float
    tau: float
    r: float
    gamma: float
    gamma_is_exact: bool = True

    @property
    def contracts(self):
        return self.tau < 1.0

    def as_dict(self):
        return {
            "kappa_A": self.kappa_A,
            "kappa_At": self.kappa_At,
            "bound_J_alpha": self.bound_J_alpha,
            "bound_J_beta_star": self.bound_J_beta_star,
            "tau": self.tau,
            "r": self.r,
            "gamma": self.gamma,
            "gamma_is_exact": self.gamma_is_exact,
        }


def _gamma_upper_bound(beta_star):
    """Upper bound on ``||ones||_beta`` via one feasible splitting.

    ``beta`` is the dual of the explicit ``beta_star``; its value at any
    point is an infimum over splittings, so any feasible splitting gives
    a valid upper bound.  Ones is split proportionally to support
    coverage.
    """
    terms = beta_star.terms
    outer = dual_exponent(beta_star.s)
    coverage = np.zeros(beta_star.dim)
    for t in terms:
        coverage += t.support.astype(float)
    vals = []
    for t in terms:
        u = np.where(t.support, 1.0 / np.maximum(coverage, 1.0), 0.0)
        vals.append(_weighted_value(dual_weights(t.weights, t.p), dual_exponent(t.p), u))
    return float(_outer_combine(vals, outer))


def certificate(inst):
    """Assemble the four-factor contraction certificate for ``inst``."""
    kappa_A = birkhoff_ratio(inst.A)
    kappa_At = birkhoff_ratio(inst.A.T)
    bound_a = duality_map_contraction_bound(inst.alpha_own, "primal")
    bound_b = duality_map_contraction_bound(inst.beta_star, "primal")
    tau = kappa_A * kappa_At * bound_a * bound_b
    if inst.beta is not None and _evaluable(inst.beta):
        basis = unit_basis_norms(inst.beta)
        r = float(1.0 / basis.min())
        gamma = float(inst.beta.value(np.ones(inst.beta.dim)))
        gamma_exact = True
    else:
        # beta itself has no closed form; its dual does.  On the unit
        # ball of a monotonic norm the i-th coordinate maxes out at the
        # dual norm of e_i, which for such norms equals 1/||e_i||_beta.
        r = float(unit_basis_norms(inst.beta_star).max())
        gamma = _gamma_upper_bound(inst.beta_star)
        gamma_exact = False
    return Certificate(
        kappa_A=float(kappa_A),
        kappa_At=float(kappa_At),
        bound_J_alpha=float(bound_a),
        bound_J_beta_star=float(bound_b),
        tau=float(tau),
        r=r,
        gamma=gamma,
        gamma_is_exact=gamma_exact,
    )


@dataclass
class PowerResult:
    """Outcome of :func:`solve`.

    ``norm_estimate`` is always a valid lower bound for the true norm
    (the maximizer is feasible).  On a certified converged run,
    ``norm_estimate / (1 - gap)`` with ``gap = min(a_priori_gap,
    a_posteriori_gap)`` is a valid upper bound; :attr:`upper` computes
    it, returning ``inf`` when no upper claim can be made.
    ``residual_history[k]`` is the projective distance between iterates
    k and k+1 (scale-free, defined even without a certificate);
    ``norm_history`` (kept on request) logs the objective value at every
    iterate.
    """

    norm_estimate: float
    maximizer: np.ndarray
    iterations: int
    converged: bool
    a_priori_gap: float
    a_posteriori_gap: float
    certificate: Certificate
    residual_history: list = field(default_factory=list)
    norm_history: list | None = None
    iterate_history: list | None = None

    @property
    def lower(self):
        return self.norm_estimate

    @property
    def upper(self):
        gap = min(self.a_priori_gap, self.a_posteriori_gap)
        if self.converged and self.certificate.contracts and gap < 1.0:
            return self.norm_estimate / (1.0 - gap)
        return math.inf


def solve(inst, tol=1e-10, max_iters=100000, x0=None, force=False, keep_history=False):
    """Run the certified fixed-point iteration.

    Parameters
    ----------
    inst : ProblemInstance
    tol : float
        Target sup-norm accuracy of the maximizer.  The stopping rule is
        the a-posteriori contraction bound
        ``r * tau/(1-tau) * d(x_{k-1}, x_k) <= tol``.
    max_iters : int
        Iteration budget.  Exhausting it returns the last iterate with
        ``converged=False`` (no exception; the command-line front end
        turns this into its own failure code).
    x0 : array, optional
        Nonnegative nonzero start; defaults to all-ones.  Strictly
        positive starts keep every iterate strictly positive.
    force : bool
        Iterate even without a contraction certificate (``tau >= 1``).
        Convergence is then judged heuristically from the raw projective
        residual ``d(x_{k-1}, x_k) <= tol`` and the error-gap fields are
        ``inf``; the returned estimate is still a valid lower bound.
    keep_history : bool
        Also record the objective value and the iterate at every step.

    Raises
    ------
    CertificateError
        When ``tau >= 1`` and ``force`` is not set.
    ValueError
        When ``A^T A`` is reducible: the maximizer then need not be
        unique or strictly positive and no contraction argument applies,
        so the iteration refuses to run regardless of ``force``.
    """
    if not check_gram_irreducible(inst.A):
        raise ValueError(
            "A^T A is reducible (disconnected support); restrict the problem "
            "to a connected block before iterating"
        )
    cert = certificate(inst)
    if not cert.contracts and not force:
        raise CertificateError(
            "no contraction certificate: tau = %.6g >= 1; the iteration may "
            "have several fixed rays. Enable force to run heuristically."
            % cert.tau
        )
    n = inst.A.shape[1]
    if x0 is None:
        x = np.ones(n)
    else:
        x = np.asarray(x0, dtype=float).copy()
        if x.shape != (n,):
            raise ValueError("x0 has wrong shape %s" % (x.shape,))
        if np.any(x <= 0):
            raise ValueError("x0 must be strictly positive when provided")
    if inst.beta is not None and _evaluable(inst.beta):
        x = x / inst.beta.value(x)

    residuals = []
    norm_hist = [] if keep_history else None
    iter_hist = [] if keep_history else None
    banach = cert.r * cert.tau / (1.0 - cert.tau) if cert.contracts else math.inf
    d_first = math.inf
    d_last = math.inf
    converged = False
    iterations = 0
    for k in range(1, max_iters + 1):
        x_next = apply_S(inst, x)
        d = hilbert_distance(x, x_next)
        residuals.append(d)
        if keep_history:
            norm_hist.append(float(inst.alpha_own.value(inst.A @ x_next)))
            iter_hist.append(x_next.copy())
        if k == 1:
            d_first = d
        d_last = d
        x = x_next
        iterations = k
        if cert.contracts:
            converged = banach * d <= tol
        else:
            converged = d <= tol
        if converged:
            break

    estimate = float(inst.alpha_own.value(inst.A @ x))
    if cert.contracts and math.isfinite(d_first):
        big_c = cert.r * d_first / (1.0 - cert.tau)
        a_priori = cert.tau ** iterations * big_c * cert.gamma
        a_posteriori = cert.gamma * banach * d_last
    else:
        a_priori = math.inf
        a_posteriori = math.inf
    return PowerResult(
        norm_estimate=estimate,
        maximizer=x,
        iterations=iterations,
        converged=converged,
        a_priori_gap=float(a_priori),
        a_posteriori_gap=float(a_posteriori),
        certificate=cert,
        residual_history=residuals,
        norm_history=norm_hist,
        iterate_history=iter_hist,
    )


# -- structured problem families with closed-form rates ----------------------

CorollaryTau = namedtuple("CorollaryTau", ["closed_form", "certified", "instance"])

_SHAPES = (
    "two_weighted",
    "scaled_stack",
    "shared_image",
    "paired_blocks",
    "overlapping_min",
    "powered_image",
)


def _positive_matrix(M, name):
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.size == 0:
        raise ValueError("%s must be a nonempty matrix" % name)
    if np.any(M <= 0) or not np.all(np.isfinite(M)):
        raise ValueError("%s must be strictly positive" % name)
    return M


def _exponent_in(value, name, lo=1.0, hi=math.inf, lo_strict=True):
    v = float(value)
    ok = (v > lo if lo_strict else v >= lo) and v < hi
    if not ok:
        raise ValueError(
            "parameter %s=%g outside the shape's admissible range" % (name, v)
        )
    return v


def _ones_block(total, start, stop):
    w = np.zeros(total)
    w[start:stop] = 1.0
    return w


def corollary_tau(config):
    """Closed-form vs. certified contraction rate for a structured family.

    ``config`` is a dict with a ``shape`` key naming one of six problem
    families with a known closed-form rate, plus the family's matrices
    and exponents.  Builds the corresponding :class:`ProblemInstance`
    and returns ``(closed_form, certified, instance)`` where
    ``certified`` is the generic :func:`certificate` rate of the built
    instance.  The two agree (to roundoff) for admissible parameters;
    that agreement is an acceptance-level invariant of the library.

    Shapes and their required keys:

    * ``two_weighted``   -- A, p, q (optional alpha_weights, beta_weights):
      weighted p vs q norms, rate ``kappa(A)^2 (p-1)/(q-1)``.
    * ``scaled_stack``   -- A, B, p, q, r (optional coeff_a, coeff_b):
      stacked [A; B] scored by ``ca*||.||_p + cb*||.||_q`` over an l^r
      ball, rate ``kappa([A;B])^2 (p+q-2)/(r-1)``.
    * ``shared_image``   -- A, p, q, r (q, r >= 2): [A A] with an
      l^2-coupled (q, r) input norm, rate ``kappa([A A])^2 (p-1)``.
    * ``paired_blocks``  -- A, B, p, q, r, s, theta
      (1 < s <= theta <= p, q, r): diag(A, B) with theta-powered sums on
      both sides; the block-diagonal operator has contraction ratio 1
      (its columns are not comparable), so the rate is
      ``(p+q-theta-1)/(s-1)`` with no kappa factor.
    * ``overlapping_min`` -- A, B, p, q, r: [[A, A, 0], [0, B, B]] with
      an input norm given only through its dual (outer-1 combination
      with overlapping supports); rate ``(p-1)/(q-1) + (p-1)/(r-1)``,
      again with kappa = 1 exactly.
    * ``powered_image``  -- A, B, p, q, r: entrywise p-th powers of Bx
      pushed through the rows of A and scored in l^q, over an l^r ball;
      rate ``kappa(B) kappa(B^T) (pq-1)/(r-1)``.
    """
    if not isinstance(config, dict) or "shape" not in config:
        raise ValueError("config must be a dict with a 'shape' key")
    shape = config["shape"]
    if shape not in _SHAPES:
        raise ValueError("unknown shape %r; expected one of %s" % (shape, _SHAPES))

    if shape == "two_weighted":
        A = _positive_matrix(config["A"], "A")
        p = _exponent_in(config["p"], "p")
        q = _exponent_in(config["q"], "q")
        m, n = A.shape
        aw = np.asarray(config.get("alpha_weights", np.ones(m)), dtype=float)
        bw = np.asarray(config.get("beta_weights", np.ones(n)), dtype=float)
        alpha = WeightedPNorm(aw, p)
        beta = WeightedPNorm(bw, q)
        inst = ProblemInstance(A, alpha, beta)
        closed = birkhoff_ratio(A) ** 2 * (p - 1.0) / (q - 1.0)

    elif shape == "scaled_stack":
        A = _positive_matrix(config["A"], "A")
        B = _positive_matrix(config["B"], "B")
        if A.shape[1] != B.shape[1]:
            raise ValueError("A and B need the same number of columns")
        if A.shape[0] < 2 or B.shape[0] < 2:
            raise ValueError(
                "each stacked block needs at least two rows (outer exponent 1 "
                "demands two positive weights per term)"
            )
        p = _exponent_in(config["p"], "p")
        q = _exponent_in(config["q"], "q")
        r = _exponent_in(config["r"], "r")
        ca = float(config.get("coeff_a", 2.0))
        cb = float(config.get("coeff_b", 3.0))
        if ca <= 0 or cb <= 0:
            raise ValueError("scale coefficients must be positive")
        M = np.vstack([A, B])
        m1, m2 = A.shape[0], B.shape[0]
        alpha = ComposedNorm(
            [
                WeightedPNorm(ca**p * _ones_block(m1 + m2, 0, m1), p),
                WeightedPNorm(cb**q * _ones_block(m1 + m2, m1, m1 + m2), q),
            ],
            s=1.0,
        )
        beta = WeightedPNorm(np.ones(A.shape[1]), r)
        inst = ProblemInstance(M, alpha, beta)
        closed = birkhoff_ratio(M) ** 2 * (p + q - 2.0) / (r - 1.0)

    elif shape == "shared_image":
        A = _positive_matrix(config["A"], "A")
        p = _exponent_in(config["p"], "p")
        q = _exponent_in(config["q"], "q", lo=2.0, lo_strict=False)
        r = _exponent_in(config["r"], "r", lo=2.0, lo_strict=False)
        m, n = A.shape
        M = np.hstack([A, A])
        alpha = WeightedPNorm(np.ones(m), p)
        beta = DualComposedNorm(
            [
                WeightedPNorm(_ones_block(2 * n, 0, n), q),
                WeightedPNorm(_ones_block(2 * n, n, 2 * n), r),
            ],
            t=2.0,
        )
        inst = ProblemInstance(M, alpha, beta)
        closed = birkhoff_ratio(M) ** 2 * (p - 1.0)

    elif shape == "paired_blocks":
        A = _positive_matrix(config["A"], "A")
        B = _positive_matrix(config["B"], "B")
        theta = _exponent_in(config["theta"], "theta")
        p = _exponent_in(config["p"], "p", lo=theta, lo_strict=False)
        q = _exponent_in(config["q"], "q", lo=theta, lo_strict=False)
        r = _exponent_in(config["r"], "r", lo=theta, lo_strict=False)
        s = _exponent_in(config["s"], "s")
        if s > theta:
            raise ValueError(
                "parameter s=%g outside the shape's admissible range "
                "(need s <= theta)" % s
            )
        m1, n1 = A.shape
        m2, n2 = B.shape
        M = np.zeros((m1 + m2, n1 + n2))
        M[:m1, :n1] = A
        M[m1:, n1:] = B
        alpha = ComposedNorm(
            [
                WeightedPNorm(_ones_block(m1 + m2, 0, m1), p),
                WeightedPNorm(_ones_block(m1 + m2, m1, m1 + m2), q),
            ],
            s=theta,
        )
        beta = DualComposedNorm(
            [
                WeightedPNorm(_ones_block(n1 + n2, 0, n1), r),
                WeightedPNorm(_ones_block(n1 + n2, n1, n1 + n2), s),
            ],
            t=theta,
        )
        inst = ProblemInstance(M, alpha, beta)
        # diag(A, B) maps no pair of basis rays to comparable images, so
        # its contraction ratio is exactly 1 and drops out of the rate.
        closed = (p + q - theta - 1.0) / (s - 1.0)

    elif shape == "overlapping_min":
        A = _positive_matrix(config["A"], "A")
        B = _positive_matrix(config["B"], "B")
        if A.shape[1] != B.shape[1]:
            raise ValueError("A and B need the same number of columns")
        p = _exponent_in(config["p"], "p")
        q = _exponent_in(config["q"], "q")
        r = _exponent_in(config["r"], "r")
        m1, m2 = A.shape[0], B.shape[0]
        n = A.shape[1]
        M = np.zeros((m1 + m2, 3 * n))
        M[:m1, :n] = A
        M[:m1, n : 2 * n] = A
        M[m1:, n : 2 * n] = B
        M[m1:, 2 * n :] = B
        alpha = WeightedPNorm(np.ones(m1 + m2), p)
        # the input norm exists only as the dual of this outer-1
        # combination; its two supports share the middle block
        w1 = _ones_block(3 * n, 0, n) + _ones_block(3 * n, 2 * n, 3 * n)
        w2 = _ones_block(3 * n, n, 2 * n) + _ones_block(3 * n, 2 * n, 3 * n)
        beta_star = ComposedNorm(
            [
                WeightedPNorm(w1, dual_exponent(q)),
                WeightedPNorm(w2, dual_exponent(r)),
            ],
            s=1.0,
        )
        inst = ProblemInstance(M, alpha, beta_star=beta_star)
        closed = (p - 1.0) / (q - 1.0) + (p - 1.0) / (r - 1.0)

    else:  # powered_image
        A = _positive_matrix(config["A"], "A")
        B = _positive_matrix(config["B"], "B")
        if A.shape[1] != B.shape[0]:
            raise ValueError("A needs as many columns as B has rows")
        p = _exponent_in(config["p"], "p")
        q = _exponent_in(config["q"], "q")
        r = _exponent_in(config["r"], "r")
        alpha = ComposedNorm(
            [WeightedPNorm(row, p) for row in A],
            s=p * q,
        )
        beta = WeightedPNorm(np.ones(B.shape[1]), r)
        inst = ProblemInstance(B, alpha, beta)
        closed = (
            birkhoff_ratio(B) * birkhoff_ratio(B.T) * (p * q - 1.0) / (r - 1.0)
        )

    cert = certificate(inst)
    return CorollaryTau(closed_form=float(closed), certified=cert.tau, instance=inst)
