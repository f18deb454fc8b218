"""Weighted-power norms, their sums, and the duals of such sums.

Three norm families, closed under duality in pairs:

* ``WeightedPNorm``   -- ``(sum_i w_i |x_i|^p)^(1/p)``, exponent in (1, inf).
* ``ComposedNorm``    -- an outer ``l^s`` combination of weighted-power
  seminorms, ``(sum_k ||x||_{w_k,p_k}^s)^(1/s)``; the weight supports may
  overlap, only their union must cover every coordinate.
* ``DualComposedNorm``-- the dual of a composed norm, i.e. an infimal
  splitting ``min { (sum_k ||u_k||_{w_k,q_k}^t)^(1/t) : sum u_k = x }``
  with each ``u_k`` supported where its weights are.  Its value has a
  closed form only when the supports are pairwise disjoint (the
  splitting is then forced), but its *dual* is always an explicit
  composed norm, which is all the power iteration ever needs.

The duality map of a norm sends ``x`` to the vector ``J(x)`` with
``<J(x), x> = ||x||`` and dual norm 1 (the normalized gradient).  For
these families it is explicit, and its contraction ratio with respect
to the projective metric of the positive cone is bounded by exponent
arithmetic alone; see :func:`duality_map_contraction_bound`.

Specs are plain immutable-by-convention objects; nothing here mutates
weights after construction.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "NotEvaluableError",
    "WeightedPNorm",
    "ComposedNorm",
    "DualComposedNorm",
    "dual_exponent",
    "dual_weights",
    "phi",
    "norm_value",
    "dual_norm_value",
    "duality_map",
    "duality_map_contraction_bound",
    "unit_basis_norms",
    "spec_to_dict",
    "spec_from_dict",
]


class NotEvaluableError(ValueError):
    """The requested quantity has no closed form for this spec.

    Raised e.g. when evaluating a min-form norm whose weight supports
    overlap: the infimal splitting is a genuine optimization problem and
    this library does not solve it numerically.
    """


def dual_exponent(p):
    """Hoelder conjugate ``p/(p-1)``; maps 1 to inf and inf to 1."""
    p = float(p)
    if p < 1.0:
        raise ValueError("exponent must be >= 1, got %r" % p)
    if p == 1.0:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def dual_weights(weights, p):
    """Weights of the dual of a weighted-power norm.

    ``w_i* = w_i^(-1/(p-1))`` on the support, 0 elsewhere, so that the
    dual of ``||.||_{w,p}`` is ``||.||_{w*,p*}`` on vectors supported in
    ``supp(w)``.
    """
    w = np.asarray(weights, dtype=float)
    p = float(p)
    if p <= 1.0 or math.isinf(p):
        raise ValueError("term exponent must lie in (1, inf)")
    out = np.zeros_like(w)
    pos = w > 0
    out[pos] = w[pos] ** (-1.0 / (p - 1.0))
    return out


def phi(x, p):
    """Signed power map ``|x_i|^(p-2) x_i``, entrywise.

    Written as ``sign(x) |x|^(p-1)`` so the exponent stays positive for
    every ``p > 1`` and exact zeros map to exact zeros.
    """
    x = np.asarray(x, dtype=float)
    return np.sign(x) * np.abs(x) ** (float(p) - 1.0)


def _check_weights(weights):
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1:
        raise ValueError("weights must be a 1-D vector")
    if not np.all(np.isfinite(w)):
        raise ValueError("weights must be finite")
    if np.any(w < 0):
        raise ValueError("weights must be nonnegative")
    if not np.any(w > 0):
        raise ValueError("weights must not be all zero")
    return w


def _weighted_value(w, p, x):
    """Stable ``(sum w |x|^p)^(1/p)`` with the largest entry factored out."""
    ax = np.where(w > 0, np.abs(x), 0.0)
    m = float(ax.max()) if ax.size else 0.0
    if m == 0.0:
        return 0.0
    return m * float(np.sum(w * (ax / m) ** p)) ** (1.0 / p)


def _outer_combine(values, s):
    """Combine nonnegative term values with an outer ``l^s`` norm (s may be inf)."""
    v = np.asarray(values, dtype=float)
    m = float(v.max()) if v.size else 0.0
    if m == 0.0:
        return 0.0
    if math.isinf(s):
        return m
    return m * float(np.sum((v / m) ** s)) ** (1.0 / s)


class WeightedPNorm:
    """``||x||_{w,p} = (sum_i w_i |x_i|^p)^(1/p)`` with ``p`` in (1, inf).

    With a strictly positive weight vector this is a norm,
    differentiable away from the origin and strictly monotonic on the
    positive cone.  Zero weights are allowed (the object is then a
    seminorm, useful as a building block of :class:`ComposedNorm`);
    callers that need a genuine norm should check :attr:`strict`.
    """

    kind = "weighted_p"

    def __init__(self, weights, p):
        self.weights = _check_weights(weights)
        self.p = float(p)
        if not (1.0 < self.p < math.inf):
            raise ValueError("exponent must lie in (1, inf), got %r" % p)

    @property
    def dim(self):
        return self.weights.size

    @property
    def support(self):
        return self.weights > 0

    @property
    def strict(self):
        """True when this is a norm (all weights positive), not just a seminorm."""
        return bool(np.all(self.weights > 0))

    def value(self, x):
        x = _check_vector(x, self.dim)
        return _weighted_value(self.weights, self.p, x)

    def dual(self):
        return WeightedPNorm(dual_weights(self.weights, self.p), dual_exponent(self.p))

    def __repr__(self):
        return "WeightedPNorm(p=%g, dim=%d)" % (self.p, self.dim)


def _check_terms(terms):
    terms = tuple(terms)
    if not terms:
        raise ValueError("need at least one term")
    for t in terms:
        if not isinstance(t, WeightedPNorm):
            raise TypeError("terms must be WeightedPNorm instances")
    n = terms[0].dim
    for t in terms[1:]:
        if t.dim != n:
            raise ValueError("terms have mismatched dimensions")
    cover = np.zeros(n, dtype=bool)
    for t in terms:
        cover |= t.support
    if not cover.all():
        raise ValueError("term weight supports must jointly cover every coordinate")
    return terms


def _disjoint(terms):
    seen = np.zeros(terms[0].dim, dtype=bool)
    for t in terms:
        if np.any(seen & t.support):
            return False
        seen |= t.support
    return True


class ComposedNorm:
    """Outer ``l^s`` combination of weighted-power terms.

    ``||x|| = (sum_k ||x||_{w_k,p_k}^s)^(1/s)`` with ``s in [1, inf)``.
    The union of the term supports must cover every coordinate (this
    makes the combination a norm, strictly monotonic on the cone).
    Differentiability away from 0 holds automatically for ``s > 1``; for
    ``s = 1`` it additionally needs every term to carry at least two
    positive weights, and that condition is enforced at construction.
    """

    kind = "composed"

    def __init__(self, terms, s):
        self.terms = _check_terms(terms)
        self.s = float(s)
        if not (1.0 <= self.s < math.inf):
            raise ValueError("outer exponent must lie in [1, inf), got %r" % s)
        if self.s == 1.0:
            for k, t in enumerate(self.terms):
                if int(np.count_nonzero(t.support)) < 2:
                    raise ValueError(
                        "outer exponent 1 needs every term to have at least two "
                        "positive weights (term %d has fewer); the norm would not "
                        "be differentiable" % k
                    )

    @property
    def dim(self):
        return self.terms[0].dim

    @property
    def disjoint(self):
        """True when the term supports are pairwise disjoint (always recomputed)."""
        return _disjoint(self.terms)

    def value(self, x):
        x = _check_vector(x, self.dim)
        return _outer_combine([t.value(x) for t in self.terms], self.s)

    def dual(self):
        """Explicit dual spec: the min-form norm with conjugate data.

        Only defined for outer exponent > 1; the dual of an outer-1
        combination has outer exponent inf, which the min-form spec does
        not represent.
        """
        if self.s == 1.0:
            raise NotEvaluableError(
                "dual of an outer-1 combination has outer exponent inf; "
                "no min-form spec represents it"
            )
        return DualComposedNorm([t.dual() for t in self.terms], dual_exponent(self.s))

    def __repr__(self):
        return "ComposedNorm(s=%g, terms=%d, dim=%d)" % (self.s, len(self.terms), self.dim)


class DualComposedNorm:
    """Dual of a composed norm: an infimal splitting over the term supports.

    ``||x|| = min { (sum_k ||u_k||_{w_k,q_k}^t)^(1/t) : sum_k u_k = x,
    supp(u_k) <= supp(w_k) }`` with ``t in (1, inf)``.  When the term
    supports are pairwise disjoint the splitting is forced and the value
    collapses to the composed formula on the same data; otherwise the
    value has no closed form here (:class:`NotEvaluableError`), but the
    dual spec -- a plain :class:`ComposedNorm` with conjugate weights
    and exponents -- is always available, and that is the object used
    in iterations.
    """

    kind = "dual_composed"

    def __init__(self, terms, t):
        self.terms = _check_terms(terms)
        self.t = float(t)
        if not (1.0 < self.t < math.inf):
            raise ValueError("outer exponent must lie in (1, inf), got %r" % t)

    @property
    def dim(self):
        return self.terms[0].dim

    @property
    def disjoint(self):
        return _disjoint(self.terms)

    def value(self, x):
        if not self.disjoint:
            raise NotEvaluableError(
                "min-form norm with overlapping supports has no closed-form value"
            )
        x = _check_vector(x, self.dim)
        return _outer_combine([t.value(x) for t in self.terms], self.t)

    def dual(self):
        return ComposedNorm([t.dual() for t in self.terms], dual_exponent(self.t))

    def __repr__(self):
        return "DualComposedNorm(t=%g, terms=%d, dim=%d)" % (self.t, len(self.terms), self.dim)


def _check_vector(x, dim):
    v = np.asarray(x, dtype=float)
    if v.ndim != 1 or v.size != dim:
        raise ValueError("expected a vector of length %d, got shape %s" % (dim, v.shape))
    return v


# -- module-level operations -------------------------------------------------

def norm_value(spec, x):
    """Value of the described norm at ``x``.

    Raises :class:`NotEvaluableError` for a min-form spec whose supports
    overlap.
    """
    return spec.value(x)


def dual_norm_value(spec, x):
    """Value of the dual norm at ``x``.

    Explicit for weighted-power specs (infinite outside the weight
    support), for min-form specs (their dual is always a composed norm),
    and for composed specs with pairwise disjoint supports.  Composed
    specs with overlapping supports raise :class:`NotEvaluableError`.
    """
    if isinstance(spec, WeightedPNorm):
        x = _check_vector(x, spec.dim)
        if np.any((np.abs(x) > 0) & ~spec.support):
            return math.inf
        return _weighted_value(dual_weights(spec.weights, spec.p), dual_exponent(spec.p), x)
    if isinstance(spec, DualComposedNorm):
        return spec.dual().value(x)
    if isinstance(spec, ComposedNorm):
        if not spec.disjoint:
            raise NotEvaluableError(
                "dual of a composed norm with overlapping supports has no closed form"
            )
        x = _check_vector(x, spec.dim)
        vals = []
        for t in spec.terms:
            xk = np.where(t.support, x, 0.0)
            vals.append(
                _weighted_value(dual_weights(t.weights, t.p), dual_exponent(t.p), xk)
            )
        return _outer_combine(vals, dual_exponent(spec.s))
    raise TypeError("unknown norm spec %r" % (spec,))


def duality_map(spec, x):
    """Normalized gradient ``J(x)``: ``<J(x), x> = ||x||`` and ``||J(x)||_* = 1``.

    For weighted-power and composed specs this is the duality map of the
    spec's own norm.  A min-form spec is dualized first: the returned
    map is the explicit duality map of its dual composed norm, which is
    the map the power iteration applies.  ``J`` is invariant under
    positive scaling of ``x``; the input is normalized internally for
    conditioning.

    Raises ``ValueError`` when the norm value at ``x`` is zero (the map
    is undefined there).
    """
    if isinstance(spec, DualComposedNorm):
        return duality_map(spec.dual(), x)
    x = _check_vector(x, spec.dim)
    scale = float(np.abs(x).max())
    if scale == 0.0:
        raise ValueError("duality map is undefined at the origin")
    xn = x / scale
    if isinstance(spec, WeightedPNorm):
        v = spec.value(xn)
        if v == 0.0:
            raise ValueError("duality map undefined: seminorm vanishes at this point")
        return v ** (1.0 - spec.p) * spec.weights * phi(xn, spec.p)
    if isinstance(spec, ComposedNorm):
        v = spec.value(xn)
        if v == 0.0:
            raise ValueError("duality map undefined: norm vanishes at this point")
        acc = np.zeros(spec.dim)
        for t in spec.terms:
            vk = t.value(xn)
            if vk == 0.0:
                continue
            acc += vk ** (spec.s - t.p) * t.weights * phi(xn, t.p)
        return v ** (1.0 - spec.s) * acc
    raise TypeError("unknown norm spec %r" % (spec,))


def duality_map_contraction_bound(spec, side="primal"):
    """Projective-metric contraction bound for a norm's duality map.

    ``side="primal"`` bounds the map of the norm itself; for a
    weighted-power norm the bound ``p - 1`` is exact, for a composed
    norm it is ``(s-1) + sum_k max(0, p_k - s)``.  ``side="dual"``
    bounds the map of the dual norm, computed by conjugating every
    exponent first; in particular the dual side of a min-form spec is
    ``(t*-1) + sum_k max(0, q_k*-t*)`` with ``*`` the Hoelder conjugate.
    That conjugated form is the one consistent with closed-form rates of
    the structured problem families; see ``power.corollary_tau``.
    """
    if side not in ("primal", "dual"):
        raise ValueError("side must be 'primal' or 'dual'")
    if isinstance(spec, WeightedPNorm):
        p = spec.p if side == "primal" else dual_exponent(spec.p)
        return p - 1.0
    if isinstance(spec, ComposedNorm):
        if side == "primal":
            s = spec.s
            ps = [t.p for t in spec.terms]
        else:
            if spec.s == 1.0:
                raise NotEvaluableError(
                    "dual of an outer-1 combination is not differentiable; "
                    "no contraction bound applies"
                )
            if not spec.disjoint:
                raise NotEvaluableError(
                    "dual of a composed norm with overlapping supports has no "
                    "explicit duality map"
                )
            s = dual_exponent(spec.s)
            ps = [dual_exponent(t.p) for t in spec.terms]
        return (s - 1.0) + sum(max(0.0, p - s) for p in ps)
    if isinstance(spec, DualComposedNorm):
        if side == "primal":
            if not spec.disjoint:
                raise NotEvaluableError(
                    "min-form norm with overlapping supports has no explicit "
                    "duality map of its own"
                )
            s = spec.t
            ps = [t.p for t in spec.terms]
        else:
            s = dual_exponent(spec.t)
            ps = [dual_exponent(t.p) for t in spec.terms]
        return (s - 1.0) + sum(max(0.0, p - s) for p in ps)
    raise TypeError("unknown norm spec %r" % (spec,))


def unit_basis_norms(spec):
    """Vector of norms of the standard basis vectors.

    Cheap closed form: the k-th term contributes ``w_{k,i}^(1/p_k)`` to
    basis vector i.  Needs an evaluable spec (min-form only when
    disjoint).
    """
    if isinstance(spec, WeightedPNorm):
        return spec.weights ** (1.0 / spec.p)
    if isinstance(spec, DualComposedNorm) and not spec.disjoint:
        raise NotEvaluableError(
            "min-form norm with overlapping supports has no closed-form value"
        )
    if isinstance(spec, (ComposedNorm, DualComposedNorm)):
        outer = spec.s if isinstance(spec, ComposedNorm) else spec.t
        V = np.stack([t.weights ** (1.0 / t.p) for t in spec.terms])
        m = V.max(axis=0)
        out = np.zeros(spec.dim)
        pos = m > 0
        out[pos] = m[pos] * np.sum((V[:, pos] / m[pos]) ** outer, axis=0) ** (1.0 / outer)
        return out
    raise TypeError("unknown norm spec %r" % (spec,))


# -- JSON wire format ---------------------------------------------------------

def spec_to_dict(spec):
    """Plain-dict form of a spec, round-trippable through JSON."""
    if isinstance(spec, WeightedPNorm):
        return {"type": "weighted_p", "weights": spec.weights.tolist(), "p": spec.p}
    if isinstance(spec, ComposedNorm):
        return {
            "type": "composed",
            "s": spec.s,
            "terms": [{"weights": t.weights.tolist(), "p": t.p} for t in spec.terms],
        }
    if isinstance(spec, DualComposedNorm):
        return {
            "type": "dual_composed",
            "t": spec.t,
            "terms": [{"weights": t.weights.tolist(), "p": t.p} for t in spec.terms],
        }
    raise TypeError("unknown norm spec %r" % (spec,))


def _term_from_dict(d):
    if "p" in d:
        exponent = d["p"]
    elif "q" in d:
        exponent = d["q"]
    else:
        raise ValueError("term needs an exponent key 'p' (or 'q')")
    return WeightedPNorm(d["weights"], exponent)


def spec_from_dict(d):
    """Inverse of :func:`spec_to_dict`.

    Derived facts (support disjointness, coverage) are always recomputed
    from the weights; flags present in the input are ignored.
    """
    if not isinstance(d, dict) or "type" not in d:
        raise ValueError("norm spec must be a dict with a 'type' key")
    kind = d["type"]
    if kind == "weighted_p":
        return WeightedPNorm(d["weights"], d["p"])
    if kind == "composed":
        return ComposedNorm([_term_from_dict(t) for t in d["terms"]], d["s"])
    if kind == "dual_composed":
        return DualComposedNorm([_term_from_dict(t) for t in d["terms"]], d["t"])
    raise ValueError("unknown norm spec type %r" % (kind,))
