"""Acceptance checklist for the package: eleven numbered checks.

Each test covers one contract item end to end, asserts the stated
tolerance, and prints a single confirmation line on success.  Run

    pytest tests/test_acceptance.py -v

to see one pass/fail line per item (add ``-s`` to see the confirmation
lines as they happen).  Checks with a runtime budget time themselves
and fail if they blow it.
"""

import math
import time

import numpy as np
import pytest

from conenorm.cli import kappa_distribution_rows
from conenorm.cone import (
    birkhoff_ratio,
    cross_ratio_diameter,
    hilbert_distance,
    projective_diameter,
)
from conenorm.logsobolev import (
    MarkovChain,
    hypercontractive_check,
    rho,
    sigma_lower_bound,
    spectral_gap,
    transition_semigroup,
    two_state_rho,
    two_state_sigma,
)
from conenorm.norms import WeightedPNorm
from conenorm.oracle import brute_force_norm, critical_point_census, gram_l2_norm
from conenorm.power import ProblemInstance, certificate, corollary_tau, solve


def _ok(num, text):
    print("[PASS] check %02d: %s" % (num, text))


def l_p(dim, p):
    return WeightedPNorm(np.ones(dim), p)


def comparison_matrix(eps):
    return np.array([[1.0, eps], [eps, 1.0]])


def two_state(a, b):
    return np.array([[1.0 - a, a], [b, 1.0 - b]])


def test_check_01_diameter_formulas_agree_and_ratio_contracts():
    rng = np.random.default_rng(101)
    mats = [rng.uniform(0.1, 3.0, size=(5, 5)) for _ in range(200)]
    start = time.perf_counter()
    for A in mats:
        d_pair = projective_diameter(A)
        d_cross = cross_ratio_diameter(A)
        assert abs(d_pair - d_cross) <= 1e-12
        assert abs(projective_diameter(A.T) - d_pair) <= 1e-12
        kap = birkhoff_ratio(A)
        assert abs(kap - math.tanh(d_pair / 4.0)) <= 1e-14
        assert 0.0 < kap < 1.0
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    _ok(1, "both diameter formulas, transpose symmetry, ratio in (0,1); %.3fs" % elapsed)


def test_check_02_contraction_law_on_random_pairs():
    rng = np.random.default_rng(202)
    for _ in range(200):
        m = int(rng.integers(2, 6))
        n = int(rng.integers(2, 6))
        A = rng.uniform(0.05, 2.0, size=(m, n))
        x = rng.uniform(0.1, 5.0, size=n)
        y = rng.uniform(0.1, 5.0, size=n)
        lhs = hilbert_distance(A @ x, A @ y)
        rhs = birkhoff_ratio(A) * hilbert_distance(x, y)
        assert lhs <= rhs + 1e-12
    _ok(2, "projective distances shrink by the contraction ratio on 200 draws")


def test_check_03_comparison_family_ratio_and_certified_rate():
    exponent_pairs = ((2.0, 2.0), (3.0, 2.0), (2.0, 3.0), (4.0, 2.5))
    for eps in [k / 10.0 for k in range(1, 10)]:
        B = comparison_matrix(eps)
        target = (1.0 - eps) / (1.0 + eps)
        assert abs(birkhoff_ratio(B) - target) <= 1e-12
        for p, q in exponent_pairs:
            inst = ProblemInstance(B, l_p(2, p), l_p(2, q))
            cert = certificate(inst)
            closed = target**2 * (p - 1.0) / (q - 1.0)
            assert abs(cert.tau - closed) <= 1e-12
    _ok(3, "comparison family: ratio (1-eps)/(1+eps) and certified rates exact")


def test_check_04_euclidean_case_matches_gram_eigenvalues():
    rng = np.random.default_rng(404)
    mats = [rng.uniform(0.05, 2.0, size=(6, 4)) for _ in range(100)]
    start = time.perf_counter()
    worst = 0.0
    for A in mats:
        inst = ProblemInstance(A, l_p(6, 2.0), l_p(4, 2.0))
        cert = certificate(inst)
        assert cert.tau < 1.0
        res = solve(inst, tol=1e-12)
        assert res.converged
        ref = gram_l2_norm(A)
        rel = abs(res.norm_estimate - ref) / ref
        worst = max(worst, rel)
        assert rel <= 1e-8
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    _ok(4, "100 Euclidean instances, worst rel. error %.2e; %.2fs" % (worst, elapsed))


def test_check_05_output_exponent_larger_than_input():
    B = comparison_matrix(0.5)
    inst = ProblemInstance(B, l_p(2, 4.0), l_p(2, 2.0))
    cert = certificate(inst)
    assert abs(cert.tau - 1.0 / 3.0) <= 1e-14
    res = solve(inst, tol=1e-12)
    assert res.converged
    ref = brute_force_norm(B, inst.alpha, inst.beta, restarts=10)
    assert abs(res.norm_estimate - ref) <= 1e-6
    _ok(5, "4 vs 2 exponents on the half comparison matrix: certified value confirmed")


def test_check_06_error_bounds_hold_at_every_logged_iterate():
    rng = np.random.default_rng(606)
    checked = 0
    iterates_seen = 0
    for _ in range(40):
        m = int(rng.integers(2, 5))
        n = int(rng.integers(2, 5))
        A = rng.uniform(0.2, 3.0, size=(m, n))
        p = float(rng.uniform(1.5, 3.5))
        q = float(rng.uniform(1.5, 3.5))
        inst = ProblemInstance(A, l_p(m, p), l_p(n, q))
        cert = certificate(inst)
        if cert.tau >= 1.0:
            continue
        res = solve(
            inst, tol=1e-11, x0=rng.uniform(0.1, 1.0, size=n), keep_history=True
        )
        if not res.converged:
            continue
        big_c = cert.r * res.residual_history[0] / (1.0 - cert.tau)
        c_tilde = big_c * cert.gamma
        for k, (xk, fk) in enumerate(
            zip(res.iterate_history, res.norm_history), start=1
        ):
            a_priori = cert.tau**k * big_c
            assert a_priori - np.abs(xk - res.maximizer).max() >= -1e-10
            enclosure = fk - (1.0 - cert.tau**k * c_tilde) * res.norm_estimate
            assert enclosure >= -1e-10
            iterates_seen += 1
        checked += 1
    assert checked >= 20
    _ok(6, "a-priori and enclosure bounds on %d runs, %d iterates" % (checked, iterates_seen))


def test_check_07_closed_form_rates_match_generic_certificates():
    rng = np.random.default_rng(707)

    def pos(m, n):
        return rng.uniform(0.2, 2.0, size=(m, n))

    configs = []
    for _ in range(3):
        p = float(rng.uniform(1.3, 4.0))
        q = float(rng.uniform(1.3, 4.0))
        r = float(rng.uniform(1.3, 4.0))
        theta = float(rng.uniform(1.3, 2.5))
        configs.append(
            {
                "shape": "two_weighted",
                "A": pos(3, 3),
                "p": p,
                "q": q,
                "alpha_weights": rng.uniform(0.5, 2.0, size=3),
                "beta_weights": rng.uniform(0.5, 2.0, size=3),
            }
        )
        configs.append(
            {
                "shape": "scaled_stack",
                "A": pos(2, 3),
                "B": pos(3, 3),
                "p": p,
                "q": q,
                "r": r,
                "coeff_a": float(rng.uniform(0.5, 3.0)),
                "coeff_b": float(rng.uniform(0.5, 3.0)),
            }
        )
        configs.append(
            {
                "shape": "shared_image",
                "A": pos(3, 2),
                "p": p,
                "q": float(rng.uniform(2.0, 4.0)),
                "r": float(rng.uniform(2.0, 4.0)),
            }
        )
        configs.append(
            {
                "shape": "paired_blocks",
                "A": pos(2, 2),
                "B": pos(3, 2),
                "p": theta + float(rng.uniform(0.0, 2.0)),
                "q": theta + float(rng.uniform(0.0, 2.0)),
                "r": theta + float(rng.uniform(0.0, 2.0)),
                "s": float(rng.uniform(1.1, theta)),
                "theta": theta,
            }
        )
        configs.append(
            {"shape": "overlapping_min", "A": pos(2, 2), "B": pos(2, 2), "p": p, "q": q, "r": r}
        )
        configs.append(
            {"shape": "powered_image", "A": pos(3, 4), "B": pos(4, 4), "p": p, "q": q, "r": r}
        )
    worst = 0.0
    for cfg in configs:
        out = corollary_tau(cfg)
        gap = abs(out.closed_form - out.certified)
        worst = max(worst, gap)
        assert gap <= 1e-12, cfg["shape"]
    _ok(7, "six families, three random draws each, worst gap %.2e" % worst)


def test_check_08_critical_point_count_tracks_contractivity():
    rng = np.random.default_rng(808)
    contractive = []
    expansive = []
    while len(contractive) < 10 or len(expansive) < 10:
        eps = float(rng.uniform(0.05, 0.9))
        p = float(rng.uniform(1.2, 8.0))
        q = float(rng.uniform(1.2, 8.0))
        tau = ((1.0 - eps) / (1.0 + eps)) ** 2 * (p - 1.0) / (q - 1.0)
        if tau <= 0.99 and len(contractive) < 10:
            contractive.append((eps, p, q))
        elif tau >= 1.01 and len(expansive) < 10:
            expansive.append((eps, p, q))
    start = time.perf_counter()
    for eps, p, q in contractive:
        assert critical_point_census(eps, p, q) == 1
    for eps, p, q in expansive:
        assert critical_point_census(eps, p, q) >= 3
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    _ok(8, "censuses: 10 contractive all 1, 10 expansive all >= 3; %.2fs" % elapsed)


def test_check_09_semigroup_norm_is_one_at_the_endpoint():
    rng = np.random.default_rng(909)
    chains = []
    for _ in range(10):
        for n in (2, 3):
            K = rng.uniform(0.05, 1.0, size=(n, n))
            chains.append(MarkovChain(K / K.sum(axis=1, keepdims=True)))
    worst = 0.0
    for chain in chains:
        for t in (0.5, 1.0, 2.0):
            H = transition_semigroup(chain.K, t)
            out = hypercontractive_check(chain, M=H)
            worst = max(worst, out.deviation)
            assert out.deviation <= 1e-7
    _ok(9, "60 endpoint norms all 1, worst deviation %.2e" % worst)


def test_check_10_two_state_bounds_sandwich_the_exact_constant():
    rng = np.random.default_rng(1010)
    refined_grid = list(np.geomspace(1e-5, 1e-2, 12))
    rho_ts = np.geomspace(0.01, 10.0, 5)
    for _ in range(100):
        a, b = rng.uniform(0.05, 0.95, size=2)
        chain = MarkovChain(two_state(a, b))
        sigma = two_state_sigma(a, b)
        assert sigma <= spectral_gap(chain) / 2.0 + 1e-10
        report = sigma_lower_bound(chain)
        for entry in report.entries:
            assert entry.sigma_lb <= sigma + 1e-10
        refined = sigma_lower_bound(chain, t_grid=refined_grid)
        best_small_t = max(e.sigma_lb for e in refined.entries)
        assert best_small_t >= math.sqrt(a * b) - 1e-3
        for t in rho_ts:
            assert abs(rho(chain, t) - two_state_rho(a, b, t)) <= 1e-9
    _ok(10, "100 chains: bounds sandwich, small-t limit reached, both rho routes agree")


def test_check_11_flatter_random_matrices_contract_more():
    start = time.perf_counter()
    rows = kappa_distribution_rows(0, 10, 1, 5, 1000)
    per_level = {k: [] for k in range(1, 6)}
    for k, _, kap in rows:
        assert kap < 1.0
        per_level[k].append(kap)
    medians = [float(np.median(per_level[k])) for k in range(1, 6)]
    assert all(u > v for u, v in zip(medians, medians[1:]))
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    _ok(
        11,
        "5000 samples, medians %s strictly decreasing; %.2fs"
        % (["%.3f" % m for m in medians], elapsed),
    )
