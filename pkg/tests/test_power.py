import math

import numpy as np
import pytest

from conenorm.cone import birkhoff_ratio, hilbert_distance
from conenorm.norms import (
    ComposedNorm,
    DualComposedNorm,
    NotEvaluableError,
    WeightedPNorm,
)
from conenorm.oracle import brute_force_norm, gram_l2_norm
from conenorm.power import (
    CertificateError,
    ProblemInstance,
    apply_S,
    certificate,
    check_gram_irreducible,
    corollary_tau,
    solve,
)

RNG = np.random.default_rng(31337)


def l_p(dim, p):
    return WeightedPNorm(np.ones(dim), p)


# -- structural checks --------------------------------------------------------


class TestGramIrreducible:
    def test_positive_gram(self):
        assert check_gram_irreducible(np.array([[1.0, 2.0], [3.0, 4.0]]))

    def test_identity_is_disconnected(self):
        assert not check_gram_irreducible(np.eye(2))

    def test_zero_row_is_fine(self):
        A = np.array([[1.0, 2.0], [3.0, 4.0], [0.0, 0.0]])
        assert check_gram_irreducible(A)

    def test_zero_column_fails(self):
        assert not check_gram_irreducible(np.array([[1.0, 0.0], [1.0, 0.0]]))

    def test_chained_overlap_is_connected(self):
        # columns 0-1 share row 0, columns 1-2 share row 1
        A = np.array([[1.0, 1.0, 0.0], [0.0, 1.0, 1.0]])
        assert check_gram_irreducible(A)


class TestProblemInstance:
    def test_dimension_checks(self):
        A = np.ones((2, 3))
        with pytest.raises(ValueError):
            ProblemInstance(A, l_p(3, 2.0), l_p(3, 2.0))
        with pytest.raises(ValueError):
            ProblemInstance(A, l_p(2, 2.0), l_p(2, 2.0))

    def test_exactly_one_input_norm(self):
        A = np.ones((2, 2))
        with pytest.raises(ValueError):
            ProblemInstance(A, l_p(2, 2.0))
        with pytest.raises(ValueError):
            ProblemInstance(A, l_p(2, 2.0), l_p(2, 2.0), beta_star=l_p(2, 2.0))

    def test_rejects_seminorm_alpha(self):
        A = np.ones((2, 2))
        semi = WeightedPNorm(np.array([1.0, 0.0]), 2.0)
        with pytest.raises(ValueError):
            ProblemInstance(A, semi, l_p(2, 2.0))

    def test_rejects_negative_matrix(self):
        with pytest.raises(ValueError):
            ProblemInstance(np.array([[1.0, -0.1]]), l_p(1, 2.0), l_p(2, 2.0))

    def test_min_form_beta_without_closed_form_still_works(self):
        """An overlapping min-form input norm is fine: only its dual is used."""
        A = np.ones((2, 3))
        beta = DualComposedNorm(
            [
                WeightedPNorm(np.array([1.0, 1.0, 0.0]), 3.0),
                WeightedPNorm(np.array([0.0, 1.0, 1.0]), 2.0),
            ],
            t=2.0,
        )
        inst = ProblemInstance(A, l_p(2, 2.0), beta)
        assert isinstance(inst.beta_star, ComposedNorm)

    def test_outer_one_composed_beta_rejected(self):
        # its dual has outer exponent inf: no explicit iteration map
        A = np.ones((2, 4))
        beta = ComposedNorm(
            [
                WeightedPNorm(np.array([1.0, 1.0, 0.0, 0.0]), 2.0),
                WeightedPNorm(np.array([0.0, 0.0, 1.0, 1.0]), 2.0),
            ],
            s=1.0,
        )
        with pytest.raises(NotEvaluableError):
            ProblemInstance(A, l_p(2, 2.0), beta)


# -- the iteration map --------------------------------------------------------


class TestApplyS:
    def test_euclidean_case_is_gram_power_step(self):
        A = RNG.uniform(0.1, 2.0, size=(4, 3))
        inst = ProblemInstance(A, l_p(4, 2.0), l_p(3, 2.0))
        x = RNG.uniform(0.1, 1.0, size=3)
        expected = A.T @ (A @ x)
        expected = expected / np.linalg.norm(expected)
        np.testing.assert_allclose(apply_S(inst, x), expected, rtol=1e-12)

    def test_output_unit_beta_norm(self):
        A = RNG.uniform(0.1, 2.0, size=(3, 4))
        beta = WeightedPNorm(RNG.uniform(0.5, 2.0, size=4), 3.0)
        inst = ProblemInstance(A, l_p(3, 2.5), beta)
        y = apply_S(inst, RNG.uniform(0.1, 1.0, size=4))
        assert beta.value(y) == pytest.approx(1.0, rel=1e-12)

    def test_scale_invariance(self):
        A = RNG.uniform(0.1, 2.0, size=(3, 3))
        inst = ProblemInstance(A, l_p(3, 2.0), l_p(3, 4.0))
        x = RNG.uniform(0.1, 1.0, size=3)
        np.testing.assert_allclose(
            apply_S(inst, x), apply_S(inst, 100.0 * x), rtol=1e-12
        )

    def test_symmetric_fixed_point(self):
        B = np.array([[0.5, 1.0], [1.0, 0.5]])
        inst = ProblemInstance(B, l_p(2, 2.0), l_p(2, 2.0))
        out = apply_S(inst, np.array([1.0, 1.0]))
        np.testing.assert_allclose(out, np.array([1.0, 1.0]) / math.sqrt(2), rtol=1e-14)

    def test_rejects_annihilated_input(self):
        A = np.array([[0.0, 1.0], [0.0, 2.0]])  # zero first column
        inst = ProblemInstance(A, l_p(2, 2.0), l_p(2, 2.0))
        with pytest.raises(ValueError):
            apply_S(inst, np.array([1.0, 0.0]))


# -- certificates -------------------------------------------------------------


class TestCertificate:
    def test_lp_lq_formula(self):
        A = RNG.uniform(0.2, 3.0, size=(4, 4))
        p, q = 2.5, 3.5
        cert = certificate(ProblemInstance(A, l_p(4, p), l_p(4, q)))
        expected = birkhoff_ratio(A) * birkhoff_ratio(A.T) * (p - 1.0) / (q - 1.0)
        assert cert.tau == pytest.approx(expected, rel=1e-14)
        assert cert.r == pytest.approx(1.0)
        assert cert.gamma == pytest.approx(4.0 ** (1.0 / q))
        assert cert.gamma_is_exact

    def test_two_by_two_family_rate(self):
        p, q = 3.0, 2.0
        for eps in (0.1, 0.3, 0.5, 0.7, 0.9):
            A = np.array([[eps, 1.0], [1.0, eps]])
            cert = certificate(ProblemInstance(A, l_p(2, p), l_p(2, q)))
            expected = ((1.0 - eps) / (1.0 + eps)) ** 2 * (p - 1.0) / (q - 1.0)
            assert cert.tau == pytest.approx(expected, abs=1e-13)

    def test_no_shared_support_gives_unit_kappa(self):
        C = np.array([[0.0, 1.0, 1.0], [2.0, 2.0, 2.0], [3.0, 3.0, 0.0]])
        p, q = 2.0, 3.0
        cert = certificate(ProblemInstance(C, l_p(3, p), l_p(3, q)))
        assert cert.kappa_A == 1.0
        assert cert.kappa_At == 1.0
        assert cert.tau == pytest.approx((p - 1.0) / (q - 1.0), rel=1e-15)

    def test_weights_do_not_change_tau(self):
        A = RNG.uniform(0.2, 2.0, size=(3, 3))
        plain = certificate(ProblemInstance(A, l_p(3, 2.0), l_p(3, 3.0)))
        weighted = certificate(
            ProblemInstance(
                A,
                WeightedPNorm(RNG.uniform(0.5, 4.0, size=3), 2.0),
                WeightedPNorm(RNG.uniform(0.5, 4.0, size=3), 3.0),
            )
        )
        assert weighted.tau == pytest.approx(plain.tau, rel=1e-14)

    def test_r_from_dual_when_beta_given_as_dual(self):
        """r computed through the dual equals r computed directly."""
        w1 = np.array([1.0, 1.0, 0.0, 0.0])
        w2 = np.array([0.0, 0.0, 1.0, 1.0])
        beta = DualComposedNorm(
            [WeightedPNorm(w1, 2.0), WeightedPNorm(w2, 3.0)], t=2.0
        )
        A = RNG.uniform(0.2, 2.0, size=(3, 4))
        direct = certificate(ProblemInstance(A, l_p(3, 2.0), beta))
        via_dual = certificate(
            ProblemInstance(A, l_p(3, 2.0), beta_star=beta.dual())
        )
        assert via_dual.r == pytest.approx(direct.r, rel=1e-13)
        # the fallback gamma is an upper bound for the true one
        assert via_dual.gamma >= direct.gamma - 1e-13
        assert not via_dual.gamma_is_exact


# -- solve --------------------------------------------------------------------


class TestSolve:
    def test_frozen_euclidean_values(self):
        A = np.array([[1.0, 2.0], [3.0, 4.0]])
        res = solve(ProblemInstance(A, l_p(2, 2.0), l_p(2, 2.0)))
        assert res.converged
        assert res.norm_estimate == pytest.approx(
            math.sqrt(15.0 + math.sqrt(221.0)), rel=1e-12
        )
        B = np.array([[0.5, 1.0], [1.0, 0.5]])
        res_b = solve(ProblemInstance(B, l_p(2, 2.0), l_p(2, 2.0)))
        assert res_b.norm_estimate == pytest.approx(1.5, rel=1e-13)
        np.testing.assert_allclose(
            res_b.maximizer, np.array([1.0, 1.0]) / math.sqrt(2), rtol=1e-12
        )

    def test_enclosure_brackets_truth(self):
        rng = np.random.default_rng(8)
        for _ in range(25):
            A = rng.uniform(0.1, 3.0, size=(5, 3))
            inst = ProblemInstance(A, l_p(5, 2.0), l_p(3, 2.0))
            res = solve(inst, tol=1e-9)
            truth = gram_l2_norm(A)
            assert res.lower <= truth * (1 + 1e-12)
            assert res.upper >= truth * (1 - 1e-12)

    def test_refuses_without_certificate(self):
        C = np.array([[0.0, 1.0, 1.0], [2.0, 2.0, 2.0], [3.0, 3.0, 0.0]])
        inst = ProblemInstance(C, l_p(3, 4.0), l_p(3, 2.0))  # tau = 3
        with pytest.raises(CertificateError):
            solve(inst)

    def test_force_mode_still_lower_bounds(self):
        C = np.array([[0.0, 1.0, 1.0], [2.0, 2.0, 2.0], [3.0, 3.0, 0.0]])
        inst = ProblemInstance(C, l_p(3, 4.0), l_p(3, 2.0))
        res = solve(inst, force=True, tol=1e-12)
        assert res.converged
        assert math.isinf(res.a_priori_gap)
        assert math.isinf(res.upper)
        bf = brute_force_norm(C, inst.alpha, inst.beta, restarts=10)
        assert res.norm_estimate <= bf * (1 + 1e-9)
        assert res.norm_estimate == pytest.approx(bf, rel=1e-6)

    def test_budget_exhaustion_returns_partial(self):
        eps = 0.01  # tau = ((1-eps)/(1+eps))^2 ~ 0.96 makes convergence slow
        A = np.array([[eps, 1.0], [1.0, eps]])
        inst = ProblemInstance(A, l_p(2, 2.0), l_p(2, 2.0))
        res = solve(inst, tol=1e-14, max_iters=3, x0=np.array([0.9, 0.1]))
        assert not res.converged
        assert res.iterations == 3
        assert len(res.residual_history) == 3

    def test_reducible_refused_even_with_force(self):
        A = np.array([[1.0, 0.0], [0.0, 2.0]])
        inst = ProblemInstance(A, l_p(2, 2.0), l_p(2, 3.0))
        with pytest.raises(ValueError):
            solve(inst, force=True)

    def test_x0_must_be_strictly_positive(self):
        A = RNG.uniform(0.5, 1.5, size=(2, 2))
        inst = ProblemInstance(A, l_p(2, 2.0), l_p(2, 2.0))
        with pytest.raises(ValueError):
            solve(inst, x0=np.array([1.0, 0.0]))

    def test_history_lengths_match(self):
        A = RNG.uniform(0.5, 1.5, size=(3, 3))
        inst = ProblemInstance(A, l_p(3, 2.0), l_p(3, 3.0))
        res = solve(inst, keep_history=True, x0=np.array([1.0, 2.0, 3.0]))
        assert len(res.norm_history) == res.iterations
        assert len(res.iterate_history) == res.iterations
        assert len(res.residual_history) == res.iterations
        # objective is monotone up to the limit on this certified run
        assert res.norm_history[-1] <= res.norm_estimate + 1e-12

    def test_error_bounds_hold_per_iterate(self):
        rng = np.random.default_rng(77)
        checked = 0
        for _ in range(30):
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
                assert np.abs(xk - res.maximizer).max() <= cert.tau**k * big_c + 1e-10
                assert (1.0 - cert.tau**k * c_tilde) * res.norm_estimate <= fk + 1e-10
                assert fk <= res.norm_estimate + 1e-10
            checked += 1
        assert checked >= 15

    def test_matches_brute_force_on_mixed_exponents(self):
        rng = np.random.default_rng(13)
        for _ in range(10):
            A = rng.uniform(0.3, 2.0, size=(3, 3))
            alpha = WeightedPNorm(rng.uniform(0.5, 2.0, size=3), float(rng.uniform(1.5, 3.0)))
            beta = WeightedPNorm(rng.uniform(0.5, 2.0, size=3), float(rng.uniform(2.0, 4.0)))
            inst = ProblemInstance(A, alpha, beta)
            if certificate(inst).tau >= 1.0:
                continue
            res = solve(inst, tol=1e-11)
            bf = brute_force_norm(A, alpha, beta, restarts=8, seed=3)
            assert res.norm_estimate == pytest.approx(bf, rel=1e-7)

    def test_larger_exponent_than_output_converges(self):
        """Certified convergence with the output exponent above the input one."""
        B = np.array([[0.5, 1.0], [1.0, 0.5]])
        inst = ProblemInstance(B, l_p(2, 4.0), l_p(2, 2.0))
        cert = certificate(inst)
        assert cert.tau == pytest.approx(1.0 / 3.0, rel=1e-14)
        res = solve(inst, tol=1e-12)
        assert res.converged
        bf = brute_force_norm(B, inst.alpha, inst.beta, restarts=10)
        assert res.norm_estimate == pytest.approx(bf, abs=1e-6)


# -- structured families ------------------------------------------------------


class TestCorollaryTau:
    def test_all_shapes_agree(self):
        rng = np.random.default_rng(21)
        A = rng.uniform(0.5, 2.0, size=(3, 4))
        B = rng.uniform(0.5, 2.0, size=(2, 4))
        square = rng.uniform(0.5, 2.0, size=(4, 4))
        cases = [
            dict(shape="two_weighted", A=A, p=2.2, q=3.1),
            dict(shape="scaled_stack", A=A, B=B, p=2.0, q=3.0, r=2.5),
            dict(shape="shared_image", A=A, p=1.7, q=2.0, r=4.0),
            dict(shape="paired_blocks", A=A, B=B, theta=2.0, p=2.5, q=3.0, r=2.0, s=1.5),
            dict(shape="overlapping_min", A=A, B=B, p=3.0, q=4.0, r=5.0),
            dict(shape="powered_image", A=A, B=square, p=1.5, q=1.4, r=4.0),
        ]
        for case in cases:
            out = corollary_tau(case)
            assert out.certified == pytest.approx(out.closed_form, abs=1e-12)

    def test_block_diagonal_has_unit_ratio(self):
        rng = np.random.default_rng(2)
        out = corollary_tau(
            dict(
                shape="paired_blocks",
                A=rng.uniform(0.5, 2.0, size=(2, 2)),
                B=rng.uniform(0.5, 2.0, size=(3, 3)),
                theta=2.0,
                p=3.0,
                q=2.0,
                r=2.5,
                s=1.8,
            )
        )
        cert = certificate(out.instance)
        assert cert.kappa_A == 1.0
        assert cert.kappa_At == 1.0
        assert out.closed_form == pytest.approx((3.0 + 2.0 - 2.0 - 1.0) / 0.8)

    def test_overlapping_min_solve_agrees_with_transpose_dual(self):
        """The dual-only input norm route against the transposed problem."""
        rng = np.random.default_rng(17)
        out = corollary_tau(
            dict(
                shape="overlapping_min",
                A=rng.uniform(0.5, 2.0, size=(2, 2)),
                B=rng.uniform(0.5, 2.0, size=(2, 2)),
                p=1.2,
                q=4.0,
                r=4.0,
            )
        )
        assert out.certified < 1.0
        res = solve(out.instance, tol=1e-12)
        bf = brute_force_norm(
            out.instance.A.T,
            out.instance.beta_star,
            out.instance.alpha.dual(),
            restarts=15,
        )
        assert res.norm_estimate == pytest.approx(bf, rel=1e-8)

    def test_parameter_validation(self):
        rng = np.random.default_rng(4)
        A = rng.uniform(0.5, 2.0, size=(2, 2))
        with pytest.raises(ValueError):
            corollary_tau(dict(shape="two_weighted", A=A, p=1.0, q=2.0))
        with pytest.raises(ValueError):
            corollary_tau(dict(shape="shared_image", A=A, p=2.0, q=1.5, r=3.0))
        with pytest.raises(ValueError):
            corollary_tau(
                dict(shape="paired_blocks", A=A, B=A, theta=2.0, p=3.0, q=3.0, r=3.0, s=2.5)
            )
        with pytest.raises(ValueError):
            corollary_tau(dict(shape="two_weighted", A=-A, p=2.0, q=2.0))
        with pytest.raises(ValueError):
            corollary_tau(dict(shape="unheard_of", A=A))

    def test_scaled_stack_needs_two_rows_per_block(self):
        rng = np.random.default_rng(6)
        A = rng.uniform(0.5, 2.0, size=(1, 3))
        B = rng.uniform(0.5, 2.0, size=(2, 3))
        with pytest.raises(ValueError):
            corollary_tau(dict(shape="scaled_stack", A=A, B=B, p=2.0, q=2.0, r=2.0))
