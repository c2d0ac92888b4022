"""Polynomial evaluation, derivatives, norms, and the weight polynomial."""

import numpy as np
import pytest

from helpers import naive_derivative, naive_eval, naive_weight, svd2_closed_form
from polycond import (
    InvalidPolynomialError,
    InvalidWeightsError,
    MatrixPolynomial,
    WeightSet,
    singular_values,
    spectral_norm,
)


class TestEval:
    def test_scalar_affine(self):
        p = MatrixPolynomial([[[-2.0]], [[1.0]]])
        assert p.eval(3.0) == pytest.approx(np.array([[1.0]]))

    def test_ill_scaled_fixture_at_4(self, p5):
        got = p5.poly.eval(4.0)
        want = np.array([[0.006, 0.001], [0.0, 0.0]])
        assert np.allclose(got, want, atol=1e-14)

    def test_cubic_fixture_norm_near_crossover_point(self, p6):
        mu = 0.5691 + 0.0043j
        assert spectral_norm(p6.poly.eval(mu)) == pytest.approx(1.0562, abs=1e-3)

    def test_horner_matches_power_sum(self, rng):
        for _ in range(25):
            n = int(rng.integers(1, 5))
            m = int(rng.integers(1, 5))
            coeffs = [
                rng.uniform(-1, 1, (n, n)) + 1j * rng.uniform(-1, 1, (n, n))
                for _ in range(m + 1)
            ]
            coeffs[-1] += 2 * np.eye(n)
            p = MatrixPolynomial(coeffs)
            z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            want = naive_eval(coeffs, z)
            scale = max(1.0, np.abs(want).max())
            assert np.abs(p.eval(z) - want).max() <= 1e-12 * scale

    def test_exact_constant_term_at_zero(self, rng):
        A0 = rng.standard_normal((3, 3))
        p = MatrixPolynomial([A0, np.eye(3)])
        assert np.array_equal(p.eval(0.0), A0)


class TestDerivative:
    def test_second_derivative_of_square(self):
        p = MatrixPolynomial([[[0.0]], [[0.0]], [[1.0]]])
        assert p.eval_derivative(0.0, order=2) == pytest.approx(np.array([[2.0]]))

    def test_order_above_degree_is_zero(self, p4):
        got = p4.poly.eval_derivative(1.7 - 0.3j, order=p4.poly.m + 1)
        assert np.array_equal(got, np.zeros((3, 3)))

    def test_monic_quadratic_first_derivative(self, p4):
        got = p4.poly.eval_derivative(-1.0, order=1)
        want = -2.0 * np.eye(3) + p4.poly.coeffs[1]
        assert np.allclose(got, want, atol=1e-14)

    def test_order_zero_equals_eval(self, p6):
        z = 0.3 + 0.9j
        assert np.array_equal(p6.poly.eval_derivative(z, order=0), p6.poly.eval(z))

    def test_matches_termwise_oracle(self, rng):
        for _ in range(10):
            n, m = int(rng.integers(1, 4)), int(rng.integers(1, 4))
            coeffs = [rng.standard_normal((n, n)) for _ in range(m + 1)]
            coeffs[-1] += 2 * np.eye(n)
            p = MatrixPolynomial(coeffs)
            z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            for order in range(m + 2):
                want = naive_derivative(coeffs, z, order)
                assert np.allclose(p.eval_derivative(z, order), want, atol=1e-12)


class TestConstruction:
    def test_zero_leading_coefficient_rejected(self):
        with pytest.raises(InvalidPolynomialError):
            MatrixPolynomial([np.eye(2), np.zeros((2, 2))])

    def test_near_singular_leading_coefficient_rejected(self):
        Am = np.diag([1.0, 1e-15])
        with pytest.raises(InvalidPolynomialError):
            MatrixPolynomial([np.eye(2), Am])

    def test_nonfinite_entries_rejected(self):
        bad = np.array([[np.nan, 0.0], [0.0, 1.0]])
        with pytest.raises(InvalidPolynomialError):
            MatrixPolynomial([bad, np.eye(2)])

    def test_nonsquare_rejected(self):
        with pytest.raises(InvalidPolynomialError):
            MatrixPolynomial([np.ones((2, 3))])

    def test_mismatched_shapes_rejected(self):
        with pytest.raises(InvalidPolynomialError):
            MatrixPolynomial([np.eye(2), np.eye(3)])

    def test_empty_rejected(self):
        with pytest.raises(InvalidPolynomialError):
            MatrixPolynomial([])

    def test_coefficients_frozen(self, p5):
        with pytest.raises(ValueError):
            p5.poly.coeffs[0][0, 0] = 99.0

    def test_degree_zero_allowed(self):
        p = MatrixPolynomial([np.eye(2)])
        assert p.m == 0
        assert spectral_norm(p.eval(7.0)) == pytest.approx(1.0)


class TestWeights:
    def test_all_ones_at_one(self):
        assert WeightSet([1.0, 1.0, 1.0]).eval(1.0) == pytest.approx(3.0)

    def test_constant_term_at_zero(self):
        assert WeightSet([0.1, 1.0, 1.0, 0.0]).eval(0.0) == pytest.approx(0.1)

    def test_crossover_point_value(self):
        w = WeightSet([0.1, 1.0, 1.0, 0.0])
        assert w.eval(0.5691) == pytest.approx(0.9930, abs=1e-4)

    def test_strictly_positive_and_matches_oracle(self, rng):
        for _ in range(20):
            m = int(rng.integers(0, 4))
            wts = [float(rng.uniform(0.01, 2))] + [float(rng.uniform(0, 2)) for _ in range(m)]
            w = WeightSet(wts)
            r = float(rng.uniform(0, 5))
            assert w.eval(r) > 0
            assert w.eval(r) == pytest.approx(naive_weight(wts, r), rel=1e-12)

    def test_derivative_matches_difference_quotient(self):
        w = WeightSet([2.0, 0.5, 3.0])
        r, h = 1.3, 1e-7
        fd = (w.eval(r + h) - w.eval(r - h)) / (2 * h)
        assert w.eval(r, order=1) == pytest.approx(fd, rel=1e-6)

    def test_zero_w0_rejected(self):
        with pytest.raises(InvalidWeightsError):
            WeightSet([0.0, 1.0])

    def test_negative_rejected(self):
        with pytest.raises(InvalidWeightsError):
            WeightSet([1.0, -0.5])

    def test_length_mismatch_detected(self, p5):
        w = WeightSet([1.0, 1.0])
        assert not w.matches(p5.poly)
        with pytest.raises(InvalidWeightsError):
            w.require_match(p5.poly)

    def test_default_weights_from_coefficient_norms(self, p4):
        w = WeightSet.from_coefficient_norms(p4.poly)
        assert np.allclose(w.weights, [25.0379, 2.2919, 1.0], atol=1e-3)

    def test_default_weights_floor_zero_constant_norm(self, p6):
        w = WeightSet.from_coefficient_norms(p6.poly)
        assert w.weights[0] > 0.0
        assert w.eval(0.0) > 0.0


class TestNorms:
    def test_norm_inf_dominant_constant_term(self, p4):
        assert p4.poly.norm_inf() == pytest.approx(25.0379, abs=1e-3)

    def test_norm_inf_is_max_coefficient_norm(self, p5):
        norms = [spectral_norm(A) for A in p5.poly.coeffs]
        assert p5.poly.norm_inf() == pytest.approx(max(norms))

    def test_degree_zero_identity(self):
        assert MatrixPolynomial([np.eye(2)]).norm_inf() == pytest.approx(1.0)


class TestSingularValues:
    def test_identity(self):
        assert np.allclose(singular_values(np.eye(3)), [1.0, 1.0, 1.0])

    def test_rank_one_2x2_closed_form(self):
        M = np.array([[0.0, -0.001], [0.0, 0.006]])
        s = singular_values(M)
        hi, lo = svd2_closed_form(M)
        assert s[0] == pytest.approx(hi, rel=1e-12)
        assert s[0] == pytest.approx(0.006083, abs=1e-6)
        assert s[-1] == pytest.approx(lo, abs=1e-15)

    def test_diagonal(self):
        assert np.allclose(singular_values(np.diag([2.0, 0.0])), [2.0, 0.0])

    def test_descending_and_reconstruction(self, rng):
        for _ in range(10):
            M = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            s = singular_values(M)
            assert np.all(np.diff(s) <= 0)
            U, sd, Vh = np.linalg.svd(M)
            assert np.allclose(s, sd)
            assert spectral_norm(M - (U * sd) @ Vh) <= 1e-10 * spectral_norm(M)
