"""Unit tests for the power-series core: coefficients, gamma, evaluation."""

import cmath
import math
import random

import mpmath as mp
import pytest

from coulombstar import (
    CoefficientTable,
    CoulombParams,
    InvalidParams,
    NoConvergence,
    BranchPoint,
    PoleError,
    eval_f,
    eval_g,
    eval_g_prime,
    eval_g_second,
    gamma_complex,
    kummer_oracle,
    make_coefficients,
    normalization_constant,
    table_for_radius,
)
from coulombstar.series import _recurrence_coefficients, _tail_bounds

SQRT_PI = math.sqrt(math.pi)


def random_params(rng, box=3.0, margin=0.2):
    """Draw a valid complex parameter pair with |L|, |eta| <= box."""
    while True:
        L = complex(rng.uniform(-box, box), rng.uniform(-box, box))
        eta = complex(rng.uniform(-box, box), rng.uniform(-box, box))
        # stay away from the polar set 2L+2 in {0, -1, -2, ...}
        w = 2 * L + 2
        if abs(w.imag) < margin and w.real < margin and abs(w.real - round(w.real)) < margin:
            continue
        if abs(L + 1) < margin:
            continue
        return CoulombParams(L, eta)


# ---------------------------------------------------------------------------
# parameter validation


class TestCoulombParams:
    def test_accepts_generic_values(self):
        p = CoulombParams(0.5, 0.1)
        assert p.L == 0.5 + 0j and p.eta == 0.1 + 0j

    @pytest.mark.parametrize("bad_L", [-1.0, -1.5, -2.0, -3.5])
    def test_rejects_polar_set(self, bad_L):
        with pytest.raises(InvalidParams):
            CoulombParams(bad_L, 0.0)

    def test_rejects_nonfinite(self):
        with pytest.raises(InvalidParams):
            CoulombParams(math.inf, 0.0)
        with pytest.raises(InvalidParams):
            CoulombParams(0.0, complex(0.0, math.nan))

    def test_near_polar_but_valid(self):
        # off the polar set by a hair is still legal
        CoulombParams(-0.9, 0.0)
        CoulombParams(-1.5 + 1e-6, 0.0)
        CoulombParams(complex(-1.5, 0.3), 0.0)

    def test_jsonable_shape(self):
        d = CoulombParams(0.5, -0.25).to_jsonable()
        assert d == {"L": {"re": 0.5, "im": 0.0}, "eta": {"re": -0.25, "im": 0.0}}


# ---------------------------------------------------------------------------
# coefficient tables


class TestMakeCoefficients:
    def test_first_coefficients_eta_one(self):
        table = make_coefficients(CoulombParams(0.0, 1.0), 2, 1.0)
        assert table.coeffs[0] == 1.0
        assert table.coeffs[1] == 1.0
        assert abs(table.coeffs[2] - 1.0 / 6.0) < 1e-16

    def test_sine_series(self):
        table = make_coefficients(CoulombParams(0.0, 0.0), 9, 1.0)
        # g collapses to sin z: a_n = 0 for odd powers missing, (-1)^k/(2k+1)!
        expected = [0.0] * 10
        for k in range(5):
            expected[2 * k] = (-1) ** k / math.factorial(2 * k + 1)
        for a, b in zip(table.coeffs, expected):
            assert abs(a - b) <= 1e-16 * (1 + abs(b))

    @pytest.mark.parametrize("order", [-3, 0, 1, 501])
    def test_order_out_of_range(self, order):
        with pytest.raises(InvalidParams):
            make_coefficients(CoulombParams(0.0, 0.0), order, 1.0)

    def test_majorization_failure_raises(self):
        # radius far too large for a short table
        with pytest.raises(NoConvergence):
            make_coefficients(CoulombParams(0.0, 0.0), 16, 30.0)

    def test_recurrence_residual_invariant(self):
        rng = random.Random(1105)
        for _ in range(20):
            params = random_params(rng)
            table = make_coefficients(params, 40, 0.5)
            L, eta = params.L, params.eta
            a = table.coeffs
            for n in range(2, table.order + 1):
                res = abs(n * (n + 2 * L + 1) * a[n] - 2 * eta * a[n - 1] + a[n - 2])
                assert res <= 1e-14 * (1 + abs(a[n]))

    def test_tail_bound_dominates_discarded_terms(self):
        rng = random.Random(1106)
        for _ in range(10):
            params = random_params(rng, box=2.0)
            radius = rng.uniform(0.3, 2.0)
            table = table_for_radius(params, radius)
            N = table.order
            longer = _recurrence_coefficients(params, N + 200)
            discarded = sum(
                abs(longer[n]) * radius ** (n + 1) for n in range(N + 1, N + 201)
            )
            assert discarded <= table.tail_bound

    def test_derivative_tail_bounds_dominate(self):
        params = CoulombParams(0.5, 0.1)
        radius = 0.999
        table = table_for_radius(params, radius, deriv=2)
        bounds = _tail_bounds(list(table.coeffs), params, radius)
        N = table.order
        longer = _recurrence_coefficients(params, N + 200)
        d1 = sum(
            (n + 1) * abs(longer[n]) * radius**n for n in range(N + 1, N + 201)
        )
        d2 = sum(
            (n + 1) * n * abs(longer[n]) * radius ** (n - 1)
            for n in range(N + 1, N + 201)
        )
        assert d1 <= bounds[1]
        assert d2 <= bounds[2]

    def test_vectorized_evaluation_matches_scalar(self):
        import numpy as np

        table = table_for_radius(CoulombParams(0.3, -0.2), 1.0)
        zs = np.array([0.1 + 0.2j, -0.5j, 0.9, -0.3 - 0.3j])
        vec = table.g_values(zs)
        for z, v in zip(zs, vec):
            assert abs(v - table.g_values(complex(z))) < 1e-15


# ---------------------------------------------------------------------------
# complex gamma


class TestGammaComplex:
    def test_integers(self):
        assert abs(gamma_complex(1.0).value - 1.0) <= 1e-14
        assert abs(gamma_complex(5.0).value - 24.0) <= 24 * 1e-13

    def test_half(self):
        assert abs(gamma_complex(0.5).value - SQRT_PI) <= SQRT_PI * 1e-13

    def test_reflection(self):
        # Gamma(-1/2) = -2 sqrt(pi)
        got = gamma_complex(-0.5).value
        assert abs(got - (-2 * SQRT_PI)) <= 2 * SQRT_PI * 1e-12

    @pytest.mark.parametrize("pole", [0.0, -1.0, -7.0])
    def test_poles(self, pole):
        with pytest.raises(PoleError):
            gamma_complex(pole)

    def test_against_reference_on_box(self):
        rng = random.Random(2204)
        with mp.workdps(30):
            for _ in range(60):
                w = complex(rng.uniform(-20, 20), rng.uniform(-20, 20))
                if abs(w.imag) < 1e-3 and w.real <= 0.5:
                    continue  # too near the pole line for a relative test
                got = gamma_complex(w)
                ref = mp.gamma(mp.mpc(w))
                rel = abs(got.value - complex(ref)) / abs(complex(ref))
                assert rel <= 1e-12, f"gamma rel error {rel:.2e} at {w}"

    def test_error_widens_outside_box(self):
        inside = gamma_complex(5.0 + 5.0j)
        outside = gamma_complex(42.0)
        assert outside.abs_error / abs(outside.value) > inside.abs_error / abs(
            inside.value
        )


class TestNormalizationConstant:
    def test_trivial_case(self):
        c = normalization_constant(CoulombParams(0.0, 0.0))
        assert abs(c.value - 1.0) <= 1e-13

    def test_integer_case(self):
        c = normalization_constant(CoulombParams(1.0, 0.0))
        assert abs(c.value - 1.0 / 3.0) <= 1e-13

    def test_imaginary_shift(self):
        # modulus of the top gamma factor: |Gamma(1+i)| = sqrt(pi / sinh pi)
        c = normalization_constant(CoulombParams(0.0, 1.0))
        expected = math.exp(-math.pi / 2) * math.sqrt(math.pi / math.sinh(math.pi))
        assert abs(c.value - expected) <= abs(expected) * 1e-12
        assert abs(c.value - 0.10842251310207263) <= 1e-14

    def test_pole_in_top_factor(self):
        # L + 1 + i eta = -1 while 2L + 2 = 2 stays clear
        with pytest.raises(PoleError):
            normalization_constant(CoulombParams(0.0, 2.0j))


# ---------------------------------------------------------------------------
# evaluation


class TestEvalG:
    def test_sine_values(self):
        p = CoulombParams(0.0, 0.0)
        rng = random.Random(3303)
        for _ in range(50):
            z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            if abs(z) > 3:
                continue
            got = eval_g(p, z)
            assert abs(got.value - cmath.sin(z)) <= 1e-12

    def test_origin_exact(self):
        got = eval_g(CoulombParams(1.3, -0.7), 0.0)
        assert got.value == 0.0 and got.abs_error == 0.0

    def test_imaginary_argument(self):
        got = eval_g(CoulombParams(0.0, 0.0), 1.0j)
        assert abs(got.value - 1.0j * math.sinh(1.0)) <= 1e-12

    def test_error_bound_is_honest(self):
        p = CoulombParams(0.0, 0.0)
        for z in (0.5, 2.9, 1.5j, -2.0 + 1.0j):
            got = eval_g(p, z)
            true_err = abs(got.value - cmath.sin(z))
            assert true_err <= got.abs_error + 1e-13

    def test_normalization_limit(self):
        p = CoulombParams(0.7, 0.4)
        got = eval_g(p, 1e-8)
        assert abs(got.value / 1e-8 - 1.0) <= 1e-7

    def test_derivative_consistency(self):
        p = CoulombParams(0.8, -0.3)
        h = 1e-5
        rng = random.Random(3304)
        for _ in range(10):
            z = complex(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9))
            fd = (eval_g(p, z + h).value - eval_g(p, z - h).value) / (2 * h)
            assert abs(eval_g_prime(p, z).value - fd) <= 1e-6

    def test_second_derivative_sine(self):
        got = eval_g_second(CoulombParams(0.0, 0.0), 1.0)
        assert abs(got.value - (-math.sin(1.0))) <= 1e-12

    def test_prime_origin(self):
        assert eval_g_prime(CoulombParams(0.0, 1.0), 0.0).value == 1.0

    def test_second_origin(self):
        p = CoulombParams(0.5, 0.1)
        got = eval_g_second(p, 0.0)
        assert got.value == 2 * p.eta / (p.L + 1)

    def test_far_radius_fails_cleanly(self):
        with pytest.raises(NoConvergence):
            eval_g(CoulombParams(0.0, 0.0), 200.0)


class TestEvalF:
    def test_sine_case(self):
        got = eval_f(CoulombParams(0.0, 0.0), 1.0)
        assert abs(got.value - math.sin(1.0)) <= 1e-12

    def test_zero_of_sine(self):
        got = eval_f(CoulombParams(0.0, 0.0), math.pi)
        assert abs(got.value) < 1e-9

    def test_origin_with_positive_order(self):
        assert eval_f(CoulombParams(1.0, 0.0), 0.0).value == 0.0
        assert eval_f(CoulombParams(0.25, 0.0), 0.0).value == 0.0

    def test_origin_branch_point(self):
        with pytest.raises(BranchPoint):
            eval_f(CoulombParams(-0.5, 0.0), 0.0)

    def test_factorization_consistency(self):
        # F must equal C * z^L * g with principal branch, including z < 0
        p = CoulombParams(0.5, 0.2)
        z = -1.0 + 0.0j
        c = normalization_constant(p).value
        g = eval_g(p, z).value
        expected = c * cmath.exp(p.L * cmath.log(z)) * g
        assert abs(eval_f(p, z).value - expected) <= 1e-13 * abs(expected)

    def test_quadratic_leading_order(self):
        p = CoulombParams(1.0, 0.0)
        c = normalization_constant(p).value
        z = 1e-4
        got = eval_f(p, z).value
        assert abs(got - c * z**2) <= abs(c) * z**3


# ---------------------------------------------------------------------------
# independent oracle


class TestKummerOracle:
    def test_sine_coefficients(self):
        table = kummer_oracle(CoulombParams(0.0, 0.0), 9)
        reference = make_coefficients(CoulombParams(0.0, 0.0), 9, 0.5)
        for a, b in zip(table.coeffs, reference.coeffs):
            assert abs(a - b) <= 1e-14 * (1 + abs(b))

    def test_first_coefficient(self):
        table = kummer_oracle(CoulombParams(0.0, 1.0), 1)
        assert abs(table.coeffs[1] - 1.0) <= 1e-14

    def test_agreement_on_random_draws(self):
        rng = random.Random(4402)
        for _ in range(5):
            params = random_params(rng)
            ours = make_coefficients(params, 30, 0.25)
            oracle = kummer_oracle(params, 30)
            for a, b in zip(ours.coeffs, oracle.coeffs):
                scale = max(abs(a), abs(b))
                if scale == 0:
                    continue
                assert abs(a - b) / scale <= 1e-12
