import cmath
import math

import numpy as np
import pytest

from magbound import (SolveMethod, SolverError, SpectralCoefficients, ValidationError,
                      b_asymptotic, defining_residual, energy_sum, energy_sum_direct,
                      ground_state_eval, reconstruct_state, schrodinger_residual,
                      solve_b_exact, solve_b_log, transmutation_lambda, trigamma)

FOUR_PI = 4.0 * math.pi


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

def bisect_b(lam: float, N: int, tol: float = 1e-11) -> float:
    """Independent route to the energy condition root: direct term-by-term
    summation plus plain bisection."""
    n = np.arange(N + 1, dtype=float)
    f = lambda b: float(np.sum(1.0 / (n + b))) - FOUR_PI / lam
    lo, hi = 1e-9, 1e9
    while hi - lo > tol * max(1.0, lo):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# the truncated level sum
# ---------------------------------------------------------------------------

def test_energy_sum_small_cases():
    assert energy_sum(1.0, 1) == pytest.approx(1.5, rel=1e-14)
    assert energy_sum(0.5, 0) == pytest.approx(2.0, rel=1e-14)


def test_energy_sum_closed_vs_direct():
    for b in (0.05, 1.0, 37.2):
        assert energy_sum(b, 10 ** 4) \
            == pytest.approx(energy_sum_direct(b, 10 ** 4), abs=1e-10)


def test_energy_sum_direct_cap():
    energy_sum_direct(1.0, 10 ** 5)
    with pytest.raises(ValidationError):
        energy_sum_direct(1.0, 10 ** 5 + 1)


def test_energy_sum_domain():
    with pytest.raises(ValidationError):
        energy_sum(0.0, 10)
    with pytest.raises(ValidationError):
        energy_sum(-1.0, 10)


# ---------------------------------------------------------------------------
# solvers
# ---------------------------------------------------------------------------

def test_solve_b_exact_against_bisection_oracle():
    # frozen oracle: bisect_b(4 pi, 1000) = 583.05858574
    sol = solve_b_exact(FOUR_PI, 1000)
    assert sol.b == pytest.approx(583.05858574, abs=1e-6)
    assert sol.b == pytest.approx(bisect_b(FOUR_PI, 1000), rel=1e-9)
    assert sol.method is SolveMethod.EXACT_SUM


@pytest.mark.parametrize("lam,N", [(math.pi, 500), (2 * math.pi, 10 ** 3),
                                   (FOUR_PI, 10 ** 4), (25.0, 10 ** 5)])
def test_solve_b_exact_defining_residual(lam, N):
    sol = solve_b_exact(lam, N)
    assert abs(defining_residual(sol.b, lam, N)) <= 1e-10


def test_solve_b_exact_monotone_in_lambda():
    N = 1000
    assert solve_b_exact(2 * math.pi, N).b < solve_b_exact(FOUR_PI, N).b


def test_solve_b_exact_coupling_too_small():
    with pytest.raises(SolverError, match="lambda"):
        solve_b_exact(1e-15, 1000)


def test_solve_b_log_values():
    sol = solve_b_log(FOUR_PI, 1000)
    assert sol.b == pytest.approx(1000.0 / (math.e - 1.0), rel=1e-14)
    assert sol.b == pytest.approx(581.9767068693, abs=1e-9)
    assert math.log(1000.0 / sol.b + 1.0) == pytest.approx(1.0, rel=1e-12)


def test_solve_b_log_exponent_identity():
    sol = solve_b_log(FOUR_PI / math.log(2.0), 64)
    assert sol.b == pytest.approx(64.0, rel=1e-14)


@pytest.mark.parametrize("lam,N", [(1.3, 100), (2 * math.pi, 10 ** 4), (40.0, 77)])
def test_solve_b_log_defining_identity(lam, N):
    sol = solve_b_log(lam, N)
    assert lam / FOUR_PI * math.log(N / sol.b + 1.0) == pytest.approx(1.0, rel=1e-12)


def test_b_asymptotic_values():
    sol = b_asymptotic(2 * math.pi, 100)
    assert sol.b == pytest.approx(100.0 * math.exp(-2.0), rel=1e-14)
    assert sol.b == pytest.approx(13.5335283237, abs=1e-9)
    assert sol.binding == sol.b


def test_asymptotic_to_log_ratio_identity():
    for lam, N in ((math.pi, 50), (5.0, 1000), (FOUR_PI, 10 ** 6)):
        ratio = b_asymptotic(lam, N).b / solve_b_log(lam, N).b
        assert ratio == pytest.approx(1.0 - math.exp(-FOUR_PI / lam), rel=1e-13)


def test_asymptotic_matches_log_at_weak_coupling():
    # e^{-4 pi} ~ 3.5e-6 controls the gap at lam = 1
    b_log = solve_b_log(1.0, 10 ** 4).b
    b_asym = b_asymptotic(1.0, 10 ** 4).b
    assert abs(b_asym - b_log) / b_log <= 4e-6


def test_method_consistency_where_valid():
    # relative gap between exact and log roots is (e^{4 pi/lam} + 1) / (2 N);
    # that is within 10/N for lam in {2 pi, 4 pi} and within 28/N for lam = pi
    for lam in (2 * math.pi, FOUR_PI):
        for N in (10 ** 4, 10 ** 5):
            be = solve_b_exact(lam, N).b
            bl = solve_b_log(lam, N).b
            assert abs(be - bl) / be <= 10.0 / N
    for N in (10 ** 3, 10 ** 4):
        be = solve_b_exact(math.pi, N).b
        bl = solve_b_log(math.pi, N).b
        gap = abs(be - bl) / be
        assert 20.0 / N <= gap <= 28.0 / N


def test_solver_validation():
    for solver in (solve_b_exact, solve_b_log, b_asymptotic):
        with pytest.raises(ValidationError):
            solver(-1.0, 100)
        with pytest.raises(ValidationError):
            solver(1.0, 0)


# ---------------------------------------------------------------------------
# solution invariants
# ---------------------------------------------------------------------------

def test_solution_fields():
    sol = solve_b_log(2 * math.pi, 10 ** 5)
    assert sol.binding == pytest.approx(sol.b, rel=1e-12)
    assert sol.energy == pytest.approx(0.5 - sol.b, rel=1e-12)
    assert sol.cutoff_N == 10 ** 5
    assert sol.c_norm > 0.0


@pytest.mark.parametrize("b", [0.1, 1.0, 10.0])
def test_c_norm_is_inverse_sqrt_trigamma(b):
    sol = solve_b_log(FOUR_PI / math.log(10 ** 4 / b + 1.0), 10 ** 4)
    assert sol.b == pytest.approx(b, rel=1e-12)
    assert sol.c_norm ** -2 == pytest.approx(trigamma(sol.b), rel=1e-10)


@pytest.mark.parametrize("b", [0.1, 1.0, 10.0])
def test_c_norm_tail_bound(b):
    # trigamma(b) - sum_{n=0}^{1e6} (n+b)^{-2} is the series tail, between 0
    # and 1/(1e6)
    n = np.arange(10 ** 6 + 1, dtype=float)
    partial = float(np.sum(1.0 / (n + b) ** 2))
    diff = trigamma(b) - partial
    assert 0.0 <= diff <= 1e-6 + 1e-10


# ---------------------------------------------------------------------------
# dimensional transmutation
# ---------------------------------------------------------------------------

def test_transmutation_inversion():
    assert transmutation_lambda(100, 1.0) == pytest.approx(FOUR_PI / math.log(101.0), rel=1e-14)


@pytest.mark.parametrize("N,target", [(10 ** 3, 0.1), (10 ** 6, 0.1), (10 ** 4, 7.0)])
def test_transmutation_round_trip(N, target):
    lam = transmutation_lambda(N, target)
    assert solve_b_log(lam, N).b == pytest.approx(target, rel=1e-12)


def test_transmutation_coupling_decreases_with_cutoff():
    lams = [transmutation_lambda(N, 0.1) for N in (10 ** 2, 10 ** 4, 10 ** 6)]
    assert lams[0] > lams[1] > lams[2]


def test_transmutation_validation():
    with pytest.raises(ValidationError):
        transmutation_lambda(100, 100.0)
    with pytest.raises(ValidationError):
        transmutation_lambda(100, -1.0)


# ---------------------------------------------------------------------------
# closed-form ground state
# ---------------------------------------------------------------------------

def test_ground_state_center_value(natural):
    params, scales = natural
    val = ground_state_eval(0.0, 0.0, scales)
    assert val.imag == 0.0
    assert val.real == pytest.approx(1.0 / math.sqrt(2.0 * math.pi), rel=1e-14)


def test_ground_state_gaussian_falloff(natural):
    params, scales = natural
    a = scales.a
    ratio = abs(ground_state_eval(a, a, scales)) / abs(ground_state_eval(0.0, 0.0, scales))
    assert ratio == pytest.approx(math.exp(-0.5), rel=1e-13)


def test_ground_state_norm_quadrature(natural):
    params, scales = natural
    a = scales.a
    xs = np.linspace(-8.0 * a, 8.0 * a, 201)
    X, Y = np.meshgrid(xs, xs)
    prob = np.abs(np.exp((-X ** 2 - Y ** 2 + 2j * X * Y) / (4 * a * a))
                  / math.sqrt(2 * math.pi) / a) ** 2
    w = np.full(len(xs), xs[1] - xs[0])
    w[0] *= 0.5
    w[-1] *= 0.5
    norm = float(w @ prob @ w)
    assert abs(norm - 1.0) <= 1e-8


def test_ground_state_probability_is_radial(natural):
    params, scales = natural
    r = 1.3 * scales.a
    mags = [abs(ground_state_eval(r * math.cos(t), r * math.sin(t), scales))
            for t in np.linspace(0.0, 2.0 * math.pi, 17)]
    assert max(mags) - min(mags) <= 1e-14 * max(mags)


# ---------------------------------------------------------------------------
# Schrodinger residual of the closed form
# ---------------------------------------------------------------------------

def test_schrodinger_residual_small(natural):
    params, scales = natural
    a = scales.a
    h = 1e-3 * a
    e0 = 0.5 * params.hbar * scales.omega
    for x, y in ((a, 0.0), (2 * a, a), (0.1 * a, 0.1 * a), (-1.4 * a, 0.6 * a)):
        resid = schrodinger_residual(x, y, h, scales, params)
        assert abs(resid) <= 1e-5 * e0 * abs(ground_state_eval(x, y, scales))


def test_schrodinger_residual_order_two(natural):
    params, scales = natural
    a = scales.a
    r1 = abs(schrodinger_residual(2 * a, a, 4e-3 * a, scales, params))
    r2 = abs(schrodinger_residual(2 * a, a, 2e-3 * a, scales, params))
    assert r1 / r2 == pytest.approx(4.0, rel=0.2)


def test_schrodinger_residual_near_origin_stays_bounded(natural):
    params, scales = natural
    a = scales.a
    e0 = 0.5 * params.hbar * scales.omega
    resid = schrodinger_residual(0.01 * a, -0.01 * a, 1e-3 * a, scales, params)
    assert abs(resid) <= 1e-5 * e0 * abs(ground_state_eval(0.01 * a, -0.01 * a, scales))


def test_schrodinger_residual_rejects_origin(natural):
    params, scales = natural
    with pytest.raises(ValidationError):
        schrodinger_residual(0.0, 0.0, 1e-3, scales, params)


# ---------------------------------------------------------------------------
# spectral reconstruction (the oracle for the closed form)
# ---------------------------------------------------------------------------

def test_reconstruction_matches_closed_form(natural):
    params, scales = natural
    a = scales.a
    ref = reconstruct_state(1e-4, 100, 64, 0.0, 0.0, scales)
    base = ground_state_eval(0.0, 0.0, scales)
    for x, y in ((0.5 * a, 0.0), (0.0, 0.5 * a), (a, a)):
        ratio = reconstruct_state(1e-4, 100, 64, x, y, scales) / ref
        closed = ground_state_eval(x, y, scales) / base
        assert abs(ratio - closed) <= 0.01 * abs(closed)


def test_reconstruction_rotational_modulus(natural):
    params, scales = natural
    r = 0.7 * scales.a
    m1 = abs(reconstruct_state(1e-4, 100, 64, r, 0.0, scales))
    m2 = abs(reconstruct_state(1e-4, 100, 64, 0.0, r, scales))
    assert abs(m1 - m2) <= 0.01 * m2


def test_reconstruction_carries_closed_form_phase(natural):
    params, scales = natural
    a = scales.a
    val = reconstruct_state(1e-4, 100, 64, 0.8 * a, 1.1 * a, scales)
    expected_phase = cmath.exp(1j * 0.8 * 1.1 / 2.0)
    # the remaining factor is real and positive at small b
    assert (val / expected_phase).imag == pytest.approx(0.0, abs=1e-12 * abs(val))
    assert (val / expected_phase).real > 0.0


def test_reconstruction_large_b_finite(natural):
    params, scales = natural
    a = scales.a
    for x, y in ((0.0, 0.0), (a, 0.0), (0.5 * a, -1.5 * a)):
        val = reconstruct_state(50.0, 100, 64, x, y, scales)
        assert cmath.isfinite(val)
    assert abs(reconstruct_state(50.0, 100, 64, 0.0, 0.0, scales)) > 0.0


def test_reconstruction_parameter_validation(natural):
    params, scales = natural
    with pytest.raises(ValidationError):
        reconstruct_state(-0.1, 10, 16, 0.0, 0.0, scales)
    with pytest.raises(ValidationError):
        reconstruct_state(1.0, 300, 16, 0.0, 0.0, scales)
    with pytest.raises(ValidationError):
        reconstruct_state(1.0, 10, 400, 0.0, 0.0, scales)


# ---------------------------------------------------------------------------
# spectral coefficients
# ---------------------------------------------------------------------------

def test_spectral_system_residual():
    lam = 2.0 * math.pi
    sol = solve_b_exact(lam, 400)
    coeffs = SpectralCoefficients.from_solution(sol)
    for n in range(6):
        for y0 in (0.0, 0.5, 1.3):
            assert coeffs.system_residual(n, y0, lam) <= 1e-8


def test_spectral_coefficient_decay():
    from magbound.special import hermite_fn

    coeffs = SpectralCoefficients(b=0.7, cutoff_N=100, c_E=1.0)
    assert abs(coeffs.coefficient(2, 0.0)) < abs(coeffs.coefficient(0, 0.0))
    # the on-site amplitude divides out to the 1/(n+b) envelope
    for n in (0, 2, 4, 8):
        rescaled = coeffs.coefficient(n, 0.0) * (n + coeffs.b) / float(hermite_fn(n, 0.0))
        assert rescaled == pytest.approx(coeffs.c_E, rel=1e-12)


def test_spectral_normalization_partial_sums():
    sol = solve_b_exact(2.0 * math.pi, 400)
    coeffs = SpectralCoefficients.from_solution(sol)
    partial_small = coeffs.norm_partial(40, 64)
    partial_big = coeffs.norm_partial(120, 128)
    assert partial_small < partial_big < 1.0 + 1e-12
    tail_bound = sol.c_norm ** 2 / (120.0 + sol.b)
    assert 1.0 - partial_big <= tail_bound + 1e-9
