"""Bound state of the attractive delta potential inside the magnetic field.

The level sits below the lowest Landau level by a binding energy
hbar omega b, where the dimensionless depth b > 0 solves the regularized
condition (lam / 4 pi) * sum_{n=0..N} 1/(n + b) = 1. Three solvers are
provided: the exact truncated sum (digamma closed form plus bracketed root
finding), the logarithmic approximation b = N / (e^{4 pi / lam} - 1), and
the large-N asymptotic b = N e^{-4 pi / lam}. Energies are reported in
hbar omega units.

The closed-form ground state and its spectral reconstruction from the
Landau basis give two independent routes to the same wavefunction; the
reconstruction is the oracle for the closed form.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import SolverError, ValidationError
from .landau import hamiltonian_fd
from .special import (Bracket, digamma, find_root_bracketed, gauss_hermite_scaled,
                      hermite_fn, hermite_fn_all, trigamma,
                      GAUSS_HERMITE_MAX, N_MAX_HERMITE)
from .units import DerivedScales, PhysicalParams

_DIRECT_SUM_MAX = 10 ** 5


class SolveMethod(Enum):
    EXACT_SUM = "exact"
    LOG_APPROX = "log"
    ASYMPTOTIC = "asymptotic"


@dataclass(frozen=True)
class BoundStateSolution:
    """Solved bound level. ``energy`` and ``binding`` are in hbar omega units:
    energy = 1/2 - b, binding = b >= 0."""

    b: float
    energy: float
    binding: float
    cutoff_N: int
    c_norm: float
    method: SolveMethod

    def __post_init__(self) -> None:
        if not (self.b > 0.0):
            raise ValidationError(f"bound state needs b > 0, got {self.b!r}")


def _solution(b: float, N: int, method: SolveMethod) -> BoundStateSolution:
    return BoundStateSolution(b=b, energy=0.5 - b, binding=b, cutoff_N=N,
                              c_norm=1.0 / math.sqrt(trigamma(b)), method=method)


def _check_lambda_cutoff(lam: float, N: int) -> None:
    if not (lam > 0.0 and math.isfinite(lam)):
        raise ValidationError(f"lambda must be positive and finite, got {lam!r}")
    if N < 1:
        raise ValidationError(f"cutoff N must be >= 1, got {N}")


def energy_sum(b: float, N: int) -> float:
    """Truncated level sum sum_{n=0}^{N} 1/(n + b) = psi(N + 1 + b) - psi(b)."""
    if not (b > 0.0):
        raise ValidationError(f"energy_sum requires b > 0, got {b!r}")
    if N < 0:
        raise ValidationError(f"cutoff N must be >= 0, got {N}")
    return digamma(N + 1 + b) - digamma(b)


def energy_sum_direct(b: float, N: int) -> float:
    """Term-by-term cross-check of energy_sum; capped at N = 1e5."""
    if not (b > 0.0):
        raise ValidationError(f"energy_sum_direct requires b > 0, got {b!r}")
    if not (0 <= N <= _DIRECT_SUM_MAX):
        raise ValidationError(f"direct summation supports 0 <= N <= {_DIRECT_SUM_MAX}")
    n = np.arange(N + 1, dtype=float)
    return float(np.sum(1.0 / (n + b)))


def defining_residual(b: float, lam: float, N: int) -> float:
    """(lam / 4 pi) * energy_sum(b, N) - 1; zero at the solved level."""
    return lam / (4.0 * math.pi) * energy_sum(b, N) - 1.0


def solve_b_exact(lam: float, N: int) -> BoundStateSolution:
    """Root of the truncated sum condition.

    The sum is strictly decreasing in b, so the root is unique. Bracketing
    starts at [1e-12 (N+1), 1e3 N] and the upper end grows geometrically if
    needed; a Newton polish with the trigamma derivative drives the defining
    residual to machine level.
    """
    _check_lambda_cutoff(lam, N)
    target = 4.0 * math.pi / lam
    b_lo = 1e-12 * (N + 1)
    if energy_sum(b_lo, N) < target:
        raise SolverError(
            f"no root above b = {b_lo:g}: coupling lambda = {lam:g} is too small "
            f"for cutoff N = {N} (4 pi / lambda exceeds the truncated sum)")
    b_hi = 1e3 * N
    while energy_sum(b_hi, N) > target:
        b_hi *= 10.0
        if b_hi > 1e30:
            raise SolverError("failed to bracket the energy condition root")
    f = lambda b: energy_sum(b, N) - target
    root = find_root_bracketed(f, Bracket.from_fn(f, b_lo, b_hi), tol=1e-13)
    for _ in range(3):
        slope = trigamma(N + 1 + root) - trigamma(root)
        step = f(root) / slope
        if root - step > 0.0:
            root -= step
    return _solution(root, N, SolveMethod.EXACT_SUM)


def solve_b_log(lam: float, N: int) -> BoundStateSolution:
    """Closed form of the log-regularized condition: b = N / (e^{4 pi / lam} - 1)."""
    _check_lambda_cutoff(lam, N)
    return _solution(N / math.expm1(4.0 * math.pi / lam), N, SolveMethod.LOG_APPROX)


def b_asymptotic(lam: float, N: int) -> BoundStateSolution:
    """Large-N limit b = N e^{-4 pi / lam}."""
    _check_lambda_cutoff(lam, N)
    return _solution(N * math.exp(-4.0 * math.pi / lam), N, SolveMethod.ASYMPTOTIC)


def transmutation_lambda(N: int, target_b: float) -> float:
    """Bare coupling lam(N) = 4 pi / ln(N / target_b + 1) that pins the binding
    at target_b while the cutoff runs; the dimensionless coupling trades for a
    dimensionful binding energy."""
    if N < 1:
        raise ValidationError(f"cutoff N must be >= 1, got {N}")
    if not (0.0 < target_b < N):
        raise ValidationError(f"target_b must satisfy 0 < target_b < N, got {target_b!r}")
    return 4.0 * math.pi / math.log1p(N / target_b)


def ground_state_eval(x: float, y: float, scales: DerivedScales) -> complex:
    """Closed-form normalized bound state
    (1 / sqrt(2 pi) a) exp((-x^2 - y^2 + 2 i x y) / 4 a^2)."""
    a2 = scales.a * scales.a
    return cmath.exp((-x * x - y * y + 2j * x * y) / (4.0 * a2)) \
        / math.sqrt(2.0 * math.pi) / scales.a


def reconstruct_state(b: float, cutoff_n: int, quad_k: int,
                      x: float, y: float, scales: DerivedScales) -> complex:
    """Rebuild the bound state from the Landau expansion, unnormalized.

    Psi(x, y) ~ sum_n (n + b)^{-1} Integral dp e^{i p x / hbar}
    U_n(y; y0(p)) V_n(0; y0(p)). Changing variables p -> y0 = p a^2 / hbar
    and completing the two Gaussians gives weight exp(-t^2) in
    t = (y0 - y/2) / a, so the momentum integral is a Gauss-Hermite sum over
    products of orthonormal Hermite functions:

    Psi ~ e^{i x y / 2 a^2} sum_n (n + b)^{-1} sum_k w_k e^{t_k^2}
          e^{i x t_k / a} phi_n(y/2a - t_k) phi_n(-y/2a - t_k).

    Compare results as normalized ratios only.
    """
    if not (b > 0.0):
        raise ValidationError(f"reconstruction requires b > 0, got {b!r}")
    if not (0 <= cutoff_n <= N_MAX_HERMITE):
        raise ValidationError(f"cutoff_n must be in [0, {N_MAX_HERMITE}], got {cutoff_n}")
    if not (1 <= quad_k <= GAUSS_HERMITE_MAX):
        raise ValidationError(f"quad_k must be in [1, {GAUSS_HERMITE_MAX}], got {quad_k}")
    a = scales.a
    t, w_scaled = gauss_hermite_scaled(quad_k)
    phi_u = hermite_fn_all(cutoff_n, y / (2.0 * a) - t)
    phi_v = hermite_fn_all(cutoff_n, -y / (2.0 * a) - t)
    kernel = (phi_u * phi_v) @ (w_scaled * np.exp(1j * x * t / a))
    levels = np.arange(cutoff_n + 1, dtype=float)
    total = complex(np.sum(kernel / (levels + b)))
    return cmath.exp(1j * x * y / (2.0 * a * a)) * total


def schrodinger_residual(x: float, y: float, h: float, scales: DerivedScales,
                         params: PhysicalParams) -> complex:
    """H_fd Psi0 - (hbar omega / 2) Psi0 at a point away from the delta.

    The closed-form state is an exact hbar omega / 2 eigenstate of the free
    magnetic Hamiltonian away from the origin, so the finite-difference
    residual must shrink as O(h^2). Raw energy units.
    """
    if x == 0.0 and y == 0.0:
        raise ValidationError("residual is undefined at the origin (delta site)")
    psi = lambda xx, yy: ground_state_eval(xx, yy, scales)
    e0 = 0.5 * params.hbar * scales.omega
    return hamiltonian_fd(psi, x, y, h, scales, params) - e0 * psi(x, y)


@dataclass(frozen=True)
class SpectralCoefficients:
    """Functional form C(n, p) = c_E V_n(0; y0(p)) / (n + b) of the expansion
    coefficients, natural units (hbar = a = 1)."""

    b: float
    cutoff_N: int
    c_E: float

    @classmethod
    def from_solution(cls, sol: BoundStateSolution) -> "SpectralCoefficients":
        return cls(b=sol.b, cutoff_N=sol.cutoff_N, c_E=sol.c_norm)

    def coefficient(self, n: int, y0: float) -> float:
        return self.c_E * float(hermite_fn(n, -y0)) / (n + self.b)

    def norm_partial(self, n_max: int, quad_k: int) -> float:
        """Partial sum of sum_{n,p} |C|^2 with the momentum integral done by
        Gauss-Hermite quadrature; tends to 1 from below as n_max grows."""
        t, w_scaled = gauss_hermite_scaled(quad_k)
        phi = hermite_fn_all(n_max, t)
        q = (phi * phi) @ w_scaled
        levels = np.arange(n_max + 1, dtype=float)
        return self.c_E ** 2 * float(np.sum(q / (levels + self.b) ** 2))

    def system_residual(self, n: int, y0: float, lam: float) -> float:
        """Residual of the coefficient system row n at guiding center y0,
        with the momentum measure integral evaluated in closed form."""
        lhs = self.coefficient(n, y0) * (n + self.b)
        rhs = lam / (4.0 * math.pi) * energy_sum(self.b, self.cutoff_N) \
            * self.c_E * float(hermite_fn(n, -y0))
        return abs(lhs - rhs)
