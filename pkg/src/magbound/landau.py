"""Landau-gauge eigenstates of the free magnetic Hamiltonian.

Conventions: electron charge is -e_mag (e < 0), vector potential
A = (-yB, 0), so the guiding center sits at y0 = +c p / (e_mag B) and the
spatial wavefunction is exp(i p x / hbar) U_n(y - y0). The spinor factor
enters only through the spin shift of the energy; wavefunction evaluation
returns the scalar spatial part.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

from .errors import ValidationError
from .special import hermite_fn
from .units import DerivedScales, PhysicalParams


@dataclass(frozen=True)
class LandauQuantum:
    """Quantum numbers (n, p, s) of one Landau-gauge eigenstate."""

    n: int
    p: float
    s: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValidationError(f"n must be nonnegative, got {self.n}")
        if self.s not in (+1, -1):
            raise ValidationError(f"s must be +1 or -1, got {self.s}")


@dataclass(frozen=True)
class GuidingCenter:
    """Classical y-coordinate of the cyclotron-circle center for momentum p."""

    y0: float


def guiding_center(p: float, scales: DerivedScales, params: PhysicalParams) -> GuidingCenter:
    """y0 = -c p / (e B) = +c p / (e_mag B) = p a^2 / hbar for e < 0."""
    return GuidingCenter(y0=params.c * p / (params.e_mag * params.B))


def landau_energy(q: LandauQuantum, scales: DerivedScales, params: PhysicalParams) -> float:
    """hbar omega (n + 1/2) + s hbar omega m / (2 m_e), in unit-system energy."""
    hw = params.hbar * scales.omega / params.units.erg_per_energy
    return hw * (q.n + 0.5) + q.s * hw * params.m / (2.0 * params.m_e)


def basis_u(n: int, y: float, y0: float, a: float):
    """Normalized oscillator profile U_n(y) about the guiding center y0.

    U_n(y) = (2^n n! sqrt(pi) a)^{-1/2} exp(-(y-y0)^2 / 2a^2) H_n((y-y0)/a),
    evaluated in overflow-safe scaled form. Accepts array y.
    """
    return hermite_fn(n, (y - y0) / a) / math.sqrt(a)


def v_n0(n: int, y0: float, a: float):
    """sqrt(a) U_n(0): the dimensionless on-site amplitude entering the
    delta-potential coefficient system."""
    return hermite_fn(n, -y0 / a)


def landau_state_eval(q: LandauQuantum, x: float, y: float,
                      scales: DerivedScales, params: PhysicalParams) -> complex:
    """Spatial part exp(i p x / hbar) U_n(y; y0(p)) of the eigenstate."""
    y0 = guiding_center(q.p, scales, params).y0
    return cmath.exp(1j * q.p * x / params.hbar) * basis_u(q.n, y, y0, scales.a)


def hamiltonian_fd(psi: Callable[[float, float], complex], x: float, y: float,
                   h: float, scales: DerivedScales, params: PhysicalParams) -> complex:
    """Apply the free magnetic Hamiltonian to psi at (x, y) by central differences.

    H = (1/2m) [(-i hbar d/dx + (eB/c) y)^2 - hbar^2 d^2/dy^2] with e = -e_mag.
    Result is in raw energy units times psi. Step h must resolve the state
    (h well below the magnetic length).
    """
    if not (0.0 < h < scales.a):
        raise ValidationError(f"step h must satisfy 0 < h < a, got {h!r}")
    hbar, m = params.hbar, params.m
    beta = -params.e_mag * params.B / params.c
    p_c = psi(x, y)
    p_xp, p_xm = psi(x + h, y), psi(x - h, y)
    p_yp, p_ym = psi(x, y + h), psi(x, y - h)
    d2x = (p_xp - 2.0 * p_c + p_xm) / (h * h)
    d2y = (p_yp - 2.0 * p_c + p_ym) / (h * h)
    d1x = (p_xp - p_xm) / (2.0 * h)
    return (-hbar * hbar * (d2x + d2y)
            - 2.0j * hbar * beta * y * d1x
            + beta * beta * y * y * p_c) / (2.0 * m)
