"""Self-contained numerical kernels.

Hermite polynomials and orthonormal Hermite functions, digamma/trigamma,
the MacDonald function K0, Gauss-Hermite quadrature, a guaranteed-convergence
bracketed root finder, and second-order finite-difference operators on
rectangular grids. No dependency beyond numpy array plumbing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, SolverError, ValidationError

N_MAX_HERMITE = 200
GAUSS_HERMITE_MAX = 256
EULER_GAMMA = 0.5772156649015329
_ROOT_ITER_CAP = 200


# ---------------------------------------------------------------------------
# Hermite polynomials and Hermite functions
# ---------------------------------------------------------------------------

def hermite_eval(n: int, z: float) -> float:
    """Physicists' Hermite polynomial H_n(z) by the three-term recurrence.

    Raw polynomial values overflow quickly; n is capped at N_MAX_HERMITE and
    callers needing H_n inside a Gaussian envelope should use hermite_fn,
    which keeps every intermediate bounded.
    """
    if n < 0:
        raise ValidationError(f"n must be nonnegative, got {n}")
    if n > N_MAX_HERMITE:
        raise ValidationError(
            f"n={n} exceeds N_MAX_HERMITE={N_MAX_HERMITE}; "
            "use the scaled form hermite_fn instead")
    if n == 0:
        return 1.0
    h_prev, h = 1.0, 2.0 * z
    for k in range(1, n):
        h_prev, h = h, 2.0 * z * h - 2.0 * k * h_prev
    return h


def hermite_fn(n: int, u):
    """Orthonormal Hermite function phi_n(u) = H_n(u) e^{-u^2/2} / (2^n n! sqrt(pi))^{1/2}.

    Bounded for all real u, so safe for any n up to N_MAX_HERMITE.
    Accepts scalars or numpy arrays.
    """
    return hermite_fn_all(n, u)[n]


def hermite_fn_all(n_max: int, u) -> np.ndarray:
    """All phi_0..phi_{n_max} at once, shape (n_max + 1,) + shape(u)."""
    if n_max < 0:
        raise ValidationError(f"n_max must be nonnegative, got {n_max}")
    if n_max > N_MAX_HERMITE:
        raise ValidationError(f"n_max={n_max} exceeds N_MAX_HERMITE={N_MAX_HERMITE}")
    return _phi_recurrence(n_max, np.asarray(u, dtype=float))


# ---------------------------------------------------------------------------
# Digamma / trigamma
# ---------------------------------------------------------------------------
# Recurrence-shift to x >= 8, then the asymptotic series truncated at the
# B_12 term. Absolute error stays below 1e-12 on (0, inf).

def digamma(x: float) -> float:
    """psi(x) for x > 0."""
    if not (x > 0.0) or not math.isfinite(x):
        raise DomainError(f"digamma requires x > 0, got {x!r}")
    acc = 0.0
    while x < 8.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    tail = inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0
                   - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0
                   - inv2 * 691.0 / 32760.0)))))
    return acc + math.log(x) - 0.5 / x - tail


def trigamma(x: float) -> float:
    """psi'(x) for x > 0."""
    if not (x > 0.0) or not math.isfinite(x):
        raise DomainError(f"trigamma requires x > 0, got {x!r}")
    acc = 0.0
    while x < 8.0:
        acc += 1.0 / (x * x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    tail = inv * (1.0 + inv * (0.5 + inv * (1.0 / 6.0 - inv2 * (1.0 / 30.0
                  - inv2 * (1.0 / 42.0 - inv2 * (1.0 / 30.0
                  - inv2 * (5.0 / 66.0 - inv2 * 691.0 / 2730.0)))))))
    return acc + tail


# ---------------------------------------------------------------------------
# MacDonald function K0
# ---------------------------------------------------------------------------
# Ascending series below the z = 2 crossover. Above it, the asymptotic form
# e^{-z} sqrt(pi/2z) * S(z) with the correction factor S evaluated exactly:
# S(z) = pi^{-1/2} Integral e^{-s^2} (1 + s^2/2z)^{-1/2} ds, done by a fixed
# 128-node Gauss-Hermite rule. Term-by-term expansion of the integrand in
# 1/z reproduces the textbook asymptotic series; the quadrature sums it to
# machine precision for every z >= 2 instead of stalling at the series'
# smallest term.

_K0_SWITCH = 2.0
_K0_QUAD = 128


def bessel_k0(z: float) -> float:
    """K0(z) for z > 0, relative error well below 1e-10."""
    if not (z > 0.0) or not math.isfinite(z):
        raise DomainError(f"bessel_k0 requires z > 0, got {z!r}")
    if z <= _K0_SWITCH:
        return _k0_series(z)
    return _k0_asymptotic(z)


def _k0_series(z: float) -> float:
    q = 0.25 * z * z
    term = 1.0
    i0 = 1.0
    s = 0.0
    h = 0.0
    for m in range(1, 64):
        term *= q / (m * m)
        h += 1.0 / m
        i0 += term
        s += term * h
        if term * max(h, 1.0) < 1e-18 * i0:
            break
    return -(math.log(0.5 * z) + EULER_GAMMA) * i0 + s


def _k0_asymptotic(z: float) -> float:
    t, w = gauss_hermite_nodes(_K0_QUAD)
    integral = float(np.sum(w / np.sqrt(1.0 + t * t / (2.0 * z))))
    return math.exp(-z) * integral / math.sqrt(2.0 * z)


# ---------------------------------------------------------------------------
# Bracketed root finding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Bracket:
    """An interval [lo, hi] with a sign change of f enclosed."""

    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self) -> None:
        if not (self.lo < self.hi):
            raise ValidationError(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")
        if not (math.isfinite(self.f_lo) and math.isfinite(self.f_hi)):
            raise ValidationError("bracket endpoint values must be finite")
        if self.f_lo * self.f_hi > 0.0:
            raise ValidationError(
                f"bracket does not enclose a sign change: f(lo)={self.f_lo}, f(hi)={self.f_hi}")

    @classmethod
    def from_fn(cls, f: Callable[[float], float], lo: float, hi: float) -> "Bracket":
        return cls(lo=lo, hi=hi, f_lo=f(lo), f_hi=f(hi))


def find_root_bracketed(f: Callable[[float], float], bracket: Bracket,
                        tol: float = 1e-12) -> float:
    """Hybrid secant/bisection root finder.

    Returns x with |f(x)| <= tol or enclosing-interval width <= tol * max(1, |x|).
    The secant step is accepted only while it stays inside the current
    interval, otherwise the step falls back to bisection, so convergence is
    guaranteed. Hard cap of 200 iterations.
    """
    lo, hi, f_lo, f_hi = bracket.lo, bracket.hi, bracket.f_lo, bracket.f_hi
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    force_bisect = False
    for _ in range(_ROOT_ITER_CAP):
        width = hi - lo
        if width <= tol * max(1.0, abs(lo), abs(hi)):
            return 0.5 * (lo + hi)
        if force_bisect or f_hi == f_lo:
            x = 0.5 * (lo + hi)
        else:
            x = hi - f_hi * width / (f_hi - f_lo)
            if not (lo < x < hi):
                x = 0.5 * (lo + hi)
        f_x = f(x)
        if abs(f_x) <= tol or f_x == 0.0:
            return x
        if f_lo * f_x < 0.0:
            hi, f_hi = x, f_x
        else:
            lo, f_lo = x, f_x
        # a secant step that fails to halve the interval forfeits the next turn
        force_bisect = (hi - lo) > 0.5 * width
    raise SolverError(f"root finder failed to converge in {_ROOT_ITER_CAP} iterations")


# ---------------------------------------------------------------------------
# Gauss-Hermite quadrature (weight e^{-t^2})
# ---------------------------------------------------------------------------
# Golub-Welsch on the symmetric Jacobi matrix, one Newton polish of the nodes
# via the orthonormal Hermite-function recurrence, weights from
# w_i = e^{-t_i^2} / sum_j phi_j(t_i)^2. The scaled weights w_i e^{t_i^2}
# come straight from the phi sum, so they stay representable at every order.

_gh_cache: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}


def _gh_build(k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    if k == 1:
        nodes = np.zeros(1)
    else:
        off = np.sqrt(np.arange(1, k) / 2.0)
        jac = np.diag(off, 1) + np.diag(off, -1)
        nodes = np.linalg.eigvalsh(jac)
    for _ in range(2):
        phi = _phi_recurrence(k, nodes)
        deriv = math.sqrt(2.0 * k) * phi[k - 1] - nodes * phi[k]
        nodes = nodes - phi[k] / deriv
    phi = _phi_recurrence(k, nodes)
    scaled = 1.0 / np.sum(phi[:k] * phi[:k], axis=0)
    weights = scaled * np.exp(-nodes * nodes)
    for arr in (nodes, weights, scaled):
        arr.setflags(write=False)
    return nodes, weights, scaled


def _phi_recurrence(n_max: int, u: np.ndarray) -> np.ndarray:
    # stable upward recurrence for the orthonormal Hermite functions
    out = np.empty((n_max + 1,) + u.shape)
    out[0] = math.pi ** -0.25 * np.exp(-0.5 * u * u)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * u * out[0]
    for n in range(1, n_max):
        out[n + 1] = u * math.sqrt(2.0 / (n + 1)) * out[n] \
            - math.sqrt(n / (n + 1.0)) * out[n - 1]
    return out


def gauss_hermite_nodes(k: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights; exact for polynomials of degree <= 2k - 1."""
    nodes, weights, _ = _gauss_hermite_full(k)
    return nodes, weights


def gauss_hermite_scaled(k: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights * e^{t^2}, for integrands with the Gaussian factored out."""
    nodes, _, scaled = _gauss_hermite_full(k)
    return nodes, scaled


def _gauss_hermite_full(k: int):
    if not (1 <= k <= GAUSS_HERMITE_MAX):
        raise ValidationError(f"k must be in [1, {GAUSS_HERMITE_MAX}], got {k}")
    if k not in _gh_cache:
        _gh_cache[k] = _gh_build(k)
    return _gh_cache[k]


# ---------------------------------------------------------------------------
# Grids and finite-difference operators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Grid2D:
    """Rectangular sample grid, values stored row-major with y as the outer axis.

    Scalar grids hold values of shape (ny, nx); 2-vector grids (ny, nx, 2).
    """

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.nx < 2 or self.ny < 2:
            raise ValidationError(f"grid needs nx, ny >= 2, got {self.nx} x {self.ny}")
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValidationError("grid extent is empty")
        if self.values.shape[:2] != (self.ny, self.nx):
            raise ValidationError(
                f"values shape {self.values.shape} does not match grid {self.ny} x {self.nx}")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def dy(self) -> float:
        return (self.y_max - self.y_min) / (self.ny - 1)

    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    def ys(self) -> np.ndarray:
        return np.linspace(self.y_min, self.y_max, self.ny)

    @classmethod
    def sample(cls, f, x_min: float, x_max: float, y_min: float, y_max: float,
               nx: int, ny: int) -> "Grid2D":
        """Sample f(X, Y) on the meshgrid; f may return a scalar field or a
        tuple (fx, fy) which is stored as a 2-vector grid."""
        x = np.linspace(x_min, x_max, nx)
        y = np.linspace(y_min, y_max, ny)
        X, Y = np.meshgrid(x, y)
        out = f(X, Y)
        if isinstance(out, tuple):
            out = np.stack(out, axis=-1)
        return cls(x_min, x_max, y_min, y_max, nx, ny, np.asarray(out, dtype=float))


def _check_interior(grid: Grid2D, i: int, j: int) -> None:
    if not (1 <= i <= grid.nx - 2 and 1 <= j <= grid.ny - 2):
        raise ValidationError(
            f"finite differences need an interior point: (i={i}, j={j}) "
            f"on a {grid.nx} x {grid.ny} grid")


def fd_divergence(field_grid: Grid2D, i: int, j: int) -> float:
    """Central-difference divergence of a 2-vector grid at x-index i, y-index j."""
    _check_interior(field_grid, i, j)
    v = field_grid.values
    ddx = (v[j, i + 1, 0] - v[j, i - 1, 0]) / (2.0 * field_grid.dx)
    ddy = (v[j + 1, i, 1] - v[j - 1, i, 1]) / (2.0 * field_grid.dy)
    return ddx + ddy


def fd_curl_z(field_grid: Grid2D, i: int, j: int) -> float:
    """Central-difference z-curl (d jy/dx - d jx/dy) at x-index i, y-index j."""
    _check_interior(field_grid, i, j)
    v = field_grid.values
    djy_dx = (v[j, i + 1, 1] - v[j, i - 1, 1]) / (2.0 * field_grid.dx)
    djx_dy = (v[j + 1, i, 0] - v[j - 1, i, 0]) / (2.0 * field_grid.dy)
    return djy_dx - djx_dy


def fd_laplacian(scalar_grid: Grid2D, i: int, j: int) -> float:
    """Five-point Laplacian at x-index i, y-index j."""
    _check_interior(scalar_grid, i, j)
    v = scalar_grid.values
    lap_x = (v[j, i + 1] - 2.0 * v[j, i] + v[j, i - 1]) / scalar_grid.dx ** 2
    lap_y = (v[j + 1, i] - 2.0 * v[j, i] + v[j - 1, i]) / scalar_grid.dy ** 2
    return lap_x + lap_y


def interior_divergence(field_grid: Grid2D) -> np.ndarray:
    """Vectorized fd_divergence over all interior points, shape (ny-2, nx-2)."""
    v = field_grid.values
    ddx = (v[1:-1, 2:, 0] - v[1:-1, :-2, 0]) / (2.0 * field_grid.dx)
    ddy = (v[2:, 1:-1, 1] - v[:-2, 1:-1, 1]) / (2.0 * field_grid.dy)
    return ddx + ddy


def interior_curl_z(field_grid: Grid2D) -> np.ndarray:
    """Vectorized fd_curl_z over all interior points, shape (ny-2, nx-2)."""
    v = field_grid.values
    djy_dx = (v[1:-1, 2:, 1] - v[1:-1, :-2, 1]) / (2.0 * field_grid.dx)
    djx_dy = (v[2:, 1:-1, 0] - v[:-2, 1:-1, 0]) / (2.0 * field_grid.dy)
    return djy_dx - djx_dy
