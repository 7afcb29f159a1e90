"""Numerical self-verification of every closed-form claim in the library.

Each check measures a residual with an independent numerical route
(quadrature, finite differences, contour integrals, direct summation) and
compares it against a fixed tolerance. ``run_checks`` returns the full
list; the CLI turns it into a pass/fail report. The ``perturb_j0`` knob
multiplies the sampled current grids by a constant so a deliberate scale
fault is visible to the curl consistency check while leaving the
divergence-free property intact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import boundstate, currents, landau, special, zerofield
from .units import PhysicalParams, derive_scales


@dataclass(frozen=True)
class CheckResult:
    name: str
    measured: float
    tol: float
    passed: bool


def _result(name: str, measured: float, tol: float) -> CheckResult:
    return CheckResult(name=name, measured=measured, tol=tol,
                       passed=bool(measured <= tol))


def _natural():
    params = PhysicalParams.natural(lam=2.0 * math.pi)
    return params, derive_scales(params)


def check_scale_identities() -> CheckResult:
    params, scales = _natural()
    worst = max(
        abs(scales.a ** 2 * params.m * scales.omega / params.hbar - 1.0),
        abs(scales.d ** 2 - 2.0 * scales.a ** 2) / (2.0 * scales.a ** 2),
        abs(scales.a_scale - 2.0 * math.pi * scales.j0) / scales.a_scale,
    )
    return _result("scale-identities", worst, 1e-12)


def check_scale_homogeneity() -> CheckResult:
    lam = 2.0 * math.pi
    p1 = PhysicalParams.gaussian(b_kilogauss=7.0, lam=lam)
    p2 = PhysicalParams.gaussian(b_kilogauss=14.0, lam=lam)
    s1, s2 = derive_scales(p1), derive_scales(p2)
    worst = max(
        abs(s2.omega / s1.omega - 2.0),
        abs(s2.a / s1.a - 1.0 / math.sqrt(2.0)),
        abs(s2.j0 / s1.j0 - 4.0) / 4.0,
        abs(s2.a_scale / s1.a_scale - 4.0) / 4.0,
    )
    return _result("scale-homogeneity", worst, 1e-12)


def check_digamma_recurrence() -> CheckResult:
    worst = max(abs(special.digamma(x + 1.0) - special.digamma(x) - 1.0 / x)
                for x in (0.1, 0.5, 1.0, 5.0, 50.0))
    return _result("digamma-recurrence", worst, 1e-12)


def check_trigamma_derivative() -> CheckResult:
    h = 1e-4
    worst = max(abs(special.trigamma(x)
                    - (special.digamma(x + h) - special.digamma(x - h)) / (2.0 * h))
                for x in (0.5, 1.0, 2.0, 10.0))
    return _result("trigamma-derivative", worst, 1e-6)


def check_hermite_ode() -> CheckResult:
    # H'' - 2 z H' + 2 n H = 0, derivatives by central differences; the
    # residual is measured against the polynomial's sampled amplitude
    h = 5e-5
    zs = np.linspace(-5.0, 5.0, 41)
    worst = 0.0
    for n in (2, 5, 12, 20):
        vals = np.array([special.hermite_eval(n, z) for z in zs])
        scale = max(1.0, float(np.max(np.abs(vals))))
        for z in zs:
            hp = special.hermite_eval(n, z + h)
            hm = special.hermite_eval(n, z - h)
            hc = special.hermite_eval(n, z)
            d2 = (hp - 2.0 * hc + hm) / (h * h)
            d1 = (hp - hm) / (2.0 * h)
            worst = max(worst, abs(d2 - 2.0 * z * d1 + 2.0 * n * hc) / scale)
    return _result("hermite-ode-residual", worst, 1e-6)


def check_gauss_hermite_moments() -> CheckResult:
    rt_pi = math.sqrt(math.pi)
    worst = 0.0
    for k in (2, 8, 64):
        t, w = special.gauss_hermite_nodes(k)
        worst = max(worst, abs(float(np.sum(w)) - rt_pi) / rt_pi)
        if k >= 3:
            worst = max(worst, abs(float(np.sum(w * t * t)) - rt_pi / 2.0))
            worst = max(worst, abs(float(np.sum(w * t ** 4)) - 0.75 * rt_pi))
    return _result("gauss-hermite-moments", worst, 1e-12)


def check_landau_orthonormality() -> CheckResult:
    t, w_scaled = special.gauss_hermite_scaled(32)
    phi = special.hermite_fn_all(10, t)
    gram = (phi * w_scaled) @ phi.T
    worst = float(np.max(np.abs(gram - np.eye(11))))
    return _result("landau-orthonormality", worst, 1e-9)


def check_landau_eigenstate() -> CheckResult:
    params, scales = _natural()
    h = 1e-3 * scales.a
    ys = np.array([-2.3, -1.62, -1.05, -0.48, 0.17, 0.83, 1.38, 2.24])
    xs = np.array([-0.6, 0.3, 1.1])
    worst = 0.0
    for n in range(4):
        for p in (0.0, 1.0, -1.0):
            q = landau.LandauQuantum(n=n, p=p, s=-1)
            psi = lambda xx, yy: landau.landau_state_eval(q, xx, yy, scales, params)
            energy = params.hbar * scales.omega * (n + 0.5)
            amps = np.array([abs(psi(x, y)) for x in xs for y in ys])
            scale = float(np.max(amps)) * energy
            for x in xs:
                for y in ys:
                    if abs(psi(x, y)) <= 1e-6:
                        continue
                    resid = landau.hamiltonian_fd(psi, x, y, h, scales, params) \
                        - energy * psi(x, y)
                    worst = max(worst, abs(resid) / scale)
    return _result("landau-eigenstate-fd", worst, 1e-5)


def check_ground_state_norm() -> CheckResult:
    params, scales = _natural()
    a = scales.a
    n = 241
    xs = np.linspace(-8.0 * a, 8.0 * a, n)
    X, Y = np.meshgrid(xs, xs)
    prob = np.abs(ground_state_arrays(X, Y, scales)) ** 2
    wx = np.full(n, xs[1] - xs[0])
    wx[0] *= 0.5
    wx[-1] *= 0.5
    norm = float(wx @ prob @ wx)
    return _result("ground-state-norm", abs(norm - 1.0), 1e-8)


def ground_state_arrays(X: np.ndarray, Y: np.ndarray, scales) -> np.ndarray:
    a2 = scales.a ** 2
    return np.exp((-X * X - Y * Y + 2j * X * Y) / (4.0 * a2)) \
        / math.sqrt(2.0 * math.pi) / scales.a


def check_ground_state_residual() -> CheckResult:
    params, scales = _natural()
    a = scales.a
    h = 1e-3 * a
    rng = np.random.default_rng(7)
    pts = rng.uniform(-2.5 * a, 2.5 * a, size=(20, 2))
    pts = pts[np.hypot(pts[:, 0], pts[:, 1]) > 0.05 * a]
    e0 = 0.5 * params.hbar * scales.omega
    worst = max(abs(boundstate.schrodinger_residual(x, y, h, scales, params))
                / (e0 * abs(boundstate.ground_state_eval(x, y, scales)))
                for x, y in pts)
    return _result("ground-state-eigen-residual", worst, 1e-5)


def _current_grid(scales, n: int, half_extent: float, factor: float) -> special.Grid2D:
    def f(X, Y):
        jx, jy = currents.current_field_arrays(X, Y, scales)
        return factor * jx, factor * jy
    return special.Grid2D.sample(f, -half_extent, half_extent,
                                 -half_extent, half_extent, n, n)


def check_continuity(perturb_j0: float = 1.0) -> CheckResult:
    # the sampled current must stay divergence-free at second order: halving
    # the spacing must cut max |div j| by about 4
    params, scales = _natural()
    a = scales.a
    reports = []
    for n in (101, 201):
        grid = _current_grid(scales, n, 4.0 * a, perturb_j0)
        prob = special.Grid2D.sample(
            lambda X, Y: np.abs(ground_state_arrays(X, Y, scales)) ** 2,
            -4.0 * a, 4.0 * a, -4.0 * a, 4.0 * a, n, n)
        reports.append(currents.continuity_check(grid, prob).max_abs_div)
    ratio = reports[0] / reports[1]
    return _result("continuity-divergence-decay", abs(ratio - 4.0), 0.8)


def check_curl_match(perturb_j0: float = 1.0) -> CheckResult:
    params, scales = _natural()
    a = scales.a
    n = 513  # spacing a/64 over [-4a, 4a]
    grid = _current_grid(scales, n, 4.0 * a, perturb_j0)
    fd = special.interior_curl_z(grid)
    xs = grid.xs()[1:-1]
    X, Y = np.meshgrid(xs, grid.ys()[1:-1])
    closed = currents.curl_field_array(X, Y, scales)
    worst = float(np.max(np.abs(fd - closed))) / (scales.a_scale / math.pi)
    return _result("curl-fd-match", worst, 1e-3)


def check_complex_current_identity() -> CheckResult:
    params, scales = _natural()
    a = scales.a
    rng = np.random.default_rng(11)
    r = 4.0 * a * np.sqrt(rng.uniform(0.0, 1.0, 100))
    th = rng.uniform(0.0, 2.0 * math.pi, 100)
    worst = 0.0
    for rr, tt in zip(r, th):
        z = complex(rr * math.cos(tt), rr * math.sin(tt))
        jc = currents.current_complex(z, scales)
        sample = currents.current_closed(z.real, z.imag, scales)
        mag = math.hypot(sample.jx, sample.jy)
        if mag < 1e-300:
            continue
        worst = max(worst, abs(jc - complex(sample.jx, sample.jy)) / mag)
    return _result("complex-current-identity", worst, 1e-12)


def circulation(radius: float, scales, n_pts: int = 512) -> float:
    """Contour integral of the closed-form current around |z| = radius."""
    th = np.linspace(0.0, 2.0 * math.pi, n_pts, endpoint=False)
    x, y = radius * np.cos(th), radius * np.sin(th)
    jx, jy = currents.current_field_arrays(x, y, scales)
    tangential = -jx * np.sin(th) + jy * np.cos(th)
    return float(np.mean(tangential)) * 2.0 * math.pi * radius


def curl_flux(radius: float, scales, n_pts: int = 512) -> float:
    """Disc integral of the closed-form curl out to the same radius."""
    # midpoint rule in r; the integrand vanishes at r = 0
    r_edges = np.linspace(0.0, radius, n_pts + 1)
    r_mid = 0.5 * (r_edges[:-1] + r_edges[1:])
    vals = currents.curl_field_array(r_mid, np.zeros_like(r_mid), scales)
    return float(np.sum(vals * 2.0 * math.pi * r_mid) * (r_edges[1] - r_edges[0]))


def check_stokes() -> CheckResult:
    params, scales = _natural()
    a = scales.a
    worst = max(abs(circulation(r, scales) / curl_flux(r, scales) - 1.0)
                for r in (a, 2.0 * a, 3.0 * a))
    return _result("stokes-circulation-flux", worst, 1e-3)


def check_vortex_circulation() -> CheckResult:
    params, scales = _natural()
    a = scales.a
    worst = max(
        abs(circulation(r, scales)
            / currents.vortex_intensity(complex(r, 0.0), scales) - 1.0)
        for r in (0.7 * a, 1.3 * a, 2.2 * a))
    return _result("vortex-intensity-circulation", worst, 1e-6)


def check_vortex_superposition() -> CheckResult:
    params, scales = _natural()
    a = scales.a
    x0 = 1.5 * a
    intensity = currents.vortex_intensity(complex(x0, 0.0), scales)
    config = currents.VortexConfig(
        centers=(currents.VortexCenter(complex(-x0, 0.0), intensity),
                 currents.VortexCenter(complex(+x0, 0.0), intensity)),
        eps_sep=currents.EPS_SEP_FACTOR * a)
    scale = intensity / (2.0 * math.pi * x0)
    mid = abs(currents.multi_center_current(config, 0j)) / scale
    far = 100.0 * x0
    expected = 2.0 * intensity / (2.0 * math.pi * far)
    far_dev = abs(abs(currents.multi_center_current(config, complex(far, far) / math.sqrt(2.0)))
                  - expected) / expected
    worst = max(mid / 1e-10, far_dev / 0.05)  # both clauses normalized to 1
    return _result("vortex-superposition", worst, 1.0)


def check_zero_field_contrast() -> CheckResult:
    params, scales = _natural()
    state = zerofield.ZeroFieldState.from_binding_energy(0.5)
    l0 = state.l0
    value_scale = state.c_prefactor * special.bessel_k0(1.0)
    j_scale = value_scale ** 2 * params.hbar / (params.m * l0)
    xs = np.linspace(-4.0 * l0, 4.0 * l0, 21)
    worst_j = 0.0
    for x in xs:
        for y in xs:
            if x == 0.0 and y == 0.0:
                continue
            jx, jy = zerofield.zero_field_current(state, x, y, h=1e-3 * l0)
            worst_j = max(worst_j, math.hypot(jx, jy))
    # magnetic counterpart is nonzero at its ring maximum
    ring = currents.current_closed(scales.a, 0.0, scales)
    magnetic_ok = math.hypot(ring.jx, ring.jy) > 0.1 * scales.j0 * scales.a
    measured = worst_j / j_scale if magnetic_ok else math.inf
    return _result("zero-field-current-null", measured, 1e-10)


def check_reconstruction() -> CheckResult:
    params, scales = _natural()
    a = scales.a
    ref = boundstate.reconstruct_state(1e-4, 100, 64, 0.0, 0.0, scales)
    base = boundstate.ground_state_eval(0.0, 0.0, scales)
    worst = 0.0
    for x, y in ((0.5 * a, 0.0), (0.0, 0.5 * a), (a, a)):
        ratio = boundstate.reconstruct_state(1e-4, 100, 64, x, y, scales) / ref
        closed = boundstate.ground_state_eval(x, y, scales) / base
        worst = max(worst, abs(ratio - closed) / abs(closed))
    return _result("reconstruction-closed-form", worst, 0.01)


def check_energy_condition() -> CheckResult:
    lam = 2.0 * math.pi
    worst = 0.0
    for N in (10 ** 3, 10 ** 4):
        sol = boundstate.solve_b_exact(lam, N)
        worst = max(worst, abs(boundstate.defining_residual(sol.b, lam, N)))
    return _result("energy-condition-residual", worst, 1e-10)


def check_k0_consistency() -> CheckResult:
    # both branch implementations evaluated at the crossover point, plus an
    # independent integral of e^{-z cosh t} at one point per branch
    worst = abs(special._k0_series(2.0) - special._k0_asymptotic(2.0)) \
        / special.bessel_k0(2.0)
    t = np.linspace(0.0, 12.0, 48001)
    dt = t[1] - t[0]
    for z in (1.5, 3.0):
        f = np.exp(-z * np.cosh(t))
        simpson = (f[0] + f[-1] + 4.0 * f[1:-1:2].sum() + 2.0 * f[2:-1:2].sum()) * dt / 3.0
        worst = max(worst, abs(special.bessel_k0(z) / simpson - 1.0))
    return _result("k0-independent-integral", worst, 1e-10)


def run_checks(perturb_j0: float = 1.0) -> list[CheckResult]:
    """Run the whole battery; the perturbation factor feeds only the grid
    current samples (continuity and curl-match inputs)."""
    return [
        check_scale_identities(),
        check_scale_homogeneity(),
        check_digamma_recurrence(),
        check_trigamma_derivative(),
        check_hermite_ode(),
        check_gauss_hermite_moments(),
        check_landau_orthonormality(),
        check_landau_eigenstate(),
        check_ground_state_norm(),
        check_ground_state_residual(),
        check_energy_condition(),
        check_continuity(perturb_j0),
        check_curl_match(perturb_j0),
        check_complex_current_identity(),
        check_stokes(),
        check_vortex_circulation(),
        check_vortex_superposition(),
        check_zero_field_contrast(),
        check_reconstruction(),
        check_k0_consistency(),
    ]
