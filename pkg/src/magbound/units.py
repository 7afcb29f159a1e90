"""Physical constants, unit systems, and the derived scales of cyclotron motion.

Two unit systems are supported:

* ``natural``: hbar = m = omega = 1 (so the magnetic length a = 1 as well).
  All dimensionless analysis and property checks run here.
* ``gaussian``: Gaussian-cgs constants with the practical conventions
  field in kilogauss, energies in electron-volts, lengths in centimeters.
  Only needed where real-world magnitudes matter (localization ratios).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import ValidationError

# CODATA 2018, Gaussian-cgs
SPEED_OF_LIGHT_CM_S = 2.99792458e10
ELEMENTARY_CHARGE_STATC = 4.80320471257e-10
HBAR_ERG_S = 1.054571817e-27
ELECTRON_MASS_G = 9.1093837015e-28
ERG_PER_EV = 1.602176634e-12
GAUSS_PER_KILOGAUSS = 1.0e3


class UnitKind(Enum):
    NATURAL = "natural"
    GAUSSIAN_PRACTICAL = "gaussian"


@dataclass(frozen=True)
class UnitSystem:
    """Unit-system tag plus the conversion factors it implies.

    ``erg_per_energy`` converts one unit-system energy to internal energy
    units (1 for natural, erg/eV for gaussian). Fields are immutable.
    """

    kind: UnitKind
    erg_per_energy: float

    @classmethod
    def natural(cls) -> "UnitSystem":
        return cls(kind=UnitKind.NATURAL, erg_per_energy=1.0)

    @classmethod
    def gaussian_practical(cls) -> "UnitSystem":
        return cls(kind=UnitKind.GAUSSIAN_PRACTICAL, erg_per_energy=ERG_PER_EV)


@dataclass(frozen=True)
class PhysicalParams:
    """Input constants for one problem instance.

    Internally everything is stored in self-consistent raw units
    (Gaussian-cgs for the gaussian system, all-ones for natural):
    ``B`` in gauss, masses in grams, ``hbar`` in erg s, ``c`` in cm/s.
    ``lam`` is the dimensionless attractive delta coupling (> 0).
    """

    B: float
    m: float
    m_e: float
    e_mag: float
    hbar: float
    c: float
    lam: float
    units: UnitSystem

    def __post_init__(self) -> None:
        for name in ("B", "m", "m_e", "e_mag", "hbar", "c", "lam"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0.0:
                raise ValidationError(f"{name} must be positive and finite, got {value!r}")

    @classmethod
    def natural(cls, lam: float = 1.0, mass_ratio: float = 1.0) -> "PhysicalParams":
        """hbar = m = omega = 1. ``mass_ratio`` is m / m_e (spin term only)."""
        if mass_ratio <= 0.0:
            raise ValidationError(f"mass_ratio must be positive, got {mass_ratio!r}")
        return cls(B=1.0, m=1.0, m_e=1.0 / mass_ratio, e_mag=1.0, hbar=1.0, c=1.0,
                   lam=lam, units=UnitSystem.natural())

    @classmethod
    def gaussian(cls, b_kilogauss: float, lam: float = 1.0,
                 mass_ratio: float = 1.0) -> "PhysicalParams":
        """Gaussian-cgs instance; field supplied in kilogauss."""
        if b_kilogauss <= 0.0:
            raise ValidationError(f"b_kilogauss must be positive, got {b_kilogauss!r}")
        if mass_ratio <= 0.0:
            raise ValidationError(f"mass_ratio must be positive, got {mass_ratio!r}")
        return cls(B=b_kilogauss * GAUSS_PER_KILOGAUSS,
                   m=mass_ratio * ELECTRON_MASS_G,
                   m_e=ELECTRON_MASS_G,
                   e_mag=ELEMENTARY_CHARGE_STATC,
                   hbar=HBAR_ERG_S,
                   c=SPEED_OF_LIGHT_CM_S,
                   lam=lam,
                   units=UnitSystem.gaussian_practical())


@dataclass(frozen=True)
class DerivedScales:
    """Every derived quantity downstream modules consume.

    omega    cyclotron frequency |e| B / (m c)
    a        magnetic length sqrt(hbar c / |e| B) = sqrt(hbar / (m omega))
    mu       Bohr magneton |e| hbar / (2 m_e c), in unit-system energy per gauss
    lambda0  lam / (4 pi m omega a)
    d        vortex length sqrt(2) a
    j0       current scale hbar / (2 pi m a^4)
    a_scale  curl amplitude hbar / (m a^4) = 2 pi j0; the optional electric
             charge factor is applied by callers, never folded in here
    """

    omega: float
    a: float
    mu: float
    lambda0: float
    d: float
    j0: float
    a_scale: float


def derive_scales(params: PhysicalParams, units: UnitSystem | None = None) -> DerivedScales:
    """Compute all derived scales. Pure; equal inputs give identical outputs."""
    units = params.units if units is None else units
    omega = params.e_mag * params.B / (params.m * params.c)
    a = math.sqrt(params.hbar * params.c / (params.e_mag * params.B))
    mu = bohr_magneton(params, units)
    lambda0 = params.lam / (4.0 * math.pi * params.m * omega * a)
    j0 = params.hbar / (2.0 * math.pi * params.m * a ** 4)
    return DerivedScales(omega=omega, a=a, mu=mu, lambda0=lambda0,
                         d=math.sqrt(2.0) * a, j0=j0, a_scale=2.0 * math.pi * j0)


def bohr_magneton(params: PhysicalParams, units: UnitSystem | None = None) -> float:
    """|e| hbar / (2 m_e c) in unit-system energy per gauss."""
    units = params.units if units is None else units
    return params.e_mag * params.hbar / (2.0 * params.m_e * params.c) / units.erg_per_energy


def energy_to_units(energy_raw: float, units: UnitSystem) -> float:
    """Convert a raw (erg or natural) energy into unit-system energy."""
    return energy_raw / units.erg_per_energy
