"""Scenario ingredients and the decoherence coefficients they produce.

The localization rate of an environment of point scatterers is
``Lambda = n sigma v k^2 / (8 pi^2)``; the coefficient natural to the
rescaled time ``tau = hbar t / m`` is ``lam = 2 Lambda m / (3 hbar)``,
dimension 1/length^4.  Everything here is SI.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .units import CONSTANTS, PhysicalConstants

__all__ = [
    "FreeParticle",
    "ScatteringEnvironment",
    "AirModel",
    "big_lambda",
    "air_environment",
    "lambda_coefficient",
    "lambda_composite_crosscheck",
    "tau_from_time",
]


def _require_positive(**fields: float) -> None:
    for name, value in fields.items():
        if not (math.isfinite(value) and value > 0.0):
            raise ValueError(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True)
class FreeParticle:
    mass: float                      # kg
    radius: Optional[float] = None   # m, used only to derive a cross section

    def __post_init__(self):
        _require_positive(mass=self.mass)
        if self.radius is not None:
            _require_positive(radius=self.radius)


@dataclass(frozen=True)
class ScatteringEnvironment:
    number_density: float           # 1/m^3
    cross_section: float            # m^2
    mean_relative_velocity: float   # m/s
    rms_wavenumber: float           # 1/m

    def __post_init__(self):
        _require_positive(
            number_density=self.number_density,
            cross_section=self.cross_section,
            mean_relative_velocity=self.mean_relative_velocity,
            rms_wavenumber=self.rms_wavenumber,
        )


@dataclass(frozen=True)
class AirModel:
    molecular_mass: float   # kg
    mass_density: float     # kg/m^3
    temperature: float      # K

    def __post_init__(self):
        _require_positive(
            molecular_mass=self.molecular_mass,
            mass_density=self.mass_density,
            temperature=self.temperature,
        )


def big_lambda(env: ScatteringEnvironment) -> float:
    """Localization rate n*sigma*v*k^2/(8*pi^2), in 1/(m^2 s)."""
    return (
        env.number_density
        * env.cross_section
        * env.mean_relative_velocity
        * env.rms_wavenumber**2
        / (8.0 * math.pi**2)
    )


def air_environment(
    air: AirModel,
    particle: FreeParticle,
    constants: PhysicalConstants = CONSTANTS,
) -> ScatteringEnvironment:
    """Thermal-air environment for a hard sphere of the particle's radius.

    The rms molecular speed sqrt(3 kB T / m_a) serves as the mean relative
    velocity (the particle is slow against it), and the rms wavenumber is
    m_a v_a / hbar.
    """
    if particle.radius is None:
        raise ValueError("particle needs a radius to derive a cross section")
    v_rms = math.sqrt(3.0 * constants.boltzmann * air.temperature / air.molecular_mass)
    return ScatteringEnvironment(
        number_density=air.mass_density / air.molecular_mass,
        cross_section=math.pi * particle.radius**2,
        mean_relative_velocity=v_rms,
        rms_wavenumber=air.molecular_mass * v_rms / constants.hbar,
    )


def lambda_coefficient(
    localization_rate: float,
    particle: FreeParticle,
    constants: PhysicalConstants = CONSTANTS,
) -> float:
    """2*Lambda*m/(3*hbar), in 1/m^4.  Zero rate means free evolution."""
    if not (math.isfinite(localization_rate) and localization_rate >= 0.0):
        raise ValueError(f"localization rate must be nonnegative, got {localization_rate!r}")
    return 2.0 * localization_rate * particle.mass / (3.0 * constants.hbar)


def lambda_composite_crosscheck(
    air: AirModel,
    particle: FreeParticle,
    constants: PhysicalConstants = CONSTANTS,
) -> float:
    """One-line composite m*sigma*m_a*rho_a*v_a^3/(3 h^3), in 1/m^4.

    Retained only as a flagged cross-check for the discrepancy report: it
    disagrees with the defining two-step chain by a factor of 2*pi.  Never
    used as the evolution coefficient.
    """
    if particle.radius is None:
        raise ValueError("particle needs a radius to derive a cross section")
    v_rms = math.sqrt(3.0 * constants.boltzmann * air.temperature / air.molecular_mass)
    sigma = math.pi * particle.radius**2
    return (
        particle.mass
        * sigma
        * air.molecular_mass
        * air.mass_density
        * v_rms**3
        / (3.0 * constants.h**3)
    )


def tau_from_time(
    t: float,
    particle: FreeParticle,
    constants: PhysicalConstants = CONSTANTS,
) -> float:
    """Rescaled time hbar*t/m, dimension m^2.  Forward evolution only."""
    if not (math.isfinite(t) and t >= 0.0):
        raise ValueError(f"time must be nonnegative, got {t!r}")
    return constants.hbar * t / particle.mass
