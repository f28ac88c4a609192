"""Physical constants, Planck-unit definitions, and length-unit conversions.

Every coefficient-bearing quantity in this package carries a ``LengthUnit``
tag.  Downstream modules compute in one declared unit system per call chain
(dimensionless Planck form for macroscopic scenarios); conversion happens
only at ingestion and at report emission.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "PhysicalConstants",
    "CONSTANTS",
    "LengthUnit",
    "METER",
    "PLANCK_LENGTH",
    "UnitMismatchError",
    "convert_length",
    "planck_scaled",
    "planck_length_unit",
]


class UnitMismatchError(ValueError):
    """Operands carry incompatible length units."""


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA-era constant set; the published comparison values were computed
    with exactly these figures."""

    hbar: float             # J s
    h: float                # J s, 2*pi*hbar exactly
    c: float                # m/s
    G: float                # m^3 / (kg s^2)
    boltzmann: float        # J/K
    g_gravity: float        # m/s^2
    planck_length: float    # m, sqrt(hbar G / c^3)
    planck_momentum: float  # kg m/s, sqrt(hbar c^3 / G)
    planck_mass: float      # kg

    def __post_init__(self):
        derived_length = math.sqrt(self.hbar * self.G / self.c**3)
        derived_momentum = math.sqrt(self.hbar * self.c**3 / self.G)
        if abs(derived_length - self.planck_length) > 1e-6 * self.planck_length:
            raise ValueError("planck_length inconsistent with sqrt(hbar*G/c^3)")
        if abs(derived_momentum - self.planck_momentum) > 1e-6 * self.planck_momentum:
            raise ValueError("planck_momentum inconsistent with sqrt(hbar*c^3/G)")
        if self.h != 2.0 * math.pi * self.hbar:
            raise ValueError("h must equal 2*pi*hbar exactly")
        if abs(self.planck_mass * self.c - self.planck_momentum) > 1e-6 * self.planck_momentum:
            raise ValueError("planck_mass*c inconsistent with planck_momentum")


def _codata() -> PhysicalConstants:
    hbar = 1.054571817e-34
    return PhysicalConstants(
        hbar=hbar,
        h=2.0 * math.pi * hbar,
        c=299792458.0,
        G=6.67430e-11,
        boltzmann=1.380649e-23,
        g_gravity=9.80665,
        planck_length=1.616255e-35,
        planck_momentum=6.524785,
        planck_mass=2.176434e-8,
    )


CONSTANTS = _codata()


@dataclass(frozen=True)
class LengthUnit:
    """Length-unit tag; ``scale_m`` is the size of one unit in meters."""

    name: str
    scale_m: float

    def __post_init__(self):
        if not (math.isfinite(self.scale_m) and self.scale_m > 0.0):
            raise ValueError(f"unit scale must be positive and finite, got {self.scale_m!r}")

    @staticmethod
    def custom(scale_in_meters: float, name: str = "custom") -> "LengthUnit":
        return LengthUnit(name, scale_in_meters)


METER = LengthUnit("m", 1.0)


def planck_length_unit(constants: PhysicalConstants = CONSTANTS) -> LengthUnit:
    return LengthUnit("l_Pl", constants.planck_length)


PLANCK_LENGTH = planck_length_unit()


def convert_length(value: float, from_unit: LengthUnit, to_unit: LengthUnit) -> float:
    """Re-express a length in another unit.  Round-trips to relative 1e-12."""
    if not math.isfinite(value):
        raise ValueError(f"length must be finite, got {value!r}")
    return value * (from_unit.scale_m / to_unit.scale_m)


def planck_scaled(
    value: float, power: int, constants: PhysicalConstants = CONSTANTS
) -> float:
    """Divide out ``planck_length**power``, where ``power`` is the net length
    dimension of the quantity (2 for a squared length, -4 for a 1/length^4 rate)."""
    if not math.isfinite(value):
        raise ValueError(f"value must be finite, got {value!r}")
    if power == 0:
        return value
    return value / constants.planck_length**power
