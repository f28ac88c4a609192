"""Localized Gaussian observation operators and their trace measures.

An operator window is the kernel

    A_k(x, x') = norm * exp{-[alpha (x-x')^2 + gamma (x+x' - 2 center)^2]},

normalized to unit trace (norm = 2 sqrt(gamma/pi)), so the measures of a
family of identical windows tiling the line sum to about one.

The measure tr(A_k rho) closes in Gaussian integrals.  With y = x - x',
z = x + x' (Jacobian 1/2), integrating y first and completing the square
in z gives

    tr(A_k rho) = norm * sqrt(pi C / ((A + alpha) Q))
                  * exp(-4 gamma (Q - gamma) center^2 / Q),
    Q = C + gamma + B^2 / (4 (A + alpha)),

real and nonnegative; B enters only through B^2 and the center only
squared.  The test suite holds this algebra against 2-D quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .evolution import GaussianDensityMatrix
from .units import METER, LengthUnit, UnitMismatchError

__all__ = ["ObservationOperator", "make_operator", "measure", "measure_profile"]


@dataclass(frozen=True)
class ObservationOperator:
    center: float  # length
    alpha: float   # 1/length^2, relative-coordinate width
    gamma: float   # 1/length^2, center-coordinate width
    norm: float    # fixed by unit trace
    unit: LengthUnit = METER

    def __post_init__(self):
        if not (math.isfinite(self.center)):
            raise ValueError("center must be finite")
        if not (math.isfinite(self.alpha) and self.alpha >= 0.0):
            raise ValueError(f"alpha must be nonnegative, got {self.alpha!r}")
        if not (math.isfinite(self.gamma) and self.gamma > 0.0):
            raise ValueError(f"gamma must be positive, got {self.gamma!r}")
        if not (math.isfinite(self.norm) and self.norm > 0.0):
            raise ValueError(f"norm must be positive, got {self.norm!r}")

    def kernel(self, x, xp):
        """Operator kernel values; arguments broadcast."""
        x = np.asarray(x, dtype=float)
        xp = np.asarray(xp, dtype=float)
        y = x - xp
        zc = x + xp - 2.0 * self.center
        return self.norm * np.exp(-(self.alpha * y * y + self.gamma * zc * zc))

    def convert(self, unit: LengthUnit) -> "ObservationOperator":
        r = unit.scale_m / self.unit.scale_m
        return ObservationOperator(
            center=self.center / r,
            alpha=self.alpha * r * r,
            gamma=self.gamma * r * r,
            norm=self.norm * r,  # norm carries 1/length from the trace normalization
            unit=unit,
        )


def make_operator(
    center: float, alpha: float, gamma: float, unit: LengthUnit = METER
) -> ObservationOperator:
    """Window at ``center`` with unit trace: norm = 2 sqrt(gamma/pi)."""
    if not (math.isfinite(gamma) and gamma > 0.0):
        raise ValueError(f"gamma must be positive, got {gamma!r}")
    return ObservationOperator(
        center=center,
        alpha=alpha,
        gamma=gamma,
        norm=2.0 * math.sqrt(gamma / math.pi),
        unit=unit,
    )


def measure(op: ObservationOperator, state: GaussianDensityMatrix) -> float:
    """tr(A_k rho), the closed 2-D Gaussian integral of the product kernel."""
    if op.unit.scale_m != state.unit.scale_m:
        raise UnitMismatchError(
            f"operator unit {op.unit.name!r} does not match state unit {state.unit.name!r}"
        )
    a, b, c = state.a_coeff, state.b_coeff, state.c_coeff
    denom_y = a + op.alpha
    q_minus_gamma = c + b * b / (4.0 * denom_y)
    q = q_minus_gamma + op.gamma
    prefactor = op.norm * math.sqrt(math.pi * c / (denom_y * q))
    exponent = -4.0 * op.gamma * q_minus_gamma * op.center**2 / q
    return prefactor * math.exp(exponent)


def measure_profile(
    centers,
    alpha: float,
    gamma: float,
    state: GaussianDensityMatrix,
) -> list[tuple[float, float]]:
    """Element-wise measures of a window family sharing (alpha, gamma) in the
    state's unit; rows (center, measure) ready for CSV emission."""
    centers = list(centers)
    if not centers:
        raise ValueError("center list must be nonempty")
    return [
        (x_k, measure(make_operator(x_k, alpha, gamma, state.unit), state))
        for x_k in centers
    ]
