"""Grid-PDE oracle: independent numerical validation of the closed form.

Discretizes rho(x, x') on a square grid and integrates the master equation
in rescaled time,

    d rho / d tau = (i/2) (d^2/dx^2 - d^2/dx'^2) rho
                    - (3 lam / 2) (x - x')^2 rho,

with classical RK4 in time and FFT spectral second derivatives in space
(the kernel and its tails are far below rounding at the domain edge, so
the periodic wrap is harmless).  The damping coefficient in tau units is
3*lam/2.

Exercised only at O(1) dimensionless parameters: the macroscopic regime
spans ~150 decades of coefficient magnitude and is not grid-representable;
the closed form is parameter-smooth, so O(1) validation transfers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .evolution import GaussianDensityMatrix
from .units import METER, LengthUnit

__all__ = [
    "GridState",
    "DomainCoverageError",
    "IntegrationFailureError",
    "FitQualityError",
    "DecompositionError",
    "GaussianFit",
    "discretize",
    "integrate_master_equation",
    "stable_step_count",
    "extract_gaussian_coefficients",
    "eigendecompose_kernel",
    "dump_csv",
]


class DomainCoverageError(ValueError):
    """Grid domain too small for the state; carries the measured trace deficit."""

    def __init__(self, message: str, trace_deficit: float):
        super().__init__(message)
        self.trace_deficit = trace_deficit


class IntegrationFailureError(RuntimeError):
    """Time stepping went unstable; carries the step index."""

    def __init__(self, message: str, step: int):
        super().__init__(message)
        self.step = step


class FitQualityError(ValueError):
    """Kernel is not Gaussian to within the fit threshold; carries the residual."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class DecompositionError(RuntimeError):
    """Numerical eigendecomposition failed."""


@dataclass
class GridState:
    """Discretized complex rho(x, x'): row index is x, column index is x'."""

    x_min: float
    x_max: float
    n_points: int
    values: np.ndarray
    unit: LengthUnit = METER

    def __post_init__(self):
        if self.x_max <= self.x_min:
            raise ValueError("x_max must exceed x_min")
        if self.values.shape != (self.n_points, self.n_points):
            raise ValueError(
                f"values shape {self.values.shape} does not match n_points={self.n_points}"
            )

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    def trace(self) -> float:
        return float(np.real(np.trace(self.values)) * self.spacing)

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.values - self.values.conj().T)))

    def purity(self) -> float:
        """tr(rho^2) = h^2 sum |rho_ij|^2 for Hermitian kernels."""
        return float(self.spacing**2 * np.sum(np.abs(self.values) ** 2))

    def position_variance(self) -> float:
        diag = np.real(np.diag(self.values))
        h = self.spacing
        mean = float(np.sum(self.xs * diag) * h)
        second = float(np.sum(self.xs**2 * diag) * h)
        return second - mean * mean

    def momentum_variance(self) -> float:
        """(dp/hbar)^2 = -(1/2) integral of d^2 rho/dy^2 on the diagonal,
        via a sixth-order cross-diagonal stencil (step 2h in y; the points
        at y = +-2kh and fixed z are Hermitian-conjugate pairs).

        Assumes zero mean momentum, which holds for every kernel in the
        Gaussian family handled here.
        """
        v = self.values
        n = self.n_points
        idx = np.arange(3, n - 3)
        f0 = np.real(v[idx, idx])
        f1 = np.real(v[idx + 1, idx - 1])
        f2 = np.real(v[idx + 2, idx - 2])
        f3 = np.real(v[idx + 3, idx - 3])
        big_h = 2.0 * self.spacing
        second_y = (4.0 * f3 - 54.0 * f2 + 540.0 * f1 - 490.0 * f0) / (180.0 * big_h**2)
        # trace integral over z = 2x is dz = 2h; with the leading -(1/2) this is -h * sum
        return float(-self.spacing * np.sum(second_y))


def discretize(
    state: GaussianDensityMatrix, x_min: float, x_max: float, n_points: int
) -> GridState:
    """Sample the closed-form kernel.  The domain must cover at least eight
    standard deviations of the diagonal marginal on both sides."""
    if n_points < 64:
        raise ValueError(f"n_points must be at least 64, got {n_points}")
    sigma = math.sqrt(1.0 / (8.0 * state.c_coeff))
    xs = np.linspace(x_min, x_max, n_points)
    values = state.kernel(xs[:, None], xs[None, :])
    grid = GridState(x_min, x_max, n_points, values, state.unit)
    deficit = abs(1.0 - grid.trace())
    if x_min > -8.0 * sigma or x_max < 8.0 * sigma:
        raise DomainCoverageError(
            f"domain [{x_min}, {x_max}] covers less than 8 standard deviations "
            f"({sigma:.4g}); trace deficit {deficit:.3e}",
            trace_deficit=deficit,
        )
    if deficit > 1e-8:
        raise DomainCoverageError(
            f"grid trace deviates from 1 by {deficit:.3e}", trace_deficit=deficit
        )
    return grid


def stable_step_count(
    grid: GridState, lam: float, tau_end: float, safety: float = 0.7
) -> int:
    """RK4 step count from the spectral radius of the semi-discrete operator:
    free part k_max^2/2 on the imaginary axis, damping 3 lam y_max^2 / 2 on
    the negative real axis."""
    h = grid.spacing
    k_max_sq = (math.pi / h) ** 2
    y_max = grid.x_max - grid.x_min
    rate = 0.5 * k_max_sq + 1.5 * lam * y_max**2
    dt_max = 2.5 * safety / rate
    return max(1, math.ceil(tau_end / dt_max))


def integrate_master_equation(
    grid: GridState,
    lam: float,
    tau_end: float,
    n_steps: int | None = None,
    terms: str = "full",
) -> GridState:
    """Evolve the grid from tau = 0 to tau_end with classical RK4.

    terms="damping" integrates the pointwise damping term alone (exact
    solution exp(-(3 lam / 2) y^2 tau) rho0), used to pin the damping
    constant independently of the transport term.

    Raises IntegrationFailureError if the sup norm grows by more than 10x
    or Hermiticity drifts past 1e-10.
    """
    if lam < 0.0 or not math.isfinite(lam):
        raise ValueError(f"lam must be nonnegative, got {lam!r}")
    if tau_end < 0.0 or not math.isfinite(tau_end):
        raise ValueError(f"tau_end must be nonnegative, got {tau_end!r}")
    if terms not in ("full", "damping"):
        raise ValueError(f"terms must be 'full' or 'damping', got {terms!r}")
    if n_steps is None:
        n_steps = stable_step_count(grid, lam, tau_end)
    if n_steps < 1:
        raise ValueError("n_steps must be at least 1")

    h = grid.spacing
    xs = grid.xs
    y_sq = (xs[:, None] - xs[None, :]) ** 2
    damping = -1.5 * lam * y_sq
    k = 2.0 * math.pi * np.fft.fftfreq(grid.n_points, d=h)
    k_sq = k * k

    include_free = terms == "full"

    def rhs(rho: np.ndarray) -> np.ndarray:
        out = damping * rho if lam > 0.0 else np.zeros_like(rho)
        if include_free:
            d2_x = np.fft.ifft(-k_sq[:, None] * np.fft.fft(rho, axis=0), axis=0)
            d2_xp = np.fft.ifft(-k_sq[None, :] * np.fft.fft(rho, axis=1), axis=1)
            out = out + 0.5j * (d2_x - d2_xp)
        return out

    rho = grid.values.astype(np.complex128, copy=True)
    dt = tau_end / n_steps
    initial_peak = float(np.max(np.abs(rho)))
    for step in range(1, n_steps + 1):
        k1 = rhs(rho)
        k2 = rhs(rho + 0.5 * dt * k1)
        k3 = rhs(rho + 0.5 * dt * k2)
        k4 = rhs(rho + dt * k3)
        rho = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        peak = float(np.max(np.abs(rho)))
        if not math.isfinite(peak) or peak > 10.0 * initial_peak:
            raise IntegrationFailureError(
                f"instability detected at step {step}/{n_steps}: "
                f"sup norm grew from {initial_peak:.3e} to {peak:.3e}",
                step=step,
            )
        herm = float(np.max(np.abs(rho - rho.conj().T)))
        if herm > 1e-10 * max(1.0, initial_peak):
            raise IntegrationFailureError(
                f"Hermiticity drifted to {herm:.3e} at step {step}/{n_steps}",
                step=step,
            )
    return GridState(grid.x_min, grid.x_max, grid.n_points, rho, grid.unit)


@dataclass(frozen=True)
class GaussianFit:
    """Least-squares Gaussian coefficients with the weighted RMS log residual."""

    a_coeff: float
    b_coeff: float
    c_coeff: float
    residual: float


def extract_gaussian_coefficients(
    grid: GridState,
    window_floor: float = 1e-10,
    residual_threshold: float = 1e-2,
) -> GaussianFit:
    """Weighted least-squares fit of -ln(kernel) to A y^2 + i B y z + C z^2 + D
    over the central window |kernel| >= window_floor * peak.

    The magnitude fixes A, C; the phase fixes B, seeded by a cross stencil at
    the peak and rewrapped against that seed, so phase wraps across the
    window do not alias the fit.  Residuals above residual_threshold raise
    FitQualityError (deliberately non-Gaussian input).
    """
    v = grid.values
    mags = np.abs(v)
    peak = float(mags.max())
    if peak <= 0.0:
        raise FitQualityError("kernel is identically zero", residual=math.inf)
    mask = mags >= window_floor * peak
    xs = grid.xs
    y = (xs[:, None] - xs[None, :])[mask]
    z = (xs[:, None] + xs[None, :])[mask]
    w = (mags[mask] / peak).astype(float)

    # magnitude part: -ln|v| = A y^2 + C z^2 + Re D
    data_r = -np.log(mags[mask])
    design = np.column_stack([y * y, z * z, np.ones_like(y)])
    scale = np.max(np.abs(design), axis=0)
    coeffs, *_ = np.linalg.lstsq(
        (w[:, None] * design) / scale, w * data_r, rcond=None
    )
    coeffs = coeffs / scale
    a_fit, c_fit, d_fit = float(coeffs[0]), float(coeffs[1]), float(coeffs[2])

    # phase part: arg v = -B y z; seed B from the mixed stencil at the peak
    ic, jc = np.unravel_index(int(np.argmax(mags)), mags.shape)
    phase = np.angle(v)
    if 1 <= ic < grid.n_points - 1 and 1 <= jc < grid.n_points - 1:
        stencil = (
            phase[ic + 1, jc] - phase[ic, jc - 1] - phase[ic, jc + 1] + phase[ic - 1, jc]
        ) / (4.0 * grid.spacing**2)
        b_seed = -stencil
    else:
        b_seed = 0.0
    predicted = -b_seed * y * z
    unwrapped = predicted + np.angle(v[mask] * np.exp(-1j * predicted))
    yz = y * z
    denom = float(np.sum((w * yz) ** 2))
    b_fit = b_seed if denom == 0.0 else float(np.sum(w * w * yz * (-unwrapped)) / denom)

    model = a_fit * y * y + c_fit * z * z + d_fit + 1j * (b_fit * yz)
    data = data_r + 1j * (-unwrapped)
    residual = float(
        math.sqrt(np.sum((w * np.abs(model - data)) ** 2) / np.sum(w * w))
    )
    if residual > residual_threshold:
        raise FitQualityError(
            f"kernel deviates from the Gaussian form: residual {residual:.3e} "
            f"exceeds {residual_threshold:.1e}",
            residual=residual,
        )
    return GaussianFit(a_coeff=a_fit, b_coeff=b_fit, c_coeff=c_fit, residual=residual)


def eigendecompose_kernel(grid: GridState, count: int):
    """Top eigenvalues (descending) and grid eigenvectors of kernel * spacing."""
    if not (1 <= count <= 32):
        raise ValueError(f"count must be between 1 and 32, got {count}")
    herm = grid.hermiticity_error()
    if herm > 1e-10 * max(1.0, float(np.max(np.abs(grid.values)))):
        raise ValueError(f"grid is not Hermitian: deviation {herm:.3e}")
    try:
        eigvals, eigvecs = np.linalg.eigh(grid.values * grid.spacing)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - library failure
        raise DecompositionError(str(exc)) from exc
    order = np.argsort(eigvals)[::-1][:count]
    return eigvals[order], eigvecs[:, order]


def dump_csv(grid: GridState) -> bytes:
    """Debug dump: header with the domain, then the row-major complex matrix."""
    lines = [f"# x_min={grid.x_min!r} x_max={grid.x_max!r} n_points={grid.n_points}"]
    for row in grid.values:
        lines.append(",".join(repr(complex(v)) for v in row))
    return ("\n".join(lines) + "\n").encode()
