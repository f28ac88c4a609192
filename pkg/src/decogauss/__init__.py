"""decogauss: collisional decoherence of a free Gaussian density matrix.

Closed-form evolution under the scattering master equation, spectral
decomposition (geometric eigenvalue ladder, oscillator eigenstates, von
Neumann entropy), phase averaging, localized observation-operator
measures, and an independent grid-PDE oracle.
"""

from .averaging import averaged_time_scalings, phase_average
from .evolution import (
    CubicSolution,
    GaussianDensityMatrix,
    cubic_from_initial,
    evolve,
    minimum_uncertainty_initial,
    momentum_variance,
    position_variance,
    purity,
)
from .model import (
    AirModel,
    FreeParticle,
    ScatteringEnvironment,
    air_environment,
    big_lambda,
    lambda_coefficient,
    tau_from_time,
)
from .observation import ObservationOperator, make_operator, measure, measure_profile
from .scenarios import (
    Report,
    Scenario,
    baseball_scenario,
    dump_scenario,
    emit,
    flight_time,
    load_scenario,
    run,
)
from .spectral import (
    EigenstateSpec,
    SpectralSummary,
    eigenstate_amplitude,
    eigenstate_position_variance,
    eigenstate_spec,
    eigenvalue,
    mean_excitation,
    spectral_summary,
    truncation_index,
    von_neumann_entropy,
    weighted_position_variance,
)
from .units import CONSTANTS, METER, PLANCK_LENGTH, LengthUnit, convert_length, planck_scaled

__version__ = "0.1.0"
