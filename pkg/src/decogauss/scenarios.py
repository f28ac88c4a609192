"""Scenario ingestion, the built-in baseball preset, and report generation.

A scenario is ingested in SI, converted once to dimensionless Planck form,
evolved there, and converted back only for report rows.  Reports are
bit-deterministic: fixed row order, 9 significant digits for values, 3 for
deviations.  For the baseball preset every published comparison value is
attached to its row and the three known discrepancies of the published
description (composite rate formula off by 2*pi, averaged-A exponent,
entropy growth coefficient) are recorded in the report's discrepancy
ledger.
"""

from __future__ import annotations

import configparser
import io
import json
import math
from dataclasses import dataclass
from typing import Optional

from .averaging import phase_average
from .evolution import (
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
    lambda_composite_crosscheck,
    tau_from_time,
)
from .observation import measure_profile
from .spectral import mean_excitation, spectral_summary, von_neumann_entropy
from .units import CONSTANTS, METER, PhysicalConstants, planck_length_unit

__all__ = [
    "Scenario",
    "ObservationFamilySpec",
    "Report",
    "ScalarRow",
    "TrajectoryRow",
    "DiscrepancyEntry",
    "ProfileRow",
    "ConfigError",
    "ConfigParseError",
    "MissingKeyError",
    "UnknownKeyError",
    "AmbiguityError",
    "flight_time",
    "baseball_scenario",
    "run",
    "load_scenario",
    "dump_scenario",
    "emit",
    "tolerance_failures",
]

OUNCE_KG = 0.028349523125
JULIAN_YEAR_S = 31557600.0


class ConfigError(Exception):
    """Base for scenario-config problems (CLI exit code 2)."""


class ConfigParseError(ConfigError):
    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message)
        self.line = line


class MissingKeyError(ConfigError):
    def __init__(self, key: str):
        super().__init__(f"missing required config key: {key}")
        self.key = key


class UnknownKeyError(ConfigError):
    def __init__(self, keys):
        self.keys = tuple(keys)
        super().__init__("unknown config keys: " + ", ".join(self.keys))


class AmbiguityError(ConfigError):
    """Mutually exclusive config blocks or keys were both supplied."""


@dataclass(frozen=True)
class ObservationFamilySpec:
    centers_m: tuple[float, ...]
    alpha_per_m2: float
    gamma_per_m2: float


@dataclass(frozen=True)
class Scenario:
    particle: FreeParticle
    initial_dx_m: float
    evolution_time_s: float
    air: Optional[AirModel] = None
    environment: Optional[ScatteringEnvironment] = None
    speed_m_s: Optional[float] = None
    sample_times_s: Optional[tuple[float, ...]] = None
    observation: Optional[ObservationFamilySpec] = None
    disable_decoherence: bool = False
    name: str = ""

    def __post_init__(self):
        if (self.air is None) == (self.environment is None):
            raise ValueError("exactly one of air or environment must be present")
        if not (math.isfinite(self.evolution_time_s) and self.evolution_time_s > 0.0):
            raise ValueError("evolution_time_s must be positive")
        if not (math.isfinite(self.initial_dx_m) and self.initial_dx_m > 0.0):
            raise ValueError("initial_dx_m must be positive")


@dataclass(frozen=True)
class ScalarRow:
    name: str
    value: float
    unit: str
    reference: Optional[float] = None
    deviation: Optional[float] = None  # (value - reference) / reference
    tol_mode: Optional[str] = None     # "rel" | "abs" | "factor"
    tol_value: Optional[float] = None


@dataclass(frozen=True)
class TrajectoryRow:
    t_s: float
    tau: float
    dx2: float
    dp2: float
    a_coeff: float
    b_coeff: float
    c_coeff: float
    n_mean: float
    entropy: float


@dataclass(frozen=True)
class DiscrepancyEntry:
    description: str
    stated: str
    computed: float


@dataclass(frozen=True)
class ProfileRow:
    center: float
    measure: float


@dataclass(frozen=True)
class Report:
    scenario_name: str
    scalars: tuple[ScalarRow, ...]
    trajectory: tuple[TrajectoryRow, ...]
    discrepancies: tuple[DiscrepancyEntry, ...]
    profile: tuple[ProfileRow, ...]


def flight_time(speed: float, constants: PhysicalConstants = CONSTANTS) -> float:
    """Level-ground flight time of a 45-degree launch: sqrt(2)*v/g."""
    if not (math.isfinite(speed) and speed > 0.0):
        raise ValueError(f"speed must be positive, got {speed!r}")
    return math.sqrt(2.0) * speed / constants.g_gravity


def baseball_scenario(constants: PhysicalConstants = CONSTANTS) -> Scenario:
    """The 100 mph baseball: Planck momentum, minimum-uncertainty start at
    half a Planck length, sea-level standard air, 45-degree flight time."""
    speed = 44.704
    return Scenario(
        particle=FreeParticle(mass=0.1459553, radius=0.0369),
        initial_dx_m=constants.planck_length / 2.0,
        evolution_time_s=flight_time(speed, constants),
        air=AirModel(molecular_mass=4.80965e-26, mass_density=1.2250, temperature=288.15),
        speed_m_s=speed,
        name="baseball",
    )


# published comparison values for the baseball preset: name -> (reference,
# strict tolerance mode, strict tolerance).  The order-of-magnitude entries
# are checked at factor 2; digit-quoted ones at their published precision.
_BASEBALL_REFERENCES = {
    "momentum_kg_m_s": (6.524785, "rel", 1e-4),
    "flight_time_s": (6.44675, "abs", 1e-5),
    "mass_ounces": (5.148421, "rel", 1e-3),
    "air_speed_m_s": (498.144, "rel", 1e-4),
    "cross_section_m2": (4.28e-3, "rel", 3e-3),
    "tau_m2": (5e-33, "factor", 2.0),
    "tau_planck": (2e37, "factor", 2.0),
    "lambda_per_m4": (3e79, "factor", 2.0),
    "lambda_planck": (2e-60, "factor", 2.0),
    "coeff_A_planck": (2e-23, "factor", 2.0),
    "coeff_B_planck": (-3e-38, "factor", 2.0),
    "coeff_C_planck": (4e-76, "factor", 2.0),
    "position_spread_m": (288.0, "rel", 1e-2),
    "momentum_variance_shift": (1e-22, "factor", 2.0),
    "mean_excitation": (1.12538e26, "rel", 5e-3),
    "entropy_nats": (61.0, "abs", 0.5),
    "p0": (1e-26, "factor", 2.0),
    "ground_state_variance_m2": (4e-22, "factor", 2.0),
    "oscillator_period_years": (2.0e5, "rel", 0.15),
    "averaging_time_s": (5e-36, "factor", 2.0),
    "averaged_C_per_m2": (1.50501e-6, "rel", 5e-3),
    "averaged_A_significand": (7.62419, "rel", 5e-3),
}


def _significand(value: float) -> float:
    if value == 0.0:
        return 0.0
    exponent = math.floor(math.log10(abs(value)))
    return value / 10.0**exponent


def _entropy_at(cubic, tau: float) -> float:
    return von_neumann_entropy(mean_excitation(evolve(cubic, tau)))


def run(
    scenario: Scenario,
    constants: PhysicalConstants = CONSTANTS,
    samples: int = 8,
) -> Report:
    """Full pipeline: environment -> lam -> cubic -> evolved state, spectral
    summary, phase average, trajectory table, discrepancy ledger."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    particle = scenario.particle
    if scenario.air is not None:
        env = air_environment(scenario.air, particle, constants)
    else:
        env = scenario.environment
    loc_rate = big_lambda(env)
    lam_si = 0.0 if scenario.disable_decoherence else lambda_coefficient(loc_rate, particle, constants)

    l_pl = constants.planck_length
    l_pl_sq = l_pl * l_pl
    lam_planck = lam_si * l_pl_sq * l_pl_sq
    planck_unit = planck_length_unit(constants)

    state0 = minimum_uncertainty_initial((scenario.initial_dx_m / l_pl) ** 2, planck_unit)
    cubic = cubic_from_initial(state0, lam_planck)

    t_end = scenario.evolution_time_s
    tau_si = tau_from_time(t_end, particle, constants)
    tau_planck = tau_si / l_pl_sq
    # Planck-native route: time over l_Pl/c, mass over hbar/(c*l_Pl), both
    # anchored on the same planck_length so the routes differ only in
    # rounding order
    t_native = t_end * constants.c / l_pl
    m_native = particle.mass * constants.c * l_pl / constants.hbar
    tau_consistency = abs(tau_planck - t_native / m_native) / tau_planck

    state = evolve(cubic, tau_planck)
    averaged = phase_average(state)
    summary = spectral_summary(state)
    x_planck = position_variance(cubic, tau_planck)
    dp2_planck = momentum_variance(cubic, tau_planck)
    sqrt_ac = math.sqrt(state.a_coeff * state.c_coeff)

    is_baseball = scenario.name == "baseball"
    rows: list[ScalarRow] = []

    def add(name: str, value: float, unit: str) -> None:
        reference = deviation = tol_mode = tol_value = None
        if is_baseball and name in _BASEBALL_REFERENCES:
            reference, tol_mode, tol_value = _BASEBALL_REFERENCES[name]
            deviation = (value - reference) / reference
        rows.append(ScalarRow(name, value, unit, reference, deviation, tol_mode, tol_value))

    add("mass_kg", particle.mass, "kg")
    add("mass_ounces", particle.mass / OUNCE_KG, "oz")
    if particle.radius is not None:
        add("radius_m", particle.radius, "m")
    if scenario.speed_m_s is not None:
        add("speed_m_s", scenario.speed_m_s, "m/s")
        add("momentum_kg_m_s", particle.mass * scenario.speed_m_s, "kg*m/s")
        add("flight_time_s", flight_time(scenario.speed_m_s, constants), "s")
    add("evolution_time_s", t_end, "s")
    add("initial_dx_m", scenario.initial_dx_m, "m")
    if scenario.air is not None:
        add("air_speed_m_s", env.mean_relative_velocity, "m/s")
        add("cross_section_m2", env.cross_section, "m^2")
        add("number_density_per_m3", env.number_density, "1/m^3")
    add("localization_rate_per_m2_s", loc_rate, "1/(m^2*s)")
    add("tau_m2", tau_si, "m^2")
    add("tau_planck", tau_planck, "l_Pl^2")
    add("tau_consistency_rel", tau_consistency, "1")
    add("lambda_per_m4", lam_si, "1/m^4")
    add("lambda_planck", lam_planck, "1/l_Pl^4")
    if scenario.air is not None:
        add(
            "lambda_composite_per_m4",
            lambda_composite_crosscheck(scenario.air, particle, constants),
            "1/m^4",
        )
    add("coeff_A_planck", state.a_coeff, "1/l_Pl^2")
    add("coeff_B_planck", state.b_coeff, "1/l_Pl^2")
    add("coeff_C_planck", state.c_coeff, "1/l_Pl^2")
    add("position_spread_m", math.sqrt(x_planck) * l_pl, "m")
    add(
        "weighted_variance_consistency_rel",
        abs(1.0 / (8.0 * state.c_coeff) - x_planck) / x_planck,
        "1",
    )
    add("momentum_variance_shift", 3.0 * lam_planck * tau_planck, "1")
    add("momentum_spread_kg_m_s", constants.hbar * math.sqrt(dp2_planck) / l_pl, "kg*m/s")
    add("mean_excitation", summary.mean_excitation, "1")
    add("entropy_nats", summary.entropy_nats, "nat")
    add("p0", summary.p0, "1")
    add("purity", purity(state), "1")
    add("ground_state_variance_m2", l_pl_sq / (8.0 * sqrt_ac), "m^2")
    if lam_si > 0.0:
        period_s = (
            2.0
            * math.pi
            * particle.mass
            * math.sqrt(tau_si / lam_si)
            / (constants.hbar * l_pl)
        )
        add("oscillator_period_years", period_s / JULIAN_YEAR_S, "yr")
    if scenario.speed_m_s is not None:
        averaging_time = constants.h / (0.5 * particle.mass * scenario.speed_m_s**2)
        add("averaging_time_s", averaging_time, "s")
        add("averaging_time_over_flight_time", averaging_time / t_end, "1")
    averaged_a_si = averaged.a_coeff / l_pl_sq
    add("averaged_A_per_m2", averaged_a_si, "1/m^2")
    add("averaged_A_significand", _significand(averaged_a_si), "1")
    add("averaged_C_per_m2", averaged.c_coeff / l_pl_sq, "1/m^2")
    growth = None
    if lam_si > 0.0:
        growth = _entropy_at(cubic, tau_planck * math.e) - _entropy_at(cubic, tau_planck)
        add("entropy_growth_coefficient", growth, "1")

    if scenario.sample_times_s is not None:
        times = list(scenario.sample_times_s)
    else:
        times = [t_end * k / samples for k in range(samples + 1)]
    trajectory = []
    for t in times:
        tau_t = tau_from_time(t, particle, constants) / l_pl_sq
        state_t = evolve(cubic, tau_t)
        n_t = mean_excitation(state_t)
        trajectory.append(
            TrajectoryRow(
                t_s=t,
                tau=tau_t * l_pl_sq,
                dx2=position_variance(cubic, tau_t) * l_pl_sq,
                dp2=momentum_variance(cubic, tau_t) / l_pl_sq,
                a_coeff=state_t.a_coeff / l_pl_sq,
                b_coeff=state_t.b_coeff / l_pl_sq,
                c_coeff=state_t.c_coeff / l_pl_sq,
                n_mean=n_t,
                entropy=von_neumann_entropy(n_t),
            )
        )

    discrepancies: list[DiscrepancyEntry] = []
    if is_baseball:
        composite = lambda_composite_crosscheck(scenario.air, particle, constants)
        discrepancies = [
            DiscrepancyEntry(
                description="composite rate formula disagrees with the defining chain",
                stated="lambda = m*sigma*m_a*rho_a*v_a^3/(3*h^3)",
                computed=lam_si / composite,  # the ratio, which is 2*pi
            ),
            DiscrepancyEntry(
                description="published averaged A carries no power of ten",
                stated="averaged A ~ 7.62419 1/m^2 at the flight time",
                computed=averaged_a_si,
            ),
            DiscrepancyEntry(
                description="published entropy growth coefficient is 2/3; the exact entropy grows with 3/2",
                stated="S ~ 61 + (2/3) ln(t/t_flight)",
                computed=growth,
            ),
        ]

    profile: list[ProfileRow] = []
    if scenario.observation is not None:
        obs = scenario.observation
        state_si = state.convert(METER)
        profile = [
            ProfileRow(center=x_k, measure=value)
            for x_k, value in measure_profile(
                obs.centers_m, obs.alpha_per_m2, obs.gamma_per_m2, state_si
            )
        ]

    return Report(
        scenario_name=scenario.name,
        scalars=tuple(rows),
        trajectory=tuple(trajectory),
        discrepancies=tuple(discrepancies),
        profile=tuple(profile),
    )


def _within(row: ScalarRow, profile: str) -> bool:
    if row.reference is None:
        return True
    if profile == "paper":
        ratio = row.value / row.reference
        return 0.5 <= ratio <= 2.0
    if row.tol_mode == "rel":
        return abs(row.deviation) <= row.tol_value
    if row.tol_mode == "abs":
        return abs(row.value - row.reference) <= row.tol_value
    ratio = row.value / row.reference
    return 1.0 / row.tol_value <= ratio <= row.tol_value


def tolerance_failures(report: Report, profile: str = "paper") -> list[str]:
    """Names of scalar rows whose value misses its reference under the given
    tolerance profile ("strict" = published precision, "paper" = factor 2)."""
    if profile not in ("strict", "paper"):
        raise ValueError(f"profile must be 'strict' or 'paper', got {profile!r}")
    return [row.name for row in report.scalars if not _within(row, profile)]


# ---------------------------------------------------------------------------
# config ingestion

_SCHEMA = {
    "scenario": {
        "name",
        "initial_dx_m",
        "initial_dx_planck_lengths",
        "evolution_time_s",
        "speed_m_s",
        "sample_times_s",
        "disable_decoherence",
    },
    "particle": {"mass_kg", "radius_m"},
    "air": {"molecular_mass_kg", "mass_density_kg_m3", "temperature_K"},
    "environment": {
        "number_density_per_m3",
        "cross_section_m2",
        "relative_velocity_m_s",
        "rms_wavenumber_per_m",
    },
    "observation": {"centers_m", "alpha_per_m2", "gamma_per_m2"},
}


def _parse_float(section: str, key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigParseError(f"value of {section}.{key} is not a number: {raw!r}") from None


def _parse_float_list(section: str, key: str, raw: str) -> tuple[float, ...]:
    tokens = [tok.strip() for tok in raw.split(",") if tok.strip()]
    if not tokens:
        raise ConfigParseError(f"value of {section}.{key} is an empty list")
    return tuple(_parse_float(section, key, tok) for tok in tokens)


def _parse_bool(section: str, key: str, raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("true", "yes", "1"):
        return True
    if lowered in ("false", "no", "0"):
        return False
    raise ConfigParseError(f"value of {section}.{key} is not a boolean: {raw!r}")


def load_scenario(config_text: str, constants: PhysicalConstants = CONSTANTS) -> Scenario:
    """Parse and validate flat key-value config text with [section] headers.

    Keys carry their units in their names; unknown keys are rejected by
    name, missing keys and ambiguous alternatives raise distinct errors.
    """
    parser = configparser.ConfigParser(interpolation=None, delimiters=("=",))
    parser.optionxform = str  # keys carry units in their names; keep case
    try:
        parser.read_string(config_text)
    except configparser.Error as exc:
        raise ConfigParseError(str(exc), line=getattr(exc, "lineno", None)) from exc

    unknown = []
    for section in parser.sections():
        if section not in _SCHEMA:
            unknown.extend(f"{section}.{key}" for key in parser[section])
            continue
        unknown.extend(
            f"{section}.{key}" for key in parser[section] if key not in _SCHEMA[section]
        )
    if unknown:
        raise UnknownKeyError(sorted(unknown))

    def get(section: str, key: str) -> Optional[str]:
        if parser.has_section(section) and key in parser[section]:
            return parser[section][key]
        return None

    mass_raw = get("particle", "mass_kg")
    if mass_raw is None:
        raise MissingKeyError("mass_kg")
    radius_raw = get("particle", "radius_m")
    particle = FreeParticle(
        mass=_parse_float("particle", "mass_kg", mass_raw),
        radius=None if radius_raw is None else _parse_float("particle", "radius_m", radius_raw),
    )

    has_air = parser.has_section("air")
    has_env = parser.has_section("environment")
    if has_air and has_env:
        raise AmbiguityError("config supplies both an [air] and an [environment] block")
    if not has_air and not has_env:
        raise MissingKeyError("air or environment section")
    air = None
    environment = None
    if has_air:
        values = {}
        for key in ("molecular_mass_kg", "mass_density_kg_m3", "temperature_K"):
            raw = get("air", key)
            if raw is None:
                raise MissingKeyError(key)
            values[key] = _parse_float("air", key, raw)
        air = AirModel(
            molecular_mass=values["molecular_mass_kg"],
            mass_density=values["mass_density_kg_m3"],
            temperature=values["temperature_K"],
        )
        if particle.radius is None:
            raise MissingKeyError("radius_m")
    else:
        values = {}
        for key in _SCHEMA["environment"]:
            raw = get("environment", key)
            if raw is None:
                raise MissingKeyError(key)
            values[key] = _parse_float("environment", key, raw)
        environment = ScatteringEnvironment(
            number_density=values["number_density_per_m3"],
            cross_section=values["cross_section_m2"],
            mean_relative_velocity=values["relative_velocity_m_s"],
            rms_wavenumber=values["rms_wavenumber_per_m"],
        )

    dx_m_raw = get("scenario", "initial_dx_m")
    dx_pl_raw = get("scenario", "initial_dx_planck_lengths")
    if dx_m_raw is not None and dx_pl_raw is not None:
        raise AmbiguityError(
            "config supplies both initial_dx_m and initial_dx_planck_lengths"
        )
    if dx_m_raw is not None:
        initial_dx_m = _parse_float("scenario", "initial_dx_m", dx_m_raw)
    elif dx_pl_raw is not None:
        initial_dx_m = (
            _parse_float("scenario", "initial_dx_planck_lengths", dx_pl_raw)
            * constants.planck_length
        )
    else:
        raise MissingKeyError("initial_dx_m")

    speed_raw = get("scenario", "speed_m_s")
    speed = None if speed_raw is None else _parse_float("scenario", "speed_m_s", speed_raw)
    time_raw = get("scenario", "evolution_time_s")
    if time_raw is not None:
        evolution_time = _parse_float("scenario", "evolution_time_s", time_raw)
    elif speed is not None:
        evolution_time = flight_time(speed, constants)
    else:
        raise MissingKeyError("evolution_time_s")

    samples_raw = get("scenario", "sample_times_s")
    sample_times = (
        None if samples_raw is None else _parse_float_list("scenario", "sample_times_s", samples_raw)
    )
    disable_raw = get("scenario", "disable_decoherence")
    disable = False if disable_raw is None else _parse_bool("scenario", "disable_decoherence", disable_raw)

    observation = None
    if parser.has_section("observation"):
        values = {}
        for key in _SCHEMA["observation"]:
            raw = get("observation", key)
            if raw is None:
                raise MissingKeyError(key)
            values[key] = raw
        observation = ObservationFamilySpec(
            centers_m=_parse_float_list("observation", "centers_m", values["centers_m"]),
            alpha_per_m2=_parse_float("observation", "alpha_per_m2", values["alpha_per_m2"]),
            gamma_per_m2=_parse_float("observation", "gamma_per_m2", values["gamma_per_m2"]),
        )

    return Scenario(
        particle=particle,
        initial_dx_m=initial_dx_m,
        evolution_time_s=evolution_time,
        air=air,
        environment=environment,
        speed_m_s=speed,
        sample_times_s=sample_times,
        observation=observation,
        disable_decoherence=disable,
        name=get("scenario", "name") or "",
    )


def dump_scenario(scenario: Scenario) -> str:
    """Serialize a scenario to config text; load_scenario(dump_scenario(s))
    reproduces s exactly (floats via repr)."""
    out = io.StringIO()
    out.write("[scenario]\n")
    if scenario.name:
        out.write(f"name = {scenario.name}\n")
    out.write(f"initial_dx_m = {scenario.initial_dx_m!r}\n")
    out.write(f"evolution_time_s = {scenario.evolution_time_s!r}\n")
    if scenario.speed_m_s is not None:
        out.write(f"speed_m_s = {scenario.speed_m_s!r}\n")
    if scenario.sample_times_s is not None:
        out.write(
            "sample_times_s = " + ", ".join(repr(t) for t in scenario.sample_times_s) + "\n"
        )
    if scenario.disable_decoherence:
        out.write("disable_decoherence = true\n")
    out.write("\n[particle]\n")
    out.write(f"mass_kg = {scenario.particle.mass!r}\n")
    if scenario.particle.radius is not None:
        out.write(f"radius_m = {scenario.particle.radius!r}\n")
    if scenario.air is not None:
        out.write("\n[air]\n")
        out.write(f"molecular_mass_kg = {scenario.air.molecular_mass!r}\n")
        out.write(f"mass_density_kg_m3 = {scenario.air.mass_density!r}\n")
        out.write(f"temperature_K = {scenario.air.temperature!r}\n")
    if scenario.environment is not None:
        env = scenario.environment
        out.write("\n[environment]\n")
        out.write(f"number_density_per_m3 = {env.number_density!r}\n")
        out.write(f"cross_section_m2 = {env.cross_section!r}\n")
        out.write(f"relative_velocity_m_s = {env.mean_relative_velocity!r}\n")
        out.write(f"rms_wavenumber_per_m = {env.rms_wavenumber!r}\n")
    if scenario.observation is not None:
        obs = scenario.observation
        out.write("\n[observation]\n")
        out.write("centers_m = " + ", ".join(repr(c) for c in obs.centers_m) + "\n")
        out.write(f"alpha_per_m2 = {obs.alpha_per_m2!r}\n")
        out.write(f"gamma_per_m2 = {obs.gamma_per_m2!r}\n")
    return out.getvalue()


# ---------------------------------------------------------------------------
# emission

def _fmt(value: Optional[float]) -> str:
    if value is None:
        return ""
    if value == 0.0:
        value = 0.0  # normalize -0.0
    return f"{value:.8e}"


def _fmt_dev(value: Optional[float]) -> str:
    if value is None:
        return ""
    if value == 0.0:
        value = 0.0
    return f"{value:.2e}"


def _round9(value: Optional[float]) -> Optional[float]:
    if value is None:
        return None
    return float(_fmt(value))


def _round3(value: Optional[float]) -> Optional[float]:
    if value is None:
        return None
    if value == 0.0:
        value = 0.0
    return float(f"{value:.2e}")


_TRAJECTORY_COLUMNS = ("t_s", "tau", "dx2", "dp2", "A", "B", "C", "N", "S")


def _trajectory_values(row: TrajectoryRow) -> tuple[float, ...]:
    return (
        row.t_s,
        row.tau,
        row.dx2,
        row.dp2,
        row.a_coeff,
        row.b_coeff,
        row.c_coeff,
        row.n_mean,
        row.entropy,
    )


def _emit_json(report: Report) -> bytes:
    payload = {
        "scenario": report.scenario_name,
        "scalars": [
            {
                "name": row.name,
                "value": _round9(row.value),
                "unit": row.unit,
                "reference": _round9(row.reference),
                "deviation": _round3(row.deviation),
            }
            for row in report.scalars
        ],
        "trajectory": [
            dict(zip(_TRAJECTORY_COLUMNS, map(_round9, _trajectory_values(row))))
            for row in report.trajectory
        ],
        "discrepancies": [
            {
                "description": entry.description,
                "stated": entry.stated,
                "computed": _round9(entry.computed),
            }
            for entry in report.discrepancies
        ],
        "profile": [
            {"x_k": _round9(row.center), "measure": _round9(row.measure)}
            for row in report.profile
        ],
    }
    return (json.dumps(payload, indent=2) + "\n").encode()


def _emit_csv(report: Report) -> bytes:
    lines = [f"# scenario: {report.scenario_name}", "# section: scalars"]
    lines.append("name,value,unit,reference,deviation")
    for row in report.scalars:
        lines.append(
            f"{row.name},{_fmt(row.value)},{row.unit},{_fmt(row.reference)},{_fmt_dev(row.deviation)}"
        )
    lines.append("# section: trajectory")
    lines.append(",".join(_TRAJECTORY_COLUMNS))
    for row in report.trajectory:
        lines.append(",".join(_fmt(v) for v in _trajectory_values(row)))
    lines.append("# section: discrepancies")
    lines.append("description,stated,computed")
    for entry in report.discrepancies:
        lines.append(f'"{entry.description}","{entry.stated}",{_fmt(entry.computed)}')
    lines.append("# section: profile")
    lines.append("x_k,measure")
    for row in report.profile:
        lines.append(f"{_fmt(row.center)},{_fmt(row.measure)}")
    return ("\n".join(lines) + "\n").encode()


def _emit_text(report: Report) -> bytes:
    lines = [f"scenario: {report.scenario_name or '(unnamed)'}", ""]
    name_w = max(len(row.name) for row in report.scalars)
    lines.append(
        f"{'quantity':<{name_w}}  {'value':>15}  {'unit':<10} {'reference':>15}  {'deviation':>9}"
    )
    for row in report.scalars:
        lines.append(
            f"{row.name:<{name_w}}  {_fmt(row.value):>15}  {row.unit:<10} "
            f"{_fmt(row.reference):>15}  {_fmt_dev(row.deviation):>9}"
        )
    lines.append("")
    lines.append("trajectory (SI):")
    lines.append("  ".join(f"{c:>15}" for c in _TRAJECTORY_COLUMNS))
    for row in report.trajectory:
        lines.append("  ".join(f"{_fmt(v):>15}" for v in _trajectory_values(row)))
    if report.discrepancies:
        lines.append("")
        lines.append("known discrepancies of the published description:")
        for entry in report.discrepancies:
            lines.append(f"- {entry.description}")
            lines.append(f"    stated:   {entry.stated}")
            lines.append(f"    computed: {_fmt(entry.computed)}")
    if report.profile:
        lines.append("")
        lines.append("observation profile:")
        lines.append(f"{'x_k':>15}  {'measure':>15}")
        for row in report.profile:
            lines.append(f"{_fmt(row.center):>15}  {_fmt(row.measure):>15}")
    return ("\n".join(lines) + "\n").encode()


def emit(report: Report, fmt: str = "text") -> bytes:
    """Deterministic serialization: same report, same bytes."""
    if fmt == "json":
        return _emit_json(report)
    if fmt == "csv":
        return _emit_csv(report)
    if fmt == "text":
        return _emit_text(report)
    raise ValueError(f"format must be csv, json or text, got {fmt!r}")
