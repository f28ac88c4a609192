import json
import math

import pytest

from decogauss.model import ScatteringEnvironment
from decogauss.scenarios import (
    AmbiguityError,
    ConfigParseError,
    MissingKeyError,
    ObservationFamilySpec,
    Scenario,
    UnknownKeyError,
    baseball_scenario,
    dump_scenario,
    emit,
    flight_time,
    load_scenario,
    run,
    tolerance_failures,
)
from decogauss.units import CONSTANTS


@pytest.fixture(scope="module")
def baseball_report():
    return run(baseball_scenario(), samples=4)


def scalar(report, name):
    for row in report.scalars:
        if row.name == name:
            return row
    raise KeyError(name)


# --- preset ----------------------------------------------------------------------

def test_baseball_has_planck_momentum():
    scenario = baseball_scenario()
    momentum = scenario.particle.mass * scenario.speed_m_s
    assert momentum == pytest.approx(6.524785, rel=1e-4)


def test_baseball_flight_time():
    scenario = baseball_scenario()
    assert scenario.evolution_time_s == pytest.approx(6.44675, abs=1e-5)
    assert flight_time(44.704) == pytest.approx(6.44675, abs=1e-5)


def test_baseball_mass_in_ounces():
    assert baseball_scenario().particle.mass / 0.028349523125 == pytest.approx(
        5.148421, rel=1e-3
    )


def test_flight_time_rejects_nonpositive_speed():
    with pytest.raises(ValueError):
        flight_time(0.0)


# --- run -------------------------------------------------------------------------

def test_baseball_entropy(baseball_report):
    assert scalar(baseball_report, "entropy_nats").value == pytest.approx(61.0, abs=0.5)


def test_baseball_oscillator_period(baseball_report):
    assert scalar(baseball_report, "oscillator_period_years").value == pytest.approx(
        2.0e5, rel=0.15
    )


def test_baseball_averaging_time_much_shorter_than_flight(baseball_report):
    assert scalar(baseball_report, "averaging_time_over_flight_time").value < 1e-30


def test_baseball_discrepancy_ledger(baseball_report):
    entries = baseball_report.discrepancies
    assert len(entries) == 3
    assert entries[0].computed == pytest.approx(2.0 * math.pi, rel=1e-9)
    assert entries[1].computed == pytest.approx(7.62419e46, rel=1e-3)
    assert entries[2].computed == pytest.approx(1.5, abs=1e-6)


def test_baseball_within_both_tolerance_profiles(baseball_report):
    assert tolerance_failures(baseball_report, "strict") == []
    assert tolerance_failures(baseball_report, "paper") == []


def test_every_reference_row_carries_deviation(baseball_report):
    for row in baseball_report.scalars:
        assert (row.reference is None) == (row.deviation is None)
    with_refs = [row for row in baseball_report.scalars if row.reference is not None]
    assert len(with_refs) >= 20


def test_trajectory_monotone_spreading(baseball_report):
    spreads = [row.dx2 for row in baseball_report.trajectory]
    assert all(a < b for a, b in zip(spreads, spreads[1:]))
    assert len(baseball_report.trajectory) == 5  # samples + initial point


def test_zero_decoherence_variant_stays_pure():
    scenario = baseball_scenario()
    free = Scenario(
        particle=scenario.particle,
        initial_dx_m=scenario.initial_dx_m,
        evolution_time_s=scenario.evolution_time_s,
        air=scenario.air,
        speed_m_s=scenario.speed_m_s,
        disable_decoherence=True,
        name="baseball-free",
    )
    report = run(free, samples=5)
    assert all(row.entropy == 0.0 for row in report.trajectory)
    assert all(row.n_mean == 0.0 for row in report.trajectory)
    assert scalar(report, "purity").value == 1.0


def test_run_with_raw_environment():
    scenario = Scenario(
        particle=baseball_scenario().particle,
        initial_dx_m=CONSTANTS.planck_length / 2.0,
        evolution_time_s=2.0,
        environment=ScatteringEnvironment(1e25, 4e-3, 500.0, 2e11),
        name="custom",
    )
    report = run(scenario, samples=2)
    assert report.discrepancies == ()
    assert scalar(report, "entropy_nats").value > 0.0
    assert all(row.reference is None for row in report.scalars)


def test_observation_profile_in_report():
    base = baseball_scenario()
    scenario = Scenario(
        particle=base.particle,
        initial_dx_m=base.initial_dx_m,
        evolution_time_s=base.evolution_time_s,
        air=base.air,
        speed_m_s=base.speed_m_s,
        observation=ObservationFamilySpec(
            centers_m=(-200.0, -100.0, 0.0, 100.0, 200.0),
            alpha_per_m2=1.0,
            gamma_per_m2=1e-5,
        ),
        name="baseball",
    )
    report = run(scenario, samples=2)
    values = [row.measure for row in report.profile]
    assert len(values) == 5
    assert values == values[::-1]  # symmetric state, symmetric centers
    assert values[2] >= max(values[0], values[1])


# --- config ingestion --------------------------------------------------------------

def test_dump_load_round_trip():
    scenario = baseball_scenario()
    assert load_scenario(dump_scenario(scenario)) == scenario


def test_dump_load_round_trip_with_extras():
    base = baseball_scenario()
    scenario = Scenario(
        particle=base.particle,
        initial_dx_m=base.initial_dx_m,
        evolution_time_s=base.evolution_time_s,
        air=base.air,
        sample_times_s=(0.5, 1.0, 2.0),
        observation=ObservationFamilySpec((0.0, 1.0), 0.5, 2.0),
        disable_decoherence=True,
        name="variant",
    )
    assert load_scenario(dump_scenario(scenario)) == scenario


def test_missing_mass_key():
    text = dump_scenario(baseball_scenario()).replace("mass_kg = 0.1459553\n", "")
    with pytest.raises(MissingKeyError) as info:
        load_scenario(text)
    assert info.value.key == "mass_kg"


def test_both_air_and_environment_is_ambiguous():
    text = dump_scenario(baseball_scenario()) + (
        "\n[environment]\n"
        "number_density_per_m3 = 1e25\ncross_section_m2 = 4e-3\n"
        "relative_velocity_m_s = 500.0\nrms_wavenumber_per_m = 2e11\n"
    )
    with pytest.raises(AmbiguityError):
        load_scenario(text)


def test_unknown_keys_listed_by_name():
    text = dump_scenario(baseball_scenario()) + "\n[particle2]\nspin = 1\n"
    with pytest.raises(UnknownKeyError) as info:
        load_scenario(text)
    assert "particle2.spin" in info.value.keys
    text2 = dump_scenario(baseball_scenario()).replace(
        "mass_kg =", "mass_pounds =\nmass_kg ="
    )
    with pytest.raises(UnknownKeyError) as info2:
        load_scenario(text2)
    assert any("mass_pounds" in key for key in info2.value.keys)


def test_parse_error_on_garbage():
    with pytest.raises(ConfigParseError):
        load_scenario("this is not a config\n")
    with pytest.raises(ConfigParseError):
        load_scenario("[particle]\nmass_kg = not_a_number\n[air]\n")


def test_non_numeric_value_rejected():
    text = dump_scenario(baseball_scenario()).replace(
        "mass_kg = 0.1459553", "mass_kg = heavy"
    )
    with pytest.raises(ConfigParseError):
        load_scenario(text)


def test_initial_dx_planck_lengths_key():
    text = dump_scenario(baseball_scenario()).replace(
        "initial_dx_m = 8.081275e-36", "initial_dx_planck_lengths = 0.5"
    )
    scenario = load_scenario(text)
    assert scenario.initial_dx_m == pytest.approx(CONSTANTS.planck_length / 2.0, rel=1e-12)


def test_both_dx_keys_ambiguous():
    text = dump_scenario(baseball_scenario()).replace(
        "initial_dx_m = 8.081275e-36",
        "initial_dx_m = 8.081275e-36\ninitial_dx_planck_lengths = 0.5",
    )
    with pytest.raises(AmbiguityError):
        load_scenario(text)


def test_flight_time_derived_when_time_absent():
    text = dump_scenario(baseball_scenario()).replace(
        "evolution_time_s = 6.446748185397342\n", ""
    )
    scenario = load_scenario(text)
    assert scenario.evolution_time_s == pytest.approx(flight_time(44.704), rel=1e-12)


def test_invariant_violation_is_value_error():
    text = dump_scenario(baseball_scenario()).replace(
        "mass_kg = 0.1459553", "mass_kg = -1.0"
    )
    with pytest.raises(ValueError):
        load_scenario(text)


# --- emission -----------------------------------------------------------------------

def test_emit_deterministic(baseball_report):
    for fmt in ("csv", "json", "text"):
        assert emit(baseball_report, fmt) == emit(baseball_report, fmt)


def test_csv_trajectory_schema(baseball_report):
    lines = emit(baseball_report, "csv").decode().splitlines()
    assert "t_s,tau,dx2,dp2,A,B,C,N,S" in lines
    index = lines.index("# section: trajectory")
    assert lines[index + 1] == "t_s,tau,dx2,dp2,A,B,C,N,S"
    first_row = lines[index + 2].split(",")
    assert len(first_row) == 9


def test_json_round_trips_at_nine_digits(baseball_report):
    data = emit(baseball_report, "json")
    parsed = json.loads(data)
    assert (json.dumps(parsed, indent=2) + "\n").encode() == data
    entropy = next(r for r in parsed["scalars"] if r["name"] == "entropy_nats")
    assert entropy["value"] == pytest.approx(60.9853331, rel=1e-8)


def test_emit_rejects_unknown_format(baseball_report):
    with pytest.raises(ValueError):
        emit(baseball_report, "yaml")


def test_scenario_requires_exactly_one_environment():
    base = baseball_scenario()
    with pytest.raises(ValueError):
        Scenario(
            particle=base.particle,
            initial_dx_m=base.initial_dx_m,
            evolution_time_s=1.0,
        )
    with pytest.raises(ValueError):
        Scenario(
            particle=base.particle,
            initial_dx_m=base.initial_dx_m,
            evolution_time_s=1.0,
            air=base.air,
            environment=ScatteringEnvironment(1e25, 4e-3, 500.0, 2e11),
        )
