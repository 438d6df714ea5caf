import dataclasses
from datetime import timedelta

import pytest

from ecodom.archetypes import (
    CLOSED_APERTURES,
    POROSITY_25_APERTURES,
    VOLUME_M3,
    compliant_zone,
    uninsulated_zone,
)
from ecodom.dataio import SyntheticWeatherParams, WeatherSeries, synthetic_weather
from ecodom.thermal import (
    ScenarioError,
    VentilationApertures,
    WeatherGapError,
    gain_breakdown,
    result_to_csv,
    simulate,
    ventilation_ach,
    zone_from_building,
)

_mean = lambda xs: sum(xs) / len(xs)


@pytest.fixture(scope="module")
def week():
    return synthetic_weather(SyntheticWeatherParams(days=7))


class TestVentilation:
    def test_zero_aperture_zero_ach(self):
        closed = VentilationApertures(0.0, 2.0)
        assert ventilation_ach(closed, VOLUME_M3, 4.0) == 0.0
        closed = VentilationApertures(2.0, 0.0)
        assert ventilation_ach(closed, VOLUME_M3, 4.0) == 0.0

    def test_linear_in_wind_speed(self):
        one = ventilation_ach(POROSITY_25_APERTURES, VOLUME_M3, 1.0)
        two = ventilation_ach(POROSITY_25_APERTURES, VOLUME_M3, 2.0)
        four = ventilation_ach(POROSITY_25_APERTURES, VOLUME_M3, 4.0)
        assert two == pytest.approx(2.0 * one)
        assert four == pytest.approx(4.0 * one)

    def test_threshold_porosity_reaches_critical_rate(self):
        assert ventilation_ach(POROSITY_25_APERTURES, VOLUME_M3, 4.0) >= 40.0

    def test_equal_orifices_in_series(self):
        # Aeq for two equal orifices is A / sqrt(2)
        ap = VentilationApertures(2.0, 2.0, discharge_coefficient=0.6, delta_cp=0.5)
        expected = 0.6 * (2.0 / 2 ** 0.5) * 4.0 * 0.5 ** 0.5 * 3600.0 / VOLUME_M3
        assert ventilation_ach(ap, VOLUME_M3, 4.0) == pytest.approx(expected)

    def test_oblique_wind_reduces_flow(self):
        normal = ventilation_ach(POROSITY_25_APERTURES, VOLUME_M3, 4.0, 0.0)
        oblique = ventilation_ach(POROSITY_25_APERTURES, VOLUME_M3, 4.0, 60.0)
        parallel = ventilation_ach(POROSITY_25_APERTURES, VOLUME_M3, 4.0, 90.0)
        assert oblique == pytest.approx(normal * 0.5)
        assert parallel == pytest.approx(0.0, abs=1e-9)

    def test_volume_required(self):
        with pytest.raises(ValueError):
            ventilation_ach(POROSITY_25_APERTURES, 0.0, 4.0)


def _calm_weather(days=2, t_out=28.0):
    base = synthetic_weather(SyntheticWeatherParams(days=days))
    records = tuple(dataclasses.replace(
        r, temp_air_c=t_out, solar_direct_w_m2=0.0, solar_diffuse_w_m2=0.0,
        wind_speed_m_s=0.0) for r in base.records)
    return WeatherSeries(records=records)


class TestSimulate:
    def test_equilibrium_without_forcing(self):
        zone = compliant_zone()
        result = simulate(zone, _calm_weather(days=4, t_out=28.0))
        assert result.t_air_c[-1] == pytest.approx(28.0, abs=0.05)
        assert result.t_resultant_c[-1] == pytest.approx(28.0, abs=0.05)

    def test_output_length_matches_weather(self, week):
        result = simulate(compliant_zone(), week)
        assert len(result) == len(week)

    def test_resultant_is_air_radiant_mean(self, week):
        result = simulate(compliant_zone(), week)
        for t_air, t_rad, t_res in zip(result.t_air_c, result.t_radiant_c,
                                       result.t_resultant_c):
            assert t_res == pytest.approx((t_air + t_rad) / 2.0)

    def test_energy_residual_below_tolerance(self, week):
        result = simulate(uninsulated_zone(), week)
        assert result.max_residual_fraction <= 1e-3

    def test_doubling_roof_resistance_lowers_peak_roof_gain(self, week):
        zone = uninsulated_zone()
        roof = zone.surfaces[0]
        better = dataclasses.replace(
            zone, surfaces=(dataclasses.replace(
                roof, resistance_m2k_w=2 * roof.resistance_m2k_w),) + zone.surfaces[1:])
        peak = max(simulate(zone, week).surface_gains_w["roof"])
        peak_better = max(simulate(better, week).surface_gains_w["roof"])
        assert peak_better < peak

    def test_more_insulation_lowers_peak_indoor_temperature(self, week):
        degraded = compliant_zone("bad", degraded_roof=True)
        insulated = compliant_zone("good")
        assert (max(simulate(insulated, week).t_air_c)
                < max(simulate(degraded, week).t_air_c))

    def test_larger_overhang_lowers_transmitted_solar(self, week):
        zone = uninsulated_zone()
        shaded_surfaces = tuple(
            dataclasses.replace(s, overhang_depth_m=1.5)
            if s.kind == "window" else s
            for s in zone.surfaces)
        shaded = dataclasses.replace(zone, surfaces=shaded_surfaces)
        assert (sum(simulate(shaded, week).window_solar_w)
                < sum(simulate(zone, week).window_solar_w))

    def test_ventilation_cools_when_cooler_outside(self, week):
        closed = compliant_zone("closed", apertures=CLOSED_APERTURES)
        open_zone = compliant_zone("open", apertures=POROSITY_25_APERTURES)
        assert (_mean(simulate(open_zone, week).t_air_c)
                < _mean(simulate(closed, week).t_air_c))

    def test_night_indoor_never_below_outdoor_in_calm_air(self):
        # weak night breezes: the closed zone can only drift towards, not
        # below, the outdoor temperature
        weather = synthetic_weather(SyntheticWeatherParams(days=3, wind_speed_m_s=0.05))
        result = simulate(compliant_zone(), weather)
        night = [i for i, r in enumerate(weather.records)
                 if r.solar_direct_w_m2 == 0.0 and i > 24]
        for i in night:
            assert result.t_air_c[i] >= result.t_out_c[i] - 1e-9

    def test_gap_raises_with_missing_hours(self, week):
        records = week.records[:30] + week.records[32:]
        broken = WeatherSeries(records=records, gaps=())
        with pytest.raises(WeatherGapError) as err:
            simulate(compliant_zone(), broken)
        assert len(err.value.missing) == 2

    def test_too_short_series_rejected(self, week):
        short = WeatherSeries(records=week.records[:12])
        with pytest.raises(ValueError, match="24"):
            simulate(compliant_zone(), short)

    def test_halving_step_changes_daily_mean_below_tolerance(self, week):
        zone = compliant_zone()
        hourly = simulate(zone, week)
        halved_records = []
        for rec in week.records:
            halved_records.append(rec)
            halved_records.append(dataclasses.replace(
                rec, timestamp=rec.timestamp + timedelta(minutes=30)))
        halved = simulate(zone, WeatherSeries(records=tuple(halved_records)))
        day = lambda xs, n: _mean(xs[-n:])
        assert abs(day(hourly.t_air_c, 24) - day(halved.t_air_c, 48)) < 0.05

    def test_internal_gains_schedule_cycles_daily(self):
        zone = compliant_zone()
        schedule = tuple(300.0 if 18 <= h <= 22 else 0.0 for h in range(24))
        scheduled = dataclasses.replace(zone, internal_gains_w=schedule)
        result = simulate(scheduled, _calm_weather(days=2))
        by_hour = {ts.hour: q for ts, q in zip(result.timestamps,
                                               result.internal_gain_w)}
        assert by_hour[20] == 300.0
        assert by_hour[3] == 0.0
        # evening gains leave the zone warmer than the constant-zero case
        assert max(result.t_air_c) > max(
            simulate(zone, _calm_weather(days=2)).t_air_c)

    def test_gains_schedule_must_cover_a_day(self):
        zone = compliant_zone()
        with pytest.raises(ValueError, match="24"):
            dataclasses.replace(zone, internal_gains_w=(100.0, 200.0))

    def test_weekly_storage_drift_below_one_percent(self):
        zone = compliant_zone()
        weather = synthetic_weather(SyntheticWeatherParams(days=14))
        result = simulate(zone, weather)
        drift = zone.capacitance_j_k * abs(result.t_air_c[-1] - result.t_air_c[-1 - 168])
        weekly_gains = sum(
            sum(q for q in gains[-168:] if q > 0)
            for gains in result.surface_gains_w.values())
        weekly_gains += sum(result.window_solar_w[-168:])
        assert drift < 0.01 * weekly_gains * 3600.0


class TestGainBreakdown:
    def test_single_surface_takes_all(self):
        zone = uninsulated_zone()
        only_roof = dataclasses.replace(zone, surfaces=zone.surfaces[:1])
        shares = gain_breakdown(simulate(only_roof, synthetic_weather(
            SyntheticWeatherParams(days=2))))
        assert shares["roof"] == pytest.approx(1.0)
        assert shares["wall"] == 0.0

    def test_shares_sum_to_one(self, week):
        shares = gain_breakdown(simulate(uninsulated_zone(), week))
        assert sum(shares.values()) == pytest.approx(1.0, abs=1e-9)


class TestZoneFromBuilding:
    def test_surfaces_mirror_description(self, final_building):
        zone = zone_from_building(final_building)
        kinds = [s.kind for s in zone.surfaces]
        assert kinds.count("roof") == 1
        assert kinds.count("wall") == len(final_building.walls)
        assert kinds.count("window") == len(final_building.windows)
        assert zone.volume_m3 == pytest.approx(final_building.roof.area_m2 * 2.5)

    def test_apertures_from_porosities(self, final_building):
        zone = zone_from_building(final_building)
        assert zone.apertures.inlet_area_m2 == pytest.approx(4.0)
        assert zone.apertures.outlet_area_m2 == pytest.approx(4.0)

    def test_roof_exposed_flag(self, final_building):
        intermediate = zone_from_building(final_building, {"roof_exposed": False})
        assert all(s.kind != "roof" for s in intermediate.surfaces)

    def test_scenario_overrides(self, final_building):
        zone = zone_from_building(final_building, {
            "floor_area_m2": 50.0, "volume_m3": 120.0, "mass_class": "light",
            "internal_gains_w": 150.0})
        assert zone.volume_m3 == 120.0
        assert zone.capacitance_j_k == pytest.approx(80e3 * 50.0)
        assert zone.internal_gains_w == 150.0

    def test_unknown_scenario_key(self, final_building):
        with pytest.raises(ScenarioError, match="hvac_mode"):
            zone_from_building(final_building, {"hvac_mode": "off"})

    def test_simulates_end_to_end(self, final_building, week):
        result = simulate(zone_from_building(final_building), week)
        assert len(result) == 168
        csv_text = result_to_csv(result)
        assert csv_text.splitlines()[0].startswith("timestamp,t_out_c,")
        assert len(csv_text.splitlines()) == 169
