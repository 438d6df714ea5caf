"""File ingestion: weather series, indoor monitoring series, building
description files, plus a deterministic synthetic weather generator.

All series files are CSV with ISO-8601 UTC timestamps and fixed, versioned
headers; building descriptions are JSON (see docs/formats.md).  Floats are
written with Python's shortest repr so load(write(series)) round-trips
exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from datetime import date, datetime, timedelta, timezone
from pathlib import Path

from . import building as bm
from .solar import solar_position

BUILDING_SCHEMA_VERSION = 1

WEATHER_COLUMNS = ("timestamp", "temp_air_c", "rh_pct", "solar_direct_w_m2",
                   "solar_diffuse_w_m2", "wind_speed_m_s", "wind_dir_deg")
INDOOR_COLUMNS = ("timestamp", "zone", "temp_air_c", "temp_resultant_c",
                  "rh_pct", "air_speed_m_s")


class SeriesFormatError(ValueError):
    """Malformed series file; the message carries the offending line number."""


class SchemaVersionError(ValueError):
    """Building file declares a schema version this code does not read."""


def _parse_timestamp(text: str, line_no: int) -> datetime:
    try:
        ts = datetime.fromisoformat(text.replace("Z", "+00:00"))
    except ValueError as exc:
        raise SeriesFormatError(f"line {line_no}: bad timestamp {text!r}") from exc
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def _parse_float(text: str, column: str, line_no: int) -> float:
    try:
        return float(text)
    except ValueError as exc:
        raise SeriesFormatError(
            f"line {line_no}: column {column!r} is not a number: {text!r}") from exc


@dataclass(frozen=True)
class WeatherRecord:
    timestamp: datetime
    temp_air_c: float
    rh_pct: float
    solar_direct_w_m2: float   # direct normal irradiance
    solar_diffuse_w_m2: float  # diffuse horizontal irradiance
    wind_speed_m_s: float
    wind_dir_deg: float


@dataclass(frozen=True)
class WeatherSeries:
    records: tuple[WeatherRecord, ...]
    gaps: tuple[datetime, ...] = ()

    def __post_init__(self) -> None:
        for prev, cur in zip(self.records, self.records[1:]):
            if cur.timestamp <= prev.timestamp:
                raise ValueError(f"timestamps not strictly increasing at {cur.timestamp}")
        for rec in self.records:
            _check_weather_ranges(rec, line_no=None)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def step_seconds(self) -> float:
        if len(self.records) < 2:
            raise ValueError("series needs at least two records")
        return min((b.timestamp - a.timestamp).total_seconds()
                   for a, b in zip(self.records, self.records[1:]))


def _check_weather_ranges(rec: WeatherRecord, line_no: int | None) -> None:
    where = f"line {line_no}: " if line_no is not None else f"{rec.timestamp}: "
    if not 0.0 <= rec.rh_pct <= 100.0:
        raise SeriesFormatError(where + f"rh_pct {rec.rh_pct} outside [0, 100]")
    if rec.solar_direct_w_m2 < 0 or rec.solar_diffuse_w_m2 < 0:
        raise SeriesFormatError(where + "solar irradiance must be >= 0")
    if rec.wind_speed_m_s < 0:
        raise SeriesFormatError(where + "wind speed must be >= 0")


def _detect_gaps(timestamps: list[datetime]) -> tuple[datetime, ...]:
    if len(timestamps) < 2:
        return ()
    step = min((b - a).total_seconds() for a, b in zip(timestamps, timestamps[1:]))
    have = set(timestamps)
    gaps = []
    t = timestamps[0]
    while t < timestamps[-1]:
        if t not in have:
            gaps.append(t)
        t += timedelta(seconds=step)
    return tuple(gaps)


def load_weather(path: str | Path) -> WeatherSeries:
    """Parse and validate a weather CSV; missing grid instants are
    reported in ``series.gaps`` rather than raised."""
    lines = Path(path).read_text("utf-8").splitlines()
    if not lines or tuple(lines[0].split(",")) != WEATHER_COLUMNS:
        raise SeriesFormatError(
            f"line 1: expected header {','.join(WEATHER_COLUMNS)}")
    records = []
    last_ts: datetime | None = None
    for line_no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != len(WEATHER_COLUMNS):
            raise SeriesFormatError(
                f"line {line_no}: expected {len(WEATHER_COLUMNS)} columns, "
                f"got {len(parts)}")
        ts = _parse_timestamp(parts[0], line_no)
        if last_ts is not None and ts <= last_ts:
            raise SeriesFormatError(
                f"line {line_no}: timestamp {parts[0]} not after previous record")
        last_ts = ts
        rec = WeatherRecord(
            timestamp=ts,
            temp_air_c=_parse_float(parts[1], "temp_air_c", line_no),
            rh_pct=_parse_float(parts[2], "rh_pct", line_no),
            solar_direct_w_m2=_parse_float(parts[3], "solar_direct_w_m2", line_no),
            solar_diffuse_w_m2=_parse_float(parts[4], "solar_diffuse_w_m2", line_no),
            wind_speed_m_s=_parse_float(parts[5], "wind_speed_m_s", line_no),
            wind_dir_deg=_parse_float(parts[6], "wind_dir_deg", line_no),
        )
        _check_weather_ranges(rec, line_no)
        records.append(rec)
    gaps = _detect_gaps([r.timestamp for r in records])
    return WeatherSeries(records=tuple(records), gaps=gaps)


def write_weather(series: WeatherSeries, path: str | Path) -> None:
    lines = [",".join(WEATHER_COLUMNS)]
    for r in series.records:
        lines.append(",".join((
            r.timestamp.isoformat(),
            repr(r.temp_air_c), repr(r.rh_pct),
            repr(r.solar_direct_w_m2), repr(r.solar_diffuse_w_m2),
            repr(r.wind_speed_m_s), repr(r.wind_dir_deg),
        )))
    Path(path).write_text("\n".join(lines) + "\n", "utf-8")


# ---------------------------------------------------------------------------
# indoor monitoring series

@dataclass(frozen=True)
class IndoorRecord:
    timestamp: datetime
    zone: str
    temp_air_c: float
    temp_resultant_c: float | None
    rh_pct: float
    air_speed_m_s: float | None

    @property
    def comfort_temperature_c(self) -> float:
        """Resultant temperature when measured, else dry bulb."""
        if self.temp_resultant_c is not None:
            return self.temp_resultant_c
        return self.temp_air_c


@dataclass(frozen=True)
class IndoorSeries:
    records: tuple[IndoorRecord, ...]

    def __post_init__(self) -> None:
        last: dict[str, datetime] = {}
        for rec in self.records:
            if not 0.0 <= rec.rh_pct <= 100.0:
                raise ValueError(f"{rec.timestamp} zone {rec.zone}: rh outside [0, 100]")
            prev = last.get(rec.zone)
            if prev is not None and rec.timestamp <= prev:
                raise ValueError(
                    f"zone {rec.zone}: timestamps not strictly increasing "
                    f"at {rec.timestamp}")
            last[rec.zone] = rec.timestamp

    def __len__(self) -> int:
        return len(self.records)

    def zones(self) -> list[str]:
        seen: list[str] = []
        for rec in self.records:
            if rec.zone not in seen:
                seen.append(rec.zone)
        return seen

    def for_zone(self, zone: str) -> list[IndoorRecord]:
        return [r for r in self.records if r.zone == zone]


def load_indoor(path: str | Path) -> IndoorSeries:
    lines = Path(path).read_text("utf-8").splitlines()
    if not lines or tuple(lines[0].split(",")) != INDOOR_COLUMNS:
        raise SeriesFormatError(
            f"line 1: expected header {','.join(INDOOR_COLUMNS)}")
    records = []
    for line_no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != len(INDOOR_COLUMNS):
            raise SeriesFormatError(
                f"line {line_no}: expected {len(INDOOR_COLUMNS)} columns, "
                f"got {len(parts)}")
        rh = _parse_float(parts[4], "rh_pct", line_no)
        if not 0.0 <= rh <= 100.0:
            raise SeriesFormatError(f"line {line_no}: rh_pct {rh} outside [0, 100]")
        records.append(IndoorRecord(
            timestamp=_parse_timestamp(parts[0], line_no),
            zone=parts[1],
            temp_air_c=_parse_float(parts[2], "temp_air_c", line_no),
            temp_resultant_c=(None if parts[3] == ""
                              else _parse_float(parts[3], "temp_resultant_c", line_no)),
            rh_pct=rh,
            air_speed_m_s=(None if parts[5] == ""
                           else _parse_float(parts[5], "air_speed_m_s", line_no)),
        ))
    try:
        return IndoorSeries(records=tuple(records))
    except ValueError as exc:
        raise SeriesFormatError(str(exc)) from exc


def write_indoor(series: IndoorSeries, path: str | Path) -> None:
    lines = [",".join(INDOOR_COLUMNS)]
    for r in series.records:
        lines.append(",".join((
            r.timestamp.isoformat(), r.zone, repr(r.temp_air_c),
            "" if r.temp_resultant_c is None else repr(r.temp_resultant_c),
            repr(r.rh_pct),
            "" if r.air_speed_m_s is None else repr(r.air_speed_m_s),
        )))
    Path(path).write_text("\n".join(lines) + "\n", "utf-8")


def resample_hourly(records: list[IndoorRecord]) -> list[IndoorRecord]:
    """Average sub-hourly records of one zone onto the hourly grid.

    Each output hour is the mean of its samples; optional fields are
    averaged over the samples that carry them.  Raw resolution should be
    kept for comfort statistics, this is for driving simulations.
    """
    if not records:
        return []
    zone = records[0].zone
    buckets: dict[datetime, list[IndoorRecord]] = {}
    for rec in records:
        if rec.zone != zone:
            raise ValueError("resample_hourly expects records of a single zone")
        hour = rec.timestamp.replace(minute=0, second=0, microsecond=0)
        buckets.setdefault(hour, []).append(rec)
    out = []
    for hour in sorted(buckets):
        group = buckets[hour]
        resultants = [r.temp_resultant_c for r in group if r.temp_resultant_c is not None]
        speeds = [r.air_speed_m_s for r in group if r.air_speed_m_s is not None]
        out.append(IndoorRecord(
            timestamp=hour,
            zone=zone,
            temp_air_c=sum(r.temp_air_c for r in group) / len(group),
            temp_resultant_c=sum(resultants) / len(resultants) if resultants else None,
            rh_pct=sum(r.rh_pct for r in group) / len(group),
            air_speed_m_s=sum(speeds) / len(speeds) if speeds else None,
        ))
    return out


# ---------------------------------------------------------------------------
# building description files

def _insulation_from_dict(doc: dict | None) -> bm.InsulationLayer:
    if doc is None:
        return bm.NO_INSULATION
    return bm.InsulationLayer(
        material_name=doc["material"],
        conductivity_w_mk=float(doc["conductivity_w_mk"]),
        thickness_cm=float(doc["thickness_cm"]),
        humidity_protected=bool(doc.get("humidity_protected", False)),
    )


def _insulation_to_dict(layer: bm.InsulationLayer) -> dict:
    return {
        "material": layer.material_name,
        "conductivity_w_mk": layer.conductivity_w_mk,
        "thickness_cm": layer.thickness_cm,
        "humidity_protected": layer.humidity_protected,
    }


def _openings(docs: list[dict]) -> tuple[bm.Opening, ...]:
    return tuple(bm.Opening(
        id=d["id"],
        net_area_m2=float(d["net_area_m2"]),
        facade_id=d.get("facade_id"),
    ) for d in docs)


def building_from_dict(doc: dict) -> bm.BuildingDescription:
    """Construct a description from parsed JSON; structural problems raise
    KeyError/ValueError, semantic ones are left to :func:`building.validate`."""
    version = doc.get("schema_version")
    if version != BUILDING_SCHEMA_VERSION:
        raise SchemaVersionError(
            f"building schema version {version!r} not supported "
            f"(expected {BUILDING_SCHEMA_VERSION})")
    roof_doc = doc["roof"]
    roof = bm.RoofSpec(
        color=bm.ColorClass(roof_doc["color"]),
        attic=bm.AtticRegime(roof_doc.get("attic", "none")),
        insulation=_insulation_from_dict(roof_doc.get("insulation")),
        area_m2=float(roof_doc["area_m2"]),
    )
    walls = tuple(bm.WallSpec(
        id=w["id"],
        construction=bm.WallConstruction(w["construction"]),
        color=bm.ColorClass(w["color"]),
        azimuth_deg=float(w["azimuth_deg"]),
        area_m2=float(w["area_m2"]),
        overhang_depth_m=float(w.get("overhang_depth_m", 0.0)),
        overhang_height_m=float(w.get("overhang_height_m", 0.0)),
        insulation=_insulation_from_dict(w.get("insulation")),
        full_shading=bool(w.get("full_shading", False)),
    ) for w in doc.get("walls", []))
    windows = tuple(bm.WindowSpec(
        id=w["id"],
        azimuth_deg=float(w["azimuth_deg"]),
        glazed_area_m2=float(w["glazed_area_m2"]),
        height_m=float(w["height_m"]),
        shading_case=bm.ShadingCase(w.get("shading_case", "case2")),
        overhang_depth_m=float(w.get("overhang_depth_m", 0.0)),
        overhang_offset_m=float(w.get("overhang_offset_m", 0.0)),
        mobile_shading=bool(w.get("mobile_shading", False)),
    ) for w in doc.get("windows", []))
    rooms = tuple(bm.Room(
        id=r["id"],
        kind=bm.RoomKind(r["kind"]),
        floor_level=int(r.get("floor_level", 0)),
        under_roof=bool(r.get("under_roof", False)),
        facades=tuple(bm.FacadeMembership(m["facade_id"], float(m["gross_area_m2"]))
                      for m in r.get("facades", [])),
        external_openings=_openings(r.get("external_openings", [])),
        internal_openings=_openings(r.get("internal_openings", [])),
    ) for r in doc.get("rooms", []))
    pairs = tuple(bm.FacadePair(
        facade_1_id=p["facade_1_id"],
        facade_2_id=p["facade_2_id"],
        facade_1_area_m2=float(p["facade_1_area_m2"]),
        facade_2_area_m2=float(p["facade_2_area_m2"]),
    ) for p in doc.get("facade_pairs", []))
    heater_doc = doc["water_heater"]
    heater = bm.WaterHeaterSpec(
        kind=bm.WaterHeaterKind(heater_doc["kind"]),
        collector_area_m2=float(heater_doc.get("collector_area_m2", 0.0)),
        tank_volume_l=float(heater_doc.get("tank_volume_l", 0.0)),
        annual_productivity_kwh_m2=float(heater_doc.get("annual_productivity_kwh_m2", 0.0)),
        certified=bool(heater_doc.get("certified", False)),
    )
    return bm.BuildingDescription(
        name=doc["name"],
        latitude=float(doc["latitude"]),
        longitude=float(doc["longitude"]),
        dwelling_type=int(doc["dwelling_type"]),
        roof=roof,
        walls=walls,
        windows=windows,
        rooms=rooms,
        facade_pairs=pairs,
        water_heater=heater,
        vegetation_note=doc.get("vegetation_note", ""),
    )


def building_to_dict(b: bm.BuildingDescription) -> dict:
    return {
        "schema_version": BUILDING_SCHEMA_VERSION,
        "name": b.name,
        "latitude": b.latitude,
        "longitude": b.longitude,
        "dwelling_type": b.dwelling_type,
        "vegetation_note": b.vegetation_note,
        "roof": {
            "color": b.roof.color.value,
            "attic": b.roof.attic.value,
            "area_m2": b.roof.area_m2,
            "insulation": _insulation_to_dict(b.roof.insulation),
        },
        "walls": [{
            "id": w.id,
            "construction": w.construction.value,
            "color": w.color.value,
            "azimuth_deg": w.azimuth_deg,
            "area_m2": w.area_m2,
            "overhang_depth_m": w.overhang_depth_m,
            "overhang_height_m": w.overhang_height_m,
            "insulation": _insulation_to_dict(w.insulation),
            "full_shading": w.full_shading,
        } for w in b.walls],
        "windows": [{
            "id": w.id,
            "azimuth_deg": w.azimuth_deg,
            "glazed_area_m2": w.glazed_area_m2,
            "height_m": w.height_m,
            "shading_case": w.shading_case.value,
            "overhang_depth_m": w.overhang_depth_m,
            "overhang_offset_m": w.overhang_offset_m,
            "mobile_shading": w.mobile_shading,
        } for w in b.windows],
        "rooms": [{
            "id": r.id,
            "kind": r.kind.value,
            "floor_level": r.floor_level,
            "under_roof": r.under_roof,
            "facades": [{"facade_id": m.facade_id, "gross_area_m2": m.gross_area_m2}
                        for m in r.facades],
            "external_openings": [{"id": o.id, "net_area_m2": o.net_area_m2,
                                   "facade_id": o.facade_id}
                                  for o in r.external_openings],
            "internal_openings": [{"id": o.id, "net_area_m2": o.net_area_m2}
                                  for o in r.internal_openings],
        } for r in b.rooms],
        "facade_pairs": [{
            "facade_1_id": p.facade_1_id,
            "facade_2_id": p.facade_2_id,
            "facade_1_area_m2": p.facade_1_area_m2,
            "facade_2_area_m2": p.facade_2_area_m2,
        } for p in b.facade_pairs],
        "water_heater": {
            "kind": b.water_heater.kind.value,
            "collector_area_m2": b.water_heater.collector_area_m2,
            "tank_volume_l": b.water_heater.tank_volume_l,
            "annual_productivity_kwh_m2": b.water_heater.annual_productivity_kwh_m2,
            "certified": b.water_heater.certified,
        },
    }


def load_building(path: str | Path) -> bm.BuildingDescription:
    """Load and validate a building description file."""
    try:
        doc = json.loads(Path(path).read_text("utf-8"))
    except json.JSONDecodeError as exc:
        raise SeriesFormatError(f"{path}: not valid JSON: {exc}") from exc
    try:
        description = building_from_dict(doc)
    except (KeyError, TypeError) as exc:
        raise SeriesFormatError(f"{path}: missing or malformed field: {exc}") from exc
    issues = bm.validate(description)
    if issues:
        raise bm.BuildingValidationError(issues)
    return description


def save_building(b: bm.BuildingDescription, path: str | Path) -> None:
    Path(path).write_text(json.dumps(building_to_dict(b), indent=2) + "\n", "utf-8")


# ---------------------------------------------------------------------------
# synthetic weather

@dataclass(frozen=True)
class SyntheticWeatherParams:
    """Hot-season archetype profile: sinusoidal diurnal temperature with a
    mid-afternoon peak, clear-sky solar from sun geometry, steady trade
    wind.  Purely deterministic."""

    days: int = 7
    start: date = date(2026, 1, 5)
    latitude: float = -21.1
    longitude: float = 55.5
    t_min_c: float = 24.0
    t_max_c: float = 31.0
    rh_at_t_min_pct: float = 85.0
    rh_at_t_max_pct: float = 65.0
    wind_speed_m_s: float = 4.0
    wind_dir_deg: float = 90.0
    atmospheric_transmittance: float = 0.70
    peak_hour_local: float = 15.0

    def __post_init__(self) -> None:
        if self.days < 1:
            raise ValueError("day count must be >= 1")


def _clear_sky(sun_altitude_deg: float, transmittance: float) -> tuple[float, float]:
    """(direct normal, diffuse horizontal) W/m2 for a clear sky."""
    if sun_altitude_deg <= 0.0:
        return 0.0, 0.0
    zenith = 90.0 - sun_altitude_deg
    air_mass = 1.0 / (math.cos(math.radians(zenith))
                      + 0.50572 * (96.07995 - zenith) ** -1.6364)
    dni = 1361.0 * transmittance ** air_mass
    dhi = 0.12 * dni * math.sin(math.radians(sun_altitude_deg))
    return dni, dhi


def synthetic_weather(params: SyntheticWeatherParams = SyntheticWeatherParams()
                      ) -> WeatherSeries:
    """Generate an hourly series of ``params.days`` days.

    The diurnal temperature phase uses the whole-hour clock offset nearest
    to the site longitude so the stated extremes are sampled exactly;
    irradiance uses true sun geometry.
    """
    clock_offset = round(params.longitude / 15.0)
    t_mid = (params.t_min_c + params.t_max_c) / 2.0
    t_amp = (params.t_max_c - params.t_min_c) / 2.0
    rh_mid = (params.rh_at_t_min_pct + params.rh_at_t_max_pct) / 2.0
    rh_amp = (params.rh_at_t_min_pct - params.rh_at_t_max_pct) / 2.0

    start = datetime(params.start.year, params.start.month, params.start.day,
                     tzinfo=timezone.utc) - timedelta(hours=clock_offset)
    records = []
    for i in range(params.days * 24):
        ts = start + timedelta(hours=i)
        local_hour = (i % 24 + 0) % 24  # local clock hour by construction
        phase = 2.0 * math.pi * (local_hour - params.peak_hour_local) / 24.0
        temp = round(t_mid + t_amp * math.cos(phase), 6)
        rh = round(rh_mid - rh_amp * math.cos(phase), 6)
        sun = solar_position(params.latitude, params.longitude, ts)
        dni, dhi = _clear_sky(sun.altitude_deg, params.atmospheric_transmittance)
        records.append(WeatherRecord(
            timestamp=ts,
            temp_air_c=temp,
            rh_pct=rh,
            solar_direct_w_m2=round(dni, 6),
            solar_diffuse_w_m2=round(dhi, 6),
            wind_speed_m_s=params.wind_speed_m_s,
            wind_dir_deg=params.wind_dir_deg,
        ))
    return WeatherSeries(records=tuple(records))
