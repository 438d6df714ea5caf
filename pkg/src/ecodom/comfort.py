"""Psychrometrics and comfort-zone statistics.

Indoor (temperature, humidity) samples are mapped onto the psychrometric
plane and classified against a comfort polygon.  The default polygon is a
warm-humid-climate zone (Givoni type): 22 to 29 degC between 4 and
17 g/kg of humidity ratio, with the upper temperature bound extended by
2 degC per m/s of air speed up to a 32 degC cap.  Those bounds are a
documented convention, not a measured constant, and can be overridden
from a zone file.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

STANDARD_PRESSURE_PA = 101325.0

_T_MIN_C = -20.0
_T_MAX_C = 60.0


def saturation_vapor_pressure(t_c: float) -> float:
    """Saturation pressure of water vapour over liquid water, in Pa.

    Magnus-form correlation (Alduchov-Eskridge coefficients), good to a
    few tenths of a percent between 0 and 50 degC.
    """
    if not _T_MIN_C <= t_c <= _T_MAX_C:
        raise ValueError(f"temperature {t_c} degC outside supported range "
                         f"[{_T_MIN_C}, {_T_MAX_C}]")
    return 610.94 * math.exp(17.625 * t_c / (t_c + 243.04))


def humidity_ratio(t_c: float, rh_pct: float,
                   pressure_pa: float = STANDARD_PRESSURE_PA) -> float:
    """Humidity ratio in grams of water per kg of dry air."""
    if not 0.0 <= rh_pct <= 100.0:
        raise ValueError("relative humidity must be in [0, 100]")
    partial = rh_pct / 100.0 * saturation_vapor_pressure(t_c)
    if partial >= pressure_pa:
        raise ValueError("vapour pressure exceeds total pressure")
    return 622.0 * partial / (pressure_pa - partial)


@dataclass(frozen=True)
class PsychroPoint:
    """One sample on the psychrometric plane.

    ``temperature_c`` is the resultant temperature when available, else
    the dry bulb; the humidity ratio is derived from it and the relative
    humidity.
    """

    temperature_c: float
    rh_pct: float
    air_speed_m_s: float = 0.0
    humidity_ratio_g_kg: float = field(init=False)

    def __post_init__(self) -> None:
        if self.air_speed_m_s < 0:
            raise ValueError("air speed must be >= 0")
        object.__setattr__(self, "humidity_ratio_g_kg",
                           humidity_ratio(self.temperature_c, self.rh_pct))


def _segments_cross(p1, p2, q1, q2) -> bool:
    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return 0 if abs(v) < 1e-12 else (1 if v > 0 else -1)

    o1, o2 = orient(p1, p2, q1), orient(p1, p2, q2)
    o3, o4 = orient(q1, q2, p1), orient(q1, q2, p2)
    return o1 != o2 and o3 != o4


def _is_simple_polygon(vertices) -> bool:
    n = len(vertices)
    if len(set(vertices)) != n:
        return False
    edges = [(vertices[i], vertices[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue  # adjacent edges share a vertex by construction
            if _segments_cross(*edges[i], *edges[j]):
                return False
    return True


@dataclass(frozen=True)
class ComfortZone:
    """Comfort polygon in (temperature degC, humidity ratio g/kg) space.

    Air movement extends the warm edge: every vertex on the polygon's
    maximum-temperature boundary is shifted right by
    ``extension_c_per_m_s`` degC per m/s of air speed, but never beyond
    ``max_extended_temp_c``.
    """

    vertices: tuple[tuple[float, float], ...]
    extension_c_per_m_s: float = 2.0
    max_extended_temp_c: float = 32.0

    def __post_init__(self) -> None:
        if len(self.vertices) < 3:
            raise ValueError("comfort zone polygon needs at least 3 vertices")
        if self.extension_c_per_m_s < 0:
            raise ValueError("air-speed extension must be >= 0")
        if not _is_simple_polygon(self.vertices):
            raise ValueError("comfort zone polygon must be simple "
                             "(no self-intersection, no repeated vertices)")

    @property
    def upper_temperature_c(self) -> float:
        return max(t for t, _ in self.vertices)

    def extended_vertices(self, air_speed_m_s: float) -> tuple[tuple[float, float], ...]:
        t_max = self.upper_temperature_c
        shift = min(self.extension_c_per_m_s * air_speed_m_s,
                    max(self.max_extended_temp_c - t_max, 0.0))
        if shift <= 0:
            return self.vertices
        return tuple((t + shift if abs(t - t_max) < 1e-9 else t, w)
                     for t, w in self.vertices)

    def upper_bound_at(self, air_speed_m_s: float) -> float:
        return max(t for t, _ in self.extended_vertices(air_speed_m_s))


DEFAULT_ZONE = ComfortZone(
    vertices=((22.0, 4.0), (29.0, 4.0), (29.0, 17.0), (22.0, 17.0)),
    extension_c_per_m_s=2.0,
    max_extended_temp_c=32.0,
)


def load_zone(path: str | Path) -> ComfortZone:
    """Read a zone override file: {"vertices": [[T, w], ...],
    "extension_c_per_m_s": k, "max_extended_temp_c": cap}."""
    doc = json.loads(Path(path).read_text("utf-8"))
    try:
        vertices = tuple((float(t), float(w)) for t, w in doc["vertices"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"zone file {path}: malformed 'vertices'") from exc
    return ComfortZone(
        vertices=vertices,
        extension_c_per_m_s=float(doc.get("extension_c_per_m_s", 2.0)),
        max_extended_temp_c=float(doc.get("max_extended_temp_c", 32.0)),
    )


def _on_segment(px: float, py: float, ax: float, ay: float,
                bx: float, by: float, eps: float = 1e-9) -> bool:
    cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
    if abs(cross) > eps:
        return False
    return (min(ax, bx) - eps <= px <= max(ax, bx) + eps
            and min(ay, by) - eps <= py <= max(ay, by) + eps)


def _point_in_polygon(x: float, y: float,
                      polygon: tuple[tuple[float, float], ...]) -> bool:
    """Even-odd point-in-polygon test, boundary inclusive."""
    inside = False
    n = len(polygon)
    for i in range(n):
        ax, ay = polygon[i]
        bx, by = polygon[(i + 1) % n]
        if _on_segment(x, y, ax, ay, bx, by):
            return True
        if (ay > y) != (by > y):
            x_cross = ax + (y - ay) * (bx - ax) / (by - ay)
            if x < x_cross:
                inside = not inside
    return inside


def classify(point: PsychroPoint, zone: ComfortZone = DEFAULT_ZONE) -> bool:
    """True when the point lies inside (or on the boundary of) the zone,
    after the air-speed extension of the warm edge."""
    polygon = zone.extended_vertices(point.air_speed_m_s)
    return _point_in_polygon(point.temperature_c, point.humidity_ratio_g_kg, polygon)


@dataclass(frozen=True)
class ComfortStats:
    total_hours: int
    discomfort_fraction: float
    mean_exceedance_c: float
    max_exceedance_c: float

    def __post_init__(self) -> None:
        if self.total_hours <= 0:
            raise ValueError("stats need at least one sample")
        if not 0.0 <= self.discomfort_fraction <= 1.0:
            raise ValueError("discomfort fraction must be in [0, 1]")


def discomfort_fraction(points: list[PsychroPoint],
                        zone: ComfortZone = DEFAULT_ZONE) -> ComfortStats:
    """Share of samples outside the zone, with warm-side exceedance stats.

    Exceedance is how far a sample's temperature sits above the
    (air-speed extended) upper bound; samples outside only on the
    humidity axis count in the fraction but contribute zero exceedance.
    """
    if not points:
        raise ValueError("empty series")
    exceedances = []
    for p in points:
        if not classify(p, zone):
            exceedances.append(max(0.0, p.temperature_c - zone.upper_bound_at(p.air_speed_m_s)))
    outside = len(exceedances)
    return ComfortStats(
        total_hours=len(points),
        discomfort_fraction=outside / len(points),
        mean_exceedance_c=sum(exceedances) / outside if outside else 0.0,
        max_exceedance_c=max(exceedances) if outside else 0.0,
    )


@dataclass(frozen=True)
class OffsetStats:
    """Per-timestamp difference statistics between two paired zones (a - b)."""

    samples: int
    mean_offset_c: float
    max_offset_c: float
    fraction_ge_1c: float


def paired_offset(series_a: list[tuple], series_b: list[tuple]) -> OffsetStats:
    """Offset statistics between two (timestamp, temperature) series that
    share their timestamps exactly."""
    if len(series_a) != len(series_b):
        raise ValueError("paired series must have the same length")
    if not series_a:
        raise ValueError("empty series")
    diffs = []
    for (ta, va), (tb, vb) in zip(series_a, series_b):
        if ta != tb:
            raise ValueError(f"timestamp mismatch: {ta} vs {tb}")
        diffs.append(va - vb)
    return OffsetStats(
        samples=len(diffs),
        mean_offset_c=sum(diffs) / len(diffs),
        max_offset_c=max(diffs),
        fraction_ge_1c=sum(1 for d in diffs if d >= 1.0) / len(diffs),
    )


def psychro_scatter_rows(points: list[PsychroPoint],
                         zone: ComfortZone = DEFAULT_ZONE) -> str:
    """CSV text with one row per point plus the zone polygon vertices,
    ready for any plotting tool.  Output is deterministic for fixed input."""
    lines = ["kind,temperature_c,humidity_ratio_g_kg,inside"]
    for p in points:
        inside = 1 if classify(p, zone) else 0
        lines.append(f"point,{p.temperature_c!r},{p.humidity_ratio_g_kg!r},{inside}")
    for t, w in zone.vertices:
        lines.append(f"zone_vertex,{t!r},{w!r},")
    return "\n".join(lines) + "\n"


def psychro_scatter_export(points: list[PsychroPoint], path: str | Path,
                           zone: ComfortZone = DEFAULT_ZONE) -> None:
    Path(path).write_text(psychro_scatter_rows(points, zone), "utf-8")
