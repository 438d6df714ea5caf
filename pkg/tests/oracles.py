"""Independent reference implementations used only as test oracles.

These deliberately share no code with the package: the sun position
oracle is the PSA algorithm (Blanco-Muriel et al., 2001), the saturation
pressure oracle is the Hyland-Wexler correlation, and the shading oracle
casts rays against the overhang rectangle in 3-D.
"""

from __future__ import annotations

import math
from datetime import datetime, timezone

import numpy as np

_EARTH_MEAN_RADIUS_KM = 6371.01
_ASTRONOMICAL_UNIT_KM = 149597890.0


def psa_solar_position(latitude: float, longitude: float,
                       when: datetime) -> tuple[float, float]:
    """(altitude_deg, azimuth_deg from North clockwise) via the PSA algorithm."""
    if when.tzinfo is not None:
        when = when.astimezone(timezone.utc)
    hours = when.hour + when.minute / 60.0 + when.second / 3600.0

    # Julian day with C-style truncating division, as published.
    aux1 = math.trunc((when.month - 14) / 12)
    aux2 = (math.trunc(1461 * (when.year + 4800 + aux1) / 4)
            + math.trunc(367 * (when.month - 2 - 12 * aux1) / 12)
            - math.trunc(3 * math.trunc((when.year + 4900 + aux1) / 100) / 4)
            + when.day - 32075)
    julian = aux2 - 0.5 + hours / 24.0
    n = julian - 2451545.0

    omega = 2.1429 - 0.0010394594 * n
    mean_longitude = 4.8950630 + 0.017202791698 * n
    mean_anomaly = 6.2400600 + 0.0172019699 * n
    ecl_longitude = (mean_longitude
                     + 0.03341607 * math.sin(mean_anomaly)
                     + 0.00034894 * math.sin(2 * mean_anomaly)
                     - 0.0001134 - 0.0000203 * math.sin(omega))
    ecl_obliquity = 0.4090928 - 6.2140e-9 * n + 0.0000396 * math.cos(omega)

    sin_long = math.sin(ecl_longitude)
    right_ascension = math.atan2(math.cos(ecl_obliquity) * sin_long,
                                 math.cos(ecl_longitude))
    if right_ascension < 0:
        right_ascension += 2 * math.pi
    declination = math.asin(math.sin(ecl_obliquity) * sin_long)

    gmst = 6.6974243242 + 0.0657098283 * n + hours
    lmst = math.radians(gmst * 15 + longitude)
    hour_angle = lmst - right_ascension
    lat = math.radians(latitude)

    zenith = math.acos(math.cos(lat) * math.cos(hour_angle) * math.cos(declination)
                       + math.sin(declination) * math.sin(lat))
    azimuth = math.atan2(
        -math.sin(hour_angle),
        math.tan(declination) * math.cos(lat) - math.sin(lat) * math.cos(hour_angle))
    if azimuth < 0:
        azimuth += 2 * math.pi
    zenith += (_EARTH_MEAN_RADIUS_KM / _ASTRONOMICAL_UNIT_KM) * math.sin(zenith)
    return 90.0 - math.degrees(zenith), math.degrees(azimuth)


def hyland_wexler_pws(t_c: float) -> float:
    """Saturation pressure over liquid water in Pa (Hyland-Wexler, 1983)."""
    t = t_c + 273.15
    ln_p = (-5.8002206e3 / t
            + 1.3914993
            - 4.8640239e-2 * t
            + 4.1764768e-5 * t ** 2
            - 1.4452093e-8 * t ** 3
            + 6.5459673 * math.log(t))
    return math.exp(ln_p)


def ray_sampled_shading(depth: float, height: float, offset: float,
                        sun_altitude_deg: float, sun_azimuth_deg: float,
                        facade_azimuth_deg: float,
                        samples: int = 20000, seed: int = 0) -> float:
    """Shaded fraction of a vertical strip by ray casting against the
    overhang rectangle (width made effectively infinite).

    Convention matches the analytic path: a surface receiving no beam at
    all counts as fully shaded.
    """
    alt = math.radians(sun_altitude_deg)
    az = math.radians(sun_azimuth_deg)
    gamma = math.radians(facade_azimuth_deg)
    # Sun direction (towards the sun) in East-North-Up coordinates.
    s_enu = np.array([math.sin(az) * math.cos(alt),
                      math.cos(az) * math.cos(alt),
                      math.sin(alt)])
    normal = np.array([math.sin(gamma), math.cos(gamma), 0.0])
    along = np.array([math.cos(gamma), -math.sin(gamma), 0.0])
    s_local = np.array([s_enu @ along, s_enu @ normal, s_enu[2]])
    if sun_altitude_deg <= 0 or s_local[1] <= 0:
        return 1.0

    rng = np.random.default_rng(seed)
    x = rng.uniform(-0.5, 0.5, samples)          # along-facade position
    z = rng.uniform(0.0, height, samples)        # height on the surface
    overhang_z = height + offset
    if s_local[2] <= 0:
        return 0.0  # sun above horizon but rays never rise to the overhang
    t = (overhang_z - z) / s_local[2]
    y_hit = t * s_local[1]
    x_hit = x + t * s_local[0]
    hits = (t > 0) & (y_hit <= depth) & (np.abs(x_hit) <= 5e5)
    return float(np.count_nonzero(hits)) / samples
