"""The prescription catalogue.

The quantitative content of the standard lives in a versioned JSON data
file (tables for roof insulation, wall overhangs, wall insulation, window
shading ratios, solar water heaters, plus the porosity threshold), so a
regulation revision means shipping a new data file, not new code.  The
file embeds a checksum over its tables; the loader refuses a file whose
tables do not match it.

Known catalogue quirks, kept as published:

* The overhang table rows name "poured concrete 15 cm" while the wall
  insulation table names "concrete 20 cm"; both carry R = 0.1 m2.K/W.
  Lookups map a wall construction to the row with the same base
  resistance.
* The well-ventilated-attic roof block has a single "medium or dark" row;
  both colour classes map to it.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .building import ColorClass, Orientation, WallConstruction

#: Environment variable naming a catalogue file to use instead of the bundled one.
CATALOGUE_ENV_VAR = "ECODOM_CATALOGUE"

_BUNDLED = "catalogue.json"

# Wall insulation table rows, keyed by base resistance (see module docstring).
_INSULATION_ROW = {
    WallConstruction.POURED_CONCRETE_15: "concrete_20",
    WallConstruction.CONCRETE_20: "concrete_20",
    WallConstruction.HOLLOW_CONCRETE_BLOCK: "hollow_concrete_block",
    WallConstruction.WOOD: "wood",
}
_OVERHANG_ROW = {
    WallConstruction.POURED_CONCRETE_15: "poured_concrete_15",
    WallConstruction.CONCRETE_20: "poured_concrete_15",
    WallConstruction.HOLLOW_CONCRETE_BLOCK: "hollow_concrete_block",
    WallConstruction.WOOD: "wood",
}


class CatalogueError(ValueError):
    """Malformed, incomplete or corrupted catalogue file."""


@dataclass(frozen=True)
class RuleCatalogue:
    """In-memory view of one catalogue file."""

    version: str
    porosity_threshold: float
    reference_conductivities: dict[str, float]
    roof_insulation_cm: dict[str, dict[str, dict[str, float]]]
    wall_overhang_ratio: dict[str, dict[str, dict[str, float]]]
    wall_insulation_cm: dict[str, dict[str, dict[str, float]]]
    window_shading_ratio: dict[str, float]
    solar_collector_area_m2: dict[int, float]
    tank_volume_bounds_l_m2: tuple[float, float]
    solar_productivity_floor_kwh_m2: float

    @property
    def lambda_polystyrene(self) -> float:
        return self.reference_conductivities["polystyrene"]

    @property
    def lambda_polyurethane(self) -> float:
        return self.reference_conductivities["polyurethane"]

    def roof_cm(self, regime: str, color: ColorClass, reference: str) -> float:
        return self.roof_insulation_cm[regime][color.value][reference]

    def overhang_ratio(self, construction: WallConstruction,
                       color: ColorClass, orientation: Orientation) -> float:
        row = _OVERHANG_ROW[construction]
        return self.wall_overhang_ratio[row][color.value][orientation.value]

    def insulation_cm(self, construction: WallConstruction,
                      color: ColorClass, orientation: Orientation) -> float:
        row = _INSULATION_ROW[construction]
        return self.wall_insulation_cm[row][color.value][orientation.value]

    def window_ratio(self, orientation: Orientation) -> float:
        return self.window_shading_ratio[orientation.value]

    def collector_area(self, dwelling_type: int) -> float:
        if dwelling_type < 1:
            raise ValueError("dwelling type must be >= 1")
        capped = min(dwelling_type, max(self.solar_collector_area_m2))
        return self.solar_collector_area_m2[capped]


def tables_checksum(tables: dict) -> str:
    """Checksum of the canonical JSON serialization of the tables block."""
    canonical = json.dumps(tables, sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _require(tables: dict, key: str):
    if key not in tables:
        raise CatalogueError(f"catalogue tables missing {key!r}")
    return tables[key]


def catalogue_from_dict(doc: dict) -> RuleCatalogue:
    for key in ("catalogue_version", "checksum", "tables"):
        if key not in doc:
            raise CatalogueError(f"catalogue file missing {key!r}")
    tables = doc["tables"]
    expected = tables_checksum(tables)
    if doc["checksum"] != expected:
        raise CatalogueError(
            f"catalogue checksum mismatch: file says {doc['checksum']}, "
            f"tables hash to {expected}")

    collector = {int(k): float(v)
                 for k, v in _require(tables, "solar_collector_area_m2").items()}
    bounds = _require(tables, "tank_volume_per_collector_l_m2")
    cat = RuleCatalogue(
        version=str(doc["catalogue_version"]),
        porosity_threshold=float(_require(tables, "porosity_threshold")),
        reference_conductivities={
            k: float(v)
            for k, v in _require(tables, "reference_conductivities_w_mk").items()},
        roof_insulation_cm=_require(tables, "roof_insulation_cm"),
        wall_overhang_ratio=_require(tables, "wall_overhang_ratio"),
        wall_insulation_cm=_require(tables, "wall_insulation_cm"),
        window_shading_ratio=_require(tables, "window_shading_ratio"),
        solar_collector_area_m2=collector,
        tank_volume_bounds_l_m2=(float(bounds["min"]), float(bounds["max"])),
        solar_productivity_floor_kwh_m2=float(
            _require(tables, "solar_productivity_floor_kwh_m2")),
    )
    _check_complete(cat)
    return cat


def _check_complete(cat: RuleCatalogue) -> None:
    for regime in ("simple", "well_ventilated_attic"):
        for color in ColorClass:
            for ref in ("polystyrene", "polyurethane"):
                try:
                    cat.roof_cm(regime, color, ref)
                except KeyError as exc:
                    raise CatalogueError(
                        f"roof table incomplete: {regime}/{color.value}/{ref}") from exc
    for construction in WallConstruction:
        for color in (ColorClass.LIGHT, ColorClass.MEDIUM):
            for orientation in Orientation:
                try:
                    cat.overhang_ratio(construction, color, orientation)
                    cat.insulation_cm(construction, color, orientation)
                except KeyError as exc:
                    raise CatalogueError(
                        f"wall tables incomplete: {construction.value}/"
                        f"{color.value}/{orientation.value}") from exc
    for orientation in Orientation:
        if orientation.value not in cat.window_shading_ratio:
            raise CatalogueError(f"window table incomplete: {orientation.value}")
    if not cat.solar_collector_area_m2:
        raise CatalogueError("solar collector table is empty")


def load_catalogue(path: str | os.PathLike | None = None) -> RuleCatalogue:
    """Load a catalogue file; with no path, honour $ECODOM_CATALOGUE then
    fall back to the bundled tables."""
    if path is None:
        env = os.environ.get(CATALOGUE_ENV_VAR)
        if env:
            path = env
    if path is None:
        text = resources.files("ecodom.data").joinpath(_BUNDLED).read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogueError(f"catalogue is not valid JSON: {exc}") from exc
    return catalogue_from_dict(doc)


def default_catalogue() -> RuleCatalogue:
    """The bundled catalogue, ignoring any environment override."""
    text = resources.files("ecodom.data").joinpath(_BUNDLED).read_text("utf-8")
    return catalogue_from_dict(json.loads(text))
