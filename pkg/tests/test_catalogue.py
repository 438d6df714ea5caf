"""Golden transcription tests: every published table cell must come back
from the catalogue exactly."""

import json

import pytest

from ecodom.building import ColorClass, Orientation, WallConstruction
from ecodom.catalogue import (
    CatalogueError,
    catalogue_from_dict,
    default_catalogue,
    load_catalogue,
    tables_checksum,
)

L, M, D = ColorClass.LIGHT, ColorClass.MEDIUM, ColorClass.DARK
E, S, W, N = Orientation.EAST, Orientation.SOUTH, Orientation.WEST, Orientation.NORTH

# Independent transcription of the published tables, cell by cell.

ROOF_SIMPLE = {  # colour -> (polystyrene cm, polyurethane cm)
    L: (5.0, 4.0),
    M: (8.0, 6.0),
    D: (10.0, 8.0),
}
ROOF_VENTILATED = {
    L: (0.0, 0.0),   # "no insulation needed"
    M: (2.0, 0.0),   # published as a single "medium or dark" row
    D: (2.0, 0.0),
}

OVERHANG = {  # (construction row, colour) -> {orientation: min d/h}
    (WallConstruction.POURED_CONCRETE_15, L): {E: 0.4, S: 0.2, W: 0.7, N: 0.5},
    (WallConstruction.POURED_CONCRETE_15, M): {E: 1.0, S: 0.5, W: 1.3, N: 0.7},
    (WallConstruction.HOLLOW_CONCRETE_BLOCK, L): {E: 0.1, S: 0.1, W: 0.3, N: 0.2},
    (WallConstruction.HOLLOW_CONCRETE_BLOCK, M): {E: 0.5, S: 0.3, W: 0.8, N: 0.5},
    (WallConstruction.WOOD, L): {E: 0.0, S: 0.0, W: 0.0, N: 0.0},
    (WallConstruction.WOOD, M): {E: 0.0, S: 0.0, W: 0.2, N: 0.1},
}

WALL_INSULATION = {  # (construction row, colour) -> {orientation: min cm}
    (WallConstruction.CONCRETE_20, L): {E: 1.0, S: 1.0, W: 1.0, N: 1.0},
    (WallConstruction.CONCRETE_20, M): {E: 2.0, S: 1.0, W: 2.0, N: 2.0},
    (WallConstruction.HOLLOW_CONCRETE_BLOCK, L): {E: 1.0, S: 1.0, W: 1.0, N: 1.0},
    (WallConstruction.HOLLOW_CONCRETE_BLOCK, M): {E: 1.0, S: 1.0, W: 2.0, N: 2.0},
    (WallConstruction.WOOD, L): {E: 0.0, S: 0.0, W: 0.0, N: 0.0},
    (WallConstruction.WOOD, M): {E: 0.0, S: 0.0, W: 1.0, N: 1.0},
}

WINDOW_RATIO = {E: 0.8, S: 0.3, W: 1.0, N: 0.6}

COLLECTOR_AREA = {1: 1.5, 2: 1.5, 3: 2.0, 4: 2.5, 5: 3.0, 6: 3.5}


def test_roof_table(catalogue):
    for color, (poly, pur) in ROOF_SIMPLE.items():
        assert catalogue.roof_cm("simple", color, "polystyrene") == poly
        assert catalogue.roof_cm("simple", color, "polyurethane") == pur
    for color, (poly, pur) in ROOF_VENTILATED.items():
        assert catalogue.roof_cm("well_ventilated_attic", color, "polystyrene") == poly
        assert catalogue.roof_cm("well_ventilated_attic", color, "polyurethane") == pur


def test_overhang_table(catalogue):
    for (construction, color), row in OVERHANG.items():
        for orientation, expected in row.items():
            assert catalogue.overhang_ratio(construction, color, orientation) == expected


def test_wall_insulation_table(catalogue):
    for (construction, color), row in WALL_INSULATION.items():
        for orientation, expected in row.items():
            assert catalogue.insulation_cm(construction, color, orientation) == expected


def test_window_table(catalogue):
    for orientation, expected in WINDOW_RATIO.items():
        assert catalogue.window_ratio(orientation) == expected


def test_collector_table(catalogue):
    for dwelling_type, expected in COLLECTOR_AREA.items():
        assert catalogue.collector_area(dwelling_type) == expected
    assert catalogue.collector_area(9) == 3.5  # F6 and more


def test_scalar_values(catalogue):
    assert catalogue.porosity_threshold == 0.25
    assert catalogue.lambda_polystyrene == 0.041
    assert catalogue.lambda_polyurethane == 0.029
    assert catalogue.tank_volume_bounds_l_m2 == (60.0, 120.0)
    assert catalogue.solar_productivity_floor_kwh_m2 == 700.0


def test_concrete_rows_share_base_resistance(catalogue):
    # The two concrete row names differ between tables but both carry
    # R = 0.1; a wall of either construction resolves in both tables.
    for construction in (WallConstruction.POURED_CONCRETE_15,
                         WallConstruction.CONCRETE_20):
        assert catalogue.overhang_ratio(construction, M, W) == 1.3
        assert catalogue.insulation_cm(construction, M, E) == 2.0


def test_checksum_rejects_tampering(catalogue, tmp_path):
    from ecodom.catalogue import _BUNDLED
    from importlib import resources
    doc = json.loads(resources.files("ecodom.data").joinpath(_BUNDLED).read_text())
    doc["tables"]["porosity_threshold"] = 0.10
    bad = tmp_path / "tampered.json"
    bad.write_text(json.dumps(doc))
    with pytest.raises(CatalogueError, match="checksum"):
        load_catalogue(bad)


def test_checksum_accepts_recomputed_tables(tmp_path):
    from ecodom.catalogue import _BUNDLED
    from importlib import resources
    doc = json.loads(resources.files("ecodom.data").joinpath(_BUNDLED).read_text())
    doc["tables"]["porosity_threshold"] = 0.30
    doc["checksum"] = tables_checksum(doc["tables"])
    doc["catalogue_version"] = "test-rev"
    cat = catalogue_from_dict(doc)
    assert cat.porosity_threshold == 0.30
    assert cat.version == "test-rev"


def test_incomplete_catalogue_rejected():
    from ecodom.catalogue import _BUNDLED
    from importlib import resources
    doc = json.loads(resources.files("ecodom.data").joinpath(_BUNDLED).read_text())
    del doc["tables"]["window_shading_ratio"]["west"]
    doc["checksum"] = tables_checksum(doc["tables"])
    with pytest.raises(CatalogueError, match="window"):
        catalogue_from_dict(doc)


def test_env_var_override(tmp_path, monkeypatch, catalogue):
    from ecodom.catalogue import CATALOGUE_ENV_VAR, _BUNDLED
    from importlib import resources
    doc = json.loads(resources.files("ecodom.data").joinpath(_BUNDLED).read_text())
    doc["catalogue_version"] = "env-override"
    path = tmp_path / "cat.json"
    path.write_text(json.dumps(doc))
    monkeypatch.setenv(CATALOGUE_ENV_VAR, str(path))
    assert load_catalogue().version == "env-override"
    assert default_catalogue().version == catalogue.version
