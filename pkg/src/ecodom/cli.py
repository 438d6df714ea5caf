"""Command-line front end.

Linter-style batch tool: edit the building/series files, rerun, read the
report.  Exit codes are a stable contract: 0 compliant / success,
1 compliance failure, 2 usage or input error.

Subcommands:

* ``check``    - prescription compliance of a building description
* ``simulate`` - single-zone thermal simulation, optionally paired
* ``comfort``  - psychrometric comfort statistics of an indoor series
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .building import BuildingValidationError
from .catalogue import CatalogueError, load_catalogue
from .comfort import (
    DEFAULT_ZONE,
    PsychroPoint,
    discomfort_fraction,
    load_zone,
    paired_offset,
    psychro_scatter_rows,
)
from .dataio import (
    SchemaVersionError,
    SeriesFormatError,
    load_building,
    load_indoor,
    load_weather,
)
from .rules import compliance_report
from .thermal import (
    ScenarioError,
    WeatherGapError,
    gain_breakdown,
    result_to_csv,
    simulate,
    zone_from_building,
)

EXIT_OK = 0
EXIT_NONCOMPLIANT = 1
EXIT_INPUT_ERROR = 2


class _InputError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ecodom",
        description="Passive-cooling prescription checks and single-zone "
                    "thermal/comfort analysis for tropical dwellings.")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser(
        "check", help="check a building description against the catalogue")
    check.add_argument("building", help="building description JSON file")
    check.add_argument("--catalogue", default=None,
                       help="catalogue file (default: $ECODOM_CATALOGUE or bundled)")
    check.add_argument("--si-rule", choices=("min", "max"), default="min",
                       help="internal openings must carry the smaller (min) or "
                            "larger (max) facade flow (default: min)")
    check.add_argument("--format", choices=("text", "json"), default="text",
                       help="report format (default: text)")
    check.add_argument("--out", default=None, help="write the report to a file")

    sim = sub.add_parser("simulate", help="run the single-zone thermal model")
    sim.add_argument("building", help="building description JSON file")
    sim.add_argument("--weather", required=True, help="weather CSV file")
    sim.add_argument("--scenario", default=None,
                     help="scenario JSON with zone overrides (see docs)")
    sim.add_argument("--paired", default=None,
                     help="second building file; prints the offset between the two runs")
    sim.add_argument("--out", default=None, help="result CSV path")
    sim.add_argument("--paired-out", default=None,
                     help="result CSV path for the paired building")

    com = sub.add_parser("comfort", help="comfort statistics of an indoor series")
    com.add_argument("indoor", help="indoor series CSV file")
    com.add_argument("--zone", default=None, help="comfort zone override JSON")
    com.add_argument("--scatter", default=None,
                     help="write the psychrometric scatter CSV here")
    return parser


def _load_scenario(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        doc = json.loads(Path(path).read_text("utf-8"))
    except FileNotFoundError as exc:
        raise _InputError(f"scenario file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise _InputError(f"scenario file {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise _InputError(f"scenario file {path}: expected a JSON object")
    return doc


def _cmd_check(args) -> int:
    catalogue = load_catalogue(args.catalogue)
    building = load_building(args.building)
    report = compliance_report(building, catalogue, si_rule=args.si_rule)
    text = report.to_json() if args.format == "json" else report.to_text()
    if args.out:
        Path(args.out).write_text(text, "utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.overall_pass else EXIT_NONCOMPLIANT


def _simulate_one(building_path: str, weather, scenario: dict, out: str | None):
    building = load_building(building_path)
    zone = zone_from_building(building, scenario)
    result = simulate(zone, weather)
    if out:
        Path(out).write_text(result_to_csv(result), "utf-8")
    return building, result


def _print_summary(name: str, result) -> None:
    shares = gain_breakdown(result)
    ach = result.ach
    print(f"zone: {name}")
    print(f"  resultant temperature: mean {result.mean_resultant_c():.2f} C, "
          f"peak {result.peak_resultant_c():.2f} C")
    print(f"  ACH: mean {sum(ach) / len(ach):.1f}, max {max(ach):.1f}")
    print(f"  envelope gain shares: roof {shares['roof']:.2f}, "
          f"walls {shares['wall']:.2f}, windows {shares['window']:.2f}")


def _cmd_simulate(args) -> int:
    weather = load_weather(args.weather)
    scenario = _load_scenario(args.scenario)
    building, result = _simulate_one(args.building, weather, scenario, args.out)
    _print_summary(building.name, result)
    if args.paired:
        other_building, other = _simulate_one(
            args.paired, weather, scenario, args.paired_out)
        _print_summary(other_building.name, other)
        offsets = paired_offset(
            list(zip(result.timestamps, result.t_resultant_c)),
            list(zip(other.timestamps, other.t_resultant_c)))
        print(f"offset ({building.name} - {other_building.name}): "
              f"mean {offsets.mean_offset_c:.2f} C, max {offsets.max_offset_c:.2f} C, "
              f"hours >= 1 C: {offsets.fraction_ge_1c * 100:.0f}%")
    return EXIT_OK


def _cmd_comfort(args) -> int:
    series = load_indoor(args.indoor)
    if len(series) == 0:
        raise _InputError(f"indoor series {args.indoor} is empty")
    if args.zone:
        if not Path(args.zone).exists():
            raise _InputError(f"zone file not found: {args.zone}")
        try:
            zone = load_zone(args.zone)
        except (ValueError, KeyError, json.JSONDecodeError) as exc:
            raise _InputError(f"zone file {args.zone}: {exc}") from exc
    else:
        zone = DEFAULT_ZONE

    points = [
        PsychroPoint(
            temperature_c=rec.comfort_temperature_c,
            rh_pct=rec.rh_pct,
            air_speed_m_s=rec.air_speed_m_s or 0.0,
        )
        for rec in series.records
    ]
    stats = discomfort_fraction(points, zone)
    print(f"samples: {stats.total_hours}")
    print(f"discomfort {stats.discomfort_fraction * 100:.1f}%")
    print(f"exceedance: mean {stats.mean_exceedance_c:.2f} C, "
          f"max {stats.max_exceedance_c:.2f} C")

    zones = series.zones()
    if len(zones) == 2:
        a, b = (series.for_zone(z) for z in zones)
        if len(a) == len(b):
            offsets = paired_offset(
                [(r.timestamp, r.comfort_temperature_c) for r in a],
                [(r.timestamp, r.comfort_temperature_c) for r in b])
            print(f"offset ({zones[0]} - {zones[1]}): "
                  f"mean {offsets.mean_offset_c:.2f} C, "
                  f"max {offsets.max_offset_c:.2f} C, "
                  f"hours >= 1 C: {offsets.fraction_ge_1c * 100:.0f}%")
    if args.scatter:
        Path(args.scatter).write_text(psychro_scatter_rows(points, zone), "utf-8")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "check": _cmd_check,
        "simulate": _cmd_simulate,
        "comfort": _cmd_comfort,
    }
    try:
        return handlers[args.command](args)
    except (FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: file not found: {exc.filename or exc}", file=sys.stderr)
    except (_InputError, SeriesFormatError, SchemaVersionError, CatalogueError,
            BuildingValidationError, WeatherGapError, ScenarioError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
