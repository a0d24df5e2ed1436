"""Geographic distributions and on-corridor distances."""

from __future__ import annotations

import math
import statistics
from collections.abc import Mapping, Sequence
from typing import Any

from hwyimpact.analysis.phases import split_by_phase
from hwyimpact.errors import DegeneratePolyline
from hwyimpact.models import (
    CorridorRow,
    GeoFeatureSet,
    GeoPoint,
    LatLon,
    Lexicon,
    PhaseConfig,
    TweetRecord,
)

# Earth's mean radius in meters
EARTH_RADIUS_M = 6_371_000.0
DEFAULT_CORRIDOR_THRESHOLD_M = 1000.0


def haversine_m(a: LatLon, b: LatLon) -> float:
    """Great-circle distance in meters between two (lat, lon) points."""
    lat1, lon1 = map(math.radians, a)
    lat2, lon2 = map(math.radians, b)
    h = (
        math.sin((lat2 - lat1) / 2) ** 2
        + math.cos(lat1) * math.cos(lat2) * math.sin((lon2 - lon1) / 2) ** 2
    )
    return 2 * EARTH_RADIUS_M * math.asin(math.sqrt(min(1.0, h)))


def snap_to_segment(point: LatLon, a: LatLon, b: LatLon) -> LatLon:
    """Closest point to *point* on segment a-b, clamped to the endpoints.

    Projection happens in an equirectangular plane centered on the segment,
    which keeps east-west and north-south meters comparable.
    """
    lat0 = math.radians((a[0] + b[0]) / 2)
    kx = math.cos(lat0)
    ax, ay = a[1] * kx, a[0]
    bx, by = b[1] * kx, b[0]
    px, py = point[1] * kx, point[0]
    dx, dy = bx - ax, by - ay
    len_sq = dx * dx + dy * dy
    if len_sq == 0:
        return a
    t = max(0.0, min(1.0, ((px - ax) * dx + (py - ay) * dy) / len_sq))
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def point_to_polyline_distance(point: LatLon, polyline: Sequence[LatLon]) -> float:
    """Minimum distance in meters from *point* to any segment of *polyline*."""
    if len(polyline) < 2:
        raise DegeneratePolyline(len(polyline))
    return min(
        haversine_m(point, snap_to_segment(point, a, b))
        for a, b in zip(polyline, polyline[1:])
    )


def geo_features(
    mapped: Mapping[str, Sequence[TweetRecord]], phases: PhaseConfig
) -> list[GeoFeatureSet]:
    """One feature set per (highway, phase), empty cells included."""
    sets: list[GeoFeatureSet] = []
    for highway_id, records in mapped.items():
        by_phase = split_by_phase(records, phases)
        for name in phases.names:
            sets.append(
                GeoFeatureSet(
                    highway_id=highway_id,
                    phase_name=name,
                    points=[GeoPoint(lat=r.lat, lon=r.lon, record_id=r.id) for r in by_phase[name]],
                )
            )
    return sets


def feature_collection(features: GeoFeatureSet) -> dict[str, Any]:
    """GeoJSON FeatureCollection; coordinates are [lon, lat]."""
    return {
        "type": "FeatureCollection",
        "properties": {"highway": features.highway_id, "phase": features.phase_name},
        "features": [
            {
                "type": "Feature",
                "geometry": {"type": "Point", "coordinates": [p.lon, p.lat]},
                "properties": {"record_id": p.record_id},
            }
            for p in features.points
        ],
    }


def corridor_consistency(
    features: Sequence[GeoFeatureSet],
    lexicon: Lexicon,
    threshold_m: float = DEFAULT_CORRIDOR_THRESHOLD_M,
) -> list[CorridorRow]:
    """Share of each cell's points lying within *threshold_m* of the highway polyline.

    Highways without a polyline are skipped.
    """
    rows: list[CorridorRow] = []
    for fs in features:
        polyline = lexicon.entry(fs.highway_id).polyline
        if polyline is None:
            continue
        distances = [point_to_polyline_distance((p.lat, p.lon), polyline) for p in fs.points]
        within = sum(1 for d in distances if d <= threshold_m)
        rows.append(
            CorridorRow(
                highway_id=fs.highway_id,
                phase_name=fs.phase_name,
                points=len(distances),
                within=within,
                share=within / len(distances) if distances else None,
                median_distance_m=statistics.median(distances) if distances else None,
            )
        )
    return rows
