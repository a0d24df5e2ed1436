"""Tests for point-to-polyline distance, feature sets and corridor consistency."""

from __future__ import annotations

import random

import pytest
from geopy.distance import geodesic

from corpus_factory import tweet
from hwyimpact.analysis.geo import (
    corridor_consistency,
    feature_collection,
    geo_features,
    haversine_m,
    point_to_polyline_distance,
    snap_to_segment,
)
from hwyimpact.errors import DegeneratePolyline
from hwyimpact.lexicon.loader import parse_lexicon
from hwyimpact.models import HARVEY_PHASES, GeoFeatureSet, GeoPoint, HOUSTON_BBOX

EAST_WEST = [(29.75, -95.5), (29.75, -95.3)]


class TestHaversine:
    def test_zero(self):
        assert haversine_m((29.76, -95.37), (29.76, -95.37)) == 0.0

    def test_one_degree_of_latitude(self):
        assert haversine_m((29.0, -95.0), (30.0, -95.0)) == pytest.approx(111_195, abs=1)

    def test_symmetric(self):
        a, b = (29.7, -95.4), (29.9, -95.1)
        assert haversine_m(a, b) == haversine_m(b, a)


class TestPointToPolyline:
    def test_vertex_is_zero(self):
        assert point_to_polyline_distance((29.75, -95.5), EAST_WEST) == 0.0

    def test_north_of_east_west_segment(self):
        d = point_to_polyline_distance((29.76, -95.4), EAST_WEST)
        assert d == pytest.approx(1113, abs=5)

    def test_agrees_with_geodesic(self):
        point = (29.76, -95.4)
        expected = geodesic(point, (29.75, -95.4)).meters
        assert point_to_polyline_distance(point, EAST_WEST) == pytest.approx(expected, rel=0.005)

    def test_clamped_to_endpoint(self):
        segment = [(29.75, -95.5), (29.75, -95.4)]
        point = (29.75, -95.3)
        assert snap_to_segment(point, *segment) == pytest.approx((29.75, -95.4))
        d = point_to_polyline_distance(point, segment)
        assert d == pytest.approx(haversine_m(point, (29.75, -95.4)))
        assert d == pytest.approx(geodesic(point, (29.75, -95.4)).meters, rel=0.005)

    def test_nearest_segment_wins(self):
        polyline = [(29.70, -95.50), (29.70, -95.40), (29.80, -95.40)]
        d = point_to_polyline_distance((29.75, -95.3995), polyline)
        assert d < 100

    def test_points_on_i10_polyline(self, harvey):
        polyline = harvey.entry("I-10").polyline
        rng = random.Random(10)
        for _ in range(200):
            i = rng.randrange(len(polyline) - 1)
            (lat1, lon1), (lat2, lon2) = polyline[i], polyline[i + 1]
            t = rng.random()
            point = (lat1 + t * (lat2 - lat1), lon1 + t * (lon2 - lon1))
            assert point_to_polyline_distance(point, polyline) < 30

    @pytest.mark.parametrize("polyline", [[], [(29.7, -95.3)]])
    def test_degenerate(self, polyline):
        with pytest.raises(DegeneratePolyline):
            point_to_polyline_distance((29.7, -95.3), polyline)


class TestGeoFeatures:
    def test_single_point(self):
        rec = tweet("a", "2017-08-27", "", lat=29.78, lon=-95.60)
        sets = geo_features({"I-10": [rec]}, HARVEY_PHASES)
        peak = next(s for s in sets if s.phase_name == "peak")
        assert peak.points == [GeoPoint(lat=29.78, lon=-95.60, record_id="a")]

    def test_empty_cells_emitted(self):
        sets = geo_features({"I-69": [], "I-10": [tweet("a", "2017-08-24", "")]}, HARVEY_PHASES)
        assert [(s.highway_id, s.phase_name) for s in sets] == [
            (h, p) for h in ("I-69", "I-10") for p in HARVEY_PHASES.names
        ]
        assert all(not s.points for s in sets if s.highway_id == "I-69")

    def test_multi_highway_point(self):
        rec = tweet("both", "2017-09-01", "")
        sets = geo_features({"I-10": [rec], "I-45": [rec]}, HARVEY_PHASES)
        holders = {s.highway_id for s in sets if any(p.record_id == "both" for p in s.points)}
        assert holders == {"I-10", "I-45"}

    def test_points_inside_bbox(self):
        recs = [tweet(str(i), "2017-08-28", "", lat=29.5 + i / 100, lon=-95.5) for i in range(50)]
        for fs in geo_features({"x": recs}, HARVEY_PHASES):
            assert all(HOUSTON_BBOX.contains(p.lat, p.lon) for p in fs.points)

    def test_feature_collection(self):
        fs = GeoFeatureSet(
            highway_id="I-10",
            phase_name="peak",
            points=[GeoPoint(lat=29.78, lon=-95.6, record_id="a")],
        )
        doc = feature_collection(fs)
        assert doc["type"] == "FeatureCollection"
        assert doc["properties"] == {"highway": "I-10", "phase": "peak"}
        (feature,) = doc["features"]
        assert feature["geometry"] == {"type": "Point", "coordinates": [-95.6, 29.78]}
        assert feature["properties"] == {"record_id": "a"}


class TestCorridorConsistency:
    def test_rows(self, harvey):
        on = GeoPoint(lat=29.78, lon=-95.6, record_id="on")
        off = GeoPoint(lat=29.95, lon=-95.6, record_id="off")
        rows = corridor_consistency(
            [
                GeoFeatureSet(highway_id="I-10", phase_name="peak", points=[on, off]),
                GeoFeatureSet(highway_id="I-10", phase_name="post-peak"),
            ],
            harvey,
        )
        peak, post = rows
        assert (peak.points, peak.within, peak.share) == (2, 1, 0.5)
        assert peak.median_distance_m == pytest.approx((0 + haversine_m((29.95, -95.6),
                                                                        (29.78, -95.6))) / 2)
        assert (post.points, post.share, post.median_distance_m) == (0, None, None)

    def test_threshold(self, harvey):
        near = GeoPoint(lat=29.79, lon=-95.6, record_id="n")
        fs = [GeoFeatureSet(highway_id="I-10", phase_name="peak", points=[near])]
        assert corridor_consistency(fs, harvey, threshold_m=500)[0].within == 0
        assert corridor_consistency(fs, harvey, threshold_m=2000)[0].within == 1

    def test_highway_without_polyline_skipped(self):
        lex = parse_lexicon(
            {"highway_terms": ["hwy"], "highways": [{"id": "A", "direct": ["a1"],
                                                      "indirect": ["a"]}]}
        )
        fs = [GeoFeatureSet(highway_id="A", phase_name="peak")]
        assert corridor_consistency(fs, lex) == []
