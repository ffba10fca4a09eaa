from fractions import Fraction as F

import pytest

from visipoly import (
    AntennaMode,
    Location,
    ParseError,
    PolygonWithHoles,
    ValidationError,
    canonicalize,
    emit_wkt,
    is_visible,
    parse_wkt,
    point_in_polygon,
    validate,
)


def test_validate_accepts_good_polygons(square, holed):
    assert validate(square).ok
    assert validate(holed).ok


def test_validate_reports_orientation():
    cw = PolygonWithHoles(((0, 0), (0, 1), (1, 1), (1, 0)))
    report = validate(cw)
    assert not report.ok
    assert any("orientation" in v for v in report.violations)


def test_validate_reports_self_intersection():
    bow = PolygonWithHoles(((0, 0), (2, 0), (0, 2), (2, 2), (1, -1)))
    assert not validate(bow).ok


def test_validate_reports_hole_outside():
    p = PolygonWithHoles.from_rings([(0, 0), (4, 0), (4, 4), (0, 4)], [[(5, 5), (5, 6), (6, 6)]])
    assert any("not inside" in v for v in validate(p).violations)


def test_point_location(square, holed):
    assert point_in_polygon(square, (F(1, 2), F(1, 2))) is Location.INTERIOR
    assert point_in_polygon(square, (1, F(1, 2))) is Location.ON_BOUNDARY
    assert point_in_polygon(holed, (3, 3)) is Location.EXTERIOR
    assert point_in_polygon(holed, (2, 3)) is Location.ON_BOUNDARY


def test_is_visible(square, holed):
    assert is_visible(square, (F(1, 4), F(1, 4)), (F(3, 4), F(3, 4)))
    assert not is_visible(holed, (1, 3), (5, 3))
    assert is_visible(holed, (1, 3), (4, 0))


def test_is_visible_along_wall(lpoly):
    # sliding along an edge stays inside the closed region
    assert is_visible(lpoly, (0, 0), (2, 0))
    assert not is_visible(lpoly, (2, 1), (1, 2))


def test_canonicalize_drops_collinear():
    v = canonicalize([(0, 0), (1, 0), (2, 0), (2, 2), (0, 2)])
    assert v.vertices == ((0, 0), (2, 0), (2, 2), (0, 2))


def test_canonicalize_spikes():
    spike = [(0, 0), (4, 0), (6, 0), (4, 0), (4, 4), (0, 4)]
    assert canonicalize(spike, AntennaMode.EXCLUDE).vertices == ((0, 0), (4, 0), (4, 4), (0, 4))
    inc = canonicalize(spike, AntennaMode.INCLUDE)
    assert inc.vertices == tuple(spike)
    assert inc.has_antennae


def test_canonicalize_rotation_and_orientation():
    a = canonicalize([(2, 2), (0, 2), (0, 0), (2, 0)])
    b = canonicalize([(0, 2), (2, 2), (2, 0), (0, 0)])
    assert a.vertices == b.vertices == ((0, 0), (2, 0), (2, 2), (0, 2))


def test_canonicalize_empty():
    with pytest.raises(ValueError):
        canonicalize([])


def test_parse_square():
    p = parse_wkt("POLYGON((0 0, 1 0, 1 1, 0 1))")
    assert p.outer == ((0, 0), (1, 0), (1, 1), (0, 1)) and p.h == 0


def test_parse_hole_and_rationals():
    p = parse_wkt("POLYGON((0 0, 6 0, 6 6, 0 6), (2 2, 2 4, 4 4, 4 2))")
    assert p.h == 1 and p.n == 8
    t = parse_wkt("POLYGON((0 0, 1/3 2, 0 2))", check=False)
    assert t.outer[1] == (F(1, 3), 2)


def test_parse_closing_vertex_and_comments():
    p = parse_wkt("# made by hand\nPOLYGON((0 0, 1 0, 1 1, 0 1, 0 0))")
    assert p.n == 4


@pytest.mark.parametrize(
    "text", ["POLYGON(0 0, 1 0, 1 1)", "POLYGON((0 0, 1 x, 1 1))", "LINESTRING(0 0, 1 1)", "POLYGON((0 0, 1 1))"]
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_wkt(text)


def test_parse_rejects_invalid():
    with pytest.raises(ValidationError):
        parse_wkt("POLYGON((0 0, 2 0, 0 2, 2 2))")


def test_wkt_round_trip(holed):
    p = PolygonWithHoles.from_rings([(0, 0), (F(7, 3), 0), (1, F(-1, 2) + 3)])
    for poly in (p, holed):
        assert parse_wkt(emit_wkt(poly)) == poly
