"""Exact visibility polygons in simple polygons and polygons with holes."""

from visipoly.exact import (
    Orientation,
    Ordering,
    angular_less,
    compare_along_ray,
    orientation,
    to_exact,
)
from visipoly.expansion import TriangularExpansion, locate, visibility_expansion
from visipoly.joe_simpson import HolesNotSupported, JoeSimpson, visibility_simple
from visipoly.oracle import first_hit, visibility_bruteforce
from visipoly.polygon import (
    AntennaMode,
    Location,
    ParseError,
    PolygonError,
    PolygonWithHoles,
    QueryOutsidePolygon,
    ValidationError,
    VisibilityPolygon,
    canonicalize,
    emit_wkt,
    is_visible,
    parse_wkt,
    point_in_polygon,
    validate,
)
from visipoly.render import render_svg
from visipoly.sweep import visibility_sweep
from visipoly.triangulation import PreparedDomain, prepare

__all__ = [
    "AntennaMode",
    "HolesNotSupported",
    "JoeSimpson",
    "PreparedDomain",
    "TriangularExpansion",
    "Location",
    "Orientation",
    "Ordering",
    "ParseError",
    "PolygonError",
    "PolygonWithHoles",
    "QueryOutsidePolygon",
    "ValidationError",
    "VisibilityPolygon",
    "angular_less",
    "canonicalize",
    "compare_along_ray",
    "emit_wkt",
    "first_hit",
    "is_visible",
    "locate",
    "orientation",
    "parse_wkt",
    "point_in_polygon",
    "prepare",
    "render_svg",
    "to_exact",
    "validate",
    "visibility_bruteforce",
    "visibility_expansion",
    "visibility_simple",
    "visibility_sweep",
]
