"""Coordinate types and geodesic primitives on a spherical Earth.

Everything here is a pure function of immutable values; distances are
great-circle distances on a sphere of mean radius 6,371 km, and segment
geometry is done in a local equirectangular tangent plane. At the scales
this package works at (a few hundred meters) the spherical model is
accurate to well under a decimeter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

EARTH_RADIUS_M = 6_371_000.0

#: meters per degree of latitude (and of longitude at the equator)
METERS_PER_DEGREE = EARTH_RADIUS_M * math.pi / 180.0

#: tangent-plane projections refuse points farther than this from the origin
PROJECTION_LIMIT_M = 10_000.0

_RAD = math.pi / 180.0


class ProjectionRangeError(ValueError):
    """Point is too far from the origin for tangent-plane projection."""


@dataclass(frozen=True)
class GeoPoint:
    """A WGS84 latitude/longitude pair in degrees."""

    lat: float
    lon: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lat) and math.isfinite(self.lon)):
            raise ValueError(f"non-finite coordinates ({self.lat}, {self.lon})")
        if not -90.0 <= self.lat <= 90.0:
            raise ValueError(f"latitude {self.lat} outside [-90, 90]")
        if not -180.0 <= self.lon <= 180.0:
            raise ValueError(f"longitude {self.lon} outside [-180, 180]")


@dataclass(frozen=True)
class Polyline:
    """An ordered open polyline with at least two vertices.

    Consecutive duplicate vertices are allowed; they contribute
    zero-length segments.
    """

    vertices: tuple[GeoPoint, ...]

    def __init__(self, vertices: Iterable[GeoPoint]) -> None:
        object.__setattr__(self, "vertices", tuple(vertices))
        if len(self.vertices) < 2:
            raise ValueError("polyline needs at least two vertices")

    def __len__(self) -> int:
        return len(self.vertices)


def haversine_distance(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance between two points, in meters."""
    lat1 = a.lat * _RAD
    lat2 = b.lat * _RAD
    sin_dlat = math.sin((lat2 - lat1) / 2.0)
    sin_dlon = math.sin((b.lon - a.lon) * _RAD / 2.0)
    h = sin_dlat * sin_dlat + math.cos(lat1) * math.cos(lat2) * sin_dlon * sin_dlon
    return 2.0 * EARTH_RADIUS_M * math.asin(min(1.0, math.sqrt(h)))


def _project_unchecked(origin: GeoPoint, p: GeoPoint) -> tuple[float, float]:
    x = EARTH_RADIUS_M * (p.lon - origin.lon) * _RAD * math.cos(origin.lat * _RAD)
    y = EARTH_RADIUS_M * (p.lat - origin.lat) * _RAD
    return x, y


def local_project(origin: GeoPoint, p: GeoPoint) -> tuple[float, float]:
    """Project ``p`` onto the equirectangular tangent plane at ``origin``.

    Returns ``(x, y)`` in meters east and north of the origin. Raises
    :class:`ProjectionRangeError` for points farther than 10 km from the
    origin, where the flat-plane approximation stops being trustworthy
    and which signals misconfigured inputs for this pipeline.
    """
    if haversine_distance(origin, p) > PROJECTION_LIMIT_M:
        raise ProjectionRangeError(
            f"point ({p.lat}, {p.lon}) is farther than "
            f"{PROJECTION_LIMIT_M / 1000:.0f} km from origin ({origin.lat}, {origin.lon})"
        )
    return _project_unchecked(origin, p)


def local_unproject(origin: GeoPoint, x: float, y: float) -> GeoPoint:
    """Inverse of :func:`local_project`: planar offset back to coordinates."""
    lat = origin.lat + (y / EARTH_RADIUS_M) / _RAD
    lon = origin.lon + (x / (EARTH_RADIUS_M * math.cos(origin.lat * _RAD))) / _RAD
    return GeoPoint(lat, lon)


def _segment_min_bound_m(p: GeoPoint, a: GeoPoint, b: GeoPoint) -> float:
    """Cheap lower bound on the distance from ``p`` to segment ``a``-``b``.

    Uses the latitude/longitude gaps to the segment's bounding box; never
    overestimates, so it is safe for culling.
    """
    lat_lo, lat_hi = min(a.lat, b.lat), max(a.lat, b.lat)
    lon_lo, lon_hi = min(a.lon, b.lon), max(a.lon, b.lon)
    dlat = max(lat_lo - p.lat, p.lat - lat_hi, 0.0)
    dlon = max(lon_lo - p.lon, p.lon - lon_hi, 0.0)
    max_abs_lat = min(max(abs(p.lat), abs(lat_lo), abs(lat_hi)), 89.999)
    return max(
        dlat * METERS_PER_DEGREE,
        dlon * METERS_PER_DEGREE * math.cos(max_abs_lat * _RAD),
    )


def point_polyline_distance(
    p: GeoPoint, line: Polyline, cull_beyond: float | None = None
) -> float:
    """Minimum distance in meters from ``p`` to any segment of ``line``.

    Each surviving segment is projected into the tangent plane at ``p``,
    the foot of the perpendicular is clamped to the segment, and the
    planar distance is measured. With ``cull_beyond`` set, segments whose
    bounding boxes are provably farther than that many meters are skipped
    (returns ``inf`` if every segment is culled); otherwise all vertices
    must lie within the 10 km projection range of ``p``.
    """
    best = math.inf
    verts = line.vertices
    for a, b in zip(verts[:-1], verts[1:]):
        if cull_beyond is not None:
            if _segment_min_bound_m(p, a, b) > cull_beyond:
                continue
        elif (
            haversine_distance(p, a) > PROJECTION_LIMIT_M
            or haversine_distance(p, b) > PROJECTION_LIMIT_M
        ):
            raise ProjectionRangeError(
                "polyline vertex beyond projection range; pass cull_beyond "
                "to query against long polylines"
            )
        ax, ay = _project_unchecked(p, a)
        bx, by = _project_unchecked(p, b)
        dx, dy = bx - ax, by - ay
        seg_len_sq = dx * dx + dy * dy
        if seg_len_sq == 0.0:
            fx, fy = ax, ay
        else:
            t = -(ax * dx + ay * dy) / seg_len_sq
            t = min(1.0, max(0.0, t))
            fx, fy = ax + t * dx, ay + t * dy
        best = min(best, math.hypot(fx, fy))
    return best


def pairwise_bbox(points: Sequence[GeoPoint]) -> tuple[float, float, float, float]:
    """(lat_min, lat_max, lon_min, lon_max) over a non-empty point set."""
    lats = [p.lat for p in points]
    lons = [p.lon for p in points]
    return min(lats), max(lats), min(lons), max(lons)
