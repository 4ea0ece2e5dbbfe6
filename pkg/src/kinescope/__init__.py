"""Silhouette traces of rotating convex shapes, and their inversion.

A planar convex shape spins about a pole while a film slides past; the
shape's shadow prints a ribbon (the trace) bounded by an upper and a
lower curve.  This package computes that trace for circles, ellipses,
polygons, and sampled convex contours (the direct problem) and recovers
side count, size, parity, and motion ratio of a regular polygon from a
trace (the inverse problem).
"""

from .errors import ConvexityViolation, DegenerateImage, InsufficientData, MismatchedCase
from .geometry import (
    ConvexPolygon,
    SmoothContour,
    TangencyPair,
    contour_point,
    contour_tangent,
    height,
    is_convex,
    polygon_envelope,
    reduce_angle,
    regular_ngon,
    rot_proj,
    rotate,
    support_heights,
    tangency_roots,
)
from .motion import MotionProfile, TimeGrid, integrate
from .direct import ClosedFormCase, KinematicImage, closed_form, oracle_check, trace
from .inverse import (
    CIRCLE,
    InverseReport,
    extremes,
    identify,
    parity_test,
    period_estimate,
    side_count,
)
from .io import format_report, read_trace_csv, write_svg, write_trace_csv

__version__ = "0.1.0"

__all__ = [
    "CIRCLE",
    "ClosedFormCase",
    "ConvexPolygon",
    "ConvexityViolation",
    "DegenerateImage",
    "InsufficientData",
    "InverseReport",
    "KinematicImage",
    "MismatchedCase",
    "MotionProfile",
    "SmoothContour",
    "TangencyPair",
    "TimeGrid",
    "closed_form",
    "contour_point",
    "contour_tangent",
    "extremes",
    "format_report",
    "height",
    "identify",
    "integrate",
    "is_convex",
    "oracle_check",
    "parity_test",
    "period_estimate",
    "polygon_envelope",
    "read_trace_csv",
    "reduce_angle",
    "regular_ngon",
    "rot_proj",
    "rotate",
    "side_count",
    "support_heights",
    "tangency_roots",
    "trace",
    "write_svg",
    "write_trace_csv",
]
