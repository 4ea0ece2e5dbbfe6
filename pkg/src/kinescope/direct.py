"""Trace synthesis and the worked closed-form solutions.

``trace`` drives the generic machinery: integrate the motion, then query
the support heights at each sampled angle.  ``closed_form`` evaluates the
five cases that admit explicit formulas (circle about its centre, circle
about a rim point, centred ellipse, centred square, centred equilateral
triangle); ``oracle_check`` pits the generic path against those formulas
and reports the worst disagreement, which is the main validation tool of
the whole package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Mapping, Optional

import numpy as np

from .errors import MismatchedCase
from .geometry import (
    TWO_PI,
    ConvexPolygon,
    Shape,
    SmoothContour,
    polygon_envelope,
    reduce_angle,
    regular_ngon,
    support_heights,
)
from .motion import MotionProfile, TimeGrid, integrate

VARIANTS = ("circle_center", "circle_rim", "ellipse_center", "square_center", "triangle_center")


@dataclass(frozen=True, eq=False)
class KinematicImage:
    """Sampled trace: film positions z with upper/lower heights at each.

    z must be strictly increasing and y_s >= y_i at every sample; the
    arrays are copied and frozen.  ``meta`` optionally records how the
    image was produced (shape description, profile, grid) and is carried
    along untouched.
    """

    z: np.ndarray
    y_s: np.ndarray
    y_i: np.ndarray
    meta: Optional[Mapping[str, Any]] = None

    def __post_init__(self):
        z = np.asarray(self.z, dtype=float)
        ys = np.asarray(self.y_s, dtype=float)
        yi = np.asarray(self.y_i, dtype=float)
        if not (z.ndim == 1 and z.shape == ys.shape == yi.shape):
            raise ValueError("z, y_s, y_i must be 1-d arrays of equal length")
        if z.size < 2:
            raise ValueError("an image needs at least 2 samples")
        for name, arr in (("z", z), ("y_s", ys), ("y_i", yi)):
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} must be finite")
        if not np.all(np.diff(z) > 0):
            raise ValueError("z must be strictly increasing")
        if not np.all(ys >= yi):
            raise ValueError("y_s must not fall below y_i")
        for name, arr in (("z", z), ("y_s", ys), ("y_i", yi)):
            arr = arr.copy()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def __len__(self) -> int:
        return self.z.size

    @property
    def width(self) -> np.ndarray:
        """Silhouette width H(z) = y_s - y_i; independent of the pole."""
        return self.y_s - self.y_i


@dataclass(frozen=True)
class ClosedFormCase:
    """One of the five shapes whose trace has an explicit formula.

    ``a`` is the radius for the circle variants, the larger semi-axis for
    the ellipse, and the side length for the square and the triangle;
    ``b`` is the smaller semi-axis and only the ellipse uses it.
    """

    variant: str
    a: float
    b: float = 0.0

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if not self.a > 0:
            raise ValueError("dimension a must be positive")
        if self.variant == "ellipse_center":
            if not self.b > 0:
                raise ValueError("ellipse needs b > 0")
            if self.a < self.b:
                raise ValueError("ellipse closed form expects a >= b")

    @classmethod
    def circle_center(cls, a: float) -> "ClosedFormCase":
        return cls("circle_center", float(a))

    @classmethod
    def circle_rim(cls, a: float) -> "ClosedFormCase":
        return cls("circle_rim", float(a))

    @classmethod
    def ellipse_center(cls, a: float, b: float) -> "ClosedFormCase":
        return cls("ellipse_center", float(a), float(b))

    @classmethod
    def square_center(cls, side: float) -> "ClosedFormCase":
        return cls("square_center", float(side))

    @classmethod
    def triangle_center(cls, side: float) -> "ClosedFormCase":
        return cls("triangle_center", float(side))


def trace(shape: Shape, m: MotionProfile, grid: TimeGrid) -> KinematicImage:
    """Kinematic image of ``shape`` under motion ``m`` on the given grid.

    Each sample is computed independently from the instantaneous angle;
    nothing is propagated between samples, so there is no drift and
    polygon corner switches cost nothing.
    """
    t = grid.times()
    theta, z = integrate(m, t)
    if isinstance(shape, ConvexPolygon):
        ys, yi, _, _ = polygon_envelope(shape, theta)
    else:
        ys = np.empty_like(theta)
        yi = np.empty_like(theta)
        for k, th in enumerate(theta):
            ys[k], yi[k] = support_heights(shape, float(th))
    meta = {"shape": _describe(shape), "profile": m, "grid": grid}
    return KinematicImage(z=z, y_s=ys, y_i=yi, meta=meta)


def _describe(shape: Shape) -> str:
    if isinstance(shape, ConvexPolygon):
        return f"polygon[{len(shape)}]"
    return shape.kind


def closed_form(case: ClosedFormCase, theta):
    """(Y_s, Y_i) for a worked case; theta is a scalar or an array.

    Angles are reduced to [0, 2*pi) first so the piecewise branches can
    compare against their interval bounds directly.
    """
    th = reduce_angle(np.asarray(theta, dtype=float))
    th = np.asarray(th, dtype=float)
    scalar = th.ndim == 0
    if scalar:
        th = th[None]

    a = case.a
    if case.variant == "circle_center":
        ys = np.full_like(th, a)
        yi = -ys
    elif case.variant == "circle_rim":
        ys = a * (np.sin(th) + 1.0)
        yi = a * (np.sin(th) - 1.0)
    elif case.variant == "ellipse_center":
        ys = np.sqrt(a**2 * np.sin(th) ** 2 + case.b**2 * np.cos(th) ** 2)
        yi = -ys
    elif case.variant == "square_center":
        ys = _square_upper(a, th)
        yi = -ys
    else:
        ys, yi = _triangle_heights(a, th)

    if scalar:
        return float(ys[0]), float(yi[0])
    return ys, yi


def _square_upper(a: float, th: np.ndarray) -> np.ndarray:
    # One controlling corner per quarter turn; the four projections are
    # (a/2)(+-sin +- cos) with the sign pattern cycling A, D, C, B.
    q = np.clip((th // (math.pi / 2)).astype(int), 0, 3)
    sx = np.array([1.0, 1.0, -1.0, -1.0])[q]
    sy = np.array([1.0, -1.0, -1.0, 1.0])[q]
    return 0.5 * a * (sx * np.sin(th) + sy * np.cos(th))


def _triangle_heights(a: float, th: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    c = a * math.sqrt(3.0) / 6.0
    f_a = c * (math.sqrt(3.0) * np.sin(th) + np.cos(th))
    f_b = c * (-math.sqrt(3.0) * np.sin(th) + np.cos(th))
    f_c = -2.0 * c * np.cos(th)

    third = TWO_PI / 3.0
    ju = np.clip((th // third).astype(int), 0, 2)
    ys = np.choose(ju, [f_a, f_c, f_b])

    jl = np.digitize(th, [math.pi / 3.0, math.pi, 5.0 * math.pi / 3.0])
    yi = np.choose(jl, [f_c, f_b, f_a, f_c])
    return ys, yi


def _cyclic_match(v: np.ndarray, w: np.ndarray, tol: float) -> bool:
    # Same vertex loop up to a cyclic relabeling of the starting vertex.
    if v.shape != w.shape:
        return False
    for s in range(v.shape[0]):
        if np.max(np.abs(np.roll(v, -s, axis=0) - w)) <= tol:
            return True
    return False


def _case_matches(shape: Shape, case: ClosedFormCase) -> bool:
    tol = 1e-9 * case.a
    if case.variant in ("circle_center", "circle_rim"):
        if not (isinstance(shape, SmoothContour) and shape.kind == "circle"):
            return False
        if abs(shape.a - case.a) > tol:
            return False
        target = (0.0, 0.0) if case.variant == "circle_center" else (case.a, 0.0)
        return bool(np.max(np.abs(shape.pole_offset - np.asarray(target))) <= tol)
    if case.variant == "ellipse_center":
        return (
            isinstance(shape, SmoothContour)
            and shape.kind == "ellipse"
            and abs(shape.a - case.a) <= tol
            and abs(shape.b - case.b) <= tol
            and np.max(np.abs(shape.pole_offset)) <= tol
        )
    n = 4 if case.variant == "square_center" else 3
    circum = case.a * (math.sqrt(2.0) / 2.0 if n == 4 else math.sqrt(3.0) / 3.0)
    if not (isinstance(shape, ConvexPolygon) and len(shape) == n):
        return False
    if np.max(np.abs(shape.pole_offset)) > tol:
        return False
    return _cyclic_match(shape.vertices, regular_ngon(n, circum).vertices, tol)


def oracle_check(shape: Shape, case: ClosedFormCase, n_theta: int = 1000) -> float:
    """Worst componentwise gap between the generic path and the closed form.

    Evaluated at n_theta angles uniform over a full turn.  Raises
    MismatchedCase when the shape does not describe the case's object,
    so a passing number can never come from comparing the wrong pair.
    """
    if n_theta < 1:
        raise ValueError("n_theta must be >= 1")
    if not _case_matches(shape, case):
        raise MismatchedCase(f"shape {_describe(shape)} does not match case {case.variant}")
    thetas = TWO_PI * np.arange(n_theta) / n_theta
    worst = 0.0
    for th in thetas:
        ys, yi = support_heights(shape, float(th))
        cs, ci = closed_form(case, float(th))
        worst = max(worst, abs(ys - cs), abs(yi - ci))
    return worst
