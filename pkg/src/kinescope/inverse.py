"""Identification of regular polygons (and circles) from a trace.

The method works entirely off the upper and lower curves of the image.
Relative to the midline, the minimum m of the upper curve is the apothem
of the generating polygon and the maximum M is its circumradius, so the
side count follows from n = pi/arccos(m/M).  Odd polygons betray
themselves by upper and lower curves that are shifted copies rather than
mirror images; circles leave m and M indistinguishable.  Everything here
assumes rotation about the centroid at constant rates; other inputs are
reported with warnings or rejected, never silently misread.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .direct import KinematicImage
from .errors import DegenerateImage, InsufficientData
from .geometry import TWO_PI, polygon_envelope, regular_ngon

# Sentinel side count for images whose m/M ratio is beyond the resolvable
# polygon range.  Compared with `is` or `==`; it is a plain string so it
# survives serialization.
CIRCLE = "CIRCLE"

# Default circle gate, matched to side_count's n_max default of 64:
# an image is called a circle when (M - m) < TOL_CIRCLE * M, i.e. when
# m/M > cos(pi/64).
TOL_CIRCLE = 1.0 - math.cos(math.pi / 64.0)

# Relative slack when comparing the even score against the best shifted
# score.  Large enough that measurement noise on a genuinely even image
# cannot push the shifted minimum below the unshifted score, small enough
# that a real half-period shift (whose even score is worse by orders of
# magnitude) is never missed.
EPS_PARITY = 1e-3

# Below this absolute size the image is considered flat zero.
DEGENERATE_EPS = 1e-12

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class InverseReport:
    """Result of ``identify``: side count, sizes, parity, motion, fit.

    ``n`` is an integer side count or the string CIRCLE.  ``n_raw`` is the
    value of pi/arccos(m/M) before rounding (inf when m = M); its distance
    to ``n`` is a confidence proxy.  ``omega_over_v`` is nan when the image
    gives no period to measure (the circle case).  Warnings carry every
    soft diagnostic the pipeline produced, in order.
    """

    n: Union[int, str]
    apothem_m: float
    circumradius_M: float
    parity: str
    omega_over_v: float
    midline: float
    residual: float
    warnings: tuple[str, ...] = ()
    n_raw: float = math.nan

    def __post_init__(self):
        if self.n != CIRCLE:
            if not isinstance(self.n, (int, np.integer)) or self.n < 3:
                raise ValueError("n must be an integer >= 3 or CIRCLE")
            object.__setattr__(self, "n", int(self.n))
        # Plain Python floats so repr-based serialization stays clean.
        for name in ("apothem_m", "circumradius_M", "omega_over_v", "midline", "residual", "n_raw"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not 0.0 < self.apothem_m <= self.circumradius_M:
            raise ValueError("report requires 0 < m <= M")
        if self.parity not in ("even", "odd", "circle"):
            raise ValueError("parity must be even, odd, or circle")
        if self.residual < 0:
            raise ValueError("residual must be >= 0")
        object.__setattr__(self, "warnings", tuple(self.warnings))


def _rms(x: np.ndarray) -> float:
    return float(np.sqrt(np.mean(np.square(x))))


def _parabolic_refine(x: np.ndarray, y: np.ndarray, k: int) -> tuple[float, float]:
    """Extremum location and value from a parabola through samples k-1..k+1.

    Falls back to the raw sample at the array ends, on a flat triple, or
    when the fitted vertex leaves the neighbouring samples (which means
    the triple does not bracket an extremum).
    """
    if k <= 0 or k >= len(y) - 1:
        return float(x[k]), float(y[k])
    y0, y1, y2 = float(y[k - 1]), float(y[k]), float(y[k + 1])
    denom = y0 - 2.0 * y1 + y2
    if denom == 0.0:
        return float(x[k]), y1
    delta = 0.5 * (y0 - y2) / denom
    if not -1.0 <= delta <= 1.0:
        return float(x[k]), y1
    h = 0.5 * (float(x[k + 1]) - float(x[k - 1]))
    return float(x[k]) + delta * h, y1 - 0.25 * (y0 - y2) * delta


def extremes(img: KinematicImage) -> tuple[float, float, float]:
    """(m, M, midline) of the image, refined past the sampling grid.

    midline is halfway between the top of the upper curve and the bottom
    of the lower one; m and M are the refined minimum and maximum of the
    upper curve measured from the midline.  Assumes the image spans at
    least one full period of the upper curve, which is the caller's
    responsibility to ensure.
    """
    z, ys, yi = img.z, img.y_s, img.y_i
    _, top = _parabolic_refine(z, ys, int(np.argmax(ys)))
    _, low = _parabolic_refine(z, ys, int(np.argmin(ys)))
    _, bot = _parabolic_refine(z, yi, int(np.argmin(yi)))
    midline = 0.5 * (top + bot)
    m = low - midline
    big = top - midline
    if (big - m) < DEGENERATE_EPS and big < DEGENERATE_EPS:
        raise DegenerateImage("image is flat at zero; nothing to identify")
    return m, big, midline


def _raw_side_count(m: float, M: float) -> float:
    ratio = min(max(m / M, -1.0), 1.0)
    if ratio >= 1.0:
        return math.inf
    return math.pi / math.acos(ratio)


def side_count(m: float, M: float, n_max: int = 64):
    """Rounded side count n = round(pi/arccos(m/M)), or CIRCLE.

    CIRCLE is returned when m/M exceeds cos(pi/n_max): past that point
    one sampling-noise quantum moves the answer by a whole side, so a
    count would be meaningless.  Raises ValueError unless 0 < m <= M.
    """
    if not m > 0:
        raise ValueError("m must be positive")
    if m > M:
        raise ValueError("m must not exceed M")
    if n_max < 3:
        raise ValueError("n_max must be at least 3")
    ratio = min(max(m / M, -1.0), 1.0)
    if ratio > math.cos(math.pi / n_max):
        return CIRCLE
    return int(round(math.pi / math.acos(ratio)))


def _interior_maxima(img: KinematicImage) -> tuple[np.ndarray, np.ndarray]:
    """Refined (z, value) of each maximum of the upper curve.

    A maximum is the peak of an excursion above 75% of the curve's band.
    The excursion only ends once the curve drops below 50% of the band:
    without that hysteresis, noise hovering at a single threshold chops
    one peak into several.  Excursions cut off by either end of the
    record are dropped, since their peak may lie outside the window.
    """
    z, ys = img.z, img.y_s
    lo = float(ys.min())
    band = float(ys.max()) - lo
    if not band > 0:
        raise InsufficientData("upper curve is flat; it has no maxima to locate")
    high = ys >= lo + 0.75 * band
    low = ys < lo + 0.50 * band
    enter = np.flatnonzero(~high[:-1] & high[1:]) + 1
    leave = np.flatnonzero(~low[:-1] & low[1:]) + 1
    events = sorted([(int(k), 1) for k in enter] + [(int(k), 0) for k in leave])
    runs = []
    start: Optional[int] = 0 if high[0] else None
    for k, is_enter in events:
        if is_enter and start is None:
            start = k
        elif not is_enter and start is not None:
            runs.append((start, k - 1))
            start = None
    if start is not None:
        runs.append((start, len(ys) - 1))
    peaks_z, peaks_y = [], []
    for i0, i1 in runs:
        if i0 == 0 or i1 == len(ys) - 1:
            continue
        k = i0 + int(np.argmax(ys[i0 : i1 + 1]))
        zz, yy = _parabolic_refine(z, ys, k)
        peaks_z.append(zz)
        peaks_y.append(yy)
    return np.asarray(peaks_z), np.asarray(peaks_y)


def period_estimate(img: KinematicImage, warnings: Optional[list] = None) -> float:
    """Mean z-distance between successive maxima of the upper curve.

    Needs at least two interior maxima, else InsufficientData.  When the
    individual spacings disagree by more than 1% of their mean, a note is
    appended to ``warnings`` (if given): either the motion was not
    constant or the record is noisy, and the mean is then only a summary.
    """
    peaks_z, _ = _interior_maxima(img)
    if len(peaks_z) < 2:
        raise InsufficientData(
            f"found {len(peaks_z)} interior maxima; need at least 2 to measure a period"
        )
    spacings = np.diff(peaks_z)
    period = float(np.mean(spacings))
    if len(spacings) > 1:
        spread = float(spacings.max() - spacings.min()) / period
        if spread > 0.01 and warnings is not None:
            warnings.append(
                f"maxima spacings spread {spread:.2%} of the mean; "
                "the motion may be non-constant or the record noisy"
            )
    return period


def _golden_min(f, a: float, b: float, iters: int = 48) -> float:
    """Minimum value of a unimodal f on [a, b] by golden-section search."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return min(fc, fd)


def parity_test(img: KinematicImage, tol_circle: Optional[float] = None) -> str:
    """Classify the image as even, odd, or circle.

    Mirror-symmetric upper/lower curves mean an even side count; curves
    that only match after sliding the upper one by half its period mean
    an odd count.  The shifted comparison scans a window around T/2 and
    polishes the best offset with golden-section search; offsets near 0
    or T are never tried, since a whole-period slide is the unshifted
    comparison again (and on noisy data would beat it spuriously, because
    interpolation averages the noise down).  The unshifted score wins
    ties within EPS_PARITY relative.
    """
    m, M, midline = extremes(img)
    if tol_circle is None:
        tol_circle = TOL_CIRCLE
    if (M - m) < tol_circle * M:
        return "circle"
    period = period_estimate(img)
    z = img.z
    ysc = img.y_s - midline
    yic = img.y_i - midline

    def shifted_rms(delta: float) -> float:
        zq = z + delta
        keep = zq <= z[-1]
        if int(keep.sum()) < 8:
            return math.inf
        diff = yic[keep] + np.interp(zq[keep], z, ysc)
        return _rms(diff)

    s_even = _rms(yic + ysc)
    # T/2 +- T/16; the period estimate is accurate to far better than that.
    offsets = period * (0.5 + (np.arange(17) - 8) / 128.0)
    scores = np.array([shifted_rms(d) for d in offsets])
    j = int(np.argmin(scores))
    a = float(offsets[max(j - 1, 0)])
    b = float(offsets[min(j + 1, len(offsets) - 1)])
    s_odd = min(_golden_min(shifted_rms, a, b), float(scores[j]))
    return "even" if s_even <= s_odd * (1.0 + EPS_PARITY) else "odd"


def _aligned_residual(
    img: KinematicImage, n: int, M: float, midline: float, omega_over_v: float
) -> float:
    """RMS gap between the upper curve and a re-synthesized n-gon envelope.

    The synthetic envelope's phase is free, so it is aligned first by
    maximizing the cross-correlation over one envelope period, scanned at
    the sample resolution and refined with a parabola through the best
    three correlation values.  The scan uses a dense lookup table; the
    final residual re-evaluates the envelope exactly at the aligned phase.
    """
    poly = regular_ngon(n, M)
    z = img.z
    ysc = img.y_s - midline
    theta = omega_over_v * (z - z[0])
    sector = TWO_PI / n

    dtheta = omega_over_v * float(np.median(np.diff(z)))
    n_phi = int(min(max(8, math.ceil(sector / max(dtheta, 1e-12))), 65536))
    phis = sector * np.arange(n_phi) / n_phi

    table_n = 4 * n_phi
    tgrid = sector * np.arange(table_n + 1) / table_n
    tvals, _, _, _ = polygon_envelope(poly, tgrid)
    thm = np.mod(theta, sector)
    scores = np.empty(n_phi)
    for k, phi in enumerate(phis):
        env = np.interp(np.mod(thm + phi, sector), tgrid, tvals)
        scores[k] = float(np.dot(ysc, env))

    j = int(np.argmax(scores))
    c0 = float(scores[(j - 1) % n_phi])
    c1 = float(scores[j])
    c2 = float(scores[(j + 1) % n_phi])
    denom = c0 - 2.0 * c1 + c2
    delta = 0.0 if denom == 0.0 else 0.5 * (c0 - c2) / denom
    if not -1.0 <= delta <= 1.0:
        delta = 0.0
    phi_star = float(phis[j]) + delta * sector / n_phi

    env, _, _, _ = polygon_envelope(poly, theta + phi_star)
    return _rms(ysc - env)


def identify(img: KinematicImage, n_max: int = 64) -> InverseReport:
    """Full identification pipeline for a centred regular polygon or circle.

    Steps: extremes and midline, parity, side count, motion ratio from
    the maxima period, then a phase-aligned residual against the implied
    polygon.  Degenerate or too-short images raise; model mismatches that
    can still be summarized (large midline, parity disagreeing with n)
    come back as warnings on the report instead.
    """
    warnings: list[str] = []
    m, M, midline = extremes(img)
    if abs(midline) > 1e-6 * M:
        warnings.append(
            f"midline {midline:.6g} exceeds 1e-6 of M; the pole may not be the centroid"
        )
    parity = parity_test(img, tol_circle=1.0 - math.cos(math.pi / n_max))
    if not m > 0:
        raise InsufficientData(
            "upper curve dips below the midline (m <= 0); "
            "this is not the image of a centred regular polygon"
        )
    n = side_count(m, M, n_max=n_max)
    n_raw = _raw_side_count(m, M)

    if n == CIRCLE:
        omega_over_v = math.nan
        residual = _rms(img.y_s - (midline + M))
    else:
        if n < 3:
            warnings.append(
                f"side-count formula gave {n}; clamped to 3 (m/M is below the triangle ratio)"
            )
            n = 3
        period = period_estimate(img, warnings)
        omega_over_v = TWO_PI / (n * period)
        residual = _aligned_residual(img, n, M, midline, omega_over_v)
        want = "even" if n % 2 == 0 else "odd"
        if parity != want:
            warnings.append(f"parity test says {parity} but a {n}-gon is {want}")

    return InverseReport(
        n=n,
        apothem_m=m,
        circumradius_M=M,
        parity=parity,
        omega_over_v=omega_over_v,
        midline=midline,
        residual=residual,
        warnings=tuple(warnings),
        n_raw=n_raw,
    )
