import math

import numpy as np
import pytest

from kinescope import (
    CIRCLE,
    InverseReport,
    KinematicImage,
    MotionProfile,
    SmoothContour,
    TimeGrid,
    extremes,
    identify,
    parity_test,
    period_estimate,
    regular_ngon,
    side_count,
    trace,
)
from kinescope.errors import DegenerateImage, InsufficientData

TWO_PI = 2.0 * math.pi


def ngon_image(n, circumradius=1.0, omega=1.0, speed=1.0, duration=TWO_PI, samples=4096):
    shape = regular_ngon(n, circumradius)
    profile = MotionProfile(omega=omega, film_speed=speed)
    return trace(shape, profile, TimeGrid(duration=duration, samples=samples))


def test_extremes_square():
    m, M, mid = extremes(ngon_image(4, math.sqrt(2.0) / 2.0))
    assert abs(m - 0.5) < 1e-9
    assert abs(M - math.sqrt(2.0) / 2.0) < 1e-9
    assert abs(mid) < 1e-9


def test_extremes_triangle():
    m, M, mid = extremes(ngon_image(3, math.sqrt(3.0) / 3.0))
    assert abs(m - math.sqrt(3.0) / 6.0) < 1e-9
    assert abs(M - math.sqrt(3.0) / 3.0) < 1e-9
    assert abs(mid) < 1e-9


def test_extremes_circle_strip():
    img = trace(SmoothContour.circle(1.5), MotionProfile(1.0, 1.0), TimeGrid(duration=4.0, samples=64))
    m, M, mid = extremes(img)
    assert abs(m - 1.5) < 1e-12 and abs(M - 1.5) < 1e-12
    assert abs(mid) < 1e-12


def test_extremes_degenerate():
    z = np.linspace(0.0, 1.0, 16)
    with pytest.raises(DegenerateImage):
        extremes(KinematicImage(z=z, y_s=np.zeros(16), y_i=np.zeros(16)))


def test_side_count_worked_values():
    assert side_count(0.5, math.sqrt(2.0) / 2.0) == 4
    assert side_count(math.sqrt(3.0) / 6.0, math.sqrt(3.0) / 3.0) == 3
    assert side_count(math.cos(math.pi / 5.0), 1.0) == 5
    assert side_count(1.0, 1.0) == CIRCLE


def test_side_count_recovers_each_n():
    for n in range(3, 65):
        assert side_count(math.cos(math.pi / n), 1.0, n_max=64) == n
    assert side_count(math.cos(math.pi / 65), 1.0, n_max=64) == CIRCLE
    # a tighter gate turns a crisp 12-gon ratio into a circle call
    assert side_count(math.cos(math.pi / 12), 1.0, n_max=8) == CIRCLE


def test_side_count_rejects_bad_inputs():
    with pytest.raises(ValueError):
        side_count(0.0, 1.0)
    with pytest.raises(ValueError):
        side_count(-0.1, 1.0)
    with pytest.raises(ValueError):
        side_count(1.1, 1.0)
    with pytest.raises(ValueError):
        side_count(0.5, 1.0, n_max=2)


def test_parity_square_even():
    assert parity_test(ngon_image(4)) == "even"


def test_parity_triangle_odd():
    assert parity_test(ngon_image(3)) == "odd"


def test_parity_pentagon_odd():
    assert parity_test(ngon_image(5)) == "odd"


def test_parity_circle():
    img = trace(SmoothContour.circle(2.0), MotionProfile(1.0, 1.0), TimeGrid(duration=5.0, samples=128))
    assert parity_test(img) == "circle"


def test_period_square_unit_motion():
    # four-fold symmetry, omega/v = 1: maxima every pi/2 along the film
    assert abs(period_estimate(ngon_image(4)) - math.pi / 2.0) < 1e-6


def test_period_scales_with_omega():
    assert abs(period_estimate(ngon_image(3, omega=2.0)) - math.pi / 3.0) < 1e-6


def test_period_flat_curve_raises():
    img = trace(SmoothContour.circle(1.0), MotionProfile(1.0, 1.0), TimeGrid(duration=4.0, samples=64))
    with pytest.raises(InsufficientData):
        period_estimate(img)


def test_period_single_maximum_raises():
    z = np.linspace(0.0, TWO_PI, 200)
    ys = 0.6 + 0.4 * np.cos(z - math.pi)
    with pytest.raises(InsufficientData):
        period_estimate(KinematicImage(z=z, y_s=ys, y_i=-ys))


def test_period_warns_on_uneven_spacing():
    shape = regular_ngon(4, 1.0)
    profile = MotionProfile(omega=[(0.0, 1.0), (TWO_PI, 3.0)], film_speed=1.0)
    img = trace(shape, profile, TimeGrid(duration=2 * TWO_PI, samples=8192))
    notes = []
    period_estimate(img, notes)
    assert len(notes) == 1 and "spread" in notes[0]


def test_identify_square():
    rep = identify(ngon_image(4, math.sqrt(2.0) / 2.0))
    assert rep.n == 4
    assert rep.parity == "even"
    assert abs(rep.apothem_m - 0.5) < 1e-9
    assert abs(rep.circumradius_M - math.sqrt(2.0) / 2.0) < 1e-9
    assert abs(rep.omega_over_v - 1.0) < 1e-6
    assert rep.residual < 1e-8
    assert rep.warnings == ()
    assert abs(rep.n_raw - 4.0) < 1e-9


def test_identify_triangle():
    rep = identify(ngon_image(3, omega=0.5, duration=2 * TWO_PI))
    assert rep.n == 3
    assert rep.parity == "odd"
    assert abs(rep.omega_over_v - 0.5) < 1e-6
    assert rep.residual < 1e-8


def test_identify_circle():
    img = trace(SmoothContour.circle(0.7), MotionProfile(1.0, 1.0), TimeGrid(duration=6.0, samples=256))
    rep = identify(img)
    assert rep.n == CIRCLE
    assert rep.parity == "circle"
    assert math.isnan(rep.omega_over_v)
    assert abs(rep.apothem_m - 0.7) < 1e-12
    assert abs(rep.circumradius_M - 0.7) < 1e-12
    assert rep.residual < 1e-12


def test_identify_scale_invariance():
    img = ngon_image(5, samples=2048)
    base = identify(img)
    k = 3.7
    scaled = identify(KinematicImage(z=k * img.z, y_s=k * img.y_s, y_i=k * img.y_i))
    assert scaled.n == base.n == 5
    assert scaled.parity == base.parity
    assert abs(scaled.apothem_m - k * base.apothem_m) < 1e-9 * k
    assert abs(scaled.circumradius_M - k * base.circumradius_M) < 1e-9 * k
    assert abs(scaled.omega_over_v - base.omega_over_v / k) < 1e-9 / k
    assert abs(scaled.residual - k * base.residual) < 1e-3 * k * base.residual + 1e-13 * k


def test_identify_survives_measurement_noise():
    rng = np.random.default_rng(7)
    for n in (3, 4, 5, 6, 7, 8):
        img = ngon_image(n, samples=8192)
        eps = 1e-3
        ys = img.y_s + rng.uniform(-eps, eps, len(img))
        yi = img.y_i + rng.uniform(-eps, eps, len(img))
        rep = identify(KinematicImage(z=img.z, y_s=ys, y_i=yi))
        assert rep.n == n
        assert rep.parity == ("even" if n % 2 == 0 else "odd")


def test_identify_warns_on_offset_midline():
    img = ngon_image(4)
    rep = identify(KinematicImage(z=img.z, y_s=img.y_s + 0.1, y_i=img.y_i + 0.1))
    assert rep.n == 4
    assert abs(rep.midline - 0.1) < 1e-6
    assert any("midline" in w for w in rep.warnings)


def test_identify_clamps_sub_triangle_ratio():
    # m/M = 0.3 would round to n = 2, which no convex polygon produces
    z = np.linspace(0.0, 3 * math.pi, 2000)
    ys = 0.65 + 0.35 * np.cos(2.0 * z)
    rep = identify(KinematicImage(z=z, y_s=ys, y_i=-ys))
    assert rep.n == 3
    assert any("clamped to 3" in w for w in rep.warnings)
    assert rep.n_raw < 2.5


def test_report_validation():
    ok = dict(
        n=4,
        apothem_m=0.5,
        circumradius_M=0.7,
        parity="even",
        omega_over_v=1.0,
        midline=0.0,
        residual=0.0,
    )
    rep = InverseReport(**ok)
    assert isinstance(rep.n, int) and rep.warnings == ()
    assert InverseReport(**{**ok, "n": CIRCLE, "parity": "circle"}).n == CIRCLE
    with pytest.raises(ValueError):
        InverseReport(**{**ok, "n": 2})
    with pytest.raises(ValueError):
        InverseReport(**{**ok, "apothem_m": 0.0})
    with pytest.raises(ValueError):
        InverseReport(**{**ok, "apothem_m": 0.9})
    with pytest.raises(ValueError):
        InverseReport(**{**ok, "parity": "sideways"})
    with pytest.raises(ValueError):
        InverseReport(**{**ok, "residual": -1.0})
    listed = InverseReport(**{**ok, "warnings": ["a", "b"]})
    assert listed.warnings == ("a", "b")
