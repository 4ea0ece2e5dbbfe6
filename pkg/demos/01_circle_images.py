"""A circle spinning about its own centre prints a featureless strip;
move the pole to the rim and the same circle prints a sine wave.
"""

from pathlib import Path

import numpy as np

from kinescope import MotionProfile, SmoothContour, TimeGrid, trace
from kinescope.io import write_svg

out = Path(__file__).parent / "out"
out.mkdir(exist_ok=True)

motion = MotionProfile(omega=1.0, film_speed=1.0)
grid = TimeGrid(duration=4.0 * np.pi, samples=2048)

strip = trace(SmoothContour.circle(1.0), motion, grid)
write_svg(strip, out / "circle_strip.svg")
print("centre pole: Y_s in [%.6f, %.6f]" % (strip.y_s.min(), strip.y_s.max()))

rim = trace(SmoothContour.circle(1.0, pole_offset=(1.0, 0.0)), motion, grid)
write_svg(rim, out / "circle_rim_wave.svg")
gap = np.max(np.abs(rim.y_s - (1.0 + np.sin(rim.z))))
print("rim pole:    Y_s in [%.6f, %.6f]" % (rim.y_s.min(), rim.y_s.max()))
print("rim pole:    max |Y_s - (1 + sin z)| = %.3e" % gap)
print("wrote", out / "circle_strip.svg", "and", out / "circle_rim_wave.svg")
