"""File formats: trace CSV, plot SVG, and the key=value report.

CSV values are written with 17 significant digits, which round-trips
IEEE doubles bit-exactly, so write-then-read is the identity on traces.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Union

import numpy as np

from .direct import KinematicImage
from .inverse import InverseReport

PathLike = Union[str, Path]

CSV_HEADER = "z,ys,yi"

SVG_W = 800
SVG_H = 300
SVG_MARGIN = 0.05

RIBBON_COLOR = "#4c78a8"
UPPER_COLOR = "#4c78a8"
LOWER_COLOR = "#e45756"


def write_trace_csv(img: KinematicImage, path: PathLike) -> None:
    """Write the trace as CSV with header ``z,ys,yi``, one sample per line."""
    lines = [CSV_HEADER]
    for z, ys, yi in zip(img.z, img.y_s, img.y_i):
        lines.append(f"{z:.17g},{ys:.17g},{yi:.17g}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def read_trace_csv(path: PathLike) -> KinematicImage:
    """Read a trace CSV back into a KinematicImage.

    Raises ValueError on a wrong header, a malformed row, or data that
    violates the image invariants (non-increasing z, y_s < y_i), naming
    the offending line.
    """
    text = Path(path).read_text(encoding="ascii")
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ValueError(f"{path}: empty trace file")
    header = [f.strip() for f in lines[0].split(",")]
    if header != CSV_HEADER.split(","):
        raise ValueError(f"{path}: expected header '{CSV_HEADER}', got '{lines[0]}'")
    z, ys, yi = [], [], []
    for ln_no, ln in enumerate(lines[1:], start=2):
        fields = [f.strip() for f in ln.split(",")]
        if len(fields) != 3:
            raise ValueError(f"{path}:{ln_no}: expected 3 comma-separated values")
        try:
            vals = [float(f) for f in fields]
        except ValueError:
            raise ValueError(f"{path}:{ln_no}: non-numeric value in '{ln}'") from None
        z.append(vals[0])
        ys.append(vals[1])
        yi.append(vals[2])
    try:
        return KinematicImage(z=np.array(z), y_s=np.array(ys), y_i=np.array(yi))
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from None


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def write_svg(img: KinematicImage, path: PathLike) -> None:
    """Render the trace to a fixed 800x300 SVG.

    z runs along the horizontal axis; both axes share one scale factor
    (equal units per pixel) chosen so the drawing fits inside a 5%
    margin, and the drawing is centred in the leftover space.  The area
    between the curves is filled with a translucent ribbon under two
    solid strokes.
    """
    z = img.z
    ys = img.y_s
    yi = img.y_i
    dz = float(z[-1] - z[0])
    ylo = float(yi.min())
    yhi = float(ys.max())
    dy = yhi - ylo
    if dy <= 0.0:
        dy = 1.0
    usable_w = SVG_W * (1.0 - 2.0 * SVG_MARGIN)
    usable_h = SVG_H * (1.0 - 2.0 * SVG_MARGIN)
    scale = min(usable_w / dz, usable_h / dy)

    zmid = 0.5 * float(z[0] + z[-1])
    ymid = 0.5 * (ylo + yhi)

    def px(zv: float) -> float:
        return SVG_W / 2.0 + (zv - zmid) * scale

    def py(yv: float) -> float:
        return SVG_H / 2.0 - (yv - ymid) * scale

    upper = " ".join(f"{_fmt(px(a))},{_fmt(py(b))}" for a, b in zip(z, ys))
    lower = " ".join(f"{_fmt(px(a))},{_fmt(py(b))}" for a, b in zip(z, yi))
    ribbon = upper + " " + " ".join(
        f"{_fmt(px(a))},{_fmt(py(b))}" for a, b in zip(z[::-1], yi[::-1])
    )

    svg = (
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SVG_W} {SVG_H}" '
        f'width="{SVG_W}" height="{SVG_H}">\n'
        f'  <rect width="{SVG_W}" height="{SVG_H}" fill="white"/>\n'
        f'  <polygon points="{ribbon}" fill="{RIBBON_COLOR}" fill-opacity="0.25" stroke="none"/>\n'
        f'  <polyline points="{upper}" fill="none" stroke="{UPPER_COLOR}" stroke-width="1.5"/>\n'
        f'  <polyline points="{lower}" fill="none" stroke="{LOWER_COLOR}" stroke-width="1.5"/>\n'
        f"</svg>\n"
    )
    Path(path).write_text(svg, encoding="ascii")


def format_report(rep: InverseReport) -> str:
    """Serialize an InverseReport as key=value lines.

    Keys, in order: n, parity, m, M, midline, omega_over_v, residual,
    warnings (semicolon-joined), then the rounding diagnostics n_raw and
    n_raw_delta (distance from n_raw to the nearest integer).
    """
    delta = math.nan if not math.isfinite(rep.n_raw) else abs(rep.n_raw - round(rep.n_raw))
    lines = [
        f"n={rep.n}",
        f"parity={rep.parity}",
        f"m={rep.apothem_m!r}",
        f"M={rep.circumradius_M!r}",
        f"midline={rep.midline!r}",
        f"omega_over_v={rep.omega_over_v!r}",
        f"residual={rep.residual!r}",
        "warnings=" + ";".join(rep.warnings),
        f"n_raw={rep.n_raw!r}",
        f"n_raw_delta={delta!r}",
    ]
    return "\n".join(lines) + "\n"
