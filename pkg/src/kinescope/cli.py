"""Command-line front end.

Four subcommands: ``direct`` synthesizes a trace from shape and motion
flags, ``inverse`` identifies a polygon from a trace CSV, ``render``
replots an existing CSV as SVG, and ``check`` runs the built-in
verification suite.  Exit codes: 0 success, 1 check failure, 2 bad
usage/config/input file, 3 convexity violation, 4 trace unusable for
the inverse problem.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Optional

import numpy as np

from .direct import ClosedFormCase, trace, oracle_check
from .errors import ConvexityViolation, DegenerateImage, InsufficientData
from .geometry import (
    TWO_PI,
    ConvexPolygon,
    Shape,
    SmoothContour,
    regular_ngon,
    support_heights,
)
from .inverse import identify
from .io import format_report, read_trace_csv, write_svg, write_trace_csv
from .motion import MotionProfile, TimeGrid

COMMANDS = ("direct", "inverse", "render", "check")

CHECK_CASES = (
    "circle-center",
    "circle-rim",
    "ellipse",
    "square",
    "triangle",
    "reflection",
    "pole-invariance",
    "roundtrip",
)


@dataclass(frozen=True)
class RunConfig:
    """A validated command plus its flag values."""

    command: str
    args: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"command must be one of {COMMANDS}, got {self.command!r}")
        need = {"direct": ["out"], "inverse": ["inp"], "render": ["inp", "svg"]}.get(self.command, [])
        for key in need:
            if not self.args.get(key):
                flag = "--in" if key == "inp" else f"--{key}"
                raise ValueError(f"{self.command} requires {flag}")

    def __getitem__(self, key: str) -> Any:
        return self.args[key]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kinescope",
        description="Trace rotating convex shapes onto a moving film, and identify "
        "regular polygons from such traces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("direct", help="synthesize a trace and write it as CSV (and SVG)")
    p.add_argument("--shape", required=True, choices=["circle", "ellipse", "ngon", "polar"])
    p.add_argument("--radius", type=float, help="circle radius")
    p.add_argument("--a", type=float, help="ellipse semi-axis along x (a >= b)")
    p.add_argument("--b", type=float, help="ellipse semi-axis along y")
    p.add_argument("--sides", type=int, help="ngon side count")
    p.add_argument("--side-length", type=float, help="ngon side length")
    p.add_argument("--circumradius", type=float, help="ngon circumradius (alternative to --side-length)")
    p.add_argument("--polar-file", help="CSV of beta,r samples for --shape polar")
    p.add_argument("--pole", choices=["center", "rim"], default="center",
                   help="rotation pole: shape center, or a rim point (circle only)")
    p.add_argument("--pole-x", type=float, default=None, help="explicit pole offset x")
    p.add_argument("--pole-y", type=float, default=None, help="explicit pole offset y")
    p.add_argument("--omega", type=float, default=1.0, help="constant angular rate (rad/time)")
    p.add_argument("--omega-file", help="piecewise table: lines of 't value'")
    p.add_argument("--speed", type=float, default=1.0, help="constant film speed")
    p.add_argument("--speed-file", help="piecewise table: lines of 't value'")
    p.add_argument("--theta0", type=float, default=0.0, help="initial angle (rad)")
    p.add_argument("--periods", type=float, default=None,
                   help="duration as a count of full rotations (constant omega only)")
    p.add_argument("--duration", type=float, default=None, help="duration in time units")
    p.add_argument("--samples", type=int, default=None,
                   help="sample count (default: 1024 per rotation)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--svg", help="also plot to this SVG path")

    p = sub.add_parser("inverse", help="identify a regular polygon or circle from a trace CSV")
    p.add_argument("--in", dest="inp", required=True, help="input trace CSV")
    p.add_argument("--report", help="write the full key=value report here")
    p.add_argument("--n-max", type=int, default=64, help="largest resolvable side count")

    p = sub.add_parser("render", help="replot a trace CSV as SVG")
    p.add_argument("--in", dest="inp", required=True, help="input trace CSV")
    p.add_argument("--svg", required=True, help="output SVG path")

    p = sub.add_parser("check", help="run the built-in verification suite")
    p.add_argument("--case", choices=list(CHECK_CASES), help="run a single check")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--a", type=float, default=2.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--side", type=float, default=1.0)
    return parser


def _read_pairs(path: str, flag: str) -> list[tuple[float, float]]:
    # Piecewise profile table: one 't value' pair per line, '#' comments allowed.
    try:
        text = Path(path).read_text(encoding="ascii")
    except OSError as exc:
        raise ValueError(f"{flag}: cannot read {path}: {exc}") from None
    pairs = []
    for ln_no, raw in enumerate(text.splitlines(), start=1):
        ln = raw.split("#", 1)[0].strip()
        if not ln:
            continue
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"{flag}: {path}:{ln_no}: expected 't value', got '{raw.strip()}'")
        try:
            pairs.append((float(parts[0]), float(parts[1])))
        except ValueError:
            raise ValueError(f"{flag}: {path}:{ln_no}: non-numeric entry") from None
    if not pairs:
        raise ValueError(f"{flag}: {path} holds no samples")
    return pairs


def _read_polar_csv(path: str) -> tuple[np.ndarray, np.ndarray]:
    try:
        text = Path(path).read_text(encoding="ascii")
    except OSError as exc:
        raise ValueError(f"--polar-file: cannot read {path}: {exc}") from None
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines or [f.strip() for f in lines[0].split(",")] != ["beta", "r"]:
        raise ValueError(f"--polar-file: {path}: expected header 'beta,r'")
    beta, r = [], []
    for ln_no, ln in enumerate(lines[1:], start=2):
        parts = [f.strip() for f in ln.split(",")]
        if len(parts) != 2:
            raise ValueError(f"--polar-file: {path}:{ln_no}: expected 'beta,r' pair")
        try:
            beta.append(float(parts[0]))
            r.append(float(parts[1]))
        except ValueError:
            raise ValueError(f"--polar-file: {path}:{ln_no}: non-numeric entry") from None
    return np.array(beta), np.array(r)


def _pole_offset(cfg: RunConfig, default: tuple[float, float]) -> np.ndarray:
    x, y = default
    if cfg["pole_x"] is not None:
        x = cfg["pole_x"]
    if cfg["pole_y"] is not None:
        y = cfg["pole_y"]
    return np.array([x, y])


def _build_shape(cfg: RunConfig) -> Shape:
    kind = cfg["shape"]
    if kind == "circle":
        if cfg["radius"] is None or not cfg["radius"] > 0:
            raise ValueError("--radius must be given and positive for --shape circle")
        default = (cfg["radius"], 0.0) if cfg["pole"] == "rim" else (0.0, 0.0)
        return SmoothContour.circle(cfg["radius"], _pole_offset(cfg, default))
    if cfg["pole"] == "rim":
        raise ValueError("--pole rim only applies to --shape circle")
    if kind == "ellipse":
        if cfg["a"] is None or cfg["b"] is None:
            raise ValueError("--a and --b are required for --shape ellipse")
        return SmoothContour.ellipse(cfg["a"], cfg["b"], _pole_offset(cfg, (0.0, 0.0)))
    if kind == "ngon":
        n = cfg["sides"]
        if n is None:
            raise ValueError("--sides is required for --shape ngon")
        side, circ = cfg["side_length"], cfg["circumradius"]
        if (side is None) == (circ is None):
            raise ValueError("give exactly one of --side-length or --circumradius")
        if circ is None:
            if not side > 0:
                raise ValueError("--side-length must be positive")
            circ = side / (2.0 * math.sin(math.pi / n))
        ngon = regular_ngon(n, circ)
        offset = _pole_offset(cfg, (0.0, 0.0))
        if np.any(offset != 0.0):
            return ConvexPolygon(ngon.vertices, offset)
        return ngon
    if cfg["polar_file"] is None:
        raise ValueError("--polar-file is required for --shape polar")
    beta, r = _read_polar_csv(cfg["polar_file"])
    return SmoothContour.from_polar(beta, r, _pole_offset(cfg, (0.0, 0.0)))


def _build_profile(cfg: RunConfig) -> MotionProfile:
    omega = _read_pairs(cfg["omega_file"], "--omega-file") if cfg["omega_file"] else cfg["omega"]
    speed = _read_pairs(cfg["speed_file"], "--speed-file") if cfg["speed_file"] else cfg["speed"]
    try:
        return MotionProfile(omega=omega, film_speed=speed, theta0=cfg["theta0"])
    except ValueError as exc:
        raise ValueError(f"--omega/--speed: {exc}") from None


def _build_grid(cfg: RunConfig, profile: MotionProfile) -> TimeGrid:
    periods, duration = cfg["periods"], cfg["duration"]
    if (periods is None) and (duration is None):
        periods = 1.0
    if (periods is not None) and (duration is not None):
        raise ValueError("give only one of --periods or --duration")
    if periods is not None:
        if cfg["omega_file"]:
            raise ValueError("--periods needs a constant --omega; use --duration instead")
        omega = cfg["omega"]
        if omega == 0.0:
            raise ValueError("--periods is undefined for --omega 0; use --duration")
        if not periods > 0:
            raise ValueError("--periods must be positive")
        duration = periods * TWO_PI / abs(omega)
        rotations = periods
    else:
        if not duration > 0:
            raise ValueError("--duration must be positive")
        rotations = max(1.0, abs(cfg["omega"]) * duration / TWO_PI)
    samples = cfg["samples"]
    if samples is None:
        samples = max(2, int(round(1024 * rotations)))
    return TimeGrid(duration=duration, samples=samples)


def cmd_direct(cfg: RunConfig) -> int:
    """Build shape, motion, and grid from flags; trace; write CSV/SVG."""
    shape = _build_shape(cfg)
    profile = _build_profile(cfg)
    grid = _build_grid(cfg, profile)
    img = trace(shape, profile, grid)
    write_trace_csv(img, cfg["out"])
    if cfg.args.get("svg"):
        write_svg(img, cfg["svg"])
    return 0


def cmd_inverse(cfg: RunConfig) -> int:
    """Identify the polygon behind a trace CSV; print n, optionally report."""
    img = read_trace_csv(cfg["inp"])
    rep = identify(img, n_max=cfg["n_max"])
    print(f"n={rep.n}")
    if cfg.args.get("report"):
        Path(cfg["report"]).write_text(format_report(rep), encoding="ascii")
    return 0


def cmd_render(cfg: RunConfig) -> int:
    """Replot an existing trace CSV as an SVG."""
    img = read_trace_csv(cfg["inp"])
    write_svg(img, cfg["svg"])
    return 0


def _check_closed_form(shape: Shape, case: ClosedFormCase, tol: float) -> tuple[bool, str]:
    err = oracle_check(shape, case, n_theta=512)
    return err <= tol, f"max |generic - closed form| = {err:.3e} (tol {tol:.0e})"


def _random_test_shapes(rng: np.random.Generator, count: int) -> list[Shape]:
    shapes: list[Shape] = []
    for k in range(count):
        if k % 2 == 0:
            a = rng.uniform(0.5, 3.0)
            b = rng.uniform(0.2, 1.0) * a
            shapes.append(SmoothContour.ellipse(a, min(a, b), (0.0, 0.0)))
        else:
            n = int(rng.integers(3, 9))
            radii = rng.uniform(0.5, 2.0)
            shapes.append(regular_ngon(n, radii))
    return shapes


def _with_pole(shape: Shape, offset: np.ndarray) -> Shape:
    if isinstance(shape, ConvexPolygon):
        return ConvexPolygon(shape.vertices, offset)
    return SmoothContour(
        kind=shape.kind, a=shape.a, b=shape.b, pole_offset=offset,
        _r=shape._r, _beta0=shape._beta0,
    )


def _check_reflection(cfg: RunConfig) -> tuple[bool, str]:
    rng = np.random.default_rng(0)
    worst = 0.0
    for shape in _random_test_shapes(rng, 12):
        for th in rng.uniform(0.0, TWO_PI, 24):
            ys_pi, _ = support_heights(shape, th + math.pi)
            _, yi = support_heights(shape, th)
            worst = max(worst, abs(yi + ys_pi))
    return worst <= 1e-10, f"max |Y_i(t) + Y_s(t+pi)| = {worst:.3e} (tol 1e-10)"


def _check_pole_invariance(cfg: RunConfig) -> tuple[bool, str]:
    rng = np.random.default_rng(1)
    worst = 0.0
    for shape in _random_test_shapes(rng, 12):
        offset = rng.uniform(-10.0, 10.0, size=2)
        moved = _with_pole(shape, offset)
        for th in rng.uniform(0.0, TWO_PI, 16):
            ys0, yi0 = support_heights(shape, th)
            ys1, yi1 = support_heights(moved, th)
            worst = max(worst, abs((ys1 - yi1) - (ys0 - yi0)))
    return worst <= 1e-9, f"max width deviation under pole moves = {worst:.3e} (tol 1e-9)"


def _check_roundtrip(cfg: RunConfig) -> tuple[bool, str]:
    worst_rel = 0.0
    for n in range(3, 9):
        radius = 1.0 + 0.1 * n
        profile = MotionProfile(omega=1.0, film_speed=1.0)
        grid = TimeGrid(duration=TWO_PI, samples=1024 * n)
        rep = identify(trace(regular_ngon(n, radius), profile, grid))
        if rep.n != n:
            return False, f"n={n} identified as {rep.n}"
        worst_rel = max(worst_rel, abs(rep.circumradius_M - radius) / radius)
    return worst_rel <= 1e-4, f"n=3..8 exact; max |M-R|/R = {worst_rel:.3e} (tol 1e-4)"


def cmd_check(cfg: RunConfig) -> int:
    """Run verification cases; print one PASS/FAIL line each."""
    radius, a, b, side = cfg["radius"], cfg["a"], cfg["b"], cfg["side"]
    suite = {
        "circle-center": lambda: _check_closed_form(
            SmoothContour.circle(radius),
            ClosedFormCase.circle_center(radius), 1e-12),
        "circle-rim": lambda: _check_closed_form(
            SmoothContour.circle(radius, (radius, 0.0)),
            ClosedFormCase.circle_rim(radius), 1e-8),
        "ellipse": lambda: _check_closed_form(
            SmoothContour.ellipse(a, b),
            ClosedFormCase.ellipse_center(a, b), 1e-8),
        "square": lambda: _check_closed_form(
            regular_ngon(4, side * math.sqrt(2.0) / 2.0),
            ClosedFormCase.square_center(side), 1e-12),
        "triangle": lambda: _check_closed_form(
            regular_ngon(3, side * math.sqrt(3.0) / 3.0),
            ClosedFormCase.triangle_center(side), 1e-12),
        "reflection": lambda: _check_reflection(cfg),
        "pole-invariance": lambda: _check_pole_invariance(cfg),
        "roundtrip": lambda: _check_roundtrip(cfg),
    }
    names = [cfg["case"]] if cfg.args.get("case") else list(CHECK_CASES)
    failures = 0
    for name in names:
        ok, detail = suite[name]()
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        if not ok:
            failures += 1
    return 1 if failures else 0


def run(argv: Optional[list[str]] = None) -> int:
    """Parse arguments and dispatch; returns the process exit code."""
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig(command=ns.command, args=vars(ns))
        handler = {
            "direct": cmd_direct,
            "inverse": cmd_inverse,
            "render": cmd_render,
            "check": cmd_check,
        }[cfg.command]
        return handler(cfg)
    except ConvexityViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DegenerateImage, InsufficientData) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
