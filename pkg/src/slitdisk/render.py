"""Domain-coloring rasters written as plain-text PPM ("P3").

Hue follows ``arg f``, brightness ``2|f|/(1 + |f|)`` clipped to 1, and
points outside the target's domain are black.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Callable

import numpy as np
from matplotlib.colors import hsv_to_rgb

from .counterexample import Counterexample, build
from .slitmap import REGION_TOL, g, h, on_slit, phi1, phi2

REGIONS = {
    "unit": (-1.0, 1.0, -1.0, 1.0),
    "near-1": (0.9, 1.0, -0.05, 0.05),
    "w1": (0.0, 2.0, -0.5, 1.5),
}

TARGETS = ("phi1", "phi2", "g", "h", "B", "phi")


class RegionError(ValueError):
    pass


def parse_region(text: str) -> tuple[float, float, float, float]:
    """A named region or ``"x0,x1,y0,y1"``."""
    if text in REGIONS:
        return REGIONS[text]
    try:
        x0, x1, y0, y1 = (float(p) for p in text.split(","))
    except ValueError:
        raise RegionError(f"bad region {text!r}: use {sorted(REGIONS)} or x0,x1,y0,y1") from None
    if not (x0 < x1 and y0 < y1) or not all(map(math.isfinite, (x0, x1, y0, y1))):
        raise RegionError(f"bad region {text!r}: need x0 < x1 and y0 < y1")
    return x0, x1, y0, y1


def default_region(target: str) -> str:
    return "w1" if target == "phi2" else "unit"


def _in_disk(z):
    return np.abs(z) < 1


def _slit_disk(z):
    return _in_disk(z) & ~on_slit(z)


def _w1(z):
    return (np.abs(z - 1) < 1) & (z.imag > 0) & (np.abs(z) > REGION_TOL)


def target_function(target: str, cx: Counterexample | None = None) -> tuple[Callable, Callable]:
    """``(f, domain_mask)`` for a render target."""
    if target in ("B", "phi") and cx is None:
        cx = build()
    table = {
        "phi1": (phi1, _slit_disk),
        "phi2": (phi2, _w1),
        "g": (g, _slit_disk),
        "h": (h, _in_disk),
        "B": (lambda z: cx.B.eval(z), _in_disk),
        "phi": (lambda z: cx.B.eval(h(z)), _in_disk),
    }
    if target not in table:
        raise KeyError(f"unknown target {target!r}")
    return table[target]


def sample_grid(region, res: int) -> np.ndarray:
    """Pixel centres, row 0 at the top of the region."""
    x0, x1, y0, y1 = region
    xs = x0 + (np.arange(res) + 0.5) * (x1 - x0) / res
    ys = y1 - (np.arange(res) + 0.5) * (y1 - y0) / res
    return xs[None, :] + 1j * ys[:, None]


def domain_colors(values: np.ndarray, valid: np.ndarray) -> np.ndarray:
    """RGB bytes for complex ``values``; invalid or non-finite entries are black."""
    valid = valid & np.isfinite(values)
    mod = np.abs(np.where(valid, values, 0))
    hue = (np.angle(np.where(valid, values, 1)) / (2 * math.pi)) % 1.0
    val = np.clip(2 * mod / (1 + mod), 0.0, 1.0)
    hsv = np.stack([hue, np.full_like(hue, 0.9), val], axis=-1)
    rgb = np.round(hsv_to_rgb(hsv) * 255).astype(np.uint8)
    rgb[~valid] = 0
    return rgb


def render(target: str, res: int = 256, region: str | None = None,
           cx: Counterexample | None = None) -> np.ndarray:
    """``res x res x 3`` array of the domain coloring of ``target``."""
    if res < 1:
        raise RegionError("resolution must be positive")
    bounds = parse_region(region or default_region(target))
    f, domain = target_function(target, cx)
    z = sample_grid(bounds, res)
    mask = domain(z)
    values = np.zeros_like(z)
    if mask.any():
        values[mask] = f(z[mask])
    return domain_colors(values, mask)


def to_ppm(rgb: np.ndarray) -> str:
    h_px, w_px, _ = rgb.shape
    lines = ["P3", f"{w_px} {h_px}", "255"]
    for row in rgb:
        lines.append(" ".join(f"{r} {g_} {b}" for r, g_, b in row))
    return "\n".join(lines) + "\n"


def write_ppm(path: str | Path, rgb: np.ndarray) -> Path:
    """Write atomically (temporary file, then rename)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(to_ppm(rgb))
    tmp.replace(path)
    return path
