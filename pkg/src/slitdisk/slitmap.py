"""Explicit conformal maps between the slit disk D - [0, 1) and the disk.

``g`` maps the slit disk onto the disk as a chain of elementary steps::

    z -> -z -> sqrt -> *i -> +1          (phi1, onto the upper half-disk W1)
      -> 1/w -> -1/2 -> *i -> square -> Cayley   (phi2, onto the disk)

and ``h = g^{-1}`` runs the chain backwards with explicit inverses. Each
step records the region its output must lie in, and the inverse chain checks
every intermediate value against it (this is where the square-root branch
gets selected).

Near the boundary points 1 and -1 the plain chain loses the deviation to
rounding, so :func:`g_deviation` and :func:`h_deviation` carry the same
composition algebraically in deviation form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np
from scipy.optimize import brentq

from .hyperbolic import BoundaryDeviation, DomainError, defect, deviation_from

#: region-membership slack for intermediate values of the chain
REGION_TOL = 1e-9


class SlitError(DomainError):
    """Point lies on the slit [0, 1)."""


class BranchError(RuntimeError):
    """An intermediate value left the region its branch was chosen for."""


def _as_array(z):
    return np.asarray(z, dtype=complex)


def _out(x):
    return x.item() if np.ndim(x) == 0 else x


def on_slit(z) -> np.ndarray:
    z = _as_array(z)
    return (z.imag == 0) & (z.real >= 0) & (z.real < 1)


# regions, each as a predicate with slack ``tol``
def _slit_disk(w, tol):
    return (np.abs(w) < 1 + tol) & ~on_slit(w)


def _disk_minus_negative(w, tol):
    return (np.abs(w) < 1 + tol) & ~((w.imag == 0) & (w.real <= 0) & (w.real > -1))


def _right_half_disk(w, tol):
    return (np.abs(w) < 1 + tol) & (w.real > -tol)


def _upper_half_disk(w, tol):
    return (np.abs(w) < 1 + tol) & (w.imag > -tol)


def _w1(w, tol):
    return (np.abs(w - 1) < 1 + tol) & (w.imag > -tol)


def _w2(w, tol):
    return (w.real > 0.5 - tol) & (w.imag < tol)


def _fourth_quadrant(w, tol):
    return (w.real > -tol) & (w.imag < tol)


def _first_quadrant(w, tol):
    return (w.real > -tol) & (w.imag > -tol)


def _upper_half_plane(w, tol):
    return w.imag > -tol


def _disk(w, tol):
    return np.abs(w) < 1 + tol


def _principal_sqrt_upper(w):
    """Square root with the cut on (-inf, 0] approached from above."""
    return np.sqrt(np.where(w.imag == 0, w.real + 0j, w))


def _sqrt_first_quadrant(w):
    root = np.sqrt(w)
    return np.where(_first_quadrant(root, 0.0), root, -root)


@dataclass(frozen=True)
class Step:
    name: str
    kind: str
    forward: Callable
    inverse: Callable
    codomain: Callable
    region: str
    branch: str = ""


@dataclass(frozen=True)
class ConformalChain:
    """Ordered elementary maps with exact inverses and region bookkeeping."""

    steps: tuple[Step, ...]
    domain: Callable = _slit_disk
    domain_name: str = "slit disk D - [0,1)"
    tol: float = REGION_TOL

    def forward(self, z, trace: bool = False):
        z = _as_array(z)
        if np.any(on_slit(z)):
            raise SlitError("point lies on the slit [0, 1)")
        if np.any(~self.domain(z, 0.0)):
            raise DomainError(f"point outside the {self.domain_name}")
        values = [z]
        for step in self.steps:
            z = step.forward(z)
            values.append(z)
        return values if trace else _out(z)

    def inverse(self, w, trace: bool = False):
        w = _as_array(w)
        if np.any(~(np.abs(w) < 1)):
            raise DomainError("point outside the open unit disk")
        values = [w]
        regions = [s.codomain for s in self.steps[:-1]][::-1] + [self.domain]
        names = [s.region for s in self.steps[:-1]][::-1] + [self.domain_name]
        for step, region, name in zip(reversed(self.steps), regions, names):
            w = step.inverse(w)
            if np.any(~region(w, self.tol)):
                raise BranchError(f"inverse of {step.name} left the {name}")
            values.append(w)
        return values if trace else _out(w)

    def check_composition(self, z) -> list[str]:
        """Names of steps whose output escapes the next step's domain on ``z``."""
        failures = []
        for step, w in zip(self.steps, self.forward(z, trace=True)[1:]):
            if np.any(~step.codomain(w, self.tol)):
                failures.append(step.name)
        return failures


SLIT_CHAIN = ConformalChain((
    Step("negate", "rotation", lambda z: -z, lambda w: -w,
         _disk_minus_negative, "disk minus (-1, 0]"),
    Step("sqrt", "square-root-with-cut", _principal_sqrt_upper, lambda w: w * w,
         _right_half_disk, "right half-disk", "principal, cut (-inf, 0], sqrt(1) = 1"),
    Step("rotate", "rotation", lambda z: 1j * z, lambda w: -1j * w,
         _upper_half_disk, "upper half-disk"),
    Step("shift", "translation", lambda z: z + 1, lambda w: w - 1,
         _w1, "W1 = {|w - 1| < 1, Im w > 0}"),
    Step("invert", "inversion", lambda z: 1 / z, lambda w: 1 / w,
         _w2, "W2 = {Re w > 1/2, Im w < 0}"),
    Step("recentre", "translation", lambda z: z - 0.5, lambda w: w + 0.5,
         _fourth_quadrant, "fourth quadrant"),
    Step("quarter-turn", "rotation", lambda z: 1j * z, lambda w: -1j * w,
         _first_quadrant, "first quadrant"),
    Step("square", "square", lambda z: z * z, _sqrt_first_quadrant,
         _upper_half_plane, "upper half-plane", "inverse picks the first-quadrant root"),
    Step("cayley", "Mobius-to-disk", lambda z: (z - 1j) / (z + 1j),
         lambda w: 1j * (1 + w) / (1 - w), _disk, "unit disk"),
))


def phi1(z):
    """``i sqrt(-z) + 1`` with the cut of ``sqrt(-z)`` on ``[0, +inf)``; onto W1."""
    z = _as_array(z)
    if np.any(on_slit(z)):
        raise SlitError("phi1 is undefined on the slit [0, 1)")
    if np.any(np.abs(z) > 1):
        raise DomainError("phi1 is defined on the closed slit disk")
    return _out(1j * _principal_sqrt_upper(-z) + 1)


def phi1_inverse(w):
    return _out((_as_array(w) - 1) ** 2)


def phi2(w):
    """``((1/w - 1/2)^2 + i) / ((1/w - 1/2)^2 - i)`` on W1 (closure minus 0)."""
    w = _as_array(w)
    if np.any(w == 0) or np.any(~_w1(w, REGION_TOL)):
        raise DomainError("phi2 is defined on the closure of W1 minus 0")
    q = (1 / w - 0.5) ** 2
    return _out((q + 1j) / (q - 1j))


def g(z):
    """Slit disk onto the disk, via the elementary chain."""
    return SLIT_CHAIN.forward(z)


def h(z):
    """Disk onto the slit disk, via the inverted chain."""
    return SLIT_CHAIN.inverse(z)


# -- deviation-form composition ----------------------------------------------


def _g_parts(delta):
    """``q = (1/phi1 - 1/2)^2`` for ``z = 1 - delta`` without cancellation.

    With ``s = sqrt(z)`` (principal), ``phi1(z) = 1 - s`` when ``Im z < 0``
    and ``1 + s`` otherwise, and ``(1 - s)(1 + s) = delta``.
    """
    delta = _as_array(delta)
    z_imag = -delta.imag
    s = np.sqrt(1 - delta)
    lower = z_imag < 0
    # fix the branch on the negative axis, where Im z may be -0.0
    s = np.where(~lower & (s.imag < 0), -s, s)
    p = np.where(lower, (1 + s) ** 2 / (2 * delta), delta / (2 * (1 + s) ** 2))
    return p * p


def g_deviation(z, anchor: complex = 1.0) -> BoundaryDeviation:
    """``g(z)`` as a deviation from ``anchor`` in ``{1, -1}``.

    ``1 - g = -2i/(q - i)`` and ``1 + g = 2q/(q - i)`` with ``q`` from
    :func:`_g_parts`; both stay accurate when ``g(z)`` is exponentially close
    to the anchor.
    """
    delta = deviation_from(z)
    if isinstance(z, BoundaryDeviation):
        bad = np.any(~(defect(z) > 0))
    else:
        bad = np.any(~(np.abs(_as_array(z)) < 1))
    if bad:
        raise DomainError("point outside the open unit disk")
    if np.any((delta.imag == 0) & (delta.real > 0) & (delta.real <= 1)):
        raise SlitError("point lies on the slit [0, 1)")
    q = _g_parts(delta)
    if anchor == 1:
        dev = -2j / (q - 1j)
    elif anchor == -1:
        dev = 2 * q / (q - 1j)
    else:
        raise ValueError("anchor must be 1 or -1")
    return BoundaryDeviation(_out(dev), anchor)


class HParts(NamedTuple):
    root: np.ndarray       # lambda, in the fourth quadrant
    pre_square: np.ndarray  # (2 lambda - 1)/(2 lambda + 1)
    value: np.ndarray      # h
    deviation: np.ndarray  # 1 - h


def _h_parts(one_minus_u, one_plus_u) -> HParts:
    """Closed-form pieces of ``h`` from ``1 - u`` and ``1 + u``.

    ``lambda = sqrt(-i (1 + u)/(1 - u))`` in the fourth quadrant,
    ``h = ((2 lambda - 1)/(2 lambda + 1))^2`` and
    ``1 - h = 8 lambda / (2 lambda + 1)^2``.
    """
    zeta = -1j * one_plus_u / one_minus_u
    lam = np.sqrt(zeta)
    lam = np.where(lam.imag > 0, -lam, lam)
    r = (2 * lam - 1) / (2 * lam + 1)
    return HParts(lam, r, r * r, 8 * lam / (2 * lam + 1) ** 2)


def h_deviation(u) -> BoundaryDeviation:
    """``h(u)`` as a deviation ``1 - h(u)`` anchored at 1."""
    if isinstance(u, BoundaryDeviation):
        margin = defect(u)
    else:
        margin = 1 - np.abs(_as_array(u))
    if np.any(~(margin > 0)):
        raise DomainError("point outside the open unit disk")
    parts = _h_parts(deviation_from(u, 1), deviation_from(u, -1))
    return BoundaryDeviation(_out(parts.deviation))


def h_derivative(z):
    """Analytic ``h'(z)`` from the closed form."""
    z = _as_array(z)
    parts = _h_parts(1 - z, 1 + z)
    lam, r = parts.root, parts.pre_square
    dzeta = -2j / (1 - z) ** 2
    return _out(2 * r * 4 / (2 * lam + 1) ** 2 / (2 * lam) * dzeta)


# -- the printed closed form ---------------------------------------------------

CLOSED_FORM_RATIOS = {
    "(1+z)/(1-z)": lambda z: (1 + z) / (1 - z),
    "(z+1)/(z-1)": lambda z: (z + 1) / (z - 1),
}


def sqrt_cut_positive(x):
    """Square root on C - [0, +inf) with sqrt(-1) = -i (values in Im < 0)."""
    x = _as_array(x)
    if np.any((x.imag == 0) & (x.real >= 0)):
        raise BranchError("argument on the cut [0, +inf)")
    root = np.sqrt(x)
    return np.where(x.imag >= 0, -root, root)


def h_closed_form(z, ratio: str = "(1+z)/(1-z)"):
    """``((2 lambda - 1)/(2 lambda + 1))^2`` with ``lambda = sqrt(-i R(z))``."""
    z = _as_array(z)
    if np.any(~(np.abs(z) < 1)):
        raise DomainError("point outside the open unit disk")
    lam = sqrt_cut_positive(-1j * CLOSED_FORM_RATIOS[ratio](z))
    return _out(((2 * lam - 1) / (2 * lam + 1)) ** 2)


def select_closed_form_ratio(z, tol: float = 1e-8) -> dict[str, float]:
    """Max deviation of each candidate closed form from the chain ``h`` on ``z``."""
    ref = _as_array(h(z))
    errors = {}
    for name in CLOSED_FORM_RATIOS:
        try:
            errors[name] = float(np.max(np.abs(_as_array(h_closed_form(z, name)) - ref)))
        except BranchError:
            errors[name] = math.inf
    return errors


# -- boundary behaviour ----------------------------------------------------------


@dataclass(frozen=True)
class TracePoint:
    zeta: complex
    value: complex          # radial limit of h
    deviation: complex      # 1 - value
    pre_square: complex
    converged: bool


def radial_limit(zeta: complex, depth: int = 48, tol: float = 1e-6) -> TracePoint:
    """Limit of ``h(r zeta)`` along ``r = 1 - 2^-j``, ``j <= depth``."""
    zeta = complex(zeta)
    prev = None
    converged = False
    for j in range(1, depth + 1):
        pt = BoundaryDeviation(2.0**-j, zeta)
        parts = _h_parts(deviation_from(pt, 1), deviation_from(pt, -1))
        value = complex(parts.value)
        if prev is not None and abs(value - prev) < tol:
            converged = True
        else:
            converged = False
        prev = value
    return TracePoint(zeta, value, complex(parts.deviation), complex(parts.pre_square), converged)


def boundary_trace(samples: int = 64) -> list[TracePoint]:
    """Radial limits of ``h`` at ``samples`` equally spaced boundary points.

    ``samples`` is rounded up to an even number so both 1 and -1 are sampled.
    """
    if samples < 16:
        raise ValueError("need at least 16 samples")
    samples += samples % 2
    angles = 2 * math.pi * np.arange(samples) / samples
    return [radial_limit(complex(math.cos(a), math.sin(a))) for a in angles]


def boundary_value(alpha: float) -> HParts:
    """Closed-form boundary value of ``h`` at ``e^{i alpha}``."""
    u = complex(math.cos(alpha), math.sin(alpha))
    return _h_parts(1 - u, 1 + u)


@dataclass
class BoundaryPreimages:
    of_one: list[complex]
    of_zero: list[complex]
    slit_arc: tuple[float, float]
    slit_samples: tuple[int, int]
    nonconverged: list[complex] = field(default_factory=list)


def boundary_preimages(trace: list[TracePoint], tol: float = 1e-4) -> BoundaryPreimages:
    """Locate boundary preimages of 1 and 0 and the arc covering the slit twice.

    Preimages of 1 are samples whose radial limit is within ``tol`` of 1.
    Preimages of 0 are sign changes of the (real) pre-square value along the
    samples whose limit lies on the slit, refined by bracketing on the
    boundary closed form.
    """
    of_one = [p.zeta for p in trace if abs(p.deviation) < tol]
    slit = [p for p in trace
            if abs(p.value.imag) < 1e-9 and -1e-12 <= p.value.real < 1 and abs(p.deviation) >= tol]
    alphas = np.array([math.atan2(p.zeta.imag, p.zeta.real) % (2 * math.pi) for p in slit])
    order = np.argsort(alphas)
    alphas = alphas[order]
    signs = np.array([slit[i].pre_square.real for i in order])
    of_zero = []
    for i in range(len(alphas) - 1):
        if signs[i] == 0:
            of_zero.append(complex(math.cos(alphas[i]), math.sin(alphas[i])))
        elif signs[i] * signs[i + 1] < 0:
            a0 = brentq(lambda al: complex(boundary_value(al).pre_square).real,
                        alphas[i], alphas[i + 1], xtol=1e-15)
            of_zero.append(complex(math.cos(a0), math.sin(a0)))
    arc = (float(alphas[0]), float(alphas[-1])) if len(alphas) else (math.nan, math.nan)
    if of_zero:
        a0 = math.atan2(of_zero[0].imag, of_zero[0].real) % (2 * math.pi)
        sides = (int(np.sum(alphas < a0)), int(np.sum(alphas > a0)))
    else:
        sides = (len(alphas), 0)
    return BoundaryPreimages(of_one, of_zero, arc, sides,
                             [p.zeta for p in trace if not p.converged])


def conformal_angle_error(f: Callable, z: complex, directions=(1.0, 1j), step: float = 1e-6) -> float:
    """Difference between the angle of two directions at ``z`` and of their images."""
    d1, d2 = (complex(d) / abs(d) for d in directions)
    fz = complex(f(z))
    e1 = complex(f(z + step * d1)) - fz
    e2 = complex(f(z + step * d2)) - fz
    before = np.angle(d2 / d1)
    after = np.angle(e2 / e1)
    return float(abs((after - before + math.pi) % (2 * math.pi) - math.pi))
