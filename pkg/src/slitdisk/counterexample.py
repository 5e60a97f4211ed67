"""The function phi = B o h and its verification battery.

``B`` is the thin Blaschke product with zeros ``a`` and ``1 - 1/n!`` and
``h`` maps the disk onto the slit disk, so the only zero of ``phi`` is
``b = g(a)``. The checks here collect numerical evidence for each step of
the argument that ``phi - w`` has a finite Blaschke inner factor only for
``w = 0``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from .blaschke import (
    BlaschkeProduct,
    ZeroSequence,
    arg_attainment_count,
    count_zeros_argument_principle,
    factorial_zeros,
    inv_factorial,
    segment_preimage_count,
    slit_constant_c,
    slit_partial_products,
    diagonal_limit,
)
from .hyperbolic import BoundaryDeviation, DomainError, mobius, pseudo_distance_deviation
from .innerfn import SingularInner
from .slitmap import g, g_deviation, h, h_derivative, h_deviation

SCHEMA = "slitdisk-report/1"

#: labels tying each check to the step of the argument it supports
ANCHORS = (
    "thinness-criterion",
    "finite-preimage-lemma",
    "sector-variant",
    "main-theorem-proof",
    "thin-generalization",
)


# -- report --------------------------------------------------------------------


def _jsonable(x):
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    return x


@dataclass
class Check:
    name: str
    anchor: str
    values: list
    threshold: Any
    passed: bool
    note: str = ""

    def __post_init__(self):
        if self.anchor not in ANCHORS:
            raise ValueError(f"check {self.name!r} has no recognised anchor ({self.anchor!r})")
        self.passed = bool(self.passed)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "values": _jsonable(list(self.values)),
            "threshold": _jsonable(self.threshold),
            "pass": self.passed,
            "note": self.note,
        }


@dataclass
class VerificationReport:
    checks: dict[str, Check] = field(default_factory=dict)
    profiles: dict[str, tuple[list[str], list[tuple]]] = field(default_factory=dict)

    def add(self, check: Check) -> None:
        if check.name in self.checks:
            raise ValueError(f"duplicate check {check.name!r}")
        self.checks[check.name] = check

    def extend(self, checks: Iterable[Check]) -> None:
        for c in checks:
            self.add(c)

    def merge(self, other: "VerificationReport") -> None:
        self.extend(other.checks.values())
        for name, table in other.profiles.items():
            if name in self.profiles:
                raise ValueError(f"duplicate profile {name!r}")
            self.profiles[name] = table

    def run(self, name: str, anchor: str, fn: Callable[[], Check | list[Check]]) -> None:
        """Run ``fn`` and record its checks; an exception records a failure."""
        try:
            result = fn()
        except Exception as exc:  # a crashed check must never pass
            self.add(Check(name, anchor, [], None, False, f"error: {type(exc).__name__}: {exc}"))
            return
        self.extend(result if isinstance(result, list) else [result])

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks.values())

    def sorted_checks(self) -> list[Check]:
        return [self.checks[k] for k in sorted(self.checks)]

    def to_dict(self, config: dict | None = None) -> dict:
        return {
            "schema": SCHEMA,
            "config": config or {},
            "verdict": "pass" if self.passed else "fail",
            "checks": [c.to_dict() for c in self.sorted_checks()],
        }

    def to_json(self, config: dict | None = None) -> str:
        return json.dumps(self.to_dict(config), indent=2) + "\n"

    def to_text(self) -> str:
        rows = [("check", "anchor", "result", "threshold", "values")]
        for c in self.sorted_checks():
            vals = _jsonable(c.values)
            shown = ", ".join(_short(v) for v in vals[:4]) + (" ..." if len(vals) > 4 else "")
            rows.append((c.name, c.anchor, "PASS" if c.passed else "FAIL",
                         _short(_jsonable(c.threshold)), shown))
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        lines = ["  ".join(r[i].ljust(widths[i]) for i in range(4)) + "  " + r[4] for r in rows]
        lines.append(f"verdict: {'pass' if self.passed else 'fail'} "
                     f"({sum(c.passed for c in self.checks.values())}/{len(self.checks)})")
        return "\n".join(lines) + "\n"


def _short(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, list):
        return "[" + ", ".join(_short(x) for x in v) + "]"
    return str(v)


# -- the construction ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Counterexample:
    a: complex
    B: BlaschkeProduct
    b: complex
    n_max: int
    tol: float

    def __call__(self, z):
        return phi_eval(self, z)


def build(a: complex = 0.5j, n_max: int = 20, tol: float = 1e-12) -> Counterexample:
    """Assemble ``phi = B o h`` and certify its zero ``b = g(a)``."""
    a = complex(a)
    if a.imag == 0:
        raise DomainError("a must not be real")
    if not abs(a) < 1:
        raise DomainError("a must lie in the open unit disk")
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    B = BlaschkeProduct(factorial_zeros(a, n_max), tol)
    b = complex(g(a))
    cx = Counterexample(a, B, b, n_max, tol)
    residual = abs(phi_eval(cx, b))
    if not residual <= max(tol, 1e-12):
        raise ArithmeticError(f"|phi(b)| = {residual:.3g} exceeds tolerance")
    return cx


def phi_eval(cx: Counterexample, z):
    """``B(h(z))``; deviation-form points go through the deviation chain."""
    if isinstance(z, BoundaryDeviation):
        return cx.B.eval(h_deviation(z))
    return cx.B.eval(h(z))


class _PhiMinus:
    """``phi`` with ``eval``/``log_derivative`` for argument-principle counts."""

    def __init__(self, B: BlaschkeProduct):
        self.B = B

    def eval(self, z):
        return self.B.eval(h(z))

    def log_derivative(self, z):
        return self.B.log_derivative(h(z)) * h_derivative(z)


def phi_zero_count(cx: Counterexample, radius: float = 0.995, nodes: int = 256) -> int:
    """Zeros of ``phi`` inside ``|z| = radius`` (chain-rule log-derivative)."""
    return count_zeros_argument_principle(_PhiMinus(cx.B), 0.0, radius, nodes=nodes)


def _newton(f, z: complex, steps: int) -> complex:
    for _ in range(steps):
        if f.eval(z) == 0:
            return z
        step = 1.0 / complex(f.log_derivative(z))
        z_new = z - step
        while abs(z_new) >= 1.0 - 1e-9:
            step *= 0.5
            z_new = z - step
        if abs(z_new - z) < 1e-15:
            return z_new
        z = z_new
    return z


def locate_zero(cx: Counterexample, start: complex | None = None, steps: int = 60,
                candidates: int = 40, radius: float = 0.995, angles: int = 720) -> complex:
    """Newton iteration ``z <- z - phi/phi'`` started from grid minima of ``|phi|``.

    ``|phi|`` also gets small near the arcs of the circle that ``h`` sends
    to the zeros of ``B`` on the slit. Those minima sit on the outermost
    ring, so only discrete local minima strictly inside it are used as
    starts; iterates ending outside ``|z| < radius`` are discarded and the
    best residual wins.
    """
    f = _PhiMinus(cx.B)
    if start is not None:
        return _newton(f, complex(start), steps)
    # radii crowd towards the circle, where zeros of phi can sit
    r = 1.0 - np.geomspace(0.95, 1.0 - radius, 60)
    t = np.linspace(0, 2 * math.pi, angles, endpoint=False)
    grid = r[:, None] * np.exp(1j * t[None, :])
    vals = np.abs(phi_eval(cx, grid))
    inner = vals[1:-1]
    local = np.ones_like(inner, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di or dj:
                nb = np.roll(vals, dj, axis=1)[1 + di:vals.shape[0] - 1 + di]
                local &= inner <= nb
    ii, jj = np.nonzero(local)
    order = np.argsort(inner[ii, jj])[:candidates]
    best, best_res = None, math.inf
    for z0 in grid[ii[order] + 1, jj[order]]:
        try:
            z = _newton(f, complex(z0), steps)
            if not abs(z) < radius:
                continue
            res = abs(phi_eval(cx, z))
        except (DomainError, ZeroDivisionError, ArithmeticError, RuntimeError):
            continue
        if res < best_res:
            best, best_res = z, res
    if best is None:
        raise ArithmeticError(f"no zero of phi found inside |z| < {radius}")
    return best


# -- checks -------------------------------------------------------------------


def approach_sequence(k_range: Sequence[int], theta: float) -> BoundaryDeviation:
    """``1 - (1/k!) e^{i theta}`` for ``k`` in ``k_range``."""
    rot = complex(math.cos(theta), math.sin(theta))
    return BoundaryDeviation(np.asarray([inv_factorial(k) * rot for k in k_range]))


def verify_nontangential_floor(cx: Counterexample, k_range: Sequence[int],
                               theta: float = math.pi / 4, floor: float = 0.01,
                               control_decay: float = 1e-6, margin: float = 0.1,
                               report: VerificationReport | None = None) -> list[Check]:
    """Floors of ``|phi|`` along ``g(1 - (1/k!) e^{+-i theta})`` and the singular control.

    The sequence with ``+theta`` tends to 1 and the one with ``-theta`` to
    -1. Along the first, multiplying ``phi`` by ``S_1`` drives the values to
    zero while ``|phi|`` itself stays above ``floor``.
    """
    ks = list(k_range)
    checks = []
    rows = []
    S1 = SingularInner.atom(1.0, 1.0)
    for j, (sign, eta) in enumerate(((1, 1.0), (-1, -1.0)), 1):
        base = approach_sequence(ks, sign * theta)
        zk = g_deviation(base, anchor=eta)
        dev = np.atleast_1d(zk.delta)
        phi_vals = np.atleast_1d(phi_eval(cx, zk))
        direct = np.atleast_1d(cx.B.eval(base))
        mods = np.abs(phi_vals)
        approach = bool(np.all(np.diff(np.abs(dev)) < 0) and abs(dev[-1]) < 1e-12)
        apertures = np.abs(np.angle(dev))
        checks.append(Check(
            f"path{j}-approach", "main-theorem-proof", np.abs(dev).tolist(), 1e-12, approach,
            f"g(1 - e^({'+' if sign > 0 else '-'}i theta)/k!) tends to {eta:+.0f}"))
        checks.append(Check(
            f"path{j}-nontangential", "main-theorem-proof", apertures.tolist(),
            math.pi / 2 - margin, bool(apertures.max() <= math.pi / 2 - margin)))
        consistent = float(np.max(np.abs(phi_vals - direct) / np.abs(direct)))
        checks.append(Check(
            f"path{j}-phi-floor", "main-theorem-proof", mods.tolist(), floor,
            bool(mods.min() >= floor and consistent < 1e-8),
            f"min |phi| = {mods.min():.6g}; composition vs direct B rel. diff {consistent:.2g}"))
        control = np.zeros_like(mods)
        log_control = np.full_like(mods, np.nan)
        if eta == 1.0:
            control = mods * np.abs(np.atleast_1d(S1(zk)))
            # log10 |phi S_1| stays finite where the product underflows
            log_control = np.log10(mods) + np.real(np.atleast_1d(S1.exponent(zk))) / math.log(10)
            checks.append(Check(
                "path1-singular-control", "main-theorem-proof", control.tolist(), control_decay,
                bool(control[-1] < control_decay and mods.min() >= floor),
                "|phi S_1| decays while |phi| stays above the floor"))
        for k, d, m, c, lc in zip(ks, dev, mods, control, log_control):
            rows.append((j, k, inv_factorial(k), sign * theta, float(d.real), float(d.imag),
                         float(m), float(c), float(lc)))
    if report is not None:
        report.profiles["paths"] = (
            ["path", "k", "eps", "theta", "dev_re", "dev_im", "abs_phi", "abs_phi_s1",
             "log10_abs_phi_s1"], rows)
    return checks


def verify_partial_products(m_range: Sequence[int], thetas=(math.pi / 4, -math.pi / 4),
                            report: VerificationReport | None = None) -> list[Check]:
    """Products of ``d(1 - 1/n!, 1 - (1/m!) e^{i theta})`` over ``n > m`` and ``n < m``."""
    half_c = slit_constant_c() / 2
    checks = []
    rows = []
    for theta in thetas:
        tag = "plus" if theta > 0 else "minus"
        above, below, diag = [], [], []
        for m in m_range:
            p = slit_partial_products(m, theta)
            above.append(p.above)
            below.append(p.below)
            diag.append(p.diagonal)
            rows.append((theta, m, p.above, p.below, p.diagonal))
        checks.append(Check(f"products-above-{tag}", "main-theorem-proof", above,
                            half_c - 1e-9, min(above) >= half_c - 1e-9))
        checks.append(Check(f"products-below-{tag}", "main-theorem-proof", below,
                            half_c - 1e-9, min(below) >= half_c - 1e-9))
        target = diagonal_limit(theta)
        checks.append(Check(f"diagonal-limit-{tag}", "main-theorem-proof", diag, target,
                            abs(diag[-1] - target) <= 1e-4,
                            f"limit |1 - e^(i theta)|/|1 + e^(i theta)| = {target:.12g}"))
    if report is not None:
        report.profiles["products"] = (["theta", "m", "above", "below", "diagonal"], rows)
    return checks


def verify_thin_generalization(eps_seq: Sequence[float], theta: float, label: str = "eps",
                               report: VerificationReport | None = None) -> list[Check]:
    """Rotating one point of a thin sequence by ``theta`` never shrinks distances.

    Checks ``d(1 - e_n, 1 - e_m e^{i theta}) >= d(1 - e_n, 1 - e_m) - 1e-12``
    for every pair ``n != m`` and compares the rotated thinness products with
    the sequence's own.
    """
    eps = np.asarray(eps_seq, dtype=float)
    if np.any(eps <= 0) or np.any(np.diff(eps) >= 0):
        raise ValueError("epsilon sequence must be positive and strictly decreasing")
    if not 0 < abs(theta) < math.pi / 2:
        raise DomainError("need 0 < |theta| < pi/2")
    rot = complex(math.cos(theta), math.sin(theta))
    n = len(eps)
    worst = math.inf
    own = np.ones(n)
    rotated = np.ones(n)
    for m in range(n):
        for k in range(n):
            if k == m:
                continue
            d_rot = pseudo_distance_deviation(eps[k], eps[m] * rot)
            d_own = pseudo_distance_deviation(eps[k], eps[m])
            worst = min(worst, d_rot - d_own)
            rotated[m] *= d_rot
            own[m] *= d_own
    name = f"thin-general-{label}-{theta:.4f}"
    checks = [
        Check(f"{name}-pairs", "thin-generalization", [worst], -1e-12, worst >= -1e-12,
              "min over pairs of d(rotated) - d(unrotated)"),
        Check(f"{name}-products", "thin-generalization", rotated.tolist(), own.tolist(),
              bool(np.all(rotated >= own - 1e-12)),
              f"rotated products (last {rotated[-1]:.6g}) dominate the sequence's own "
              f"(last {own[-1]:.6g})"),
    ]
    if report is not None:
        report.profiles[name] = (["m", "eps", "own_product", "rotated_product"],
                                 [(m + 1, eps[m], own[m], rotated[m]) for m in range(n)])
    return checks


def circle_min_modulus(B, radius: float, nodes: int = 16_384) -> float:
    """Smallest sampled ``|B|`` on ``|z| = radius``."""
    t = np.linspace(0.0, 2 * math.pi, nodes, endpoint=False)
    return float(np.abs(B.eval(radius * np.exp(1j * t))).min())


def sample_segment_targets(B: BlaschkeProduct, count: int, seed: int = 0,
                           s_min: float = 1e-6, bound: float | None = None,
                           max_draws: int = 100_000) -> np.ndarray:
    """Nonzero values ``w = B(t)`` at seeded ``t`` with ``1 - t`` log-uniform in ``[s_min, 1]``.

    With ``bound`` only targets with ``|w| < bound`` are kept (rejection
    sampling).
    """
    rng = np.random.default_rng(seed)
    out: list[complex] = []
    drawn = 0
    while len(out) < count:
        if drawn >= max_draws:
            raise RuntimeError(f"only {len(out)} admissible targets in {max_draws} draws")
        s = 10.0 ** rng.uniform(math.log10(s_min), 0.0, size=256)
        drawn += s.size
        w = np.atleast_1d(B.eval(BoundaryDeviation(s)))
        keep = w != 0
        if bound is not None:
            keep &= np.abs(w) < bound
        out.extend(complex(v) for v in w[keep])
    return np.asarray(out[:count])


def rouche_bound(B, radii: Sequence[float], safety: float = 0.9) -> float:
    """A level below ``min |B|`` on every circle of the ladder.

    For ``|w|`` under this level ``B - w`` has as many zeros as ``B`` inside
    each circle, so the ladder counts follow the zeros of ``B``.
    """
    return safety * min(circle_min_modulus(B, r) for r in radii)


def truncated_product(cx: Counterexample, n_max: int = 12) -> BlaschkeProduct:
    return BlaschkeProduct(cx.B.zeros.truncated(n_max))


def finite_preimage_report(cx: Counterexample, w_samples: Sequence[complex],
                   radii: Sequence[float] = (0.9, 0.99, 0.999), n_max: int = 12,
                   max_preimages: int = 4,
                   report: VerificationReport | None = None) -> list[Check]:
    """Finitely many segment preimages, growing zero counts on larger disks."""
    Bt = truncated_product(cx, n_max)
    seg_counts, hits, growth_ok, rows = [], [], [], []
    for i, w in enumerate(w_samples):
        w = complex(w)
        if w == 0:
            raise DomainError("sample targets must be nonzero")
        seg = segment_preimage_count(Bt, w)
        disk = [count_zeros_argument_principle(Bt, w, r) for r in radii]
        seg_counts.append(seg)
        hits.append(seg >= 1)
        growth_ok.append(all(x < y for x, y in zip(disk, disk[1:])))
        rows.append((i, w.real, w.imag, seg, *disk))
    disk_counts = [list(r[4:]) for r in rows]
    checks = [
        Check("finite-preimages-segment-counts", "finite-preimage-lemma", seg_counts, max_preimages,
              bool(seg_counts) and max(seg_counts) <= max_preimages and all(hits),
              f"observed maximum {max(seg_counts) if seg_counts else 'n/a'} solutions of "
              f"B(t) = w on [0, 1)"),
        Check("finite-preimages-disk-growth", "finite-preimage-lemma", disk_counts, list(radii),
              bool(growth_ok) and all(growth_ok),
              "evidence, not proof: zero counts of B - w strictly increase with the radius"),
    ]
    if report is not None:
        report.profiles["finite_preimages"] = (
            ["sample", "w_re", "w_im", "segment_count"] + [f"disk_{r:g}" for r in radii], rows)
    return checks


def in_upper_left_sector(a: complex) -> bool:
    ang = math.atan2(a.imag, a.real)
    return math.pi / 2 < ang < math.pi and abs(a) < 1


def sector_variant_report(a_list: Sequence[complex], n_max: int = 20, radius: float = 0.995,
                     grid_points: int = 10_000, tol: float = 1e-12) -> list[Check]:
    """Replace the single Mobius factor by ``B1 = prod phi_{a_j}`` with ``a_j`` in the upper-left sector.

    Checks that ``arg B1`` increases strictly on ``[0, 1]`` and that the
    variant ``phi`` has exactly ``len(a_list)`` zeros, all at ``g(a_j)``.
    """
    a_list = [complex(a) for a in a_list]
    if not a_list:
        raise ValueError("need at least one zero")
    for a in a_list:
        if not in_upper_left_sector(a):
            raise DomainError(f"{a} is not in the sector pi/2 < arg w < pi of the disk")
    t = np.linspace(0.0, 1.0, grid_points)

    def b1(x):
        out = np.ones_like(np.asarray(x, dtype=complex))
        for a in a_list:
            out = out * mobius(a, x)
        return out

    args = [np.unwrap(np.angle(mobius(a, t))) for a in a_list] + [np.unwrap(np.angle(b1(t)))]
    min_steps = [float(np.diff(arg).min()) for arg in args]
    targets = np.linspace(args[-1][0], args[-1][-1], 7)[1:-1]
    attain = [arg_attainment_count(b1, float(tg), t) for tg in targets]

    devs = [1.0 - a for a in a_list] + [inv_factorial(n) for n in range(2, n_max + 1)]
    B = BlaschkeProduct(ZeroSequence(np.asarray(devs, dtype=complex), "factorial", n_max + 1), tol)
    count = count_zeros_argument_principle(_PhiMinus(B), 0.0, radius)
    images = [complex(g(a)) for a in a_list]
    return [
        Check("sector-variant-arg-increasing", "sector-variant", min_steps, 0.0,
              all(s > 0 for s in min_steps),
              "smallest grid increment of arg phi_{a_j}(t) per factor, then of arg B1"),
        Check("sector-variant-arg-attainment", "sector-variant", attain, 1, max(attain) <= 1),
        Check("sector-variant-zero-count", "sector-variant", [count], len(a_list),
              count == len(a_list) and all(abs(z) < radius for z in images),
              f"zeros expected at g(a_j) = {', '.join(f'{z:.6g}' for z in images)}"),
    ]
