"""Blaschke products with zeros accumulating at the boundary point 1.

Zeros are stored by their deviation ``1 - z_n`` so that the factorial zeros
``1 - 1/n!`` remain exact far below machine epsilon. An infinite sequence is
a finite head plus a closed-form tail rule; evaluation pulls tail zeros from
the rule until a certified bound on the discarded factors meets the requested
tolerance.

Truncation certificate
----------------------
For a normalized factor ``b_n(z) = (|z_n|/z_n) (z_n - z) / (1 - conj(z_n) z)``

    1 - b_n(z) = (1 - |z_n|) (1 + z |z_n| / z_n) / (1 - conj(z_n) z),

so ``|1 - b_n(z)| <= C(z) (1 - |z_n|)`` with ``C(z) = (1 + |z|) / (1 - |z|)``
(absolute constant 1). Writing the discarded product as ``prod (1 + u_n)``
with ``|u_n| <= C(z)(1 - |z_n|)`` gives

    |prod_{n > N} b_n(z) - 1| <= exp(C(z) * sum_{n > N} (1 - |z_n|)) - 1.

Because every factor has modulus below one, the absolute error of the
truncated product is bounded by the same quantity.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Sequence

import numpy as np
from scipy.optimize import brentq

from .hyperbolic import (
    BoundaryDeviation,
    DomainError,
    defect,
    deviation_from,
    normalized_arg,
    one_minus_modulus,
    pseudo_distance_deviation,
)

TAIL_RULES = ("factorial", "geometric")

#: hard cap on generated tail zeros
MAX_FACTORS = 4096

#: a segment solution of B(t) = w is accepted when |B(t) - w| falls below this
MATCH_THRESHOLD = 1e-8

#: factors within this distance of 1 end the infinite products below
PRODUCT_CUTOFF = 1e-18


class TruncationError(RuntimeError):
    """The certified tail bound cannot reach the requested tolerance."""


class PoleError(ZeroDivisionError):
    """Evaluation point coincides with a zero of the product."""


class ContourError(RuntimeError):
    """A solution lies too close to the integration contour."""


class QuadratureError(RuntimeError):
    """Argument-principle quadrature failed to settle on an integer."""


class ResolutionWarning(UserWarning):
    """Two candidate roots are closer than the sampling grid resolves."""


class IntervalAttainmentWarning(UserWarning):
    """The argument is constant and equals the target on the whole segment."""


def inv_factorial(n: int) -> float:
    """Correctly rounded ``1/n!`` (subnormal, then 0, for large ``n``)."""
    if n <= 170:
        return 1.0 / math.factorial(n)
    if n > 200:
        return 0.0
    return float(Fraction(1, math.factorial(n)))


@dataclass(frozen=True, eq=False)
class ZeroSequence:
    """Finite head of zeros plus an optional generator rule for the tail.

    Positions are 1-based. Zero ``n`` for ``n <= len(head)`` is a listed
    zero; later positions come from the rule, whose first generated index is
    ``tail_start`` (the factorial rule yields ``1 - 1/i!`` for rule index
    ``i``, the geometric rule ``1 - r**i``).
    """

    head_deviations: np.ndarray
    tail_rule: str | None = None
    tail_start: int = 0
    tail_ratio: float = 0.0

    def __post_init__(self):
        devs = np.atleast_1d(np.asarray(self.head_deviations, dtype=complex))
        if devs.size and np.any(~(one_minus_modulus(devs) > 0)):
            raise DomainError("every zero must lie in the open unit disk")
        object.__setattr__(self, "head_deviations", devs)
        if self.tail_rule is not None:
            if self.tail_rule not in TAIL_RULES:
                raise ValueError(f"unknown tail rule {self.tail_rule!r}")
            if self.tail_start < 0:
                raise ValueError("tail_start must be nonnegative")
            if self.tail_rule == "geometric" and not 0 < self.tail_ratio < 1:
                raise ValueError("geometric tail needs a ratio in (0, 1)")

    @classmethod
    def from_zeros(cls, zeros: Sequence[complex], **tail) -> "ZeroSequence":
        return cls(1.0 - np.asarray(zeros, dtype=complex), **tail)

    @property
    def head(self) -> np.ndarray:
        return 1.0 - self.head_deviations

    @property
    def head_length(self) -> int:
        return len(self.head_deviations)

    @property
    def is_finite(self) -> bool:
        return self.tail_rule is None

    def _rule(self, i: int) -> float:
        if self.tail_rule == "factorial":
            return inv_factorial(i)
        return self.tail_ratio**i

    def deviations(self, count: int) -> np.ndarray:
        """Deviations ``1 - z_n`` of the first ``count`` zeros."""
        if count <= self.head_length:
            return self.head_deviations[:count]
        if self.is_finite:
            raise IndexError(f"sequence has only {self.head_length} zeros")
        extra = [self._rule(self.tail_start + j) for j in range(count - self.head_length)]
        return np.concatenate([self.head_deviations, np.asarray(extra, dtype=complex)])

    def deviation(self, n: int) -> complex:
        if n < 1:
            raise IndexError("positions start at 1")
        return complex(self.deviations(n)[n - 1])

    def defects(self, count: int) -> np.ndarray:
        """``1 - |z_n|`` for the first ``count`` zeros."""
        return one_minus_modulus(self.deviations(count))

    def tail_bound(self, count: int) -> float:
        """Upper bound on ``sum(1 - |z_n|)`` over positions after ``count``."""
        head_rest = 0.0
        if count < self.head_length:
            head_rest = float(np.sum(one_minus_modulus(self.head_deviations[count:])))
            count = self.head_length
        if self.is_finite:
            return head_rest
        i0 = self.tail_start + count - self.head_length
        if self.tail_rule == "factorial":
            if i0 == 0:
                return head_rest + math.e
            return head_rest + inv_factorial(i0) * (i0 + 1) / i0
        r = self.tail_ratio
        return head_rest + r**i0 / (1.0 - r)

    def truncated(self, count: int) -> "ZeroSequence":
        """Finite sequence made of the first ``count`` zeros."""
        return ZeroSequence(self.deviations(count))

    # text format: one zero per line "re im", or "dev re im" for a zero given
    # by its deviation 1 - z; optional header "tail <rule> <start> [ratio]"
    def dumps(self) -> str:
        lines = []
        if self.tail_rule == "factorial":
            lines.append(f"tail factorial {self.tail_start}")
        elif self.tail_rule == "geometric":
            lines.append(f"tail geometric {self.tail_start} {self.tail_ratio!r}")
        for dev in self.head_deviations:
            dev = complex(dev)
            z = 1.0 - dev
            if 1.0 - z == dev:
                lines.append(f"{z.real!r} {z.imag!r}")
            else:
                lines.append(f"dev {dev.real!r} {dev.imag!r}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "ZeroSequence":
        devs = []
        tail = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            try:
                if parts[0] == "tail":
                    if tail:
                        raise ValueError("duplicate tail header")
                    tail = {"tail_rule": parts[1], "tail_start": int(parts[2])}
                    if parts[1] == "geometric":
                        tail["tail_ratio"] = float(parts[3])
                elif parts[0] == "dev":
                    devs.append(complex(float(parts[1]), float(parts[2])))
                else:
                    re, im = float(parts[0]), float(parts[1])
                    devs.append(1.0 - complex(re, im))
            except (IndexError, ValueError) as exc:
                raise ValueError(f"line {lineno}: cannot parse {raw!r}") from exc
        return cls(np.asarray(devs, dtype=complex), **tail)


def factorial_zeros(a: complex, n_max: int) -> ZeroSequence:
    """Zeros ``a, 1 - 1/2!, ..., 1 - 1/n_max!`` with the factorial tail beyond.

    Position ``n >= 2`` holds ``1 - 1/n!``; position 1 holds ``a``.
    """
    a = complex(a)
    if not abs(a) < 1:
        raise DomainError("a must lie in the open unit disk")
    if a.imag == 0:
        raise DomainError("a must not be real")
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    devs = [1.0 - a] + [inv_factorial(n) for n in range(2, n_max + 1)]
    return ZeroSequence(np.asarray(devs, dtype=complex), "factorial", n_max + 1)


def blaschke_condition_partial(zeros: ZeroSequence, N: int) -> float:
    """Partial sum ``sum_{n <= N} (1 - |z_n|)``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    if zeros.is_finite:
        N = min(N, zeros.head_length)
    if N == 0:
        return 0.0
    return float(np.sum(zeros.defects(N)))


def _factor_terms(dev_n, delta):
    """Numerator, denominator and unimodular constant of one factor.

    With ``z_n = 1 - dev_n`` and ``z = 1 - delta``:
    ``z_n - z = delta - dev_n`` and
    ``1 - conj(z_n) z = conj(dev_n) + delta - conj(dev_n) delta``.
    """
    num = delta - dev_n
    den = np.conj(dev_n) + delta - np.conj(dev_n) * delta
    zn = 1.0 - dev_n
    # conj(z_n)/|z_n| from the angle; dividing by a subnormal |z_n| overflows
    phase = np.exp(-1j * np.angle(zn))
    return num, den, phase


class BlaschkeProduct:
    """Blaschke product over a :class:`ZeroSequence`.

    Factors are normalized as ``(|z_n|/z_n)(z_n - z)/(1 - conj(z_n) z)``; a
    zero at the origin contributes ``z``. Points may be plain complex values
    (scalars or arrays) or :class:`BoundaryDeviation` objects.
    """

    def __init__(self, zeros: ZeroSequence, truncation_tolerance: float = 1e-12):
        if not truncation_tolerance > 0:
            raise ValueError("truncation tolerance must be positive")
        self.zeros = zeros
        self.truncation_tolerance = truncation_tolerance

    def __repr__(self):
        kind = "finite" if self.zeros.is_finite else f"{self.zeros.tail_rule} tail"
        return f"BlaschkeProduct({self.zeros.head_length} listed zeros, {kind})"

    @staticmethod
    def _deviations(z):
        if np.any(~(defect(z) > 0)):
            raise DomainError("evaluation point outside the open unit disk")
        return np.asarray(deviation_from(z), dtype=complex)

    def truncation_order(self, z, tol: float | None = None) -> int:
        """Number of factors needed so the certified tail error is ``<= tol``."""
        tol = self.truncation_tolerance if tol is None else tol
        if not tol > 0:
            raise ValueError("tol must be positive")
        seq = self.zeros
        if seq.is_finite:
            return seq.head_length
        self._deviations(z)
        margin = defect(z)
        c = float(np.max((2.0 - margin) / margin))
        budget = math.log1p(tol) / c
        if not budget > 0:
            raise TruncationError(f"error budget underflows (tol={tol:g}, C(z)={c:.3g})")
        n = seq.head_length
        while seq.tail_bound(n) > budget:
            n += 1
            if n > seq.head_length + MAX_FACTORS:
                raise TruncationError(
                    f"tail bound cannot reach tol={tol:g} (C(z)={c:.3g})"
                )
        return n

    def eval(self, z, tol: float | None = None):
        """Value of the product at ``z``, truncated with certified error ``tol``."""
        delta = self._deviations(z)
        n = self.truncation_order(z, tol)
        out = np.ones_like(delta)
        for dev_n in self.zeros.deviations(n):
            if dev_n == 1.0:
                out = out * (1.0 - delta)
                continue
            num, den, phase = _factor_terms(dev_n, delta)
            out = out * (phase * num / den)
        return out.item() if out.ndim == 0 else out

    __call__ = eval

    def log_derivative(self, z, tol: float | None = None):
        """``B'(z)/B(z) = sum (|z_n|^2 - 1) / ((z_n - z)(1 - conj(z_n) z))``."""
        delta = self._deviations(z)
        n = self.truncation_order(z, tol)
        out = np.zeros_like(delta)
        for dev_n in self.zeros.deviations(n):
            if np.any(delta == dev_n):
                raise PoleError("point coincides with a zero of the product")
            if dev_n == 1.0:
                out = out + 1.0 / (1.0 - delta)
                continue
            num, den, _ = _factor_terms(dev_n, delta)
            gap = one_minus_modulus(dev_n)
            # |z_n|^2 - 1 = -(1 - |z_n|)(1 + |z_n|) and num = z_n - z
            out = out - gap * (2.0 - gap) / (num * den)
        return out.item() if out.ndim == 0 else out

    def derivative(self, z, tol: float | None = None):
        return self.eval(z, tol) * self.log_derivative(z, tol)


# -- thinness ---------------------------------------------------------------


def thin_delta(zeros: ZeroSequence, k: int, window: int) -> float:
    """``prod_{j != k, j <= window} d(z_k, z_j)`` using deviation-form distances.

    Factors beyond ``window`` are omitted; each is at most 1, so the result
    is an upper estimate of the full product and converges to it as the
    window grows.
    """
    if not 1 <= k <= window:
        raise IndexError(f"need 1 <= k <= window, got k={k}, window={window}")
    if zeros.is_finite and window > zeros.head_length:
        raise IndexError(f"window {window} exceeds the {zeros.head_length} zeros")
    devs = zeros.deviations(window)
    others = np.delete(devs, k - 1)
    if others.size == 0:
        return 1.0
    return float(np.prod(pseudo_distance_deviation(devs[k - 1], others)))


def ratio_sequence(zeros: ZeroSequence, N: int) -> np.ndarray:
    """Ratios ``c_n = (1 - |z_n|) / (1 - |z_{n-1}|)`` for ``n = 2..N``.

    Element ``i`` of the result is ``c_{i+2}``.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    defects = zeros.defects(N)
    return defects[1:] / defects[:-1]


def hoffman_bound(c: float) -> float:
    """Lower bound ``(prod_{j >= 1} (1 - c^j)/(1 + c^j))^2`` for thin products.

    Factors are multiplied until ``c^j`` drops below :data:`PRODUCT_CUTOFF`;
    the omitted factors are at least ``1 - 2 sum_{j > J} c^j``, and that
    correction is applied so the result stays a lower bound.
    """
    if not 0 < c < 1:
        raise DomainError("ratio bound c must lie in (0, 1)")
    prod = 1.0
    p = c
    while p >= PRODUCT_CUTOFF:
        prod *= (1.0 - p) / (1.0 + p)
        p *= c
    prod *= 1.0 - 2.0 * p / (1.0 - c)
    return prod * prod


def thin_lower_bound(zeros: ZeroSequence, k: int, m: int, c: float | None = None,
                     window: int = 60) -> float:
    """Two-part lower bound for the thinness product at ``z_k``, ``k > m``.

    The zeros at positions ``<= m`` contribute their exact distances; the
    rest are bounded by ``hoffman_bound(c)`` where ``c`` bounds every ratio
    of consecutive defects from position ``m + 2`` on. When ``c`` is omitted
    it is the largest such ratio up to ``window``, which is valid for rules
    with eventually nonincreasing ratios (factorial, geometric).
    """
    if not 1 <= m < k:
        raise ValueError("need 1 <= m < k")
    devs = zeros.deviations(m)
    prefix = float(np.prod(pseudo_distance_deviation(zeros.deviation(k), devs)))
    if c is None:
        c = float(np.max(ratio_sequence(zeros, window)[m:]))
    return prefix * hoffman_bound(c)


# -- estimates along the slit angle -----------------------------------------


def slit_constant_c() -> float:
    """``prod_{k >= 2} (1 - 1/k!)/(1 + 1/k!)`` with a certified tail correction."""
    prod = 1.0
    k = 2
    while inv_factorial(k) >= PRODUCT_CUTOFF:
        e = inv_factorial(k)
        prod *= (1.0 - e) / (1.0 + e)
        k += 1
    prod *= 1.0 - 2.0 * inv_factorial(k) * (k + 1) / k
    return prod


def diagonal_limit(theta: float) -> float:
    """``|1 - e^{i theta}| / |1 + e^{i theta}| = |tan(theta/2)|``."""
    return abs(math.tan(theta / 2.0))


class SlitProducts(NamedTuple):
    above: float
    below: float
    diagonal: float


def slit_partial_products(m: int, theta: float,
                          eps: Callable[[int], float] = inv_factorial,
                          n_min: int = 2) -> SlitProducts:
    """Split ``prod_n d(1 - eps(n), 1 - eps(m) e^{i theta})`` around ``n = m``.

    Returns the products over ``n > m`` and ``n_min <= n < m`` and the
    diagonal factor ``n = m``. The upper product stops once
    ``eps(n)/eps(m)`` falls below :data:`PRODUCT_CUTOFF`.
    """
    if m < n_min:
        raise ValueError("m must be at least n_min")
    point = eps(m) * complex(math.cos(theta), math.sin(theta))
    below = 1.0
    for n in range(n_min, m):
        below *= pseudo_distance_deviation(eps(n), point)
    above = 1.0
    n = m + 1
    while eps(n) / eps(m) >= PRODUCT_CUTOFF:
        above *= pseudo_distance_deviation(eps(n), point)
        n += 1
    diagonal = pseudo_distance_deviation(eps(m), point)
    return SlitProducts(float(above), float(below), float(diagonal))


def slit_angle_floor(B: BlaschkeProduct, theta1: float, m_range: Sequence[int]) -> float:
    """``min_m |B(1 - (1/m!) e^{i theta1})|`` evaluated in deviation form."""
    if not 0 < abs(theta1) < math.pi / 2:
        raise DomainError("theta1 must satisfy 0 < |theta1| < pi/2")
    rot = complex(math.cos(theta1), math.sin(theta1))
    devs = np.asarray([inv_factorial(m) * rot for m in m_range], dtype=complex)
    return float(np.min(np.abs(B.eval(BoundaryDeviation(devs)))))


# -- counting ---------------------------------------------------------------


def segment_grid(B: BlaschkeProduct, points: int = 10_000,
                 s_min: float | None = None) -> np.ndarray:
    """Sample deviations ``s = 1 - t`` covering ``t`` in ``[0, 1 - s_min]``.

    Forty percent of the points are uniform in ``t`` on ``[0, 0.9]``, the
    rest log-uniform in ``s`` on ``[s_min, 0.1]``. For a finite product
    ``s_min`` defaults to half the smallest real positive zero deviation, so
    every retained zero on ``[0, 1)`` is inside the grid.
    """
    if s_min is None:
        devs = B.zeros.head_deviations
        real = devs[(devs.imag == 0) & (devs.real > 0) & (devs.real < 1)].real
        s_min = 0.5 * float(real.min()) if (B.zeros.is_finite and real.size) else 1e-12
    n_lin = int(0.4 * points)
    t = np.linspace(0.0, 0.9, n_lin, endpoint=False)
    s_log = np.logspace(-1.0, math.log10(s_min), points - n_lin)
    return np.concatenate([1.0 - t, s_log])


def _phase_drift(devs: np.ndarray, s) -> np.ndarray:
    """``arg P(1 - s) - arg P(1)`` for the factors with deviations ``devs``.

    Each factor contributes ``arg(1 - s/d) - arg(1 + conj(1 - d) s/conj(d))``
    with ``d = 1 - a``, taken as ``atan2(Im x, 1 + Re x)`` so the terms keep
    their relative accuracy when ``s`` is tiny. Along the radius the first
    order terms cancel, so the drift is ``O(s^2)`` near ``t = 1``.
    """
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    for d in devs:
        x1 = -s / d
        x2 = np.conj(1.0 - d) * s / np.conj(d)
        out = out + np.arctan2(x1.imag, 1.0 + x1.real) - np.arctan2(x2.imag, 1.0 + x2.real)
    return out


def segment_preimage_count(B: BlaschkeProduct, w: complex,
                           grid: np.ndarray | None = None) -> int:
    """Number of ``t`` in ``[0, 1)`` with ``B(t) = w``.

    ``grid`` holds deviations ``s = 1 - t`` (decreasing). ``B = P R`` where
    ``P`` collects the factors with non-real zeros and ``R`` is real on the
    segment, so a solution needs ``arg P(t) = arg w (mod pi)``. The phase
    condition is solved first (sign changes of ``sin(arg P - arg w)`` on the
    grid, refined by Brent's method in ``log s``) and a phase root counts
    when ``|B(t) - w| < MATCH_THRESHOLD`` there.

    Testing ``|B(t) - w|`` alone overcounts: near ``t = 1`` the curve ``B(t)``
    sweeps back and forth along almost the same line and passes within
    ``1e-12 |w|`` of ``w`` without meeting it. For ``w = 0`` the count is the
    number of real zeros on ``[0, 1)`` inside the grid range.
    """
    w = complex(w)
    s = segment_grid(B) if grid is None else np.asarray(grid, dtype=float)
    if np.any(s <= 0) or np.any(s > 1):
        raise DomainError("grid deviations must lie in (0, 1]")
    seq = B.zeros
    if w == 0:
        return _segment_zero_count(seq, float(s.min()))

    head = seq.head_deviations
    complex_devs = head[head.imag != 0]
    if complex_devs.size:
        p_one = 1.0 + 0j
        for d in complex_devs:
            zn = 1.0 - d
            p_one *= (np.conj(zn) / abs(zn)) * (-d / np.conj(d))
        alpha = float(np.angle(w * np.conj(p_one)))

        def phase(sv):
            return np.sin(_phase_drift(complex_devs, sv) - alpha)
    else:
        # B is real on the segment
        if abs(w.imag) > 1e-15 * abs(w):
            return 0

        def phase(sv):
            return np.asarray(B.eval(BoundaryDeviation(sv))).real - w.real

    def value(sv):
        return B.eval(BoundaryDeviation(sv))

    x = np.log(s)
    f = phase(s)
    phase_roots = s[f == 0].tolist()
    for i in np.nonzero(f[:-1] * f[1:] < 0)[0]:
        root = brentq(lambda xv: float(phase(math.exp(xv))), x[i], x[i + 1],
                      xtol=1e-15, rtol=4 * np.finfo(float).eps)
        phase_roots.append(math.exp(root))
    roots = [_refine_on_modulus(value, w, r, phase) for r in phase_roots]

    matches = sorted({r for r in roots if abs(value(r) - w) < MATCH_THRESHOLD}, reverse=True)
    distinct = []
    for r in matches:
        if distinct and abs(r - distinct[-1]) <= 1e-12 * r:
            continue
        distinct.append(r)
    spacing = np.abs(np.diff(s))
    for r0, r1 in zip(distinct, distinct[1:]):
        i = min(int(np.searchsorted(-s, -r0)), len(spacing) - 1)
        if abs(r0 - r1) < spacing[i]:
            warnings.warn(f"roots at t={1 - r0:.17g} and t={1 - r1:.17g} share a grid cell",
                          ResolutionWarning, stacklevel=2)
    return len(distinct)


def _refine_on_modulus(value: Callable, w: complex, s_star: float, phase: Callable,
                       spread: float = 10.0) -> float:
    """Move a phase root onto the matching point of the real equation.

    The phase drift is flat near ``t = 1`` so ``s_star`` is only known to
    ``eps / |phase'(s_star)|``. Inside that window the equation
    ``Re(conj(w) B) = |w|^2`` has a steep, well conditioned root, which is
    returned when it exists; otherwise ``s_star`` itself.
    """
    h = 1e-3 * s_star
    slope = abs(float(phase(s_star + h)) - float(phase(s_star - h))) / (2 * h)
    width = spread * 4 * np.finfo(float).eps / slope if slope > 0 else s_star
    width = max(width, 1e-12 * s_star)
    lo, hi = max(s_star - width, 0.5 * s_star), min(s_star + width, 1.0)
    unit = w / abs(w)

    def real_gap(sv):
        return float((np.conj(unit) * value(sv)).real) - abs(w)

    g_lo, g_hi = real_gap(lo), real_gap(hi)
    if g_lo == 0:
        return lo
    if g_hi == 0:
        return hi
    if g_lo * g_hi > 0:
        return s_star
    return brentq(real_gap, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps)


def _segment_zero_count(seq: ZeroSequence, s_min: float) -> int:
    """Zeros of the sequence on ``[0, 1)`` with deviation at least ``s_min``."""
    head = seq.head_deviations
    count = int(np.sum((head.imag == 0) & (head.real > 0) & (head.real <= 1) & (head.real >= s_min)))
    if seq.is_finite:
        return count
    n = seq.head_length + 1
    while n <= seq.head_length + MAX_FACTORS:
        d = seq.deviation(n)
        if d.real < s_min:
            break
        count += int(d.imag == 0 and 0 < d.real <= 1)
        n += 1
    return count


def arg_attainment_count(f: Callable, target_arg: float, grid) -> int:
    """How often ``arg f(t)`` attains ``target_arg`` (mod 2*pi) on ``grid``.

    The sampled argument is unwrapped, and each crossing of a level
    ``target_arg + 2*pi*k`` counts once (a level hit exactly at a sample
    counts once too). If the argument is constant and equal to the target,
    an :class:`IntervalAttainmentWarning` is issued and the saturated count
    ``len(grid)`` is returned.
    """
    grid = np.asarray(grid, dtype=float)
    vals = np.asarray(f(grid), dtype=complex)
    if np.any(np.abs(vals) == 0):
        raise DomainError("f vanishes on the sampled segment")
    theta = np.unwrap(normalized_arg(vals))
    target = float(normalized_arg(complex(math.cos(target_arg), math.sin(target_arg))))
    atol = 1e-12

    if np.ptp(theta) <= atol:
        level = theta[0] - target
        if abs(level - 2 * math.pi * round(level / (2 * math.pi))) <= atol:
            warnings.warn("argument constant and equal to target", IntervalAttainmentWarning,
                          stacklevel=2)
            return len(grid)
        return 0

    k = np.round((theta - target) / (2 * math.pi))
    on_level = np.abs(theta - target - 2 * math.pi * k) <= atol
    count = int(np.sum(on_level))
    lo = np.minimum(theta[:-1], theta[1:])
    hi = np.maximum(theta[:-1], theta[1:])
    # levels strictly inside each segment, excluding endpoints already counted
    k_lo = np.floor((lo - target + atol) / (2 * math.pi)) + 1
    k_hi = np.ceil((hi - target - atol) / (2 * math.pi)) - 1
    count += int(np.sum(np.maximum(k_hi - k_lo + 1, 0)))
    return count


def count_zeros_argument_principle(B, w: complex, radius: float, nodes: int = 256,
                                   max_nodes: int = 2**20, margin: float = 1e-9) -> int:
    """Zeros of ``B - w`` inside ``|z| = radius`` by the argument principle.

    Trapezoidal quadrature of ``(1/2 pi i) \\oint B'/(B - w) dz`` with the node
    count doubled until two successive values agree to 0.01. ``B`` needs
    ``eval`` and ``log_derivative`` methods.
    """
    w = complex(w)
    if not abs(w) < 1:
        raise DomainError("w must lie in the open unit disk")
    if not 0 < radius < 1:
        raise DomainError("radius must lie in (0, 1)")
    prev = None
    n = nodes
    while n <= max_nodes:
        z = radius * np.exp(2j * math.pi * np.arange(n) / n)
        bz = B.eval(z)
        gap = np.abs(bz - w)
        if gap.min() < margin:
            raise ContourError(f"|B - w| = {gap.min():.3g} on the contour")
        val = complex(np.mean(bz * B.log_derivative(z) * z / (bz - w)))
        if prev is not None and abs(val - prev) < 0.01:
            break
        prev = val
        n *= 2
    else:
        raise QuadratureError(f"no convergence with {max_nodes} nodes")
    count = round(val.real)
    if abs(val.real - count) > 0.1 or abs(val.imag) > 0.1:
        raise QuadratureError(f"winding value {val:.4g} is not near an integer")
    return int(count)
