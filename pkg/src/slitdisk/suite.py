"""Check groups behind ``slitdisk verify``.

Each group function takes a :class:`Context` and returns a
:class:`VerificationReport` holding its checks and the tables that go to
CSV. ``run_group("all", ...)`` merges every group.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property

import numpy as np

from .blaschke import (
    ZeroSequence,
    factorial_zeros,
    hoffman_bound,
    inv_factorial,
    slit_angle_floor,
    slit_constant_c,
    thin_delta,
    thin_lower_bound,
)
from .config import RunConfig
from .counterexample import (
    Check,
    Counterexample,
    VerificationReport,
    build,
    finite_preimage_report,
    locate_zero,
    phi_eval,
    phi_zero_count,
    sector_variant_report,
    rouche_bound,
    sample_segment_targets,
    truncated_product,
    verify_nontangential_floor,
    verify_partial_products,
    verify_thin_generalization,
)
from .hyperbolic import BoundaryDeviation, mobius, pseudo_distance, pseudo_distance_deviation
from .innerfn import SingularInner, radial_real_part, stolz_bound
from .slitmap import (
    boundary_preimages,
    boundary_trace,
    g,
    h,
    on_slit,
    radial_limit,
    select_closed_form_ratio,
)


class Context:
    """Resolved config plus the lazily built construction shared by groups."""

    def __init__(self, config: RunConfig | None = None):
        self.config = config or RunConfig()

    @cached_property
    def cx(self) -> Counterexample:
        c = self.config.construction
        return build(c.a, c.n_max, c.tol)

    def rng(self, stream: int) -> np.random.Generator:
        # one independent stream per group keeps groups order-independent
        return np.random.default_rng([self.config.run.seed, stream])


# -- metric ----------------------------------------------------------------------


def _exact_distance(d1: complex, d2: complex) -> float:
    """Plain-form distance between ``1 - d1`` and ``1 - d2`` in rational arithmetic."""
    zr, zi = 1 - Fraction(d1.real), -Fraction(d1.imag)
    wr, wi = 1 - Fraction(d2.real), -Fraction(d2.imag)
    num = (zr - wr) ** 2 + (zi - wi) ** 2
    # 1 - conj(z) w
    dr = 1 - (zr * wr + zi * wi)
    di = -(zr * wi - zi * wr)
    return math.sqrt(num / (dr * dr + di * di))


def group_metric(ctx: Context) -> VerificationReport:
    cfg = ctx.config.metric
    rng = ctx.rng(1)
    rep = VerificationReport()

    def disk(n):
        r = np.sqrt(rng.uniform(0, 0.99**2, n))
        return r * np.exp(1j * rng.uniform(0, 2 * math.pi, n))

    def invariance():
        z, w, c = disk(cfg.triples), disk(cfg.triples), disk(cfg.triples)
        base = pseudo_distance(z, w)
        moved = np.array([pseudo_distance(mobius(ci, zi), mobius(ci, wi))
                          for ci, zi, wi in zip(c, z, w)])
        err = float(np.max(np.abs(moved - base)))
        return Check("metric-mobius-invariance", "thinness-criterion", [err],
                     cfg.invariance_tol, err <= cfg.invariance_tol,
                     f"{cfg.triples} random triples")

    def deviation_agreement():
        n = cfg.deviation_samples
        mags = 10.0 ** rng.uniform(-8, -1, (2, n))
        angs = rng.uniform(-1.2, 1.2, (2, n))
        d = mags * np.exp(1j * angs)
        fast = pseudo_distance_deviation(d[0], d[1])
        exact = np.array([_exact_distance(complex(a), complex(b)) for a, b in zip(d[0], d[1])])
        rel = float(np.max(np.abs(fast - exact) / exact))
        return Check("metric-deviation-form", "thinness-criterion", [rel],
                     cfg.deviation_rel_tol, rel <= cfg.deviation_rel_tol,
                     "deviation form against exact rational arithmetic, |delta| in [1e-8, 1e-1]")

    rep.run("metric-mobius-invariance", "thinness-criterion", invariance)
    rep.run("metric-deviation-form", "thinness-criterion", deviation_agreement)
    return rep


# -- singular inner function ---------------------------------------------------


def group_singular(ctx: Context) -> VerificationReport:
    cfg = ctx.config.singular
    rep = VerificationReport()
    S1 = SingularInner.atom(1.0, 1.0)
    thetas = np.linspace(-cfg.aperture, cfg.aperture, cfg.angles)
    rows = []

    def decay():
        worst_bound, worst_real = -math.inf, 0.0
        for eps in cfg.epsilons:
            for th in thetas:
                z = complex(1 - eps * math.cos(th), -eps * math.sin(th))
                log_mod = float(np.real(S1.exponent(z)))
                expected = radial_real_part(eps, th)
                log_bound = -2 * math.cos(cfg.aperture) / eps + 1
                mod = float(abs(S1(z)))
                # in log form so that underflow to 0 cannot hide a violation
                worst_bound = max(worst_bound, log_mod - log_bound)
                worst_real = max(worst_real, abs(log_mod - expected) / abs(expected))
                rows.append((eps, th, mod, float(stolz_bound(eps, cfg.aperture)),
                             log_mod, log_bound))
        return [
            Check("singular-stolz-decay", "main-theorem-proof", [worst_bound],
                  cfg.rel_slack, worst_bound <= cfg.rel_slack,
                  "max over samples of log|S1| - (-2 cos(aperture)/eps + 1)"),
            Check("singular-real-part", "main-theorem-proof", [worst_real], cfg.rel_slack,
                  worst_real <= cfg.rel_slack,
                  "log|S1| against the closed-form real part, relative"),
        ]

    rep.run("singular-stolz-decay", "main-theorem-proof", decay)
    rep.profiles["singular"] = (["eps", "theta", "abs_s1", "bound", "log_abs_s1", "log_bound"], rows)
    return rep


# -- thinness ----------------------------------------------------------------------


def group_thin(ctx: Context) -> VerificationReport:
    cfg = ctx.config.thin
    rep = VerificationReport()
    zeros = factorial_zeros(ctx.config.construction.a, cfg.window)
    ks = list(range(cfg.k_min, cfg.k_max + 1))
    rows = []

    def deltas():
        vals = [thin_delta(zeros, k, cfg.window) for k in ks]
        bounds = [thin_lower_bound(zeros, k, k - 1, c=1.0 / k, window=cfg.window) for k in ks]
        rows.extend(zip(ks, vals, bounds))
        increasing = all(x < y for x, y in zip(vals, vals[1:]))
        pinned = [abs(vals[0] - cfg.delta_first), abs(vals[-1] - cfg.delta_last)]
        return [
            Check("thin-increasing", "thinness-criterion", vals, None,
                  increasing and vals[-1] > vals[0],
                  f"thin_delta(k) for k = {ks[0]}..{ks[-1]}, window {cfg.window}"),
            Check("thin-two-part-bound", "thinness-criterion",
                  [v - b for v, b in zip(vals, bounds)], -cfg.slack,
                  all(v >= b - cfg.slack for v, b in zip(vals, bounds)),
                  "thin_delta minus (prefix product x hoffman_bound(1/k))"),
            Check("thin-pinned-values", "thinness-criterion", pinned, cfg.pin_tol,
                  max(pinned) <= cfg.pin_tol,
                  f"k={ks[0]} and k={ks[-1]} against oracle values "
                  f"{cfg.delta_first!r}, {cfg.delta_last!r}"),
        ]

    rep.run("thin-increasing", "thinness-criterion", deltas)
    rep.profiles["thin_deltas"] = (["k", "thin_delta", "lower_bound"], rows)
    return rep


def group_hoffman(ctx: Context) -> VerificationReport:
    cfg = ctx.config.thin
    rep = VerificationReport()
    rows = []

    def pinned():
        v = hoffman_bound(cfg.hoffman_c)
        return Check("hoffman-value", "thinness-criterion", [v], cfg.hoffman_value,
                     abs(v - cfg.hoffman_value) <= cfg.hoffman_tol,
                     f"hoffman_bound({cfg.hoffman_c!r}) within {cfg.hoffman_tol:g}")

    def geometric():
        worst = []
        for c in cfg.hoffman_ratios:
            seq = ZeroSequence(np.zeros(0, dtype=complex), "geometric", 1, c)
            bound = hoffman_bound(c)
            window = cfg.hoffman_terms + 40
            vals = [thin_delta(seq, k, window) for k in range(1, cfg.hoffman_terms + 1)]
            rows.extend((c, k, v, bound) for k, v in enumerate(vals, 1))
            worst.append(min(vals) - bound)
        return Check("hoffman-geometric", "thinness-criterion", worst, -cfg.slack,
                     all(x >= -cfg.slack for x in worst),
                     f"min thin_delta - hoffman_bound(c) for c in {list(cfg.hoffman_ratios)}")

    rep.run("hoffman-value", "thinness-criterion", pinned)
    rep.run("hoffman-geometric", "thinness-criterion", geometric)
    rep.profiles["hoffman"] = (["c", "k", "thin_delta", "hoffman_bound"], rows)
    return rep


# -- slit angle estimates ---------------------------------------------------------


def _m_range(ctx: Context):
    s = ctx.config.slit
    return range(s.m_min, s.m_max + 1)


def group_slit_floor(ctx: Context) -> VerificationReport:
    cfg = ctx.config.slit
    rep = VerificationReport()
    rows = []

    def constant():
        c = slit_constant_c()
        return Check("slit-constant", "main-theorem-proof", [c], cfg.c_value,
                     abs(c - cfg.c_value) <= cfg.c_tol,
                     "prod_{k>=2} (1 - 1/k!)/(1 + 1/k!)")

    def floor():
        B = ctx.cx.B
        out = []
        for th in (cfg.theta, -cfg.theta):
            m_range = list(_m_range(ctx))
            rot = complex(math.cos(th), math.sin(th))
            for m in m_range:
                z = 1 - inv_factorial(m) * rot
                rows.append((th, m, inv_factorial(m), float(abs(B.eval(BoundaryDeviation(inv_factorial(m) * rot)))),
                             z.real, z.imag))
            v = slit_angle_floor(B, th, m_range)
            tag = "plus" if th > 0 else "minus"
            out.append(Check(f"slit-floor-{tag}", "main-theorem-proof", [v], cfg.floor,
                             v >= cfg.floor,
                             f"min |B(1 - e^(i theta)/m!)| over m = {m_range[0]}..{m_range[-1]}"))
        return out

    rep.run("slit-constant", "main-theorem-proof", constant)
    rep.run("slit-floor", "main-theorem-proof", floor)
    rep.profiles["slit_floor"] = (["theta", "m", "eps", "abs_b", "z_re", "z_im"], rows)
    return rep


def group_products(ctx: Context) -> VerificationReport:
    th = ctx.config.slit.theta
    rep = VerificationReport()
    rep.run("products", "main-theorem-proof",
            lambda: verify_partial_products(_m_range(ctx), (th, -th), report=rep))
    return rep


# -- conformal map -----------------------------------------------------------------


def group_map(ctx: Context) -> VerificationReport:
    cfg = ctx.config.map
    rng = ctx.rng(7)
    rep = VerificationReport()
    rows = []

    def roundtrip():
        r = np.sqrt(rng.uniform(0, 1, cfg.samples)) * 0.999
        z = r * np.exp(1j * rng.uniform(0, 2 * math.pi, cfg.samples))
        hz = h(z)
        err = float(np.max(np.abs(g(hz) - z)))
        slit_hits = int(np.sum(on_slit(hz)))
        return [
            Check("map-roundtrip", "main-theorem-proof", [err], cfg.roundtrip_tol,
                  err <= cfg.roundtrip_tol, f"max |g(h(z)) - z| on {cfg.samples} points"),
            Check("map-avoids-slit", "main-theorem-proof", [slit_hits], 0, slit_hits == 0,
                  "samples with h(z) on [0, 1)"),
        ]

    def limits():
        at_one = radial_limit(1.0)
        at_minus = radial_limit(-1.0)
        devs = [abs(at_one.deviation), abs(at_minus.deviation)]
        trace = boundary_trace(cfg.trace_samples)
        for p in trace:
            rows.append((math.atan2(p.zeta.imag, p.zeta.real), p.value.real, p.value.imag,
                         abs(p.deviation), int(p.converged)))
        pre = boundary_preimages(trace, cfg.limit_tol)
        zero_angles = [math.atan2(z.imag, z.real) for z in pre.of_zero]
        return [
            Check("map-limits-at-plus-minus-one", "main-theorem-proof", devs, cfg.limit_tol,
                  max(devs) <= cfg.limit_tol and at_one.converged and at_minus.converged,
                  "|1 - h| along radii to 1 and -1"),
            Check("map-single-preimage-of-zero", "main-theorem-proof", zero_angles, 1,
                  len(pre.of_zero) == 1 and not pre.nonconverged,
                  f"{len(pre.of_one)} sampled preimages of 1, slit arc samples {pre.slit_samples}"),
        ]

    def closed_form():
        r = np.sqrt(rng.uniform(0, 1, 400)) * 0.99
        z = r * np.exp(1j * rng.uniform(0, 2 * math.pi, 400))
        errors = select_closed_form_ratio(z, cfg.closed_form_tol)
        winners = [k for k, v in errors.items() if v <= cfg.closed_form_tol]
        return Check("map-closed-form", "main-theorem-proof",
                     [errors[k] for k in sorted(errors)], cfg.closed_form_tol,
                     len(winners) == 1,
                     "candidates " + ", ".join(f"{k}: {errors[k]:.3g}" for k in sorted(errors)))

    rep.run("map-roundtrip", "main-theorem-proof", roundtrip)
    rep.run("map-limits", "main-theorem-proof", limits)
    rep.run("map-closed-form", "main-theorem-proof", closed_form)
    rep.profiles["boundary_trace"] = (["angle", "h_re", "h_im", "abs_1_minus_h", "converged"], rows)
    return rep


# -- the counterexample ---------------------------------------------------------------


def group_counterexample(ctx: Context) -> VerificationReport:
    zc = ctx.config.zero_count
    paths = ctx.config.paths
    rep = VerificationReport()

    def zero():
        cx = ctx.cx
        residual = abs(phi_eval(cx, cx.b))
        count = phi_zero_count(cx, zc.radius, zc.nodes)
        located = locate_zero(cx, radius=zc.radius)
        miss = abs(located - cx.b)
        return [
            Check("phi-zero-residual", "main-theorem-proof", [residual], cx.tol,
                  residual <= cx.tol, f"|phi(b)| at b = g(a) = {cx.b:.12g}"),
            Check("phi-zero-count", "main-theorem-proof", [count], 1, count == 1,
                  f"argument principle on |z| = {zc.radius}"),
            Check("phi-zero-location", "main-theorem-proof", [miss], zc.zero_tol,
                  miss <= zc.zero_tol, f"Newton zero {located:.12g}"),
        ]

    def floors():
        return verify_nontangential_floor(
            ctx.cx, range(paths.k_min, paths.k_max + 1), ctx.config.slit.theta,
            floor=paths.floor, control_decay=paths.control_decay,
            margin=paths.aperture_margin, report=rep)

    rep.run("phi-zero", "main-theorem-proof", zero)
    rep.run("paths", "main-theorem-proof", floors)
    return rep


def group_finite_preimages(ctx: Context) -> VerificationReport:
    cfg = ctx.config.finite_preimages
    rep = VerificationReport()

    def run():
        Bt = truncated_product(ctx.cx, cfg.n_max)
        bound = rouche_bound(Bt, cfg.radii, cfg.rouche_safety)
        targets = sample_segment_targets(Bt, cfg.samples, ctx.config.run.seed,
                                         s_min=cfg.s_min, bound=bound)
        checks = finite_preimage_report(ctx.cx, targets, cfg.radii, cfg.n_max, cfg.max_preimages,
                                report=rep)
        checks[-1].note += f"; targets sampled with |w| < {bound:.6g}"
        return checks

    rep.run("finite-preimages", "finite-preimage-lemma", run)
    return rep


def group_sector_variant(ctx: Context) -> VerificationReport:
    cfg = ctx.config.sector_variant
    rep = VerificationReport()
    c = ctx.config.construction
    rep.run("sector-variant", "sector-variant",
            lambda: sector_variant_report(cfg.a_list, c.n_max, cfg.radius, cfg.grid, c.tol))
    return rep


def group_thin_general(ctx: Context) -> VerificationReport:
    cfg = ctx.config.thin_general
    rep = VerificationReport()
    seqs = {
        "factorial": [inv_factorial(n) for n in range(2, cfg.n_max + 1)],
        "square": [2.0 ** (-n * n) for n in range(1, cfg.n_max + 1)],
    }

    def run():
        out = []
        for label, eps in seqs.items():
            for th in cfg.thetas:
                out.extend(verify_thin_generalization(eps, th, label, report=rep))
        return out

    rep.run("thin-general", "thin-generalization", run)
    return rep


GROUPS = {
    "metric": group_metric,
    "singular": group_singular,
    "thin": group_thin,
    "hoffman": group_hoffman,
    "slit-floor": group_slit_floor,
    "products": group_products,
    "map": group_map,
    "counterexample": group_counterexample,
    "finite-preimages": group_finite_preimages,
    "sector-variant": group_sector_variant,
    "thin-general": group_thin_general,
}


def run_group(name: str, config: RunConfig | None = None) -> VerificationReport:
    ctx = Context(config)
    if name == "all":
        rep = VerificationReport()
        for group in GROUPS.values():
            rep.merge(group(ctx))
        return rep
    if name not in GROUPS:
        raise KeyError(f"unknown check group {name!r}")
    return GROUPS[name](ctx)
