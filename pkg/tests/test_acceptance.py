"""Acceptance criteria 1-11, each at its stated tolerance and time limit.

Every test records one PASS/FAIL line (printed in the terminal summary) and
then asserts, so a failing criterion fails the run.
"""

import json
import math
import time

import mpmath as mp
import numpy as np

import frozen
import oracle
from slitdisk.blaschke import (
    ZeroSequence,
    count_zeros_argument_principle,
    diagonal_limit,
    factorial_zeros,
    hoffman_bound,
    inv_factorial,
    segment_preimage_count,
    slit_angle_floor,
    slit_constant_c,
    slit_partial_products,
    thin_delta,
    thin_lower_bound,
)
from slitdisk.cli import main
from slitdisk.config import RunConfig
from slitdisk.counterexample import (
    build,
    phi_eval,
    phi_zero_count,
    rouche_bound,
    sample_segment_targets,
    truncated_product,
)
from slitdisk.hyperbolic import BoundaryDeviation, mobius, pseudo_distance, pseudo_distance_deviation
from slitdisk.innerfn import SingularInner, radial_real_part
from slitdisk.slitmap import (
    boundary_preimages,
    boundary_trace,
    g,
    g_deviation,
    h,
    on_slit,
    radial_limit,
    select_closed_form_ratio,
)

CFG = RunConfig()


def timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def random_disk(rng, n, r=0.99):
    return r * np.sqrt(rng.uniform(size=n)) * np.exp(2j * math.pi * rng.uniform(size=n))


def test_criterion_01_metric(record_criterion):
    rng = np.random.default_rng(101)
    z, w, a = (random_disk(rng, 10_000) for _ in range(3))
    d1 = 10.0 ** rng.uniform(-8, -1, 2000) * np.exp(1j * rng.uniform(-1.2, 1.2, 2000))
    d2 = 10.0 ** rng.uniform(-8, -1, 2000) * np.exp(1j * rng.uniform(-1.2, 1.2, 2000))

    def work():
        base = pseudo_distance(z, w)
        moved = np.array([pseudo_distance(mobius(c, x), mobius(c, y)) for c, x, y in zip(a, z, w)])
        return float(np.max(np.abs(moved - base))), pseudo_distance_deviation(d1, d2)

    (invariance, fast), elapsed = timed(work)
    exact = np.array([float(oracle.pseudo_distance(1 - mp.mpc(x), 1 - mp.mpc(y))) for x, y in zip(d1, d2)])
    rel = float(np.max(np.abs(fast - exact) / exact))
    ok = invariance <= 1e-12 and rel <= 1e-10 and elapsed < 1.0
    record_criterion(1, ok, f"invariance {invariance:.2e}, deviation rel {rel:.2e}, {elapsed:.2f}s")
    assert invariance <= 1e-12
    assert rel <= 1e-10
    assert elapsed < 1.0


def test_criterion_02_hoffman(record_criterion):
    def work():
        value = hoffman_bound(0.5)
        worst = {}
        for c in (0.1, 0.3, 0.5):
            seq = ZeroSequence(np.zeros(0, dtype=complex), "geometric", 1, c)
            vals = [thin_delta(seq, k, 65) for k in range(1, 26)]
            worst[c] = min(vals) - hoffman_bound(c)
        return value, worst

    (value, worst), elapsed = timed(work)
    ok = (abs(value - 0.0147) <= 1e-3 and abs(value - frozen.HOFFMAN_HALF) <= 1e-12
          and min(worst.values()) >= -1e-9 and elapsed < 1.0)
    record_criterion(2, ok, f"hoffman_bound(0.5) = {value:.6g}, min margin {min(worst.values()):.3g}, "
                            f"{elapsed:.2f}s")
    assert abs(value - 0.0147) <= 1e-3
    assert abs(value - frozen.HOFFMAN_HALF) <= 1e-12
    assert all(m >= -1e-9 for m in worst.values())
    assert elapsed < 1.0


def test_criterion_03_thinness(record_criterion):
    t = CFG.thin

    def work():
        zeros = factorial_zeros(CFG.construction.a, t.window)
        ks = range(t.k_min, t.k_max + 1)
        vals = [thin_delta(zeros, k, t.window) for k in ks]
        bounds = [thin_lower_bound(zeros, k, k - 1, c=1.0 / k, window=t.window) for k in ks]
        return vals, bounds

    (vals, bounds), elapsed = timed(work)
    increasing = all(x < y for x, y in zip(vals, vals[1:])) and vals[-1] > vals[0]
    above = all(v >= b for v, b in zip(vals, bounds))
    pinned = abs(vals[0] - t.delta_first) <= t.pin_tol and abs(vals[-1] - t.delta_last) <= t.pin_tol
    oracle_ok = abs(vals[0] - frozen.THIN_K10) <= 1e-12 and abs(vals[-1] - frozen.THIN_K30) <= 1e-12
    ok = increasing and above and pinned and oracle_ok and elapsed < 2.0
    record_criterion(3, ok, f"thin_delta {vals[0]:.6f} -> {vals[-1]:.6f}, {elapsed:.2f}s")
    assert increasing
    assert above
    assert pinned and oracle_ok
    assert elapsed < 2.0


def test_criterion_04_singular_decay(record_criterion):
    S1 = SingularInner.atom(1.0, 1.0)
    thetas = np.linspace(-math.pi / 4, math.pi / 4, 20)

    def work():
        rows = []
        for eps in (1e-1, 1e-2, 1e-3, 1e-4):
            for th in thetas:
                z = complex(1 - eps * math.cos(th), -eps * math.sin(th))
                rows.append((eps, th, abs(S1(z)), float(np.real(S1.exponent(z)))))
        return rows

    rows, elapsed = timed(work)
    plain_ok, log_worst, real_worst, value_worst = True, -math.inf, 0.0, 0.0
    for eps, th, mod, log_mod in rows:
        bound = math.exp(-2 * math.cos(math.pi / 4) / eps + 1)
        plain_ok &= mod <= bound * (1 + 1e-12)
        log_worst = max(log_worst, log_mod - (-2 * math.cos(math.pi / 4) / eps + 1))
        expected = radial_real_part(eps, th)
        real_worst = max(real_worst, abs(log_mod - expected) / abs(expected))
        if math.exp(expected) > 0:
            value_worst = max(value_worst, abs(mod - math.exp(expected)) / math.exp(expected))
    ok = plain_ok and log_worst <= 1e-12 and real_worst <= 1e-12 and value_worst <= 1e-12 and elapsed < 1.0
    record_criterion(4, ok, f"log margin {log_worst:.3g}, real-part rel {real_worst:.2e}, "
                            f"|S1| rel {value_worst:.2e}, {elapsed:.2f}s")
    assert plain_ok
    assert log_worst <= 1e-12
    assert real_worst <= 1e-12 and value_worst <= 1e-12
    assert elapsed < 1.0


def test_criterion_05_slit_constant(record_criterion):
    c, elapsed = timed(slit_constant_c)
    ok = abs(c - 0.21473) <= 1e-4 and abs(c - frozen.SLIT_C) <= 1e-12 and elapsed < 1.0
    record_criterion(5, ok, f"c = {c:.12f}, {elapsed:.3f}s")
    assert abs(c - 0.21473) <= 1e-4
    assert abs(c - frozen.SLIT_C) <= 1e-12
    assert elapsed < 1.0


def test_criterion_06_boundary_floor(cx, record_criterion):
    s = CFG.slit
    ms = range(3, 21)
    half_c = slit_constant_c() / 2

    def work():
        worst_product, diag_gap, floors = math.inf, 0.0, []
        for th in (math.pi / 4, -math.pi / 4):
            for m in ms:
                p = slit_partial_products(m, th)
                worst_product = min(worst_product, p.above, p.below)
            diag_gap = max(diag_gap, abs(slit_partial_products(20, th).diagonal - diagonal_limit(th)))
            floors.append(slit_angle_floor(cx.B, th, ms))
        return worst_product, diag_gap, floors

    (worst_product, diag_gap, floors), elapsed = timed(work)
    # accuracy at m = 20 (1/20! ~ 4e-19) against 60-digit arithmetic
    delta = mp.mpf(1) / mp.factorial(20) * mp.expj(mp.pi / 4)
    exact = complex(oracle.blaschke_near_one(delta, 0.5j))
    got = cx.B.eval(BoundaryDeviation(inv_factorial(20) * complex(math.cos(math.pi / 4), math.sin(math.pi / 4))))
    accuracy = abs(got - exact)
    ok = (worst_product >= half_c - 1e-9 and diag_gap <= 1e-4 and min(floors) >= s.floor
          and accuracy <= 1e-10 and elapsed < 5.0)
    record_criterion(6, ok, f"min product {worst_product:.5f} (c/2 = {half_c:.5f}), diagonal gap "
                            f"{diag_gap:.1e}, floor {min(floors):.5f}, m=20 error {accuracy:.1e}, "
                            f"{elapsed:.2f}s")
    assert worst_product >= half_c - 1e-9
    assert diag_gap <= 1e-4
    assert min(floors) >= s.floor
    assert accuracy <= 1e-10
    assert elapsed < 5.0


def test_criterion_07_conformal_chain(record_criterion):
    rng = np.random.default_rng(107)
    z = random_disk(rng, 10_000, 0.999)

    def work():
        hz = h(z)
        roundtrip = float(np.max(np.abs(g(hz) - z)))
        slit_hits = int(np.sum(on_slit(hz)))
        limits = [abs(radial_limit(zeta).deviation) for zeta in (1.0, -1.0)]
        pre = boundary_preimages(boundary_trace(64))
        errors = select_closed_form_ratio(random_disk(rng, 400))
        return roundtrip, slit_hits, limits, pre, errors

    (roundtrip, slit_hits, limits, pre, errors), elapsed = timed(work)
    winners = [k for k, v in errors.items() if v <= 1e-8]
    ok = (roundtrip <= 1e-9 and slit_hits == 0 and max(limits) <= 1e-4 and len(pre.of_zero) == 1
          and len(winners) == 1 and elapsed < 10.0)
    record_criterion(7, ok, f"roundtrip {roundtrip:.1e}, slit hits {slit_hits}, limits {max(limits):.1e}, "
                            f"preimages of 0: {len(pre.of_zero)}, ratio {winners}, {elapsed:.2f}s")
    assert roundtrip <= 1e-9
    assert slit_hits == 0
    assert max(limits) <= 1e-4
    assert len(pre.of_zero) == 1
    assert len(winners) == 1
    assert elapsed < 10.0


def test_criterion_08_counterexample_core(record_criterion):
    p = CFG.paths
    ks = list(range(3, 13))
    S1 = SingularInner.atom(1.0, 1.0)

    def work():
        cx = build()
        count = phi_zero_count(cx, 0.995)
        floors, control = [], None
        for sign, eta in ((1, 1.0), (-1, -1.0)):
            rot = complex(math.cos(sign * math.pi / 4), math.sin(sign * math.pi / 4))
            zk = g_deviation(BoundaryDeviation(np.array([inv_factorial(k) * rot for k in ks])), eta)
            mods = np.abs(phi_eval(cx, zk))
            floors.append(float(mods.min()))
            if eta == 1.0:
                control = mods * np.abs(S1(zk))
        return count, floors, control

    (count, floors, control), elapsed = timed(work)
    ok = count == 1 and min(floors) >= p.floor and control[-1] < 1e-6 and elapsed < 20.0
    record_criterion(8, ok, f"zero count {count}, path floors {floors[0]:.4f}/{floors[1]:.4f}, "
                            f"control at k=12 {control[-1]:.1e}, {elapsed:.2f}s")
    assert count == 1
    assert min(floors) >= p.floor
    assert control[-1] < 1e-6
    assert elapsed < 20.0


def test_criterion_09_finite_preimages(cx, record_criterion):
    cfg = CFG.finite_preimages

    def work():
        Bt = truncated_product(cx, 12)
        bound = rouche_bound(Bt, cfg.radii, cfg.rouche_safety)
        targets = sample_segment_targets(Bt, 20, CFG.run.seed, s_min=cfg.s_min, bound=bound)
        seg = [segment_preimage_count(Bt, w) for w in targets]
        disk = [[count_zeros_argument_principle(Bt, w, r) for r in (0.9, 0.99, 0.999)] for w in targets]
        return targets, seg, disk

    (targets, seg, disk), elapsed = timed(work)
    growing = all(a < b < c for a, b, c in disk)
    ok = (len(targets) == 20 and np.all(targets != 0) and max(seg) <= 4 and growing
          and elapsed < 30.0)
    record_criterion(9, ok, f"segment counts max {max(seg)}, disk counts {sorted(set(map(tuple, disk)))}, "
                            f"{elapsed:.2f}s")
    assert len(targets) == 20 and np.all(targets != 0)
    assert max(seg) <= 4
    assert growing
    assert elapsed < 30.0


def test_criterion_10_thin_generalization(record_criterion):
    seqs = {
        # n = 1 would put a point at the origin and its rotation on the circle
        "1/n!": [inv_factorial(n) for n in range(2, 16)],
        "2^-n^2": [2.0 ** (-n * n) for n in range(1, 16)],
    }

    def work():
        worst = math.inf
        for eps in seqs.values():
            for th in (math.pi / 4, math.pi / 3):
                rot = complex(math.cos(th), math.sin(th))
                for n, en in enumerate(eps):
                    for m, em in enumerate(eps):
                        if n == m:
                            continue
                        diff = pseudo_distance_deviation(en, em * rot) - pseudo_distance_deviation(en, em)
                        worst = min(worst, diff)
        return worst

    worst, elapsed = timed(work)
    ok = worst >= -1e-12 and elapsed < 1.0
    record_criterion(10, ok, f"min d(rotated) - d(plain) = {worst:.3g}, {elapsed:.3f}s")
    assert worst >= -1e-12
    assert elapsed < 1.0


def test_criterion_11_determinism(tmp_path, record_criterion):
    outs = []
    for run in ("first", "second"):
        out = tmp_path / run
        code = main(["verify", "all", "--seed", "0", "--out", str(out), "--quiet"])
        assert code == 0
        outs.append(out)
    names = sorted(p.name for p in outs[0].iterdir() if p.suffix in (".json", ".csv"))
    same = [(outs[0] / n).read_bytes() == (outs[1] / n).read_bytes() for n in names]
    ok = "report.json" in names and len(names) > 1 and all(same)
    record_criterion(11, ok, f"{len(names)} JSON/CSV files byte-identical: {all(same)}")
    assert "report.json" in names and len(names) > 1
    assert all(same), [n for n, s in zip(names, same) if not s]


def test_full_report_has_enough_checks(tmp_path):
    # the verify-all report carries at least a dozen checks and passes
    assert main(["verify", "all", "--out", str(tmp_path), "--quiet", "--no-figures"]) == 0
    data = json.loads((tmp_path / "report.json").read_text())
    assert data["verdict"] == "pass" and len(data["checks"]) >= 12
