import math

import mpmath as mp
import numpy as np
import pytest

import frozen
import oracle
from slitdisk.hyperbolic import BoundaryDeviation, DomainError
from slitdisk.slitmap import (
    SLIT_CHAIN,
    SlitError,
    boundary_preimages,
    boundary_trace,
    conformal_angle_error,
    g,
    g_deviation,
    h,
    h_closed_form,
    h_derivative,
    h_deviation,
    on_slit,
    phi1,
    phi2,
    radial_limit,
    select_closed_form_ratio,
)


def disk_points(n, r=0.99, seed=5):
    rng = np.random.default_rng(seed)
    return r * np.sqrt(rng.uniform(size=n)) * np.exp(2j * math.pi * rng.uniform(size=n))


def test_phi1_values():
    assert phi1(-0.25) == pytest.approx(frozen.PHI1_MINUS_QUARTER, abs=1e-15)
    assert phi1(-1.0) == pytest.approx(1 + 1j, abs=1e-15)


def test_phi1_rejects_slit():
    with pytest.raises(SlitError):
        phi1(0.5)


def test_phi2_value_and_boundary():
    assert phi2(1 + 0.5j) == pytest.approx(frozen.PHI2_1_HALF_I, abs=1e-14)
    # the flat edge of W1 is the segment (0, 2] of the real axis
    for x in (0.3, 1.0, 1.9):
        assert abs(abs(phi2(complex(x, 0.0))) - 1) < 1e-9


def test_g_against_oracle():
    for z in (-0.5, 0.3j, -0.2 - 0.7j, 0.6 + 0.1j):
        assert abs(g(z) - complex(oracle.g(z))) < 1e-14


def test_roundtrip_and_slit_avoidance():
    z = disk_points(2000)
    hz = h(z)
    assert np.max(np.abs(g(hz) - z)) < 1e-9
    assert not np.any(on_slit(hz))
    assert np.all(np.abs(hz) < 1)


def test_h_of_zero_is_the_preimage_of_zero():
    z0 = h(0.0)
    assert abs(complex(oracle.g(mp.mpc(z0)))) < 1e-14


def test_chain_composition_has_no_failures():
    assert SLIT_CHAIN.check_composition(disk_points(200, 0.95)) == []


def test_closed_form_selection():
    errors = select_closed_form_ratio(disk_points(300))
    assert errors["(1+z)/(1-z)"] <= 1e-8
    assert errors["(z+1)/(z-1)"] > 1e-8
    assert h_closed_form(0.0) == pytest.approx(h(0.0), abs=1e-14)


def test_g_deviation_matches_plain_form():
    z = -0.3 + 0.4j
    assert g_deviation(z).value() == pytest.approx(g(z), abs=1e-14)
    assert g_deviation(z, -1.0).value() == pytest.approx(g(z), abs=1e-14)


def test_g_deviation_near_boundary_against_oracle():
    eps = mp.mpf(1) / mp.factorial(8)
    d = eps * mp.expj(mp.pi / 4)
    exact = 1 - oracle.g(1 - d)
    got = g_deviation(BoundaryDeviation(complex(d))).delta
    assert abs(got - complex(exact)) <= 1e-12 * abs(complex(exact))


def test_g_deviation_rejects_slit():
    with pytest.raises(SlitError):
        g_deviation(BoundaryDeviation(0.25))


def test_h_deviation_matches_plain_form():
    u = 0.2 - 0.5j
    assert h_deviation(u).value() == pytest.approx(h(u), abs=1e-14)


def test_h_derivative_against_central_difference():
    step = 1e-6
    for z in (0.1 + 0.2j, -0.5j, 0.7):
        fd = (h(z + step) - h(z - step)) / (2 * step)
        assert abs(h_derivative(z) - fd) < 1e-6 * max(1.0, abs(fd))


def test_h_is_conformal():
    assert conformal_angle_error(h, 0.3 - 0.2j) < 1e-4


def test_radial_limits_at_plus_minus_one():
    for zeta in (1.0, -1.0):
        p = radial_limit(zeta)
        assert p.converged and abs(p.deviation) < 1e-4


def test_boundary_preimages():
    pre = boundary_preimages(boundary_trace(64))
    assert len(pre.of_zero) == 1
    assert not pre.nonconverged
    assert {round(z.real) for z in pre.of_one} == {1, -1}


def test_domain_errors():
    with pytest.raises(DomainError):
        h(1.5)
    with pytest.raises(DomainError):
        h_deviation(2.0)
