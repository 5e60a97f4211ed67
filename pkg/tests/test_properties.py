import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from slitdisk.blaschke import BlaschkeProduct, ZeroSequence, factorial_zeros
from slitdisk.hyperbolic import mobius, pseudo_distance, pseudo_distance_deviation
from slitdisk.slitmap import g, h, on_slit

radius = st.floats(0.0, 0.98)
angle = st.floats(-math.pi, math.pi)
disk_point = st.builds(lambda r, t: r * complex(math.cos(t), math.sin(t)), radius, angle)
small_dev = st.builds(lambda m, t: 10.0**m * complex(math.cos(t), math.sin(t)),
                      st.floats(-12, -1), st.floats(-1.3, 1.3))


@given(disk_point, disk_point, disk_point)
def test_distance_is_mobius_invariant(z, w, a):
    assert abs(pseudo_distance(mobius(a, z), mobius(a, w)) - pseudo_distance(z, w)) <= 1e-12


@given(disk_point, disk_point, disk_point)
def test_distance_triangle_inequality(z, w, v):
    assert pseudo_distance(z, v) <= pseudo_distance(z, w) + pseudo_distance(w, v) + 1e-12


@given(small_dev, small_dev)
def test_deviation_distance_in_unit_interval_and_symmetric(d1, d2):
    a = pseudo_distance_deviation(d1, d2)
    assert 0 <= a <= 1
    assert abs(a - pseudo_distance_deviation(d2, d1)) <= 1e-14


@given(st.floats(0.02, 0.9))
def test_deviation_distance_agrees_with_plain_form_away_from_boundary(r):
    d1, d2 = complex(r, 0.05), complex(r / 2, -0.03)
    plain = pseudo_distance(1 - d1, 1 - d2)
    assert abs(pseudo_distance_deviation(d1, d2) - plain) <= 1e-12


@settings(max_examples=50)
@given(disk_point)
def test_blaschke_modulus_below_one(z):
    B = BlaschkeProduct(factorial_zeros(0.5j, 12))
    assert abs(B.eval(z)) < 1


@settings(max_examples=50)
@given(st.lists(disk_point, min_size=1, max_size=5), disk_point)
def test_finite_product_is_unimodular_on_circle(zeros, t):
    zeros = [z for z in zeros if abs(z) < 0.95]
    if not zeros:
        return
    B = BlaschkeProduct(ZeroSequence.from_zeros(zeros))
    # the circle of radius 1 - 1e-9 is close enough to the boundary to see |B| -> 1
    ang = np.angle(t) if t else 0.0
    assert abs(abs(B.eval((1 - 1e-9) * np.exp(1j * ang))) - 1) < 1e-6


@given(disk_point)
def test_h_then_g_is_identity(z):
    hz = h(z)
    assert not on_slit(hz)
    assert abs(g(hz) - z) <= 1e-9
