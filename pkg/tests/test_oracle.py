import mpmath as mp
import pytest

import frozen
import oracle


@pytest.mark.parametrize("value, expected", [
    (lambda: oracle.pseudo_distance(0.5, 0.5j), frozen.D_HALF_HALF_I),
    (lambda: oracle.pseudo_distance(1 - mp.mpf("1e-30"), 1 - mp.mpf("2e-30")), frozen.D_DEVIATION_1E30),
    (lambda: oracle.blaschke_at_zero(0.5j), frozen.B_AT_ZERO),
    (lambda: oracle.hoffman(0.5), frozen.HOFFMAN_HALF),
    (lambda: oracle.slit_constant(), frozen.SLIT_C),
    (lambda: oracle.singular_atom(0.9), frozen.S1_AT_09),
    (lambda: oracle.thin_delta_factorial(0.5j, 10, 60), frozen.THIN_K10),
    (lambda: oracle.thin_delta_factorial(0.5j, 30, 60), frozen.THIN_K30),
])
def test_oracle_reproduces_frozen_values(value, expected):
    assert abs(complex(value()) - expected) <= 1e-15 * max(1.0, abs(expected))


def test_oracle_maps_match_hand_values():
    assert abs(complex(oracle.phi1(-0.25)) - frozen.PHI1_MINUS_QUARTER) < 1e-15
    assert abs(complex(oracle.phi2(1 + 0.5j)) - frozen.PHI2_1_HALF_I) < 1e-15
    assert abs(complex(oracle.mobius(0.5j, 0.5)) - frozen.MOBIUS_HALF_I_HALF) < 1e-15


def test_hand_arithmetic_agrees_with_oracle():
    # |0.5 - 0.5i| / |1 - 0.25i|
    assert abs(abs(0.5 - 0.5j) / abs(1 - 0.25j) - frozen.D_HALF_HALF_I) < 1e-15
    # the float 0.9 is not 9/10, which moves exp(-19) by a few ulps of the exponent
    assert abs(frozen.S1_AT_09 / mp.exp(-19) - 1) < 1e-14
