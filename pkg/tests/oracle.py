"""Independent high-precision reference values (mpmath).

Nothing here imports the package. ``python3 tests/oracle.py`` prints the
values frozen in ``frozen.py``.
"""

import mpmath as mp

mp.mp.dps = 60


def pseudo_distance(z, w):
    z, w = mp.mpc(z), mp.mpc(w)
    return abs(z - w) / abs(1 - mp.conj(z) * w)


def mobius(a, z):
    a, z = mp.mpc(a), mp.mpc(z)
    return (a - z) / (1 - mp.conj(a) * z)


def factorial_defects(n_max):
    """``1/n!`` for ``n = 2..n_max``."""
    return [1 / mp.factorial(n) for n in range(2, n_max + 1)]


def blaschke_at_zero(a, n_max=60):
    """|B(0)| for zeros a, 1 - 1/n! (n = 2..n_max); later factors differ from 1 below 1e-80."""
    p = abs(mp.mpc(a))
    for e in factorial_defects(n_max):
        p *= 1 - e
    return p


def blaschke(z, a, n_max=40):
    """Normalized Blaschke product with zeros a, 1 - 1/n! at a plain point."""
    z = mp.mpc(z)
    zeros = [mp.mpc(a)] + [1 - e for e in factorial_defects(n_max)]
    out = mp.mpc(1)
    for zn in zeros:
        out *= (abs(zn) / zn) * (zn - z) / (1 - mp.conj(zn) * z)
    return out


def blaschke_near_one(delta, a, n_max=40):
    """B at ``1 - delta`` with delta given exactly (mpmath), any size."""
    return blaschke(1 - mp.mpc(delta), a, n_max)


def hoffman(c, terms=200):
    c = mp.mpf(c)
    p = mp.mpf(1)
    for j in range(1, terms + 1):
        p *= (1 - c**j) / (1 + c**j)
    return p**2


def slit_constant(k_max=60):
    p = mp.mpf(1)
    for e in factorial_defects(k_max):
        p *= (1 - e) / (1 + e)
    return p


def singular_atom(z):
    z = mp.mpc(z)
    return mp.exp(-(1 + z) / (1 - z))


def phi1(z):
    """``1 + i sqrt(-z)`` with the principal root (cut on the slit z >= 0)."""
    return 1 + 1j * mp.sqrt(-mp.mpc(z))


def phi2(w):
    q = (1 / mp.mpc(w) - mp.mpf(1) / 2) ** 2
    return (q + 1j) / (q - 1j)


def g(z):
    return phi2(phi1(z))


def thin_delta_factorial(a, k, window):
    zeros = [mp.mpc(a)] + [1 - e for e in factorial_defects(window)]
    zk = zeros[k - 1]
    p = mp.mpf(1)
    for j, zj in enumerate(zeros, 1):
        if j != k:
            p *= pseudo_distance(zk, zj)
    return p


if __name__ == "__main__":
    print("d(0.5, 0.5i) =", mp.nstr(pseudo_distance(0.5, 0.5j), 17))
    d1, d2 = mp.mpf("1e-30"), mp.mpf("2e-30")
    print("d(1-1e-30, 1-2e-30) =", mp.nstr(pseudo_distance(1 - d1, 1 - d2), 17))
    print("mobius(0.5i, 0.5) =", mp.nstr(mobius(0.5j, 0.5), 17))
    print("|B(0)| =", mp.nstr(blaschke_at_zero(0.5j), 17))
    print("hoffman(0.5) =", mp.nstr(hoffman(0.5), 17))
    print("slit c =", mp.nstr(slit_constant(), 17))
    print("S1(0.9) =", mp.nstr(singular_atom(0.9), 17))
    print("phi1(-1/4) =", mp.nstr(phi1(-0.25), 17))
    print("phi2(1+0.5i) =", mp.nstr(phi2(1 + 0.5j), 17))
    print("thin k=10 =", mp.nstr(thin_delta_factorial(0.5j, 10, 60), 17))
    print("thin k=30 =", mp.nstr(thin_delta_factorial(0.5j, 30, 60), 17))
