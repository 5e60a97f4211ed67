"""Pseudohyperbolic geometry of the unit disk.

Points exponentially close to the boundary are carried as deviations: a
:class:`BoundaryDeviation` with ``delta`` and ``anchor`` stands for the point
``anchor * (1 - delta)``. Every formula here that accepts deviations works on
``delta`` directly, so ``1 - 1/20!`` stays distinguishable from ``1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

TWO_PI = 2.0 * math.pi

#: default absolute tolerance for metric comparisons
METRIC_ATOL = 1e-12


class DomainError(ValueError):
    """A point lies outside the region where an operation is defined."""


@dataclass(frozen=True, eq=False)
class BoundaryDeviation:
    """The point ``anchor * (1 - delta)``.

    ``delta`` may be a scalar or an array of complex deviations; ``anchor``
    is a unimodular scalar (``1`` unless the point approaches another
    boundary point).
    """

    delta: complex | np.ndarray
    anchor: complex = 1.0

    def __post_init__(self):
        delta = np.asarray(self.delta, dtype=complex)
        if np.any(delta == 0):
            raise DomainError("deviation must be nonzero")
        if abs(abs(complex(self.anchor)) - 1.0) > 1e-12:
            raise DomainError(f"anchor {self.anchor!r} is not unimodular")
        object.__setattr__(self, "delta", delta if delta.ndim else complex(delta))
        object.__setattr__(self, "anchor", complex(self.anchor))

    def value(self):
        """Plain complex value (loses the deviation below machine epsilon)."""
        return self.anchor * (1.0 - np.asarray(self.delta))

    def __repr__(self):
        return f"BoundaryDeviation(delta={self.delta!r}, anchor={self.anchor!r})"


Point = Union[complex, np.ndarray, BoundaryDeviation]


def deviation_from(z: Point, eta: complex = 1.0) -> np.ndarray:
    """Return ``1 - conj(eta) * z`` for a plain or deviation-form point.

    When ``z`` is a deviation anchored at ``eta`` the result is exactly its
    ``delta``.
    """
    eta = complex(eta)
    if isinstance(z, BoundaryDeviation):
        rot = eta.conjugate() * z.anchor
        delta = np.asarray(z.delta, dtype=complex)
        if rot == 1.0:
            return delta
        return (1.0 - rot) + rot * delta
    return 1.0 - eta.conjugate() * np.asarray(z, dtype=complex)


def one_minus_modulus(delta) -> np.ndarray:
    """``1 - |1 - delta|`` without cancellation.

    Uses ``1 - |w| = (1 - |w|^2) / (1 + |w|)`` and
    ``1 - |1 - delta|^2 = 2 Re(delta) - |delta|^2``.
    """
    delta = np.asarray(delta, dtype=complex)
    num = 2.0 * delta.real - (delta.real**2 + delta.imag**2)
    return num / (1.0 + np.abs(1.0 - delta))


def defect(z) -> np.ndarray:
    """``1 - |z|`` for a plain or deviation-form point, cancellation-free."""
    if isinstance(z, BoundaryDeviation):
        return one_minus_modulus(z.delta)
    return 1.0 - np.abs(np.asarray(z, dtype=complex))


def _check_interior(z, name="point"):
    z = np.asarray(z, dtype=complex)
    if np.any(~(np.abs(z) < 1.0)):
        raise DomainError(f"{name} must lie in the open unit disk")
    return z


def _scalar(x):
    x = np.asarray(x)
    return x.item() if x.ndim == 0 else x


def pseudo_distance(z, w):
    """Pseudohyperbolic distance ``|(z - w) / (1 - conj(z) w)|``."""
    z = _check_interior(z, "z")
    w = _check_interior(w, "w")
    return _scalar(np.abs(z - w) / np.abs(1.0 - np.conj(z) * w))


def pseudo_distance_deviation(d1, d2):
    """Pseudohyperbolic distance between ``1 - d1`` and ``1 - d2``.

    Arguments are raw complex deviations or :class:`BoundaryDeviation`
    objects (converted to deviations from 1). Computed as
    ``|d1 - d2| / |d1 + conj(d2) - conj(d2) d1|``, which never subtracts
    quantities close to 1.
    """
    d1 = deviation_from(d1) if isinstance(d1, BoundaryDeviation) else np.asarray(d1, dtype=complex)
    d2 = deviation_from(d2) if isinstance(d2, BoundaryDeviation) else np.asarray(d2, dtype=complex)
    if np.any(~(one_minus_modulus(d1) > 0)) or np.any(~(one_minus_modulus(d2) > 0)):
        raise DomainError("deviation represents a point outside the open disk")
    num = np.abs(d1 - d2)
    den = np.abs(d1 + np.conj(d2) - np.conj(d2) * d1)
    return _scalar(num / den)


def mobius(a, z):
    """The involutive disk automorphism ``(a - z) / (1 - conj(a) z)``."""
    a = complex(a)
    if not abs(a) < 1.0:
        raise DomainError("Mobius parameter must lie in the open unit disk")
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) > 1.0 + 1e-15):
        raise DomainError("argument must lie in the closed unit disk")
    return _scalar((a - z) / (1.0 - a.conjugate() * z))


def normalized_arg(z):
    """Argument of ``z`` taken in ``[0, 2*pi)``."""
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise DomainError("argument of zero is undefined")
    theta = np.angle(z)
    theta = np.where(theta < 0, theta + TWO_PI, theta)
    theta = np.where(theta >= TWO_PI, 0.0, theta)
    return _scalar(theta)
