"""Atomic singular inner functions and non-tangential approach paths."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .hyperbolic import BoundaryDeviation, DomainError, defect, deviation_from

#: default Stolz aperture
DEFAULT_APERTURE = math.pi / 4


class PathError(DomainError):
    """An approach path leaves its Stolz region or is badly scheduled."""


@dataclass(frozen=True)
class SingularInner:
    """``prod exp(-t (1 + conj(eta) z) / (1 - conj(eta) z))`` over atoms ``(eta, t)``."""

    atoms: tuple[tuple[complex, float], ...]

    def __post_init__(self):
        atoms = tuple((complex(eta), float(t)) for eta, t in self.atoms)
        for eta, t in atoms:
            if abs(abs(eta) - 1.0) > 1e-12:
                raise DomainError(f"atom {eta!r} is not on the unit circle")
            if t < 0:
                raise DomainError("atom masses must be nonnegative")
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def atom(cls, t: float = 1.0, eta: complex = 1.0) -> "SingularInner":
        return cls(((eta, t),))

    def exponent(self, z):
        """``-sum t (1 + u)/(1 - u)`` with ``u = conj(eta) z``.

        With ``D = 1 - u`` the ratio is ``(2 - D)/D``; for a deviation
        anchored at the atom, ``D`` is the stored ``delta`` itself.
        """
        total = 0.0
        for eta, t in self.atoms:
            if t == 0:
                continue
            D = deviation_from(z, eta)
            if np.any(D == 0):
                raise DomainError("evaluation at an atom")
            total = total - t * (2.0 - D) / D
        return total

    def __call__(self, z):
        margin = defect(z)
        if np.any(~(margin > 0)):
            raise DomainError("singular inner function is evaluated inside the disk only")
        out = np.exp(np.asarray(self.exponent(z), dtype=complex))
        out = np.broadcast_to(out, np.shape(margin)).copy()
        return out.item() if out.ndim == 0 else out


def singular_eval(S: SingularInner, z):
    return S(z)


def radial_real_part(eps: float, theta: float) -> float:
    """``Re(-(1 + z)/(1 - z))`` at ``z = 1 - eps e^{i theta}``: ``-(2 eps cos theta - eps^2)/eps^2``."""
    if not abs(theta) < math.pi / 2:
        raise DomainError("need |theta| < pi/2")
    if not 0 < eps < 2.0 * math.cos(theta):
        raise DomainError("1 - eps e^{i theta} is not inside the disk")
    return -(2.0 * eps * math.cos(theta) - eps * eps) / (eps * eps)


def stolz_bound(eps, aperture: float):
    """``exp(-2 cos(aperture)/eps + 1)``, the bound on ``|S_1|`` in the Stolz angle."""
    return np.exp(-2.0 * math.cos(aperture) / np.asarray(eps, dtype=float) + 1.0)


@dataclass(frozen=True, eq=False)
class ApproachPath:
    """Points ``eta (1 - eps_j e^{i theta_j})`` inside a Stolz angle at ``eta``."""

    eta: complex
    aperture: float
    epsilons: np.ndarray
    angles: np.ndarray

    def points(self) -> BoundaryDeviation:
        return BoundaryDeviation(self.epsilons * np.exp(1j * self.angles), self.eta)

    def __len__(self):
        return len(self.epsilons)


def make_path(eta: complex = 1.0, aperture: float = DEFAULT_APERTURE,
              eps_schedule: Sequence[float] = (), theta_schedule=0.0) -> ApproachPath:
    """Validated non-tangential path; ``theta_schedule`` may be a scalar."""
    eps = np.asarray(eps_schedule, dtype=float)
    theta = np.broadcast_to(np.asarray(theta_schedule, dtype=float), eps.shape).copy()
    if eps.ndim != 1 or eps.size == 0:
        raise PathError("need a nonempty one-dimensional epsilon schedule")
    if not 0 < aperture < math.pi / 2:
        raise PathError("aperture must lie in (0, pi/2)")
    if np.any(eps <= 0) or np.any(np.diff(eps) >= 0):
        raise PathError("epsilon schedule must be positive and strictly decreasing")
    if np.any(np.abs(theta) > aperture):
        raise PathError("path leaves the Stolz angle")
    if np.any(eps >= 2.0 * np.cos(theta)):
        raise PathError("path point outside the disk")
    if abs(abs(complex(eta)) - 1.0) > 1e-12:
        raise PathError("target must lie on the unit circle")
    return ApproachPath(complex(eta), float(aperture), eps, theta)


def path_profile(f: Callable, path: ApproachPath) -> list[tuple[float, float, float, float]]:
    """Rows ``(eps, theta, |f|, arg f)`` along the path."""
    vals = np.asarray(f(path.points()), dtype=complex)
    vals = np.broadcast_to(vals, path.epsilons.shape)
    return [(float(e), float(t), float(abs(v)), float(np.angle(v)))
            for e, t, v in zip(path.epsilons, path.angles, vals)]


def nontangential_inf(f: Callable, path: ApproachPath, tail_fraction: float = 0.5) -> float:
    """Minimum of ``|f|`` over the last ``tail_fraction`` of the path (a liminf proxy)."""
    if not 0 < tail_fraction <= 1:
        raise ValueError("tail_fraction must lie in (0, 1]")
    mods = np.array([row[2] for row in path_profile(f, path)])
    start = len(mods) - max(1, math.ceil(tail_fraction * len(mods)))
    return float(mods[start:].min())
