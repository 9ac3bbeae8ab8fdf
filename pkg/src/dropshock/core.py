"""Model parameters, Riemann data and exponential-relaxation kernels.

The model is pressureless gas dynamics for a dispersed phase (volume
fraction ``alpha``, velocity ``u``) with a linear drag source that pulls
the velocity toward the carrier-fluid velocity ``ua`` at rate ``mu``.
Along a characteristic the velocity relaxes exponentially, and positions
follow by integrating the relaxed velocity; the two kernels below are the
building blocks for every closed-form solution in this package.

All operations are pure functions of immutable values and accept scalars
or numpy arrays in their time/space arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

__all__ = [
    "BlowupError",
    "ModelParams",
    "RiemannData",
    "SmoothProfile",
    "decay_integral",
    "relax_velocity",
    "characteristic_position",
]


class BlowupError(ArithmeticError):
    """A smooth-solution formula was evaluated at or past its blowup time."""


def _match(template, value):
    """Return ``value`` as a float when ``template`` is scalar, else as an array."""
    if np.ndim(template) == 0:
        return float(value)
    return np.asarray(value, dtype=float)


@dataclass(frozen=True)
class ModelParams:
    """Drag coefficient ``mu`` (1/time) and carrier velocity ``ua``.

    ``mu = 0`` selects the homogeneous (drag-free) limit; every kernel
    reduces to its analytic limit there, so the zero-drag system is a
    degenerate configuration rather than a separate code path.
    """

    mu: float
    ua: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.mu) and self.mu >= 0.0):
            raise ValueError(f"mu must be finite and nonnegative, got {self.mu!r}")
        if not np.isfinite(self.ua):
            raise ValueError(f"ua must be finite, got {self.ua!r}")


@dataclass(frozen=True)
class RiemannData:
    """Piecewise-constant initial data with a single jump at x = 0.

    ``omega0`` is the weight of a point mass sitting on the jump at t = 0;
    it is zero for the plain Riemann problem and may be positive when the
    run starts from an already-formed singular state.
    """

    alpha_l: float
    u_l: float
    alpha_r: float
    u_r: float
    omega0: float = 0.0

    def __post_init__(self) -> None:
        for name in ("alpha_l", "alpha_r", "omega0"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v >= 0.0):
                raise ValueError(f"{name} must be finite and nonnegative, got {v!r}")
        if not (np.isfinite(self.u_l) and np.isfinite(self.u_r)):
            raise ValueError("u_l and u_r must be finite")


@dataclass(frozen=True)
class SmoothProfile:
    """C1 initial data (u0, alpha0) on a closed interval.

    ``u0``, ``u0_prime`` and ``alpha0`` must accept numpy arrays.
    ``u0_prime`` is checked against central differences at the sample
    points on construction (tolerance 1e-6 relative to max(1, |u0'|));
    pass ``check_derivative=False`` for deliberately non-smooth data.
    """

    u0: Callable
    u0_prime: Callable
    alpha0: Callable
    domain: Tuple[float, float]
    sample_count: int = 2001
    check_derivative: bool = True

    def __post_init__(self) -> None:
        lo, hi = self.domain
        if not (np.isfinite(lo) and np.isfinite(hi) and hi > lo):
            raise ValueError(f"domain must be a nonempty interval, got {self.domain!r}")
        if self.sample_count < 2:
            raise ValueError("sample_count must be at least 2")
        if self.check_derivative:
            self._verify_derivative()

    def samples(self) -> np.ndarray:
        return np.linspace(self.domain[0], self.domain[1], self.sample_count)

    def _verify_derivative(self, rtol: float = 1e-6, h: float = 1e-6) -> None:
        x = self.samples()
        fd = (np.asarray(self.u0(x + h)) - np.asarray(self.u0(x - h))) / (2.0 * h)
        claimed = np.asarray(self.u0_prime(x), dtype=float)
        tol = rtol * np.maximum(1.0, np.abs(claimed))
        bad = np.abs(fd - claimed) > tol
        if np.any(bad):
            i = int(np.argmax(bad))
            raise ValueError(
                "u0_prime disagrees with central differences at "
                f"x={x[i]:.6g}: claimed {claimed[i]:.6g}, finite difference {fd[i]:.6g}"
            )


def decay_integral(mu: float, t):
    """Integral of exp(-mu*s) over [0, t]: (1 - exp(-mu*t))/mu, with limit t at mu = 0.

    Evaluated through expm1 so there is no cancellation as mu*t -> 0;
    relative error stays within a few ulps for mu*t in [0, 50].
    """
    if not (mu >= 0.0 and math.isfinite(mu)):
        raise ValueError(f"mu must be finite and nonnegative, got {mu!r}")
    if isinstance(t, float) or isinstance(t, int):
        t = float(t)
        if not (t >= 0.0 and math.isfinite(t)):
            raise ValueError("t must be finite and nonnegative")
        return t if mu == 0.0 else -math.expm1(-mu * t) / mu
    tt = np.asarray(t, dtype=float)
    if np.any(tt < 0.0) or not np.all(np.isfinite(tt)):
        raise ValueError("t must be finite and nonnegative")
    if mu == 0.0:
        return _match(t, tt.copy())
    return _match(t, -np.expm1(-mu * tt) / mu)


def relax_velocity(u0, params: ModelParams, t):
    """Velocity along a characteristic: ua + (u0 - ua) * exp(-mu*t).

    Monotone in t toward ``ua``; the identity for mu = 0.
    """
    if isinstance(t, (float, int)) and isinstance(u0, (float, int)):
        t = float(t)
        if not (t >= 0.0 and math.isfinite(t)):
            raise ValueError("t must be finite and nonnegative")
        return params.ua + (float(u0) - params.ua) * math.exp(-params.mu * t)
    tt = np.asarray(t, dtype=float)
    if np.any(tt < 0.0) or not np.all(np.isfinite(tt)):
        raise ValueError("t must be finite and nonnegative")
    out = params.ua + (np.asarray(u0, dtype=float) - params.ua) * np.exp(-params.mu * tt)
    if np.ndim(t) == 0 and np.ndim(u0) == 0:
        return float(out)
    return out


def characteristic_position(x0, u0_at_x0, params: ModelParams, t):
    """Position at time t of the characteristic leaving x0 with velocity u0_at_x0.

    x0 + ua*t + (u0 - ua) * decay_integral(mu, t); a straight line for mu = 0.
    """
    if isinstance(t, (float, int)) and isinstance(u0_at_x0, (float, int)) and isinstance(x0, (float, int)):
        return float(x0) + params.ua * float(t) + (float(u0_at_x0) - params.ua) * decay_integral(
            params.mu, float(t)
        )
    out = (
        np.asarray(x0, dtype=float)
        + params.ua * np.asarray(t, dtype=float)
        + (np.asarray(u0_at_x0, dtype=float) - params.ua) * decay_integral(params.mu, t)
    )
    if np.ndim(x0) == 0 and np.ndim(u0_at_x0) == 0 and np.ndim(t) == 0:
        return float(out)
    return out
