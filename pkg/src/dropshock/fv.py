"""First-order finite-volume solver on a uniform 1-D grid.

Godunov splitting per step: an upwind kinetic transport flux for the
conserved pair (alpha, q = alpha*u), then the exact exponential update of
the drag source.  The flux is the first-order moment closure of free
monokinetic transport, which keeps alpha nonnegative and the
reconstructed velocity inside the convex hull of the data under CFL <= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .core import ModelParams, RiemannData

__all__ = [
    "VACUUM_ALPHA",
    "SolverAbort",
    "Grid1D",
    "FieldState",
    "kinetic_flux",
    "reconstruct_velocity",
    "source_step",
    "advance",
    "shock_mass",
]

# cells at or below this volume fraction are treated as vacuum: their
# velocity is reported as the carrier velocity and their momentum zeroed
VACUUM_ALPHA = 1e-12


class SolverAbort(RuntimeError):
    """The time loop hit NaN/negative density or a CFL violation."""


@dataclass(frozen=True)
class Grid1D:
    x_min: float
    x_max: float
    n_cells: int

    def __post_init__(self) -> None:
        if self.n_cells < 1:
            raise ValueError("n_cells must be positive")
        if not self.x_max > self.x_min:
            raise ValueError("x_max must exceed x_min")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_cells

    def centers(self) -> np.ndarray:
        return self.x_min + (np.arange(self.n_cells) + 0.5) * self.dx

    def cell_index(self, x: float) -> int:
        """Index of the cell containing x (clipped to the grid)."""
        j = int(math.floor((x - self.x_min) / self.dx))
        return min(max(j, 0), self.n_cells - 1)


@dataclass(frozen=True)
class FieldState:
    """Cell-averaged volume fraction and momentum at one time."""

    grid: Grid1D
    alpha: np.ndarray
    q: np.ndarray
    time: float = 0.0

    def __post_init__(self) -> None:
        if self.alpha.shape != (self.grid.n_cells,) or self.q.shape != (self.grid.n_cells,):
            raise ValueError("alpha and q must have one value per cell")

    @classmethod
    def from_riemann(cls, grid: Grid1D, data: RiemannData) -> "FieldState":
        x = grid.centers()
        alpha = np.where(x <= 0.0, data.alpha_l, data.alpha_r)
        u = np.where(x <= 0.0, data.u_l, data.u_r)
        return cls(grid=grid, alpha=alpha, q=alpha * u, time=0.0)

    def total_mass(self) -> float:
        return float(np.sum(self.alpha) * self.grid.dx)


def reconstruct_velocity(state: FieldState, params: ModelParams, bounds=None) -> np.ndarray:
    """Cell velocities q/alpha, with vacuum cells pinned to the carrier velocity.

    ``bounds`` (lo, hi), when given, clips the result; the exact solution
    obeys the maximum principle so clipping only strips float noise.
    """
    safe = np.where(state.alpha > VACUUM_ALPHA, state.alpha, 1.0)
    u = np.where(state.alpha > VACUUM_ALPHA, state.q / safe, params.ua)
    if bounds is not None:
        u = np.clip(u, bounds[0], bounds[1])
    return u


def kinetic_flux(alpha_l, u_l, alpha_r, u_r):
    """Upwind kinetic interface flux (f_mass, f_momentum).

    Left cells contribute their rightward-moving content, right cells
    their leftward-moving content; consistent with (alpha*u, alpha*u^2)
    for equal states and positivity-preserving under CFL <= 1.
    """
    fl = np.asarray(alpha_l) * np.maximum(np.asarray(u_l), 0.0)
    fr = np.asarray(alpha_r) * np.minimum(np.asarray(u_r), 0.0)
    return fl + fr, fl * np.asarray(u_l) + fr * np.asarray(u_r)


def source_step(state: FieldState, params: ModelParams, dt: float) -> FieldState:
    """Exact drag update over dt: q relaxes toward alpha*ua, alpha unchanged."""
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    if params.mu == 0.0:
        return state
    decay = math.exp(-params.mu * dt)
    q_eq = state.alpha * params.ua
    return replace(state, q=q_eq + (state.q - q_eq) * decay)


def _hull_bounds(state: FieldState, params: ModelParams, pad: float = 1e-9):
    u = reconstruct_velocity(state, params)
    return float(np.min(u)) - pad, float(np.max(u)) + pad


def advance(
    state: FieldState,
    params: ModelParams,
    t_end: float,
    cfl: float = 0.15,
    fixed_dt: float = None,
    dt_cap: float = math.inf,
) -> FieldState:
    """March the state to t_end with transport-then-source splitting.

    Each step uses dt = min(cfl*dx/max|u|, dt_cap, remaining time), or the
    given ``fixed_dt`` (aborting if it violates CFL <= 1).  Boundaries are
    outflow (ghost cells copy the adjacent interior cell), so the total
    mass changes exactly by the net boundary flux.
    """
    if t_end < state.time:
        raise ValueError("t_end must not precede the state time")
    if fixed_dt is None and not 0.0 < cfl <= 1.0:
        raise ValueError("cfl must lie in (0, 1]")
    grid = state.grid
    dx = grid.dx
    alpha = state.alpha.astype(float).copy()
    q = state.q.astype(float).copy()
    t = state.time
    bounds = _hull_bounds(state, params)
    mu, ua = params.mu, params.ua

    step = 0
    while t < t_end - 1e-14 * max(1.0, abs(t_end)):
        step += 1
        work = FieldState(grid=grid, alpha=alpha, q=q, time=t)
        u = reconstruct_velocity(work, params, bounds)
        q = np.where(alpha > VACUUM_ALPHA, q, 0.0)
        umax = max(float(np.max(np.abs(u))), 1e-300)
        remaining = t_end - t
        if fixed_dt is not None:
            dt = min(fixed_dt, remaining)
            if dt * umax / dx > 1.0 + 1e-12:
                raise SolverAbort(
                    f"fixed dt={fixed_dt:g} violates CFL at step {step} "
                    f"(t={t:.6g}, max|u|={umax:g}, dx={dx:g})"
                )
        else:
            dt = min(cfl * dx / umax, dt_cap, remaining)

        a_ext = np.concatenate((alpha[:1], alpha, alpha[-1:]))
        u_ext = np.concatenate((u[:1], u, u[-1:]))
        f_mass, f_mom = kinetic_flux(a_ext[:-1], u_ext[:-1], a_ext[1:], u_ext[1:])
        lam = dt / dx
        alpha = alpha - lam * (f_mass[1:] - f_mass[:-1])
        q = q - lam * (f_mom[1:] - f_mom[:-1])

        if not (np.all(np.isfinite(alpha)) and np.all(np.isfinite(q))):
            raise SolverAbort(f"non-finite state at step {step} (t={t + dt:.6g})")
        if np.any(alpha < -1e-13):
            j = int(np.argmin(alpha))
            raise SolverAbort(
                f"negative volume fraction {alpha[j]:g} in cell {j} at step {step} (t={t + dt:.6g})"
            )
        np.maximum(alpha, 0.0, out=alpha)

        if mu > 0.0:
            decay = math.exp(-mu * dt)
            q_eq = alpha * ua
            q = q_eq + (q - q_eq) * decay
        t = t_end if remaining <= dt * (1.0 + 1e-12) else t + dt

    return FieldState(grid=grid, alpha=alpha, q=q, time=t_end)


def shock_mass(
    state: FieldState,
    center: float,
    half_width: float,
    alpha_left: float,
    alpha_right: float,
) -> float:
    """Excess mass in [center-half_width, center+half_width] over the background.

    The background is alpha_left for cells left of the center and
    alpha_right to the right, so a pure two-state profile reports zero and
    a concentrated spike reports the mass attributable to the point mass.
    """
    if half_width < 0.0:
        raise ValueError("half_width must be nonnegative")
    grid = state.grid
    if center - half_width < grid.x_min or center + half_width > grid.x_max:
        raise ValueError("window must lie inside the domain")
    x = grid.centers()
    sel = (x >= center - half_width) & (x <= center + half_width)
    background = np.where(x < center, alpha_left, alpha_right)
    return float(np.sum(state.alpha[sel] - background[sel]) * grid.dx)
