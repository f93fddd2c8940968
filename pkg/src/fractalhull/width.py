"""Support-function ("width") solver for planar IFS attractors.

The width function of a compact set K around a base point x assigns to each
unit direction d the offset ``h_x(d) = sup_{y in K} (y - x)^T d`` of the
supporting half-plane; it determines conv(K) exactly.  For an IFS attractor
it satisfies a self-similarity fixed-point equation

    h(d) = max_i [ |A_i^T d| * h(dir(A_i^T d)) + t_i^T d ]

whose right-hand side is a sup-norm contraction with the IFS factor c, so
iterating it from a constant function converges geometrically and the final
step size yields a certified a-posteriori error bound.

Directions are discretized on a uniform angle grid with periodic linear
interpolation in between; the interpolation error is covered separately by
a Lipschitz bound (any support function around a base inside B(base, R) is
R-Lipschitz in the angle), reported as ``interp_slack``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConvergenceError, InvalidBaseError, ValidationError
from .ifs import IFS, _readonly

TWO_PI = 2.0 * math.pi
_ITERATION_CAP = 1_000_000


class DirectionGrid:
    """Uniform angle grid on the circle; even size keeps antipodes on-grid."""

    __slots__ = ("n", "angles", "directions")

    def __init__(self, n: int):
        n = int(n)
        if n < 64:
            raise ValidationError("direction grid needs at least 64 angles")
        if n % 2:
            raise ValidationError("direction grid size must be even")
        self.n = n
        self.angles = _readonly(TWO_PI * np.arange(n) / n)
        self.directions = _readonly(
            np.stack([np.cos(self.angles), np.sin(self.angles)], axis=1)
        )

    @property
    def step(self) -> float:
        return TWO_PI / self.n

    def __eq__(self, other) -> bool:
        return isinstance(other, DirectionGrid) and other.n == self.n

    def __hash__(self) -> int:
        return hash(("DirectionGrid", self.n))

    def __repr__(self) -> str:
        return f"DirectionGrid(n={self.n})"


@dataclass(frozen=True)
class WidthSamples:
    """Width function sampled on a direction grid, with its error budget.

    ``iter_error`` bounds the sup-norm distance to the fixed point of the
    discretized operator (from the contraction-based stopping rule);
    ``interp_slack`` bounds the linear-interpolation error between grid
    angles.  Both are certified bounds, tracked separately on purpose: the
    discrete fixed point itself sits within an interpolation-driven offset
    of the continuum width function.
    """

    grid: DirectionGrid
    base: np.ndarray  # (2,)
    values: np.ndarray  # (n,)
    iter_error: float
    interp_slack: float
    iterations: int = 0

    @property
    def slack(self) -> float:
        """Total pointwise uncertainty iter_error + interp_slack."""
        return self.iter_error + self.interp_slack


@dataclass(frozen=True)
class RadiusValue:
    """Reach of the hull from the base point along one direction."""

    angle: float
    radius: float
    support_angle: float


def _interp_periodic(values: np.ndarray, angles):
    """Linear interpolation of grid samples, periodic in the angle."""
    n = values.shape[0]
    pos = np.mod(np.multiply(angles, n / TWO_PI), n)
    g0 = np.floor(pos).astype(int) % n
    frac = pos - np.floor(pos)
    g1 = (g0 + 1) % n
    return (1.0 - frac) * values[g0] + frac * values[g1]


def make_width_samples(grid: DirectionGrid, base, values,
                       iter_error: float, interp_slack: float,
                       iterations: int = 0) -> WidthSamples:
    """Assemble width samples from raw arrays, checking basic invariants."""
    base = _readonly(np.array(base, dtype=float))
    values = _readonly(np.array(values, dtype=float))
    if base.shape != (2,):
        raise ValidationError("base point must be a 2-vector")
    if values.shape != (grid.n,):
        raise ValidationError(
            f"expected {grid.n} samples, got shape {values.shape}"
        )
    if not np.all(np.isfinite(values)):
        raise ValidationError("width samples must be finite")
    if iter_error < 0.0 or interp_slack < 0.0:
        raise ValidationError("error bounds must be nonnegative")
    return WidthSamples(grid, base, values, float(iter_error),
                        float(interp_slack), int(iterations))


def _apply_operator(ifs: IFS, grid: DirectionGrid, values: np.ndarray) -> np.ndarray:
    dirs = grid.directions
    best = None
    for m in ifs.maps:
        v = dirs @ m.a  # row g holds (A^T d_g)^T
        norms = np.hypot(v[:, 0], v[:, 1])
        ang = np.arctan2(v[:, 1], v[:, 0])
        # norms == 0 makes the h-term vanish, leaving t^T d: the correct limit
        term = norms * _interp_periodic(values, ang) + dirs @ m.t
        best = term if best is None else np.maximum(best, term)
    return best


def selfsim_operator(ifs: IFS, w: WidthSamples) -> WidthSamples:
    """One application of the self-similarity operator to width samples around 0.

    Value at grid direction d:  ``max_i [ |A_i^T d| h(dir(A_i^T d)) + t_i^T d ]``
    with h read off by periodic linear interpolation; a vanishing image
    ``A_i^T d = 0`` degenerates the i-th term to ``t_i^T d``.  Error fields
    are carried through unchanged.
    """
    if ifs.dim != 2:
        raise ValidationError("the width solver is two-dimensional only")
    if not np.allclose(w.base, 0.0, atol=1e-15):
        raise ValidationError("the operator is defined for widths around the origin")
    out = _apply_operator(ifs, w.grid, w.values)
    return replace(w, values=_readonly(out))


def solve_width(ifs: IFS, n_grid: int = 4096, tol: float = 1e-6) -> WidthSamples:
    """Solve the width fixed-point equation around the origin.

    Parameters
    ----------
    ifs : IFS
        Two-dimensional system to solve.
    n_grid : int
        Number of grid angles (even, >= 64).
    tol : float
        Target for the a-posteriori bound: iteration stops once
        ``step * c / (1 - c) <= tol``.

    Returns
    -------
    WidthSamples
        Samples around base 0 with ``iter_error = step * c / (1 - c)`` and
        ``interp_slack = R * pi / n_grid`` where R bounds the circumradius.

    The start function is the constant ``R0 = max_i |t_i| / (1 - c)``, the
    width of a ball certain to contain the attractor.
    """
    if ifs.dim != 2:
        raise ValidationError("the width solver is two-dimensional only")
    if tol <= 0.0:
        raise ValidationError("tol must be positive")
    grid = DirectionGrid(n_grid)
    c = ifs.c
    r0 = max(float(np.linalg.norm(m.t)) for m in ifs.maps) / (1.0 - c)
    values = np.full(grid.n, r0)
    delta = math.inf
    iterations = 0
    while iterations < _ITERATION_CAP:
        new = _apply_operator(ifs, grid, values)
        delta = float(np.max(np.abs(new - values)))
        values = new
        iterations += 1
        if delta * c <= tol * (1.0 - c):
            break
    else:
        raise ConvergenceError(
            f"width iteration did not converge within {_ITERATION_CAP} steps"
        )
    iter_error = delta * c / (1.0 - c)
    r_bound = max(float(values.max()), 0.0) + iter_error
    interp_slack = r_bound * math.pi / grid.n
    return WidthSamples(grid, _readonly(np.zeros(2)), _readonly(values),
                        iter_error, interp_slack, iterations)


def rebase_width(w: WidthSamples, new_base) -> WidthSamples:
    """Translate the base point: h_new(d) = h_old(d) + (old - new)^T d."""
    new_base = np.asarray(new_base, dtype=float)
    shift = w.grid.directions @ (w.base - new_base)
    return replace(w, base=_readonly(new_base.copy()),
                   values=_readonly(w.values + shift))


def eval_width(w: WidthSamples, angle):
    """Width at an arbitrary angle by periodic linear interpolation.

    Point uncertainty is ``w.iter_error + w.interp_slack``.  Accepts a
    scalar or an array of angles.
    """
    out = _interp_periodic(w.values, angle)
    if np.isscalar(angle) or np.ndim(angle) == 0:
        return float(out)
    return out


def _require_base_inside(w: WidthSamples) -> None:
    worst = float(w.values.min())
    if worst < -w.iter_error - 1e-15:
        raise InvalidBaseError(
            f"base point lies outside the hull (min width {worst:.6g} "
            f"< -iter_error {-w.iter_error:.6g})"
        )


def circumradius(w: WidthSamples) -> float:
    """Certified upper bound on sup_d h(d), the hull radius around the base."""
    _require_base_inside(w)
    return float(w.values.max()) + w.iter_error + w.interp_slack


def radius_from_width(w: WidthSamples, angle: float) -> RadiusValue:
    """Reach of the hull in one direction, from the width/radius duality.

    ``r(d) = min over grid directions e with d^T e > 0 of h(e) / (d^T e)``;
    the minimizing e is the supporting direction.  Tiny negative minima
    (error artifacts around a boundary base point) are clamped to 0.
    """
    _require_base_inside(w)
    d = np.array([math.cos(angle), math.sin(angle)])
    dots = w.grid.directions @ d
    mask = dots > 0.0
    ratios = w.values[mask] / dots[mask]
    pos = int(np.argmin(ratios))
    support_angle = float(w.grid.angles[np.nonzero(mask)[0][pos]])
    return RadiusValue(float(angle), max(float(ratios[pos]), 0.0), support_angle)


def hull_contains(w: WidthSamples, x, slack: float = 0.0):
    """Full-direction membership test against the sampled hull.

    True iff ``(x - base)^T e <= h(e) + iter_error + slack`` for every grid
    direction e.  Accepts one point of shape (2,) or a batch of shape
    (k, 2); the batch form returns a boolean array.
    """
    x = np.asarray(x, dtype=float)
    budget = w.values + (w.iter_error + slack)
    if x.ndim == 1:
        proj = w.grid.directions @ (x - w.base)
        return bool(np.all(proj <= budget))
    out = np.empty(x.shape[0], dtype=bool)
    block = max(1, 2**24 // max(w.grid.n, 1))  # cap the projection buffer
    for lo in range(0, x.shape[0], block):
        proj = (x[lo:lo + block] - w.base) @ w.grid.directions.T
        out[lo:lo + block] = np.all(proj <= budget, axis=1)
    return out


def width_csv(w: WidthSamples) -> str:
    """CSV export: header ``angle,h``, one row per grid angle (radians, 12
    significant digits), '\\n' line endings."""
    lines = ["angle,h"]
    for angle, value in zip(w.grid.angles.tolist(), w.values.tolist()):
        lines.append(f"{angle:.12g},{value:.17g}")
    return "\n".join(lines) + "\n"
