"""Solution maps between members of the equation catalog.

Each map consumes a ClosedFormSolution of its declared source equation and
returns a ClosedFormSolution of the target equation (gauge maps also act on
sampled fields).  Weight factors use the positive real branch |.|^(1/2) and
quadratic phases carry the kinetic coefficient as 1/(4*sigma*...): with these
choices the three-step composition time-shift(1) o expansion(1) o
time-shift(1) reproduces the lens map exactly, and every map passes the
target-equation residual gate.  Where a formula admits a sign ambiguity, the
residual gate is the arbiter.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .equations import (CUBIC_NLS, CURRENT_NLS, EXTENDED_CURRENT_NLS,
                        FREE_LINEAR, GAUGED_NLS, EquationSpec, dnls2,
                        free_linear, gauged_nls, linear_potential_nls,
                        oscillator_nls, current_nls, variable_coeff_nls)
from .errors import BoundaryLeak, SingularMapPoint
from .grid import ComplexField, Grid1D, RealField, cumulative_integral
from .solutions import ClosedFormSolution

SINGULAR_MARGIN = 1e-6
DECAY_GATE = 1e-10


def _require_source(sol: ClosedFormSolution, allowed: tuple[str, ...],
                    map_name: str, sigma: float | None = None) -> None:
    eq = sol.solves
    if eq.variant not in allowed:
        raise ValueError(
            f"{map_name} expects a source solving one of {allowed}, "
            f"got {eq.variant}"
        )
    if sigma is not None and eq.sigma != sigma:
        raise ValueError(
            f"{map_name} expects kinetic coefficient sigma = {sigma:g}, "
            f"got {eq.sigma:g}"
        )


# ---------------------------------------------------------------------------
# Non-local gauge map
# ---------------------------------------------------------------------------

def _gauge_phase(rho: RealField, kappa: float) -> np.ndarray:
    return kappa ** 2 * cumulative_integral(rho).values


def gauge_field(field: ComplexField, kappa: float, direction: str = "forward",
                decay_gate: float = DECAY_GATE) -> ComplexField:
    """Multiply by exp(-+ i kappa^2 \\int_{-L}^x rho dy) on a sampled field.

    forward: psi = exp(-i k^2 P) phi;  backward is the inverse phase.
    The reference point is the left grid edge, which matches the line
    convention only while the density has decayed at the seam, hence the
    decay gate.
    """
    if direction not in ("forward", "backward"):
        raise ValueError("direction must be 'forward' or 'backward'")
    rho = np.abs(field.values) ** 2
    if float(max(rho[0], rho[-1])) > decay_gate:
        raise BoundaryLeak(
            f"edge density {max(rho[0], rho[-1]):.3e} exceeds the decay gate "
            f"{decay_gate:g}; the periodic-box gauge phase is not trustworthy"
        )
    phase = _gauge_phase(RealField(field.grid, rho, field.time_tag), kappa)
    sgn = -1.0 if direction == "forward" else 1.0
    return ComplexField(field.grid, np.exp(sgn * 1j * phase) * field.values,
                        field.time_tag)


_GAUGE_TRANSPORT = {
    ("forward", GAUGED_NLS): lambda eq: current_nls(eq.kappa),
    ("backward", CURRENT_NLS): lambda eq: gauged_nls(eq.kappa),
    ("backward", EXTENDED_CURRENT_NLS): lambda eq: dnls2(eq.kappa),
}


def gauge_solution(sol: ClosedFormSolution, kappa: float, grid: Grid1D,
                   direction: str = "forward",
                   decay_gate: float = DECAY_GATE) -> ClosedFormSolution:
    """Gauge map on a solution object.

    The cumulative phase is built from the density sampled on `grid`; off the
    nodes it is linearly interpolated, so the evaluator is exact on grid
    nodes and approximate in between.
    """
    key = (direction, sol.solves.variant)
    if key not in _GAUGE_TRANSPORT:
        raise ValueError(
            f"gauge {direction} has no declared target for a "
            f"{sol.solves.variant} source"
        )
    target = _GAUGE_TRANSPORT[key](sol.solves)
    sgn = -1.0 if direction == "forward" else 1.0

    def ev(t: float, x: np.ndarray) -> np.ndarray:
        base_grid_vals = sol(t, grid.x)
        rho = np.abs(base_grid_vals) ** 2
        if float(max(rho[0], rho[-1])) > decay_gate:
            raise BoundaryLeak(
                f"edge density exceeds the decay gate {decay_gate:g} at t={t:g}"
            )
        phase = _gauge_phase(RealField(grid, rho, t), kappa)
        return np.exp(sgn * 1j * np.interp(x, grid.x, phase)) * sol(t, x)

    return ClosedFormSolution(
        name=f"gauge_{direction}[k={kappa:g}]({sol.name})",
        solves=target,
        evaluator=ev,
        valid_from=sol.valid_from,
        valid_to=sol.valid_to,
        singular_times=sol.singular_times,
    )


def gauge_forward(obj, kappa: float, grid: Grid1D | None = None,
                  decay_gate: float = DECAY_GATE):
    """Gauge map, forward direction; dispatches on field vs solution."""
    if isinstance(obj, ComplexField):
        return gauge_field(obj, kappa, "forward", decay_gate)
    if grid is None:
        raise ValueError("gauge on a solution object needs a reference grid")
    return gauge_solution(obj, kappa, grid, "forward", decay_gate)


def gauge_backward(obj, kappa: float, grid: Grid1D | None = None,
                   decay_gate: float = DECAY_GATE):
    """Gauge map, backward direction (inverse phase)."""
    if isinstance(obj, ComplexField):
        return gauge_field(obj, kappa, "backward", decay_gate)
    if grid is None:
        raise ValueError("gauge on a solution object needs a reference grid")
    return gauge_solution(obj, kappa, grid, "backward", decay_gate)


def gauge_series(sol: ClosedFormSolution, times: Sequence[float], grid: Grid1D,
                 kappa: float, direction: str = "backward",
                 decay_gate: float = DECAY_GATE) -> list[ComplexField]:
    """Sample a solution on the grid at each time and gauge-map each sample."""
    return [gauge_field(sol.sample(grid, t), kappa, direction, decay_gate)
            for t in times]


# ---------------------------------------------------------------------------
# Conformal maps of the free (and cubic) equations
# ---------------------------------------------------------------------------

def time_shift(sol: ClosedFormSolution, eps: float) -> ClosedFormSolution:
    """(t, x) -> (t + eps, x) on the free equation."""
    _require_source(sol, (FREE_LINEAR,), "time_shift")

    def ev(t: float, x: np.ndarray) -> np.ndarray:
        return sol(t + eps, x)

    return ClosedFormSolution(
        name=f"shift[e={eps:g}]({sol.name})",
        solves=sol.solves,
        evaluator=ev,
        valid_from=sol.valid_from - eps,
        valid_to=sol.valid_to - eps,
        singular_times=tuple(s - eps for s in sol.singular_times),
    )


def dilate(sol: ClosedFormSolution, delta: float) -> ClosedFormSolution:
    """(T, X) = (delta^2 t, delta x) with weight |delta|^(1/2)."""
    if delta == 0.0:
        raise ValueError("dilatation parameter must be nonzero")
    _require_source(sol, (FREE_LINEAR,), "dilatation")
    d2 = delta * delta
    w = math.sqrt(abs(delta))

    def ev(t: float, x: np.ndarray) -> np.ndarray:
        return w * sol(t / d2, x / delta)

    return ClosedFormSolution(
        name=f"dilate[d={delta:g}]({sol.name})",
        solves=sol.solves,
        evaluator=ev,
        valid_from=sol.valid_from * d2,
        valid_to=sol.valid_to * d2,
        singular_times=tuple(s * d2 for s in sol.singular_times),
    )


def expand(sol: ClosedFormSolution, kappa_e: float) -> ClosedFormSolution:
    """Expansion: new(t,x) = |1-kt|^(-1/2) e^{-i k x^2 / (4 sigma (1-kt))}
    Psi(t/(1-kt), x/(1-kt)).

    The phase sign and the positive-real weight branch are the combination
    under which shift(1) o expand(1) o shift(1) equals the lens map on the
    nose; the free-equation residual gate confirms both.
    """
    _require_source(sol, (FREE_LINEAR,), "expansion")
    if kappa_e == 0.0:
        return sol
    sigma = sol.solves.sigma

    def ev(t: float, x: np.ndarray) -> np.ndarray:
        s = 1.0 - kappa_e * t
        if abs(s) < SINGULAR_MARGIN:
            raise SingularMapPoint(
                f"expansion singular at t = {1.0 / kappa_e:g} (got t = {t:g})")
        phase = np.exp(-1j * kappa_e * x ** 2 / (4.0 * sigma * s))
        return abs(s) ** -0.5 * phase * sol(t / s, x / s)

    return ClosedFormSolution(
        name=f"expand[k={kappa_e:g}]({sol.name})",
        solves=sol.solves,
        evaluator=ev,
        singular_times=(1.0 / kappa_e,),
    )


def lens_map(sol: ClosedFormSolution) -> ClosedFormSolution:
    """The nonlinear space-time map D: new(t,x) = |t|^(-1/2)
    e^{i x^2/(4 sigma t)} Psi(-1/t, -x/t).

    On the free equation it is a symmetry; on the constant-coefficient cubic
    equation (F, sigma = 1/2) it trades the constant coupling for F/t, i.e.
    the coefficient family 1/(a + b t) with a = 0, b = 1/F.
    """
    _require_source(sol, (FREE_LINEAR, CUBIC_NLS), "lens map")
    src = sol.solves
    if src.variant == CUBIC_NLS:
        if src.sigma != 0.5:
            raise ValueError("lens map on the cubic equation requires sigma = 1/2")
        if src.f_const <= 0:
            raise ValueError("lens map on the cubic equation requires F > 0")
        target = variable_coeff_nls(0.0, 1.0 / src.f_const)
        valid_from: float = 0.0
    else:
        target = src
        valid_from = -math.inf
    sigma = src.sigma

    def ev(t: float, x: np.ndarray) -> np.ndarray:
        if abs(t) < SINGULAR_MARGIN:
            raise SingularMapPoint(f"lens map singular at t = 0 (got t = {t:g})")
        phase = np.exp(1j * x ** 2 / (4.0 * sigma * t))
        return abs(t) ** -0.5 * phase * sol(-1.0 / t, -x / t)

    return ClosedFormSolution(
        name=f"D({sol.name})",
        solves=target,
        evaluator=ev,
        valid_from=valid_from,
        singular_times=(0.0,) if valid_from == -math.inf else (),
    )


# ---------------------------------------------------------------------------
# Frame maps (sigma = 1 conventions)
# ---------------------------------------------------------------------------

def accelerated_frame(sol: ClosedFormSolution, alpha: float) -> ClosedFormSolution:
    """Uniformly accelerated frame removing/creating a linear potential.

    new(t,x) = exp(-i(2 a x t + 4/3 a^2 t^3)) Psi(t, x + 2 a t^2); maps
    sigma = 1 free (or cubic-F) solutions to the linear-potential equation
    with the same cubic coefficient.
    """
    _require_source(sol, (FREE_LINEAR, CUBIC_NLS), "accelerated frame", sigma=1.0)
    if alpha == 0.0:
        return sol
    f = sol.solves.f_const if sol.solves.variant == CUBIC_NLS else 0.0
    target = linear_potential_nls(alpha, f_const=f)

    def ev(t: float, x: np.ndarray) -> np.ndarray:
        phase = np.exp(-1j * (2.0 * alpha * x * t + (4.0 / 3.0) * alpha ** 2 * t ** 3))
        return phase * sol(t, x + 2.0 * alpha * t ** 2)

    return ClosedFormSolution(
        name=f"accel[a={alpha:g}]({sol.name})",
        solves=target,
        evaluator=ev,
        valid_from=sol.valid_from,
        valid_to=sol.valid_to,
        singular_times=sol.singular_times,
    )


def niederer(sol: ClosedFormSolution, omega: float) -> ClosedFormSolution:
    """Time-reparametrizing map onto the harmonic background, |w t| < pi/2.

    new(t,x) = (cos wt)^(-1/2) exp(-i (w/4) x^2 tan wt)
               Psi(tan(wt)/w, x / cos wt).
    """
    _require_source(sol, (FREE_LINEAR, CUBIC_NLS), "niederer map", sigma=1.0)
    if omega == 0.0:
        return sol
    f = sol.solves.f_const if sol.solves.variant == CUBIC_NLS else 0.0
    target = oscillator_nls(omega, f_const=f)

    def ev(t: float, x: np.ndarray) -> np.ndarray:
        if abs(omega * t) >= math.pi / 2.0 - SINGULAR_MARGIN:
            raise SingularMapPoint(
                f"niederer map valid only for |omega t| < pi/2, got "
                f"omega*t = {omega * t:g}"
            )
        c = math.cos(omega * t)
        phase = np.exp(-1j * 0.25 * omega * x ** 2 * math.tan(omega * t))
        return c ** -0.5 * phase * sol(math.tan(omega * t) / omega, x / c)

    return ClosedFormSolution(
        name=f"niederer[w={omega:g}]({sol.name})",
        solves=target,
        evaluator=ev,
    )


# ---------------------------------------------------------------------------
# Map expressions (CLI surface): "shift:e=1+expand:k=1+shift:e=1", "D", ...
# ---------------------------------------------------------------------------

def apply_map_expression(expr: str, sol: ClosedFormSolution,
                         grid: Grid1D | None = None) -> ClosedFormSolution:
    """Apply a '+'-separated map composition, leftmost map first."""
    out = sol
    for token in expr.split("+"):
        token = token.strip()
        name, _, rest = token.partition(":")
        params = {}
        for item in filter(None, rest.split(",")):
            key, _, val = item.partition("=")
            params[key.strip()] = float(val)
        name = name.strip().lower()
        if name == "d":
            out = lens_map(out)
        elif name == "shift":
            out = time_shift(out, params.get("e", 0.0))
        elif name == "dilate":
            out = dilate(out, params.get("d", 1.0))
        elif name == "expand":
            out = expand(out, params.get("k", 0.0))
        elif name == "accel":
            out = accelerated_frame(out, params.get("a", 0.0))
        elif name == "niederer":
            out = niederer(out, params.get("w", 0.0))
        elif name == "gauge":
            direction = "backward" if params.pop("backward", 0.0) else "forward"
            if grid is None:
                raise ValueError("gauge map in an expression needs a grid")
            out = gauge_solution(out, params.get("k", 1.0), grid, direction)
        else:
            raise ValueError(f"unknown map {name!r} in expression {expr!r}")
    return out
