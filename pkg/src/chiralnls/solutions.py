"""Closed-form solutions, each bound to the equation it solves.

Every generator returns a ClosedFormSolution whose evaluator is an exact
analytic formula; the test suite gates each (solution, equation) pair through
the residual oracle, which is what fixes the phase conventions below.  The
quadratic-phase coefficient of the self-similar soliton is 1/(4*sigma*t); for
the sigma = 1/2 kinetic convention used here that is x^2/(2t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .equations import (EquationSpec, cubic_nls, current_nls,
                        extended_current_nls, free_linear, variable_coeff_nls)
from .errors import (ChiralityViolation, DegenerateVelocity, InvalidTime,
                     SingularMapPoint, WidthViolation)
from .grid import ComplexField, Grid1D

TIME_MARGIN = 1e-6

Evaluator = Callable[[float, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class ClosedFormSolution:
    """Analytic solution: evaluator (t, x) -> complex, plus metadata.

    valid_from/valid_to bound the usable time window (open interval when
    finite); singular_times lists isolated points guarded with TIME_MARGIN.
    """

    name: str
    solves: EquationSpec
    evaluator: Evaluator
    valid_from: float = -math.inf
    valid_to: float = math.inf
    singular_times: tuple[float, ...] = ()

    def check_time(self, t: float) -> None:
        if not (self.valid_from < t < self.valid_to):
            raise InvalidTime(
                f"{self.name}: t = {t:g} outside validity window "
                f"({self.valid_from:g}, {self.valid_to:g})"
            )
        for s in self.singular_times:
            if abs(t - s) < TIME_MARGIN:
                raise SingularMapPoint(
                    f"{self.name}: t = {t:g} within margin of singular time {s:g}"
                )

    def __call__(self, t: float, x: np.ndarray) -> np.ndarray:
        self.check_time(t)
        return self.evaluator(t, np.asarray(x, dtype=np.float64))

    def sample(self, grid: Grid1D, t: float) -> ComplexField:
        return ComplexField(grid, self(t, grid.x), time_tag=t)


@dataclass(frozen=True)
class SolitonParams:
    """Travelling-soliton parameters; alpha**2 = v**2 - 2*omega.

    alpha is stored (positive root) and revalidated rather than recomputed
    silently, since it is the invariant the width claims hang on.
    """

    v: float
    omega: float
    kappa: float
    x0: float = 0.0
    sign: int = 1
    alpha: float = field(init=False)

    def __post_init__(self) -> None:
        if self.v <= 0:
            raise ChiralityViolation(f"soliton velocity must be positive, got v = {self.v:g}")
        width_sq = self.v ** 2 - 2.0 * self.omega
        if width_sq <= 0:
            raise WidthViolation(
                f"v^2 - 2*omega = {width_sq:g} must be positive")
        if self.kappa == 0.0:
            raise ValueError("kappa must be nonzero")
        if self.sign not in (-1, 1):
            raise ValueError("sign must be +1 or -1")
        object.__setattr__(self, "alpha", math.sqrt(width_sq))


def chiral_soliton(params: SolitonParams) -> ClosedFormSolution:
    """Travelling sech soliton of the current-coupled equation.

    psi = sign * A exp(i(vx - omega t)) sech(alpha (x - x0 - v t)) with
    A = alpha / sqrt(2 kappa^2 v).  Also solves the constant-coefficient
    cubic equation with F = 2 kappa^2 v; exists only for v > 0 (the
    effective coupling must be attractive).
    """
    v, om, ka = params.v, params.omega, params.kappa
    al, x0, sgn = params.alpha, params.x0, params.sign
    amp = sgn * al * math.sqrt(1.0 / (2.0 * ka ** 2 * v))

    def ev(t: float, x: np.ndarray) -> np.ndarray:
        return amp * np.exp(1j * (v * x - om * t)) / np.cosh(al * (x - x0 - v * t))

    return ClosedFormSolution(
        name=f"chiral(v={v:g},omega={om:g},kappa={ka:g})",
        solves=current_nls(ka),
        evaluator=ev,
    )


def cubic_coupling(params: SolitonParams) -> float:
    """Constant cubic coefficient carried by the chiral soliton: 2 kappa^2 v."""
    return 2.0 * params.kappa ** 2 * params.v


def standing_soliton(x0: float = 0.0) -> ClosedFormSolution:
    """exp(it/2) sech(x - x0), the rest soliton of the cubic equation (F=1)."""

    def ev(t: float, x: np.ndarray) -> np.ndarray:
        return np.exp(0.5j * t) / np.cosh(x - x0)

    return ClosedFormSolution(
        name=f"standing(x0={x0:g})",
        solves=cubic_nls(1.0),
        evaluator=ev,
    )


def standing_soliton_sigma1(x0: float = 0.0) -> ClosedFormSolution:
    """sqrt(2) exp(it) sech(x - x0), rest soliton for the sigma = 1 convention."""

    def ev(t: float, x: np.ndarray) -> np.ndarray:
        return math.sqrt(2.0) * np.exp(1j * t) / np.cosh(x - x0)

    return ClosedFormSolution(
        name=f"standing_sigma1(x0={x0:g})",
        solves=cubic_nls(1.0, sigma=1.0),
        evaluator=ev,
    )


def time_dependent_soliton(x0: float = 0.0) -> ClosedFormSolution:
    """Self-similar soliton of the 1/t-coefficient cubic equation, t > 0.

    psi = t^(-1/2) exp(i(x^2/(2t) - 1/(2t))) sech(x/t + x0).  The t < 0
    branch (imaginary square root) is excluded.
    """

    def ev(t: float, x: np.ndarray) -> np.ndarray:
        phase = x ** 2 / (2.0 * t) - 0.5 / t
        return t ** -0.5 * np.exp(1j * phase) / np.cosh(x / t + x0)

    return ClosedFormSolution(
        name=f"lens(x0={x0:g})",
        solves=variable_coeff_nls(0.0, 1.0),
        evaluator=ev,
        valid_from=0.0,
    )


def extended_soliton(v: float, kappa: float) -> ClosedFormSolution:
    """Travelling wave of the quintic-extended current equation.

    rho = (|v| / 2 kappa^2) / (sqrt(2) cosh(v(x - v t / 2)) + sign v),
    theta = v x / 2, psi = sqrt(rho) exp(i theta); the profile moves at v/2.
    """
    if v == 0.0:
        raise DegenerateVelocity("extended soliton requires v != 0")
    if kappa == 0.0:
        raise ValueError("kappa must be nonzero")
    amp = abs(v) / (2.0 * kappa ** 2)
    sgn = 1.0 if v > 0 else -1.0

    def ev(t: float, x: np.ndarray) -> np.ndarray:
        rho = amp / (math.sqrt(2.0) * np.cosh(v * (x - 0.5 * v * t)) + sgn)
        return np.sqrt(rho) * np.exp(0.5j * v * x)

    return ClosedFormSolution(
        name=f"extended(v={v:g},kappa={kappa:g})",
        solves=extended_current_nls(kappa),
        evaluator=ev,
    )


def extended_density(v: float, kappa: float, t: float, x: np.ndarray) -> np.ndarray:
    """Density profile of the extended soliton (handy for the ODE oracle)."""
    amp = abs(v) / (2.0 * kappa ** 2)
    sgn = 1.0 if v > 0 else -1.0
    return amp / (math.sqrt(2.0) * np.cosh(v * (np.asarray(x) - 0.5 * v * t)) + sgn)


def gaussian_free_packet(sigma: float = 0.5, width: float = 0.25) -> ClosedFormSolution:
    """Spreading Gaussian solving the free equation with the given sigma.

    psi = d^(-1/2) exp(-w x^2 / d), d = 1 + 4i sigma w t; the normalization
    follows from substituting the ansatz into the free equation.
    """
    if width <= 0:
        raise ValueError("width parameter must be positive")

    def ev(t: float, x: np.ndarray) -> np.ndarray:
        d = 1.0 + 4j * sigma * width * t
        return d ** -0.5 * np.exp(-width * x ** 2 / d)

    return ClosedFormSolution(
        name=f"gaussian(sigma={sigma:g})",
        solves=free_linear(sigma),
        evaluator=ev,
    )


# ---------------------------------------------------------------------------
# Name-addressable catalog (CLI surface)
# ---------------------------------------------------------------------------

def _parse_params(spec: str) -> dict[str, float]:
    out: dict[str, float] = {}
    if not spec:
        return out
    for item in spec.split(","):
        key, _, val = item.partition("=")
        if not _ or not key:
            raise ValueError(f"malformed parameter {item!r}, expected key=value")
        out[key.strip()] = float(val)
    return out


def solution_from_name(descriptor: str) -> ClosedFormSolution:
    """Build a catalog solution from 'name' or 'name:key=val,key=val'.

    Known names: chiral (v, w, k, x0, sign), standing (x0), lens (x0),
    extended (v, k), gaussian (sigma), standing1 (x0).
    """
    name, _, rest = descriptor.partition(":")
    p = _parse_params(rest)
    name = name.strip().lower()
    if name == "chiral":
        params = SolitonParams(v=p.get("v", 2.0), omega=p.get("w", 1.0),
                               kappa=p.get("k", 1.0), x0=p.get("x0", 0.0),
                               sign=int(p.get("sign", 1)))
        return chiral_soliton(params)
    if name == "standing":
        return standing_soliton(p.get("x0", 0.0))
    if name == "standing1":
        return standing_soliton_sigma1(p.get("x0", 0.0))
    if name == "lens":
        return time_dependent_soliton(p.get("x0", 0.0))
    if name == "extended":
        return extended_soliton(p.get("v", 2.0), p.get("k", 1.0))
    if name == "gaussian":
        return gaussian_free_packet(p.get("sigma", 0.5))
    raise ValueError(f"unknown solution name {name!r}")
