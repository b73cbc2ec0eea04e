"""Catalog of evolution equations, all in the common form i dpsi/dt = RHS.

Every variant is evaluated through ``time_derivative`` (returns dpsi/dt) so
the integrator and the residual oracles share one contract.  The kinetic
coefficient sigma multiplying d2/dx2 is stored explicitly per variant and is
never inferred:

==========================  =====  ==============================================
variant                     sigma  i dpsi/dt =
==========================  =====  ==============================================
free_linear                 s      -s psi_xx
cubic_nls                   s      -s psi_xx - F |psi|^2 psi
variable_coeff_nls          1/2    -1/2 psi_xx - |psi|^2 psi / (a + b t)
current_nls                 1/2    -1/2 psi_xx - 2 k^2 j psi
gauged_nls                  1/2    -1/2 (d_x - i k^2 rho)^2 phi - k^2 j_cov phi
extended_current_nls        1/2    -1/2 psi_xx - 2 k^2 j psi - 3/2 k^4 |psi|^4 psi
dnls2                       1/2    -1/2 phi_xx + 2i k^2 rho phi_x
linear_potential_nls        1      -psi_xx + (2 a x - F |psi|^2) psi
oscillator_nls              1      -psi_xx + (w^2 x^2/4 - F |psi|^2 / cos wt) psi
==========================  =====  ==============================================

The sign of the dnls2 derivative term is the one under which the gauge image
of the quintic-extension travelling wave has vanishing residual; see the
transform tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularCoefficient
from .grid import ComplexField, Grid1D, RealField, fd_dx, spectral_dx

FREE_LINEAR = "free_linear"
CUBIC_NLS = "cubic_nls"
VARIABLE_COEFF_NLS = "variable_coeff_nls"
CURRENT_NLS = "current_nls"
GAUGED_NLS = "gauged_nls"
EXTENDED_CURRENT_NLS = "extended_current_nls"
DNLS2 = "dnls2"
LINEAR_POTENTIAL_NLS = "linear_potential_nls"
OSCILLATOR_NLS = "oscillator_nls"

VARIANTS = frozenset({
    FREE_LINEAR, CUBIC_NLS, VARIABLE_COEFF_NLS, CURRENT_NLS, GAUGED_NLS,
    EXTENDED_CURRENT_NLS, DNLS2, LINEAR_POTENTIAL_NLS, OSCILLATOR_NLS,
})

_KAPPA_VARIANTS = frozenset({CURRENT_NLS, GAUGED_NLS, EXTENDED_CURRENT_NLS, DNLS2})

COEFFICIENT_MARGIN = 1e-9


@dataclass(frozen=True)
class EquationSpec:
    """Tagged description of one member of the equation family."""

    variant: str
    sigma: float
    kappa: float = 0.0
    f_const: float = 0.0
    a: float = 0.0
    b: float = 0.0
    alpha: float = 0.0
    omega: float = 0.0

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown equation variant {self.variant!r}")
        if self.sigma not in (0.5, 1.0):
            raise ValueError("sigma must be 1/2 or 1")
        if self.variant in _KAPPA_VARIANTS and self.kappa == 0.0:
            raise ValueError(f"{self.variant} requires kappa != 0")
        if self.variant == VARIABLE_COEFF_NLS and self.a == 0.0 and self.b == 0.0:
            raise ValueError("variable_coeff_nls requires (a, b) != (0, 0)")

    def label(self) -> str:
        parts = [self.variant]
        for name in ("kappa", "f_const", "a", "b", "alpha", "omega"):
            v = getattr(self, name)
            if v != 0.0:
                parts.append(f"{name}={v:g}")
        parts.append(f"sigma={self.sigma:g}")
        return " ".join(parts)


def free_linear(sigma: float = 0.5) -> EquationSpec:
    return EquationSpec(FREE_LINEAR, sigma=sigma)


def cubic_nls(f_const: float = 1.0, sigma: float = 0.5) -> EquationSpec:
    return EquationSpec(CUBIC_NLS, sigma=sigma, f_const=f_const)


def variable_coeff_nls(a: float = 0.0, b: float = 1.0) -> EquationSpec:
    """Cubic equation with coefficient F(t) = 1/(a + b t)."""
    return EquationSpec(VARIABLE_COEFF_NLS, sigma=0.5, a=a, b=b)


def current_nls(kappa: float) -> EquationSpec:
    return EquationSpec(CURRENT_NLS, sigma=0.5, kappa=kappa)


def gauged_nls(kappa: float) -> EquationSpec:
    return EquationSpec(GAUGED_NLS, sigma=0.5, kappa=kappa)


def extended_current_nls(kappa: float) -> EquationSpec:
    return EquationSpec(EXTENDED_CURRENT_NLS, sigma=0.5, kappa=kappa)


def dnls2(kappa: float) -> EquationSpec:
    return EquationSpec(DNLS2, sigma=0.5, kappa=kappa)


def linear_potential_nls(alpha: float, f_const: float = 2.0) -> EquationSpec:
    """Uniform-force equation; f_const = 0 drops the cubic term."""
    return EquationSpec(LINEAR_POTENTIAL_NLS, sigma=1.0, alpha=alpha,
                        f_const=f_const)


def oscillator_nls(omega: float, f_const: float = 1.0) -> EquationSpec:
    """Harmonic-background equation; f_const = 0 drops the cubic term."""
    if omega == 0.0:
        raise ValueError("oscillator_nls requires omega != 0")
    return EquationSpec(OSCILLATOR_NLS, sigma=1.0, omega=omega,
                        f_const=f_const)


@dataclass(frozen=True)
class DnlsCoefficients:
    """Coefficients of i(a u u* u_x + b u^2 u*_x) + c u^3 u*^2."""

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        if not all(map(math.isfinite, (self.a, self.b, self.c))):
            raise ValueError("coefficients must be finite")


def dnls_coefficients(eq: EquationSpec) -> DnlsCoefficients | None:
    """Derivative-nonlinearity normal form of a catalog member, if any."""
    k2 = eq.kappa ** 2
    if eq.variant == CURRENT_NLS:
        return DnlsCoefficients(-k2, k2, 0.0)
    if eq.variant == EXTENDED_CURRENT_NLS:
        return DnlsCoefficients(-k2, k2, 1.5 * k2 ** 2)
    if eq.variant == DNLS2:
        return DnlsCoefficients(-2.0 * k2, 0.0, 0.0)
    return None


def claims_integrable(eq: EquationSpec) -> bool | None:
    """Catalog metadata: is this member in the integrable family?"""
    if eq.variant in (CURRENT_NLS,):
        return False
    if eq.variant in (EXTENDED_CURRENT_NLS, DNLS2):
        return True
    return None


# ---------------------------------------------------------------------------
# Currents
# ---------------------------------------------------------------------------

def current(psi: ComplexField) -> RealField:
    """j = Im(psi* psi_x), the plain probability current."""
    dpsi = spectral_dx(psi.values, psi.grid, 1)
    return RealField(psi.grid, np.imag(np.conj(psi.values) * dpsi), psi.time_tag)


def covariant_current(phi: ComplexField, kappa: float) -> RealField:
    """j = Im(phi* D phi) with D = d_x - i kappa^2 rho.

    Equals current(phi) - kappa^2 rho^2 pointwise; computed directly from the
    covariant derivative.
    """
    rho = np.abs(phi.values) ** 2
    dphi = spectral_dx(phi.values, phi.grid, 1) - 1j * kappa ** 2 * rho * phi.values
    return RealField(phi.grid, np.imag(np.conj(phi.values) * dphi), phi.time_tag)


# ---------------------------------------------------------------------------
# Right-hand sides
# ---------------------------------------------------------------------------

def variable_coefficient(eq: EquationSpec, t: float) -> float:
    """F(t) = 1/(a + b t), guarded against the pole."""
    denom = eq.a + eq.b * t
    if abs(denom) < COEFFICIENT_MARGIN:
        raise SingularCoefficient(f"a + b t = {denom:g} at t = {t:g}")
    return 1.0 / denom


def oscillator_coefficient(eq: EquationSpec, t: float) -> float:
    """F / cos(omega t), guarded against the pole."""
    c = math.cos(eq.omega * t)
    if abs(c) < COEFFICIENT_MARGIN:
        raise SingularCoefficient(f"cos(omega t) = {c:g} at t = {t:g}")
    return eq.f_const / c


def _dx(values: np.ndarray, grid: Grid1D, order: int, derivative: str) -> np.ndarray:
    if derivative == "spectral":
        return spectral_dx(values, grid, order)
    if derivative == "fd_interior":
        return fd_dx(values, grid, order)
    raise ValueError("derivative must be 'spectral' or 'fd_interior'")


def nonlinear_term(eq: EquationSpec, t: float, values: np.ndarray, grid: Grid1D,
                   *, dealias: bool = False,
                   derivative: str = "spectral") -> np.ndarray:
    """Non-dispersive part of dpsi/dt, i.e. -i*(RHS + sigma*psi_xx).

    With dealias=True the result is filtered with the 2/3-rule mask, which
    suppresses aliasing of the cubic/quintic products on the uniform grid.
    """
    v = eq.variant
    if v == FREE_LINEAR:
        return np.zeros_like(values)

    rho = np.abs(values) ** 2
    if v == CUBIC_NLS:
        w = -eq.f_const * rho * values
    elif v == VARIABLE_COEFF_NLS:
        w = -variable_coefficient(eq, t) * rho * values
    elif v == CURRENT_NLS:
        j = np.imag(np.conj(values) * _dx(values, grid, 1, derivative))
        w = -2.0 * eq.kappa ** 2 * j * values
    elif v == EXTENDED_CURRENT_NLS:
        j = np.imag(np.conj(values) * _dx(values, grid, 1, derivative))
        w = (-2.0 * eq.kappa ** 2 * j - 1.5 * eq.kappa ** 4 * rho ** 2) * values
    elif v == DNLS2:
        # derivative-term sign fixed by the residual of the gauge-transformed
        # quintic-extension soliton
        w = 2j * eq.kappa ** 2 * rho * _dx(values, grid, 1, derivative)
    elif v == GAUGED_NLS:
        k2 = eq.kappa ** 2
        dphi = _dx(values, grid, 1, derivative)
        cov = dphi - 1j * k2 * rho * values
        cov2 = _dx(cov, grid, 1, derivative) - 1j * k2 * rho * cov
        jcov = np.imag(np.conj(values) * cov)
        lap = _dx(values, grid, 2, derivative)
        w = -0.5 * cov2 - k2 * jcov * values + 0.5 * lap
    elif v == LINEAR_POTENTIAL_NLS:
        w = (2.0 * eq.alpha * grid.x - eq.f_const * rho) * values
    elif v == OSCILLATOR_NLS:
        pot = 0.25 * eq.omega ** 2 * grid.x ** 2
        w = (pot - oscillator_coefficient(eq, t) * rho) * values
    else:  # pragma: no cover
        raise ValueError(f"unhandled variant {v!r}")

    out = -1j * w
    if dealias:
        out = np.fft.ifft(grid.dealias_mask * np.fft.fft(out))
    return out


def time_derivative(eq: EquationSpec, t: float, psi: ComplexField, *,
                    dealias: bool = False,
                    derivative: str = "spectral") -> ComplexField:
    """dpsi/dt for the given equation, evaluated at (t, psi)."""
    lap = _dx(psi.values, psi.grid, 2, derivative)
    lin = 1j * eq.sigma * lap
    nonlin = nonlinear_term(eq, t, psi.values, psi.grid, dealias=dealias,
                            derivative=derivative)
    return ComplexField(psi.grid, lin + nonlin, t)
