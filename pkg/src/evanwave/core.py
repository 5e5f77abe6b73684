"""Dimensionless unit system, dispersion relation and characteristic scales.

Everything downstream works in the dimensionless system in which the
Schroedinger equation reads ``i dpsi/dt = -d^2psi/dx^2 + psi`` and the cutoff
frequency is 1.  Dimensional quantities enter and leave only through
:func:`convert_units`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import InvalidParameterError

__all__ = [
    "DimensionalParams",
    "SourceParams",
    "SaddleFrame",
    "CharacteristicScales",
    "convert_units",
    "wavenumber",
    "saddle_frame",
    "characteristic_scales",
]


@dataclass(frozen=True)
class DimensionalParams:
    """Dimensional inputs: mass, potential, hbar plus one spacetime sample.

    ``X``/``T``/``Psi`` hold a dimensional position, time and amplitude for
    direction ``to-dimensionless``; for ``from-dimensionless`` they hold the
    dimensionless triple to be mapped back.
    """

    m: float
    V: float
    hbar: float
    X: float = 0.0
    T: float = 0.0
    Psi: complex = 0j

    def __post_init__(self):
        if self.m <= 0 or self.V <= 0 or self.hbar <= 0:
            raise InvalidParameterError(
                f"m, V, hbar must all be positive, got m={self.m}, V={self.V}, hbar={self.hbar}"
            )


def convert_units(params: DimensionalParams, direction: str = "to-dimensionless"):
    """Map (X, T, Psi) to dimensionless (x, t, psi) or back.

    x = X sqrt(2 m V) / hbar, t = T V / hbar, psi = hbar^(1/2) (2 m V)^(-1/4) Psi.
    The two directions compose to the identity.
    """
    length_scale = math.sqrt(2.0 * params.m * params.V) / params.hbar
    time_scale = params.V / params.hbar
    amp_scale = math.sqrt(params.hbar) / (2.0 * params.m * params.V) ** 0.25
    if direction == "to-dimensionless":
        return (
            params.X * length_scale,
            params.T * time_scale,
            params.Psi * amp_scale,
        )
    if direction == "from-dimensionless":
        return (
            params.X / length_scale,
            params.T / time_scale,
            params.Psi / amp_scale,
        )
    raise InvalidParameterError(f"unknown direction {direction!r}")


def wavenumber(omega: float) -> complex:
    """Dispersion branch k(omega) with omega = 1 + k^2.

    Real nonnegative above the cutoff (omega >= 1), positive imaginary below
    it, so the wave is outgoing or decaying away from the source.  At exactly
    omega = 1 both branches give k = 0.
    """
    if omega >= 1.0:
        return complex(math.sqrt(omega - 1.0), 0.0)
    return complex(0.0, math.sqrt(1.0 - omega))


@dataclass(frozen=True)
class SourceParams:
    """Evanescent point-source parameters.

    omega0 is the (dimensionless) source frequency, required to lie below the
    cutoff: 0 < omega0 < 1.  ``band_halfwidth`` is the optional half-width of a
    frequency-band-limited source; when present the whole band must stay
    evanescent (omega0 + band_halfwidth < 1).
    """

    omega0: float
    band_halfwidth: float | None = None

    def __post_init__(self):
        if not 0.0 < self.omega0 < 1.0:
            raise InvalidParameterError(
                f"evanescent source requires 0 < omega0 < 1, got {self.omega0}"
            )
        if self.band_halfwidth is not None:
            if self.band_halfwidth < 0:
                raise InvalidParameterError("band_halfwidth must be >= 0")
            if self.omega0 + self.band_halfwidth >= 1.0:
                raise InvalidParameterError(
                    "omega0 + band_halfwidth must stay below the cutoff (= 1)"
                )

    @property
    def kappa0(self) -> float:
        """Spatial decay constant sqrt(1 - omega0)."""
        return math.sqrt(1.0 - self.omega0)

    @property
    def Omega0(self) -> float:
        """Source frequency relative to the potential level: -kappa0^2."""
        return -(1.0 - self.omega0)


@dataclass(frozen=True)
class SaddleFrame:
    """Per-(x, t) saddle quantities of the k-plane integral."""

    x: float
    t: float
    k_s: float
    Omega_s: float
    omega_s: float
    lam: float
    tau: float


def saddle_frame(source: SourceParams, x: float, t: float) -> SaddleFrame:
    """Saddle kinematics k_s = x/2t, Omega_s = k_s^2, lambda = |Omega_s t|."""
    if t == 0.0:
        raise InvalidParameterError("saddle frame is undefined at t = 0")
    if x <= 0.0:
        raise InvalidParameterError(f"x must be positive, got {x}")
    k_s = x / (2.0 * t)
    omega_big = k_s * k_s
    return SaddleFrame(
        x=x,
        t=t,
        k_s=k_s,
        Omega_s=omega_big,
        omega_s=1.0 + omega_big,
        lam=abs(omega_big * t),
        tau=x / (2.0 * source.kappa0),
    )


@dataclass(frozen=True)
class CharacteristicScales:
    """Characteristic times and velocities for a source observed at x."""

    tau: float           # traversal time x / (2 kappa0)
    t_f: float           # transient-front peak time tau / sqrt(3)
    T0: float            # interference period 2 pi / |Omega0|
    v_m: float           # monochromatic front speed 2 kappa0
    v_f: float           # front-peak speed sqrt(3) v_m
    v_env: float         # envelope-peak speed sqrt(3/5) v_m
    M_at_tau: float      # minimum w-argument modulus sqrt(kappa0 x)


def characteristic_scales(source: SourceParams, x: float) -> CharacteristicScales:
    if x <= 0.0:
        raise InvalidParameterError(f"x must be positive, got {x}")
    kappa0 = source.kappa0
    tau = x / (2.0 * kappa0)
    v_m = 2.0 * kappa0
    return CharacteristicScales(
        tau=tau,
        t_f=tau / math.sqrt(3.0),
        T0=2.0 * math.pi / abs(source.Omega0),
        v_m=v_m,
        v_f=math.sqrt(3.0) * v_m,
        v_env=math.sqrt(3.0 / 5.0) * v_m,
        M_at_tau=math.sqrt(kappa0 * x),
    )


def u0_arguments(source: SourceParams, x: float, t: float) -> tuple[complex, complex]:
    """The two w-function arguments u0', u0'' of the exact sharp-onset wave.

    u0' = e^(i pi/4) sqrt(t) kappa0 (-i - tau/t), u0'' likewise with +i.
    """
    if t <= 0.0:
        raise InvalidParameterError("u0 arguments require t > 0")
    kappa0 = source.kappa0
    tau = x / (2.0 * kappa0)
    root = cmath.exp(0.25j * math.pi) * math.sqrt(t) * kappa0
    a = tau / t
    return root * complex(-a, -1.0), root * complex(-a, 1.0)
