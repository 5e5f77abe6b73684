"""Klein-Gordon point source: dispersion, causality bound and the
particle-branch saddle wave with its spectrogram envelope.

The dimensionless light speed is c = C sqrt(2m/V) and the dispersion reads
Omega^2 = (c^2/2)^2 + c^2 k^2 with Omega = omega - 1.  Evanescent sources
have |Omega0| < c^2/2, giving kappa0 = sqrt((c^2/2)^2 - Omega0^2)/c < c/2 and
hence a traversal time tau = x/(2 kappa0) strictly above the light time x/c.
Only the +Omega_s saddle (particle excitation) is carried; the closed form of
the saddle wave follows the printed expression, including its
Omega_s/(Omega_s + Omega0) amplitude (see the decisions ledger for the
consequences of taking that amplitude verbatim).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DomainError, InvalidParameterError, PropagatingRegimeError

__all__ = [
    "RelParams",
    "KgScales",
    "RelEnvelopePeak",
    "kg_scales",
    "psi_saddle_plus",
    "rel_spectrogram_saddle",
    "rel_envelope",
    "rel_envelope_peak",
]


@dataclass(frozen=True)
class RelParams:
    """Relativistic source: dimensionless light speed c and offset frequency
    Omega0 = omega0 - 1, required to be evanescent (|Omega0| < c^2/2)."""

    c: float
    Omega0: float

    def __post_init__(self):
        if self.c <= 0:
            raise InvalidParameterError("c must be positive")
        if abs(self.Omega0) >= 0.5 * self.c * self.c:
            raise PropagatingRegimeError(
                f"|Omega0| = {abs(self.Omega0)} is not below c^2/2 = "
                f"{0.5 * self.c * self.c}: propagating regime"
            )

    @property
    def omega0(self) -> float:
        return 1.0 + self.Omega0

    @property
    def kappa0(self) -> float:
        half_c2 = 0.5 * self.c * self.c
        return math.sqrt(half_c2 * half_c2 - self.Omega0 * self.Omega0) / self.c

    def theta(self, x: float, t: float) -> float:
        """Causal interval (t^2 - x^2/c^2)^(1/2); real only past the light cone."""
        arg = t * t - (x / self.c) ** 2
        if arg <= 0:
            raise DomainError(f"theta is real only for t > x/c, got t={t}, x/c={x / self.c}")
        return math.sqrt(arg)


@dataclass(frozen=True)
class KgScales:
    """Traversal and light-cone times for a relativistic source at x."""

    tau: float
    light_time: float
    rel: RelParams
    x: float

    def omega_saddle(self, t: float) -> float:
        """Particle-branch saddle frequency Omega_s(t) = c^2 t / (2 theta)."""
        theta = self.rel.theta(self.x, t)
        return 0.5 * self.rel.c ** 2 * t / theta


def kg_scales(rel: RelParams, x: float) -> KgScales:
    """tau = x/(2 kappa0) and the light time x/c; always tau > x/c."""
    if x <= 0:
        raise InvalidParameterError("x must be positive")
    return KgScales(
        tau=x / (2.0 * rel.kappa0),
        light_time=x / rel.c,
        rel=rel,
        x=x,
    )


def psi_saddle_plus(rel: RelParams, x: float, t: float) -> complex:
    """Particle-branch saddle wave; identically zero outside the light cone."""
    if x <= 0:
        raise InvalidParameterError("x must be positive")
    if rel.c * t <= x:
        return 0j
    theta = rel.theta(x, t)
    c2 = rel.c * rel.c
    omega_s = 0.5 * c2 * t / theta
    pref = (1j * x / (c2 * t)) * cmath.sqrt(-1j / (math.pi * theta)) \
        * omega_s / (omega_s + rel.Omega0)
    return pref * cmath.exp(-1j * (t + 0.5 * rel.c * math.sqrt(c2 * t * t - x * x)))


def rel_spectrogram_saddle(rel: RelParams, x: float, t: float, omega: float,
                           T: float) -> float:
    """Saddle spectrogram of the linearized relativistic wave, t > T/2 + x/c.

    S_s = (2 x^2 / (pi^2 T c^4 t^2 theta)) Omega_s^2/(Omega_s + Omega0)^2
          sin^2[(Omega - Omega_s) T/2] / (Omega - Omega_s)^2,
    where Omega = omega - 1 (the sin argument is centered on the saddle
    frequency, where the windowed transform of the linearized phase peaks).
    """
    if T <= 0:
        raise InvalidParameterError("window length T must be positive")
    if t <= 0.5 * T + x / rel.c:
        raise DomainError("relativistic saddle spectrogram needs t > T/2 + x/c")
    theta = rel.theta(x, t)
    c2 = rel.c * rel.c
    omega_s = 0.5 * c2 * t / theta
    big_omega = omega - 1.0
    arg = 0.5 * (big_omega - omega_s) * T
    if abs(arg) < 1e-6:
        sinc = 1.0 - arg * arg / 6.0
    else:
        sinc = math.sin(arg) / arg
    amp = 2.0 * x * x / (math.pi ** 2 * T * c2 * c2 * t * t * theta) \
        * (omega_s / (omega_s + rel.Omega0)) ** 2
    return amp * (0.5 * T * sinc) ** 2


def rel_envelope(rel: RelParams, x: float, t: float, T: float) -> float:
    """Envelope over t of the saddle spectrogram at omega = omega0 (sin^2 -> 1)."""
    theta = rel.theta(x, t)
    c2 = rel.c * rel.c
    omega_s = 0.5 * c2 * t / theta
    return 2.0 * x * x / (math.pi ** 2 * T * c2 * c2 * t * t * theta) \
        * (omega_s / (omega_s + rel.Omega0)) ** 2 / (rel.Omega0 - omega_s) ** 2


@dataclass(frozen=True)
class RelEnvelopePeak:
    """Envelope peak: printed closed form next to the numeric argmax.

    The printed bracket cannot reproduce its own stated bounds, so the
    numeric value is authoritative; ``consistent`` flags agreement to 5%.
    """

    t_en_formula: float
    t_en_numeric: float
    bounds: tuple[float, float]
    consistent: bool
    search_window: tuple[float, float]


def rel_envelope_peak(rel: RelParams, x: float, T: float) -> RelEnvelopePeak:
    """Locate the envelope maximum of the relativistic S_s at omega0.

    The search is restricted to t > T/2 + x/c where the linearized saddle
    spectrogram is defined; the printed formula
    (tau/sqrt(3)) [1 + 3 (Omega0^2/(c^2/2))^2]^(1/2) is evaluated verbatim
    alongside.
    """
    scales = kg_scales(rel, x)
    tau = scales.tau
    lo = 0.5 * T + scales.light_time
    hi = 8.0 * tau / math.sqrt(3.0)
    if lo >= hi:
        raise DomainError(
            f"empty search interval: T/2 + x/c = {lo:.4g} exceeds {hi:.4g}")
    half_c2 = 0.5 * rel.c ** 2
    formula = tau / math.sqrt(3.0) \
        * math.sqrt(1.0 + 3.0 * (rel.Omega0 ** 2 / half_c2) ** 2)
    # bracket the maximum on a log grid, then polish
    grid = np.geomspace(lo * (1.0 + 1e-9), hi, 400)
    vals = [rel_envelope(rel, x, float(t), T) for t in grid]
    k = int(np.argmax(vals))
    a = grid[max(0, k - 1)]
    b = grid[min(len(grid) - 1, k + 1)]
    res = minimize_scalar(lambda t: -rel_envelope(rel, x, t, T),
                          bounds=(a, b), method="bounded",
                          options={"xatol": 1e-12 * tau})
    t_num = float(res.x)
    consistent = abs(t_num - formula) <= 0.05 * t_num
    return RelEnvelopePeak(
        t_en_formula=formula,
        t_en_numeric=t_num,
        bounds=(tau / math.sqrt(3.0), 4.0 * tau / math.sqrt(3.0)),
        consistent=consistent,
        search_window=(lo, hi),
    )
