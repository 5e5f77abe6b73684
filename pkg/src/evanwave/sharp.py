"""Wave emitted by a source switched on sharply at t = 0.

The exact solution is a pair of Faddeeva functions,

    psi(x, t) = (1/2) exp(-it + i k_s^2 t) [w(-u0') + w(-u0'')],

with u0', u0'' from :func:`evanwave.core.u0_arguments`.  Splitting off the
dominant w-asymptotics gives the saddle (forerunner) part psi_s and, once the
steepest-descent path has crossed the pole at t = tau, the monochromatic
front psi_0 = exp(-i omega0 t) exp(-kappa0 x).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .core import SourceParams, characteristic_scales, u0_arguments
from .errors import (
    EvanWaveError,
    InvalidParameterError,
    NoTransitionError,
    UndefinedPhaseError,
)
from .special import faddeeva_w

__all__ = [
    "SharpWaveDecomposition",
    "TransitionTime",
    "TraceRow",
    "psi_exact",
    "decompose",
    "pole_saddle_ratio",
    "transition_time",
    "avg_frequency",
    "trace",
]

_SQRT_PI = math.sqrt(math.pi)


def psi_exact(source: SourceParams, x: float, t: float) -> complex:
    """Exact wave at position x >= 0 and time t.

    Zero for t <= 0 by the switch-on boundary condition; at x = 0 the value
    collapses algebraically to exp(-i omega0 t).
    """
    if x < 0:
        raise InvalidParameterError(f"x must be >= 0, got {x}")
    if t <= 0.0:
        return 0j
    u0p, u0pp = u0_arguments(source, x, t)
    k_s = x / (2.0 * t)
    phase = cmath.exp(1j * t * (k_s * k_s - 1.0))
    return 0.5 * phase * (faddeeva_w(-u0p) + faddeeva_w(-u0pp))


def pole_saddle_ratio(source: SourceParams, x: float, t: float) -> float:
    """R(t) = |psi_0| / |psi_s| (the pole term taken ungated by its step).

    R = (2 sqrt(pi)/x) exp(-kappa0 x) t^(3/2) (x^2/4t^2 + kappa0^2); minimal
    at tau/sqrt(3), exponentially small at tau, growing like t^(3/2) after.
    """
    if x <= 0 or t <= 0:
        raise InvalidParameterError("pole_saddle_ratio needs x > 0 and t > 0")
    kappa0 = source.kappa0
    return (2.0 * _SQRT_PI / x) * math.exp(-kappa0 * x) * t**1.5 \
        * (x * x / (4.0 * t * t) + kappa0 * kappa0)


@dataclass(frozen=True)
class SharpWaveDecomposition:
    """Exact wave next to its saddle and pole parts at one (x, t)."""

    psi_exact: complex
    psi_saddle: complex
    psi_pole: complex
    psi_approx: complex
    ratio_R: float
    u0_prime: complex
    u0_doubleprime: complex


def decompose(source: SourceParams, x: float, t: float) -> SharpWaveDecomposition:
    """Exact wave, saddle contribution, pole contribution and their ratio.

    The pole term carries Theta(t - tau) with the half-value convention at
    exactly t = tau (the principal-value reading of the real-axis crossing).
    ratio_R is the ungated ratio R(t), meaningful at all t > 0.
    """
    if x <= 0 or t <= 0:
        raise InvalidParameterError("decompose needs x > 0 and t > 0")
    u0p, u0pp = u0_arguments(source, x, t)
    k_s = x / (2.0 * t)
    phase = cmath.exp(1j * t * (k_s * k_s - 1.0))
    exact = 0.5 * phase * (faddeeva_w(-u0p) + faddeeva_w(-u0pp))
    saddle = phase / (2j * _SQRT_PI) * (1.0 / u0p + 1.0 / u0pp)
    tau = x / (2.0 * source.kappa0)
    if t > tau:
        step = 1.0
    elif t == tau:
        step = 0.5
    else:
        step = 0.0
    pole = step * cmath.exp(complex(-source.kappa0 * x, -source.omega0 * t))
    return SharpWaveDecomposition(
        psi_exact=exact,
        psi_saddle=saddle,
        psi_pole=pole,
        psi_approx=saddle + pole,
        ratio_R=pole_saddle_ratio(source, x, t),
        u0_prime=u0p,
        u0_doubleprime=u0pp,
    )


@dataclass(frozen=True)
class TransitionTime:
    """Saddle-to-pole transition time, closed form and bracketed root."""

    closed_form: float
    numeric_root: float
    v_tr: float


def transition_time(source: SourceParams, x: float) -> TransitionTime:
    """Time at which pole and saddle contributions are equally strong.

    Closed form (x e^(kappa0 x) / (2 kappa0^2 sqrt(pi)))^(2/3), valid in the
    semiclassical regime kappa0 x > 1 where tau << t_tr; the numeric root
    solves R(t) = 1 on t > tau.  Also returns the transition-point velocity
    v_tr = 3 / (2 kappa0 t) at the root.
    """
    kappa0 = source.kappa0
    if kappa0 * x <= 1.0:
        raise InvalidParameterError(
            f"transition time needs the semiclassical regime kappa0*x > 1, got {kappa0 * x:.3f}"
        )
    closed = (x * math.exp(kappa0 * x) / (2.0 * kappa0 * kappa0 * _SQRT_PI)) ** (2.0 / 3.0)
    tau = x / (2.0 * kappa0)
    if pole_saddle_ratio(source, x, tau) >= 1.0:
        raise NoTransitionError(
            "R(tau) >= 1: the pole dominates from the start, no transition above tau"
        )
    hi = max(4.0 * closed, 8.0 * tau)
    while pole_saddle_ratio(source, x, hi) < 1.0:
        hi *= 4.0
    root = brentq(lambda t: pole_saddle_ratio(source, x, t) - 1.0, tau, hi,
                  xtol=1e-12, rtol=1e-14)
    return TransitionTime(
        closed_form=closed,
        numeric_root=root,
        v_tr=3.0 / (2.0 * kappa0 * root),
    )


_PHASE_FLOOR = 1e-300


def avg_frequency(source: SourceParams, x: float, t: float, dt: float) -> float:
    """Instantaneous frequency -d(arg psi)/dt by a central phase difference.

    The difference of the two stencil phases is continued to the nearest
    multiple of 2 pi, so dt must resolve the local oscillation
    (|omega| dt < pi).
    """
    if not t > dt > 0:
        raise InvalidParameterError("avg_frequency needs t > dt > 0")
    lo = psi_exact(source, x, t - dt)
    hi = psi_exact(source, x, t + dt)
    if abs(lo) < _PHASE_FLOOR or abs(hi) < _PHASE_FLOOR:
        raise UndefinedPhaseError(f"|psi| below {_PHASE_FLOOR} near t={t}")
    dphi = cmath.phase(hi) - cmath.phase(lo)
    dphi -= 2.0 * math.pi * round(dphi / (2.0 * math.pi))
    return -dphi / (2.0 * dt)


@dataclass(frozen=True)
class TraceRow:
    """One record of a time sweep at fixed x."""

    x: float
    t: float
    re_psi: float
    im_psi: float
    density: float
    amplified: float
    log10_amplified: float
    omega_bar: float
    error: str | None = None


def trace(source: SourceParams, x: float, t_grid) -> list[TraceRow]:
    """Sweep psi_exact over a strictly increasing positive time grid.

    Per-point failures become flagged rows (NaN fields, error message); the
    sweep never aborts.  omega_bar is the negative derivative of the grid-
    unwrapped phase, NaN at the grid ends.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or len(t_grid) < 2:
        raise InvalidParameterError("t_grid must be a 1-D grid of >= 2 points")
    if np.any(np.diff(t_grid) <= 0) or t_grid[0] <= 0:
        raise InvalidParameterError("t_grid must be strictly increasing and positive")
    amp = math.exp(2.0 * source.kappa0 * x) if x > 0 else 1.0
    values: list[complex | None] = []
    messages: list[str | None] = []
    for t in t_grid:
        try:
            values.append(psi_exact(source, x, float(t)))
            messages.append(None)
        except EvanWaveError as exc:  # pragma: no cover - defensive
            values.append(None)
            messages.append(f"{type(exc).__name__}: {exc}")

    ok = np.array([v is not None for v in values])
    psi_arr = np.array([v if v is not None else np.nan for v in values],
                       dtype=complex)
    omega_bar = np.full(len(t_grid), np.nan)
    if ok.all():
        phase = np.unwrap(np.angle(psi_arr))
        omega_bar[1:-1] = -(phase[2:] - phase[:-2]) / (t_grid[2:] - t_grid[:-2])

    rows = []
    for i, t in enumerate(t_grid):
        if not ok[i]:
            rows.append(TraceRow(x, float(t), math.nan, math.nan, math.nan,
                                 math.nan, math.nan, math.nan, messages[i]))
            continue
        psi = psi_arr[i]
        dens = abs(psi) ** 2
        a = dens * amp
        rows.append(TraceRow(
            x=x,
            t=float(t),
            re_psi=psi.real,
            im_psi=psi.imag,
            density=dens,
            amplified=a,
            log10_amplified=math.log10(a) if a > 0 else -math.inf,
            omega_bar=float(omega_bar[i]),
            error=None,
        ))
    return rows


def saddle_density_peak_time(source: SourceParams, x: float) -> float:
    """Numeric argmax over t of |psi_saddle|^2 (closed form says tau/sqrt(3))."""
    scales = characteristic_scales(source, x)

    def neg_density(t: float) -> float:
        d = decompose(source, x, t)
        return -abs(d.psi_saddle) ** 2

    from scipy.optimize import minimize_scalar

    res = minimize_scalar(neg_density, bounds=(0.05 * scales.tau, 4.0 * scales.tau),
                          method="bounded", options={"xatol": 1e-10 * scales.tau})
    return float(res.x)
