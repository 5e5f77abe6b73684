"""Short-time Fourier analysis of the wave at fixed position.

The short-time transform over a square window of length T,

    F(omega; x, t) = (2 pi)^(-1/2) Int_{t-T/2}^{t+T/2} dt' e^{i omega t'} psi(x, t'),

is computed numerically from the exact wave and in closed form for its pole
and saddle pieces.  The spectrogram is S = N |F|^2 with the fixed
normalization N = pi^2/2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .band import BandParams, psi_band, _adaptive_gl
from .core import SourceParams, characteristic_scales
from .errors import DomainError, EvanWaveError, InvalidParameterError
from .sharp import psi_exact

__all__ = [
    "SPECTROGRAM_NORMALIZATION",
    "TimeWindow",
    "WindowValidity",
    "SpectrogramGrid",
    "SignalFrequencyCut",
    "FreqWindowSpectrogram",
    "stft_numeric",
    "stft_closed",
    "spectrogram",
    "alpha_amplitude",
    "beta_envelope",
    "signal_frequency_cut",
    "freq_window_spectrogram",
]

SPECTROGRAM_NORMALIZATION = 0.5 * math.pi**2

_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class WindowValidity:
    """Reported (not enforced) resolution conditions tau >> T >> T0."""

    tau_over_T: float
    T_over_T0: float

    @property
    def time_resolution_ok(self) -> bool:
        return self.tau_over_T > 1.0

    @property
    def frequency_resolution_ok(self) -> bool:
        return self.T_over_T0 > 1.0

    @property
    def ok(self) -> bool:
        return self.time_resolution_ok and self.frequency_resolution_ok


@dataclass(frozen=True)
class TimeWindow:
    """Square analysis window of length T."""

    T: float

    def __post_init__(self):
        if self.T <= 0:
            raise InvalidParameterError("window length T must be positive")

    def validity(self, source: SourceParams, x: float) -> WindowValidity:
        scales = characteristic_scales(source, x)
        return WindowValidity(tau_over_T=scales.tau / self.T,
                              T_over_T0=self.T / scales.T0)


def _sinc_half(arg: float) -> float:
    """sin(arg)/arg with the removable singularity filled by its series."""
    if abs(arg) < 1e-6:
        return 1.0 - arg * arg / 6.0
    return math.sin(arg) / arg


def stft_numeric(signal, T: float, omega: float, t: float,
                 tol: float = 1e-10, breakpoints=()) -> complex:
    """Windowed Fourier integral of an arbitrary time signal.

    ``breakpoints`` are times where the signal is known to be non-smooth
    (onsets, fronts); the quadrature is split there.
    """
    if T <= 0:
        raise InvalidParameterError("window length T must be positive")
    lo, hi = t - 0.5 * T, t + 0.5 * T
    cuts = sorted({lo, hi, *(b for b in breakpoints if lo < b < hi)})

    def f(tp: float) -> complex:
        return cmath.exp(1j * omega * tp) * signal(tp)

    total = 0j
    for a, b in zip(cuts[:-1], cuts[1:]):
        total += _adaptive_gl(f, a, b, tol)
    return total / _SQRT_2PI


def stft_closed(component: str, source: SourceParams, x: float, t: float,
                omega: float, T: float) -> complex:
    """Closed-form stFt of the pole or saddle piece of the sharp-onset wave.

    The pole form is the exact windowed integral of the monochromatic front:
    zero until the window reaches tau, the sinc form once it has fully passed
    (t > tau + T/2), and the partial-window interpolation in between.  The
    saddle form freezes the slowly varying prefactor at the window center,
    valid while T is short against tau (first resolution inequality).
    """
    if T <= 0:
        raise InvalidParameterError("window length T must be positive")
    if component == "pole":
        tau = x / (2.0 * source.kappa0)
        a = max(tau, t - 0.5 * T)
        b = t + 0.5 * T
        if b <= a:
            return 0j
        delta = omega - source.omega0
        width = b - a
        amp = math.exp(-source.kappa0 * x) / _SQRT_2PI
        return amp * width * cmath.exp(0.5j * delta * (a + b)) \
            * _sinc_half(0.5 * delta * width)
    if component == "saddle":
        if t <= 0 or x <= 0:
            raise InvalidParameterError("saddle stFt needs x > 0 and t > 0")
        omega_s_big = (x / (2.0 * t)) ** 2      # Omega_s
        omega0_big = source.Omega0
        arg = omega_s_big + 1.0 - omega
        pref = (1j / math.pi) * cmath.sqrt(-2j / (omega_s_big * t)) \
            * omega_s_big / (omega_s_big - omega0_big)
        return pref * cmath.exp(1j * (omega_s_big - 1.0 + omega) * t) \
            * 0.5 * T * _sinc_half(0.5 * arg * T)
    raise DomainError(f"component must be 'pole' or 'saddle', got {component!r}")


@dataclass(frozen=True)
class SpectrogramGrid:
    """Rectangular (t, omega) grid of spectrogram values S >= 0."""

    t_axis: np.ndarray
    omega_axis: np.ndarray
    values: np.ndarray                      # shape (len(t_axis), len(omega_axis))
    window_T: float
    x: float
    normalization: float = SPECTROGRAM_NORMALIZATION
    cell_errors: list = field(default_factory=list)


def alpha_amplitude(source: SourceParams, x: float, t: float) -> float:
    """Saddle spectrogram amplitude alpha(t) = Omega_s / (t (Omega_s - Omega0)^2)."""
    if t <= 0 or x <= 0:
        raise InvalidParameterError("alpha needs x > 0 and t > 0")
    om = (x / (2.0 * t)) ** 2
    return om / (t * (om - source.Omega0) ** 2)


def beta_envelope(source: SourceParams, x: float, t: float) -> float:
    """Envelope of the saddle spectrogram at the source frequency:
    beta(t) = Omega_s / (t (Omega_s - Omega0)^4)."""
    if t <= 0 or x <= 0:
        raise InvalidParameterError("beta needs x > 0 and t > 0")
    om = (x / (2.0 * t)) ** 2
    return om / (t * (om - source.Omega0) ** 4)


def _saddle_spectrogram_value(source: SourceParams, x: float, t: float,
                              omega: float, T: float) -> float:
    # S_s = alpha(t) sin^2[(Omega_s + 1 - omega) T/2] / (Omega_s + 1 - omega)^2
    om = (x / (2.0 * t)) ** 2
    arg = 0.5 * (om + 1.0 - omega) * T
    return alpha_amplitude(source, x, t) * (_sinc_half(arg) * 0.5 * T) ** 2


def spectrogram(source: SourceParams, x: float, t_axis, omega_axis, T: float,
                mode: str = "full") -> SpectrogramGrid:
    """Spectrogram S(t, omega; x) = N |F|^2 on a rectangular grid.

    ``full`` windows the exact wave numerically (the signal is identically
    zero before the onset, so windows reaching below t' = 0 integrate nothing
    there); ``saddle-only`` evaluates the closed saddle form.  Cell failures
    are recorded and flagged as NaN without aborting the grid.
    """
    t_axis = np.asarray(t_axis, dtype=float)
    omega_axis = np.asarray(omega_axis, dtype=float)
    if np.any(np.diff(t_axis) <= 0) or np.any(np.diff(omega_axis) <= 0):
        raise InvalidParameterError("axes must be strictly increasing")
    if mode not in ("full", "saddle-only"):
        raise DomainError(f"mode must be 'full' or 'saddle-only', got {mode!r}")
    tau = x / (2.0 * source.kappa0) if x > 0 else 0.0
    values = np.empty((len(t_axis), len(omega_axis)))
    errors = []
    if mode == "saddle-only":
        for i, t in enumerate(t_axis):
            for j, om in enumerate(omega_axis):
                values[i, j] = _saddle_spectrogram_value(source, x, float(t),
                                                         float(om), T)
        return SpectrogramGrid(t_axis, omega_axis, values, T, x,
                               cell_errors=errors)

    def signal(tp: float) -> complex:
        return psi_exact(source, x, tp)

    for i, t in enumerate(t_axis):
        for j, om in enumerate(omega_axis):
            try:
                f = stft_numeric(signal, T, float(om), float(t),
                                 tol=1e-10, breakpoints=(0.0, tau))
                values[i, j] = SPECTROGRAM_NORMALIZATION * abs(f) ** 2
            except EvanWaveError as exc:  # pragma: no cover - defensive
                values[i, j] = math.nan
                errors.append((i, j, f"{type(exc).__name__}: {exc}"))
    return SpectrogramGrid(t_axis, omega_axis, values, T, x, cell_errors=errors)


@dataclass(frozen=True)
class SignalFrequencyCut:
    """The saddle spectrogram along omega = omega0 and its envelope analysis.

    ``zero_times`` evaluates tau / (n T0/T - 1) over the integers with
    n T0/T > 1; ``zero_times_exact`` are the actual roots of the closed-form
    sin factor, tau / sqrt(n T0/T - 1), for the same n (see the decisions
    ledger for the discrepancy between the two).
    """

    t_axis: np.ndarray
    s_values: np.ndarray
    envelope: np.ndarray
    zero_times: np.ndarray
    zero_times_exact: np.ndarray
    zero_indices: np.ndarray
    envelope_peak_time: float
    envelope_peak_formula: float
    small_t_exponent: float
    large_t_exponent: float
    note: str | None


def signal_frequency_cut(source: SourceParams, x: float, T: float,
                         t_axis) -> SignalFrequencyCut:
    """Analyze S_s(t, omega0; x): trace, envelope beta, zeros, peak, exponents.

    The envelope peak is located by bounded numeric maximization (the closed
    form puts it at sqrt(5/3) tau); growth/decay exponents are least-squares
    slopes of log beta against log t far below/above the peak.
    """
    if T <= 0 or x <= 0:
        raise InvalidParameterError("signal_frequency_cut needs T > 0 and x > 0")
    t_axis = np.asarray(t_axis, dtype=float)
    scales = characteristic_scales(source, x)
    s_vals = np.array([_saddle_spectrogram_value(source, x, float(t),
                                                 source.omega0, T)
                       for t in t_axis])
    env = np.array([beta_envelope(source, x, float(t)) for t in t_axis])

    ratio = scales.T0 / T
    n_min = math.floor(1.0 / ratio) + 1
    note = None
    ns, zeros, zeros_exact = [], [], []
    if T <= scales.T0:
        note = ("T <= T0: fewer than one interference zero; single-bump "
                "regime near tau")
    # enumerate zeros from the largest time down to a floor well below tau
    n = n_min
    while True:
        denom = n * ratio - 1.0
        if denom <= 0:
            n += 1
            continue
        t_exact = scales.tau / math.sqrt(denom)
        if t_exact < 0.05 * scales.tau or n > n_min + 400:
            break
        ns.append(n)
        zeros.append(scales.tau / denom)
        zeros_exact.append(t_exact)
        n += 1

    peak_formula = math.sqrt(5.0 / 3.0) * scales.tau
    res = minimize_scalar(lambda t: -beta_envelope(source, x, t),
                          bounds=(0.05 * scales.tau, 10.0 * scales.tau),
                          method="bounded",
                          options={"xatol": 1e-10 * scales.tau})
    peak_numeric = float(res.x)

    def fit_exponent(lo: float, hi: float) -> float:
        ts = np.geomspace(lo, hi, 40)
        bs = np.log([beta_envelope(source, x, float(t)) for t in ts])
        return float(np.polyfit(np.log(ts), bs, 1)[0])

    small_exp = fit_exponent(peak_numeric / 100.0, peak_numeric / 20.0)
    large_exp = fit_exponent(peak_numeric * 20.0, peak_numeric * 100.0)
    return SignalFrequencyCut(
        t_axis=t_axis,
        s_values=s_vals,
        envelope=env,
        zero_times=np.array(zeros),
        zero_times_exact=np.array(zeros_exact),
        zero_indices=np.array(ns, dtype=int),
        envelope_peak_time=peak_numeric,
        envelope_peak_formula=peak_formula,
        small_t_exponent=small_exp,
        large_t_exponent=large_exp,
        note=note,
    )


@dataclass(frozen=True)
class FreqWindowSpectrogram:
    """Frequency-window spectrogram S'(t, omega0; x) at fixed x.

    Proportional to the density of the band-limited wave; the proportionality
    constant is not pinned down by the analysis, so values are reported with
    ``normalization`` = 1 applied to |psi_band|^2.  ``equivalent_window_T``
    is the time window 2 pi / delta_omega that makes the resolution
    inequalities of the two spectrogram types coincide.
    """

    t_axis: np.ndarray
    values: np.ndarray
    delta_omega: float
    equivalent_window_T: float
    normalization: float


def freq_window_spectrogram(source: SourceParams, x: float, delta_omega: float,
                            t_axis) -> FreqWindowSpectrogram:
    """S'(t, omega0; x) as the (unit-normalized) band-limited density trace."""
    band = BandParams(source.omega0, delta_omega)
    t_axis = np.asarray(t_axis, dtype=float)
    vals = np.array([abs(psi_band(band, x, float(t))) ** 2 for t in t_axis])
    return FreqWindowSpectrogram(
        t_axis=t_axis,
        values=vals,
        delta_omega=delta_omega,
        equivalent_window_T=2.0 * math.pi / delta_omega,
        normalization=1.0,
    )
