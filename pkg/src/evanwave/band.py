"""Frequency-band-limited source: signal at the origin, endpoint
steepest-descent contributions, and the assembled wave.

In the rescaled frequency variable y = Omega/Omega_s the wave is

    psi(x, t) = (i e^{-it} / 2 pi) Int_{y-}^{y+} dy
                e^{i lambda sign(t) (2 sqrt(y) - y)} / (y - y0 + i0),

with y0 = Omega0/Omega_s, y+- = y0 +- dw/Omega_s, lambda = |Omega_s t|; the
band is entirely evanescent so y-, y0, y+ are all negative.  The square-root
branch is cut along the positive real axis and chosen so the saddle sits at
y = 1 just above the cut for t > 0 and just below for t < 0; concretely,
sqrt(y) = +i sqrt(-y) on the contour for t > 0 and -i sqrt(-y) for t < 0.

Deforming onto the endpoint steepest-descent paths gives
psi = D_- - D_+ + psi0' with psi0' the residue term, present at all t > 0.
The endpoint paths y_I(y_R) obey the quartic constant-phase condition; read
with the signed factor (y_R - z), they leave the endpoint at the angle
theta_z = pi + arctan(sign(t) sqrt(-z)), into the lower half-plane for t > 0
(which is how the pole gets enclosed) and the upper one for t < 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .core import SourceParams
from .errors import (
    ComputationError,
    DomainError,
    InvalidParameterError,
    PathDegenerateError,
)
from .special import exp_integral_E1

__all__ = [
    "BandParams",
    "EndpointContribution",
    "BandCharacteristics",
    "band_source_signal",
    "endpoint_path",
    "endpoint_contribution",
    "psi_band",
    "band_characteristics",
]


@dataclass(frozen=True)
class BandParams:
    """Evanescent frequency band [omega0 - dw, omega0 + dw]."""

    omega0: float
    delta_omega: float

    def __post_init__(self):
        if self.delta_omega <= 0:
            raise InvalidParameterError("delta_omega must be positive")
        if not 0.0 < self.omega0 - self.delta_omega:
            raise InvalidParameterError("band must stay above omega = 0")
        if not self.omega0 + self.delta_omega < 1.0:
            raise InvalidParameterError(
                "whole band must be evanescent: omega0 + delta_omega < 1"
            )

    @classmethod
    def from_source(cls, source: SourceParams) -> "BandParams":
        if source.band_halfwidth is None:
            raise InvalidParameterError("source has no band_halfwidth set")
        return cls(source.omega0, source.band_halfwidth)

    @property
    def omega_plus(self) -> float:
        return self.omega0 + self.delta_omega

    @property
    def omega_minus(self) -> float:
        return self.omega0 - self.delta_omega

    @property
    def kappa0(self) -> float:
        return math.sqrt(1.0 - self.omega0)

    @property
    def kappa_plus(self) -> float:
        return math.sqrt(1.0 - self.omega_plus)

    @property
    def kappa_minus(self) -> float:
        return math.sqrt(1.0 - self.omega_minus)

    @property
    def Omega0(self) -> float:
        return self.omega0 - 1.0


def band_source_signal(band: BandParams, t: float) -> complex:
    """Source amplitude at x = 0: exp(-i omega0 t)[Theta(t) - Im E1(-i dw t)/pi].

    Valid for all real t; the E1 log singularity at t = 0 cancels in the
    imaginary part and the symmetric principal value fixes psi(0, 0) = 1/2.
    """
    if t == 0.0:
        return 0.5 + 0j
    step = 1.0 if t > 0 else 0.0
    e1 = exp_integral_E1(-1j * band.delta_omega * t)
    return cmath.exp(-1j * band.omega0 * t) * (step - e1.imag / math.pi)


def _path_w(sigma: float, z: float) -> float:
    # W(sigma) = sqrt((y_R - z)^2/4 - y_R) at y_R = z - sigma
    return math.sqrt(0.25 * sigma * sigma + sigma - z)


def _path_point(sigma: float, z: float, sign_t: float) -> complex:
    y_r = z - sigma
    return complex(y_r, -sign_t * sigma * _path_w(sigma, z))


def _path_slope(sigma: float, z: float, sign_t: float) -> float:
    # dy_I/dy_R at y_R = z - sigma, from y_I = sign_t (y_R - z) W(y_R)
    w = _path_w(sigma, z)
    dw = (0.5 * sigma + 1.0) / (2.0 * w)          # |dW/d sigma|... in y_R: -this
    # y_I' = sign_t [W + (y_R - z) W'] with W' = dW/dy_R = -(0.5 sigma + 1)/(2W)
    return sign_t * (w + sigma * dw)


def _scaled_exponent_re(sigma: float, z: float, lam: float) -> float:
    # Re E = -lambda [W (2 + sigma) - 2 sqrt(-z)] along the path (any sign t)
    return -lam * (_path_w(sigma, z) * (2.0 + sigma) - 2.0 * math.sqrt(-z))


def _branch_sqrt(y: complex, sign_t: float) -> complex:
    p = cmath.sqrt(y)
    if sign_t > 0:
        return p if y.imag >= 0.0 else -p
    return -p if y.imag >= 0.0 else p


def _stop_sigma(z: float, lam: float, drop: float = 38.0) -> float:
    """Path parameter at which the scaled integrand has decayed by e^-drop."""
    target = 2.0 * math.sqrt(-z) + drop / lam
    # W(s)(2+s) is increasing from 2 sqrt(-z); bracket then bisect
    hi = 1.0
    while _path_w(hi, z) * (2.0 + hi) < target:
        hi *= 2.0
        if hi > 1e12:
            raise PathDegenerateError("endpoint path never decays (lambda ~ 0)")
    return brentq(lambda s: _path_w(s, z) * (2.0 + s) - target, 0.0, hi,
                  xtol=1e-12 * max(1.0, hi))


def endpoint_path(z: float, sign_t: float, arc_limit: float = 1e6,
                  max_points: int = 20000) -> np.ndarray:
    """March the steepest-descent path from a (negative, real) endpoint z.

    Steps follow dy = dy_I (dy_R/dy_I + i) with the real step adapted to the
    local turn rate of the path; marching stops once the integrand magnitude
    drops below 1e-16 of its endpoint value.  Exceeding ``arc_limit`` total
    arc length (or the point budget) raises PathDegenerateError.
    """
    if z >= 0.0:
        raise DomainError(f"endpoint must be negative, got z={z}")
    if sign_t not in (-1.0, 1.0, -1, 1):
        raise DomainError("sign_t must be +1 or -1")
    s = float(sign_t)
    # use a nominal lambda of 1 for the stopping rule: callers that care about
    # the true decay pass through endpoint_contribution, which integrates in
    # closed form over y_R instead of consuming these points
    sigma_stop = _stop_sigma(z, 1.0, drop=38.0)
    points = [complex(z, 0.0)]
    sigma = 0.0
    arc = 0.0
    while sigma < sigma_stop:
        w = _path_w(sigma, z)
        slope = _path_slope(sigma, z, s)
        # turn rate: y_I'' = s[2W' + (y_R - z) W''], W'' = -(1+z)/(4W^3)
        d2 = abs(2.0 * (-(0.5 * sigma + 1.0) / (2.0 * w))
                 + sigma * (1.0 + z) / (4.0 * w**3))
        turn = d2 / (1.0 + slope * slope)
        step = min(0.08 / (turn + 1e-12), 0.1 * (1.0 + sigma), sigma_stop - sigma + 1e-15)
        step = max(step, 1e-13 * max(1.0, abs(z)))
        sigma += step
        pt = _path_point(sigma, z, s)
        arc += abs(pt - points[-1])
        if arc > arc_limit:
            raise PathDegenerateError(
                f"arc length exceeded {arc_limit} before integrand decay")
        points.append(pt)
        if len(points) > max_points:
            raise PathDegenerateError("endpoint path exceeded point budget")
    return np.array(points)


# 16-point Gauss-Legendre on [0, 1]
_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)
_GL_X = 0.5 * (_GL_X + 1.0)
_GL_W = 0.5 * _GL_W


def _gl_panel(f, a: float, b: float) -> complex:
    width = b - a
    return width * sum(w * f(a + x * width) for x, w in zip(_GL_X, _GL_W))


def _adaptive_gl(f, a: float, b: float, tol: float, depth: int = 24) -> complex:
    whole = _gl_panel(f, a, b)
    return _adaptive_gl_rec(f, a, b, whole, tol, depth)


def _adaptive_gl_rec(f, a, b, whole, tol, depth) -> complex:
    mid = 0.5 * (a + b)
    left = _gl_panel(f, a, mid)
    right = _gl_panel(f, mid, b)
    if abs(left + right - whole) <= tol or depth <= 0:
        return left + right
    return (_adaptive_gl_rec(f, a, mid, left, 0.5 * tol, depth - 1)
            + _adaptive_gl_rec(f, mid, b, right, 0.5 * tol, depth - 1))


@dataclass(frozen=True)
class EndpointContribution:
    """Endpoint integral D_z, numerically and to leading order in 1/lambda.

    ``value_*`` are the physical contributions; they equal
    (i e^{-it}/2 pi) exp(log_attenuation) reduced_* and may underflow to zero
    at very large x, in which case the reduced fields still carry the full
    relative information.
    """

    endpoint: str
    value_numeric: complex
    value_leading: complex
    t_crit: float
    theta_z: float
    reduced_numeric: complex
    reduced_leading: complex
    log_attenuation: float
    near_pole: bool
    lam: float


def _endpoint_z(band: BandParams, endpoint: str, omega_s: float) -> tuple[float, float, float]:
    """(z, kappa_z, omega_z) for the requested endpoint."""
    if endpoint == "upper":
        omega_z = band.omega_plus
        kappa_z = band.kappa_plus
    elif endpoint == "lower":
        omega_z = band.omega_minus
        kappa_z = band.kappa_minus
    else:
        raise DomainError(f"endpoint must be 'lower' or 'upper', got {endpoint!r}")
    return (omega_z - 1.0) / omega_s, kappa_z, omega_z


def endpoint_contribution(band: BandParams, endpoint: str, x: float,
                          t: float) -> EndpointContribution:
    """Integrate e^{i lambda s (2 sqrt(y) - y)}/(y - y0) down one endpoint path.

    The integral is computed in attenuation-scaled form (the exact factor
    exp(-kappa_z x) pulled out); if the path passes within 1e-3 |y0| of the
    pole it is indented with a semicircle on the pole-free side and the
    ``near_pole`` flag is set.
    """
    if x <= 0:
        raise InvalidParameterError("endpoint_contribution needs x > 0")
    if t == 0:
        raise InvalidParameterError("endpoint_contribution needs t != 0")
    s = 1.0 if t > 0 else -1.0
    omega_s = (x / (2.0 * t)) ** 2
    lam = abs(omega_s * t)
    z, kappa_z, omega_z = _endpoint_z(band, endpoint, omega_s)
    y0 = band.Omega0 / omega_s
    t_crit = x / (2.0 * kappa_z)
    theta_z = math.pi + math.atan(s * math.sqrt(-z))

    sqrt_mz = math.sqrt(-z)

    def scaled_exp(y: complex) -> complex:
        # E(y) = i lam s (2 r(y) - y) + 2 lam sqrt(-z); |e^E| = 1 at the endpoint
        r = _branch_sqrt(y, s)
        return cmath.exp(1j * lam * s * (2.0 * r - y) + 2.0 * lam * sqrt_mz)

    # leading order: e^{E(z)} e^{i theta_z} / (lam (z - y0) |z^{-1/2} - 1|)
    mod_zfac = math.sqrt(1.0 + 1.0 / (-z))
    reduced_leading = (cmath.exp(-1j * lam * s * z) * cmath.exp(1j * theta_z)
                       / (lam * (z - y0) * mod_zfac))

    sigma_stop = _stop_sigma(z, lam)

    def integrand(sigma: float) -> complex:
        y = _path_point(sigma, z, s)
        dy = -(1.0 + 1j * _path_slope(sigma, z, s))   # dy/d sigma (y_R = z - sigma)
        return scaled_exp(y) * dy / (y - y0)

    # pole proximity: only relevant when the pole lies inside the swept y_R range
    rho = 1e-3 * abs(y0)
    near_pole = False
    if abs(z - y0) <= rho:
        raise PathDegenerateError("endpoint sits inside the pole indentation disk")
    sig_pole = z - y0  # sigma at which y_R passes the pole (>0 only for upper endpoint)

    def dist(sigma: float) -> float:
        return abs(_path_point(sigma, z, s) - y0)

    tol = 1e-10 * abs(reduced_leading) + 1e-16
    if 0.0 < sig_pole < sigma_stop and dist(sig_pole) < rho:
        near_pole = True
        # entry/exit of the indentation disk along the path
        sig_a = brentq(lambda u: dist(u) - rho, 0.0, sig_pole, xtol=1e-15)
        sig_b = brentq(lambda u: dist(u) - rho, sig_pole, sigma_stop, xtol=1e-15)
        part1 = _adaptive_gl(integrand, 0.0, sig_a, tol)
        part3 = _adaptive_gl(integrand, sig_b, sigma_stop, tol)
        th_a = cmath.phase(_path_point(sig_a, z, s) - y0)
        th_b = cmath.phase(_path_point(sig_b, z, s) - y0)
        # arc around the pole on the path's side (below for t > 0, above for t < 0)
        if s > 0 and th_b > th_a:
            th_b -= 2.0 * math.pi
        if s < 0 and th_b < th_a:
            th_b += 2.0 * math.pi
        arc = _gl_panel(lambda th: 1j * scaled_exp(y0 + rho * cmath.exp(1j * th)),
                        th_a, th_b)
        reduced = part1 + arc + part3
    else:
        reduced = _adaptive_gl(integrand, 0.0, sigma_stop, tol)

    log_att = -kappa_z * x
    prefactor = 1j * cmath.exp(-1j * t) / (2.0 * math.pi)
    scale = math.exp(log_att) if log_att > -745.0 else 0.0
    return EndpointContribution(
        endpoint=endpoint,
        value_numeric=prefactor * scale * reduced,
        value_leading=prefactor * scale * reduced_leading,
        t_crit=t_crit,
        theta_z=theta_z,
        reduced_numeric=reduced,
        reduced_leading=reduced_leading,
        log_attenuation=log_att,
        near_pole=near_pole,
        lam=lam,
    )


def psi_band(band: BandParams, x: float, t: float, tol: float = 1e-10) -> complex:
    """Band-limited wave psi(x, t) = D_- - D_+ + psi0'.

    Uses the endpoint steepest-descent integrals away from the near-pole
    regime; for |t| < 2 pi / delta_omega (where the path from y+ grazes the
    pole), for t = 0 (degenerate saddle frame) and for x = 0 it delegates to
    the brute-force PV quadrature / the closed-form source signal.
    """
    from .oracle import psi_band_oracle  # deferred: oracle imports BandParams

    if x < 0:
        raise InvalidParameterError("x must be >= 0")
    if x == 0.0:
        return band_source_signal(band, t)
    if t == 0.0 or abs(t) < 2.0 * math.pi / band.delta_omega:
        return psi_band_oracle(band, x, t, tol=tol)
    try:
        d_minus = endpoint_contribution(band, "lower", x, t)
        d_plus = endpoint_contribution(band, "upper", x, t)
    except (PathDegenerateError, ComputationError):
        return psi_band_oracle(band, x, t, tol=tol)
    value = d_minus.value_numeric - d_plus.value_numeric
    if t > 0:
        value += cmath.exp(complex(-band.kappa0 * x, -band.omega0 * t))
    return value


@dataclass(frozen=True)
class BandCharacteristics:
    """Transition diagnostics of the band-limited wave at fixed x."""

    x: float
    t_plus: float
    t_tr_exact: float | None
    t_tr_approx: float
    v_tr_prime: float
    transition_absent: bool
    crossover_time: float          # tau, the relevant scale when t'_tr is absent
    onset_fast_vs_tau: bool        # 2 pi / tau << delta_omega (lower Eq. con)
    band_inside_evanescent: bool   # delta_omega << |Omega0| (upper Eq. con)
    onset_ratio: float             # delta_omega tau / 2 pi
    band_ratio: float              # |Omega0| / delta_omega
    _band: BandParams = None       # for r_prime evaluation

    def r_prime(self, t: float) -> float:
        """R'(t) = e^{(kappa_+ - kappa_0) x} 2 pi dw sqrt(t^2 + t_+^2)."""
        b = self._band
        return (math.exp((b.kappa_plus - b.kappa0) * self.x) * 2.0 * math.pi
                * b.delta_omega * math.hypot(t, self.t_plus))


def band_characteristics(band: BandParams, x: float) -> BandCharacteristics:
    """Transition time of the band-limited wave and Eq.-of-validity flags.

    t'_tr solves R'(t) = 1; when the radicand of the closed form is negative
    the transition is flagged absent (formally imaginary) and tau is reported
    as the crossover scale instead.
    """
    if x <= 0:
        raise InvalidParameterError("band_characteristics needs x > 0")
    kappa0 = band.kappa0
    kp = band.kappa_plus
    dw = band.delta_omega
    t_plus = x / (2.0 * kp)
    tau = x / (2.0 * kappa0)
    radicand = math.exp(2.0 * x * (kappa0 - kp)) / (4.0 * math.pi**2 * dw * dw) \
        - t_plus * t_plus
    absent = radicand <= 0.0
    t_exact = None if absent else math.sqrt(radicand)
    t_approx = math.exp(x * (kappa0 - kp)) / (2.0 * math.pi * dw)
    t_for_v = t_approx if absent else t_exact
    v_tr_prime = 1.0 / (t_for_v * (kappa0 - kp))
    onset_ratio = dw * tau / (2.0 * math.pi)
    band_ratio = abs(band.Omega0) / dw
    return BandCharacteristics(
        x=x,
        t_plus=t_plus,
        t_tr_exact=t_exact,
        t_tr_approx=t_approx,
        v_tr_prime=v_tr_prime,
        transition_absent=absent,
        crossover_time=tau,
        onset_fast_vs_tau=onset_ratio > 1.0,
        band_inside_evanescent=band_ratio > 1.0,
        onset_ratio=onset_ratio,
        band_ratio=band_ratio,
        _band=band,
    )
