"""Independent brute-force references used by the test suite.

Everything here is deliberately dumb and slow: adaptive Gauss-Kronrod
bisection, principal values by symmetric pole excision with Richardson
extrapolation, and a Faddeeva evaluator that is nothing but quadrature of the
defining Cauchy integral.  None of it shares numerics with the production
routines it is used to check (the one production caller is
:func:`evanwave.band.psi_band`, which falls back to :func:`psi_band_oracle`
in the regime where the endpoint expansion is invalid).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from heapq import heappush, heappop

import numpy as np

from .band import BandParams
from .core import SourceParams
from .errors import DomainError, QuadratureFailure

__all__ = [
    "QuadResult",
    "adaptive_quad",
    "pv_cauchy",
    "psi_band_oracle",
    "faddeeva_oracle",
    "psi_sharp_oracle",
]

# Gauss 7 / Kronrod 15 pair on [-1, 1].
_XK = np.array([
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993945, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0,
])
_WK = np.array([
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278,
])
_WG = np.array([
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694,
])


@dataclass(frozen=True)
class QuadResult:
    value: complex
    abs_error_estimate: float
    evaluations: int


def _gk15(f, a: float, b: float):
    """One Gauss-Kronrod 7-15 panel: (kronrod, |kronrod - gauss|, nevals)."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fk = [f(mid)]
    for x in _XK[:-1]:
        fk.append(f(mid - half * x))
        fk.append(f(mid + half * x))
    # fk layout: [center, (lo, hi) for each abscissa outward-in]
    kron = _WK[-1] * fk[0]
    gauss = _WG[-1] * fk[0]
    for i, x in enumerate(_XK[:-1]):
        pair = fk[1 + 2 * i] + fk[2 + 2 * i]
        kron += _WK[i] * pair
        if i % 2 == 1:  # odd-index Kronrod nodes are the Gauss-7 nodes
            gauss += _WG[i // 2] * pair
    kron *= half
    gauss *= half
    return kron, abs(kron - gauss), 15


def adaptive_quad(f, a: float, b: float, tol: float = 1e-10,
                  limit: int = 4000) -> QuadResult:
    """Adaptive Gauss-Kronrod integration of a complex-valued f over [a, b].

    Bisects the interval with the largest local error estimate until the
    summed estimate drops below ``tol``; raises :class:`QuadratureFailure`
    (carrying the partial result) after ``limit`` panel subdivisions.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    if a == b:
        return QuadResult(0j, 0.0, 0)
    val, err, n = _gk15(f, a, b)
    heap = [(-err, a, b, val, err)]
    total_val, total_err, evals = val, err, n
    splits = 0
    while total_err > tol and heap:
        if splits >= limit:
            raise QuadratureFailure(
                f"adaptive_quad did not reach tol={tol:g} after {limit} subdivisions "
                f"(error estimate {total_err:g})",
                partial=QuadResult(total_val, total_err, evals),
            )
        _, lo, hi, v_old, e_old = heappop(heap)
        mid = 0.5 * (lo + hi)
        v1, e1, n1 = _gk15(f, lo, mid)
        v2, e2, n2 = _gk15(f, mid, hi)
        total_val += v1 + v2 - v_old
        total_err += e1 + e2 - e_old
        evals += n1 + n2
        heappush(heap, (-e1, lo, mid, v1, e1))
        heappush(heap, (-e2, mid, hi, v2, e2))
        splits += 1
    return QuadResult(total_val, total_err, evals)


def pv_cauchy(g, a: float, lo: float, hi: float, tol: float = 1e-10) -> QuadResult:
    """PV integral of g(s)/(s - a) over [lo, hi] with lo < a < hi.

    Symmetric pole excision around a with Richardson extrapolation in the
    excision radius (orders eps, eps^3 cancelled), plus ordinary quadrature of
    the asymmetric remainder.  The excision radius is shrunk until the
    extrapolation ladder itself reports convergence, so rapidly oscillating
    numerators (large t) stay inside the ladder's asymptotic regime.
    """
    if not lo < a < hi:
        raise DomainError("pv_cauchy needs lo < a < hi")
    r = min(a - lo, hi - a)

    def sym(u: float) -> complex:
        return (g(a + u) - g(a - u)) / u

    eps = 0.02 * r
    value = 0j
    err_quad = 0.0
    ladder_err = math.inf
    evals = 0
    for _ in range(7):
        levels = []
        err_quad = 0.0
        for k in range(3):
            e = eps / 2.0**k
            res = adaptive_quad(sym, e, r, tol=tol / 6.0)
            levels.append(res.value)
            err_quad += res.abs_error_estimate
            evals += res.evaluations
        a1 = 2.0 * levels[1] - levels[0]
        a2 = 2.0 * levels[2] - levels[1]
        value = (8.0 * a2 - a1) / 7.0
        ladder_err = abs(a2 - a1) / 7.0
        if ladder_err <= max(tol, 1e-14 * abs(value)):
            break
        eps /= 8.0
    err = err_quad + ladder_err
    if a - lo > r:
        rest = adaptive_quad(lambda s: g(s) / (s - a), lo, a - r, tol=tol / 2.0)
        value += rest.value
        err += rest.abs_error_estimate
        evals += rest.evaluations
    elif hi - a > r:
        rest = adaptive_quad(lambda s: g(s) / (s - a), a + r, hi, tol=tol / 2.0)
        value += rest.value
        err += rest.abs_error_estimate
        evals += rest.evaluations
    return QuadResult(value, err, evals)


def psi_band_oracle(band: BandParams, x: float, t: float,
                    tol: float = 1e-10) -> complex:
    """Band-limited wave by direct quadrature of the defining integral.

    The +i0 pole is handled by the Plemelj split PV - i pi delta, so the
    result is PV quadrature plus half the residue at all t; no saddle or
    endpoint machinery is involved.  The integrand is scaled by its maximum
    attenuation exp(-kappa_+ x) to keep the quadrature well conditioned at
    large x.
    """
    if x < 0:
        raise DomainError("x must be >= 0")
    omega0 = band.omega0
    kp = band.kappa_plus
    big_omega0 = omega0 - 1.0

    def g(big_omega: float) -> complex:
        kap = math.sqrt(-big_omega)
        return cmath.exp(complex(-(kap - kp) * x, -big_omega * t))

    pv = pv_cauchy(g, big_omega0, big_omega0 - band.delta_omega,
                   big_omega0 + band.delta_omega, tol=tol)
    prefactor = 1j * cmath.exp(-1j * t) / (2.0 * math.pi)
    residue_half = 0.5 * cmath.exp(complex(-band.kappa0 * x, -omega0 * t))
    return prefactor * math.exp(-kp * x) * pv.value + residue_half


_W_CUTOFF = 6.45  # exp(-u^2) < 1e-18 beyond this


def faddeeva_oracle(z: complex, tol: float = 1e-13) -> complex:
    """w(z) for Im z > 0 as (1/i pi) times the Cauchy integral of exp(-u^2)."""
    z = complex(z)
    if z.imag <= 0:
        raise DomainError("faddeeva_oracle requires Im z > 0; use the "
                          "reflection identity at the call site")
    res = adaptive_quad(lambda u: math.exp(-u * u) / (u - z),
                        -_W_CUTOFF, _W_CUTOFF, tol=tol)
    return res.value / (1j * math.pi)


def _w_oracle_any(z: complex) -> complex:
    """Faddeeva via quadrature on either half-plane.

    Uses the reflection identity below the axis; within ~1e-7 of the axis the
    Cauchy quadrature cannot resolve the pole, so the value is built from the
    on-axis principal value plus half-residue and a first-order Taylor shift
    (w' = -2 z w + 2i/sqrt(pi)), accurate to O(1e-14) there.
    """
    if abs(z.imag) < 1e-7:
        a = z.real
        pv = pv_cauchy(lambda u: math.exp(-u * u), a, -_W_CUTOFF, _W_CUTOFF,
                       tol=1e-13)
        w_axis = pv.value / (1j * math.pi) + math.exp(-a * a)
        w_prime = -2.0 * a * w_axis + 2j / math.sqrt(math.pi)
        return w_axis + 1j * z.imag * w_prime
    if z.imag > 0:
        return faddeeva_oracle(z)
    return 2.0 * cmath.exp(-z * z) - faddeeva_oracle(-z)


def psi_sharp_oracle(source: SourceParams, x: float, t: float) -> complex:
    """Sharp-onset wave from the closed form, with the quadrature Faddeeva.

    Fully independent of the production Faddeeva implementation; the defining
    k-integral is not absolutely convergent on the real axis, so the closed
    form evaluated with an independent w is the honest brute-force reference.
    """
    from .core import u0_arguments  # local import to keep the dep one-way

    if t <= 0:
        return 0j
    u0p, u0pp = u0_arguments(source, x, t)
    k_s = x / (2.0 * t)
    phase = cmath.exp(1j * t * (k_s * k_s - 1.0))
    return 0.5 * phase * (_w_oracle_any(-u0p) + _w_oracle_any(-u0pp))
