"""Modified Bessel function K1 and the Gaussian kinetic-energy profile g(x).

The profile

    g(x) = x e^x K1(x) = ∫ t² √(2x + t²) e^{-t²} dt   (t over the real line)

controls the expectation of √(p² + m²) in a Gaussian state.  ``g`` is evaluated
through the exponentially scaled ``e^x K1(x)`` so no intermediate overflows, and
``g_quadrature`` integrates the right-hand side directly as an independent
check.

K1 is evaluated piecewise:

* ``x <= 2``: the ascending series (Abramowitz & Stegun 9.6.11 with n = 1),
  written for ``x K1(x)`` so that tiny arguments do not overflow.
* ``2 < x < 30``: ``e^x K1(x) = ∫_0^∞ exp(-2x sinh²(t/2)) cosh t dt`` by the
  trapezoidal rule, which converges geometrically for this analytic integrand.
* ``x >= 30``: the Hankel asymptotic series, truncated well before its
  smallest term (about ``e^{-2x}``).

All functions accept scalars or numpy arrays.
"""

from __future__ import annotations

import enum
import math
import sys
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "QuadratureScheme",
    "QuadratureSpec",
    "bessel_k1",
    "bessel_k1e",
    "g",
    "g_excess",
    "g_quadrature",
]

_SERIES_MAX = 2.0
_ASYMPTOTIC_MIN = 30.0

# Ascending-series coefficients: c_k = 1/(k!(k+1)!), d_k = (ψ(k+1) + ψ(k+2)) c_k.
_N_SERIES = 18
_C = np.array([1.0 / (math.factorial(k) * math.factorial(k + 1)) for k in range(_N_SERIES)])
_PSI = np.array([-np.euler_gamma + sum(1.0 / j for j in range(1, k + 1)) for k in range(_N_SERIES + 1)])
_D = (_PSI[:-1] + _PSI[1:]) * _C

# Trapezoidal nodes for the mid range; the integrand at T_MAX is below e^{-45} for x > 2.
_TRAP_H = 0.05
_TRAP_TMAX = math.acosh(1.0 + 45.0 / _SERIES_MAX)
_TRAP_T = np.arange(0.0, _TRAP_TMAX + _TRAP_H, _TRAP_H)
_TRAP_W = np.full(_TRAP_T.shape, _TRAP_H)
_TRAP_W[0] = 0.5 * _TRAP_H

_ASYM_TERMS = 40


def _to_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _check_positive(arr: np.ndarray, name: str = "x") -> None:
    if np.any(~(arr > 0)):
        bad = float(arr[~(arr > 0)].flat[0])
        raise DomainError(f"{name} = {bad!r} must be > 0", margin=bad)


def _xk1_series(x: np.ndarray) -> np.ndarray:
    """x K1(x) from the ascending series; accurate for 0 < x <= 2."""
    y = 0.25 * x * x
    sc = np.zeros_like(x)
    sd = np.zeros_like(x)
    for k in range(_N_SERIES - 1, -1, -1):
        sc = sc * y + _C[k]
        sd = sd * y + _D[k]
    return 1.0 + 2.0 * y * np.log(0.5 * x) * sc - y * sd


def _k1e_trapezoid(x: np.ndarray) -> np.ndarray:
    """e^x K1(x) for x > 2 via the integral ∫_0^∞ exp(-x(cosh t - 1)) cosh t dt."""
    s = np.sinh(0.5 * _TRAP_T)
    arg = -2.0 * np.outer(x, s * s)
    return (np.exp(arg) * np.cosh(_TRAP_T)) @ _TRAP_W


def _asymptotic_tail(x: np.ndarray) -> np.ndarray:
    """Σ_{k>=1} a_k / x^k of the Hankel series √(2x/π) e^x K1(x) = 1 + Σ ..."""
    term = np.ones_like(x)
    total = np.zeros_like(x)
    for k in range(1, _ASYM_TERMS + 1):
        term = term * (4.0 - (2 * k - 1) ** 2) / (8.0 * k * x)
        total += term
        if np.all(np.abs(term) < 1e-18 * (1.0 + np.abs(total))):
            break
    return total


def _k1e(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    lo = x <= _SERIES_MAX
    hi = x >= _ASYMPTOTIC_MIN
    mid = ~(lo | hi)
    if np.any(lo):
        xl = x[lo]
        out[lo] = np.exp(xl) * _xk1_series(xl) / xl
    if np.any(mid):
        out[mid] = _k1e_trapezoid(x[mid])
    if np.any(hi):
        xh = x[hi]
        out[hi] = np.sqrt(0.5 * np.pi / xh) * (1.0 + _asymptotic_tail(xh))
    return out


def bessel_k1e(x):
    """Exponentially scaled modified Bessel function ``e^x K1(x)`` for x > 0."""
    arr, scalar = _to_array(x)
    _check_positive(arr)
    with np.errstate(over="ignore"):
        out = _k1e(arr.reshape(-1)).reshape(arr.shape)
    if np.any(np.isinf(out)):
        raise OverflowError("e^x K1(x) overflows for x this small")
    return float(out) if scalar else out


def bessel_k1(x):
    """Modified Bessel function of the second kind of order one, K1(x).

    Raises:
        DomainError: for x <= 0.
        OverflowError: when K1(x) is not representable as a normal double,
            i.e. it overflows for tiny x or drops below the smallest normal
            float for large x (beyond roughly x = 705).  Use
            :func:`bessel_k1e` there.
    """
    arr, scalar = _to_array(x)
    _check_positive(arr)
    flat = arr.reshape(-1)
    out = np.empty_like(flat)
    lo = flat <= _SERIES_MAX
    with np.errstate(over="ignore", under="ignore", divide="ignore"):
        out[lo] = _xk1_series(flat[lo]) / flat[lo]
        out[~lo] = _k1e(flat[~lo]) * np.exp(-flat[~lo])
    if np.any(np.isinf(out)):
        raise OverflowError("K1(x) overflows for x this small")
    if np.any(out < sys.float_info.min):
        raise OverflowError("K1(x) underflows the normal double range; use bessel_k1e")
    out = out.reshape(arr.shape)
    return float(out) if scalar else out


def _g(arr: np.ndarray) -> np.ndarray:
    flat = arr.reshape(-1)
    out = np.empty_like(flat)
    lo = flat <= _SERIES_MAX
    out[lo] = np.exp(flat[lo]) * _xk1_series(flat[lo])
    out[~lo] = flat[~lo] * _k1e(flat[~lo])
    return out.reshape(arr.shape)


def g(x):
    """Kinetic profile g(x) = x e^x K1(x), with g(0+) = 1 and g ~ √(πx/2)."""
    arr, scalar = _to_array(x)
    _check_positive(arr)
    out = _g(arr)
    return float(out) if scalar else out


def g_excess(x):
    """g(x) - √(πx/2), computed without cancellation for large x.

    The large-x asymptote of ``g`` is √(πx/2); the excess decays like
    (3/8)√(π/(2x)).  Minimizers of the Gaussian variational energy work with
    this difference so that the objective stays resolvable at very wide
    Gaussians.
    """
    arr, scalar = _to_array(x)
    _check_positive(arr)
    flat = arr.reshape(-1)
    out = np.empty_like(flat)
    hi = flat >= _ASYMPTOTIC_MIN
    lead = np.sqrt(0.5 * np.pi * flat)
    out[~hi] = _g(flat[~hi]) - lead[~hi]
    out[hi] = lead[hi] * _asymptotic_tail(flat[hi])
    out = out.reshape(arr.shape)
    return float(out) if scalar else out


class QuadratureScheme(enum.Enum):
    """Node families for :func:`g_quadrature`.

    ``SINH_LEGENDRE`` maps t = √(2x) sinh(w) so the square root becomes
    smooth and applies Gauss-Legendre on the half line; it keeps full accuracy
    as x -> 0.  ``GAUSS_HERMITE`` uses the e^{-t²} weight directly and is only
    spectrally accurate once √(2x) is comparable to the node spacing
    (roughly x >= 1 for 80 nodes).
    """

    SINH_LEGENDRE = "sinh-legendre"
    GAUSS_HERMITE = "gauss-hermite"


def _tail_bound(cut: float) -> float:
    # Relative size of ∫_cut^∞ t²√(2x+t²)e^{-t²} dt versus g(x), uniform in x.
    return 0.5 * cut * (cut + 2.0 / math.sqrt(math.pi)) * math.exp(-cut * cut)


@dataclass(frozen=True)
class QuadratureSpec:
    node_count: int = 80
    domain_cut: float = 7.0
    scheme: QuadratureScheme = QuadratureScheme.SINH_LEGENDRE

    def __post_init__(self):
        if self.node_count < 8:
            raise ValueError(f"node_count must be >= 8, got {self.node_count}")
        if not self.domain_cut > 0:
            raise ValueError(f"domain_cut must be > 0, got {self.domain_cut}")
        if _tail_bound(self.domain_cut) >= 1e-14:
            raise ValueError(
                f"domain_cut = {self.domain_cut} leaves a relative tail of "
                f"{_tail_bound(self.domain_cut):.2e} (need < 1e-14)"
            )


def _gauss_legendre(n: int, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
    t, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (hi - lo)
    return lo + half * (t + 1.0), half * w


def g_quadrature(x: float, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """∫_{-∞}^{∞} t² √(2x + t²) e^{-t²} dt evaluated by numerical quadrature.

    The integrand is even, so twice the half-line integral over [0, cut] is
    computed.  This does not touch the Bessel-function code and serves as the
    oracle for :func:`g`.
    """
    x = float(x)
    if x < 0:
        raise DomainError(f"x = {x!r} must be >= 0", margin=x)
    n = spec.node_count
    cut = spec.domain_cut

    if spec.scheme is QuadratureScheme.GAUSS_HERMITE:
        t, w = np.polynomial.hermite.hermgauss(n)
        return float(np.sum(w * t * t * np.sqrt(2.0 * x + t * t)))

    if x == 0.0:
        t, w = _gauss_legendre(n, 0.0, cut)
        return float(2.0 * np.sum(w * t**3 * np.exp(-t * t)))

    s = math.sqrt(2.0 * x)
    w_nodes, w_weights = _gauss_legendre(n, 0.0, math.asinh(cut / s))
    sh = np.sinh(w_nodes)
    ch = np.cosh(w_nodes)
    integrand = s**4 * (sh * ch) ** 2 * np.exp(-(s * sh) ** 2)
    return float(2.0 * np.sum(w_weights * integrand))
