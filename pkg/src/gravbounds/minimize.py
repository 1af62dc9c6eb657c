"""Derivative-free one-dimensional minimization on (0, ∞).

``bracket_minimum`` walks geometrically from a starting point until it has
three points lo < mid < hi with f(mid) strictly below both ends, or reports
that no interior minimum exists (the function keeps decreasing up to the
ceiling or down to the floor, or is numerically flat).  ``minimize_scalar``
then shrinks the bracket by golden-section steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import NoMinimumError

__all__ = [
    "MU_CEILING",
    "MU_FLOOR",
    "DEFAULT_TOL",
    "Bracket",
    "MinimizationResult",
    "bracket_minimum",
    "minimize_scalar",
    "minimize",
]

MU_CEILING = 1e9
MU_FLOOR = 1e-9
DEFAULT_TOL = 1e-10
MAX_ITER = 200

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/φ ≈ 0.618


@dataclass(frozen=True)
class Bracket:
    lo: float
    mid: float
    hi: float

    def __iter__(self):
        return iter((self.lo, self.mid, self.hi))


@dataclass(frozen=True)
class MinimizationResult:
    mu_star: float
    f_star: float
    bracket: Bracket
    iterations: int
    converged: bool


def bracket_minimum(
    f: Callable[[float], float],
    mu0: float = 1.0,
    factor: float = 2.0,
    ceiling: float = MU_CEILING,
    floor: float = MU_FLOOR,
) -> Bracket:
    """Find lo < mid < hi with f(mid) < f(lo) and f(mid) < f(hi).

    Raises:
        NoMinimumError: if f is still decreasing when the walk passes
            ``ceiling`` (minimum at infinity) or ``floor`` (minimum at zero),
            or if f is flat to machine precision around the walk.
    """
    if not mu0 > 0:
        raise ValueError(f"mu0 must be positive, got {mu0}")
    if not factor > 1:
        raise ValueError(f"factor must exceed 1, got {factor}")

    mid, f_mid = mu0, f(mu0)
    up, f_up = mu0 * factor, f(mu0 * factor)
    down, f_down = mu0 / factor, f(mu0 / factor)

    if f_up > f_mid and f_down > f_mid:
        return Bracket(down, mid, up)
    if f_up == f_mid and f_down == f_mid:
        raise NoMinimumError(f"objective is flat around mu = {mu0:g}")

    if f_up < f_mid and not f_down < f_up:
        lo, mid, f_mid = mid, up, f_up
        while True:
            hi = mid * factor
            if hi > ceiling:
                raise NoMinimumError(f"objective still decreasing at mu = {ceiling:g}; minimum at infinity")
            f_hi = f(hi)
            if f_hi > f_mid:
                return Bracket(lo, mid, hi)
            if f_hi == f_mid:
                raise NoMinimumError(f"objective numerically flat near mu = {mid:g}")
            lo, mid, f_mid = mid, hi, f_hi

    if not f_down < f_mid:
        raise NoMinimumError(f"objective is flat on one side of mu = {mu0:g}")
    hi, mid, f_mid = mid, down, f_down
    while True:
        lo = mid / factor
        if lo < floor:
            raise NoMinimumError(f"objective still decreasing at mu = {floor:g}; infimum at mu -> 0")
        f_lo = f(lo)
        if f_lo > f_mid:
            return Bracket(lo, mid, hi)
        if f_lo == f_mid:
            raise NoMinimumError(f"objective numerically flat near mu = {mid:g}")
        hi, mid, f_mid = mid, lo, f_lo


def minimize_scalar(
    f: Callable[[float], float],
    bracket: Bracket | tuple[float, float, float],
    tol: float = DEFAULT_TOL,
    max_iter: int = MAX_ITER,
) -> MinimizationResult:
    """Golden-section search inside a valid bracket.

    Stops once the interval is narrower than ``2 tol (1 + |mu|)``.  Note that
    near a smooth minimum f varies quadratically, so comparisons lose meaning
    below about √eps relative width unless f has no constant offset; the
    returned ``f_star`` is accurate regardless.
    """
    lo, mid, hi = bracket
    if not lo < mid < hi:
        raise ValueError(f"invalid bracket ({lo}, {mid}, {hi})")
    bracket = Bracket(lo, mid, hi)

    a, b = lo, hi
    # Interior probes at golden ratios; mid only seeds the best-so-far value.
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    best_x, best_f = (mid, f(mid))
    iterations = 0
    converged = False
    while iterations < max_iter:
        x = c if fc < fd else d
        if abs(b - a) <= 2.0 * tol * (1.0 + abs(x)):
            converged = True
            break
        iterations += 1
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)

    for x_, f_ in ((c, fc), (d, fd)):
        if f_ < best_f:
            best_x, best_f = x_, f_
    return MinimizationResult(
        mu_star=best_x,
        f_star=best_f,
        bracket=bracket,
        iterations=iterations,
        converged=converged,
    )


def minimize(f: Callable[[float], float], mu0: float = 1.0, tol: float = DEFAULT_TOL) -> MinimizationResult:
    """Bracket from ``mu0`` and minimize; raises NoMinimumError if no bracket."""
    return minimize_scalar(f, bracket_minimum(f, mu0), tol=tol)
