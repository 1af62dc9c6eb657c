"""Energy bounds for N gravitating semirelativistic bosons.

The Hamiltonian is H = Σ_i √(p_i² + m²) - Σ_{i<j} v / r_ij in natural units.
Every bound is a closed form in N, m and the coupling, except the Gaussian
upper bound, which needs a one-dimensional minimization over the Gaussian
width parameter μ.

Couplings come in two flavours: a raw pair coupling ``v``, or a rescaled
``c`` with v = c/N (the scaling that keeps the large-N limit finite).  In
rescaled mode the domain edges are the N-independent ones c < 1, c < √2 and
c < 2√2.

Functions return a :class:`BoundValue` or raise :class:`DomainError`; values
are never clamped at a domain edge.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass

from . import specfun
from .errors import DomainError, NoMinimumError
from .jacobi import build_geometry
from .minimize import MinimizationResult, minimize

__all__ = [
    "CouplingMode",
    "SystemParams",
    "BoundKind",
    "BoundValue",
    "herbst_lower",
    "martin_roy_lower",
    "kratzer_reduction",
    "simple_lower",
    "improved_lower",
    "gaussian_upper",
    "gaussian_objective",
    "minimize_gaussian_objective",
    "gaussian_coupling",
    "gaussian_energy",
    "kinetic_expectation_gaussian",
    "potential_expectation_gaussian",
    "mu_from_alpha",
    "alpha_from_mu",
    "small_coupling_bounds",
    "evaluate",
]

SQRT_PI_OVER_2 = math.sqrt(math.pi / 2.0)
SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


class CouplingMode(str, enum.Enum):
    RAW = "raw"
    RESCALED = "rescaled"


@dataclass(frozen=True)
class SystemParams:
    """Particle number, mass and coupling.

    ``coupling`` is v itself in raw mode and c (with v = c/N) in rescaled mode.
    """

    N: int
    m: float
    coupling: float
    mode: CouplingMode = CouplingMode.RAW

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 2:
            raise DomainError(f"N = {self.N} must be an integer >= 2")
        if not self.m > 0:
            raise DomainError(f"m = {self.m} must be > 0")
        if not self.coupling > 0:
            raise DomainError(f"coupling = {self.coupling} must be > 0", margin=self.coupling)
        object.__setattr__(self, "mode", CouplingMode(self.mode))

    @classmethod
    def raw(cls, N: int, v: float, m: float = 1.0) -> "SystemParams":
        return cls(N, m, v, CouplingMode.RAW)

    @classmethod
    def rescaled(cls, N: int, c: float, m: float = 1.0) -> "SystemParams":
        return cls(N, m, c, CouplingMode.RESCALED)

    @property
    def v(self) -> float:
        """Pair coupling v (c/N in rescaled mode)."""
        if self.mode is CouplingMode.RESCALED:
            return self.coupling / self.N
        return self.coupling

    @property
    def lam(self) -> float:
        return (self.N - 1) / self.N

    @property
    def gamma(self) -> float:
        return self.N * (self.N - 1) / 2

    def as_raw(self) -> "SystemParams":
        """The same physical system with the coupling expressed as raw v."""
        return SystemParams(self.N, self.m, self.v, CouplingMode.RAW)


class BoundKind(str, enum.Enum):
    SIMPLE_LOWER = "simple_lower"
    IMPROVED_LOWER = "improved_lower"
    GAUSSIAN_UPPER = "gaussian_upper"
    HERBST_ONE_BODY = "herbst_one_body"
    MARTIN_ROY_ONE_BODY = "martin_roy_one_body"
    GAUSSIAN_UPPER_ONE_BODY = "gaussian_upper_one_body"
    SMALL_COUPLING_LOWER = "small_coupling_lower"
    SMALL_COUPLING_UPPER = "small_coupling_upper"


@dataclass(frozen=True)
class BoundValue:
    value: float
    kind: BoundKind
    constraint_margin: float
    mu_star: float | None = None
    minimization: MinimizationResult | None = dataclasses.field(default=None, repr=False)

    @property
    def valid(self) -> bool:
        return self.constraint_margin > 0


def _check_one_body(m: float, v: float) -> None:
    if not m > 0:
        raise DomainError(f"m = {m} must be > 0")
    if not v > 0:
        raise DomainError(f"v = {v} must be > 0", margin=v)


# -- one-body bounds ---------------------------------------------------------


def herbst_lower(m: float, v: float) -> BoundValue:
    """E >= m √(1 - (πv/2)²) for the one-body Coulomb problem, 0 < v < 2/π."""
    _check_one_body(m, v)
    margin = 2.0 / math.pi - v
    if margin <= 0:
        raise DomainError(f"v = {v:g} ≥ 2/π", margin)
    return BoundValue(m * math.sqrt(1.0 - (0.5 * math.pi * v) ** 2), BoundKind.HERBST_ONE_BODY, margin)


def martin_roy_lower(m: float, v: float) -> BoundValue:
    """E >= m √((1 + √(1 - 4v²))/2), 0 < v < 1/2."""
    _check_one_body(m, v)
    margin = 0.5 - v
    if margin <= 0:
        raise DomainError(f"v = {v:g} ≥ 1/2", margin)
    return BoundValue(
        m * math.sqrt(0.5 * (1.0 + math.sqrt(1.0 - 4.0 * v * v))),
        BoundKind.MARTIN_ROY_ONE_BODY,
        margin,
    )


def kratzer_reduction(E_guess: float, v: float) -> float:
    """Ground value of p² - 2Ev/r - v²/r², namely -E²v²/(ℓ+1)².

    ℓ solves ℓ(ℓ+1) = -v²; the root with |ℓ| < 1/2 exists only for v < 1/2.
    Setting E² - m² equal to this value and solving for E gives back
    :func:`martin_roy_lower`.
    """
    if not E_guess > 0:
        raise DomainError(f"E_guess = {E_guess} must be > 0")
    if not v > 0:
        raise DomainError(f"v = {v} must be > 0", margin=v)
    if v >= 0.5:
        raise DomainError(f"v = {v:g} ≥ 1/2 (ℓ complex)", 0.5 - v)
    ell = 0.5 * (-1.0 + math.sqrt(1.0 - 4.0 * v * v))
    return -((E_guess * v / (ell + 1.0)) ** 2)


# -- N-body lower bounds -----------------------------------------------------


def simple_lower(params: SystemParams) -> BoundValue:
    """The N/2 bound: N m √((1 + √(1 - (N-1)²v²))/2).

    Rescaled mode uses (N-1)²v² -> λ²c² with domain c < 1.
    """
    N, m = params.N, params.m
    if params.mode is CouplingMode.RESCALED:
        c = params.coupling
        margin = 1.0 - c
        if margin <= 0:
            raise DomainError(f"c = {c:g} ≥ 1", margin)
        x = (params.lam * c) ** 2
    else:
        v = params.coupling
        margin = 1.0 / (N - 1) - v
        if margin <= 0:
            raise DomainError(f"(N−1)v = {(N - 1) * v:g} ≥ 1", margin)
        x = ((N - 1) * v) ** 2
    return BoundValue(N * m * math.sqrt(0.5 * (1.0 + math.sqrt(1.0 - x))), BoundKind.SIMPLE_LOWER, margin)


def improved_lower(params: SystemParams) -> BoundValue:
    """The Jacobi-coordinate bound: N m √((1 + √(1 - γv²))/2), γ = N(N-1)/2.

    Rescaled mode uses γv² -> λc²/2 with domain c < √2.
    """
    N, m = params.N, params.m
    if params.mode is CouplingMode.RESCALED:
        c = params.coupling
        margin = math.sqrt(2.0) - c
        if margin <= 0:
            raise DomainError(f"c = {c:g} ≥ √2", margin)
        x = 0.5 * params.lam * c * c
    else:
        v = params.coupling
        gamma = params.gamma
        margin = 1.0 / math.sqrt(gamma) - v
        x = gamma * v * v
        if margin <= 0:
            raise DomainError(f"γv² = {x:g} ≥ 1", margin)
    return BoundValue(N * m * math.sqrt(0.5 * (1.0 + math.sqrt(1.0 - x))), BoundKind.IMPROVED_LOWER, margin)


# -- Gaussian upper bound ----------------------------------------------------


def gaussian_objective(mu, a: float):
    """[2 g(μ²/4) - a] / μ, the width-dependent factor of the Gaussian bound."""
    return (2.0 * specfun.g(0.25 * mu * mu) - a) / mu


def _shifted_objective(a: float):
    # gaussian_objective(μ, a) - √(π/2), free of cancellation at large μ.
    def f(mu: float) -> float:
        return (2.0 * specfun.g_excess(0.25 * mu * mu) - a) / mu

    return f


def minimize_gaussian_objective(a: float) -> MinimizationResult:
    """Minimize [2 g(μ²/4) - a]/μ over μ > 0.

    A minimum exists only for 0 < a < 2: for a >= 2 the objective falls
    without bound (or toward 0) as μ -> 0, and for a = 0 it decreases toward
    √(π/2) as μ -> ∞.  The a >= 2 case is rejected up front; a = 0 is caught
    by the bracketing walk.  The returned ``f_star`` is the full objective.
    """
    if a >= 2.0:
        raise NoMinimumError(f"a = {a:g} ≥ 2: objective has no minimum", f"a = {a:g} ≥ 2", 2.0 - a)
    if a < 0:
        raise DomainError(f"a = {a:g} must be >= 0")
    res = minimize(_shifted_objective(a))
    return dataclasses.replace(res, f_star=SQRT_PI_OVER_2 + res.f_star)


def gaussian_coupling(params: SystemParams) -> tuple[float, float, str]:
    """Return (a, margin, constraint) for the Gaussian bound.

    a = √γ v in raw mode and √(λ/2) c in rescaled mode; the bound needs a < 2.
    """
    if params.mode is CouplingMode.RESCALED:
        c = params.coupling
        a = math.sqrt(0.5 * params.lam) * c
        return a, 2.0 * math.sqrt(2.0) - c, f"c = {c:g} ≥ 2√2"
    v = params.coupling
    sg = math.sqrt(params.gamma)
    a = sg * v
    return a, 2.0 / sg - v, f"a = √γ·v = {a:g} ≥ 2"


def gaussian_upper(params: SystemParams) -> BoundValue:
    """Scale-optimized Gaussian variational bound N m √(2/π) min_μ [2g(μ²/4) - a]/μ."""
    a, margin, constraint = gaussian_coupling(params)
    if margin <= 0:
        raise NoMinimumError(f"{constraint}: objective has no minimum", constraint, margin)
    res = minimize_gaussian_objective(a)
    # N m √(2/π) f_star written as N m (1 + √(2/π)(f_star - √(π/2))) to keep digits near the free limit.
    value = params.N * params.m * (1.0 + SQRT_2_OVER_PI * (res.f_star - SQRT_PI_OVER_2))
    return BoundValue(value, BoundKind.GAUSSIAN_UPPER, margin, mu_star=res.mu_star, minimization=res)


def mu_from_alpha(N: int, m: float, alpha: float) -> float:
    """μ = m √(2N / ((N-1) α)) for the Gaussian exp(-α Σ ρ_i² / 2)."""
    return m * math.sqrt(2.0 * N / ((N - 1) * alpha))


def alpha_from_mu(N: int, m: float, mu: float) -> float:
    return 2.0 * N * m * m / ((N - 1) * mu * mu)


def _check_mu(mu: float) -> None:
    if not mu > 0:
        raise DomainError(f"mu = {mu} must be > 0", margin=mu)


def kinetic_expectation_gaussian(N: int, m: float, mu: float) -> float:
    """⟨√(λp² + m²)⟩ = (2m/μ) √(2/π) g(μ²/4) in the Gaussian trial state.

    N enters only through the relation between μ and the Gaussian width.
    """
    build_geometry(N)
    _check_mu(mu)
    return 2.0 * m / mu * SQRT_2_OVER_PI * specfun.g(0.25 * mu * mu)


def potential_expectation_gaussian(N: int, m: float, v: float, mu: float) -> float:
    """⟨-v/(√2 r)⟩ = -(N m v/μ) √(2/(πγ)) in the Gaussian trial state."""
    geom = build_geometry(N)
    _check_mu(mu)
    return -(N * m * v / mu) * math.sqrt(2.0 / (math.pi * geom.gamma))


def gaussian_energy(N: int, m: float, v: float, mu: float) -> float:
    """Variational energy N⟨√(λp² + m²)⟩ + γ⟨-v/(√2 r)⟩ at fixed μ."""
    gamma = N * (N - 1) / 2
    return N * kinetic_expectation_gaussian(N, m, mu) + gamma * potential_expectation_gaussian(N, m, v, mu)


# -- small coupling ----------------------------------------------------------


def small_coupling_bounds(N: int, m: float, c: float) -> tuple[BoundValue, BoundValue]:
    """Weak-coupling parabolas N m (1 - λc²/16) <= E(c) <= N m (1 - λc²/(6π))."""
    lam = build_geometry(N).lam
    lower = N * m * (1.0 - lam * c * c / 16.0)
    upper = N * m * (1.0 - lam * c * c / (6.0 * math.pi))
    return (
        BoundValue(lower, BoundKind.SMALL_COUPLING_LOWER, math.inf),
        BoundValue(upper, BoundKind.SMALL_COUPLING_UPPER, math.inf),
    )


_N_BODY = {
    BoundKind.SIMPLE_LOWER: simple_lower,
    BoundKind.IMPROVED_LOWER: improved_lower,
    BoundKind.GAUSSIAN_UPPER: gaussian_upper,
}


def evaluate(params: SystemParams, kind: BoundKind) -> BoundValue:
    """Dispatch on bound kind.

    One-body kinds use the pair coupling v and ignore N; the small-coupling
    parabolas use the rescaled coupling c = N v.
    """
    kind = BoundKind(kind)
    if kind in _N_BODY:
        return _N_BODY[kind](params)
    if kind is BoundKind.HERBST_ONE_BODY:
        return herbst_lower(params.m, params.v)
    if kind is BoundKind.MARTIN_ROY_ONE_BODY:
        return martin_roy_lower(params.m, params.v)
    if kind is BoundKind.GAUSSIAN_UPPER_ONE_BODY:
        from .verify import onebody_gaussian_upper

        return onebody_gaussian_upper(params.m, params.v)
    c = params.v * params.N
    lower, upper = small_coupling_bounds(params.N, params.m, c)
    return lower if kind is BoundKind.SMALL_COUPLING_LOWER else upper
