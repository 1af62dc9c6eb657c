"""Independent numerical oracles for the bounds.

* A Rayleigh-Ritz solver for the one-body Hamiltonian √(p² + m²) - v/r in a
  basis of S-wave harmonic-oscillator functions.  Its ground energy is a
  variational upper bound and must sit between the Martin-Roy lower bound and
  the one-body Gaussian upper bound.
* Direct radial quadratures of the Gaussian matrix elements that the closed
  forms in :mod:`gravbounds.bounds` claim.
* A random sampler for the triangle inequality behind the N/2 comparison.
* The nonrelativistic oscillator check of the N/2 bound.
* :func:`run_suite`, which bundles the above for ``gravbounds verify``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate
from scipy.linalg import eigh
from scipy.special import gammaln, roots_genlaguerre, roots_laguerre

from . import bounds, specfun
from .bounds import BoundKind, BoundValue, SystemParams
from .errors import BoundsError, DomainError, NoMinimumError
from .jacobi import build_geometry, check_representability
from .minimize import minimize_scalar

__all__ = [
    "SpectralResult",
    "solve_onebody_semirel_coulomb",
    "optimize_scale",
    "onebody_gaussian_upper",
    "TriangleReport",
    "triangle_gap",
    "triangle_inequality_sample",
    "OscillatorCheck",
    "nr_oscillator_check",
    "gaussian_expectation_quadrature",
    "CheckResult",
    "run_suite",
]

MAX_BASIS = 60
KINETIC_NODES = 200


# -- Rayleigh-Ritz oracle ----------------------------------------------------


@dataclass(frozen=True)
class SpectralResult:
    energy: float
    basis_size: int
    scale: float
    history: list[tuple[int, float]] = field(default_factory=list)


def _oscillator_radial(n_max: int, s: np.ndarray) -> np.ndarray:
    """Rows n = 0..n_max-1 of √(n!/Γ(n+3/2)) L_n^{(1/2)}(s).

    These are orthonormal under the weight s^{1/2} e^{-s}; with s = r²/b² they
    are the S-wave oscillator radial functions up to a factor b^{-3/2}.
    """
    a = 0.5
    L = np.zeros((n_max, s.size))
    L[0] = 1.0
    if n_max > 1:
        L[1] = 1.0 + a - s
    for n in range(1, n_max - 1):
        L[n + 1] = ((2 * n + 1 + a - s) * L[n] - (n + a) * L[n - 1]) / (n + 1)
    n = np.arange(n_max)
    return L * np.exp(0.5 * (gammaln(n + 1) - gammaln(n + a + 1)))[:, None]


def _hamiltonian(m: float, v: float, basis_size: int, scale: float) -> np.ndarray:
    # Kinetic term in momentum space: the oscillator functions of length b are,
    # up to the phase (-1)^n, oscillator functions of length 1/b in p.
    s, w = roots_genlaguerre(KINETIC_NODES, 0.5)
    phi = _oscillator_radial(basis_size, s)
    sign = (-1.0) ** np.arange(basis_size)
    kinetic = (phi * (w * np.sqrt(s / scale**2 + m * m))) @ phi.T * np.outer(sign, sign)
    # Coulomb term: r² dr / r with r = b√s turns the weight into e^{-s}, so
    # Gauss-Laguerre with more nodes than basis functions is exact.
    s0, w0 = roots_laguerre(basis_size + 8)
    phi0 = _oscillator_radial(basis_size, s0)
    coulomb = (phi0 * w0) @ phi0.T
    h = kinetic - (v / scale) * coulomb
    return 0.5 * (h + h.T)


def solve_onebody_semirel_coulomb(m: float, v: float, basis_size: int, scale: float) -> SpectralResult:
    """Lowest Rayleigh-Ritz eigenvalue of √(p² + m²) - v/r.

    ``history`` lists the ground energy for every nested basis 1..basis_size at
    the same scale; variationally it can only go down.
    """
    if not m > 0:
        raise DomainError(f"m = {m} must be > 0")
    if not 0 < v < 0.5:
        raise DomainError(f"v = {v} must satisfy 0 < v < 1/2", margin=min(v, 0.5 - v))
    if not 1 <= basis_size <= MAX_BASIS:
        raise DomainError(f"basis_size = {basis_size} must be in 1..{MAX_BASIS}")
    if not scale > 0:
        raise DomainError(f"scale = {scale} must be > 0")

    h = _hamiltonian(m, v, basis_size, scale)
    if not np.all(np.isfinite(h)):
        raise BoundsError("non-finite Hamiltonian matrix element")
    history = []
    for n in range(1, basis_size + 1):
        history.append((n, float(eigh(h[:n, :n], eigvals_only=True, subset_by_index=[0, 0])[0])))
    return SpectralResult(energy=history[-1][1], basis_size=basis_size, scale=scale, history=history)


def optimize_scale(
    m: float,
    v: float,
    basis_size: int,
    grid: tuple[float, float, int] = (0.05, 50.0, 41),
    tol: float = 1e-8,
) -> SpectralResult:
    """Scale-optimized Rayleigh-Ritz energy.

    A log-spaced scan over the basis length (in units of 1/m) locates the best
    grid scale, and golden-section refinement between its neighbours finishes.
    """
    lo, hi, n = grid
    scales = np.geomspace(lo / m, hi / m, n)

    def energy(b: float) -> float:
        h = _hamiltonian(m, v, basis_size, b)
        return float(eigh(h, eigvals_only=True, subset_by_index=[0, 0])[0])

    energies = [energy(b) for b in scales]
    i = int(np.argmin(energies))
    if i in (0, n - 1):
        raise BoundsError(f"optimal basis scale at the edge of the scan ({scales[i]:g})")
    res = minimize_scalar(energy, (scales[i - 1], scales[i], scales[i + 1]), tol=tol)
    return solve_onebody_semirel_coulomb(m, v, basis_size, res.mu_star)


def onebody_gaussian_upper(m: float, v: float) -> BoundValue:
    """min over Gaussian width of ⟨√(p² + m²)⟩ - v⟨1/r⟩.

    With μ = m√(2/α) this is m √(2/π) min_μ [2g(μ²/4) - 2v]/μ, so a minimum
    exists for 0 < v < 1.
    """
    if not m > 0:
        raise DomainError(f"m = {m} must be > 0")
    if not v > 0:
        raise DomainError(f"v = {v} must be > 0", margin=v)
    margin = 1.0 - v
    if margin <= 0:
        raise NoMinimumError(f"v = {v:g} ≥ 1: objective has no minimum", f"v = {v:g} ≥ 1", margin)
    res = bounds.minimize_gaussian_objective(2.0 * v)
    value = m * (1.0 + bounds.SQRT_2_OVER_PI * (res.f_star - bounds.SQRT_PI_OVER_2))
    return BoundValue(value, BoundKind.GAUSSIAN_UPPER_ONE_BODY, margin, mu_star=res.mu_star, minimization=res)


# -- matrix-element quadrature -----------------------------------------------


def gaussian_expectation_quadrature(N: int, m: float, v: float, mu: float) -> tuple[float, float]:
    """(⟨√(λp² + m²)⟩, ⟨-v/(√2 r)⟩) for φ(r) = (α/π)^{3/4} exp(-αr²/2).

    α is recovered from μ = m √(2N/((N-1)α)).  The kinetic term is a radial
    momentum-space integral against |φ̃(p)|² ∝ exp(-p²/α); the potential term
    is a radial position-space integral.  Neither uses the Bessel function.
    """
    if not mu > 0:
        raise DomainError(f"mu = {mu} must be > 0")
    lam = build_geometry(N).lam
    alpha = bounds.alpha_from_mu(N, m, mu)

    # p = √α u: ⟨f⟩ = (4/√π) ∫ u² e^{-u²} f(√α u) du.
    kin, kin_err = integrate.quad(
        lambda u: u * u * math.exp(-u * u) * math.sqrt(lam * alpha * u * u + m * m),
        0.0,
        np.inf,
        epsabs=0.0,
        epsrel=1e-13,
        limit=200,
    )
    kinetic = 4.0 / math.sqrt(math.pi) * kin

    # r = x/√α: ⟨1/(√2 r)⟩ = (4/√π) √α ∫ x e^{-x²} dx / √2.
    pot, pot_err = integrate.quad(lambda x: x * math.exp(-x * x), 0.0, np.inf, epsabs=0.0, epsrel=1e-13)
    potential = -v * 4.0 / math.sqrt(math.pi) * math.sqrt(alpha) * pot / math.sqrt(2.0)
    if not (math.isfinite(kinetic) and math.isfinite(potential)):
        raise BoundsError("quadrature failure in Gaussian expectation")
    return kinetic, potential


# -- triangle inequality -----------------------------------------------------


@dataclass(frozen=True)
class TriangleReport:
    N: int
    delta: float
    sample_count: int
    max_violation: float
    violations: int  # samples with lhs - rhs above the threshold
    threshold: float
    mean_lhs: float  # sample mean of √(m² + p²)
    mean_rhs: float  # sample mean of √(m² + (p + δP)²)


def _unit_normals(p: np.ndarray, P: np.ndarray) -> np.ndarray:
    k = np.cross(p, P)
    norm = np.linalg.norm(k, axis=1)
    bad = norm <= 1e-12 * (1.0 + np.linalg.norm(p, axis=1) * np.linalg.norm(P, axis=1))
    if np.any(bad):
        # p ∥ P (or one vanishes): any direction normal to both will do.
        ref = np.where(np.linalg.norm(p[bad], axis=1, keepdims=True) > 0, p[bad], P[bad])
        trial = np.cross(ref, np.array([1.0, 0.0, 0.0]))
        weak = np.linalg.norm(trial, axis=1) <= 1e-12 * (1.0 + np.linalg.norm(ref, axis=1))
        trial[weak] = np.cross(ref[weak], np.array([0.0, 1.0, 0.0]))
        zero = np.linalg.norm(ref, axis=1) == 0
        trial[zero] = np.array([0.0, 0.0, 1.0])
        k[bad] = trial
        norm[bad] = np.linalg.norm(trial, axis=1)
    return k / norm[:, None]


def triangle_gap(m: float, delta: float, p, P) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of |mk + p| <= ½|mk + p + δP| + ½|mk + p - δP|.

    k is the unit normal to the plane of p and P, so |mk + q| = √(m² + q²)
    for q in that plane.
    """
    p = np.atleast_2d(np.asarray(p, dtype=float))
    P = np.atleast_2d(np.asarray(P, dtype=float))
    mk = m * _unit_normals(p, P)
    lhs = np.linalg.norm(mk + p, axis=1)
    rhs = 0.5 * np.linalg.norm(mk + p + delta * P, axis=1) + 0.5 * np.linalg.norm(mk + p - delta * P, axis=1)
    return lhs, rhs


def triangle_inequality_sample(
    N: int, m: float, sample_count: int, seed: int, threshold: float = 1e-13
) -> TriangleReport:
    """Sample isotropic Gaussian (p, P) pairs and record violations."""
    if sample_count < 1:
        raise ValueError("sample_count must be >= 1")
    delta = build_geometry(N).delta
    rng = np.random.default_rng(seed)
    p = rng.standard_normal((sample_count, 3))
    P = rng.standard_normal((sample_count, 3))
    lhs, rhs = triangle_gap(m, delta, p, P)
    excess = lhs - rhs
    plus = np.sqrt(m * m + np.sum((p + delta * P) ** 2, axis=1))
    return TriangleReport(
        N=N,
        delta=delta,
        sample_count=sample_count,
        max_violation=float(max(np.max(excess), 0.0)),
        violations=int(np.sum(excess > threshold)),
        threshold=threshold,
        mean_lhs=float(np.mean(lhs)),
        mean_rhs=float(np.mean(plus)),
    )


# -- nonrelativistic oscillator ----------------------------------------------


@dataclass(frozen=True)
class OscillatorCheck:
    N: int
    exact: float
    n_half_bound: float

    @property
    def ratio(self) -> float:
        return self.exact / self.n_half_bound


def nr_oscillator_check(N: int) -> OscillatorCheck:
    """Exact and N/2-bound energies for H = Σ p_i² + Σ_{i<j} r_ij².

    Exact: N - 1 relative oscillators π² + N ρ², each contributing 3√N.
    N/2 bound: the one-body operator N [p² + (N-1) r²/2], whose ground energy
    is 3 √(N · N(N-1)/2).  Their ratio is √(2(N-1)/N); it equals 1 at N = 2
    (the two-body reduction is exact) and tends to √2 as N grows.
    """
    if N < 2:
        raise DomainError(f"N = {N} must be >= 2")
    exact = 3.0 * (N - 1) * math.sqrt(N)
    bound = 3.0 * math.sqrt(N * N * (N - 1) / 2.0)
    return OscillatorCheck(N, exact, bound)


# -- verification suite ------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    deviation: float
    tolerance: float
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name:<22} deviation={self.deviation:.3e} tol={self.tolerance:.1e} ({self.seconds:.2f}s)"
        return f"{text} {self.detail}".rstrip()


def _check_g_identity(g_func: Callable) -> CheckResult:
    xs = np.geomspace(1e-3, 50.0, 50)
    dev = max(abs(g_func(x) - specfun.g_quadrature(x)) / g_func(x) for x in xs)
    return CheckResult("g_identity", dev <= 1e-8, dev, 1e-8, "50 log-spaced x in [1e-3, 50]")


def _check_n2_coincidence() -> CheckResult:
    vs = np.linspace(0.0, 1.0, 102)[1:-1]
    dev = max(
        abs(bounds.simple_lower(SystemParams.raw(2, v)).value - bounds.improved_lower(SystemParams.raw(2, v)).value)
        for v in vs
    )
    return CheckResult("n2_coincidence", dev <= 2e-12, dev, 2e-12, "N = 2, m = 1, 100 v in (0, 1)")


def _check_oscillator() -> CheckResult:
    dev = 0.0
    for N in range(2, 21):
        chk = nr_oscillator_check(N)
        dev = max(dev, abs(chk.ratio - math.sqrt(2.0 * (N - 1) / N)))
    far = nr_oscillator_check(10**8).ratio
    detail = f"ratio = √(2(N−1)/N) for N = 2..20; N = 1e8 ratio/√2 − 1 = {far / math.sqrt(2) - 1:.1e}"
    return CheckResult("oscillator_ratio", dev <= 1e-12, dev, 1e-12, detail)


def _check_jacobi() -> CheckResult:
    dev = 0.0
    ok = True
    for N in range(2, 51):
        rep = check_representability(build_geometry(N))
        dev = max(dev, rep.max_deviation)
        ok = ok and rep.ok
    return CheckResult("jacobi_identities", ok, dev, 1e-12, "N = 2..50")


def _check_triangle() -> CheckResult:
    rep = triangle_inequality_sample(5, 1.0, 100_000, seed=42)
    return CheckResult(
        "triangle_sampler",
        rep.violations == 0,
        rep.max_violation,
        rep.threshold,
        f"N = 5, 1e5 samples, seed 42, {rep.violations} violations",
    )


def _check_sandwich() -> CheckResult:
    worst = -math.inf
    parts = []
    ok = True
    for v in (0.1, 0.3, 0.45):
        res = optimize_scale(1.0, v, 40)
        lower = bounds.martin_roy_lower(1.0, v).value
        upper = onebody_gaussian_upper(1.0, v).value
        energies = [e for _, e in res.history]
        monotone = all(b <= a + 1e-12 for a, b in zip(energies, energies[1:]))
        ok = ok and lower <= res.energy <= upper and monotone
        worst = max(worst, lower - res.energy, res.energy - upper)
        parts.append(f"v={v}: {lower:.6f} ≤ {res.energy:.8f} ≤ {upper:.6f}")
    return CheckResult("spectral_sandwich", ok, max(worst, 0.0), 0.0, "; ".join(parts))


def _check_ordering() -> CheckResult:
    ok = True
    worst = 0.0
    for N in range(3, 11):
        edge = 1.0 / (N - 1)
        for v in np.linspace(0.0, edge, 22)[1:-1]:
            p = SystemParams.raw(N, float(v))
            sl = bounds.simple_lower(p).value
            il = bounds.improved_lower(p).value
            gu = bounds.gaussian_upper(p).value
            ok = ok and sl < il < gu
            worst = max(worst, sl - il, il - gu)
    return CheckResult("bound_ordering", ok, max(worst, 0.0), 0.0, "N = 3..10, SL < L < U")


def _check_matrix_elements() -> CheckResult:
    dev = 0.0
    for N in (2, 5, 12):
        for mu in (0.3, 2.0, 15.0):
            kin, pot = gaussian_expectation_quadrature(N, 1.0, 0.2, mu)
            k_closed = bounds.kinetic_expectation_gaussian(N, 1.0, mu)
            p_closed = bounds.potential_expectation_gaussian(N, 1.0, 0.2, mu)
            dev = max(dev, abs(kin - k_closed) / k_closed, abs(pot - p_closed) / abs(p_closed))
    return CheckResult("matrix_elements", dev <= 1e-8, dev, 1e-8, "closed forms vs radial quadrature")


def run_suite(level: str = "quick", g_perturbation: float = 0.0) -> list[CheckResult]:
    """Run the verification checks; ``g_perturbation`` scales g by (1 + eps)
    inside the identity check only, as a negative control."""
    if level not in ("quick", "full"):
        raise ValueError(f"unknown level {level!r}")

    def g_func(x):
        return specfun.g(x) * (1.0 + g_perturbation)

    checks: list[Callable[[], CheckResult]] = [
        lambda: _check_g_identity(g_func),
        _check_n2_coincidence,
        _check_oscillator,
    ]
    if level == "full":
        checks += [_check_jacobi, _check_matrix_elements, _check_ordering, _check_triangle, _check_sandwich]
    results = []
    for check in checks:
        t0 = time.perf_counter()
        res = check()
        res.seconds = time.perf_counter() - t0
        results.append(res)
    return results
