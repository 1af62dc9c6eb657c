"""Jacobi relative coordinates for N identical particles.

The orthogonal matrix ``B`` maps particle coordinates to Jacobi coordinates,
[ρ] = B[r], and, being orthogonal, also momenta: [π] = B[p].  Row 1 is the
centre of mass; row k >= 2 averages the first k - 1 particles against the
k-th.  Everything the energy bounds need from these coordinates is encoded in
a handful of scalar coefficients and in matrix identities on ``B``, which are
checked here exactly (no quantum states are sampled).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

__all__ = [
    "JacobiGeometry",
    "RepresentabilityReport",
    "build_geometry",
    "jacobi_matrix",
    "check_representability",
    "identity_tolerance",
]


def identity_tolerance(N: int) -> float:
    """Absolute tolerance for the matrix identities at particle number N."""
    return 1e-12 if N <= 50 else 1e-11


def jacobi_matrix(N: int) -> np.ndarray:
    if N < 2:
        raise DomainError(f"N = {N} must be >= 2")
    B = np.zeros((N, N))
    B[0, :] = 1.0 / math.sqrt(N)
    for k in range(2, N + 1):
        B[k - 1, : k - 1] = 1.0 / math.sqrt(k * (k - 1))
        B[k - 1, k - 1] = -math.sqrt((k - 1) / k)
    return B


@dataclass(frozen=True)
class JacobiGeometry:
    """Scalar coefficients of the two-particle reduction plus the matrix B.

    With r = r_{N-1} - r_N expressed through ρ_N and ρ_{N-1}:

    * ``alpha`` = √(N/(N-1)), ``beta`` = √((N-2)/(N-1)), ``delta`` = β/α
    * ``lam`` (λ) = (N-1)/N, ``a`` = 1/√(N(N-1)), ``gamma`` = N(N-1)/2
    """

    N: int
    alpha: float
    beta: float
    delta: float
    lam: float
    a: float
    gamma: float
    B: np.ndarray = field(repr=False, compare=False)


def build_geometry(N: int) -> JacobiGeometry:
    if N < 2:
        raise DomainError(f"N = {N} must be >= 2")
    return JacobiGeometry(
        N=N,
        alpha=math.sqrt(N / (N - 1)),
        beta=math.sqrt((N - 2) / (N - 1)),
        delta=math.sqrt((N - 2) / N),
        lam=(N - 1) / N,
        a=1.0 / math.sqrt(N * (N - 1)),
        gamma=N * (N - 1) / 2,
        B=jacobi_matrix(N),
    )


@dataclass(frozen=True)
class RepresentabilityReport:
    N: int
    orthogonality: float  # max |B Bᵀ - I|
    first_row: float  # max |B_1k - 1/√N|
    diagonal_sum: float  # max over i,j > 1 of |Σ_k B_ik B_jk - δ_ij|
    offdiagonal_sum: float  # max over i,j > 1 of |Σ_{k≠l} B_ik B_jl + δ_ij|
    momentum_reduction: float  # p_N = -(p + δP), p_{N-1} = p - δP, ⟨p·P⟩ = 0
    coefficients: float  # α² + β² = 2 and friends
    tolerance: float

    @property
    def max_deviation(self) -> float:
        return max(
            self.orthogonality,
            self.first_row,
            self.diagonal_sum,
            self.offdiagonal_sum,
            self.momentum_reduction,
            self.coefficients,
        )

    @property
    def ok(self) -> bool:
        return self.max_deviation <= self.tolerance


def _coefficient_deviation(geom: JacobiGeometry) -> float:
    al, be, de, lam, a, N = geom.alpha, geom.beta, geom.delta, geom.lam, geom.a, geom.N
    residuals = [
        al**2 + be**2 - 2.0,
        a**2 + be**2 - lam,
        1.0 / al**2 - lam,
        (N - 1) * a - 1.0 / al,
        N * a - al,
        de - be / al,
        1.0 + de**2 - 2.0 * lam,
    ]
    return max(abs(r) for r in residuals)


def _momentum_reduction_deviation(geom: JacobiGeometry) -> float:
    """Check the two-particle momentum reduction against B itself.

    Momenta satisfy p = Bᵀπ.  Dropping π_1, p_N and p_{N-1} depend only on
    π_N and π_{N-1}, and (P, p) = ½ M (π_N, π_{N-1}) with M = [[β, α], [α, -β]].
    Since M² = 2I, (π_N, π_{N-1}) = M (P, p).  The coefficients of p_N and
    p_{N-1} in (P, p) must be -(δ, 1) and (-δ, 1).  Under ⟨π_i·π_j⟩ = δ_ij K,
    the (P, p) covariance is ¼ M Mᵀ K, which must equal ½ K I.
    """
    N = geom.N
    if N == 2:
        # ρ_{N-1} is the centre of mass; only p_2 = -(p) relative to (P, p) survives.
        B = geom.B
        dev = abs(B[1, 1] + 1.0 / geom.alpha)
        return dev
    B = geom.B
    al, be = geom.alpha, geom.beta
    M = np.array([[be, al], [al, -be]])
    # Rows: p_N, p_{N-1}; columns: coefficients of (π_N, π_{N-1}).
    in_pi = np.array([[B[N - 1, N - 1], B[N - 2, N - 1]], [B[N - 1, N - 2], B[N - 2, N - 2]]])
    in_Pp = in_pi @ M
    expected = np.array([[-geom.delta, -1.0], [-geom.delta, 1.0]])
    dev = float(np.max(np.abs(in_Pp - expected)))
    # π_1 must not enter p_N or p_{N-1} apart from the centre-of-mass share 1/√N.
    dev = max(dev, abs(B[0, N - 1] - 1.0 / math.sqrt(N)), abs(B[0, N - 2] - 1.0 / math.sqrt(N)))
    # Rows 2..N-2 of B vanish in the last two columns.
    if N > 3:
        dev = max(dev, float(np.max(np.abs(B[1 : N - 2, N - 2 :]))))
    cov = 0.25 * M @ M.T
    dev = max(dev, float(np.max(np.abs(cov - 0.5 * np.eye(2)))))
    return dev


def check_representability(geom: JacobiGeometry) -> RepresentabilityReport:
    """Verify the coefficient identities that make ⟨π_i·π_j⟩ = δ_ij ⟨π_2²⟩.

    For a boson-symmetric state ⟨π_i·π_j⟩ = S1 ⟨p_1²⟩ + S2 ⟨p_1·p_2⟩ with
    S1 = Σ_k B_ik B_jk and S2 = Σ_{k≠l} B_ik B_jl.  Both are computed here by
    explicit summation (not via row sums) for every pair i, j > 1 and compared
    with δ_ij and -δ_ij respectively.
    """
    B = geom.B
    N = geom.N
    orth = float(np.max(np.abs(B @ B.T - np.eye(N))))
    first = float(np.max(np.abs(B[0] - 1.0 / math.sqrt(N))))

    rel = B[1:]
    off_mask = ~np.eye(N, dtype=bool)
    dev1 = 0.0
    dev2 = 0.0
    for i in range(N - 1):
        for j in range(N - 1):
            kron = 1.0 if i == j else 0.0
            outer = np.outer(rel[i], rel[j])
            s1 = float(np.trace(outer))
            s2 = float(outer[off_mask].sum())
            dev1 = max(dev1, abs(s1 - kron))
            dev2 = max(dev2, abs(s2 + kron))

    return RepresentabilityReport(
        N=N,
        orthogonality=orth,
        first_row=first,
        diagonal_sum=dev1,
        offdiagonal_sum=dev2,
        momentum_reduction=_momentum_reduction_deviation(geom),
        coefficients=_coefficient_deviation(geom),
        tolerance=identity_tolerance(N),
    )
