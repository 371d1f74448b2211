"""Pair systems (m, Gamma, Lambda): the weighted multiplier operator
S = sum of m_i Gamma_i^H Lambda_i, its adjoint and composition identities,
frame-like constants from numerical-range geometry, and (p,q) norm bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import spectral
from .errors import (
    DimensionMismatchError,
    ExponentMismatchError,
    InvalidExponentError,
)
from .frames import OperatorFamily, frame_operator

#: default relative invertibility threshold for the pair-frame verdict
PAIR_TOL = 1e-10

_GRAD_TOL = 1e-9
_MAX_ITERS = 500
_STEP0 = 0.1
_STEP_FLOOR = 1e-12


@dataclass(frozen=True)
class WeightSequence:
    """Finite scalar symbol m = (m_1, ..., m_N), one weight per member."""

    values: tuple

    def __init__(self, values: Sequence):
        vals = tuple(complex(v) for v in values)
        if not vals:
            raise ValueError("weight sequence must be nonempty")
        if not all(math.isfinite(v.real) and math.isfinite(v.imag) for v in vals):
            raise ValueError("weights must be finite")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def sup_norm(self) -> float:
        return max(abs(v) for v in self.values)

    def conjugated(self) -> "WeightSequence":
        return WeightSequence(tuple(v.conjugate() for v in self.values))

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class PairSystem:
    """Triple (m, Gamma, Lambda) with matching counts and ambient dimension."""

    m: WeightSequence
    gamma: OperatorFamily
    lam: OperatorFamily

    def __init__(self, m, gamma: OperatorFamily, lam: OperatorFamily):
        if not isinstance(m, WeightSequence):
            m = WeightSequence(m)
        if gamma.ambient_dim != lam.ambient_dim:
            raise DimensionMismatchError(
                f"families live on C^{gamma.ambient_dim} and C^{lam.ambient_dim}"
            )
        if not (len(m) == gamma.count == lam.count):
            raise DimensionMismatchError(
                f"member counts differ: weights {len(m)}, gamma {gamma.count}, lambda {lam.count}"
            )
        for i, (g, l) in enumerate(zip(gamma.members, lam.members)):
            if g.shape[0] != l.shape[0]:
                raise DimensionMismatchError(
                    f"member {i}: gamma maps into C^{g.shape[0]}, lambda into C^{l.shape[0]}"
                )
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "lam", lam)

    @property
    def ambient_dim(self) -> int:
        return self.gamma.ambient_dim

    @property
    def count(self) -> int:
        return self.gamma.count

    def adjoint_system(self) -> "PairSystem":
        """The system (conj m, Lambda, Gamma) whose operator is S^H."""
        return PairSystem(self.m.conjugated(), self.lam, self.gamma)


def pair_operator(system: PairSystem) -> np.ndarray:
    """S = sum of m_i Gamma_i^H Lambda_i, accumulated member by member."""
    n = system.ambient_dim
    s = np.zeros((n, n), dtype=np.complex128)
    for w, g, l in zip(system.m.values, system.gamma.members, system.lam.members):
        s += w * (g.conj().T @ l)
    return s


def pair_operator_stacked(system: PairSystem) -> np.ndarray:
    """Same operator through the factorization Gamma^H diag(m_i I) Lambda.

    Kept as an independent evaluation route; it must agree with
    :func:`pair_operator` to roundoff and the test suite holds it to 1e-12.
    """
    wexp = np.repeat(system.m.as_array(), system.gamma.codims)
    return (system.gamma.stacked.conj().T * wexp) @ system.lam.stacked


def adjoint_check(system: PairSystem) -> float:
    """Residual norm(S^H - S_swapped) of the adjoint identity.

    Swapping the families and conjugating the weights realizes the adjoint,
    so the residual is pure floating-point noise: at most about
    1e-12 * (1 + norm(S)) for any well-formed system.
    """
    s = pair_operator(system)
    s_adj = pair_operator(system.adjoint_system())
    return spectral.op_norm(s.conj().T - s_adj)


@dataclass(frozen=True, eq=False)
class PairReport:
    """Verdicts for one pair system.

    ``framelike_lower``/``framelike_upper`` are the optimal constants of the
    two-sided bound on |<S f, f>| over unit vectors, read off the numerical
    range. A positive lower constant forces invertibility, but not the other
    way around: ``is_pair_frame`` can hold with framelike_lower = 0.
    """

    S: np.ndarray
    is_pair_frame: bool
    condition_number: float | None
    framelike_lower: float
    framelike_upper: float
    adjoint_residual: float


def classify_pair(
    system: PairSystem,
    tol: float = PAIR_TOL,
    theta_steps: int = spectral.THETA_STEPS,
) -> PairReport:
    """Pair-frame verdict with frame-like constants and adjoint residual.

    The verdict is min_singular(S) > tol * op_norm(S); the frame-like
    constants are the distance of the numerical range of S from the origin
    and the numerical radius.
    """
    s = pair_operator(system)
    smin = spectral.min_singular(s)
    onorm = spectral.op_norm(s)
    invertible = smin > tol * onorm
    dist, radius = spectral.numerical_range_bounds(s, theta_steps=theta_steps)
    return PairReport(
        S=s,
        is_pair_frame=invertible,
        condition_number=(onorm / smin) if invertible else None,
        framelike_lower=dist,
        framelike_upper=radius,
        adjoint_residual=adjoint_check(system),
    )


def compose(system: PairSystem, V, W) -> PairSystem:
    """The system (m, {Gamma_i V}, {Lambda_i W}).

    Its pair operator is V^H S W, so composing with invertible V, W
    preserves the pair-frame property.
    """
    n = system.ambient_dim
    v = spectral.as_matrix(V)
    w = spectral.as_matrix(W)
    if v.shape != (n, n) or w.shape != (n, n):
        raise DimensionMismatchError(
            f"composition matrices must be {n} x {n}, got {v.shape} and {w.shape}"
        )
    gamma = OperatorFamily([g @ v for g in system.gamma.members], n)
    lam = OperatorFamily([l @ w for l in system.lam.members], n)
    return PairSystem(system.m, gamma, lam)


def _block_norms(stacked: np.ndarray, offsets: np.ndarray, X: np.ndarray) -> tuple:
    """Per-member norms ||L_i x|| for each column x of X; returns (Y, r)."""
    y = stacked @ X
    sq = np.abs(y) ** 2
    r = np.sqrt(np.add.reduceat(sq, offsets, axis=0))
    return y, r


def p_bessel_bound(
    family: OperatorFamily,
    p: float,
    restarts: int = 32,
    seed: int = 0,
) -> float:
    """Estimate of B_p = sup over unit f of sum_i ||L_i f||^p.

    Projected gradient ascent on the complex unit sphere, run from
    ``restarts`` random starts plus the top eigenvector of the frame
    operator (exact for p = 2). Every accepted step strictly increases the
    objective, so the returned value is a certified lower estimate of the
    true supremum. For p = 1 the same schedule applies subgradient steps,
    dropping members with ||L_i f|| = 0.
    """
    p = float(p)
    if not math.isfinite(p) or p < 1.0:
        raise InvalidExponentError(f"exponent must satisfy p >= 1, got {p}")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    n = family.ambient_dim
    stacked = family.stacked
    offsets = np.array(family.offsets)
    codims = np.array(family.codims)

    rng = np.random.Generator(np.random.PCG64(seed))
    starts = rng.standard_normal((n, restarts)) + 1j * rng.standard_normal((n, restarts))
    _, top_vec = np.linalg.eigh(frame_operator(family))
    X = np.concatenate([top_vec[:, -1:], starts], axis=1)
    X = X / np.linalg.norm(X, axis=0)
    R = X.shape[1]

    def objective(cols: np.ndarray) -> np.ndarray:
        _, r = _block_norms(stacked, offsets, cols)
        return (r**p).sum(axis=0)

    def objective_grad(cols: np.ndarray) -> tuple:
        y, r = _block_norms(stacked, offsets, cols)
        phi = (r**p).sum(axis=0)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = p * r ** (p - 2.0)
        if p < 2.0:
            w[r == 0.0] = 0.0
        grad = stacked.conj().T @ (np.repeat(w, codims, axis=0) * y)
        return phi, grad

    phi, grad = objective_grad(X)
    active = np.ones(R, dtype=bool)
    for _ in range(_MAX_ITERS):
        if not active.any():
            break
        inner = np.real(np.sum(X.conj() * grad, axis=0))
        tangent = grad - X * inner
        tnorm = np.linalg.norm(tangent, axis=0)
        active &= tnorm >= _GRAD_TOL
        if not active.any():
            break
        eta = np.full(R, _STEP0)
        trying = active.copy()
        while trying.any():
            idx = np.flatnonzero(trying)
            cand = X[:, idx] + eta[idx] * tangent[:, idx]
            cand = cand / np.linalg.norm(cand, axis=0)
            cand_phi = objective(cand)
            better = cand_phi > phi[idx]
            took = idx[better]
            X[:, took] = cand[:, better]
            phi[took] = cand_phi[better]
            trying[took] = False
            halved = idx[~better]
            eta[halved] *= 0.5
            floored = halved[eta[halved] < _STEP_FLOOR]
            trying[floored] = False
            active[floored] = False
        phi, grad = objective_grad(X)
    return float(phi.max())


class PqBoundReport(NamedTuple):
    """Operator norm next to the two forms of the Hoelder-type bound."""

    norm: float
    holder_bound: float
    paper_bound: float


def pq_pair_norm_bound(
    system: PairSystem,
    p: float,
    q: float,
    restarts: int = 32,
    seed: int = 0,
) -> PqBoundReport:
    """Norm of S against the Hoelder bound from (p,q)-Bessel constants.

    With B the p-Bessel constant of Gamma and B' the q-Bessel constant of
    Lambda, ``holder_bound`` is sup|m_i| * B^(1/p) * B'^(1/q) — the form the
    Cauchy-Schwarz/Hoelder chain actually yields and the one the contract
    guarantees dominates norm(S). ``paper_bound`` is the square root of the
    same expression, reported for comparison; it may fall below norm(S).
    """
    p = float(p)
    q = float(q)
    if not (math.isfinite(p) and math.isfinite(q)) or p < 1.0 or q < 1.0:
        raise InvalidExponentError(f"exponents must satisfy p, q >= 1, got p={p}, q={q}")
    if abs(1.0 / p + 1.0 / q - 1.0) > 1e-12:
        raise ExponentMismatchError(f"1/p + 1/q = {1.0 / p + 1.0 / q!r}, expected 1")
    b_gamma = p_bessel_bound(system.gamma, p, restarts=restarts, seed=seed)
    b_lam = p_bessel_bound(system.lam, q, restarts=restarts, seed=seed + 1)
    holder = system.m.sup_norm * b_gamma ** (1.0 / p) * b_lam ** (1.0 / q)
    return PqBoundReport(
        norm=spectral.op_norm(pair_operator(system)),
        holder_bound=holder,
        paper_bound=math.sqrt(holder),
    )
