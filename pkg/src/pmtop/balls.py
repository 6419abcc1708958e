"""Membership balls of a probabilistic modular and their sampled algebra.

B(x, alpha, t) = { y : mu_{x-y}(t) > 1 - alpha } with level alpha in (0,1)
and scale t > 0.  Membership at the exact decision boundary is not
decidable in floating point, so contains() demands a strict margin of
EPS_STRICT and the samplers re-draw points that land inside the epsilon
band around the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from .distfn import EPS_STRICT, CheckReport, SampleBudget, _make_report, check_rng
from .pmspace import (
    InfeasibleConstruction,
    PMSpace,
    Vector,
    VerificationError,
    as_vector,
    check_beta_homogeneous,
    oracle_threshold,
)

# Bisection depth for scale witnesses; resolution is scale * 2**-60.
WITNESS_BISECTION_STEPS = 60

# Rejection sampling must keep at least this acceptance rate.
MIN_ACCEPTANCE = 0.10


@dataclass(frozen=True, eq=False)
class Ball:
    space: PMSpace
    center: Vector
    level: float
    scale: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", as_vector(self.center, self.space.dim))
        if not (0.0 < self.level < 1.0):
            raise ValueError(f"level must lie in (0, 1), got {self.level}")
        if not self.scale > 0:
            raise ValueError(f"scale must be > 0, got {self.scale}")

    def to_config(self) -> dict[str, Any]:
        return {"center": self.center.tolist(), "level": self.level,
                "scale": self.scale}


def mu_of_offsets(ball: Ball, Y: np.ndarray) -> np.ndarray:
    """mu_{center - Y[i]}(scale) for a batch of candidate points."""
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    S = ball.space.sigma(ball.center[None, :] - Y)
    return ball.space.kernel(np.asarray(ball.scale, dtype=float), S)


def contains_many(ball: Ball, Y: np.ndarray) -> np.ndarray:
    return mu_of_offsets(ball, Y) > (1.0 - ball.level) + EPS_STRICT


def contains(ball: Ball, y: Vector) -> bool:
    """Strict membership with the EPS_STRICT boundary guard."""
    y = as_vector(y, ball.space.dim)
    return bool(contains_many(ball, y[None, :])[0])


def boundary_band(ball: Ball, Y: np.ndarray, band: float) -> np.ndarray:
    """Mask of candidates within the undecidable band around the boundary."""
    return np.abs(mu_of_offsets(ball, Y) - (1.0 - ball.level)) <= band


# ---------------------------------------------------------------------------
# Sampling.
# ---------------------------------------------------------------------------


def _calibrated_scale(ball: Ball, rng: np.random.Generator,
                      lo: float = 0.2, hi: float = 0.8) -> float:
    """Gaussian scale around the center giving a usable acceptance rate."""
    probe = rng.standard_normal((256, ball.space.dim))
    s = 1.0
    try:
        # Seed the search from the closed-form radius when one exists.
        thr = oracle_threshold(ball.space, ball.level, ball.scale)
        med = float(np.median(ball.space.sigma(probe)))
        if med > 0:
            s = max(thr / med, 1e-12)
    except ValueError:
        pass
    for _ in range(80):
        acc = float(np.mean(contains_many(ball, ball.center[None, :] + s * probe)))
        if acc > hi:
            s *= 2.0
        elif acc < lo:
            s *= 0.5
        else:
            break
    return s


def sample_members(ball: Ball, rng: np.random.Generator, count: int,
                   band: float = 0.0) -> np.ndarray:
    """Rejection-sample members of the ball, re-drawing boundary-band hits."""
    s = _calibrated_scale(ball, rng)
    out: list[np.ndarray] = []
    got = 0
    for _ in range(200):
        batch = max(4 * count, 64)
        Y = ball.center[None, :] + s * rng.standard_normal((batch, ball.space.dim))
        keep = contains_many(ball, Y)
        if band > 0:
            keep &= ~boundary_band(ball, Y, band)
        acc = float(np.mean(keep))
        kept = Y[keep]
        if kept.shape[0]:
            out.append(kept)
            got += kept.shape[0]
        if got >= count:
            return np.concatenate(out, axis=0)[:count]
        if acc < MIN_ACCEPTANCE:
            s *= 0.5
    raise VerificationError(
        f"member sampler starved for ball level={ball.level} scale={ball.scale}")


def sample_around(ball: Ball, rng: np.random.Generator, count: int,
                  band: float = 0.0) -> np.ndarray:
    """Sample a mixed in/out cloud around the ball for boolean comparisons."""
    s = 2.0 * _calibrated_scale(ball, rng)
    out: list[np.ndarray] = []
    got = 0
    for _ in range(200):
        batch = max(2 * count, 64)
        Y = ball.center[None, :] + s * rng.standard_normal((batch, ball.space.dim))
        keep = (~boundary_band(ball, Y, band)) if band > 0 else np.ones(batch, bool)
        kept = Y[keep]
        out.append(kept)
        got += kept.shape[0]
        if got >= count:
            return np.concatenate(out, axis=0)[:count]
    raise VerificationError("cloud sampler starved")


# ---------------------------------------------------------------------------
# Scale witness: membership persists at some strictly smaller scale.
# ---------------------------------------------------------------------------


def smaller_scale_witness(ball: Ball, y: Vector) -> float:
    """A scale t* in (0, t) with mu_{x-y}(t*) > 1 - alpha, given y in the ball.

    Bisection on the monotone membership predicate over (0, t]; returns
    the midpoint of the maximal feasible subinterval, which keeps the
    witness away from both boundaries.  When no interior feasible scale
    exists down to the search resolution (t * 2**-60), the underlying
    distribution function is not left-continuous at t and the failure is
    reported as such.
    """
    y = as_vector(y, ball.space.dim)
    if not contains(ball, y):
        raise ValueError("witness requires a ball member")
    sig = ball.space.sigma1(ball.center - y)
    cut = 1.0 - ball.level

    def feasible(s: float) -> bool:
        return float(ball.space.kernel(np.asarray(s, dtype=float), sig)) > cut

    lo, hi = 0.0, ball.scale
    for _ in range(WITNESS_BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:  # float granularity reached
            break
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    if hi >= ball.scale:  # no interior feasible scale was ever probed
        raise InfeasibleConstruction(
            "no scale in (0, t) keeps membership at resolution t*2^-60: "
            f"mu jumps at t={ball.scale} (left-continuity violation), "
            f"sigma={sig}")
    t_star = 0.5 * (hi + ball.scale)
    if not feasible(t_star):  # monotone predicate makes this unreachable
        raise InfeasibleConstruction(f"witness midpoint {t_star} infeasible")
    return t_star


# ---------------------------------------------------------------------------
# Ball algebra, checked by sampling.
# ---------------------------------------------------------------------------


def translate_identity(space: PMSpace, x: Vector, level: float, scale: float,
                       budget: SampleBudget) -> CheckReport:
    """B(x, alpha, t) equals x + B(0, alpha, t), point by sampled point."""
    x = as_vector(x, space.dim)
    ball_x = Ball(space, x, level, scale)
    ball_0 = Ball(space, space.zero(), level, scale)
    rng = check_rng(budget.rng_seed, "translate_identity")
    Y = sample_around(ball_x, rng, budget.n_vectors, band=budget.epsilon)
    lhs = contains_many(ball_x, Y)
    rhs = contains_many(ball_0, Y - x[None, :])
    bad = lhs != rhs
    viol = [{"y": Y[i].tolist(), "in_translated": bool(lhs[i]),
             "in_centered": bool(rhs[i])} for i in np.nonzero(bad)[0]]
    return _make_report("translate_identity", viol, len(Y), budget.rng_seed,
                        notes={"members": int(np.sum(lhs))})


def scaling_identity(space: PMSpace, exponent: float, level: float, scale: float,
                     budget: SampleBudget) -> CheckReport:
    """B(0, alpha, t^beta) equals t * B(0, alpha, 1) for a beta-homogeneous
    modular; fails with a precondition note when homogeneity does not hold."""
    pre_budget = SampleBudget(n_vectors=200, n_scalar_pairs=200,
                              t_grid=budget.t_grid, epsilon=budget.epsilon,
                              rng_seed=budget.rng_seed)
    pre = check_beta_homogeneous(space, exponent, pre_budget)
    if not pre.passed:
        rep = _make_report("scaling_identity", pre.violations[:5], pre.samples_run,
                           budget.rng_seed,
                           notes={"precondition_failed": "beta_homogeneous",
                                  "beta": exponent})
        rep.passed = False
        rep.n_violations = pre.n_violations
        return rep

    ball_pow = Ball(space, space.zero(), level, scale ** exponent)
    ball_unit = Ball(space, space.zero(), level, 1.0)
    rng = check_rng(budget.rng_seed, "scaling_identity")
    Y = sample_around(ball_pow, rng, budget.n_vectors, band=budget.epsilon)
    Y = Y[~boundary_band(ball_unit, Y / scale, budget.epsilon)]
    lhs = contains_many(ball_pow, Y)
    rhs = contains_many(ball_unit, Y / scale)
    bad = lhs != rhs
    viol = [{"y": Y[i].tolist(), "in_scaled": bool(lhs[i]),
             "in_unit": bool(rhs[i])} for i in np.nonzero(bad)[0]]
    return _make_report("scaling_identity", viol, len(Y), budget.rng_seed,
                        notes={"beta": exponent, "t": scale})


def monotone_in_scale(space: PMSpace, level: float, t1: float, t2: float,
                      budget: SampleBudget) -> CheckReport:
    """Sampled subset check B(0, alpha, t1) within B(0, alpha, t2), t1 <= t2."""
    if t1 > t2:
        raise ValueError(f"scales out of order: {t1} > {t2}")
    small = Ball(space, space.zero(), level, t1)
    big = Ball(space, space.zero(), level, t2)
    rng = check_rng(budget.rng_seed, "monotone_in_scale")
    Y = sample_members(small, rng, budget.n_vectors, band=budget.epsilon)
    inside = contains_many(big, Y)
    viol = [{"y": Y[i].tolist()} for i in np.nonzero(~inside)[0]]
    return _make_report("monotone_in_scale", viol, len(Y), budget.rng_seed)


def monotone_in_level(space: PMSpace, level1: float, level2: float, scale: float,
                      budget: SampleBudget) -> CheckReport:
    """Sampled subset check B(0, a1, t) within B(0, a2, t), a1 <= a2."""
    if level1 > level2:
        raise ValueError(f"levels out of order: {level1} > {level2}")
    small = Ball(space, space.zero(), level1, scale)
    big = Ball(space, space.zero(), level2, scale)
    rng = check_rng(budget.rng_seed, "monotone_in_level")
    Y = sample_members(small, rng, budget.n_vectors, band=budget.epsilon)
    inside = contains_many(big, Y)
    viol = [{"y": Y[i].tolist()} for i in np.nonzero(~inside)[0]]
    return _make_report("monotone_in_level", viol, len(Y), budget.rng_seed)


def _require_centered(ball: Ball) -> None:
    if np.any(ball.center != 0.0):
        raise ValueError("check applies to balls centered at the origin")


def is_balanced_sampled(ball: Ball, budget: SampleBudget) -> CheckReport:
    """lambda * B subset of B for |lambda| <= 1, probed on sampled members."""
    _require_centered(ball)
    rng = check_rng(budget.rng_seed, "balanced")
    Y = sample_members(ball, rng, budget.n_vectors, band=budget.epsilon)
    lam = rng.uniform(-1.0, 1.0, len(Y))
    lam[: min(3, len(lam))] = [0.0, 1.0, -1.0][: min(3, len(lam))]
    inside = contains_many(ball, lam[:, None] * Y)
    viol = [{"y": Y[i].tolist(), "lambda": float(lam[i])}
            for i in np.nonzero(~inside)[0]]
    return _make_report("balanced", viol, len(Y), budget.rng_seed)


def sampled_convexity(contains_fn: Callable[[np.ndarray], np.ndarray],
                      A: np.ndarray, B: np.ndarray,
                      lam: np.ndarray) -> list[dict[str, Any]]:
    """Generic convexity probe: are the sampled chords inside the set?"""
    mids = lam[:, None] * A + (1.0 - lam)[:, None] * B
    inside = contains_fn(mids)
    return [{"x": A[i].tolist(), "y": B[i].tolist(), "lambda": float(lam[i])}
            for i in np.nonzero(~inside)[0]]


def is_convex_sampled(ball: Ball, budget: SampleBudget) -> CheckReport:
    """Chords between sampled members stay inside the ball."""
    _require_centered(ball)
    rng = check_rng(budget.rng_seed, "convex")
    n = budget.n_vectors
    A = sample_members(ball, rng, n, band=budget.epsilon)
    B = sample_members(ball, rng, n, band=budget.epsilon)
    B[: min(2, n)] = A[: min(2, n)]  # degenerate chords x = y
    lam = rng.uniform(0.0, 1.0, len(A))
    viol = sampled_convexity(lambda M: contains_many(ball, M), A, B, lam)
    return _make_report("convex", viol, len(A), budget.rng_seed)
