"""Executable witnesses for the ball topology of a probabilistic modular.

Each operation here turns an existential statement about the induced
topology into a concrete parameter choice plus sampled evidence:

refine_ball                    an inner ball around an interior point of a
                               given ball, certified through the doubling
                               chain mu_{u+v}(s+t) >= mu_{2u}(s) ^ mu_{2v}(t)
                               followed by the doubling constant c.
local_base_containment         the index n for which B(x, 1/n, 1/n) fits
                               inside a given ball around x.
separation_witness             disjoint balls around two distinct points
                               (doubling-constant route).
homogeneous_separation_witness disjoint balls around 0 and a nonzero point
                               (homogeneity route; needs mu_x to take a
                               value strictly between 0 and 1 on the grid).
addition_continuity_witness    ball pair whose pointwise sums land in a
                               target ball.
scalar_continuity_witness      ball and scalar window whose products land
                               in a target ball.
basis_intersection_witness     a ball inside the intersection of two balls
                               through a common point, via refine_ball on
                               both and the minimum of levels and scales.

Free parameters are always the midpoints of their feasible intervals, so
witnesses are deterministic and stay clear of the boundary.  Constructors
raise InfeasibleConstruction (with the failing inequality) when no
feasible parameters exist, and attach a sampled-evidence CheckReport
otherwise; the evidence can fail without raising, which is exactly what
happens when a declared constant is wrong.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from .distfn import CheckReport, SampleBudget, _make_report, check_rng
from .balls import Ball, contains, contains_many, sample_members
from .pmspace import (
    InfeasibleConstruction,
    PMSpace,
    Vector,
    VerificationError,
    as_vector,
)

# Sample count backing each containment / disjointness claim.
WITNESS_SAMPLES = 200

# Guard for the scalar-window division when the scalar sits at 0.
SCALAR_FLOOR = 1e-6


@dataclass(frozen=True, eq=False)
class RefinementWitness:
    inner: Ball
    split: float          # the scale split point t* in (0, t)
    mu_at_split: float    # mu_{x-z}(t*/c), certified above 1 - level
    slack: float          # level s with  mu_at_split ^ member_level > 1-s > 1-alpha
    member_level: float   # the inner ball's membership level parameter
    evidence: CheckReport

    def to_record(self) -> dict[str, Any]:
        return {"inner": self.inner.to_config(), "split": self.split,
                "mu_at_split": self.mu_at_split, "slack": self.slack,
                "member_level": self.member_level,
                "evidence": self.evidence.to_record()}


@dataclass(frozen=True, eq=False)
class SeparationWitness:
    ball_a: Ball
    ball_b: Ball
    sep_scale: float      # the scale t0 at which the points separate
    chosen_level: float   # level parameter picked from its feasible interval
    variant: str          # "doubling" or "homogeneous"
    evidence: CheckReport

    def __post_init__(self) -> None:
        if self.ball_a.level != self.ball_b.level or self.ball_a.scale != self.ball_b.scale:
            raise ValueError("separation balls must share level and scale")

    def to_record(self) -> dict[str, Any]:
        return {"ball_a": self.ball_a.to_config(), "ball_b": self.ball_b.to_config(),
                "sep_scale": self.sep_scale, "chosen_level": self.chosen_level,
                "variant": self.variant, "evidence": self.evidence.to_record()}


@dataclass(frozen=True, eq=False)
class AdditionContinuityWitness:
    ball_a: Ball
    ball_b: Ball
    evidence: CheckReport

    def to_record(self) -> dict[str, Any]:
        return {"ball_a": self.ball_a.to_config(), "ball_b": self.ball_b.to_config(),
                "evidence": self.evidence.to_record()}


@dataclass(frozen=True, eq=False)
class ScalarContinuityWitness:
    ball: Ball
    scalar_center: float
    scalar_window: float
    evidence: CheckReport

    def to_record(self) -> dict[str, Any]:
        return {"ball": self.ball.to_config(), "scalar_center": self.scalar_center,
                "scalar_window": self.scalar_window,
                "evidence": self.evidence.to_record()}


@dataclass(frozen=True, eq=False)
class IntersectionWitness:
    ball: Ball
    left: RefinementWitness
    right: RefinementWitness
    evidence: CheckReport

    def to_record(self) -> dict[str, Any]:
        return {"ball": self.ball.to_config(), "left": self.left.to_record(),
                "right": self.right.to_record(),
                "evidence": self.evidence.to_record()}


def _require_c(space: PMSpace) -> float:
    if space.declared_c is None:
        raise ValueError("operation needs a declared doubling constant")
    return space.declared_c


def _require_beta(space: PMSpace) -> float:
    if space.declared_beta is None:
        raise ValueError("operation needs a declared homogeneity exponent")
    return space.declared_beta


def _bisect_infimum(predicate, hi: float, steps: int = 60) -> float:
    """Infimum of a monotone-true-region (lo, hi] located by bisection;
    the predicate must hold at hi.  Returns hi unchanged when no interior
    point tests true down to float granularity."""
    lo, h = 0.0, hi
    for _ in range(steps):
        mid = 0.5 * (lo + h)
        if mid <= lo or mid >= h:
            break
        if predicate(mid):
            h = mid
        else:
            lo = mid
    return h


def _containment_evidence(name: str, inner: Ball, outer: Ball,
                          budget: SampleBudget, samples: int) -> CheckReport:
    rng = check_rng(budget.rng_seed, name)
    Y = sample_members(inner, rng, samples, band=budget.epsilon)
    inside = contains_many(outer, Y)
    viol = [{"y": Y[i].tolist()} for i in np.nonzero(~inside)[0]]
    return _make_report(name, viol, len(Y), budget.rng_seed)


def refine_ball(space: PMSpace, outer: Ball, z: Vector, budget: SampleBudget,
                samples: int = WITNESS_SAMPLES) -> RefinementWitness:
    """Inner ball around z inside outer, certified by the doubling chain.

    Needs a scale split t* in (0, t) with mu_{x-z}(t*/c) > 1 - alpha; the
    chain then bounds mu_{x-y}(t) below by
    mu_{x-z}(t*/c) ^ mu_{z-y}((t-t*)/c) for every member y of the inner
    ball B(z, alpha/2, (t-t*)/c).  The requirement is strictly stronger
    than plain membership of z whenever c > 1, so interior points close
    to the boundary are honestly reported as infeasible.
    """
    c = _require_c(space)
    z = as_vector(z, space.dim)
    if not contains(outer, z):
        raise ValueError("refinement point must lie inside the outer ball")
    alpha, t = outer.level, outer.scale
    sig = space.sigma1(outer.center - z)
    cut = 1.0 - alpha

    anchor = float(space.kernel(np.asarray(t / c), sig))
    if not anchor > cut + budget.epsilon:
        raise InfeasibleConstruction(
            f"mu_(x-z)(t/c) = {anchor} fails to clear 1 - alpha = {cut}: "
            "the doubling chain cannot certify any inner ball here "
            "(doubling constant too small or point too close to the boundary)")

    def feasible(tau: float) -> bool:
        return float(space.kernel(np.asarray(tau / c), sig)) > cut

    tau_lo = _bisect_infimum(feasible, t)
    if tau_lo >= t:
        raise InfeasibleConstruction(
            "no interior scale split satisfies the doubling-chain bound "
            f"down to float granularity (outer scale {t})")
    split = 0.5 * (tau_lo + t)
    mu_split = float(space.kernel(np.asarray(split / c), sig))
    member_level = 1.0 - alpha / 2.0           # midpoint of (1 - alpha, 1)
    m = min(mu_split, member_level)
    slack = 0.5 * ((1.0 - m) + alpha)          # midpoint of (1 - m, alpha)
    if not (m > 1.0 - slack > 1.0 - alpha):
        raise InfeasibleConstruction(
            f"slack selection failed: min({mu_split}, {member_level}) "
            f"vs 1 - {slack} vs 1 - {alpha}")

    inner = Ball(space, z, 1.0 - member_level, (t - split) / c)
    evidence = _containment_evidence("refine_ball", inner, outer, budget, samples)
    return RefinementWitness(inner=inner, split=split, mu_at_split=mu_split,
                             slack=slack, member_level=member_level,
                             evidence=evidence)


def local_base_containment(space: PMSpace, x: Vector, outer: Ball,
                           budget: SampleBudget,
                           samples: int = WITNESS_SAMPLES) -> int:
    """Least n with 1/n < min(scale, level); B(x, 1/n, 1/n) then sits in
    the outer ball, which is verified on samples."""
    x = as_vector(x, space.dim)
    if np.any(outer.center != x):
        raise ValueError("outer ball must be centered at x")
    m = min(outer.level, outer.scale)
    n = int(np.floor(1.0 / m)) + 1
    while n > 2 and 1.0 / (n - 1) < m:
        n -= 1
    small = Ball(space, x, 1.0 / n, 1.0 / n)
    evidence = _containment_evidence("local_base", small, outer, budget, samples)
    if not evidence.passed:
        raise VerificationError(
            f"B(x, 1/{n}, 1/{n}) leaked out of the outer ball on "
            f"{evidence.n_violations} samples")
    return n


def _pick_separation_scale(space: PMSpace, sig: float, budget: SampleBudget,
                           need_above: float | None = None) -> tuple[float, float]:
    """Grid scale whose mu value is closest to 1/2 among the admissible
    ones (mu < 1 - eps, optionally mu > eps); ties resolve to the larger
    scale.  Extends two decades below the grid before giving up."""
    eps = budget.epsilon
    grid = budget.grid_array()
    lo = grid[0]
    extension = np.geomspace(lo / 100.0, lo, 9, endpoint=False)
    for candidate_grid in (grid, extension):
        vals = np.asarray(space.kernel(candidate_grid, sig), dtype=float)
        ok = vals < 1.0 - eps
        if need_above is not None:
            ok &= vals > need_above
        if np.any(ok):
            ts, vs = candidate_grid[ok], vals[ok]
            dist = np.abs(vs - 0.5)
            best = len(dist) - 1 - int(np.argmin(dist[::-1]))
            return float(ts[best]), float(vs[best])
    if need_above is not None:
        raise InfeasibleConstruction(
            "no grid scale with 0 < mu_x(t) < 1: the distribution jumps "
            "straight from 0 to 1 (regularity precondition unmet)")
    raise InfeasibleConstruction(
        "mu_(x-y) >= 1 - eps on the whole grid and two decades below it: "
        "x - y behaves like 0 (value-separation axiom violated)")


def _disjointness_evidence(name: str, ball_a: Ball, ball_b: Ball,
                           budget: SampleBudget, samples: int) -> CheckReport:
    rng = check_rng(budget.rng_seed, name)
    viol: list[dict[str, Any]] = []
    half = max(samples // 2, 1)
    for src, other, tag in ((ball_a, ball_b, "a"), (ball_b, ball_a, "b")):
        Y = sample_members(src, rng, half, band=budget.epsilon)
        overlap = contains_many(other, Y)
        viol.extend({"y": Y[i].tolist(), "sampled_from": tag}
                    for i in np.nonzero(overlap)[0])
    return _make_report(name, viol, 2 * half, budget.rng_seed)


def separation_witness(space: PMSpace, x: Vector, y: Vector,
                       budget: SampleBudget,
                       samples: int = WITNESS_SAMPLES) -> SeparationWitness:
    """Disjoint balls around distinct x and y via the doubling constant.

    Picks the grid scale t0 whose value mu_{x-y}(t0) sits closest to 1/2,
    takes the level parameter as the midpoint of (mu_{x-y}(t0), 1) and
    returns the two balls at scale t0 / (2c).
    """
    c = _require_c(space)
    x = as_vector(x, space.dim)
    y = as_vector(y, space.dim)
    if np.array_equal(x, y):
        raise ValueError("separation needs two distinct points")
    sig = space.sigma1(x - y)
    t0, mu0 = _pick_separation_scale(space, sig, budget)
    chosen = 0.5 * (mu0 + 1.0)
    level = 1.0 - chosen
    scale = t0 / (2.0 * c)
    ball_a = Ball(space, x, level, scale)
    ball_b = Ball(space, y, level, scale)
    evidence = _disjointness_evidence("separation", ball_a, ball_b, budget, samples)
    return SeparationWitness(ball_a=ball_a, ball_b=ball_b, sep_scale=t0,
                             chosen_level=chosen, variant="doubling",
                             evidence=evidence)


def homogeneous_separation_witness(space: PMSpace, x: Vector,
                                   budget: SampleBudget,
                                   samples: int = WITNESS_SAMPLES,
                                   ) -> SeparationWitness:
    """Disjoint balls around 0 and a nonzero x via beta-homogeneity.

    Needs a grid scale where mu_x lies strictly between 0 and 1; the
    level is the midpoint of (0, 1 - mu_x(t0)) and both balls live at
    scale t0 / 2^(beta+1).
    """
    beta = _require_beta(space)
    x = as_vector(x, space.dim)
    if not np.any(x != 0.0):
        raise ValueError("separation from the origin needs a nonzero point")
    sig = space.sigma1(x)
    t0, mu0 = _pick_separation_scale(space, sig, budget,
                                     need_above=budget.epsilon)
    level = 0.5 * (1.0 - mu0)
    scale = t0 / (2.0 ** (beta + 1.0))
    ball_a = Ball(space, space.zero(), level, scale)
    ball_b = Ball(space, x, level, scale)
    evidence = _disjointness_evidence("homogeneous_separation", ball_a, ball_b,
                                      budget, samples)
    return SeparationWitness(ball_a=ball_a, ball_b=ball_b, sep_scale=t0,
                             chosen_level=level, variant="homogeneous",
                             evidence=evidence)


def addition_continuity_witness(space: PMSpace, target: Ball,
                                budget: SampleBudget,
                                samples: int = WITNESS_SAMPLES,
                                ) -> AdditionContinuityWitness:
    """Ball pair with B1 + B2 inside the target ball at the origin.

    Takes both balls as B(0, alpha/2, t / 2^(beta+2)): levels strictly
    below alpha and scales strictly below the t / 2^(beta+1) bound that
    the homogeneity estimate for sums requires.
    """
    beta = _require_beta(space)
    if np.any(target.center != 0.0):
        raise ValueError("target ball must be centered at the origin")
    b = Ball(space, space.zero(), target.level / 2.0,
             target.scale / (2.0 ** (beta + 2.0)))
    rng = check_rng(budget.rng_seed, "addition_continuity")
    X = sample_members(b, rng, samples, band=budget.epsilon)
    Y = sample_members(b, rng, samples, band=budget.epsilon)
    X[0] = 0.0
    Y[0] = 0.0
    inside = contains_many(target, X + Y)
    viol = [{"x": X[i].tolist(), "y": Y[i].tolist()}
            for i in np.nonzero(~inside)[0]]
    evidence = _make_report("addition_continuity", viol, len(X), budget.rng_seed)
    return AdditionContinuityWitness(ball_a=b, ball_b=b, evidence=evidence)


def scalar_continuity_witness(space: PMSpace, target: Ball, scalar: float,
                              budget: SampleBudget,
                              samples: int = WITNESS_SAMPLES,
                              ) -> ScalarContinuityWitness:
    """Ball and scalar window mapping into the target under multiplication.

    With m = max(|scalar|, SCALAR_FLOOR), the ball scale is
    t / (4 m^beta), strictly below the t / (2 m^beta) bound, and the
    window radius is (t / (2 t1))^(1/beta).  Tiny |scalar| only loosens
    the required bound, so the floor never invalidates the witness.
    """
    beta = _require_beta(space)
    if np.any(target.center != 0.0):
        raise ValueError("target ball must be centered at the origin")
    m = max(abs(scalar), SCALAR_FLOOR)
    t1 = target.scale / (4.0 * m ** beta)
    window = (target.scale / (2.0 * t1)) ** (1.0 / beta)
    b1 = Ball(space, space.zero(), target.level / 2.0, t1)
    rng = check_rng(budget.rng_seed, "scalar_continuity")
    X = sample_members(b1, rng, samples, band=budget.epsilon)
    u = rng.uniform(-1.0, 1.0, len(X))
    u[0] = 0.0  # the unperturbed scalar itself
    xi = scalar + window * u * (1.0 - 1e-9)
    inside = contains_many(target, xi[:, None] * X)
    viol = [{"x": X[i].tolist(), "xi": float(xi[i])}
            for i in np.nonzero(~inside)[0]]
    evidence = _make_report("scalar_continuity", viol, len(X), budget.rng_seed)
    return ScalarContinuityWitness(ball=b1, scalar_center=scalar,
                                   scalar_window=window, evidence=evidence)


def basis_intersection_witness(space: PMSpace, ball_a: Ball, ball_b: Ball,
                               y: Vector, budget: SampleBudget,
                               samples: int = WITNESS_SAMPLES,
                               ) -> IntersectionWitness:
    """A ball around a common point inside the intersection of two balls.

    Refines both balls around y, then takes the minimum of the two inner
    levels and scales; monotonicity in level and scale puts the combined
    ball inside both refinements.
    """
    y = as_vector(y, space.dim)
    left = refine_ball(space, ball_a, y, budget, samples=samples)
    right = refine_ball(space, ball_b, y, budget, samples=samples)
    combined = Ball(space, y,
                    min(left.inner.level, right.inner.level),
                    min(left.inner.scale, right.inner.scale))
    rng = check_rng(budget.rng_seed, "basis_intersection")
    Y = sample_members(combined, rng, samples, band=budget.epsilon)
    inside = contains_many(ball_a, Y) & contains_many(ball_b, Y)
    viol = [{"y": Y[i].tolist()} for i in np.nonzero(~inside)[0]]
    evidence = _make_report("basis_intersection", viol, len(Y), budget.rng_seed)
    return IntersectionWitness(ball=combined, left=left, right=right,
                               evidence=evidence)
