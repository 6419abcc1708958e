"""Sequence convergence in a probabilistic modular space.

Two routes that the induced topology makes equivalent:

value criterion        mu_{x_n - x}(t) -> 1 for every scale t > 0
topological criterion  the tail of the sequence enters every ball of the
                       countable local base B(x, 1/k, 1/k)

Limits are not decidable from finite data, so "converges" here means the
gap 1 - mu stays below EPS_CONV on a geometric probe schedule up to
N_MAX.  With that budget the value criterion can only certify scales
where the gap decays fast enough, which is why the default scale grid
for convergence starts at 10 rather than at the evaluation grid's 1e-3.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from .balls import Ball, contains_many
from .pmspace import PMSpace, Vector, as_vector

EPS_CONV = 1e-6
N_MAX = 10 ** 6
LOCAL_BASE_DEPTH = 10

SEQUENCE_KINDS = ("harmonic", "constant_offset", "alternating", "geometric")


def default_convergence_grid() -> tuple[float, ...]:
    return tuple(float(t) for t in np.geomspace(10.0, 1000.0, 7))


@dataclass(frozen=True, eq=False)
class SequenceSpec:
    """x_n = base + direction * profile(n) with a declared candidate limit.

    harmonic         profile(n) = 1/n
    constant_offset  profile(n) = 1
    alternating      profile(n) = (-1)^n
    geometric        profile(n) = q^n with ratio q in (0, 1)
    """

    kind: str
    base: Vector
    direction: Vector
    ratio: float | None = None
    candidate_limit: Vector | None = None

    def __post_init__(self) -> None:
        if self.kind not in SEQUENCE_KINDS:
            raise ValueError(f"unknown sequence kind {self.kind!r}")
        base = as_vector(self.base)
        direction = as_vector(self.direction, base.size)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "direction", direction)
        if self.kind == "geometric":
            if self.ratio is None or not (0.0 < self.ratio < 1.0):
                raise ValueError("geometric sequences need a ratio in (0, 1)")
        limit = self.candidate_limit
        object.__setattr__(self, "candidate_limit",
                           base if limit is None else as_vector(limit, base.size))

    def values(self, ns: np.ndarray) -> np.ndarray:
        ns = np.asarray(ns, dtype=float)
        if self.kind == "harmonic":
            profile = 1.0 / ns
        elif self.kind == "constant_offset":
            profile = np.ones_like(ns)
        elif self.kind == "alternating":
            profile = np.where(np.asarray(ns, dtype=int) % 2 == 0, 1.0, -1.0)
        else:
            profile = self.ratio ** ns
        return self.base[None, :] + profile[:, None] * self.direction[None, :]

    def to_config(self) -> dict[str, Any]:
        cfg: dict[str, Any] = {"kind": self.kind, "base": self.base.tolist(),
                               "direction": self.direction.tolist(),
                               "candidate_limit": self.candidate_limit.tolist()}
        if self.ratio is not None:
            cfg["ratio"] = self.ratio
        return cfg

    @classmethod
    def from_config(cls, cfg: dict[str, Any]) -> "SequenceSpec":
        return cls(kind=cfg["kind"], base=np.asarray(cfg["base"], dtype=float),
                   direction=np.asarray(cfg["direction"], dtype=float),
                   ratio=cfg.get("ratio"),
                   candidate_limit=(np.asarray(cfg["candidate_limit"], dtype=float)
                                    if "candidate_limit" in cfg else None))


def probe_schedule(n_max: int) -> np.ndarray:
    """Geometric index schedule 1, 2, 4, ... capped by and including n_max."""
    ns = [1]
    while ns[-1] * 2 <= n_max:
        ns.append(ns[-1] * 2)
    if ns[-1] != n_max:
        ns.append(n_max)
    return np.asarray(ns, dtype=int)


@dataclass
class ConvergenceVerdict:
    converges: bool
    per_t: list[dict[str, Any]]   # per scale: t, n0 (or None), final gap
    n_used: int

    def to_record(self) -> dict[str, Any]:
        return {"converges": self.converges, "per_t": self.per_t,
                "n_used": self.n_used}


def check_mu_convergence(space: PMSpace, seq: SequenceSpec,
                         t_grid: tuple[float, ...] | None = None,
                         eps_conv: float = EPS_CONV,
                         n_max: int = N_MAX) -> ConvergenceVerdict:
    """Value-criterion verdict on the probe schedule.

    For each scale t the verdict records the earliest probe index from
    which every later probe keeps 1 - mu_{x_n - x}(t) below eps_conv;
    the sequence converges when every scale has one.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    grid = np.asarray(t_grid if t_grid is not None else default_convergence_grid(),
                      dtype=float)
    if grid.size == 0 or np.any(grid <= 0):
        raise ValueError("scale grid must be positive")
    ns = probe_schedule(n_max)
    offsets = seq.values(ns) - seq.candidate_limit[None, :]
    gaps = 1.0 - space.mu_matrix(offsets, grid)        # (len(ns), len(grid))

    ok = gaps < eps_conv
    per_t: list[dict[str, Any]] = []
    all_ok = True
    for j, t in enumerate(grid):
        suffix_ok = np.flip(np.cumprod(np.flip(ok[:, j]))).astype(bool)
        hits = np.nonzero(suffix_ok)[0]
        n0 = int(ns[hits[0]]) if hits.size else None
        per_t.append({"t": float(t), "n0": n0, "final_gap": float(gaps[-1, j])})
        all_ok &= n0 is not None
    return ConvergenceVerdict(converges=all_ok, per_t=per_t, n_used=int(ns[-1]))


def local_base(space: PMSpace, x: Vector, depth: int = LOCAL_BASE_DEPTH) -> list[Ball]:
    """The countable base {B(x, 1/k, 1/k)} truncated at the given depth."""
    x = as_vector(x, space.dim)
    return [Ball(space, x, 1.0 / k, 1.0 / k) for k in range(2, depth + 1)]


@dataclass
class TopologicalVerdict:
    converges: bool
    vacuous: bool
    per_ball: list[dict[str, Any]]
    n_used: int

    def __bool__(self) -> bool:
        return self.converges

    def to_record(self) -> dict[str, Any]:
        return {"converges": self.converges, "vacuous": self.vacuous,
                "per_ball": self.per_ball, "n_used": self.n_used}


def check_topological_convergence(space: PMSpace, seq: SequenceSpec,
                                  balls: list[Ball] | None = None,
                                  n_max: int = N_MAX) -> TopologicalVerdict:
    """Tail membership in every listed ball (default: the local base).

    An empty ball list makes the quantifier vacuous; the verdict says so
    instead of silently reporting convergence.
    """
    if balls is None:
        balls = local_base(space, seq.candidate_limit)
    if not balls:
        return TopologicalVerdict(converges=True, vacuous=True, per_ball=[],
                                  n_used=0)
    for b in balls:
        if np.any(b.center != seq.candidate_limit):
            raise ValueError("probe balls must be centered at the candidate limit")
    ns = probe_schedule(n_max)
    points = seq.values(ns)
    per_ball: list[dict[str, Any]] = []
    all_ok = True
    for b in balls:
        member = contains_many(b, points)
        suffix_ok = np.flip(np.cumprod(np.flip(member))).astype(bool)
        hits = np.nonzero(suffix_ok)[0]
        n0 = int(ns[hits[0]]) if hits.size else None
        per_ball.append({"level": b.level, "scale": b.scale, "n0": n0})
        all_ok &= n0 is not None
    return TopologicalVerdict(converges=all_ok, vacuous=False,
                              per_ball=per_ball, n_used=int(ns[-1]))
