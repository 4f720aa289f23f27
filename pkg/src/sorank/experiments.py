"""List-size measurements and Monte Carlo event estimators.

Every experiment is deterministic given its seed: trial t draws from a
fresh ``random.Random`` seeded with splitmix64(seed + t * GOLDEN), so
trials are independent streams and a longer run reproduces a shorter one
exactly on the shared prefix.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import time
from dataclasses import dataclass, field as dc_field

from . import linalg
from .balls import BallSpec, ball_size_exact, enumerate_ball, sample_from_ball
from .construct import max_so_dimension, sample_code_star, so_code
from .errors import ParamError, SizeError
from .fields import ext_field, field_from_q
from .words import (
    LinearCode,
    MatrixWord,
    VectorWord,
    is_self_orthogonal,
    mat_to_vec,
    rank_distance,
    vec_to_mat,
    word_rank,
)

ENUM_LIMIT = 1 << 22

ENSEMBLES = ("self-orthogonal", "code-star", "uniform-linear")


def gv_rate(tau, rho, epsilon):
    """Gilbert-Varshamov-type rate (1 - tau)(1 - rho*tau) - epsilon."""
    if not 0 < tau < 1:
        raise ParamError("tau must lie in (0, 1)")
    if not 0 < rho <= 1:
        raise ParamError("rho must lie in (0, 1]")
    if epsilon < 0:
        raise ParamError("epsilon must be >= 0")
    return (1 - tau) * (1 - rho * tau) - epsilon


def dimension_from_rate(R, q, n, m, repr="matrix"):
    """k = floor(R * mn) (matrix) or floor(R * n) (vector), clamped to the
    self-orthogonal construction limit."""
    if not 0 <= R <= 0.5:
        raise ParamError("rate must lie in [0, 1/2] for self-orthogonal codes")
    if repr == "matrix":
        k = int(math.floor(R * m * n))
        return min(k, max_so_dimension(n * m))
    k = int(math.floor(R * n))
    return min(k, max_so_dimension(n))


# -- deterministic per-trial RNG streams ------------------------------------

_GOLDEN = 0x9E3779B97F4A7C15
_MASK = (1 << 64) - 1


def splitmix64(x):
    """One splitmix64 mixing step; documented 64-bit trial-stream mixer."""
    x = (x + _GOLDEN) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


def trial_seed(seed, trial):
    return splitmix64((seed + trial * _GOLDEN) & _MASK)


def trial_rng(seed, trial):
    return random.Random(trial_seed(seed, trial))


# -- exact list size --------------------------------------------------------


def list_size_at(code: LinearCode, center, r: int) -> int:
    """|B_R(center, r) cap code|, by whichever enumeration is smaller."""
    if not 0 <= r <= code.n:
        raise ParamError(f"radius {r} out of range")
    lin_order = code.lin_field().order
    code_size = lin_order**code.k
    bsize = ball_size_exact(code.n, code.m, code.q, r) if code.n <= code.m else None
    if code_size <= ENUM_LIMIT and (bsize is None or code_size <= bsize):
        return sum(1 for w in code.iter_words() if rank_distance(center, w) <= r)
    if bsize is not None and bsize <= ENUM_LIMIT:
        if code.repr == "matrix":
            spec = BallSpec(center, r)
            return sum(1 for w in enumerate_ball(spec) if code.contains(w))
        spec = BallSpec(vec_to_mat(center), r)
        ext = code.ext
        return sum(1 for w in enumerate_ball(spec) if code.contains(mat_to_vec(w, ext)))
    raise SizeError("both the code and the ball are too large to enumerate")


# -- experiment configuration and report ------------------------------------


@dataclass(frozen=True)
class ExperimentConfig:
    q: int
    n: int
    m: int
    tau: float
    epsilon: float
    trials: int
    seed: int = 0
    repr: str = "matrix"
    ensemble: str = "self-orthogonal"

    def __post_init__(self):
        if not 0 < self.tau < 1 or not 0 < self.epsilon < 1:
            raise ParamError("tau and epsilon must lie in (0, 1)")
        if self.trials < 1:
            raise ParamError("trials must be >= 1")
        if self.repr not in ("matrix", "vector"):
            raise ParamError(f"unknown repr {self.repr!r}")
        if self.ensemble not in ENSEMBLES:
            raise ParamError(f"unknown ensemble {self.ensemble!r}")

    @property
    def radius(self):
        return int(math.floor(self.tau * self.n))

    @property
    def rho(self):
        return self.n / self.m

    def dimension(self):
        return dimension_from_rate(gv_rate(self.tau, self.rho, self.epsilon), self.q, self.n, self.m, self.repr)

    def as_dict(self):
        return {
            "q": self.q,
            "n": self.n,
            "m": self.m,
            "tau": self.tau,
            "epsilon": self.epsilon,
            "trials": self.trials,
            "seed": self.seed,
            "repr": self.repr,
            "ensemble": self.ensemble,
        }


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    dimension: int
    radius: int
    list_sizes: list
    center_ranks: list
    code_seeds: list
    wall_time: float = 0.0

    @property
    def max_list_size(self):
        return max(self.list_sizes)

    @property
    def histogram(self):
        h = {}
        for s in self.list_sizes:
            h[s] = h.get(s, 0) + 1
        return dict(sorted(h.items()))

    def exceeds_flag(self, M):
        """Flag (not fail): empirical max above ceil(M / epsilon)."""
        return self.max_list_size > math.ceil(M / self.config.epsilon)

    def summary_dict(self):
        return {
            "config": self.config.as_dict(),
            "dimension": self.dimension,
            "radius": self.radius,
            "max_list_size": self.max_list_size,
            "histogram": {str(k): v for k, v in self.histogram.items()},
        }

    def to_csv(self) -> str:
        """Deterministic machine output; wall time deliberately excluded."""
        lines = ["trial,list_size,center_rank,code_seed"]
        for t, (ls, cr, cs) in enumerate(zip(self.list_sizes, self.center_ranks, self.code_seeds)):
            lines.append(f"{t},{ls},{cr},{cs}")
        lines.append("# summary " + json.dumps(self.summary_dict(), sort_keys=True))
        return "\n".join(lines) + "\n"

    def histogram_csv(self) -> str:
        lines = ["list_size,count"]
        for k, v in self.histogram.items():
            lines.append(f"{k},{v}")
        return "\n".join(lines) + "\n"


def _draw_code(cfg: ExperimentConfig, k, rng):
    field = field_from_q(cfg.q)
    ext = ext_field(cfg.q, cfg.m) if cfg.repr == "vector" else None
    if cfg.ensemble == "self-orthogonal":
        code = so_code(field, cfg.n, cfg.m, k, rng, repr=cfg.repr, ext=ext)
        if not is_self_orthogonal(code):  # fail fast, never measure a bad draw
            raise ParamError("constructed code failed the self-orthogonality check")
        return code
    if cfg.ensemble == "code-star":
        return sample_code_star(field, cfg.n, cfg.m, max(k, 1), rng, repr=cfg.repr, ext=ext)
    # uniform-linear: k independent uniform words
    D = cfg.n * cfg.m if cfg.repr == "matrix" else cfg.n
    F = field if cfg.repr == "matrix" else ext
    rows = []
    while len(rows) < k:
        v = [rng.randrange(F.order) for _ in range(D)]
        if linalg.solve_in_span(F, rows, v) is None:
            rows.append(v)
    if cfg.repr == "matrix":
        words = [MatrixWord.from_flat(v, field, cfg.n, cfg.m) for v in rows]
        return LinearCode.from_matrix_words(words, field, cfg.n, cfg.m)
    words = [VectorWord(tuple(v), ext) for v in rows]
    return LinearCode.from_vector_words(words, ext, cfg.n)


def _uniform_center(cfg: ExperimentConfig, rng):
    if cfg.repr == "matrix":
        field = field_from_q(cfg.q)
        rows = tuple(tuple(rng.randrange(cfg.q) for _ in range(cfg.m)) for _ in range(cfg.n))
        return MatrixWord(rows, field)
    ext = ext_field(cfg.q, cfg.m)
    return VectorWord(tuple(rng.randrange(ext.order) for _ in range(cfg.n)), ext)


def max_list_size_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Per trial: fresh code from the ensemble, uniform random center,
    exact list size at radius floor(tau * n)."""
    k = cfg.dimension()
    r = cfg.radius
    t0 = time.monotonic()
    list_sizes, center_ranks, code_seeds = [], [], []
    for t in range(cfg.trials):
        cs = trial_seed(cfg.seed, t)
        rng = random.Random(cs)
        code = _draw_code(cfg, k, rng)
        center = _uniform_center(cfg, rng)
        list_sizes.append(list_size_at(code, center, r))
        center_ranks.append(word_rank(center))
        code_seeds.append(cs)
    return ExperimentReport(cfg, k, r, list_sizes, center_ranks, code_seeds, time.monotonic() - t0)


# -- event frequency estimators ---------------------------------------------


def wilson_interval(successes, trials, z=1.96):
    """Wilson score confidence interval for a binomial proportion."""
    if trials < 1:
        raise ParamError("trials must be >= 1")
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)


@dataclass
class EventEstimate:
    successes: int
    trials: int
    ci_low: float
    ci_high: float
    extra: dict = dc_field(default_factory=dict)

    @property
    def frequency(self):
        return self.successes / self.trials


def span_ball_overlap(words, radius):
    """|span{X_1..X_l} cap B_R(0, radius)| by enumerating the span."""
    field = words[0].field
    q = field.order
    flats = [w.flatten() for w in words]
    D = len(flats[0])
    add, mul = field.add, field.mul
    seen = set()
    for coeffs in itertools.product(range(q), repeat=len(flats)):
        v = [0] * D
        for c, f in zip(coeffs, flats):
            if c:
                for i in range(D):
                    if f[i]:
                        v[i] = add(v[i], mul(c, f[i]))
        seen.add(tuple(v))
    n, m = words[0].n, words[0].m
    count = 0
    for v in seen:
        rows = [list(v[i * m : (i + 1) * m]) for i in range(n)]
        if linalg.rank(field, rows) <= radius:
            count += 1
    return count


def lemma47_event_estimate(q, n, m, tau, ell, C_ratio, trials, seed, z=1.96) -> EventEstimate:
    """Frequency of |span{X_1..X_ell} cap B_R(0, floor(tau*n))| >= C_ratio * ell
    over independent uniform draws X_i from the ball."""
    if q**ell > (1 << 20):
        raise SizeError("span too large to enumerate (q^ell > 2^20)")
    field = field_from_q(q)
    r = int(math.floor(tau * n))
    spec = BallSpec(MatrixWord.zero(field, n, m), r)
    threshold = C_ratio * ell
    hits = 0
    for t in range(trials):
        rng = trial_rng(seed, t)
        draws = [sample_from_ball(spec, rng) for _ in range(ell)]
        if span_ball_overlap(draws, r) >= threshold:
            hits += 1
    lo, hi = wilson_interval(hits, trials, z)
    return EventEstimate(hits, trials, lo, hi, {"threshold": threshold, "radius": r})


def lemma48_bound(q, n, m, k, ell):
    """Combined containment-probability bound q^((k+ell-mn-2)ell + 4k - 1)."""
    e = (k + ell - m * n - 2) * ell + 4 * k - 1
    return q**e if e >= 0 else 1.0 / q ** (-e)


def lemma48_event_estimate(q, n, m, k, fixed_set, trials, seed, z=1.96) -> EventEstimate:
    """Frequency that a code from the k-dimensional star ensemble contains
    every word of ``fixed_set``; reported next to the closed-form bound
    (the bound caps a different exact probability, so it is report-only)."""
    ell = len(fixed_set)
    if not 1 <= ell <= k or not 2 * k < m * n:
        raise ParamError("need 1 <= |fixed_set| <= k < mn/2")
    field = field_from_q(q)
    rows = [list(w.flatten()) for w in fixed_set]
    if not linalg.is_independent(field, rows):
        raise ParamError("fixed_set must be linearly independent")
    hits = 0
    for t in range(trials):
        rng = trial_rng(seed, t)
        code = sample_code_star(field, n, m, k, rng)
        if all(code.contains(w) for w in fixed_set):
            hits += 1
    lo, hi = wilson_interval(hits, trials, z)
    return EventEstimate(hits, trials, lo, hi, {"bound": lemma48_bound(q, n, m, k, ell)})
