"""Row-by-row samplers for self-orthogonal, CSS and stabilizer check matrices.

The dual-containing sampler builds an r x n matrix with H H^T = 0 and every
row of even weight v.  The first row is a uniform weight-v vector.  Each
later row is a weight-v codeword of the code checked by the rows found so
far stacked with the all-ones row: orthogonality to previous rows keeps the
matrix self-orthogonal, and the all-ones constraint forces even weight, so
the new row is orthogonal to itself too.  Codewords are found with the
Lee-Brickell engine; a found codeword is accepted only when it is linearly
independent of the rows already collected, which keeps the final rank full.

A step that burns through its search budget without an accepted row ends
the run with a :class:`Stalled` value carrying the partial matrix, which is
itself a valid (smaller) self-orthogonal matrix.  Runs are reproducible:
the same seed yields bit-identical output.

Two generalizations reuse the same machinery.  The CSS sampler draws one
matrix from the plain constant-row-weight ensemble and harvests rows for
the second matrix from its kernel, giving H1 H2^T = 0.  The stabilizer
sampler works on length-2n rows split into halves (a_i, b_i); searching the
kernel of the stacked rows for a new vector and swapping its halves before
appending enforces the symplectic condition HX HZ^T + HZ HX^T = 0.
"""

from __future__ import annotations

import math
import random
import time
import warnings
from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import FeasibilityWarning, ParameterError
from .gf2 import BitMatrix, BitVector, RowSpan
from .isd import (
    IsdConfig,
    choose_pattern_weight,
    iteration_cost,
    lee_brickell_search,
    lee_brickell_search_parallel,
    success_probability,
)
from .weights import (
    EnsembleParams,
    expected_codewords,
    feasibility_threshold,
    log2_expected_codewords,
    sample_ensemble_row_bits,
)

__all__ = [
    "SamplerConfig",
    "SampleResult",
    "Stalled",
    "CssPair",
    "StabilizerPair",
    "sample_dual_containing",
    "estimate_sampling_cost",
    "sample_css_pair",
    "sample_stabilizer",
]

# Margin (in log2) below which the pre-flight feasibility check warns even
# though the expected codeword count is still above 1.
THIN_MARGIN_LOG2 = 5.0


def _resolve_seed(seed: Optional[int]) -> int:
    if seed is not None:
        return seed
    return random.SystemRandom().getrandbits(32)


@dataclass(frozen=True)
class SamplerConfig:
    """Parameters for one dual-containing sampling job."""

    n: int
    r: int
    v: int
    rng_seed: Optional[int] = None
    max_isd_calls_per_step: int = 100
    isd: IsdConfig = field(default_factory=IsdConfig)
    allow_r_near_half: bool = False
    parallel_isd: bool = False
    check_invariants: bool = False

    def __post_init__(self):
        if not 1 <= self.v <= self.n:
            raise ParameterError(f"need 1 <= v <= n, got v={self.v}, n={self.n}")
        if self.v % 2 == 1:
            raise ParameterError(f"row weight must be even, got v={self.v}")
        if not 1 <= self.r <= self.n:
            raise ParameterError(f"need 1 <= r <= n, got r={self.r}, n={self.n}")
        if 2 * self.r >= self.n and not self.allow_r_near_half:
            raise ParameterError(
                f"r={self.r} is not below n/2={self.n / 2}; the search degenerates there "
                "(pass allow_r_near_half to experiment anyway)"
            )
        if self.max_isd_calls_per_step < 1:
            raise ParameterError("per-step search budget must be at least 1")


@dataclass(frozen=True)
class SampleResult:
    """A completed r x n self-orthogonal matrix plus per-step effort."""

    matrix: BitMatrix
    per_step_isd_calls: tuple
    per_step_span_rejections: tuple
    elapsed: float
    seed_echo: int

    @property
    def stalled(self) -> bool:
        return False


@dataclass(frozen=True)
class Stalled:
    """A run that exhausted its budget after accepting ``step`` rows.

    The partial matrix still satisfies self-orthogonality, the row-weight
    constraint and full rank for its row count.
    """

    step: int
    partial_matrix: BitMatrix
    per_step_isd_calls: tuple
    per_step_span_rejections: tuple
    elapsed: float
    seed_echo: int

    @property
    def stalled(self) -> bool:
        return True


def _preflight(params: EnsembleParams) -> None:
    report = feasibility_threshold(params)
    if not report.feasible:
        warnings.warn(
            f"expected weight-{params.v} codeword count at the last step is "
            f"{report.value:.3g} (< 1); sampling will likely stall",
            FeasibilityWarning,
            stacklevel=3,
        )
    elif report.log2_value < THIN_MARGIN_LOG2:
        warnings.warn(
            f"expected weight-{params.v} codeword count at the last step is only "
            f"{report.value:.3g}; sampling may stall",
            FeasibilityWarning,
            stacklevel=3,
        )


def _verify_partial(rows, n, v):
    for i, a in enumerate(rows):
        assert a.bit_count() == v, "row weight drifted"
        for b in rows[i:]:
            assert (a & b).bit_count() % 2 == 0, "self-orthogonality lost"


def _search(h, w, p, budget, seed, parallel):
    cfg = IsdConfig(p=p, max_iterations=budget, rng_seed=seed)
    if parallel:
        return lee_brickell_search_parallel(h, w, cfg)
    return lee_brickell_search(h, w, cfg)


# A fallback pattern weight is skipped when a single failed round at it
# would enumerate more than this many patterns (unless the scheduled weight
# is itself already costlier).
_LADDER_ENUMERATION_CAP = 200_000


def _pattern_ladder(scheduled: int, w: int, info_size: int) -> list:
    """Pattern weights to try within one low-redundancy step, scheduled first.

    The low-redundancy schedule targets the average remainder weight, but on
    very sparse constraint matrices the remainder weights cluster away from
    the average (duplicate columns make the reduced block nearly a
    permutation), and a single pattern weight can then miss every codeword
    under every permutation.  Widening around the scheduled value recovers
    such steps; steps where the schedule works never look past the first
    rung.  Fallback weights whose full enumeration over the information set
    would dwarf the scheduled one are dropped.
    """
    cap = max(math.comb(info_size, min(scheduled, info_size)), _LADDER_ENUMERATION_CAP)
    ladder = [scheduled]
    for delta in range(1, w + 1):
        for cand in (scheduled + delta, scheduled - delta):
            if 1 <= cand <= w and cand not in ladder:
                if math.comb(info_size, min(cand, info_size)) <= cap:
                    ladder.append(cand)
    return ladder


def _collect_row(constraint, w, scheduled_p, budget, rng, parallel, reject, info_size, redundancy):
    """Search for a weight-w kernel vector that ``reject`` does not veto.

    In the low-redundancy regime (redundancy below twice the target weight)
    the round budget is spread over the pattern-weight ladder, each rung
    getting an even share of what is left; in the constant-pattern regime
    the scheduled weight keeps the whole budget, so a stalled step reflects
    a genuinely exhausted search rather than a split one.  Returns
    (vector or None, rounds used, rejection count).
    """
    if redundancy < 2 * w:
        ladder = _pattern_ladder(scheduled_p, w, info_size)
    else:
        ladder = [scheduled_p]
    calls = 0
    rejections = 0
    remaining = budget
    for idx, p in enumerate(ladder):
        if remaining <= 0:
            break
        rung = max(1, remaining // (len(ladder) - idx))
        while rung > 0:
            outcome = _search(constraint, w, p, rung, rng.getrandbits(63), parallel)
            calls += outcome.iterations_used
            remaining -= outcome.iterations_used
            rung -= outcome.iterations_used
            if not outcome.found:
                break
            if reject(outcome.codeword):
                rejections += 1
                continue
            return outcome.codeword, calls, rejections
    return None, calls, rejections


def sample_dual_containing(cfg: SamplerConfig) -> Union[SampleResult, Stalled]:
    """Sample H in F_2^{r x n} with H H^T = 0 and all rows of weight v.

    Emits a :class:`FeasibilityWarning` up front when the expected codeword
    count at the hardest step is small.  Returns :class:`Stalled` instead of
    a full result when some step exceeds ``cfg.max_isd_calls_per_step``
    search rounds.
    """
    _preflight(EnsembleParams(cfg.n, cfg.r, cfg.v))
    seed = _resolve_seed(cfg.rng_seed)
    rng = random.Random(seed)
    n, v = cfg.n, cfg.v
    started = time.perf_counter()

    rows = [sample_ensemble_row_bits(n, v, rng)]
    span = RowSpan(n)
    span.add(BitVector(n, rows[0]))
    all_ones = BitVector.ones(n)

    calls_per_step = []
    rejections_per_step = []
    while len(rows) < cfg.r:
        constraint = BitMatrix(n, rows + [all_ones.bits])
        redundancy = span.rank + (0 if span.contains(all_ones) else 1)
        p = choose_pattern_weight(redundancy, v, cfg.isd.p)
        accepted, calls, rejections = _collect_row(
            constraint,
            v,
            p,
            cfg.max_isd_calls_per_step,
            rng,
            cfg.parallel_isd,
            span.contains,
            n - redundancy,
            redundancy,
        )
        calls_per_step.append(calls)
        rejections_per_step.append(rejections)
        elapsed = time.perf_counter() - started
        if accepted is None:
            return Stalled(
                step=len(rows),
                partial_matrix=BitMatrix(n, rows),
                per_step_isd_calls=tuple(calls_per_step),
                per_step_span_rejections=tuple(rejections_per_step),
                elapsed=elapsed,
                seed_echo=seed,
            )
        rows.append(accepted.bits)
        span.add(accepted)
        if cfg.check_invariants:
            _verify_partial(rows, n, v)

    return SampleResult(
        matrix=BitMatrix(n, rows),
        per_step_isd_calls=tuple(calls_per_step),
        per_step_span_rejections=tuple(rejections_per_step),
        elapsed=time.perf_counter() - started,
        seed_echo=seed,
    )


def estimate_sampling_cost(cfg: SamplerConfig) -> float:
    """Expected elementary-operation count for one sampling run.

    Sums, over the r - 1 searched rows, the per-round cost divided by the
    per-round success probability, with an extra factor for codewords that
    fall inside the span of earlier rows:

        sum_{u=1}^{r-1}  T(n, n-u-1) / ((1 - 2**(2(u+1)-n)) P(n, n-u-1, v, count_u))

    where count_u is the expected number of weight-v codewords under u - 1
    row constraints.  The pattern weight follows the same schedule as the
    sampler, and the per-round cost charges a full enumeration, so early
    steps are costed very conservatively (real rounds stop at the first
    acceptable pattern).
    """
    if 2 * cfg.r >= cfg.n:
        raise ParameterError(
            f"cost model is only meaningful for r < n/2, got r={cfg.r}, n={cfg.n}"
        )
    n, v = cfg.n, cfg.v
    total = 0.0
    for u in range(1, cfg.r):
        k = n - u - 1
        p = choose_pattern_weight(u + 1, v, cfg.isd.p)
        expected = 2.0 ** min(log2_expected_codewords(n, u - 1, v, v), 1020.0)
        prob = success_probability(n, k, v, p, expected).probability
        span_factor = 1.0 - 2.0 ** (2 * (u + 1) - n)
        if prob <= 0.0 or span_factor <= 0.0:
            return math.inf
        total += iteration_cost(n, k, p) / (span_factor * prob)
    return total


@dataclass(frozen=True)
class CssPair:
    """Two sparse matrices with h1 @ h2.T = 0 and full ranks r1, r2."""

    h1: BitMatrix
    h2: BitMatrix
    per_step_isd_calls: tuple
    per_step_span_rejections: tuple
    elapsed: float
    seed_echo: int

    @property
    def stalled(self) -> bool:
        return False


def sample_css_pair(
    n: int,
    r1: int,
    r2: int,
    w: int,
    v: int,
    rng_seed: Optional[int] = None,
    max_isd_calls_per_step: int = 100,
    default_p: int = 3,
    max_rank_retries: int = 1000,
) -> Union[CssPair, Stalled]:
    """Sample matrices h1 (r1 x n, weight-w rows) and h2 (r2 x n, weight-v
    rows) with h1 @ h2.T = 0.

    h2 is a plain ensemble draw, resampling dependent rows until it reaches
    rank r2.  h1 rows are weight-w codewords of the code checked by h2,
    accepted only when independent of the h1 rows found so far.  Warns when
    the expected number of weight-w codewords is below r1, since fewer
    codewords than needed then exist on average.  r1 = 0 yields an empty h1.
    """
    if not 1 <= v <= n:
        raise ParameterError(f"need 1 <= v <= n, got v={v}, n={n}")
    if not 0 < w <= n:
        raise ParameterError(f"need 0 < w <= n, got w={w}, n={n}")
    if not 1 <= r2 <= n:
        raise ParameterError(f"need 1 <= r2 <= n, got r2={r2}, n={n}")
    if r1 < 0 or r1 + r2 > n:
        raise ParameterError(f"need 0 <= r1 and r1 + r2 <= n, got r1={r1}, r2={r2}")

    expected = expected_codewords(EnsembleParams(n, r2, v), w).count
    if expected < r1:
        warnings.warn(
            f"expected number of weight-{w} codewords ({expected:.3g}) is below the "
            f"{r1} independent rows requested; sampling will likely stall",
            FeasibilityWarning,
            stacklevel=2,
        )

    seed = _resolve_seed(rng_seed)
    rng = random.Random(seed)
    started = time.perf_counter()

    h2_span = RowSpan(n)
    h2_rows = []
    retries = 0
    while len(h2_rows) < r2:
        bits = sample_ensemble_row_bits(n, v, rng)
        if h2_span.add(BitVector(n, bits)):
            h2_rows.append(bits)
        else:
            retries += 1
            if retries > max_rank_retries:
                raise ParameterError(
                    f"could not reach rank {r2} after {max_rank_retries} resamples; "
                    "the requested ensemble is too degenerate"
                )
    h2 = BitMatrix(n, h2_rows)

    p = choose_pattern_weight(r2, w, default_p)
    h1_rows = []
    h1_span = RowSpan(n)
    calls_per_step = []
    rejections_per_step = []
    while len(h1_rows) < r1:
        accepted, calls, rejections = _collect_row(
            h2, w, p, max_isd_calls_per_step, rng, False, h1_span.contains, n - r2, r2
        )
        calls_per_step.append(calls)
        rejections_per_step.append(rejections)
        if accepted is None:
            return Stalled(
                step=len(h1_rows),
                partial_matrix=BitMatrix(n, [x.bits for x in h1_rows]),
                per_step_isd_calls=tuple(calls_per_step),
                per_step_span_rejections=tuple(rejections_per_step),
                elapsed=time.perf_counter() - started,
                seed_echo=seed,
            )
        h1_rows.append(accepted)
        h1_span.add(accepted)

    return CssPair(
        h1=BitMatrix(n, [x.bits for x in h1_rows]),
        h2=h2,
        per_step_isd_calls=tuple(calls_per_step),
        per_step_span_rejections=tuple(rejections_per_step),
        elapsed=time.perf_counter() - started,
        seed_echo=seed,
    )


@dataclass(frozen=True)
class StabilizerPair:
    """Check matrices h_x, h_z with h_x @ h_z.T + h_z @ h_x.T = 0.

    Row weights are constrained on the combined length-2n rows; the
    per-half weights are recorded but not balanced.
    """

    h_x: BitMatrix
    h_z: BitMatrix
    combined_row_weights: tuple
    x_row_weights: tuple
    z_row_weights: tuple
    per_step_isd_calls: tuple
    per_step_span_rejections: tuple
    elapsed: float
    seed_echo: int

    @property
    def stalled(self) -> bool:
        return False


def sample_stabilizer(
    n: int,
    r: int,
    v: int,
    rng_seed: Optional[int] = None,
    max_isd_calls_per_step: int = 100,
    default_p: int = 3,
) -> Union[StabilizerPair, Stalled]:
    """Sample an r-row stabilizer check pair over length-n blocks.

    Rows live on 2n coordinates split as (x half, z half), each of combined
    weight v (v need not be even here).  The pair rows (a_u, b_u) must
    satisfy a_i b_j^T + b_i a_j^T = 0 for all i, j; the diagonal is
    automatic, and the off-diagonal holds exactly when the half-swapped
    vector (b_u, a_u) lies in the kernel of the stacked earlier rows.  Each
    step therefore searches that kernel at weight v and swaps the halves of
    the found vector before appending it.
    """
    if not 1 <= v <= 2 * n:
        raise ParameterError(f"need 1 <= v <= 2n, got v={v}, n={n}")
    if not 1 <= r <= n:
        raise ParameterError(f"need 1 <= r <= n, got r={r}, n={n}")

    seed = _resolve_seed(rng_seed)
    rng = random.Random(seed)
    started = time.perf_counter()

    rows = [BitVector(2 * n, sample_ensemble_row_bits(2 * n, v, rng))]
    span = RowSpan(2 * n)
    span.add(rows[0])

    calls_per_step = []
    rejections_per_step = []
    while len(rows) < r:
        constraint = BitMatrix(2 * n, [x.bits for x in rows])
        p = choose_pattern_weight(max(span.rank, 1), v, default_p)

        def rejects(found):
            left, right = found.split(n)
            return span.contains(right.concat(left))

        accepted, calls, rejections = _collect_row(
            constraint, v, p, max_isd_calls_per_step, rng, False, rejects,
            2 * n - span.rank, max(span.rank, 1),
        )
        calls_per_step.append(calls)
        rejections_per_step.append(rejections)
        if accepted is None:
            # partial matrix carries the combined length-2n rows
            return Stalled(
                step=len(rows),
                partial_matrix=BitMatrix(2 * n, [x.bits for x in rows]),
                per_step_isd_calls=tuple(calls_per_step),
                per_step_span_rejections=tuple(rejections_per_step),
                elapsed=time.perf_counter() - started,
                seed_echo=seed,
            )
        left, right = accepted.split(n)
        swapped = right.concat(left)
        rows.append(swapped)
        span.add(swapped)

    h_x, h_z = _pair_from_rows(rows, n)
    return StabilizerPair(
        h_x=h_x,
        h_z=h_z,
        combined_row_weights=tuple(x.weight() for x in rows),
        x_row_weights=tuple(h_x.row(i).weight() for i in range(h_x.rows)),
        z_row_weights=tuple(h_z.row(i).weight() for i in range(h_z.rows)),
        per_step_isd_calls=tuple(calls_per_step),
        per_step_span_rejections=tuple(rejections_per_step),
        elapsed=time.perf_counter() - started,
        seed_echo=seed,
    )


def _pair_from_rows(rows, n):
    xs = []
    zs = []
    for row in rows:
        a, b = row.split(n)
        xs.append(a)
        zs.append(b)
    return BitMatrix.from_rows(xs, cols=n), BitMatrix.from_rows(zs, cols=n)
