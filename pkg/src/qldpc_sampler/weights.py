"""Expected weight distributions for constant-row-weight check ensembles.

The central object is the ensemble of r x n binary matrices whose rows are
drawn independently and uniformly from the weight-v sphere.  For a fixed
weight-w vector, a single random row is orthogonal to it exactly when their
supports overlap in an even number of positions, so the expected number of
weight-w kernel vectors is

    count(w) = C(n, w) * q(n, v, w) ** r,

with q(n, v, w) the even-overlap probability of a hypergeometric draw.
Everything else in this module is derived from that formula: the uniform
random-code baseline, the Gilbert-Varshamov distance, the feasibility
threshold used to pick a row weight before sampling, large-n approximations,
the binomial model for column weights, and a Monte-Carlo oracle that
enumerates kernels of small ensembles exhaustively.

Two computation paths are provided.  The exact path works in big-integer
rationals and is authoritative for n up to a few hundred; the log2 path
works in floating point (with care near q = 1) and covers sweeps where the
counts span hundreds of orders of magnitude.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional

import numpy as np

from .errors import FeasibilityWarning, ParameterError
from .gf2 import _kernel_basis_bits

__all__ = [
    "EnsembleParams",
    "CodewordCount",
    "WeightEntry",
    "WeightDistributionReport",
    "FeasibilityReport",
    "AsymptoticReport",
    "EmpiricalWeightDistribution",
    "EXACT_N_BOUND",
    "ENUMERATION_DIMENSION_BOUND",
    "even_overlap_probability",
    "expected_codewords",
    "log2_expected_codewords",
    "weight_distribution_report",
    "random_code_log2_codewords",
    "gilbert_varshamov_distance",
    "feasibility_threshold",
    "asymptotic_estimates",
    "empirical_weight_distribution",
    "expected_column_weights",
    "sample_ensemble_row_bits",
]

# Above this length the exact big-rational path is refused by the CLI and
# auto-selection falls back to log-space floats.
EXACT_N_BOUND = 300

# Exhaustive kernel enumeration is capped at this code dimension.
ENUMERATION_DIMENSION_BOUND = 24


@dataclass(frozen=True)
class EnsembleParams:
    """Parameters (n, r, v) of the constant-row-weight ensemble."""

    n: int
    r: int
    v: int

    def __post_init__(self):
        if not 1 <= self.v <= self.n:
            raise ParameterError(f"need 1 <= v <= n, got v={self.v}, n={self.n}")
        if not 1 <= self.r <= self.n:
            raise ParameterError(f"need 1 <= r <= n, got r={self.r}, n={self.n}")

    @classmethod
    def from_rate(cls, n: int, rate: float, v: int) -> "EnsembleParams":
        """Derive the row count from a design rate: r = round((1 - rate) * n)."""
        if not 0 <= rate < 1:
            raise ParameterError(f"design rate must be in [0, 1), got {rate}")
        return cls(n, round((1 - rate) * n), v)

    @property
    def rate(self) -> float:
        return 1 - self.r / self.n


@lru_cache(maxsize=None)
def _log2_comb(n: int, k: int) -> float:
    """log2 of the exact binomial coefficient (no Stirling error)."""
    c = math.comb(n, k)
    return math.log2(c) if c else -math.inf


def _even_overlap_fraction(n: int, v: int, w: int) -> Fraction:
    num = sum(math.comb(v, i) * math.comb(n - v, w - i) for i in range(0, min(v, w) + 1, 2))
    return Fraction(num, math.comb(n, w))


def even_overlap_probability(n: int, v: int, w: int, exact: bool = False):
    """Probability that a uniform weight-v row of length n meets a fixed
    weight-w vector in an even number of positions.

    This equals the probability that the row is orthogonal to the vector
    over GF(2).  Returns a :class:`~fractions.Fraction` when ``exact`` is
    set, otherwise a correctly rounded float.
    """
    if not 0 <= w <= n:
        raise ParameterError(f"need 0 <= w <= n, got w={w}, n={n}")
    if not 0 <= v <= n:
        raise ParameterError(f"need 0 <= v <= n, got v={v}, n={n}")
    q = _even_overlap_fraction(n, v, w)
    return q if exact else q.numerator / q.denominator


def _log2_even_overlap(n: int, v: int, w: int) -> float:
    """log2 of the even-overlap probability, stable when it is close to 1.

    Works with the exact complement x = 1 - q, so that r * log2(q) keeps
    full relative precision even for q within 1e-16 of 1.
    """
    q = _even_overlap_fraction(n, v, w)
    if q == 0:
        return -math.inf
    if q == 1:
        return 0.0
    x = (q.denominator - q.numerator) / q.denominator
    return math.log1p(-x) / math.log(2)


def _log2_fraction(fr: Fraction) -> float:
    """log2 of a positive rational, exact up to final float rounding."""
    a, b = fr.numerator, fr.denominator
    if a <= 0:
        return -math.inf
    shift = a.bit_length() - b.bit_length()
    if shift >= 0:
        return shift + math.log2(a / (b << shift))
    return shift + math.log2((a << -shift) / b)


class CodewordCount(NamedTuple):
    """Expected number of weight-w kernel vectors, in log2 and optionally exact."""

    log2_count: float
    exact: Optional[Fraction]

    @property
    def count(self) -> float:
        """Plain float value; inf when it exceeds the float range."""
        if self.exact is not None:
            try:
                return float(self.exact)
            except OverflowError:
                return math.inf
        try:
            return 2.0 ** self.log2_count
        except OverflowError:
            return math.inf


def log2_expected_codewords(n: int, r: int, v: int, w: int) -> float:
    """log2 of C(n, w) * q(n, v, w)**r; accepts r = 0 (no row constraints)."""
    if r < 0:
        raise ParameterError(f"need r >= 0, got {r}")
    if not 0 <= w <= n:
        raise ParameterError(f"need 0 <= w <= n, got w={w}, n={n}")
    return _log2_comb(n, w) + r * _log2_even_overlap(n, v, w)


def expected_codewords(params: EnsembleParams, w: int, exact: Optional[bool] = None) -> CodewordCount:
    """Expected number of weight-w vectors in the kernel of an ensemble draw.

    ``exact`` defaults to True for n <= EXACT_N_BOUND.  The log2 value is
    always computed; when the exact path runs too, the two agree to well
    over ten significant digits.
    """
    if not 0 <= w <= params.n:
        raise ParameterError(f"need 0 <= w <= n, got w={w}, n={params.n}")
    if exact is None:
        exact = params.n <= EXACT_N_BOUND
    log2_m = log2_expected_codewords(params.n, params.r, params.v, w)
    exact_m = None
    if exact:
        exact_m = math.comb(params.n, w) * _even_overlap_fraction(params.n, params.v, w) ** params.r
        log2_m = _log2_fraction(exact_m) if exact_m > 0 else -math.inf
    return CodewordCount(log2_m, exact_m)


@dataclass(frozen=True)
class WeightEntry:
    w: int
    overlap_probability: float
    log2_count: float
    exact: Optional[Fraction]


@dataclass(frozen=True)
class WeightDistributionReport:
    """Per-weight expected counts for one parameter set."""

    params: EnsembleParams
    entries: tuple

    def entry(self, w: int) -> WeightEntry:
        for e in self.entries:
            if e.w == w:
                return e
        raise KeyError(w)


def weight_distribution_report(
    params: EnsembleParams, weights=None, exact: Optional[bool] = None
) -> WeightDistributionReport:
    """Expected-count table over the requested weights (default 0..n)."""
    if weights is None:
        weights = range(params.n + 1)
    entries = []
    for w in weights:
        cc = expected_codewords(params, w, exact=exact)
        entries.append(
            WeightEntry(
                w=w,
                overlap_probability=even_overlap_probability(params.n, params.v, w),
                log2_count=cc.log2_count,
                exact=cc.exact,
            )
        )
    return WeightDistributionReport(params, tuple(entries))


def random_code_log2_codewords(n: int, r: int, w: int) -> float:
    """log2 of the expected weight-w codeword count for uniform random
    r x n parity-check matrices: log2 C(n, w) - r."""
    if not 0 <= w <= n:
        raise ParameterError(f"need 0 <= w <= n, got w={w}, n={n}")
    return _log2_comb(n, w) - r


def gilbert_varshamov_distance(n: int, r: int) -> int:
    """Smallest w with C(n, w) * 2**-r >= 1."""
    if not 1 <= r <= n:
        raise ParameterError(f"need 1 <= r <= n, got r={r}, n={n}")
    threshold = 1 << r
    for w in range(n + 1):
        if math.comb(n, w) >= threshold:
            return w
    raise ParameterError(f"no weight up to n={n} reaches the r={r} threshold")


@dataclass(frozen=True)
class FeasibilityReport:
    """Expected weight-v codeword count at the last, most constrained
    sampling step: C(n, v) * q(n, v, v) ** (r - 1)."""

    log2_value: float
    value: float
    feasible: bool


def feasibility_threshold(params: EnsembleParams) -> FeasibilityReport:
    """Feasibility figure of merit for sampling r self-orthogonal weight-v rows.

    The sampler draws each new row from the kernel of the rows found so far;
    the final draw sees r - 1 constraints, so this value estimates how many
    candidate rows exist at the hardest step.  Values well above 1 mean the
    search is expected to succeed; values near or below 1 mean it will
    likely stall.  An odd v cannot yield a self-orthogonal binary row, so it
    triggers a warning (it is still meaningful for the more general
    stabilizer construction).
    """
    if params.v % 2 == 1:
        warnings.warn(
            f"row weight v={params.v} is odd; binary self-orthogonal rows need even weight",
            FeasibilityWarning,
            stacklevel=2,
        )
    log2_value = _log2_comb(params.n, params.v) + (params.r - 1) * _log2_even_overlap(
        params.n, params.v, params.v
    )
    try:
        value = 2.0 ** log2_value
    except OverflowError:
        value = math.inf
    return FeasibilityReport(log2_value=log2_value, value=value, feasible=log2_value >= 0)


@dataclass(frozen=True)
class AsymptoticReport:
    """Large-n approximations for one (params, w) point."""

    epsilon: float
    log2_count_approx: float
    feasibility_bound_v: float
    max_feasible_w: float


def asymptotic_estimates(params: EnsembleParams, w: int) -> AsymptoticReport:
    """Bernoulli approximation of the expected-count curve and the sparsity
    bounds under which low-weight kernel vectors keep existing as n grows.

    The even-overlap probability is approximated by (1 + eps) / 2 with
    eps = (1 - 2v/n) ** w, which turns the log2 count into

        log2 C(n, w) - n (1 - R) (1 - log2(1 + eps)).

    Also reports the largest asymptotically feasible row weight
    ln(2)/(1-R) * log2(n) and the largest weight n * 2**(-(1-R) v / ln 2)
    at which unit expected counts can survive.
    """
    if 2 * params.v > params.n:
        raise ParameterError(f"approximation needs v <= n/2, got v={params.v}, n={params.n}")
    if not 0 <= w <= params.n:
        raise ParameterError(f"need 0 <= w <= n, got w={w}, n={params.n}")
    rate = params.rate
    if rate >= 1:
        raise ParameterError("design rate 1 leaves the feasibility bound undefined")
    epsilon = (1 - 2 * params.v / params.n) ** w
    log2_count = _log2_comb(params.n, w) - params.n * (1 - rate) * (1 - math.log2(1 + epsilon))
    ln2 = math.log(2)
    bound_v = ln2 / (1 - rate) * math.log2(params.n)
    max_w = params.n * 2 ** (-(1 - rate) * params.v / ln2)
    return AsymptoticReport(
        epsilon=epsilon,
        log2_count_approx=log2_count,
        feasibility_bound_v=bound_v,
        max_feasible_w=max_w,
    )


def sample_ensemble_row_bits(n: int, v: int, rng: random.Random) -> int:
    """Packed uniform weight-v row of length n."""
    bits = 0
    for c in rng.sample(range(n), v):
        bits |= 1 << c
    return bits


def _popcount_u64(arr: np.ndarray) -> np.ndarray:
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(arr)
    # Fallback for numpy < 2.0: byte-wise table lookup.
    table = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)
    return table[arr.view(np.uint8)].reshape(arr.shape + (8,)).sum(axis=-1, dtype=np.uint64)


def _kernel_weight_histogram(row_bits, n: int) -> np.ndarray:
    """Exhaustive weight histogram of the kernel of a packed-row matrix.

    Splits the kernel basis in two and XOR-combines the halves so that the
    popcount work is vectorized; costs 2**dimension popcounts overall.
    """
    basis = _kernel_basis_bits(row_bits, n)
    k = len(basis)
    lanes = max(1, (n + 63) // 64)
    mask = (1 << 64) - 1

    def to_lanes(x):
        return [(x >> (64 * l)) & mask for l in range(lanes)]

    k1 = min(k, 16)
    combos = np.zeros((1, lanes), dtype=np.uint64)
    for b in basis[:k1]:
        combos = np.vstack([combos, combos ^ np.array(to_lanes(b), dtype=np.uint64)])
    rest = [0]
    for b in basis[k1:]:
        rest += [x ^ b for x in rest]

    hist = np.zeros(n + 1, dtype=np.int64)
    for other in rest:
        block = combos ^ np.array(to_lanes(other), dtype=np.uint64)
        wts = _popcount_u64(block).sum(axis=1).astype(np.int64)
        hist += np.bincount(wts, minlength=n + 1)
    return hist


@dataclass(frozen=True)
class EmpiricalWeightDistribution:
    """Monte-Carlo average of kernel weight histograms over ensemble draws."""

    params: EnsembleParams
    trials: int
    mean: np.ndarray
    std_err: np.ndarray


def empirical_weight_distribution(
    params: EnsembleParams, trials: int, rng_seed: Optional[int] = None
) -> EmpiricalWeightDistribution:
    """Average kernel weight histogram over ``trials`` ensemble draws.

    Each drawn matrix has its kernel enumerated exhaustively, so the nominal
    dimension n - r must stay within ENUMERATION_DIMENSION_BOUND.  Rank
    deficiencies make individual kernels larger than 2**(n-r); they are
    counted as-is.
    """
    if trials < 1:
        raise ParameterError(f"need at least one trial, got {trials}")
    dim = params.n - params.r
    if dim > ENUMERATION_DIMENSION_BOUND:
        raise ParameterError(
            f"exhaustive enumeration limited to dimension {ENUMERATION_DIMENSION_BOUND}; "
            f"n - r = {dim} exceeds it"
        )
    rng = random.Random(rng_seed)
    total = np.zeros(params.n + 1, dtype=np.float64)
    total_sq = np.zeros(params.n + 1, dtype=np.float64)
    for _ in range(trials):
        rows = [sample_ensemble_row_bits(params.n, params.v, rng) for _ in range(params.r)]
        hist = _kernel_weight_histogram(rows, params.n).astype(np.float64)
        total += hist
        total_sq += hist * hist
    mean = total / trials
    variance = np.maximum(total_sq / trials - mean * mean, 0.0)
    std_err = np.sqrt(variance / trials)
    return EmpiricalWeightDistribution(params=params, trials=trials, mean=mean, std_err=std_err)


def expected_column_weights(params: EnsembleParams) -> np.ndarray:
    """Expected number of columns of each weight z = 0..r for ensemble draws.

    Every matrix entry is set with probability v/n, independently across
    rows, so column weights are Binomial(r, v/n) and the expected count of
    weight-z columns is n * C(r, z) * (v/n)**z * (1 - v/n)**(r-z).  The
    entries sum to n.
    """
    n, r, v = params.n, params.r, params.v
    p = v / n
    out = np.empty(r + 1, dtype=np.float64)
    if v == n:
        out[:] = 0.0
        out[r] = float(n)
        return out
    log_p = math.log(p)
    log_1p = math.log1p(-p)
    for z in range(r + 1):
        log_t = math.log(n) + math.lgamma(r + 1) - math.lgamma(z + 1) - math.lgamma(r - z + 1)
        log_t += z * log_p + (r - z) * log_1p
        out[z] = math.exp(log_t)
    return out
