"""Lee-Brickell search for low-weight codewords, tuned for sparse inputs.

One round of the search permutes the columns of the input check matrix,
brings it to reduced row echelon form, and treats the non-pivot columns as
the information set.  Deriving the information set from the RREF (instead
of retrying random column subsets until one is invertible) matters here:
sparse matrices yield singular column subsets far more often than dense
random ones, and the RREF route performs exactly one elimination per round
regardless.  Rank-deficient inputs are handled transparently: the code
dimension is n minus the observed rank.

With the RREF written as identity on the pivot block and a block A on the
information set, a codeword split as (pattern, remainder) must satisfy
remainder = A @ pattern.  Each round enumerates the weight-p patterns over
the information set in lexicographic support order and accepts the first
whose remainder has weight w - p.  Under a fresh uniform permutation per
round, which of several weight-w codewords is returned is effectively
random.

The analytic companions (success probability, per-round cost) follow the
standard heuristics: column subsets of a check matrix behave like uniform
random matrices, and distinct codewords of one weight occupy independent
random supports.  On sparse codes both are mildly optimistic, so the model
is exposed as an estimate, never asserted as a bound.
"""

from __future__ import annotations

import math
import random
import threading
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple, Optional

import numpy as np

from .errors import ParameterError
from .gf2 import BitMatrix, BitVector, Permutation, _rref_bits
from .weights import _popcount_u64

__all__ = [
    "IsdConfig",
    "IsdOutcome",
    "IsdCostModel",
    "SuccessEstimate",
    "lee_brickell_search",
    "lee_brickell_search_parallel",
    "choose_pattern_weight",
    "success_probability",
    "iteration_cost",
    "nonsingular_probability",
    "cost_model",
]


@dataclass(frozen=True)
class IsdConfig:
    """Knobs for one search: pattern weight, round budget, RNG seed."""

    p: int = 3
    max_iterations: int = 100
    rng_seed: Optional[int] = None

    def __post_init__(self):
        if self.p < 0:
            raise ParameterError(f"pattern weight must be >= 0, got {self.p}")
        if self.max_iterations < 1:
            raise ParameterError(f"need at least one iteration, got {self.max_iterations}")


@dataclass(frozen=True)
class IsdOutcome:
    """Search result: the codeword (absent on failure) plus effort counters.

    ``iterations_used`` counts permutation rounds; ``candidates_tested``
    counts remainder-weight checks across all rounds.
    """

    codeword: Optional[BitVector]
    iterations_used: int
    candidates_tested: int

    @property
    def found(self) -> bool:
        return self.codeword is not None


def choose_pattern_weight(redundancy: int, target_weight: int, default_p: int = 3) -> int:
    """Pattern weight for a search at the given check-matrix redundancy.

    While the redundancy is small the remainder carries about redundancy/2
    of the weight on average, so aiming the pattern at the rest of it makes
    a single round succeed quickly.  Once the redundancy passes twice the
    target weight, a small constant keeps enumeration and elimination costs
    balanced.
    """
    if redundancy < 1 or target_weight < 1:
        raise ParameterError("redundancy and target weight must be positive")
    if redundancy / 2 < target_weight:
        return max(1, min(target_weight, round(target_weight - redundancy / 2)))
    return max(1, min(default_p, target_weight))


def _one_round(row_bits, n, w, p, rng):
    """One permutation + elimination + enumeration round.

    Returns (codeword bits or None, candidates tested this round).
    """
    perm = Permutation.random(n, rng)
    position = perm.images  # original column c sits at position[c]
    permuted = []
    for bits in row_bits:
        nb = 0
        x = bits
        while x:
            low = x & -x
            nb |= 1 << position[low.bit_length() - 1]
            x ^= low
        permuted.append(nb)

    reduced, pivots = _rref_bits(permuted, n)
    nred = len(pivots)
    pivot_set = set(pivots)
    info = [c for c in range(n) if c not in pivot_set]
    k = len(info)
    target = w - p
    if p > k or target < 0 or target > nred:
        return None, 0

    # Columns of the A block (RREF restricted to the information set),
    # packed over the pivot rows, plus a uint64-lane copy for vector scans.
    position_in_info = {c: j for j, c in enumerate(info)}
    acols = [0] * k
    for t in range(nred):
        x = reduced[t]
        while x:
            low = x & -x
            j = position_in_info.get(low.bit_length() - 1)
            if j is not None:
                acols[j] |= 1 << t
            x ^= low
    lanes = max(1, (nred + 63) // 64)
    mask = (1 << 64) - 1
    acols_np = np.empty((k, lanes), dtype=np.uint64)
    for j, a in enumerate(acols):
        for l in range(lanes):
            acols_np[j, l] = (a >> (64 * l)) & mask

    # original coordinates, recovered through the permutation
    inv = perm.inverse().images

    tested = 0
    if p == 0:
        tested = 1
        if target == 0:
            # only the zero codeword, which never has positive weight w
            return None, tested
        return None, tested

    # Lexicographic enumeration of weight-p supports over the information
    # set; the last index is scanned as one vectorized popcount pass.
    for prefix in combinations(range(k), p - 1):
        start = prefix[-1] + 1 if prefix else 0
        if start >= k:
            continue
        acc = np.zeros(lanes, dtype=np.uint64)
        acc_int = 0
        for j in prefix:
            acc ^= acols_np[j]
            acc_int ^= acols[j]
        block = acols_np[start:] ^ acc
        wts = _popcount_u64(block).sum(axis=1)
        hits = np.nonzero(wts == target)[0]
        if hits.size:
            first = int(hits[0])
            tested += first + 1
            last = start + first
            remainder = acc_int ^ acols[last]
            bits = 0
            for j in (*prefix, last):
                bits |= 1 << inv[info[j]]
            x = remainder
            while x:
                low = x & -x
                bits |= 1 << inv[pivots[low.bit_length() - 1]]
                x ^= low
            return bits, tested
        tested += k - start
    return None, tested


def lee_brickell_search(h: BitMatrix, w: int, cfg: IsdConfig) -> IsdOutcome:
    """Search the kernel of ``h`` for a codeword of weight exactly ``w``.

    Runs up to ``cfg.max_iterations`` rounds; an exhausted budget yields an
    outcome with no codeword.  A returned codeword always satisfies
    h @ c = 0 and weight(c) = w.  Identical inputs and seed give identical
    outcomes.
    """
    n = h.cols
    if not 0 < w <= n:
        raise ParameterError(f"need 0 < w <= {n}, got w={w}")
    if w < cfg.p:
        raise ParameterError(f"pattern weight p={cfg.p} exceeds target weight w={w}")
    rng = random.Random(cfg.rng_seed)
    tested = 0
    for it in range(1, cfg.max_iterations + 1):
        bits, t = _one_round(h.row_bits, n, w, cfg.p, rng)
        tested += t
        if bits is not None:
            return IsdOutcome(BitVector(n, bits), it, tested)
    return IsdOutcome(None, cfg.max_iterations, tested)


def lee_brickell_search_parallel(
    h: BitMatrix, w: int, cfg: IsdConfig, workers: int = 4
) -> IsdOutcome:
    """Race independent rounds across threads; first success wins.

    Results are valid but not reproducible from a seed: workers draw from
    independently seeded generators and finish in nondeterministic order.
    The round budget is split across workers.
    """
    n = h.cols
    if not 0 < w <= n:
        raise ParameterError(f"need 0 < w <= {n}, got w={w}")
    if w < cfg.p:
        raise ParameterError(f"pattern weight p={cfg.p} exceeds target weight w={w}")
    if workers < 1:
        raise ParameterError(f"need at least one worker, got {workers}")
    stop = threading.Event()
    budget = math.ceil(cfg.max_iterations / workers)

    def run(seed):
        rng = random.Random(seed)
        tested = 0
        for it in range(1, budget + 1):
            if stop.is_set():
                return None, it - 1, tested
            bits, t = _one_round(h.row_bits, n, w, cfg.p, rng)
            tested += t
            if bits is not None:
                stop.set()
                return bits, it, tested
        return None, budget, tested

    seeder = random.Random(cfg.rng_seed)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(run, seeder.getrandbits(63)) for _ in range(workers)]
        done, pending = wait(futures, return_when=FIRST_COMPLETED)
        while pending and not any(f.result()[0] is not None for f in done):
            more, pending = wait(pending, return_when=FIRST_COMPLETED)
            done |= more
        results = [f.result() for f in futures]
    iterations = sum(r[1] for r in results)
    tested = sum(r[2] for r in results)
    for bits, _, _ in results:
        if bits is not None:
            return IsdOutcome(BitVector(n, bits), iterations, tested)
    return IsdOutcome(None, iterations, tested)


def nonsingular_probability(m: int, q: int = 2) -> float:
    """Heuristic probability that m random columns of a check matrix form a
    nonsingular matrix: prod_{i=1}^{m-1} (1 - q**-i).  Tends to ~0.2888 for
    q = 2 as m grows."""
    out = 1.0
    for i in range(1, m):
        factor = 1.0 - q ** -float(i)
        if factor == 1.0:
            break
        out *= factor
    return out


class SuccessEstimate(NamedTuple):
    """Per-round success probability, exact and in min{1, m q} form."""

    probability: float
    approximation: float


def success_probability(n: int, k: int, w: int, p: int, expected_count: float) -> SuccessEstimate:
    """Probability that one round finds a weight-w codeword, given the
    expected number of such codewords in the code.

    A fixed codeword splits correctly under a random permutation with
    probability q = C(k,p) C(n-k,w-p) / C(n,w); treating codewords as
    independent gives 1 - (1-q)**count.  The reciprocal is the expected
    number of rounds.  Zero expected codewords give zero probability.
    """
    if expected_count < 0:
        raise ParameterError(f"expected count must be >= 0, got {expected_count}")
    if expected_count == 0:
        return SuccessEstimate(0.0, 0.0)
    favorable = math.comb(k, p) * math.comb(n - k, w - p) if 0 <= p <= k and 0 <= w - p <= n - k else 0
    if favorable == 0:
        return SuccessEstimate(0.0, 0.0)
    q = favorable / math.comb(n, w)
    if q >= 1.0:
        return SuccessEstimate(1.0, 1.0)
    log_miss = expected_count * math.log1p(-q)
    probability = 1.0 if log_miss < -745 else -math.expm1(log_miss)
    return SuccessEstimate(probability, min(1.0, expected_count * q))


def iteration_cost(n: int, k: int, p: int) -> float:
    """Elementary GF(2) operations per round: elimination plus enumeration.

    Estimated as (n-k)**2 (n+k) / gamma + n C(k, p), where gamma is the
    nonsingular probability for the redundancy block.  This is a worst case
    for the enumeration term: a round that succeeds stops early.
    """
    gamma = nonsingular_probability(n - k)
    elimination = (n - k) ** 2 * (n + k) / gamma if n > k else 0.0
    try:
        enumeration = n * float(math.comb(k, p))
    except OverflowError:
        return math.inf
    return elimination + enumeration


@dataclass(frozen=True)
class IsdCostModel:
    """Bundled analytic model for one parameter point."""

    success_probability: float
    time_estimate: float
    gamma_q: float
    approximation: float = field(default=0.0)


def cost_model(n: int, k: int, w: int, p: int, expected_count: float) -> IsdCostModel:
    est = success_probability(n, k, w, p, expected_count)
    return IsdCostModel(
        success_probability=est.probability,
        time_estimate=iteration_cost(n, k, p),
        gamma_q=nonsingular_probability(n - k),
        approximation=est.approximation,
    )
