"""End-to-end acceptance checks.

Each test covers one numbered criterion, pins its stated tolerance, and
prints a PASS/FAIL line (visible with ``pytest -s`` or on failure).
Reference values come from the exact combinatorial formulas and from the
published measurement points this package is validated against.
"""

import collections
import math
import random
import warnings

import pytest

from qldpc_sampler import (
    BitMatrix,
    EnsembleParams,
    IsdConfig,
    SamplerConfig,
    Stalled,
    bundle_from_text,
    bundle_to_text,
    column_weight_histogram,
    empirical_weight_distribution,
    expected_codewords,
    expected_column_weights,
    feasibility_threshold,
    gilbert_varshamov_distance,
    kernel_basis,
    lee_brickell_search,
    load_bundle,
    rank,
    sample_css_pair,
    sample_dual_containing,
    sample_stabilizer,
    save_bundle,
    success_probability,
    MatrixBundle,
)
from qldpc_sampler.weights import sample_ensemble_row_bits


def _report(criterion, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}")
    assert ok, f"criterion {criterion}: {detail}"


def test_criterion_1_reference_formulas():
    params = EnsembleParams(80, 40, 7)
    expected_counts = {4: 3.69, 5: 4.59, 6: 6.35, 7: 9.93, 8: 17.70, 9: 35.73, 10: 80.86}
    count_errors = []
    for w, ref in expected_counts.items():
        got = round(expected_codewords(params, w).count, 2)
        if abs(got - ref) > 0.01:
            count_errors.append((w, got, ref))

    expected_calls = {
        2: [1.20, 1.20, 1.22, 1.21, 1.17, 1.11, 1.05],
        3: [1.53, 1.20, 1.09, 1.04, 1.01, 1.00, 1.00],
    }
    call_errors = []
    for p, refs in expected_calls.items():
        for w, ref in zip(range(4, 11), refs):
            count = expected_codewords(params, w).count
            got = round(1 / success_probability(80, 40, w, p, count).probability, 2)
            if abs(got - ref) > 0.01:
                call_errors.append((p, w, got, ref))

    ok = not count_errors and not call_errors
    _report(
        1,
        ok,
        "expected-count row and expected-call rows for p in {2,3} match to 0.01"
        + (f"; count mismatches {count_errors} call mismatches {call_errors}" if not ok else ""),
    )


def test_criterion_2_gv_distances():
    got = [
        gilbert_varshamov_distance(250, 80),
        gilbert_varshamov_distance(500, 200),
        gilbert_varshamov_distance(1000, 400),
    ]
    ok = got == [16, 41, 81]
    _report(2, ok, f"GV distances {got} == [16, 41, 81]")


def test_criterion_3_feasibility_thresholds():
    references = [
        (250, 80, 6, 5.25e6),
        (250, 80, 8, 2.69e6),
        (250, 80, 10, 3.82e5),
        (250, 80, 12, 4.52e4),
        (250, 80, 14, 1.22e4),
        (500, 200, 6, 1.56e7),
        (500, 200, 8, 2.01e6),
        (500, 200, 10, 1.85e4),
        (1000, 400, 6, 8.77e8),
        (1000, 400, 8, 3.07e8),
        (1000, 400, 10, 4.50e6),
    ]
    mismatches = []
    for n, r, v, ref in references:
        got = feasibility_threshold(EnsembleParams(n, r, v)).value
        if abs(got - ref) / ref > 0.01:
            mismatches.append((n, r, v, got, ref))
    marginal = feasibility_threshold(EnsembleParams(150, 70, 10)).value
    if abs(marginal - 1.29) > 0.01:
        mismatches.append((150, 70, 10, marginal, 1.29))
    ok = not mismatches
    _report(3, ok, f"threshold column within 1% and marginal value 1.29 +- 0.01; mismatches {mismatches}")


def test_criterion_4_weight_distribution_oracle():
    trials = 1000
    failures = []
    worst = 0.0
    for r in (30, 35, 40):
        for v in (3, 5):
            params = EnsembleParams(50, r, v)
            emp = empirical_weight_distribution(params, trials, rng_seed=1000 + r + v)
            for w in range(51):
                theory = expected_codewords(params, w).count
                if theory < 0.01:
                    continue
                se = emp.std_err[w]
                diff = abs(emp.mean[w] - theory)
                z = diff / se if se > 0 else (0.0 if diff == 0 else math.inf)
                worst = max(worst, z)
                if z > 4:
                    failures.append((r, v, w, z))
    ok = not failures
    _report(
        4,
        ok,
        f"exhaustive-enumeration oracle vs model, 6 parameter sets x {trials} codes: "
        f"worst z = {worst:.2f} (limit 4); failures {failures}",
    )


def test_criterion_5_sampler_correctness():
    problems = []
    for n, r, v in [(100, 40, 6), (250, 80, 6), (250, 80, 8)]:
        calls = []
        for seed in range(5):
            res = sample_dual_containing(SamplerConfig(n=n, r=r, v=v, rng_seed=seed))
            if isinstance(res, Stalled):
                problems.append((n, r, v, seed, "stalled"))
                continue
            m = res.matrix
            if not m.mat_mat(m.transpose()).is_zero():
                problems.append((n, r, v, seed, "not self-orthogonal"))
            if any(m.row(i).weight() != v for i in range(m.rows)):
                problems.append((n, r, v, seed, "row weight"))
            if rank(m) != r:
                problems.append((n, r, v, seed, "rank"))
            if n == 250 and res.elapsed >= 60.0:
                problems.append((n, r, v, seed, f"too slow: {res.elapsed:.1f}s"))
            calls.append(sum(res.per_step_isd_calls) / len(res.per_step_isd_calls))
        mean_calls = sum(calls) / len(calls) if calls else math.inf
        if mean_calls > 1.2:
            problems.append((n, r, v, "avg calls", mean_calls))
    ok = not problems
    _report(5, ok, f"3 parameter sets x 5 seeds: invariants, <60s, avg calls <= 1.2; problems {problems}")


def test_criterion_6_failure_rate():
    runs = 100
    rng = random.Random(424242)
    stall_steps = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for _ in range(runs):
            res = sample_dual_containing(
                SamplerConfig(n=150, r=70, v=10, rng_seed=rng.getrandbits(32))
            )
            if isinstance(res, Stalled):
                stall_steps.append(res.step)
    fraction = len(stall_steps) / runs
    in_last_two = sum(1 for s in stall_steps if s in (68, 69))
    share = in_last_two / len(stall_steps) if stall_steps else 0.0
    hist = dict(sorted(collections.Counter(stall_steps).items()))
    ok = 0 < fraction < 0.5 and share >= 0.8
    _report(
        6,
        ok,
        f"(150,70,10) cap 100, {runs} runs: stall fraction {fraction:.2f} in (0, 0.5), "
        f"{share:.0%} of stalls in final two steps (>= 80%); histogram {hist}",
    )


def test_criterion_7_column_weight_model():
    params = EnsembleParams(150, 60, 8)
    theory = expected_column_weights(params)
    rng = random.Random(71)
    samples = 100
    per_z = [[] for _ in range(61)]
    for _ in range(samples):
        m = BitMatrix(150, [sample_ensemble_row_bits(150, 8, rng) for _ in range(60)])
        hist = column_weight_histogram(m)
        for z in range(61):
            per_z[z].append(hist[z])
    failures = []
    for z in range(9):
        mean = sum(per_z[z]) / samples
        var = sum((c - mean) ** 2 for c in per_z[z]) / (samples - 1)
        se = math.sqrt(var / samples)
        diff = abs(mean - theory[z])
        if diff > 4 * max(se, 1e-9):
            failures.append((z, mean, theory[z]))

    # self-orthogonal outputs: comparison emitted, only the direction recorded
    zero_cols = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for seed in range(12):
            res = sample_dual_containing(SamplerConfig(n=150, r=60, v=8, rng_seed=seed))
            if not isinstance(res, Stalled):
                zero_cols.append(column_weight_histogram(res.matrix)[0])
    sampled_mean = sum(zero_cols) / len(zero_cols)
    direction = "below" if sampled_mean < theory[0] else "not below"
    print(
        f"  note: sampled self-orthogonal outputs average {sampled_mean:.2f} zero columns "
        f"vs model {theory[0]:.2f} ({direction} the model; recorded, not asserted)"
    )
    ok = not failures
    _report(
        7,
        ok,
        f"ensemble column-weight histogram within 4 SE for z <= 8 over {samples} draws; "
        f"failures {failures}",
    )


def test_criterion_8_search_soundness_and_completeness():
    rng = random.Random(81)
    trials = 0
    successes = 0
    sound = True
    for _ in range(50):
        n = rng.randrange(14, 23)
        r = n // 2
        h = BitMatrix(n, [rng.getrandbits(n) for _ in range(r)])
        basis = kernel_basis(h)
        k = basis.rows
        u = n - k
        by_weight = {}
        for x in range(1, 1 << k):
            acc = 0
            for i in range(k):
                if (x >> i) & 1:
                    acc ^= basis.row_bits[i]
            by_weight.setdefault(bin(acc).count("1"), set()).add(acc)
        for w, codewords in by_weight.items():
            p = max(min(3, w, k), w - u)
            for _ in range(4):
                out = lee_brickell_search(
                    h, w, IsdConfig(p=p, max_iterations=1000, rng_seed=rng.getrandbits(32))
                )
                trials += 1
                successes += out.found
                if out.found:
                    c = out.codeword
                    if c.weight() != w or h.mat_vec(c).weight() != 0 or c.bits not in codewords:
                        sound = False
    rate = successes / trials

    # coverage: a code with 15 weight-2 codewords, all of them returned
    h = BitMatrix(6, [(1 << 6) - 1])
    seen = set()
    cov_rng = random.Random(83)
    for _ in range(10_000):
        out = lee_brickell_search(h, 2, IsdConfig(p=1, rng_seed=cov_rng.getrandbits(32)))
        if out.found:
            seen.add(out.codeword.bits)
    coverage_ok = len(seen) == 15

    ok = sound and rate >= 0.99 and coverage_ok
    _report(
        8,
        ok,
        f"soundness on every return; achievable weights found in {rate:.1%} of {trials} "
        f"trials (>= 99%); {len(seen)}/15 codewords covered in 10^4 runs",
    )


def test_criterion_9_generalizations(tmp_path):
    problems = []
    for seed in range(5):
        pair = sample_css_pair(60, 5, 20, 6, 4, rng_seed=seed)
        if isinstance(pair, Stalled):
            problems.append(("css", seed, "stalled"))
            continue
        p1 = tmp_path / f"css{seed}.h1.json"
        p2 = tmp_path / f"css{seed}.h2.json"
        save_bundle(MatrixBundle(pair.h1), p1, "json-bundle")
        save_bundle(MatrixBundle(pair.h2), p2, "json-bundle")
        h1 = load_bundle(p1).matrix
        h2 = load_bundle(p2).matrix
        if not h1.mat_mat(h2.transpose()).is_zero():
            problems.append(("css", seed, "h1*h2^T != 0"))
        if rank(h1) != 5 or rank(h2) != 20:
            problems.append(("css", seed, "rank"))

        st = sample_stabilizer(40, 8, 6, rng_seed=seed)
        if isinstance(st, Stalled):
            problems.append(("stab", seed, "stalled"))
            continue
        px = tmp_path / f"st{seed}.hx.json"
        pz = tmp_path / f"st{seed}.hz.json"
        save_bundle(MatrixBundle(st.h_x), px, "json-bundle")
        save_bundle(MatrixBundle(st.h_z), pz, "json-bundle")
        hx = load_bundle(px).matrix
        hz = load_bundle(pz).matrix
        if hx.mat_mat(hz.transpose()) != hz.mat_mat(hx.transpose()):
            problems.append(("stab", seed, "symplectic sum != 0"))
    ok = not problems
    _report(
        9,
        ok,
        f"CSS (60,5,20,v=4,w=6) and stabilizer (40,8,6) pairs verified from serialized "
        f"files for 5 seeds; problems {problems}",
    )
