"""Command-line front end: sampling, analysis sweeps, validation, benchmarks.

Exit codes: 0 success, 2 invalid parameters, 3 sampling stalled,
4 a validation suite failed its statistical test.

Every randomized subcommand either takes a seed or draws one and prints it.
Subcommands that write artifact files also write a JSON run manifest next
to them (override the path with --manifest); re-running with the recorded
seed and flags reproduces the matrix files byte for byte.  Every matrix
written to disk is verified by re-reading the serialized bytes, not by
trusting the in-memory value.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .errors import (
    DegeneratePruneError,
    DimensionError,
    ParameterError,
    ParseError,
    QldpcError,
)
from .gf2 import BitMatrix, rank
from .isd import IsdConfig, lee_brickell_search, success_probability
from .sampler import (
    SamplerConfig,
    Stalled,
    sample_css_pair,
    sample_dual_containing,
    sample_stabilizer,
)
from .toolkit import (
    FORMATS,
    MatrixBundle,
    bundle_from_text,
    bundle_to_text,
    column_weight_histogram,
    detect_format,
    load_bundle,
    prune_zero_columns,
)
from .weights import (
    EXACT_N_BOUND,
    EnsembleParams,
    empirical_weight_distribution,
    even_overlap_probability,
    expected_codewords,
    expected_column_weights,
    feasibility_threshold,
    gilbert_varshamov_distance,
    random_code_log2_codewords,
    sample_ensemble_row_bits,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_STALLED = 3
EXIT_VALIDATION = 4

# Coefficients below this are skipped by the statistical EWD check: a
# thousand trials cannot resolve them.
VALIDATION_COUNT_FLOOR = 0.01
VALIDATION_SIGMA = 4.0

TABLE3_PRESET = [
    (250, 80, 6),
    (250, 80, 8),
    (250, 80, 10),
    (500, 200, 6),
    (500, 200, 8),
    (500, 200, 10),
    (1000, 400, 6),
    (1000, 400, 8),
    (1000, 400, 10),
]
FAILURE_RATE_PRESET = (150, 70, 10)


@dataclass
class RunManifest:
    """Record of one CLI invocation, enough to reproduce its artifacts."""

    subcommand: str
    parameters: dict
    seed: int | None
    tool_version: str
    started_at: str
    finished_at: str = ""
    outputs: list = field(default_factory=list)


def _utcnow() -> str:
    return datetime.now(timezone.utc).isoformat()


def _resolve_seed(args) -> int:
    seed = getattr(args, "seed", None)
    if seed is None:
        seed = random.SystemRandom().getrandbits(32)
    print(f"seed: {seed}")
    return seed


def _manifest_start(args, seed=None) -> RunManifest:
    params = {
        k: v
        for k, v in vars(args).items()
        if k not in ("func", "manifest") and not callable(v)
    }
    return RunManifest(
        subcommand=args.func.__name__.removeprefix("cmd_").replace("_", "-"),
        parameters=params,
        seed=seed,
        tool_version=__version__,
        started_at=_utcnow(),
    )


def _manifest_finish(manifest: RunManifest, args, outputs) -> None:
    """Write the manifest when the run produced files (or when forced)."""
    manifest.finished_at = _utcnow()
    manifest.outputs = [str(p) for p in outputs]
    target = getattr(args, "manifest", None)
    if target is None and outputs:
        target = Path(str(outputs[0]) + ".manifest.json")
    if target is None:
        return
    Path(target).write_text(json.dumps(asdict(manifest), indent=2) + "\n", encoding="utf-8")
    print(f"manifest: {target}")


def _parse_w_range(text: str) -> range:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return range(int(lo), int(hi) + 1)
        w = int(text)
        return range(w, w + 1)
    except ValueError:
        raise ParameterError(f"bad weight range {text!r}; expected e.g. 4..10")


def _write_csv(rows, header, path=None):
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(header)
    writer.writerows(rows)
    text = out.getvalue()
    if path:
        Path(path).write_text(text, encoding="utf-8")
        print(f"csv: {path}")
    else:
        sys.stdout.write(text)


def _verify_self_orthogonal_text(text: str, fmt: str, v: int | None, expect_rank: int | None):
    """Re-parse serialized bytes and check the defining properties."""
    m = bundle_from_text(text, fmt).matrix
    product = m.mat_mat(m.transpose())
    ok = product.is_zero()
    detail = [f"H*H^T=0: {'ok' if ok else 'FAILED'}"]
    if v is not None:
        weights_ok = all(m.row(i).weight() == v for i in range(m.rows))
        ok &= weights_ok
        detail.append(f"row weights={v}: {'ok' if weights_ok else 'FAILED'}")
    if expect_rank is not None:
        rank_ok = rank(m) == expect_rank
        ok &= rank_ok
        detail.append(f"rank={expect_rank}: {'ok' if rank_ok else 'FAILED'}")
    return ok, "; ".join(detail)


# ----------------------------------------------------------------- sample


def cmd_sample(args) -> int:
    seed = _resolve_seed(args)
    manifest = _manifest_start(args, seed)
    cfg = SamplerConfig(
        n=args.n,
        r=args.r,
        v=args.v,
        rng_seed=seed,
        max_isd_calls_per_step=args.max_isd_calls,
        isd=IsdConfig(p=args.p),
    )
    result = sample_dual_containing(cfg)
    stalled = isinstance(result, Stalled)
    matrix = result.partial_matrix if stalled else result.matrix
    calls = result.per_step_isd_calls

    prune_note = None
    if args.prune_zero and not stalled:
        matrix, report = prune_zero_columns(matrix)
        prune_note = len(report.removed_columns)

    metadata = {
        "n": args.n,
        "r": args.r,
        "v": args.v,
        "seed": seed,
        "generator_version": __version__,
        "per_step_isd_calls": list(calls),
        "per_step_span_rejections": list(result.per_step_span_rejections),
        "elapsed_seconds": result.elapsed,
        "stalled": stalled,
    }
    if stalled:
        metadata["stalled_at_step"] = result.step
    if prune_note is not None:
        metadata["pruned_zero_columns"] = prune_note

    text = bundle_to_text(MatrixBundle(matrix, metadata), args.format)
    outputs = []
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        outputs.append(args.out)
    else:
        sys.stdout.write(bundle_to_text(MatrixBundle(matrix), "dense-text"))

    if calls:
        print(
            f"steps: {len(calls)}; isd calls: total={sum(calls)} "
            f"mean={sum(calls) / len(calls):.3f} max={max(calls)}"
        )
    print(f"elapsed: {result.elapsed:.3f}s")
    if prune_note is not None:
        print(f"pruned zero columns: {prune_note}")
    expect_rank = matrix.rows
    ok, detail = _verify_self_orthogonal_text(text, args.format, args.v, expect_rank)
    print(f"verification: {detail}")
    _manifest_finish(manifest, args, outputs)
    if stalled:
        print(f"stalled after {result.step} rows (budget {args.max_isd_calls} per step)")
        return EXIT_STALLED
    return EXIT_OK if ok else EXIT_VALIDATION


# -------------------------------------------------------------------- ewd


def cmd_ewd(args) -> int:
    params = EnsembleParams(args.n, args.r, args.v)
    ws = _parse_w_range(args.w_range) if args.w_range else range(0, args.n + 1)
    if args.exact and args.n > EXACT_N_BOUND:
        raise ParameterError(
            f"exact mode is limited to n <= {EXACT_N_BOUND}; use the default log-space mode"
        )
    exact = True if args.exact else None
    rows = []
    for w in ws:
        cc = expected_codewords(params, w, exact=exact)
        rows.append(
            (
                w,
                f"{cc.log2_count:.10g}",
                f"{even_overlap_probability(args.n, args.v, w):.10g}",
                f"{random_code_log2_codewords(args.n, args.r, w):.10g}",
            )
        )
    _write_csv(rows, ["w", "log2_m_w", "rho_w", "log2_m_w_rnd"], args.csv)
    manifest = _manifest_start(args)
    _manifest_finish(manifest, args, [args.csv] if args.csv else [])
    return EXIT_OK


def cmd_gv(args) -> int:
    print(gilbert_varshamov_distance(args.n, args.r))
    return EXIT_OK


# ------------------------------------------------------------ validate-ewd


def cmd_validate_ewd(args) -> int:
    if args.trials < 1:
        raise ParameterError(f"need at least one trial, got {args.trials}")
    seed = _resolve_seed(args)
    manifest = _manifest_start(args, seed)
    params = EnsembleParams(args.n, args.r, args.v)
    emp = empirical_weight_distribution(params, args.trials, seed)
    rows = []
    worst = 0.0
    failures = 0
    for w in range(args.n + 1):
        theory = expected_codewords(params, w).count
        if theory < VALIDATION_COUNT_FLOOR:
            continue
        se = emp.std_err[w]
        diff = abs(emp.mean[w] - theory)
        z = diff / se if se > 0 else (0.0 if diff == 0 else float("inf"))
        worst = max(worst, z)
        if z > VALIDATION_SIGMA:
            failures += 1
        rows.append((w, f"{emp.mean[w]:.6g}", f"{theory:.6g}", f"{z:.3f}"))
    _write_csv(rows, ["w", "empirical_mean", "theoretical", "z_score"], args.csv)
    verdict = "pass" if failures == 0 else "FAIL"
    print(
        f"validate-ewd: {verdict}; {len(rows)} coefficients, worst z={worst:.2f}, "
        f"threshold {VALIDATION_SIGMA}"
    )
    _manifest_finish(manifest, args, [args.csv] if args.csv else [])
    return EXIT_OK if failures == 0 else EXIT_VALIDATION


# ------------------------------------------------------------ validate-isd


def cmd_validate_isd(args) -> int:
    ws = _parse_w_range(args.w_range)
    for w in ws:
        if w < args.p:
            raise ParameterError(f"target weight {w} is below the pattern weight p={args.p}")
    if args.codes < 1 or args.calls_per_code < 1:
        raise ParameterError("need at least one code and one call per code")
    seed = _resolve_seed(args)
    manifest = _manifest_start(args, seed)
    rng = random.Random(seed)
    params = EnsembleParams(args.n, args.r, args.v)
    k = args.n - args.r
    rows = []
    for w in ws:
        theory_count = expected_codewords(params, w).count
        prob = success_probability(args.n, k, w, args.p, theory_count).probability
        theory_calls = 1.0 / prob if prob > 0 else float("inf")
        total_calls = 0
        total_finds = 0
        distinct_total = 0
        for _ in range(args.codes):
            h = BitMatrix(
                args.n,
                [sample_ensemble_row_bits(args.n, args.v, rng) for _ in range(args.r)],
            )
            seen = set()
            for _ in range(args.calls_per_code):
                outcome = lee_brickell_search(
                    h, w, IsdConfig(p=args.p, max_iterations=1, rng_seed=rng.getrandbits(63))
                )
                total_calls += 1
                if outcome.found:
                    total_finds += 1
                    seen.add(outcome.codeword)
            distinct_total += len(seen)
        emp_distinct = distinct_total / args.codes
        emp_calls = total_calls / total_finds if total_finds else float("inf")
        rows.append(
            (
                w,
                f"{theory_count:.2f}",
                f"{emp_distinct:.2f}",
                f"{theory_calls:.2f}",
                f"{emp_calls:.2f}",
                "below-theory" if emp_distinct <= theory_count else "ABOVE-THEORY",
                "above-theory" if emp_calls >= theory_calls else "BELOW-THEORY",
            )
        )
    _write_csv(
        rows,
        [
            "w",
            "theoretical_m_w",
            "empirical_distinct",
            "theoretical_calls",
            "empirical_calls",
            "distinct_direction",
            "calls_direction",
        ],
        args.csv,
    )
    print(
        "validate-isd: sparse inputs typically find slightly fewer distinct codewords "
        "and need slightly more calls than the model; directions reported, not failed."
    )
    _manifest_finish(manifest, args, [args.csv] if args.csv else [])
    return EXIT_OK


# ------------------------------------------------------------------- bench


def cmd_bench(args) -> int:
    if args.runs < 1:
        raise ParameterError(f"need at least one run, got {args.runs}")
    seed = _resolve_seed(args)
    manifest = _manifest_start(args, seed)
    rng = random.Random(seed)
    outputs = []
    if args.preset == "table3":
        rows = []
        for n, r, v in TABLE3_PRESET:
            report = feasibility_threshold(EnsembleParams(n, r, v))
            times = []
            call_means = []
            stalls = 0
            for _ in range(args.runs):
                cfg = SamplerConfig(n=n, r=r, v=v, rng_seed=rng.getrandbits(32))
                result = sample_dual_containing(cfg)
                times.append(result.elapsed)
                if isinstance(result, Stalled):
                    stalls += 1
                    continue
                calls = result.per_step_isd_calls
                call_means.append(sum(calls) / len(calls))
            avg_time = sum(times) / len(times)
            avg_calls = sum(call_means) / len(call_means) if call_means else float("nan")
            rows.append(
                (
                    n,
                    r,
                    v,
                    gilbert_varshamov_distance(n, r),
                    f"{report.value:.3g}",
                    f"{avg_time:.3f}",
                    f"{avg_calls:.4f}",
                )
            )
            note = f" stalls={stalls}" if stalls else ""
            print(f"bench ({n},{r},{v}): avg {avg_time:.3f}s, calls {avg_calls:.4f}{note}")
        _write_csv(
            rows,
            ["n", "r", "v", "gv_distance", "m_v_r", "avg_time_s", "avg_isd_calls"],
            args.csv,
        )
    else:  # failure-rate
        n, r, v = FAILURE_RATE_PRESET
        stall_steps = []
        for _ in range(args.runs):
            cfg = SamplerConfig(n=n, r=r, v=v, rng_seed=rng.getrandbits(32))
            result = sample_dual_containing(cfg)
            if isinstance(result, Stalled):
                stall_steps.append(result.step)
        fraction = len(stall_steps) / args.runs
        hist = {}
        for s in stall_steps:
            hist[s] = hist.get(s, 0) + 1
        print(f"failure-rate ({n},{r},{v}), cap 100: runs={args.runs} stalls={len(stall_steps)}")
        print(f"stall fraction: {fraction:.3f}")
        print(f"stall step histogram: {dict(sorted(hist.items()))}")
        last_two = sum(1 for s in stall_steps if s in (r - 2, r - 1))
        if stall_steps:
            print(f"fraction of stalls in final two steps: {last_two / len(stall_steps):.3f}")
        rows = [(s, c) for s, c in sorted(hist.items())]
        _write_csv(rows, ["stall_step", "count"], args.csv)
    if args.csv:
        outputs.append(args.csv)
    _manifest_finish(manifest, args, outputs)
    return EXIT_OK


# ----------------------------------------------------------------- columns


def cmd_columns(args) -> int:
    theoretical = None
    if args.n and args.r and args.v:
        theoretical = expected_column_weights(EnsembleParams(args.n, args.r, args.v))
    empirical = None
    zmax = 0
    if args.infile:
        m = load_bundle(args.infile, args.format).matrix
        hist = column_weight_histogram(m)
        empirical = [float(c) for c in hist]
        zmax = len(hist) - 1
    elif args.samples:
        if not (args.n and args.r and args.v):
            raise ParameterError("--samples needs --n, --r and --v")
        seed = _resolve_seed(args)
        rng = random.Random(seed)
        acc = [0.0] * (args.r + 1)
        for _ in range(args.samples):
            m = BitMatrix(
                args.n,
                [sample_ensemble_row_bits(args.n, args.v, rng) for _ in range(args.r)],
            )
            for z, c in enumerate(column_weight_histogram(m)):
                acc[z] += c
        empirical = [a / args.samples for a in acc]
        zmax = args.r
    if theoretical is None and empirical is None:
        raise ParameterError("give --n/--r/--v for the model, --samples, or --in FILE")
    if theoretical is not None:
        zmax = max(zmax, len(theoretical) - 1)
    rows = []
    for z in range(zmax + 1):
        t = f"{theoretical[z]:.6g}" if theoretical is not None and z < len(theoretical) else ""
        e = f"{empirical[z]:.6g}" if empirical is not None and z < len(empirical) else ""
        rows.append((z, t, e))
    _write_csv(rows, ["z", "expected_columns", "empirical_columns"], args.csv)
    manifest = _manifest_start(args, getattr(args, "_seed", None))
    _manifest_finish(manifest, args, [args.csv] if args.csv else [])
    return EXIT_OK


# ---------------------------------------------------------------- css/stab


def _write_pair(args, manifest, named_matrices, verify):
    """Serialize matrices, re-read them, run the pair verification, report."""
    outputs = []
    texts = {}
    for name, matrix, metadata in named_matrices:
        bundle = MatrixBundle(matrix, metadata)
        text = bundle_to_text(bundle, args.format)
        texts[name] = text
        if args.out:
            ext = {"alist": ".alist", "dense-text": ".txt", "json-bundle": ".json"}[args.format]
            path = Path(f"{args.out}.{name}{ext}")
            path.write_text(text, encoding="utf-8")
            outputs.append(path)
            print(f"wrote {path}")
        else:
            print(f"# {name}")
            sys.stdout.write(bundle_to_text(MatrixBundle(matrix), "dense-text"))
    reread = {
        name: bundle_from_text(text, args.format).matrix for name, text in texts.items()
    }
    ok, detail = verify(reread)
    print(f"verification: {detail}")
    _manifest_finish(manifest, args, outputs)
    return EXIT_OK if ok else EXIT_VALIDATION


def cmd_css(args) -> int:
    seed = _resolve_seed(args)
    manifest = _manifest_start(args, seed)
    result = sample_css_pair(
        args.n, args.r1, args.r2, args.w, args.v, rng_seed=seed,
        max_isd_calls_per_step=args.max_isd_calls,
    )
    if isinstance(result, Stalled):
        print(f"stalled after {result.step} rows of h1")
        return EXIT_STALLED
    meta = {"n": args.n, "seed": seed, "generator_version": __version__}
    matrices = [("h2", result.h2, {**meta, "role": "h2", "r": args.r2, "row_weight": args.v})]
    if args.r1 > 0:
        matrices.insert(
            0, ("h1", result.h1, {**meta, "role": "h1", "r": args.r1, "row_weight": args.w})
        )

    def verify(ms):
        h2 = ms["h2"]
        checks = []
        ok = True
        if "h1" in ms:
            h1 = ms["h1"]
            orth = h1.mat_mat(h2.transpose()).is_zero()
            ranks = rank(h1) == args.r1
            ok &= orth and ranks
            checks.append(f"h1*h2^T=0: {'ok' if orth else 'FAILED'}")
            checks.append(f"rank(h1)={args.r1}: {'ok' if ranks else 'FAILED'}")
        r2_ok = rank(h2) == args.r2
        ok &= r2_ok
        checks.append(f"rank(h2)={args.r2}: {'ok' if r2_ok else 'FAILED'}")
        return ok, "; ".join(checks)

    return _write_pair(args, manifest, matrices, verify)


def cmd_stab(args) -> int:
    seed = _resolve_seed(args)
    manifest = _manifest_start(args, seed)
    result = sample_stabilizer(
        args.n, args.r, args.v, rng_seed=seed, max_isd_calls_per_step=args.max_isd_calls
    )
    if isinstance(result, Stalled):
        print(f"stalled after {result.step} rows")
        return EXIT_STALLED
    meta = {"n": args.n, "r": args.r, "seed": seed, "generator_version": __version__}
    matrices = [
        ("hx", result.h_x, {**meta, "role": "hx", "combined_row_weight": args.v}),
        ("hz", result.h_z, {**meta, "role": "hz", "combined_row_weight": args.v}),
    ]
    print(f"combined row weights: {list(result.combined_row_weights)}")

    def verify(ms):
        hx, hz = ms["hx"], ms["hz"]
        a = hx.mat_mat(hz.transpose())
        b = hz.mat_mat(hx.transpose())
        ok = a == b  # A + B = 0 over GF(2)
        return ok, f"hx*hz^T + hz*hx^T = 0: {'ok' if ok else 'FAILED'}"

    return _write_pair(args, manifest, matrices, verify)


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qldpc-sampler",
        description="Sample and analyze random self-orthogonal / stabilizer LDPC check matrices.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_manifest(p):
        p.add_argument("--manifest", help="write the run manifest to this path")
        p.add_argument("--csv", help="write CSV output to this path instead of stdout")

    p = sub.add_parser("sample", help="sample a self-orthogonal constant-row-weight matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-isd-calls", type=int, default=100)
    p.add_argument("--p", type=int, default=3, help="pattern weight in the constant regime")
    p.add_argument("--out", help="output file (default: dense text to stdout)")
    p.add_argument("--format", choices=FORMATS, default="json-bundle")
    p.add_argument("--prune-zero", action="store_true", help="drop all-zero columns before writing")
    p.add_argument("--manifest", help="write the run manifest to this path")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("ewd", help="expected weight distribution sweep as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--w-range", help="inclusive weight range, e.g. 4..10 (default 0..n)")
    p.add_argument("--exact", action="store_true", help="force the big-rational path")
    add_manifest(p)
    p.set_defaults(func=cmd_ewd)

    p = sub.add_parser("gv", help="Gilbert-Varshamov distance for random codes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_gv)

    p = sub.add_parser("validate-ewd", help="Monte-Carlo check of the weight distribution model")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int)
    add_manifest(p)
    p.set_defaults(func=cmd_validate_ewd)

    p = sub.add_parser("validate-isd", help="measure search success against the analytic model")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--w-range", required=True)
    p.add_argument("--codes", type=int, default=100)
    p.add_argument("--calls-per-code", type=int, default=100)
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--seed", type=int)
    add_manifest(p)
    p.set_defaults(func=cmd_validate_isd)

    p = sub.add_parser("bench", help="benchmark presets")
    p.add_argument("--preset", choices=["table3", "failure-rate"], required=True)
    p.add_argument("--runs", type=int, default=None)
    p.add_argument("--seed", type=int)
    add_manifest(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("columns", help="column-weight model vs empirical histogram")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--v", type=int)
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--seed", type=int)
    p.add_argument("--in", dest="infile", help="read a matrix file instead of sampling")
    p.add_argument("--format", choices=FORMATS, default=None)
    add_manifest(p)
    p.set_defaults(func=cmd_columns)

    p = sub.add_parser("css", help="sample a CSS pair h1, h2 with h1*h2^T = 0")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r1", type=int, required=True)
    p.add_argument("--r2", type=int, required=True)
    p.add_argument("--v", type=int, required=True, help="row weight of h2")
    p.add_argument("--w", type=int, required=True, help="row weight of h1")
    p.add_argument("--seed", type=int)
    p.add_argument("--max-isd-calls", type=int, default=100)
    p.add_argument("--out", help="output path prefix")
    p.add_argument("--format", choices=FORMATS, default="json-bundle")
    p.add_argument("--manifest")
    p.set_defaults(func=cmd_css)

    p = sub.add_parser("stab", help="sample a stabilizer pair hx, hz")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--v", type=int, required=True, help="combined row weight over 2n coordinates")
    p.add_argument("--seed", type=int)
    p.add_argument("--max-isd-calls", type=int, default=100)
    p.add_argument("--out", help="output path prefix")
    p.add_argument("--format", choices=FORMATS, default="json-bundle")
    p.add_argument("--manifest")
    p.set_defaults(func=cmd_stab)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.subcommand == "bench" and args.runs is None:
        args.runs = 100 if args.preset == "failure-rate" else 3
    try:
        return args.func(args)
    except (ParameterError, DimensionError, ParseError, DegeneratePruneError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QldpcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
