import math
import random
from fractions import Fraction

import pytest

from qldpc_sampler import (
    BitMatrix,
    EnsembleParams,
    FeasibilityWarning,
    ParameterError,
    asymptotic_estimates,
    empirical_weight_distribution,
    even_overlap_probability,
    expected_codewords,
    expected_column_weights,
    feasibility_threshold,
    gilbert_varshamov_distance,
    kernel_basis,
    random_code_log2_codewords,
    rank,
    weight_distribution_report,
)
from qldpc_sampler.weights import sample_ensemble_row_bits


class TestEnsembleParams:
    def test_validation(self):
        with pytest.raises(ParameterError):
            EnsembleParams(10, 0, 4)
        with pytest.raises(ParameterError):
            EnsembleParams(10, 4, 11)
        with pytest.raises(ParameterError):
            EnsembleParams(10, 11, 4)

    def test_from_rate(self):
        p = EnsembleParams.from_rate(100, 0.6, 6)
        assert p.r == 40
        assert p.rate == pytest.approx(0.6)


class TestEvenOverlapProbability:
    def test_zero_weight_vector(self):
        assert even_overlap_probability(30, 7, 0) == 1.0

    def test_zero_weight_row(self):
        assert even_overlap_probability(30, 0, 13) == 1.0

    def test_exact_value(self):
        q = even_overlap_probability(80, 7, 4, exact=True)
        assert q == Fraction(1143653, 1581580)
        assert even_overlap_probability(80, 7, 4) == pytest.approx(0.723108, abs=5e-7)

    def test_symmetric_in_the_two_weights(self):
        for n in (6, 9, 13):
            for v in range(n + 1):
                for w in range(n + 1):
                    assert even_overlap_probability(n, v, w, exact=True) == (
                        even_overlap_probability(n, w, v, exact=True)
                    )

    def test_matches_direct_enumeration(self):
        # oracle: enumerate all weight-v rows against a fixed weight-w vector
        n, v, w = 9, 4, 3
        from itertools import combinations

        fixed = set(range(w))
        even = total = 0
        for supp in combinations(range(n), v):
            total += 1
            even += len(fixed & set(supp)) % 2 == 0
        assert even_overlap_probability(n, v, w, exact=True) == Fraction(even, total)

    def test_parameter_errors(self):
        with pytest.raises(ParameterError):
            even_overlap_probability(10, 4, 11)
        with pytest.raises(ParameterError):
            even_overlap_probability(10, 11, 4)


class TestExpectedCodewords:
    def test_reference_row(self):
        p = EnsembleParams(80, 40, 7)
        expected = {4: 3.69, 5: 4.59, 6: 6.35, 7: 9.93, 8: 17.70, 9: 35.73, 10: 80.86}
        for w, value in expected.items():
            assert round(expected_codewords(p, w).count, 2) == value

    def test_weight_zero_count_is_one(self):
        assert expected_codewords(EnsembleParams(50, 20, 6), 0).count == 1.0

    def test_exact_and_log_paths_agree(self):
        rng = random.Random(41)
        for _ in range(40):
            n = rng.randrange(4, 100)
            p = EnsembleParams(n, rng.randrange(1, n + 1), rng.randrange(1, n + 1))
            w = rng.randrange(0, n + 1)
            exact = expected_codewords(p, w, exact=True)
            logspace = expected_codewords(p, w, exact=False)
            if exact.exact == 0:
                assert logspace.log2_count == -math.inf
                continue
            # 10 significant decimal digits on the log2 value
            assert logspace.log2_count == pytest.approx(exact.log2_count, rel=1e-10, abs=1e-10)

    def test_report_table(self):
        rep = weight_distribution_report(EnsembleParams(20, 8, 4), weights=range(0, 5))
        assert rep.entry(0).log2_count == 0.0
        assert rep.entry(0).overlap_probability == 1.0
        assert len(rep.entries) == 5


class TestRandomCodeBaseline:
    def test_weight_zero(self):
        assert random_code_log2_codewords(40, 17, 0) == -17.0

    def test_full_weight_square(self):
        assert random_code_log2_codewords(12, 12, 12) == -12.0

    def test_first_nonnegative_weight_is_gv_distance(self):
        n, r = 1000, 400
        first = next(w for w in range(n + 1) if random_code_log2_codewords(n, r, w) >= 0)
        assert first == gilbert_varshamov_distance(n, r) == 81


class TestGilbertVarshamov:
    @pytest.mark.parametrize("n,r,d", [(250, 80, 16), (500, 200, 41), (1000, 400, 81)])
    def test_reference_values(self, n, r, d):
        assert gilbert_varshamov_distance(n, r) == d

    def test_nondecreasing_in_r(self):
        for n in (40, 100):
            values = [gilbert_varshamov_distance(n, r) for r in range(1, n // 2)]
            assert values == sorted(values)


class TestFeasibilityThreshold:
    @pytest.mark.parametrize(
        "n,r,v,value",
        [
            (250, 80, 6, 5.25e6),
            (250, 80, 8, 2.69e6),
            (1000, 400, 6, 8.77e8),
        ],
    )
    def test_reference_values(self, n, r, v, value):
        report = feasibility_threshold(EnsembleParams(n, r, v))
        assert report.value == pytest.approx(value, rel=0.01)
        assert report.feasible

    def test_marginal_value(self):
        report = feasibility_threshold(EnsembleParams(150, 70, 10))
        assert report.value == pytest.approx(1.29, abs=0.01)

    def test_odd_weight_warns_but_computes(self):
        with pytest.warns(FeasibilityWarning):
            report = feasibility_threshold(EnsembleParams(100, 30, 5))
        assert math.isfinite(report.log2_value)


class TestAsymptotics:
    def test_weight_zero_epsilon(self):
        rep = asymptotic_estimates(EnsembleParams(100, 40, 10), 0)
        assert rep.epsilon == 1.0

    def test_half_density_epsilon_vanishes(self):
        rep = asymptotic_estimates(EnsembleParams(100, 40, 50), 3)
        assert rep.epsilon == 0.0

    def test_requires_sparse_rows(self):
        with pytest.raises(ParameterError):
            asymptotic_estimates(EnsembleParams(100, 40, 51), 3)

    def test_bounds_fields(self):
        p = EnsembleParams(1000, 200, 9)
        rep = asymptotic_estimates(p, 10)
        assert rep.feasibility_bound_v == pytest.approx(
            math.log(2) / (1 - p.rate) * math.log2(p.n)
        )
        assert rep.max_feasible_w == pytest.approx(
            p.n * 2 ** (-(1 - p.rate) * p.v / math.log(2))
        )

    def test_consistency_with_exact_path_in_convergent_regime(self):
        # sublinear weights at rate 0.8; agreement tightens as n grows
        worst_by_n = []
        for n in (10**4, 10**5):
            p = EnsembleParams(n, round(0.2 * n), round(n**0.25))
            worst = 0.0
            for w in (round(math.log(n)), round(n**0.25), round(n ** (1 / 3)), round(n**0.5)):
                exact = expected_codewords(p, w, exact=False).log2_count
                approx = asymptotic_estimates(p, w).log2_count_approx
                worst = max(worst, abs(exact - approx) / abs(exact))
            worst_by_n.append(worst)
            assert worst < 0.05
        assert worst_by_n[1] < worst_by_n[0]

    def test_near_random_difference_shrinks_in_weight(self):
        # at v near n/2 the distance to the uniform baseline decays in even w
        n, r = 100, 40
        for v in (48, 50):
            diffs = [
                abs(
                    expected_codewords(EnsembleParams(n, r, v), w).log2_count
                    - random_code_log2_codewords(n, r, w)
                )
                for w in range(0, 40, 2)
            ]
            assert all(a >= b for a, b in zip(diffs, diffs[1:]))


class TestEmpiricalWeightDistribution:
    def test_trivial_full_rank_kernel(self):
        # dimension-zero codes contain only the zero codeword
        from qldpc_sampler.weights import _kernel_weight_histogram

        ident = BitMatrix.identity(6)
        hist = _kernel_weight_histogram(ident.row_bits, 6)
        assert hist[0] == 1 and hist.sum() == 1

    def test_histogram_matches_brute_force(self):
        rng = random.Random(43)
        from qldpc_sampler.weights import _kernel_weight_histogram

        for _ in range(20):
            n = rng.randrange(2, 12)
            r = rng.randrange(1, n + 1)
            rows = [rng.getrandbits(n) for _ in range(r)]
            hist = _kernel_weight_histogram(rows, n)
            m = BitMatrix(n, rows)
            basis = kernel_basis(m)
            counts = [0] * (n + 1)
            for x in range(1 << basis.rows):
                acc = 0
                for i in range(basis.rows):
                    if (x >> i) & 1:
                        acc ^= basis.row_bits[i]
                counts[bin(acc).count("1")] += 1
            assert list(hist) == counts

    def test_matches_exact_model_small_case(self):
        params = EnsembleParams(8, 4, 2)
        emp = empirical_weight_distribution(params, trials=1000, rng_seed=11)
        for w in range(9):
            theory = expected_codewords(params, w).count
            se = emp.std_err[w]
            if se == 0:
                assert emp.mean[w] == pytest.approx(theory, abs=1e-9)
            else:
                assert abs(emp.mean[w] - theory) <= 3 * se

    def test_total_kernel_size_matches_sum_of_coefficients(self):
        # mean |kernel| over many draws vs the summed expected counts
        params = EnsembleParams(12, 6, 4)
        total_theory = sum(
            float(expected_codewords(params, w).exact) for w in range(13)
        )
        rng = random.Random(47)
        sizes = []
        for _ in range(10_000):
            rows = [sample_ensemble_row_bits(12, 4, rng) for _ in range(6)]
            sizes.append(2 ** (12 - rank(BitMatrix(12, rows))))
        mean = sum(sizes) / len(sizes)
        var = sum((s - mean) ** 2 for s in sizes) / (len(sizes) - 1)
        se = math.sqrt(var / len(sizes))
        assert abs(mean - total_theory) <= 3 * se

    def test_dimension_bound_refused(self):
        with pytest.raises(ParameterError, match="24"):
            empirical_weight_distribution(EnsembleParams(60, 30, 4), trials=1)

    def test_zero_trials_refused(self):
        with pytest.raises(ParameterError):
            empirical_weight_distribution(EnsembleParams(10, 5, 2), trials=0)


class TestExpectedColumnWeights:
    def test_reference_points(self):
        t = expected_column_weights(EnsembleParams(150, 60, 8))
        assert t[0] == pytest.approx(5.596, abs=5e-4)
        t2 = expected_column_weights(EnsembleParams(100, 45, 6))
        assert t2[2] == pytest.approx(24.91, abs=5e-3)
        assert t2[3] == pytest.approx(22.79, abs=5e-3)

    def test_sums_to_column_count(self):
        for n, r, v in [(150, 60, 8), (40, 12, 4), (33, 10, 7)]:
            t = expected_column_weights(EnsembleParams(n, r, v))
            assert t.sum() == pytest.approx(n, rel=1e-9)

    def test_all_ones_rows(self):
        t = expected_column_weights(EnsembleParams(9, 4, 9))
        assert t[4] == pytest.approx(9.0)
        assert t[:4].sum() == pytest.approx(0.0)
