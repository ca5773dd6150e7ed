"""Random sampling and analysis of quantum LDPC check matrices.

The package samples sparse binary matrices under orthogonality constraints
(self-orthogonal H with H H^T = 0, CSS pairs, general stabilizer pairs) by
searching for low-weight codewords with a Lee-Brickell decoder, and ships
the exact expected-weight-distribution analysis used to pick feasible
parameters and to validate outputs.
"""

__version__ = "0.1.0"

from .errors import (
    DegeneratePruneError,
    DimensionError,
    FeasibilityWarning,
    ParameterError,
    ParseError,
    QldpcError,
)
from .gf2 import (
    BitMatrix,
    BitVector,
    Permutation,
    RowSpan,
    RrefResult,
    is_in_span,
    kernel_basis,
    rank,
    rref,
)
from .isd import (
    IsdConfig,
    IsdCostModel,
    IsdOutcome,
    SuccessEstimate,
    choose_pattern_weight,
    cost_model,
    iteration_cost,
    lee_brickell_search,
    lee_brickell_search_parallel,
    nonsingular_probability,
    success_probability,
)
from .sampler import (
    CssPair,
    SampleResult,
    SamplerConfig,
    StabilizerPair,
    Stalled,
    estimate_sampling_cost,
    sample_css_pair,
    sample_dual_containing,
    sample_stabilizer,
)
from .toolkit import (
    FORMATS,
    MatrixBundle,
    PruneReport,
    bundle_from_text,
    bundle_to_text,
    column_weight_histogram,
    load_bundle,
    prune_low_weight_columns,
    prune_zero_columns,
    row_weight_histogram,
    save_bundle,
)
from .weights import (
    AsymptoticReport,
    CodewordCount,
    EmpiricalWeightDistribution,
    EnsembleParams,
    FeasibilityReport,
    WeightDistributionReport,
    WeightEntry,
    asymptotic_estimates,
    empirical_weight_distribution,
    even_overlap_probability,
    expected_codewords,
    expected_column_weights,
    feasibility_threshold,
    gilbert_varshamov_distance,
    log2_expected_codewords,
    random_code_log2_codewords,
    weight_distribution_report,
)
