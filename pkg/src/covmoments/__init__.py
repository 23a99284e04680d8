"""Limiting spectral moments of unscaled sample covariance matrices S = X X^T,
computed by enumerating special symmetric partitions, verified by brute-force
circuit censuses and Monte Carlo spectral simulation."""

__version__ = "0.1.0"

from .circuits import (
    CensusResult,
    census_s,
    census_s_exhaustive,
    census_w,
    census_w_exhaustive,
    predicted_count_s,
    predicted_count_w,
    verify_containment,
)
from .ensembles import (
    DEFAULT_SEED,
    ContractViolation,
    EnsembleConfig,
    ExperimentReport,
    SpectralSample,
    eigenvalues,
    empirical_moments,
    run_experiment,
    sample_matrix,
)
from .hypergraphs import (
    Hypergraph,
    NoiryClassKey,
    count_acyclic_pairs,
    count_noiry_classes,
    enumerate_ss_words,
    hypergraph_to_word,
    is_acyclic,
    word_to_hypergraph,
)
from .moments import (
    CarlemanDiagnostic,
    MomentReport,
    carleman_diagnostic,
    even_sequence,
    moment_constant,
    moment_grid,
    moment_profile,
    moment_sparse,
    mp_moment,
    poisson_sandwich,
    unbounded_support_bound,
)
from .partitions import (
    Partition,
    PartitionClass,
    SizeLimitError,
    Word,
    bell,
    catalan,
    classify,
    count_ss,
    enumerate_pair_partitions,
    enumerate_partitions,
    is_special_symmetric,
    narayana,
    word_statistics,
)

__all__ = [
    "CarlemanDiagnostic",
    "CensusResult",
    "ContractViolation",
    "DEFAULT_SEED",
    "EnsembleConfig",
    "ExperimentReport",
    "Hypergraph",
    "MomentReport",
    "NoiryClassKey",
    "Partition",
    "PartitionClass",
    "SizeLimitError",
    "SpectralSample",
    "Word",
    "bell",
    "carleman_diagnostic",
    "catalan",
    "census_s",
    "census_s_exhaustive",
    "census_w",
    "census_w_exhaustive",
    "classify",
    "count_acyclic_pairs",
    "count_noiry_classes",
    "count_ss",
    "eigenvalues",
    "empirical_moments",
    "enumerate_pair_partitions",
    "enumerate_partitions",
    "enumerate_ss_words",
    "even_sequence",
    "hypergraph_to_word",
    "is_acyclic",
    "is_special_symmetric",
    "moment_constant",
    "moment_grid",
    "moment_profile",
    "moment_sparse",
    "mp_moment",
    "narayana",
    "poisson_sandwich",
    "predicted_count_s",
    "predicted_count_w",
    "run_experiment",
    "sample_matrix",
    "unbounded_support_bound",
    "verify_containment",
    "word_statistics",
    "word_to_hypergraph",
]
