"""Randomized texture descriptors with closed-form ridge decoders."""

from ._core import (
    DataError,
    DegenerateScatterError,
    DegenerateSequenceError,
    FeatureTable,
    InvalidArgumentError,
    PipelineConfig,
    describe,
    describe_corpus,
    extract_patch_matrix,
    generate_corpus,
    lcg_sequence,
    loo_accuracy,
    pad_replicate,
    read_features,
    standardized_tensor,
    write_features,
)

__all__ = [
    "DataError",
    "DegenerateScatterError",
    "DegenerateSequenceError",
    "FeatureTable",
    "InvalidArgumentError",
    "PipelineConfig",
    "describe",
    "describe_corpus",
    "extract_patch_matrix",
    "generate_corpus",
    "lcg_sequence",
    "loo_accuracy",
    "pad_replicate",
    "read_features",
    "standardized_tensor",
    "write_features",
]
