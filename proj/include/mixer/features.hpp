#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mixer/dataset.hpp"
#include "mixer/pipeline.hpp"

namespace mixer {

// One descriptor row per sample, plus the metadata needed to interpret and
// reproduce it.
struct FeatureTable {
    Eigen::MatrixXd values;            // N x m, row-major sample order
    std::vector<std::uint32_t> labels; // N class indices
    std::vector<std::string> class_names;
    PipelineConfig config;
    std::string dataset_name;
};

// Describes every manifest sample with up to `jobs` workers. Row order
// follows the manifest regardless of scheduling.
FeatureTable describe_corpus(const CorpusManifest& manifest, const PipelineConfig& config,
                             int jobs, std::string dataset_name = "");

// Binary table format: magic "MIXF", then version (=1), row count, and
// column count as 32-bit little-endian integers, then one 32-bit label per
// row, then row-major IEEE-754 64-bit little-endian values. Class names and
// the config snapshot go to a "<path>.meta" text sidecar.
void write_features(const FeatureTable& table, const std::filesystem::path& path);
FeatureTable read_features(const std::filesystem::path& path);

} // namespace mixer
