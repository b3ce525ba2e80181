#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "mixer/dataset.hpp"
#include "mixer/pipeline.hpp"

namespace mixer {

struct RegSweepResult {
    std::vector<double> gammas_direct;
    std::vector<double> gammas_mixed;
    Eigen::MatrixXd accuracy; // gammas_direct.size() x gammas_mixed.size()
    Eigen::Index best_direct = 0; // argmax cell, first occurrence in
    Eigen::Index best_mixed = 0;  // row-major order

    double best_accuracy() const { return accuracy(best_direct, best_mixed); }
};

// Leave-one-out accuracy for every (gamma_direct, gamma_mixed) grid cell.
// Embeddings and ridge sufficient statistics are computed once per image;
// each cell only re-solves the regularized systems, sharing the exact solve
// path of the plain pipeline so cell descriptors match extract+evaluate
// bit for bit. Cells run on up to `jobs` workers; on_cell fires in row-major
// order (direct-axis major) as soon as all earlier cells are done, so
// partial results can be flushed to disk mid-sweep.
RegSweepResult sweep_regularization(
    const CorpusManifest& manifest, const PipelineConfig& base,
    const std::vector<double>& gammas_direct, const std::vector<double>& gammas_mixed, int jobs,
    const std::function<void(Eigen::Index, Eigen::Index, double)>& on_cell = {});

struct EmbedSweepRow {
    int omega1 = 0;
    int omega2 = -1; // -1 on single-size rows
    double accuracy = 0.0;
    std::int64_t feature_count = 0;
};

// Accuracy of each single embedding size, then of each pair omega1 < omega2.
// Rows come back in canonical order: singles ascending, then pairs in
// lexicographic order. Per-size descriptors are computed once and fused per
// row.
std::vector<EmbedSweepRow> sweep_embeddings(const CorpusManifest& manifest,
                                            const PipelineConfig& base,
                                            const std::vector<int>& omegas, int jobs);

} // namespace mixer
