#pragma once

#include <Eigen/Core>

#include "mixer/patches.hpp"

namespace mixer {

// Guard against division by zero in row standardization and column
// normalization.
inline constexpr double kEpsilon = 1e-10;

// Hyperspherical random embedding of one channel. First row is the -1 bias
// row; below it, every column is a unit vector (or exactly zero).
struct EmbeddingMatrix {
    int embedding_size = 0;
    Eigen::MatrixXd data; // (omega+1) x H*W
};

// Replaces each row by (x - row mean) / (row sample std + epsilon), with the
// N-1 denominator in the standard deviation.
Eigen::MatrixXd standardize_rows(const Eigen::MatrixXd& m);

// Prepends a row with every entry -1.
Eigen::MatrixXd add_bias(const Eigen::MatrixXd& m);

// Full encoder: standardize rows, add bias, project through the sigmoid,
// rescale each column onto the unit hypersphere, add bias again.
// `projector` must be omega x (J^2 + 1).
EmbeddingMatrix encode(const PatchMatrix& patches, const Eigen::MatrixXd& projector);

} // namespace mixer
