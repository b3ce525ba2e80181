#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "mixer/learner.hpp"

namespace mixer {

enum class CompressionFn { Mean, Std, Skewness, ExcessKurtosis };

// Canonical order of the per-column summaries inside a descriptor.
inline constexpr std::array<CompressionFn, 4> kCompressionOrder = {
    CompressionFn::Mean, CompressionFn::Std, CompressionFn::Skewness,
    CompressionFn::ExcessKurtosis};

// Columns whose second central moment falls below this are treated as
// constant: skewness and excess kurtosis are defined as 0 instead of 0/0.
inline constexpr double kZeroVarianceFloor = 1e-24;

// Population central moment (denominator N, not N-1).
double central_moment(const Eigen::VectorXd& x, int order);

double compress_column(const Eigen::VectorXd& x, CompressionFn which);

struct DescriptorBlockInfo {
    int embedding_size = 0;
    CompressionFn function = CompressionFn::Mean;
};

// Fixed-length feature vector; layout lists one (embedding size, function)
// entry per contiguous block of embedding_size + 1 values.
struct Descriptor {
    Eigen::VectorXd values;
    std::vector<DescriptorBlockInfo> layout;
};

// Stacks decoder weights (direct channels first, then mixed, channel order
// preserved) and summarizes every column with the four compression
// functions. Either branch may be empty, but not both.
Descriptor assemble_omega(const std::vector<DecoderWeights>& direct,
                          const std::vector<DecoderWeights>& mixed);

// Concatenates single-size descriptors in ascending embedding-size order.
Descriptor fuse(const std::vector<Descriptor>& parts);

} // namespace mixer
