#include "mixer/compressor.hpp"

#include <cmath>
#include <string>

#include "mixer/errors.hpp"

namespace mixer {

double central_moment(const Eigen::VectorXd& x, int order) {
    if (x.size() == 0) {
        throw InvalidArgumentError("central_moment: empty input");
    }
    if (order < 1) {
        throw InvalidArgumentError("central_moment: order must be >= 1, got " +
                                   std::to_string(order));
    }
    const double mean = x.mean();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        sum += std::pow(x[i] - mean, order);
    }
    return sum / static_cast<double>(x.size());
}

double compress_column(const Eigen::VectorXd& x, CompressionFn which) {
    if (x.size() == 0) {
        throw InvalidArgumentError("compress_column: empty input");
    }
    switch (which) {
    case CompressionFn::Mean:
        return x.mean();
    case CompressionFn::Std:
        return std::sqrt(central_moment(x, 2));
    case CompressionFn::Skewness: {
        const double m2 = central_moment(x, 2);
        if (m2 < kZeroVarianceFloor) return 0.0;
        return central_moment(x, 3) / std::pow(m2, 1.5);
    }
    case CompressionFn::ExcessKurtosis: {
        const double m2 = central_moment(x, 2);
        if (m2 < kZeroVarianceFloor) return 0.0;
        return central_moment(x, 4) / (m2 * m2) - 3.0;
    }
    }
    throw InvalidArgumentError("compress_column: unknown function");
}

namespace {

Eigen::MatrixXd stack_weights(const std::vector<DecoderWeights>& direct,
                              const std::vector<DecoderWeights>& mixed) {
    if (direct.empty() && mixed.empty()) {
        throw InvalidArgumentError("assemble_omega: no decoder weights given");
    }
    std::vector<const Eigen::MatrixXd*> blocks;
    blocks.reserve(direct.size() + mixed.size());
    for (const auto& d : direct) blocks.push_back(&d.data);
    for (const auto& m : mixed) blocks.push_back(&m.data);

    const Eigen::Index cols = blocks.front()->cols();
    Eigen::Index rows = 0;
    for (const auto* block : blocks) {
        if (block->cols() != cols) {
            throw InvalidArgumentError("assemble_omega: decoder column counts differ (" +
                                       std::to_string(block->cols()) + " vs " +
                                       std::to_string(cols) + ")");
        }
        rows += block->rows();
    }
    Eigen::MatrixXd stacked(rows, cols);
    Eigen::Index offset = 0;
    for (const auto* block : blocks) {
        stacked.middleRows(offset, block->rows()) = *block;
        offset += block->rows();
    }
    return stacked;
}

} // namespace

Descriptor assemble_omega(const std::vector<DecoderWeights>& direct,
                          const std::vector<DecoderWeights>& mixed) {
    const Eigen::MatrixXd stacked = stack_weights(direct, mixed);
    const auto cols = stacked.cols();
    const int embedding_size = static_cast<int>(cols) - 1;

    Descriptor descriptor;
    descriptor.values.resize(static_cast<Eigen::Index>(kCompressionOrder.size()) * cols);
    Eigen::Index out = 0;
    for (const CompressionFn fn : kCompressionOrder) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            descriptor.values[out++] = compress_column(stacked.col(c), fn);
        }
        descriptor.layout.push_back(DescriptorBlockInfo{embedding_size, fn});
    }
    return descriptor;
}

Descriptor fuse(const std::vector<Descriptor>& parts) {
    if (parts.empty()) {
        throw InvalidArgumentError("fuse: no descriptors given");
    }
    Descriptor fused;
    Eigen::Index total = 0;
    for (const auto& part : parts) total += part.values.size();
    fused.values.resize(total);

    int previous_size = -1;
    Eigen::Index offset = 0;
    for (const auto& part : parts) {
        if (part.layout.empty()) {
            throw InvalidArgumentError("fuse: descriptor without layout");
        }
        const int size = part.layout.front().embedding_size;
        for (const auto& block : part.layout) {
            if (block.embedding_size != size) {
                throw InvalidArgumentError("fuse: inputs must each cover a single embedding size");
            }
        }
        if (size == previous_size) {
            throw InvalidArgumentError("fuse: duplicate embedding size " + std::to_string(size));
        }
        if (size < previous_size) {
            throw InvalidArgumentError("fuse: embedding sizes must be strictly increasing");
        }
        previous_size = size;
        fused.values.segment(offset, part.values.size()) = part.values;
        offset += part.values.size();
        fused.layout.insert(fused.layout.end(), part.layout.begin(), part.layout.end());
    }
    return fused;
}

} // namespace mixer
