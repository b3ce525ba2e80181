#include "mixer/learner.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>

#include "mixer/errors.hpp"

namespace mixer {

namespace {

void check_gamma(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw InvalidArgumentError("regularization must be a positive finite number, got " +
                                   std::to_string(gamma));
    }
}

void check_channel_inputs(const std::vector<PatchMatrix>& patches,
                          const std::vector<EmbeddingMatrix>& embeddings) {
    if (patches.empty()) {
        throw InvalidArgumentError("branch learning needs at least one channel");
    }
    if (patches.size() != embeddings.size()) {
        throw InvalidArgumentError("channel count mismatch: " + std::to_string(patches.size()) +
                                   " patch matrices vs " + std::to_string(embeddings.size()) +
                                   " embeddings");
    }
    for (std::size_t k = 0; k < patches.size(); ++k) {
        if (patches[k].data.cols() != embeddings[k].data.cols()) {
            throw InvalidArgumentError("channel " + std::to_string(k) + ": patches have " +
                                       std::to_string(patches[k].data.cols()) +
                                       " columns but the embedding has " +
                                       std::to_string(embeddings[k].data.cols()));
        }
    }
}

} // namespace

RidgeSystem ridge_system(const Eigen::MatrixXd& targets, const Eigen::MatrixXd& basis) {
    if (basis.cols() != targets.cols() || basis.cols() < 1) {
        throw InvalidArgumentError("ridge_solve: targets have " + std::to_string(targets.cols()) +
                                   " columns but the basis has " + std::to_string(basis.cols()));
    }
    if (!targets.allFinite() || !basis.allFinite()) {
        throw InvalidArgumentError("ridge_solve: inputs must be finite");
    }
    RidgeSystem system;
    system.gram = basis * basis.transpose();
    system.cross = basis * targets.transpose();
    return system;
}

Eigen::MatrixXd ridge_solve_system(const RidgeSystem& system, double gamma) {
    check_gamma(gamma);
    Eigen::MatrixXd regularized = system.gram;
    regularized.diagonal().array() += gamma;
    // Positive definite for gamma > 0; LDLT stays stable down to tiny gamma.
    return regularized.ldlt().solve(system.cross).transpose();
}

Eigen::MatrixXd ridge_solve(const Eigen::MatrixXd& targets, const Eigen::MatrixXd& basis,
                            double gamma) {
    check_gamma(gamma);
    return ridge_solve_system(ridge_system(targets, basis), gamma);
}

std::vector<DecoderWeights> direct_branch(const std::vector<PatchMatrix>& patches,
                                          const std::vector<EmbeddingMatrix>& embeddings,
                                          double gamma_direct) {
    check_channel_inputs(patches, embeddings);
    std::vector<DecoderWeights> decoders;
    decoders.reserve(patches.size());
    for (std::size_t k = 0; k < patches.size(); ++k) {
        decoders.push_back(DecoderWeights{
            ridge_solve(patches[k].data, embeddings[k].data, gamma_direct),
            Branch::Direct, static_cast<int>(k)});
    }
    return decoders;
}

Eigen::MatrixXd mixed_embedding(const std::vector<EmbeddingMatrix>& embeddings) {
    if (embeddings.empty()) {
        throw InvalidArgumentError("mixed_embedding needs at least one channel");
    }
    Eigen::MatrixXd sum = embeddings.front().data;
    for (std::size_t k = 1; k < embeddings.size(); ++k) {
        if (embeddings[k].data.rows() != sum.rows() || embeddings[k].data.cols() != sum.cols()) {
            throw InvalidArgumentError("mixed_embedding: channel " + std::to_string(k) +
                                       " embedding shape differs from channel 0");
        }
        sum += embeddings[k].data;
    }
    return sum / static_cast<double>(embeddings.size());
}

std::vector<DecoderWeights> mixed_branch(const std::vector<PatchMatrix>& patches,
                                         const std::vector<EmbeddingMatrix>& embeddings,
                                         double gamma_mixed) {
    check_channel_inputs(patches, embeddings);
    const Eigen::MatrixXd shared = mixed_embedding(embeddings);
    std::vector<DecoderWeights> decoders;
    decoders.reserve(patches.size());
    for (std::size_t k = 0; k < patches.size(); ++k) {
        decoders.push_back(DecoderWeights{
            ridge_solve(patches[k].data, shared, gamma_mixed),
            Branch::Mixed, static_cast<int>(k)});
    }
    return decoders;
}

} // namespace mixer
