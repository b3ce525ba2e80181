#pragma once

#include <vector>

#include <Eigen/Core>

#include "mixer/patches.hpp"
#include "mixer/projector.hpp"

namespace mixer {

enum class Branch { Direct, Mixed };

// Learned linear-decoder weights for one channel, J^2 x (omega+1).
struct DecoderWeights {
    Eigen::MatrixXd data;
    Branch branch = Branch::Direct;
    int channel = 0;
};

struct RidgeConfig {
    double gamma_direct = 1.0;
    double gamma_mixed = 1.0;
};

// Ridge-regression sufficient statistics for one decoder fit, independent of
// the regularization strength. Lets hyperparameter sweeps reuse one pass of
// the expensive matrix products.
struct RidgeSystem {
    Eigen::MatrixXd gram;        // basis * basis^T, q x q
    Eigen::MatrixXd cross;       // basis * targets^T, q x r
};

RidgeSystem ridge_system(const Eigen::MatrixXd& targets, const Eigen::MatrixXd& basis);

// Minimizer of ||targets - W basis||_F^2 + gamma ||W||_F^2, r x q. Solved
// through an LDLT factorization of the regularized Gram matrix.
Eigen::MatrixXd ridge_solve_system(const RidgeSystem& system, double gamma);
Eigen::MatrixXd ridge_solve(const Eigen::MatrixXd& targets, const Eigen::MatrixXd& basis,
                            double gamma);

// Per-channel autoencoding decoders: channel k reconstructs its own patches
// from its own embedding.
std::vector<DecoderWeights> direct_branch(const std::vector<PatchMatrix>& patches,
                                          const std::vector<EmbeddingMatrix>& embeddings,
                                          double gamma_direct);

// Channel-averaged embedding shared by all mixed decoders. The bias row stays
// exactly -1.
Eigen::MatrixXd mixed_embedding(const std::vector<EmbeddingMatrix>& embeddings);

// Cross-channel decoders: channel k reconstructs its patches from the
// channel-averaged embedding.
std::vector<DecoderWeights> mixed_branch(const std::vector<PatchMatrix>& patches,
                                         const std::vector<EmbeddingMatrix>& embeddings,
                                         double gamma_mixed);

} // namespace mixer
