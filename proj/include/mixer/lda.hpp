#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace mixer {

// Linear discriminant classifier fitted through SVD whitening of the pooled
// within-class scatter. Directions whose singular value falls below
// kLdaRankTolerance * (largest singular value) are discarded.
inline constexpr double kLdaRankTolerance = 1e-4;

struct LdaModel {
    Eigen::MatrixXd class_means;  // K x m, original feature space
    Eigen::MatrixXd whitening;    // m x r, r = retained rank >= 1
    Eigen::VectorXd log_priors;   // K entries, uniform
    Eigen::VectorXd overall_mean; // m, grand mean of the training rows

    int class_count() const { return static_cast<int>(class_means.rows()); }
    Eigen::Index feature_count() const { return class_means.cols(); }
};

LdaModel lda_fit(const Eigen::MatrixXd& features, const std::vector<std::uint32_t>& labels);

// Argmax of -1/2 ||W^T (x - mu_k)||^2 + log prior; ties go to the lowest
// class index.
int lda_predict(const LdaModel& model, const Eigen::VectorXd& x);

struct LooResult {
    std::int64_t correct = 0;
    std::int64_t total = 0;

    double accuracy() const {
        return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
    }
};

// Leave-one-out cross-validation with a fresh fit per fold. Requires every
// class to keep >= 2 training samples in each fold, hence >= 3 overall.
LooResult loo_evaluate(const Eigen::MatrixXd& features, const std::vector<std::uint32_t>& labels,
                       int jobs = 1);
double loo_accuracy(const Eigen::MatrixXd& features, const std::vector<std::uint32_t>& labels,
                    int jobs = 1);

} // namespace mixer
