#include "mixer/lda.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mixer/errors.hpp"
#include "mixer/parallel.hpp"

namespace mixer {

namespace {

// Labels must be dense 0..K-1; returns per-class sample counts.
std::vector<std::int64_t> class_counts(const std::vector<std::uint32_t>& labels) {
    std::uint32_t max_label = 0;
    for (const std::uint32_t label : labels) max_label = std::max(max_label, label);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(max_label) + 1, 0);
    for (const std::uint32_t label : labels) ++counts[label];
    return counts;
}

} // namespace

LdaModel lda_fit(const Eigen::MatrixXd& features, const std::vector<std::uint32_t>& labels) {
    const Eigen::Index n = features.rows();
    const Eigen::Index m = features.cols();
    if (static_cast<Eigen::Index>(labels.size()) != n) {
        throw InvalidArgumentError("lda_fit: " + std::to_string(n) + " rows but " +
                                   std::to_string(labels.size()) + " labels");
    }
    if (n == 0 || m == 0) {
        throw InvalidArgumentError("lda_fit: empty feature matrix");
    }
    const std::vector<std::int64_t> counts = class_counts(labels);
    const auto k = static_cast<Eigen::Index>(counts.size());
    for (std::size_t c = 0; c < counts.size(); ++c) {
        if (counts[c] < 2) {
            throw InsufficientClassDataError("class " + std::to_string(c) + " has " +
                                             std::to_string(counts[c]) +
                                             " training samples; need at least 2");
        }
    }

    LdaModel model;
    model.class_means = Eigen::MatrixXd::Zero(k, m);
    for (Eigen::Index i = 0; i < n; ++i) {
        model.class_means.row(labels[static_cast<std::size_t>(i)]) += features.row(i);
    }
    for (Eigen::Index c = 0; c < k; ++c) {
        model.class_means.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
    }
    model.overall_mean = features.colwise().mean().transpose();

    // Pooled within-class scatter via the SVD of centered rows scaled by
    // 1/sqrt(n - k); squared singular values are then covariance eigenvalues.
    Eigen::MatrixXd centered(n, m);
    for (Eigen::Index i = 0; i < n; ++i) {
        centered.row(i) =
            features.row(i) - model.class_means.row(labels[static_cast<std::size_t>(i)]);
    }
    centered /= std::sqrt(static_cast<double>(n - k));

    Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    const double largest = sigma.size() > 0 ? sigma[0] : 0.0;
    if (!(largest > 0.0)) {
        throw DegenerateScatterError(
            "within-class scatter is zero (every sample equals its class mean)");
    }
    Eigen::Index rank = 0;
    while (rank < sigma.size() && sigma[rank] > kLdaRankTolerance * largest) ++rank;

    model.whitening.resize(m, rank);
    for (Eigen::Index j = 0; j < rank; ++j) {
        model.whitening.col(j) = svd.matrixV().col(j) / sigma[j];
    }
    model.log_priors =
        Eigen::VectorXd::Constant(k, -std::log(static_cast<double>(k)));
    return model;
}

int lda_predict(const LdaModel& model, const Eigen::VectorXd& x) {
    if (x.size() != model.feature_count()) {
        throw InvalidArgumentError("lda_predict: sample has " + std::to_string(x.size()) +
                                   " features, model expects " +
                                   std::to_string(model.feature_count()));
    }
    int best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < model.class_count(); ++c) {
        const Eigen::VectorXd delta =
            model.whitening.transpose() * (x - model.class_means.row(c).transpose());
        const double score = -0.5 * delta.squaredNorm() + model.log_priors[c];
        if (score > best_score) {
            best_score = score;
            best = c;
        }
    }
    return best;
}

LooResult loo_evaluate(const Eigen::MatrixXd& features, const std::vector<std::uint32_t>& labels,
                       int jobs) {
    const Eigen::Index n = features.rows();
    if (static_cast<Eigen::Index>(labels.size()) != n) {
        throw InvalidArgumentError("loo_evaluate: " + std::to_string(n) + " rows but " +
                                   std::to_string(labels.size()) + " labels");
    }
    if (n == 0) {
        throw InvalidArgumentError("loo_evaluate: empty feature matrix");
    }
    const std::vector<std::int64_t> counts = class_counts(labels);
    for (std::size_t c = 0; c < counts.size(); ++c) {
        if (counts[c] < 3) {
            throw InsufficientClassDataError("class " + std::to_string(c) + " has " +
                                             std::to_string(counts[c]) +
                                             " samples; leave-one-out needs at least 3");
        }
    }

    std::vector<char> correct(static_cast<std::size_t>(n), 0);
    parallel_for(n, jobs, [&](std::int64_t i) {
        Eigen::MatrixXd train(n - 1, features.cols());
        std::vector<std::uint32_t> train_labels;
        train_labels.reserve(static_cast<std::size_t>(n) - 1);
        Eigen::Index row = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i) continue;
            train.row(row++) = features.row(j);
            train_labels.push_back(labels[static_cast<std::size_t>(j)]);
        }
        const LdaModel model = lda_fit(train, train_labels);
        const int predicted = lda_predict(model, features.row(i).transpose());
        correct[static_cast<std::size_t>(i)] =
            predicted == static_cast<int>(labels[static_cast<std::size_t>(i)]) ? 1 : 0;
    });

    LooResult result;
    result.total = n;
    for (const char c : correct) result.correct += c;
    return result;
}

double loo_accuracy(const Eigen::MatrixXd& features, const std::vector<std::uint32_t>& labels,
                    int jobs) {
    return loo_evaluate(features, labels, jobs).accuracy();
}

} // namespace mixer
