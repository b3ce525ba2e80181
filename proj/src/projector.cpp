#include "mixer/projector.hpp"

#include <cmath>
#include <string>

#include "mixer/errors.hpp"

namespace mixer {

Eigen::MatrixXd standardize_rows(const Eigen::MatrixXd& m) {
    const Eigen::Index cols = m.cols();
    if (cols < 2) {
        throw InvalidArgumentError("standardize_rows: need at least 2 columns for a sample "
                                   "standard deviation, got " + std::to_string(cols));
    }
    Eigen::MatrixXd out(m.rows(), cols);
    const double n = static_cast<double>(cols);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        // a constant row has an exactly zero numerator; rounding in the mean
        // must not leak through the tiny epsilon denominator
        if (m.row(i).maxCoeff() == m.row(i).minCoeff()) {
            out.row(i).setZero();
            continue;
        }
        const double mean = m.row(i).sum() / n;
        const double var = (m.row(i).array() - mean).square().sum() / (n - 1.0);
        const double denom = std::sqrt(var) + kEpsilon;
        out.row(i) = (m.row(i).array() - mean) / denom;
    }
    return out;
}

Eigen::MatrixXd add_bias(const Eigen::MatrixXd& m) {
    Eigen::MatrixXd out(m.rows() + 1, m.cols());
    out.row(0).setConstant(-1.0);
    out.bottomRows(m.rows()) = m;
    return out;
}

EmbeddingMatrix encode(const PatchMatrix& patches, const Eigen::MatrixXd& projector) {
    const Eigen::Index expected_cols = patches.data.rows() + 1; // J^2 + 1 after the bias row
    if (projector.cols() != expected_cols) {
        throw InvalidArgumentError("encode: projector has " + std::to_string(projector.cols()) +
                                   " columns, expected " + std::to_string(expected_cols));
    }
    if (projector.rows() < 1) {
        throw InvalidArgumentError("encode: projector must have at least one row");
    }

    const Eigen::MatrixXd inputs = add_bias(standardize_rows(patches.data));
    Eigen::MatrixXd projected = projector * inputs;
    projected = (1.0 + (-projected.array()).exp()).inverse(); // element-wise sigmoid

    for (Eigen::Index j = 0; j < projected.cols(); ++j) {
        const double norm = projected.col(j).norm();
        projected.col(j) /= std::max(norm, kEpsilon);
    }

    EmbeddingMatrix out;
    out.embedding_size = static_cast<int>(projector.rows());
    out.data = add_bias(projected);
    return out;
}

} // namespace mixer
